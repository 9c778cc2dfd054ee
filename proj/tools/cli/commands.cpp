#include "commands.hpp"

#include "csv.hpp"

#include "coupled/io.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

namespace coupled::cli {

namespace fs = std::filesystem;

testgen::InstanceSpec InstanceOptions::spec(std::uint64_t seed) const {
  testgen::InstanceSpec s;
  s.family = testgen::parse_family(family);
  s.m = m;
  s.n = n;
  s.n1 = n1;
  s.n2 = n2;
  s.n3 = n3;
  s.r = r;
  s.r1 = r1;
  s.r2 = r2;
  s.r3 = r3;
  s.c = c;
  s.d = d;
  s.seed = seed;
  return s;
}

SketchPlan PlanOptions::resolve(std::uint64_t seed) const {
  SketchPlan p;
  p.strategy = parse_strategy(plan);
  p.k = k;
  p.q = q;
  p.ell = ell;
  p.seed = seed;
  p.trunc_tol = trunc_tol;
  p.validate();
  return p;
}

AlsOptions AlsCliOptions::resolve() const {
  AlsOptions o;
  o.init_seed = init_seed;
  o.max_iters = max_iters;
  o.rel_tol = rel_tol;
  o.init = init == "hosvd" ? AlsInit::hosvd : AlsInit::random;
  return o;
}

LoadedInstance load_instance(const InstanceOptions& o) {
  const bool files = !o.x_path.empty() || !o.y_path.empty() || !o.tensor_path.empty();
  if (files && o.from_family()) throw UsageError("give either input files or --family, not both");
  if (o.from_family()) {
    auto inst = testgen::generate(o.spec(o.instance_seed));
    return std::visit([](auto&& v) -> LoadedInstance { return std::move(v); }, std::move(inst));
  }
  if (!o.tensor_path.empty()) {
    if (!o.x_path.empty()) throw UsageError("--tensor and --x are mutually exclusive");
    if (o.y_path.empty()) throw UsageError("--tensor needs --y");
    return testgen::TensorMatrixPair{io::load_tensor(o.tensor_path), io::load_matrix(o.y_path)};
  }
  if (o.x_path.empty() || o.y_path.empty()) {
    throw UsageError("no input: give --x and --y, --tensor and --y, or --family");
  }
  return testgen::MatrixPair{io::load_matrix(o.x_path), io::load_matrix(o.y_path)};
}

namespace {

nlohmann::json family_params(const testgen::InstanceSpec& s) {
  using testgen::Family;
  switch (s.family) {
    case Family::synthetic1:
      return {{"m", s.m}, {"n1", s.n1}, {"n2", s.n2}, {"r1", s.r1}, {"r2", s.r2}};
    case Family::synthetic2: return {{"n", s.n}, {"r", s.r}, {"d", s.d}, {"c", s.c}};
    case Family::synthetic3: return {{"m", s.m}, {"n", s.n}, {"r", s.r}};
    case Family::synthetic4: return {{"m", s.m}, {"n1", s.n1}, {"n2", s.n2}, {"r2", s.r2}};
    case Family::synthetic5: return {{"m", s.m}, {"n1", s.n1}, {"n2", s.n2}, {"shared", s.c}};
    case Family::tensor_test:
      return {{"n", s.n}, {"r", s.r}, {"d", s.d}, {"r1", s.r1}, {"r2", s.r2}, {"r3", s.r3}};
    case Family::planted_cp:
      return {{"m", s.m}, {"n2", s.n2}, {"n3", s.n3}, {"n", s.n}, {"r", s.r}};
  }
  return nlohmann::json::object();
}

Cell optional_count(bool present, long long v) {
  return present ? Cell{v} : Cell{};
}

std::vector<Cell> plan_cells(const SketchPlan& plan, Index achieved_p) {
  const bool randomized = plan.strategy != Strategy::none;
  return {std::string(to_string(plan.strategy)), optional_count(randomized, achieved_p),
          optional_count(plan.strategy == Strategy::rbki, plan.ell),
          optional_count(plan.strategy == Strategy::rsi || plan.strategy == Strategy::rbki, plan.q)};
}

const std::vector<std::string> kTableColumns = {"algorithm", "p",     "ell",          "q",
                                                "err_X",     "err_Y", "total_time_s", "cmf_time_s"};

}  // namespace

void run_gen(const GenOptions& opts, Context& ctx) {
  const testgen::InstanceSpec spec = opts.inst.spec(ctx.global.seed);
  const auto instance = testgen::generate(spec);
  const fs::path dir = ctx.global.out.empty() || ctx.global.out == "-" ? fs::path(".")
                                                                       : fs::path(ctx.global.out);
  fs::create_directories(dir);
  const bool text = opts.encoding == "text";
  nlohmann::json files = nlohmann::json::object();
  if (const auto* pair = std::get_if<testgen::MatrixPair>(&instance)) {
    files["X"] = text ? "X.dmt" : "X.dmb";
    files["Y"] = text ? "Y.dmt" : "Y.dmb";
    io::save_matrix(dir / files["X"].get<std::string>(), pair->X);
    io::save_matrix(dir / files["Y"].get<std::string>(), pair->Y);
  } else {
    const auto& tm = std::get<testgen::TensorMatrixPair>(instance);
    files["T"] = text ? "T.dtt" : "T.dtb";
    files["Y"] = text ? "Y.dmt" : "Y.dmb";
    io::save_tensor(dir / files["T"].get<std::string>(), tm.T);
    io::save_matrix(dir / files["Y"].get<std::string>(), tm.Y);
  }
  const nlohmann::json manifest = {{"family", std::string(testgen::to_string(spec.family))},
                                   {"params", family_params(spec)},
                                   {"seed", spec.seed},
                                   {"files", files},
                                   {"config", ctx.config}};
  const fs::path manifest_path = dir / "manifest.json";
  {
    std::ofstream os(manifest_path);
    os << manifest.dump(2) << '\n';
    if (!os) throw FormatError("failed writing '" + manifest_path.string() + "'");
  }
  if (ctx.format() == "json") {
    ctx.out << manifest.dump(2) << '\n';
  } else {
    CsvWriter w(ctx.out);
    w.row({"role", "path"});
    for (const auto& [role, name] : files.items()) {
      w.row({role, (dir / name.get<std::string>()).string()});
    }
    w.row({"manifest", manifest_path.string()});
  }
}

void run_cmf(const CmfOptions& opts, Context& ctx) {
  const LoadedInstance inst = load_instance(opts.inst);
  const auto* pair = std::get_if<testgen::MatrixPair>(&inst);
  if (pair == nullptr) throw UsageError("cmf needs a matrix pair; use cmtf for tensors");
  const SketchPlan plan = opts.plan.resolve(ctx.global.seed);
  const CmfResult r = cmf(pair->X, pair->Y, plan);
  const RelativeErrors e = relative_errors(pair->X, pair->Y, r);
  if (!opts.factors.empty()) {
    const fs::path dir(opts.factors);
    fs::create_directories(dir);
    io::save_matrix(dir / "U.dmb", r.U);
    io::save_matrix(dir / "V.dmb", r.V);
    io::save_matrix(dir / "W.dmb", r.W);
  }
  Table t{kTableColumns, {}};
  auto row = plan_cells(plan, r.achieved_p);
  row.insert(row.end(), {e.x, e.y, r.elapsed_total_s, r.elapsed_core_s});
  t.rows.push_back(std::move(row));
  ctx.emit(t);
}

void run_cmtf(const CmtfOptions& opts, Context& ctx) {
  const LoadedInstance inst = load_instance(opts.inst);
  const auto* tm = std::get_if<testgen::TensorMatrixPair>(&inst);
  if (tm == nullptr) throw UsageError("cmtf needs a tensor and a matrix; use cmf for matrix pairs");
  const SketchPlan plan = opts.plan.resolve(ctx.global.seed);
  Table t{kTableColumns, {}};
  if (opts.form == "tucker") {
    const TuckerCmtfResult r = cmtf_tucker(tm->T, tm->Y, plan);
    const RelativeErrors e = cmtf_errors(tm->T, tm->Y, r);
    auto row = plan_cells(plan, r.achieved_p);
    row.insert(row.end(), {e.x, e.y, r.elapsed_total_s, r.elapsed_core_s});
    t.rows.push_back(std::move(row));
  } else {
    const CpCmtfResult r = cmtf_cp_als_randomized(tm->T, tm->Y, plan, opts.als.resolve());
    const RelativeErrors e = cmtf_errors(tm->T, tm->Y, r);
    t.header.insert(t.header.end(), {"iterations", "converged", "objective"});
    auto row = plan_cells(plan, r.achieved_p);
    row.insert(row.end(), {e.x, e.y, r.elapsed_total_s, r.elapsed_core_s,
                           static_cast<long long>(r.iterations),
                           std::string(r.converged ? "true" : "false"),
                           cmtf_objective(tm->T, tm->Y, r)});
    t.rows.push_back(std::move(row));
  }
  ctx.emit(t);
}

}  // namespace coupled::cli
