#include "commands.hpp"

#include "parallel.hpp"

#include "coupled/random.hpp"

#include <chrono>
#include <limits>

namespace coupled::cli {

CmfResult augmented_sketch_cmf(MatrixCRef x, MatrixCRef y, Index k, std::uint64_t seed) {
  check_cmf_arguments(x, y, k);
  const auto start = std::chrono::steady_clock::now();
  Rng rng(seed);
  Matrix joined(x.rows(), x.cols() + y.cols());
  joined << x, y;
  const Matrix q = thin_qr(joined * gaussian(joined.cols(), k, rng)).Q;
  CmfResult r = cmf_projected(x, y, k, q);
  r.elapsed_total_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

testgen::MatrixPair matrix_view(LoadedInstance inst) {
  if (auto* pair = std::get_if<testgen::MatrixPair>(&inst)) return std::move(*pair);
  auto& tm = std::get<testgen::TensorMatrixPair>(inst);
  return {unfold1(tm.T), std::move(tm.Y)};
}

Cell maybe(bool present, Cell value) { return present ? value : Cell{}; }

}  // namespace

void run_bench(const BenchOptions& opts, Context& ctx) {
  const testgen::MatrixPair pair = matrix_view(load_instance(opts.inst));
  const MatrixCRef x = pair.X;
  const MatrixCRef y = pair.Y;
  check_cmf_arguments(x, y, opts.k);
  if (opts.trials < 1) throw UsageError("--trials must be at least 1");
  const Strategy strategy = parse_strategy(opts.plan);
  const bool uses_ell = strategy == Strategy::rbki;
  const bool uses_q = strategy != Strategy::simple;
  const std::vector<Index> ells = uses_ell ? parse_index_list(opts.ell, "--ell") : std::vector<Index>{1};
  const std::vector<Index> qs = uses_q ? parse_index_list(opts.q, "--q") : std::vector<Index>{1};

  struct Task {
    Index ell;
    Index q;
    int trial;
  };
  std::vector<Task> tasks;
  for (const Index ell : ells)
    for (const Index q : qs)
      for (int t = 0; t < opts.trials; ++t) tasks.push_back({ell, q, t});

  Table table{{"algorithm", "ell", "q", "trial", "seed", "effective_cols", "max_cols", "p", "err_X",
               "err_Y", "total_time_s", "cmf_time_s", "status"},
              std::vector<std::vector<Cell>>(tasks.size())};

  parallel_for(tasks.size(), [&](std::size_t i) {
    const Task& task = tasks[i];
    SketchPlan plan{strategy, opts.k, static_cast<int>(task.q), task.ell,
                    ctx.global.seed + static_cast<std::uint64_t>(task.trial), opts.trunc_tol};
    plan.validate();
    const Index max_cols = uses_ell ? 2 * task.ell * task.q : 2 * opts.k;
    std::vector<Cell>& row = table.rows[i];
    row = {std::string(to_string(strategy)), maybe(uses_ell, static_cast<long long>(task.ell)),
           maybe(uses_q, static_cast<long long>(task.q)), static_cast<long long>(task.trial),
           plan.seed, Cell{}, static_cast<long long>(max_cols), Cell{}, Cell{}, Cell{}, Cell{},
           Cell{}, std::string("ok")};
    JointBasis basis;
    try {
      basis = coupled_basis(x, y, plan);
    } catch (const ParameterError& e) {
      row[12] = std::string("skipped: ") + e.what();
      return;
    }
    row[5] = static_cast<long long>(basis.effective_cols);
    if (basis.effective_cols >= opts.k) row[7] = static_cast<long long>(basis.effective_cols - opts.k);
    if (strategy == Strategy::rbki && task.ell * task.q < opts.k) {
      row[12] = std::string("skipped: ell*q < k");
      return;
    }
    const CmfResult r = cmf(x, y, plan);
    const RelativeErrors e = relative_errors(x, y, r);
    row[8] = e.x;
    row[9] = e.y;
    row[10] = r.elapsed_total_s;
    row[11] = r.elapsed_core_s;
  });

  const CmfResult basic = cmf_basic(x, y, opts.k);
  const RelativeErrors e = relative_errors(x, y, basic);
  table.rows.push_back({std::string("basic"), Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, Cell{},
                        e.x, e.y, basic.elapsed_total_s, basic.elapsed_core_s, std::string("ok")});
  ctx.emit(table);
}

void run_compare(const CompareOptions& opts, Context& ctx) {
  if (opts.trials < 1) throw UsageError("--trials must be at least 1");
  const bool fig2 = opts.experiment == "fig2";
  InstanceOptions inst = opts.inst;
  const char* family = fig2 ? "synthetic1" : "planted_cp";
  if (!inst.family.empty() && inst.family != family) {
    throw UsageError("experiment " + opts.experiment + " uses family " + family);
  }
  inst.family = family;
  auto or_default = [](Index v, Index fallback) { return v > 0 ? v : fallback; };
  Index k = 0;
  if (fig2) {
    inst.m = or_default(inst.m, 500);
    inst.n1 = or_default(inst.n1, 200);
    inst.n2 = or_default(inst.n2, 300);
    inst.r1 = or_default(inst.r1, 100);
    inst.r2 = or_default(inst.r2, 150);
    k = or_default(opts.k, 30);
  } else {
    inst.m = or_default(inst.m, 100);
    inst.n2 = or_default(inst.n2, 50);
    inst.n3 = or_default(inst.n3, 20);
    inst.n = or_default(inst.n, 30);
    inst.r = or_default(inst.r, 3);
    k = or_default(opts.k, 3);
  }
  inst.spec(0).validate();

  Table table;
  if (fig2) {
    table.header = {"trial",       "instance_seed",       "sketch_seed", "joint_objective",
                    "augmented_objective", "joint_cols", "augmented_cols"};
  } else {
    table.header = {"trial",        "instance_seed", "init_seed",    "tucker_objective",
                    "cp_objective", "cp_iterations", "cp_converged", "status"};
  }
  table.rows.resize(static_cast<std::size_t>(opts.trials));
  const AlsOptions als_base = opts.als.resolve();

  parallel_for(table.rows.size(), [&](std::size_t t) {
    const std::uint64_t inst_seed = derive_seed(ctx.global.seed, 2 * t);
    const std::uint64_t run_seed = derive_seed(ctx.global.seed, 2 * t + 1);
    const auto instance = testgen::generate(inst.spec(inst_seed));
    auto& row = table.rows[t];
    if (fig2) {
      const auto& p = std::get<testgen::MatrixPair>(instance);
      const CmfResult joint = cmf_randomized(p.X, p.Y, SketchPlan::simple(k, run_seed));
      const CmfResult aug = augmented_sketch_cmf(p.X, p.Y, k, run_seed);
      row = {static_cast<long long>(t), inst_seed, run_seed, cmf_objective(p.X, p.Y, joint),
             cmf_objective(p.X, p.Y, aug), static_cast<long long>(k + joint.achieved_p),
             static_cast<long long>(k)};
    } else {
      const auto& tm = std::get<testgen::TensorMatrixPair>(instance);
      const TuckerCmtfResult tucker = cmtf_tucker(tm.T, tm.Y, SketchPlan::basic(k));
      AlsOptions als = als_base;
      als.init_seed = run_seed;
      row = {static_cast<long long>(t), inst_seed, run_seed, cmtf_objective(tm.T, tm.Y, tucker),
             Cell{}, Cell{}, Cell{}, std::string("ok")};
      try {
        const CpCmtfResult cp = cmtf_cp_als(tm.T, tm.Y, k, als);
        row[4] = cmtf_objective(tm.T, tm.Y, cp);
        row[5] = static_cast<long long>(cp.iterations);
        row[6] = std::string(cp.converged ? "true" : "false");
      } catch (const DegenerateIterate& e) {
        row[4] = std::numeric_limits<double>::infinity();
        row[7] = std::string(e.kind());
      }
    }
  });
  ctx.emit(table);
}

}  // namespace coupled::cli
