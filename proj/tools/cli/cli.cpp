#include "cli.hpp"

#include "commands.hpp"
#include "csv.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

namespace coupled::cli {

namespace {

constexpr const char* kProgram = "coupled-lowrank";

nlohmann::json cell_to_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (std::isfinite(v)) return v;
          return csv_number(v);
        } else {
          return v;
        }
      },
      cell);
}

std::string cell_to_csv(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return {};
        } else if constexpr (std::is_same_v<T, double>) {
          return csv_number(v);
        } else if constexpr (std::is_integral_v<T>) {
          return std::to_string(v);
        } else {
          return v;
        }
      },
      cell);
}

bool to_stdout(const std::string& path) { return path.empty() || path == "-"; }

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open '" + path + "' for writing");
  return os;
}

void finish(std::ostream& os, const std::string& path) {
  os.flush();
  if (!os) throw FormatError("failed writing '" + (to_stdout(path) ? "stdout" : path) + "'");
}

void add_instance_options(CLI::App& app, InstanceOptions& o, bool with_files) {
  if (with_files) {
    app.add_option("--x", o.x_path, "First matrix file (.dmt text or .dmb binary)");
    app.add_option("--y", o.y_path, "Second matrix file");
    app.add_option("--tensor", o.tensor_path, "Tensor file (.dtt text or .dtb binary)");
    app.add_option("--instance-seed", o.instance_seed, "Generator seed for --family");
  }
  app.add_option("--family", o.family, "Generate the instance instead of reading files")
      ->check(CLI::IsMember({"synthetic1", "synthetic2", "synthetic3", "synthetic4", "synthetic5",
                             "tensor_test", "planted_cp"}));
  app.add_option("--m", o.m, "Rows (shared mode)");
  app.add_option("--n", o.n, "Square size / coupled matrix columns");
  app.add_option("--n1", o.n1, "Columns of X");
  app.add_option("--n2", o.n2, "Columns of Y / second tensor mode");
  app.add_option("--n3", o.n3, "Third tensor mode");
  app.add_option("--r", o.r, "Rank parameter");
  app.add_option("--r1", o.r1, "Rank of X / shared directions of slice 1");
  app.add_option("--r2", o.r2, "Rank of Y / shared directions of slice 2");
  app.add_option("--r3", o.r3, "Shared directions of slice 3");
  app.add_option("--c", o.c, "Shared singular directions (synthetic2, synthetic5)");
  app.add_option("--d", o.d, "Decay exponent or base");
}

void add_plan_options(CLI::App& app, PlanOptions& o) {
  app.add_option("--plan", o.plan, "basic | simple | rsi | rbki")
      ->check(CLI::IsMember({"basic", "none", "simple", "randomized", "rsi", "rbki"}));
  app.add_option("--k", o.k, "Target rank")->required();
  app.add_option("--q", o.q, "RSI iterations / RBKI depth");
  app.add_option("--ell", o.ell, "RBKI block size");
  app.add_option("--trunc-tol", o.trunc_tol, "Relative rank-revealing truncation tolerance");
}

void add_als_options(CLI::App& app, AlsCliOptions& o) {
  app.add_option("--max-iters", o.max_iters, "ALS sweep cap");
  app.add_option("--rel-tol", o.rel_tol, "ALS relative objective change tolerance");
  app.add_option("--init", o.init, "ALS initialization: random | hosvd")
      ->check(CLI::IsMember({"random", "hosvd"}));
  app.add_option("--init-seed", o.init_seed, "ALS initialization seed");
}

void capture_options(const CLI::App& app, nlohmann::json& into) {
  for (const CLI::Option* opt : app.get_options()) {
    const auto& names = opt->get_lnames();
    if (names.empty() || names.front() == "help" || names.front() == "version") continue;
    const auto& results = opt->results();
    into[names.front()] = opt->count() > 0 && !results.empty() ? results.back()
                                                                : opt->get_default_str();
  }
}

nlohmann::json capture_config(const CLI::App& app, const CLI::App& sub) {
  nlohmann::json options = nlohmann::json::object();
  capture_options(app, options);
  capture_options(sub, options);
  return {{"program", kProgram},
          {"version", COUPLED_LOWRANK_VERSION},
          {"subcommand", sub.get_name()},
          {"options", options}};
}

void print_error(std::ostream& err, const std::string& kind, const std::string& message,
                 nlohmann::json extra = nlohmann::json::object()) {
  nlohmann::json record = {{"kind", kind}, {"message", message}};
  record.update(extra);
  err << nlohmann::json{{"error", record}}.dump() << '\n';
}

std::vector<std::string> replay_args(const std::string& path, const std::string& out_override) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open config '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  if (doc.contains("config")) doc = doc["config"];
  if (!doc.is_object() || !doc.contains("subcommand") || !doc.contains("options") ||
      !doc["subcommand"].is_string() || !doc["options"].is_object()) {
    throw FormatError(path + ": not a run configuration");
  }
  const std::string sub = doc["subcommand"].get<std::string>();
  if (sub == "replay") throw FormatError(path + ": a configuration cannot replay itself");
  std::vector<std::string> args{sub};
  bool out_seen = false;
  for (const auto& [key, value] : doc["options"].items()) {
    if (!value.is_string()) throw FormatError(path + ": option '" + key + "' is not a string");
    std::string v = value.get<std::string>();
    if (key == "out" && !out_override.empty()) {
      v = out_override;
      out_seen = true;
    }
    if (v.empty()) continue;
    args.push_back("--" + key);
    args.push_back(v);
  }
  if (!out_override.empty() && !out_seen) {
    args.push_back("--out");
    args.push_back(out_override);
  }
  return args;
}

}  // namespace

std::string Context::format() const {
  if (!global.format.empty()) return global.format;
  const std::string& p = global.out;
  if (p.size() >= 5 && p.compare(p.size() - 5, 5, ".json") == 0) return "json";
  return "csv";
}

void Context::emit(const Table& table) {
  if (format() == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
      nlohmann::json r = nlohmann::json::object();
      for (std::size_t i = 0; i < table.header.size() && i < row.size(); ++i) {
        r[table.header[i]] = cell_to_json(row[i]);
      }
      rows.push_back(std::move(r));
    }
    emit(nlohmann::json{{"columns", table.header}, {"rows", std::move(rows)}});
    return;
  }
  auto write_rows = [&](std::ostream& os) {
    CsvWriter w(os);
    w.row(table.header);
    for (const auto& row : table.rows) {
      std::vector<std::string> fields;
      fields.reserve(row.size());
      for (const Cell& c : row) fields.push_back(cell_to_csv(c));
      w.row(fields);
    }
  };
  if (to_stdout(global.out)) {
    write_rows(out);
    finish(out, global.out);
    err << nlohmann::json{{"config", config}}.dump() << '\n';
    return;
  }
  {
    auto os = open_output(global.out);
    write_rows(os);
    finish(os, global.out);
  }
  const std::string sidecar = global.out + ".config.json";
  auto os = open_output(sidecar);
  os << config.dump(2) << '\n';
  finish(os, sidecar);
}

void Context::emit(nlohmann::json doc) {
  doc["config"] = config;
  const std::string text = doc.dump(2) + "\n";
  if (to_stdout(global.out)) {
    out << text;
    finish(out, global.out);
    return;
  }
  auto os = open_output(global.out);
  os << text;
  finish(os, global.out);
}

std::vector<Index> parse_index_list(const std::string& text, const char* what) {
  auto number = [&](const std::string& tok) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return static_cast<Index>(v);
    } catch (const std::logic_error&) {
      throw UsageError(std::string(what) + ": '" + tok + "' is not an integer");
    }
  };
  std::vector<Index> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t pos; (pos = text.find(':', start)) != std::string::npos; start = pos + 1) {
      parts.push_back(text.substr(start, pos - start));
    }
    parts.push_back(text.substr(start));
    if (parts.size() > 3) throw UsageError(std::string(what) + ": expected lo:hi or lo:hi:step");
    const Index lo = number(parts[0]);
    const Index hi = number(parts[1]);
    const Index step = parts.size() == 3 ? number(parts[2]) : 1;
    if (step < 1) throw UsageError(std::string(what) + ": step must be positive");
    for (Index v = lo; v <= hi; v += step) out.push_back(v);
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t pos = text.find(',', start);
      const std::string tok = text.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
      if (!tok.empty()) out.push_back(number(tok));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
  }
  if (out.empty()) throw UsageError(std::string(what) + ": empty range '" + text + "'");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coupled matrix and matrix-tensor low-rank factorization", kProgram};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", COUPLED_LOWRANK_VERSION);

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Sketching seed (instance seed for gen)");
  app.add_option("--out", global.out, "Output file (directory for gen); stdout when omitted");
  app.add_option("--format", global.format, "csv | json (default: json for *.json, else csv)")
      ->check(CLI::IsMember({"csv", "json"}));

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic instance and its manifest");
  add_instance_options(*gen_cmd, gen.inst, false);
  gen_cmd->get_option("--family")->required();
  gen_cmd->add_option("--encoding", gen.encoding, "binary | text")
      ->check(CLI::IsMember({"binary", "text"}));

  CmfOptions cmf_opts;
  auto* cmf_cmd = app.add_subcommand("cmf", "Coupled matrix factorization of X and Y");
  add_instance_options(*cmf_cmd, cmf_opts.inst, true);
  add_plan_options(*cmf_cmd, cmf_opts.plan);
  cmf_cmd->add_option("--factors", cmf_opts.factors, "Directory for U, V, W (.dmb)");

  CmtfOptions cmtf_opts;
  auto* cmtf_cmd = app.add_subcommand("cmtf", "Coupled matrix-tensor factorization");
  add_instance_options(*cmtf_cmd, cmtf_opts.inst, true);
  add_plan_options(*cmtf_cmd, cmtf_opts.plan);
  add_als_options(*cmtf_cmd, cmtf_opts.als);
  cmtf_cmd->add_option("--form", cmtf_opts.form, "tucker | cp")
      ->check(CLI::IsMember({"tucker", "cp"}));

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Error and basis-size sweep over (ell, q, trial)");
  add_instance_options(*bench_cmd, bench.inst, true);
  bench_cmd->add_option("--plan", bench.plan, "simple | rsi | rbki")
      ->check(CLI::IsMember({"simple", "rsi", "rbki"}));
  bench_cmd->add_option("--k", bench.k, "Target rank")->required();
  bench_cmd->add_option("--ell", bench.ell, "Block sizes: list a,b,c or range lo:hi[:step]");
  bench_cmd->add_option("--q", bench.q, "Depths: list or range lo:hi[:step]");
  bench_cmd->add_option("--trials", bench.trials, "Seeds per (ell, q): seed, seed+1, ...");
  bench_cmd->add_option("--trunc-tol", bench.trunc_tol, "Relative truncation tolerance");

  CompareOptions compare;
  auto* compare_cmd = app.add_subcommand("compare", "Paired objective comparisons over many trials");
  add_instance_options(*compare_cmd, compare.inst, false);
  compare_cmd->add_option("--experiment", compare.experiment,
                          "fig2: joint vs augmented sketch basis; fig4: Tucker vs CP-ALS")
      ->check(CLI::IsMember({"fig2", "fig4"}));
  compare_cmd->add_option("--trials", compare.trials, "Number of generated instances");
  compare_cmd->add_option("--k", compare.k, "Target rank (0: experiment default)");
  add_als_options(*compare_cmd, compare.als);

  FacerecOptions fr;
  auto* fr_cmd = app.add_subcommand("facerec", "Face recognition by coupled approximation error");
  fr_cmd->add_option("--gallery", fr.gallery, "Gallery directory <person>/<image>.pgm")->required();
  fr_cmd->add_option("--queries", fr.queries, "Query directory <person>/<image>.pgm")->required();
  fr_cmd->add_option("--mode", fr.mode, "cmf | cmtf-tucker | cmtf-cp | all")
      ->check(CLI::IsMember({"cmf", "cmtf-tucker", "cmtf-cp", "all"}));
  fr_cmd->add_option("--plan", fr.plan, "basic | simple | rsi | rbki | all")
      ->check(CLI::IsMember({"basic", "simple", "rsi", "rbki", "all"}));
  fr_cmd->add_option("--k", fr.k, "Target rank");
  fr_cmd->add_option("--q", fr.q, "RSI iterations / RBKI depth");
  fr_cmd->add_option("--ell", fr.ell, "RBKI block size");
  fr_cmd->add_option("--trunc-tol", fr.trunc_tol, "Relative truncation tolerance");
  add_als_options(*fr_cmd, fr.als);

  std::string replay_config;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run a serialized run configuration");
  replay_cmd->add_option("--config", replay_config, "Config sidecar or JSON report")->required();

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<const char*> argv{kProgram};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << COUPLED_LOWRANK_VERSION << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what());
    return 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    if (chosen == replay_cmd) return run(replay_args(replay_config, global.out), out, err);
    Context ctx{global, capture_config(app, *chosen), out, err};
    if (chosen == gen_cmd) run_gen(gen, ctx);
    else if (chosen == cmf_cmd) run_cmf(cmf_opts, ctx);
    else if (chosen == cmtf_cmd) run_cmtf(cmtf_opts, ctx);
    else if (chosen == bench_cmd) run_bench(bench, ctx);
    else if (chosen == compare_cmd) run_compare(compare, ctx);
    else if (chosen == fr_cmd) run_facerec(fr, ctx);
    return 0;
  } catch (const UsageError& e) {
    print_error(err, e.kind(), e.what());
    return 2;
  } catch (const DegenerateIterate& e) {
    print_error(err, e.kind(), e.what(), {{"factor", e.factor()}, {"iteration", e.iteration()}});
    return 1;
  } catch (const Error& e) {
    print_error(err, e.kind(), e.what());
    return 1;
  } catch (const nlohmann::json::exception& e) {
    print_error(err, "format", e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error(err, "internal", e.what());
    return 1;
  }
}

}  // namespace coupled::cli
