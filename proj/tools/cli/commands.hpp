#pragma once

#include "coupled/cmf.hpp"
#include "coupled/cmtf.hpp"
#include "coupled/errors.hpp"
#include "coupled/sketching.hpp"
#include "coupled/testgen.hpp"

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace coupled::cli {

/// Malformed command line or option combination.
class UsageError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] const char* kind() const noexcept override { return "usage"; }
};

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string out;
  std::string format;  ///< csv, json, or empty to infer from --out
};

/// Either input files or a generator family with its parameters.
struct InstanceOptions {
  std::string x_path, y_path, tensor_path;
  std::string family;
  Index m = 0, n = 0, n1 = 0, n2 = 0, n3 = 0;
  Index r = 0, r1 = 0, r2 = 0, r3 = 0;
  Index c = 0;
  double d = 2.0;
  std::uint64_t instance_seed = 0;

  [[nodiscard]] bool from_family() const { return !family.empty(); }
  [[nodiscard]] testgen::InstanceSpec spec(std::uint64_t seed) const;
};

struct PlanOptions {
  std::string plan = "basic";
  Index k = 0;
  int q = 1;
  Index ell = 1;
  double trunc_tol = kDefaultTruncTol;

  [[nodiscard]] SketchPlan resolve(std::uint64_t seed) const;
};

struct AlsCliOptions {
  int max_iters = 500;
  double rel_tol = 1e-9;
  std::string init = "random";
  std::uint64_t init_seed = 0;

  [[nodiscard]] AlsOptions resolve() const;
};

struct GenOptions {
  InstanceOptions inst;
  std::string encoding = "binary";
};

struct CmfOptions {
  InstanceOptions inst;
  PlanOptions plan;
  std::string factors;
};

struct CmtfOptions {
  InstanceOptions inst;
  PlanOptions plan;
  AlsCliOptions als;
  std::string form = "tucker";
};

struct BenchOptions {
  InstanceOptions inst;
  std::string plan = "rbki";
  Index k = 0;
  std::string ell = "1";
  std::string q = "1:5";
  int trials = 1;
  double trunc_tol = kDefaultTruncTol;
};

struct CompareOptions {
  InstanceOptions inst;
  std::string experiment = "fig2";
  int trials = 100;
  Index k = 0;
  AlsCliOptions als;
};

struct FacerecOptions {
  std::string gallery, queries;
  std::string mode = "cmf";
  std::string plan = "basic";
  Index k = 5;
  int q = 2;
  Index ell = 5;
  double trunc_tol = kDefaultTruncTol;
  AlsCliOptions als;
};

using Cell = std::variant<std::monostate, std::string, double, long long, std::uint64_t>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// Per-run state shared by the command implementations.
struct Context {
  GlobalOptions global;
  nlohmann::json config;
  std::ostream& out;
  std::ostream& err;

  /// "csv" or "json".
  [[nodiscard]] std::string format() const;
  /// Writes the table to --out (or `out`) together with the resolved config.
  void emit(const Table& table);
  /// Writes a JSON document to --out (or `out`), adding the resolved config.
  void emit(nlohmann::json doc);
};

/// "a,b,c", "lo:hi" or "lo:hi:step" (inclusive); empty results are usage errors.
[[nodiscard]] std::vector<Index> parse_index_list(const std::string& text, const char* what);

using LoadedInstance = std::variant<testgen::MatrixPair, testgen::TensorMatrixPair>;
[[nodiscard]] LoadedInstance load_instance(const InstanceOptions& opts);

/// Baseline basis for comparisons: Q = qr([X Y] * Omega) with one k-column
/// Gaussian sketch drawn from Rng(seed), followed by the projected solve.
[[nodiscard]] CmfResult augmented_sketch_cmf(MatrixCRef x, MatrixCRef y, Index k,
                                             std::uint64_t seed);

void run_gen(const GenOptions& opts, Context& ctx);
void run_cmf(const CmfOptions& opts, Context& ctx);
void run_cmtf(const CmtfOptions& opts, Context& ctx);
void run_bench(const BenchOptions& opts, Context& ctx);
void run_compare(const CompareOptions& opts, Context& ctx);
void run_facerec(const FacerecOptions& opts, Context& ctx);

}  // namespace coupled::cli
