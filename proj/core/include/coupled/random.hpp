#pragma once

#include "coupled/linalg.hpp"

#include <cstdint>

namespace coupled {

/// SplitMix64 generator.
///
/// Counter based: the n-th output is a fixed mix of seed + n * 0x9e3779b97f4a7c15,
/// so two generators with the same seed and the same call sequence agree bit
/// for bit. Gaussian variates use the Box-Muller transform and are produced in
/// pairs (the second one of a pair is returned by the next call).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Standard normal.
  double gaussian() noexcept;

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Seed of an independent stream `stream` derived from `seed`.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// rows x cols matrix of i.i.d. standard normal entries, filled column by column.
[[nodiscard]] Matrix gaussian(Index rows, Index cols, Rng& rng);

/// rows x cols matrix of i.i.d. uniform [0,1) entries, filled column by column.
[[nodiscard]] Matrix uniform(Index rows, Index cols, Rng& rng);

}  // namespace coupled
