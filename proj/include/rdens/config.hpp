#pragma once

#include <cstdint>

namespace rdens {

struct Config {
  // Drives every probabilistic subroutine. Results never depend on it,
  // only running time does.
  std::uint64_t seed = 0x243f6a8885a308d3ULL;
  // Number of split primes tried before the exact root reconstruction.
  int pretest_primes = 5;
  // Lift the soft envelope (degree <= 8, ell <= 7, rank <= 4).
  bool allow_large = false;
};

namespace envelope {
inline constexpr std::uint64_t max_degree = 8;
inline constexpr unsigned max_ell = 7;
inline constexpr std::size_t max_rank = 4;
inline constexpr std::uint64_t max_exponent_vectors = 1u << 12;
inline constexpr std::size_t max_inclusion_exclusion = 10;
}  // namespace envelope

}  // namespace rdens
