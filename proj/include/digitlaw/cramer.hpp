#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "digitlaw/digits.hpp"
#include "digitlaw/sieve.hpp"

namespace digitlaw {

// Philox4x32 with 10 rounds (Salmon et al., SC'11): a keyed bijection on
// 128-bit counters. Counter-based, so draw k is addressable directly.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter ctr, Key key);
};

inline constexpr const char* kCramerGeneratorVersion = "philox4x32-10/urn-u53/v1";

// Uniform double in [0, 1) for urn k under `seed`: one Philox block per urn,
// counter (k_lo, k_hi, 0, 0), key (seed_lo, seed_hi), top 53 bits used.
double urn_uniform(std::uint64_t seed, std::uint64_t k);

struct CramerOptions {
  // Urns 1 and 2 are skipped (1/ln 1 is undefined, 1/ln 2 > 1). Setting this
  // labels 2 as a pseudo-prime unconditionally.
  bool include_two = false;
};

struct CramerRun {
  std::uint64_t seed = 0;
  std::uint64_t ceiling = 0;
  std::string generator_version = kCramerGeneratorVersion;
  std::vector<std::uint64_t> pseudo_primes;
};

// Urn k in [3, N] is white with probability 1/ln k. Output depends only on
// (N, seed, generator version), never on the thread count.
CramerRun cramer_sequence(std::uint64_t n, std::uint64_t seed, Exec exec = Exec::kParallel,
                          const CramerOptions& opt = {});

std::uint64_t cramer_count(std::uint64_t n, std::uint64_t seed, Exec exec = Exec::kParallel,
                           const CramerOptions& opt = {});

DigitHistogram cramer_digit_histogram(std::uint64_t n, std::uint64_t seed, int k,
                                      Exec exec = Exec::kParallel, const CramerOptions& opt = {});

// Sum of 1/ln k for k = 3..N: the expected number of pseudo-primes.
double cramer_expected_count(std::uint64_t n);
// Sum of p(1-p) over the same urns.
double cramer_count_variance(std::uint64_t n);

// {seed, ceiling, generator_version, count}, plus "meta" when given.
void write_cramer_manifest(std::ostream& os, const CramerRun& run, const std::string& meta = {});

}  // namespace digitlaw
