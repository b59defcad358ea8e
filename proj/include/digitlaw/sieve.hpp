#pragma once

// Segmented, odd-only bit sieve of Eratosthenes. Every kernel comes in two
// flavours: a serial reference used by the tests and an OpenMP version that
// sieves segments independently and reduces the per-thread results in
// segment order.

#include <cstdint>
#include <span>
#include <vector>

#include "digitlaw/digits.hpp"

namespace digitlaw {

enum class Exec { kSerial, kParallel };

struct SieveConfig {
  std::uint64_t ceiling = 10'000'000'000ULL;  // largest accepted upper bound
  std::size_t segment_flags = std::size_t{1} << 20;  // odd numbers per segment
  std::size_t memory_budget_bytes = std::size_t{1} << 30;  // for materialized lists
};

// All primes below `limit`, by a plain sieve. Used for base primes.
std::vector<std::uint32_t> small_primes(std::uint32_t limit);

// Bitmap over the odd numbers of one segment. Bit i stands for first_odd + 2i.
class SieveSegment {
 public:
  SieveSegment(std::size_t flags);

  // Sieves [lo, hi) with base primes covering sqrt(hi). The even prime 2 is
  // not represented; callers add it when lo <= 2.
  void sieve(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint32_t> base);

  std::uint64_t count() const;

  template <class Visit>
  void for_each(Visit&& visit) const {
    for (std::size_t w = 0; w < words_used_; ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = __builtin_ctzll(bits);
        visit(first_odd_ + 2 * (64 * static_cast<std::uint64_t>(w) + static_cast<std::uint64_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  std::span<const std::uint64_t> words() const { return {words_.data(), words_used_}; }
  std::uint64_t first_odd() const noexcept { return first_odd_; }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t words_used_ = 0;
  std::uint64_t first_odd_ = 1;
};

// Number of primes p with lo <= p < hi.
std::uint64_t count_primes(std::uint64_t lo, std::uint64_t hi, Exec exec,
                           const SieveConfig& cfg = {});

// The primes in [lo, hi), ascending.
std::vector<std::uint64_t> list_primes(std::uint64_t lo, std::uint64_t hi, Exec exec,
                                       const SieveConfig& cfg = {});

// k-digit leading-prefix histogram of the primes in [lo, hi).
DigitHistogram prime_digit_histogram(std::uint64_t lo, std::uint64_t hi, int k, Exec exec,
                                     const SieveConfig& cfg = {});

// Dense accumulator for k-digit prefixes of increasing positive integers.
class PrefixAccumulator {
 public:
  explicit PrefixAccumulator(int k);

  void add(std::uint64_t x) {
    if (x >= next_boundary_) advance(x);
    ++dense_[static_cast<std::size_t>(x / divisor_ * multiplier_ - base_)];
  }

  // Restart the decade cursor; required when inputs stop increasing.
  void reset_cursor() { next_boundary_ = 0; }

  void merge(const PrefixAccumulator& other);
  DigitHistogram histogram() const { return histogram_from_dense(k_, dense_); }

 private:
  void advance(std::uint64_t x);

  int k_;
  std::uint64_t base_;
  std::uint64_t divisor_ = 1;
  std::uint64_t multiplier_ = 1;
  std::uint64_t next_boundary_ = 0;
  std::vector<std::uint64_t> dense_;
};

}  // namespace digitlaw
