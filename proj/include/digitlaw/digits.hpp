#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

namespace digitlaw {

// Largest k for which 10^k still fits in uint64_t.
inline constexpr int kMaxIntegerDigits = 19;
// Significant decimal digits a double can carry (shortest round-trip form).
inline constexpr int kMaxRealDigits = 17;

std::uint64_t pow10_u64(int e);

// The first k significant decimal digits of a positive number, as an integer
// in [10^(k-1), 10^k).
class DigitPrefix {
 public:
  // Throws kDomain when value is not a valid k-digit prefix.
  DigitPrefix(std::uint64_t value, int k);

  std::uint64_t value() const noexcept { return value_; }
  int k() const noexcept { return k_; }
  int first_digit() const noexcept;

  friend bool operator==(const DigitPrefix&, const DigitPrefix&) = default;

 private:
  std::uint64_t value_;
  int k_;
};

// Exact prefix of a positive integer (repeated division; short integers are
// padded with zeros, so 7 at k=2 gives 70).
DigitPrefix leading_prefix(std::uint64_t x, int k);
// Prefix of a positive finite real, taken from its shortest round-trip
// decimal representation so decade boundaries never suffer log10 rounding.
DigitPrefix leading_prefix(double x, int k);
// Prefix of a plain decimal literal such as "0.00123" or "21.022040".
DigitPrefix leading_prefix(std::string_view decimal, int k);

// Fast path used by the kernels: k-digit prefix of a positive integer with
// known digit count. No validation.
inline std::uint64_t prefix_of(std::uint64_t x, std::uint64_t divisor) {
  return x / divisor;
}

class DigitHistogram {
 public:
  explicit DigitHistogram(int k = 1);

  int k() const noexcept { return k_; }
  std::uint64_t total() const noexcept { return total_; }
  bool empty() const noexcept { return total_ == 0; }

  void add(const DigitPrefix& p, std::uint64_t n = 1);
  // Unchecked insert for prefixes already validated by the caller.
  void add_raw(std::uint64_t prefix, std::uint64_t n);

  std::uint64_t count(std::uint64_t prefix) const;
  double frequency(std::uint64_t prefix) const;

  // Nonzero entries, ascending by prefix.
  const std::map<std::uint64_t, std::uint64_t>& counts() const noexcept {
    return counts_;
  }

  // Counts collapsed onto the first digit; index 0 is digit 1.
  std::array<std::uint64_t, 9> first_digit_counts() const;
  std::array<double, 9> first_digit_frequencies() const;

  // Smallest and one-past-largest k-digit prefix.
  std::uint64_t min_prefix() const { return pow10_u64(k_ - 1); }
  std::uint64_t end_prefix() const { return pow10_u64(k_); }

  friend bool operator==(const DigitHistogram&, const DigitHistogram&) = default;

 private:
  int k_;
  std::uint64_t total_ = 0;
  std::map<std::uint64_t, std::uint64_t> counts_;
};

DigitHistogram digit_histogram(std::span<const double> values, int k);
DigitHistogram digit_histogram(std::span<const std::uint64_t> values, int k);

// Throws kDomain when a.k() != b.k().
DigitHistogram merge_histograms(const DigitHistogram& a, const DigitHistogram& b);

// Builds a histogram from a dense per-prefix count array (index 0 is the
// prefix 10^(k-1)).
DigitHistogram histogram_from_dense(int k, std::span<const std::uint64_t> dense);

// `prefix,count,frequency` rows ascending by prefix; frequency to 10
// significant digits. The optional header line is written verbatim first.
void write_histogram_csv(std::ostream& os, const DigitHistogram& h,
                         const std::string& meta_line = {});

}  // namespace digitlaw
