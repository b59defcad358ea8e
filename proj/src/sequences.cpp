#include "digitlaw/sequences.hpp"

#include <string>

#include "digitlaw/error.hpp"

namespace digitlaw {

Sequence parse_sequence(std::string_view name) {
  if (name == "primes") return Sequence::kPrimes;
  if (name == "zeros") return Sequence::kZeros;
  if (name == "cramer") return Sequence::kCramer;
  if (name == "integers") return Sequence::kIntegers;
  fail(ErrorKind::kUsage, "unknown sequence '" + std::string(name) + "'");
}

const char* to_string(Sequence s) {
  switch (s) {
    case Sequence::kPrimes: return "primes";
    case Sequence::kZeros: return "zeros";
    case Sequence::kCramer: return "cramer";
    case Sequence::kIntegers: return "integers";
  }
  return "unknown";
}

Convention convention_of(Sequence s) {
  return s == Sequence::kZeros ? Convention::kZeros : Convention::kPrimes;
}

int decade_exponent(std::uint64_t n) {
  for (int d = 1; d < kMaxIntegerDigits + 1; ++d) {
    if (pow10_u64(d) == n) return d;
  }
  fail(ErrorKind::kUsage, "N = " + std::to_string(n) + " must be a power of ten, at least 10");
}

DigitHistogram integer_digit_histogram(std::uint64_t n, int k) {
  DigitHistogram h(k);
  if (n == 0) return h;
  const std::uint64_t lo_prefix = pow10_u64(k - 1);
  const std::uint64_t hi_prefix = pow10_u64(k);
  // Numbers with j digits, j = 1, 2, ...; all of them lie below n until the
  // last, partial block.
  for (int j = 1; j <= kMaxIntegerDigits; ++j) {
    const std::uint64_t first = pow10_u64(j - 1);
    if (first > n) break;
    const std::uint64_t last = (j < kMaxIntegerDigits && pow10_u64(j) - 1 < n) ? pow10_u64(j) - 1 : n;
    if (j < k) {
      // Each number is its own padded prefix.
      const std::uint64_t scale = pow10_u64(k - j);
      for (std::uint64_t x = first; x <= last; ++x) h.add_raw(x * scale, 1);
      continue;
    }
    const std::uint64_t div = pow10_u64(j - k);
    const std::uint64_t last_prefix = last / div;
    for (std::uint64_t p = lo_prefix; p < hi_prefix && p < last_prefix; ++p) h.add_raw(p, div);
    if (last_prefix >= lo_prefix) h.add_raw(last_prefix, last - last_prefix * div + 1);
  }
  return h;
}

CdfFunction prime_pi_cdf(std::shared_ptr<const PrimePi> pi, std::uint64_t n) {
  if (n > pi->limit()) fail(ErrorKind::kDomain, "prime table does not reach N");
  const double total = static_cast<double>(pi->at_most(static_cast<double>(n)));
  return [pi = std::move(pi), n, total](double x) {
    if (x >= static_cast<double>(n)) return static_cast<double>(pi->at_most(static_cast<double>(n))) / total;
    return static_cast<double>(pi->below(x)) / total;
  };
}

CdfFunction li_cdf(double n) {
  const double total = li(n);
  return [n, total](double x) {
    if (x >= n) return 1.0;
    return li_cdf_numerator(x) / total;
  };
}

}  // namespace digitlaw
