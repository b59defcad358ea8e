#include "digitlaw/digits.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "digitlaw/error.hpp"

namespace digitlaw {

namespace {

void check_k(int k, int limit) {
  if (k < 1) fail(ErrorKind::kDomain, "digit count k must be >= 1");
  if (k > limit) {
    fail(ErrorKind::kPrecision,
         "k = " + std::to_string(k) + " exceeds the " + std::to_string(limit) +
             " significant digits representable for this input");
  }
}

// Collects the significant digits of a decimal mantissa, padding with zeros.
std::uint64_t prefix_from_digits(std::string_view digits, int k) {
  std::uint64_t v = 0;
  for (int i = 0; i < k; ++i) {
    const int d = i < static_cast<int>(digits.size()) ? digits[i] - '0' : 0;
    v = v * 10 + static_cast<std::uint64_t>(d);
  }
  return v;
}

}  // namespace

std::uint64_t pow10_u64(int e) {
  static constexpr std::array<std::uint64_t, 20> kTable = [] {
    std::array<std::uint64_t, 20> t{};
    std::uint64_t v = 1;
    for (auto& x : t) {
      x = v;
      v *= 10;
    }
    return t;
  }();
  if (e < 0 || e > kMaxIntegerDigits) {
    fail(ErrorKind::kDomain, "10^" + std::to_string(e) + " out of uint64 range");
  }
  return kTable[static_cast<std::size_t>(e)];
}

DigitPrefix::DigitPrefix(std::uint64_t value, int k) : value_(value), k_(k) {
  check_k(k, kMaxIntegerDigits);
  if (value < pow10_u64(k - 1) || (k < kMaxIntegerDigits && value >= pow10_u64(k))) {
    fail(ErrorKind::kDomain, "value " + std::to_string(value) + " is not a " +
                                 std::to_string(k) + "-digit prefix");
  }
}

int DigitPrefix::first_digit() const noexcept {
  std::uint64_t v = value_;
  while (v >= 10) v /= 10;
  return static_cast<int>(v);
}

DigitPrefix leading_prefix(std::uint64_t x, int k) {
  if (x == 0) fail(ErrorKind::kDomain, "leading digits of 0 are undefined");
  check_k(k, kMaxIntegerDigits);
  int ndigits = 1;
  for (std::uint64_t t = x; t >= 10; t /= 10) ++ndigits;
  std::uint64_t v = x;
  if (ndigits > k) {
    v = x / pow10_u64(ndigits - k);
  } else {
    // 10^(k - ndigits) * x stays below 10^k, so no overflow.
    v = x * pow10_u64(k - ndigits);
  }
  return DigitPrefix(v, k);
}

DigitPrefix leading_prefix(double x, int k) {
  if (!std::isfinite(x) || x <= 0.0) {
    fail(ErrorKind::kDomain, "leading digits need a positive finite value");
  }
  check_k(k, kMaxRealDigits);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific);
  std::string digits;
  for (const char* p = buf; p != res.ptr && *p != 'e'; ++p) {
    if (*p >= '0' && *p <= '9') digits.push_back(*p);
  }
  return DigitPrefix(prefix_from_digits(digits, k), k);
}

DigitPrefix leading_prefix(std::string_view decimal, int k) {
  check_k(k, kMaxIntegerDigits);
  std::string digits;
  bool seen_point = false;
  bool any_digit = false;
  std::size_t i = 0;
  if (i < decimal.size() && decimal[i] == '+') ++i;
  for (; i < decimal.size(); ++i) {
    const char c = decimal[i];
    if (c >= '0' && c <= '9') {
      any_digit = true;
      if (digits.empty() && c == '0') continue;
      digits.push_back(c);
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c == 'e' || c == 'E') {
      // The exponent only moves the decimal point; validate and ignore it.
      std::size_t j = i + 1;
      if (j < decimal.size() && (decimal[j] == '+' || decimal[j] == '-')) ++j;
      if (j == decimal.size()) break;
      for (; j < decimal.size(); ++j) {
        if (decimal[j] < '0' || decimal[j] > '9') break;
      }
      if (j == decimal.size()) {
        i = j;
        break;
      }
      fail(ErrorKind::kDomain, "malformed decimal literal '" + std::string(decimal) + "'");
    } else {
      fail(ErrorKind::kDomain, "malformed decimal literal '" + std::string(decimal) + "'");
    }
  }
  if (!any_digit) fail(ErrorKind::kDomain, "empty decimal literal");
  if (digits.empty()) fail(ErrorKind::kDomain, "leading digits of 0 are undefined");
  return DigitPrefix(prefix_from_digits(digits, k), k);
}

DigitHistogram::DigitHistogram(int k) : k_(k) { check_k(k, kMaxIntegerDigits); }

void DigitHistogram::add(const DigitPrefix& p, std::uint64_t n) {
  if (p.k() != k_) fail(ErrorKind::kDomain, "prefix digit count does not match histogram");
  add_raw(p.value(), n);
}

void DigitHistogram::add_raw(std::uint64_t prefix, std::uint64_t n) {
  if (n == 0) return;
  counts_[prefix] += n;
  total_ += n;
}

std::uint64_t DigitHistogram::count(std::uint64_t prefix) const {
  const auto it = counts_.find(prefix);
  return it == counts_.end() ? 0 : it->second;
}

double DigitHistogram::frequency(std::uint64_t prefix) const {
  if (total_ == 0) return 0.0;
  return static_cast<double>(count(prefix)) / static_cast<double>(total_);
}

std::array<std::uint64_t, 9> DigitHistogram::first_digit_counts() const {
  std::array<std::uint64_t, 9> out{};
  const std::uint64_t div = pow10_u64(k_ - 1);
  for (const auto& [prefix, n] : counts_) out[prefix / div - 1] += n;
  return out;
}

std::array<double, 9> DigitHistogram::first_digit_frequencies() const {
  std::array<double, 9> out{};
  if (total_ == 0) return out;
  const auto c = first_digit_counts();
  for (std::size_t i = 0; i < 9; ++i) {
    out[i] = static_cast<double>(c[i]) / static_cast<double>(total_);
  }
  return out;
}

DigitHistogram digit_histogram(std::span<const double> values, int k) {
  DigitHistogram h(k);
  for (double v : values) h.add(leading_prefix(v, k));
  return h;
}

DigitHistogram digit_histogram(std::span<const std::uint64_t> values, int k) {
  DigitHistogram h(k);
  for (std::uint64_t v : values) h.add(leading_prefix(v, k));
  return h;
}

DigitHistogram merge_histograms(const DigitHistogram& a, const DigitHistogram& b) {
  if (a.k() != b.k()) {
    fail(ErrorKind::kDomain, "cannot merge histograms with different digit counts");
  }
  DigitHistogram out = a;
  for (const auto& [prefix, n] : b.counts()) out.add_raw(prefix, n);
  return out;
}

DigitHistogram histogram_from_dense(int k, std::span<const std::uint64_t> dense) {
  DigitHistogram h(k);
  const std::uint64_t base = pow10_u64(k - 1);
  if (dense.size() != 9 * base) {
    fail(ErrorKind::kContract, "dense histogram has the wrong number of bins");
  }
  for (std::size_t i = 0; i < dense.size(); ++i) h.add_raw(base + i, dense[i]);
  return h;
}

void write_histogram_csv(std::ostream& os, const DigitHistogram& h,
                         const std::string& meta_line) {
  if (!meta_line.empty()) os << meta_line << '\n';
  os << "prefix,count,frequency\n";
  char buf[64];
  for (const auto& [prefix, n] : h.counts()) {
    std::snprintf(buf, sizeof buf, "%.10g", h.frequency(prefix));
    os << prefix << ',' << n << ',' << buf << '\n';
  }
}

}  // namespace digitlaw
