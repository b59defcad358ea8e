#include "digitlaw/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "digitlaw/error.hpp"

namespace digitlaw {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void check_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg) {
  if (hi > cfg.ceiling + 1) {
    fail(ErrorKind::kResource, "upper bound " + std::to_string(hi - 1) +
                                   " exceeds the sieve ceiling " + std::to_string(cfg.ceiling));
  }
  if (lo > hi) fail(ErrorKind::kDomain, "empty or inverted range");
}

std::vector<std::uint32_t> base_primes_for(std::uint64_t hi) {
  return small_primes(static_cast<std::uint32_t>(isqrt(hi) + 1));
}

// Partition of [lo, hi) into segments of at most 2 * flags integers, with
// every boundary odd-aligned so segments tile the odd numbers exactly.
struct Plan {
  std::uint64_t lo;
  std::uint64_t hi;
  std::uint64_t span;
  std::size_t segments;

  std::uint64_t seg_lo(std::size_t i) const { return lo + span * i; }
  std::uint64_t seg_hi(std::size_t i) const { return std::min(hi, lo + span * (i + 1)); }
};

Plan make_plan(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg) {
  const std::uint64_t span = 2 * static_cast<std::uint64_t>(cfg.segment_flags);
  const std::uint64_t n = hi > lo ? hi - lo : 0;
  return Plan{lo, hi, span, static_cast<std::size_t>((n + span - 1) / span)};
}

bool has_two(std::uint64_t lo, std::uint64_t hi) { return lo <= 2 && 2 < hi; }

}  // namespace

std::vector<std::uint32_t> small_primes(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit <= 2) return out;
  std::vector<bool> composite(limit, false);
  for (std::uint32_t i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j < limit; j += i) composite[j] = true;
  }
  return out;
}

SieveSegment::SieveSegment(std::size_t flags) : words_((flags + 63) / 64) {}

void SieveSegment::sieve(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint32_t> base) {
  first_odd_ = lo | 1;
  if (hi <= first_odd_) {
    words_used_ = 0;
    return;
  }
  const std::uint64_t flags = (hi - first_odd_ + 1) / 2;
  words_used_ = static_cast<std::size_t>((flags + 63) / 64);
  if (words_used_ > words_.size()) words_.resize(words_used_);
  std::fill_n(words_.begin(), words_used_, ~std::uint64_t{0});
  if (flags % 64 != 0) words_[words_used_ - 1] = (std::uint64_t{1} << (flags % 64)) - 1;
  if (first_odd_ == 1) words_[0] &= ~std::uint64_t{1};

  std::uint64_t* w = words_.data();
  for (std::uint32_t p32 : base) {
    if (p32 == 2) continue;
    const std::uint64_t p = p32;
    const std::uint64_t p2 = p * p;
    if (p2 >= hi) break;
    std::uint64_t start = p2;
    if (start < first_odd_) {
      start = (first_odd_ + p - 1) / p * p;
      if ((start & 1) == 0) start += p;
    }
    for (std::uint64_t i = (start - first_odd_) / 2; i < flags; i += p) {
      w[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
  }
}

std::uint64_t SieveSegment::count() const {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < words_used_; ++i) c += static_cast<std::uint64_t>(__builtin_popcountll(words_[i]));
  return c;
}

std::uint64_t count_primes(std::uint64_t lo, std::uint64_t hi, Exec exec, const SieveConfig& cfg) {
  check_range(lo, hi, cfg);
  if (hi <= lo) return 0;
  const auto base = base_primes_for(hi);
  const Plan plan = make_plan(lo, hi, cfg);
  std::uint64_t total = has_two(lo, hi) ? 1 : 0;

  if (exec == Exec::kSerial) {
    SieveSegment seg(cfg.segment_flags);
    for (std::size_t i = 0; i < plan.segments; ++i) {
      seg.sieve(plan.seg_lo(i), plan.seg_hi(i), base);
      total += seg.count();
    }
    return total;
  }

  std::vector<std::uint64_t> per_segment(plan.segments, 0);
#pragma omp parallel
  {
    SieveSegment seg(cfg.segment_flags);
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(plan.segments); ++i) {
      const auto s = static_cast<std::size_t>(i);
      seg.sieve(plan.seg_lo(s), plan.seg_hi(s), base);
      per_segment[s] = seg.count();
    }
  }
  for (std::uint64_t c : per_segment) total += c;
  return total;
}

std::vector<std::uint64_t> list_primes(std::uint64_t lo, std::uint64_t hi, Exec exec,
                                       const SieveConfig& cfg) {
  check_range(lo, hi, cfg);
  if (hi <= lo) return {};
  // pi(x) < 1.25506 x / ln x for x > 1.
  const double x = static_cast<double>(hi);
  const double bound = std::min(x - static_cast<double>(lo), hi > 2 ? 1.25506 * x / std::log(x) : 1.0);
  if (bound * sizeof(std::uint64_t) > static_cast<double>(cfg.memory_budget_bytes)) {
    fail(ErrorKind::kResource, "prime list for [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                   ") exceeds the memory budget; segment the range");
  }
  const auto base = base_primes_for(hi);
  const Plan plan = make_plan(lo, hi, cfg);
  std::vector<std::uint64_t> out;
  if (has_two(lo, hi)) out.push_back(2);

  if (exec == Exec::kSerial) {
    SieveSegment seg(cfg.segment_flags);
    for (std::size_t i = 0; i < plan.segments; ++i) {
      seg.sieve(plan.seg_lo(i), plan.seg_hi(i), base);
      seg.for_each([&](std::uint64_t p) { out.push_back(p); });
    }
    return out;
  }

  std::vector<std::vector<std::uint64_t>> parts(plan.segments);
#pragma omp parallel
  {
    SieveSegment seg(cfg.segment_flags);
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(plan.segments); ++i) {
      const auto s = static_cast<std::size_t>(i);
      seg.sieve(plan.seg_lo(s), plan.seg_hi(s), base);
      auto& part = parts[s];
      part.reserve(static_cast<std::size_t>(seg.count()));
      seg.for_each([&](std::uint64_t p) { part.push_back(p); });
    }
  }
  std::size_t n = out.size();
  for (const auto& p : parts) n += p.size();
  out.reserve(n);
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

PrefixAccumulator::PrefixAccumulator(int k)
    : k_(k), base_(pow10_u64(k - 1)), dense_(static_cast<std::size_t>(9 * pow10_u64(k - 1)), 0) {
  if (k > 7) fail(ErrorKind::kResource, "dense prefix accumulation supports k <= 7");
}

void PrefixAccumulator::advance(std::uint64_t x) {
  int ndigits = 1;
  std::uint64_t upper = 10;
  while (x >= upper && ndigits < kMaxIntegerDigits) {
    ++ndigits;
    upper *= 10;
  }
  next_boundary_ = ndigits < kMaxIntegerDigits ? upper : ~std::uint64_t{0};
  if (ndigits >= k_) {
    divisor_ = pow10_u64(ndigits - k_);
    multiplier_ = 1;
  } else {
    divisor_ = 1;
    multiplier_ = pow10_u64(k_ - ndigits);
  }
}

void PrefixAccumulator::merge(const PrefixAccumulator& other) {
  if (other.k_ != k_) fail(ErrorKind::kDomain, "cannot merge accumulators with different k");
  for (std::size_t i = 0; i < dense_.size(); ++i) dense_[i] += other.dense_[i];
}

DigitHistogram prime_digit_histogram(std::uint64_t lo, std::uint64_t hi, int k, Exec exec,
                                     const SieveConfig& cfg) {
  check_range(lo, hi, cfg);
  PrefixAccumulator acc(k);
  if (hi <= lo) return acc.histogram();
  const auto base = base_primes_for(hi);
  const Plan plan = make_plan(lo, hi, cfg);
  if (has_two(lo, hi)) acc.add(2);

  if (exec == Exec::kSerial) {
    SieveSegment seg(cfg.segment_flags);
    for (std::size_t i = 0; i < plan.segments; ++i) {
      seg.sieve(plan.seg_lo(i), plan.seg_hi(i), base);
      seg.for_each([&](std::uint64_t p) { acc.add(p); });
    }
    return acc.histogram();
  }

#pragma omp parallel
  {
    SieveSegment seg(cfg.segment_flags);
    PrefixAccumulator local(k);
#pragma omp for schedule(dynamic, 1) nowait
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(plan.segments); ++i) {
      const auto s = static_cast<std::size_t>(i);
      seg.sieve(plan.seg_lo(s), plan.seg_hi(s), base);
      local.reset_cursor();
      seg.for_each([&](std::uint64_t p) { local.add(p); });
    }
#pragma omp critical(digitlaw_prefix_merge)
    acc.merge(local);
  }
  return acc.histogram();
}

}  // namespace digitlaw
