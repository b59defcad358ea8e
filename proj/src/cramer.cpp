#include "digitlaw/cramer.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "digitlaw/error.hpp"

namespace digitlaw {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53;
constexpr std::uint32_t kM1 = 0xCD9E8D57;
constexpr std::uint32_t kW0 = 0x9E3779B9;
constexpr std::uint32_t kW1 = 0xBB67AE85;

constexpr std::uint64_t kBlock = std::uint64_t{1} << 20;  // urns per parallel block

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

void check_ceiling(std::uint64_t n) {
  if (n < 3) fail(ErrorKind::kDomain, "the Cramer model needs N >= 3");
}

inline bool urn_is_white(std::uint64_t seed, std::uint64_t k) {
  return urn_uniform(seed, k) * std::log(static_cast<double>(k)) < 1.0;
}

// Calls visit(k) for every white urn in [lo, hi), ascending.
template <class Visit>
void scan_urns(std::uint64_t seed, std::uint64_t lo, std::uint64_t hi, Visit&& visit) {
  for (std::uint64_t k = lo; k < hi; ++k) {
    if (urn_is_white(seed, k)) visit(k);
  }
}

template <class Block, class Reduce>
void run_blocks(std::uint64_t n, Exec exec, Block&& block, Reduce&& reduce) {
  const std::uint64_t first = 3;
  const std::uint64_t end = n + 1;
  const auto blocks = static_cast<std::ptrdiff_t>((end - first + kBlock - 1) / kBlock);
  using Result = decltype(block(first, end));
  if (exec == Exec::kSerial) {
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
      const std::uint64_t lo = first + kBlock * static_cast<std::uint64_t>(b);
      reduce(block(lo, std::min(end, lo + kBlock)));
    }
    return;
  }
  std::vector<Result> parts(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::uint64_t lo = first + kBlock * static_cast<std::uint64_t>(b);
    parts[static_cast<std::size_t>(b)] = block(lo, std::min(end, lo + kBlock));
  }
  for (auto& p : parts) reduce(std::move(p));
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, ctr[0], hi0, lo0);
    mulhilo(kM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

double urn_uniform(std::uint64_t seed, std::uint64_t k) {
  const auto out = Philox4x32::generate(
      {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32), 0, 0},
      {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
  const std::uint64_t bits = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

CramerRun cramer_sequence(std::uint64_t n, std::uint64_t seed, Exec exec, const CramerOptions& opt) {
  check_ceiling(n);
  CramerRun run;
  run.seed = seed;
  run.ceiling = n;
  if (opt.include_two) run.pseudo_primes.push_back(2);
  run_blocks(
      n, exec,
      [seed](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::uint64_t> part;
        scan_urns(seed, lo, hi, [&](std::uint64_t k) { part.push_back(k); });
        return part;
      },
      [&run](std::vector<std::uint64_t>&& part) {
        run.pseudo_primes.insert(run.pseudo_primes.end(), part.begin(), part.end());
      });
  return run;
}

std::uint64_t cramer_count(std::uint64_t n, std::uint64_t seed, Exec exec, const CramerOptions& opt) {
  check_ceiling(n);
  std::uint64_t total = opt.include_two ? 1 : 0;
  run_blocks(
      n, exec,
      [seed](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t c = 0;
        scan_urns(seed, lo, hi, [&](std::uint64_t) { ++c; });
        return c;
      },
      [&total](std::uint64_t c) { total += c; });
  return total;
}

DigitHistogram cramer_digit_histogram(std::uint64_t n, std::uint64_t seed, int k, Exec exec,
                                      const CramerOptions& opt) {
  check_ceiling(n);
  PrefixAccumulator acc(k);
  if (opt.include_two) acc.add(2);
  const std::uint64_t end = n + 1;
  const auto blocks = static_cast<std::ptrdiff_t>((end - 3 + kBlock - 1) / kBlock);
  if (exec == Exec::kSerial) {
    scan_urns(seed, 3, end, [&](std::uint64_t u) { acc.add(u); });
    return acc.histogram();
  }
  // Integer counts, so the per-thread merge order cannot change the result.
#pragma omp parallel
  {
    PrefixAccumulator local(k);
#pragma omp for schedule(dynamic, 1) nowait
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
      const std::uint64_t lo = 3 + kBlock * static_cast<std::uint64_t>(b);
      local.reset_cursor();
      scan_urns(seed, lo, std::min(end, lo + kBlock), [&](std::uint64_t u) { local.add(u); });
    }
#pragma omp critical(digitlaw_cramer_merge)
    acc.merge(local);
  }
  return acc.histogram();
}

double cramer_expected_count(std::uint64_t n) {
  check_ceiling(n);
  double sum = 0.0;
  double comp = 0.0;
  for (std::uint64_t k = 3; k <= n; ++k) {
    const double v = 1.0 / std::log(static_cast<double>(k));
    const double t = sum + v;
    comp += (sum - t) + v;
    sum = t;
  }
  return sum + comp;
}

double cramer_count_variance(std::uint64_t n) {
  check_ceiling(n);
  double sum = 0.0;
  for (std::uint64_t k = 3; k <= n; ++k) {
    const double p = 1.0 / std::log(static_cast<double>(k));
    sum += p * (1.0 - p);
  }
  return sum;
}

void write_cramer_manifest(std::ostream& os, const CramerRun& run, const std::string& meta) {
  nlohmann::ordered_json doc;
  doc["seed"] = run.seed;
  doc["ceiling"] = run.ceiling;
  doc["generator_version"] = run.generator_version;
  doc["count"] = run.pseudo_primes.size();
  if (!meta.empty()) doc["meta"] = meta;
  os << doc.dump(2) << '\n';
}

}  // namespace digitlaw
