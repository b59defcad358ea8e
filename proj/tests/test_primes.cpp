#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "digitlaw/error.hpp"
#include "digitlaw/primes.hpp"
#include "digitlaw/sieve.hpp"

using namespace digitlaw;
namespace fs = std::filesystem;

namespace {

bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> trial_primes(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = lo; n < hi; ++n) {
    if (is_prime_trial(n)) out.push_back(n);
  }
  return out;
}

SieveConfig tiny_segments() {
  SieveConfig cfg;
  cfg.segment_flags = 100;  // many segments, boundaries not word aligned
  return cfg;
}

// Midpoint rule for the integral of 1/ln t on [2, x].
double li_midpoint(double x, long panels) {
  const double h = (x - 2.0) / static_cast<double>(panels);
  double sum = 0.0;
  for (long i = 0; i < panels; ++i) sum += 1.0 / std::log(2.0 + (static_cast<double>(i) + 0.5) * h);
  return sum * h;
}

}  // namespace

TEST(PrimesInRange, SmallExample) {
  const auto seg = primes_in_range(2, 11);
  EXPECT_EQ(seg.primes, (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_EQ(seg.lo, 2u);
  EXPECT_EQ(seg.hi, 11u);
}

TEST(PrimesInRange, KnownCounts) {
  EXPECT_EQ(primes_in_range(2, 10'001).primes.size(), 1229u);
  EXPECT_EQ(count_primes(2, 100'000'001, Exec::kParallel), 5761455u);
}

TEST(PrimesInRange, Preconditions) {
  EXPECT_THROW(primes_in_range(1, 10), Error);
  EXPECT_THROW(primes_in_range(10, 10), Error);
  SieveConfig cfg;
  cfg.ceiling = 1000;
  try {
    primes_in_range(2, 5000, Exec::kSerial, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kResource);
  }
  cfg.ceiling = 10'000'000'000ULL;
  cfg.memory_budget_bytes = 1000;
  try {
    primes_in_range(2, 1'000'000, Exec::kSerial, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kResource);
  }
}

TEST(Sieve, MatchesTrialDivisionOnRandomRanges) {
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 60; ++rep) {
    const std::uint64_t lo = 2 + rng() % 2'000'000;
    const std::uint64_t hi = lo + 1 + rng() % 5000;
    const auto expect = trial_primes(lo, hi);
    for (Exec ex : {Exec::kSerial, Exec::kParallel}) {
      EXPECT_EQ(list_primes(lo, hi, ex, tiny_segments()), expect) << lo << ".." << hi;
      EXPECT_EQ(count_primes(lo, hi, ex, tiny_segments()), expect.size());
    }
  }
}

TEST(Sieve, SegmentationIsExact) {
  const std::uint64_t n = 3'000'000;
  const auto whole = count_primes(2, n, Exec::kSerial);
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 20; ++rep) {
    const std::uint64_t cut = 2 + rng() % (n - 2);
    EXPECT_EQ(count_primes(2, cut, Exec::kParallel, tiny_segments()) +
                  count_primes(cut, n, Exec::kParallel),
              whole);
  }
}

TEST(Sieve, ParallelEqualsSerial) {
  for (std::uint64_t hi : {std::uint64_t{3}, std::uint64_t{1000}, std::uint64_t{5'000'017}}) {
    EXPECT_EQ(list_primes(2, hi, Exec::kParallel), list_primes(2, hi, Exec::kSerial));
    for (int k : {1, 2, 3}) {
      EXPECT_EQ(prime_digit_histogram(2, hi, k, Exec::kParallel, tiny_segments()),
                prime_digit_histogram(2, hi, k, Exec::kSerial));
    }
  }
}

TEST(Sieve, HistogramMatchesListedPrimes) {
  const auto primes = list_primes(2, 2'000'000, Exec::kSerial);
  for (int k : {1, 2, 4}) {
    EXPECT_EQ(prime_digit_histogram(2, 2'000'000, k, Exec::kParallel), digit_histogram(primes, k));
  }
  const auto h = prime_digit_histogram(2, 1'000'001, 1, Exec::kParallel);
  EXPECT_EQ(h.total(), 78498u);
}

TEST(PrimeCount, Examples) {
  EXPECT_EQ(prime_count(0), 0u);
  EXPECT_EQ(prime_count(1), 0u);
  EXPECT_EQ(prime_count(2), 1u);
  EXPECT_EQ(prime_count(100), 25u);
  EXPECT_EQ(prime_count(1'000'000), 78498u);
  SieveConfig cfg;
  cfg.ceiling = 1000;
  EXPECT_THROW(prime_count(1001, nullptr, Exec::kSerial, cfg), Error);
}

TEST(PrimeCount, NondecreasingAndMatchesTrial) {
  std::uint64_t prev = 0;
  std::uint64_t trial = 0;
  for (std::uint64_t n = 0; n <= 3000; ++n) {
    if (is_prime_trial(n)) ++trial;
    const auto pi = prime_count(n, nullptr, Exec::kSerial);
    ASSERT_EQ(pi, trial) << n;
    ASSERT_GE(pi, prev);
    prev = pi;
  }
}

TEST(PiCacheFile, RoundTripAndIncrementalSieve) {
  const fs::path dir = fs::temp_directory_path() / ("digitlaw_cache_test_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  const fs::path file = dir / "nested" / "pi.json";
  {
    PiCache cache(file);
    EXPECT_FALSE(cache.lookup(1'000'000).has_value());
    EXPECT_EQ(prime_count(1'000'000, &cache), 78498u);
    EXPECT_EQ(cache.lookup(1'000'000), std::optional<std::uint64_t>(78498));
  }
  {
    PiCache cache(file);
    EXPECT_EQ(cache.lookup(1'000'000), std::optional<std::uint64_t>(78498));
    const auto fl = cache.floor_entry(2'000'000);
    ASSERT_TRUE(fl.has_value());
    EXPECT_EQ(fl->first, 1'000'000u);
    // Sieves only (10^6, 2*10^6] on top of the cached value.
    EXPECT_EQ(prime_count(2'000'000, &cache), count_primes(2, 2'000'001, Exec::kSerial));
  }
  {
    // A corrupt cache is ignored rather than trusted.
    std::ofstream(file) << "{not json";
    PiCache cache(file);
    EXPECT_FALSE(cache.lookup(1'000'000).has_value());
    EXPECT_EQ(prime_count(1'000'000, &cache), 78498u);
  }
  fs::remove_all(dir);
}

TEST(PiCacheFile, DefaultPathHonoursEnvironment) {
  ::setenv("DIGITLAW_CACHE", "/tmp/x/pi.json", 1);
  EXPECT_EQ(PiCache::default_path(), fs::path("/tmp/x/pi.json"));
  ::unsetenv("DIGITLAW_CACHE");
}

TEST(LogIntegral, Examples) {
  EXPECT_EQ(li(2.0), 0.0);
  // 40-digit reference values of li(x) - li(2).
  EXPECT_NEAR(li(10.0), 5.1204357246698051527, 1e-9);
  EXPECT_NEAR(li(1e3), 176.5644942100347339, 1e-8);
  EXPECT_NEAR(li(1e5), 9628.7638372706807122, 1e-7);
  EXPECT_NEAR(li(1e8), 5762208.3302842513501, 1e-6);
  EXPECT_NEAR(li(1e9), 50849233.911838017887, 1e-6);
  EXPECT_EQ(std::llround(li(1e8)), 5762208);
  EXPECT_THROW(li(1.5), Error);
}

TEST(LogIntegral, AgreesWithMidpointRule) {
  for (double x : {3.0, 17.5, 1000.0, 1e5}) {
    const double ref = li_midpoint(x, 10'000'000);
    EXPECT_NEAR(li(x) / ref, 1.0, 1e-4) << x;
  }
}

TEST(LogIntegral, CdfNumeratorConvention) {
  EXPECT_EQ(li_cdf_numerator(1.0), 0.0);
  EXPECT_EQ(li_cdf_numerator(1.7), 0.0);
  EXPECT_EQ(li_cdf_numerator(2.0), 0.0);
  EXPECT_EQ(li_cdf_numerator(100.0), li(100.0));
}

TEST(LogIntegral, CloseToPi) {
  for (std::uint64_t n = 100'000; n <= 1'000'000'000; n *= 10) {
    const double pi = static_cast<double>(prime_count(n));
    EXPECT_LT(std::abs(li(static_cast<double>(n)) - pi) / pi, 0.01) << n;
  }
}

TEST(SizeLawCount, Examples) {
  EXPECT_NEAR(l_count(1e4, 1.1), 1227.3211458229540288, 1e-7);
  EXPECT_NEAR(l_count(1e9, 1.1), 50769090.472390994769, 1e-4);
  EXPECT_THROW(l_count(2.0, 1.1), Error);
  EXPECT_THROW(l_count(5.0, 1.1), Error);  // alpha >= 1
}

TEST(SizeLawCount, ApproachesPrimeNumberTheorem) {
  double prev = std::abs(l_count(1e4, 1.1) / (1e4 / std::log(1e4)) - 1.0);
  for (double n = 1e6; n <= 1e18; n *= 100) {
    const double gap = std::abs(l_count(n, 1.1) / (n / std::log(n)) - 1.0);
    EXPECT_LT(gap, prev) << n;
    prev = gap;
  }
  EXPECT_LT(prev, 0.03);
}

TEST(ExpansionError, Coefficient) {
  EXPECT_EQ(expansion_error_coeff(1.0), 0.5);
  EXPECT_EQ(expansion_error_coeff(0.0), 1.0);
  EXPECT_EQ(expansion_error_coeff(2.0), 1.0);
  double best_a = 0.0;
  double best = 1e300;
  for (int i = 0; i <= 2000; ++i) {
    const double a = i * 1e-3;
    if (expansion_error_coeff(a) < best) {
      best = expansion_error_coeff(a);
      best_a = a;
    }
  }
  EXPECT_NEAR(best_a, 1.0, 5e-4);
}

TEST(CountingTableRows, DecadesAndRemainder) {
  const auto t = counting_table(123'456, 1.1);
  ASSERT_EQ(t.rows.size(), 5u);
  EXPECT_EQ(t.rows[0].n, 100u);
  EXPECT_EQ(t.rows[0].pi, 25u);
  EXPECT_EQ(t.rows[3].pi, 9592u);
  EXPECT_EQ(t.rows[4].n, 123'456u);
  EXPECT_EQ(t.rows[4].pi, prime_count(123'456));
  for (const auto& r : t.rows) {
    EXPECT_DOUBLE_EQ(r.ratio_l_pi, r.l / static_cast<double>(r.pi));
    EXPECT_DOUBLE_EQ(r.n_over_log, static_cast<double>(r.n) / std::log(static_cast<double>(r.n)));
  }
  const auto single = counting_table(100, 1.1);
  ASSERT_EQ(single.rows.size(), 1u);
  EXPECT_EQ(single.rows[0].pi, 25u);
}

TEST(CountingTableRows, CsvHeader) {
  std::ostringstream os;
  write_counting_csv(os, counting_table(1000, 1.1));
  const std::string s = os.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "N,pi,li,n_over_log,l,ratio_l_pi");
  EXPECT_NE(s.find("\n1000,168,176.564494,"), std::string::npos);
}

TEST(PrimePiTable, MatchesSieveCounts) {
  const PrimePi pi(1'000'000, Exec::kParallel);
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 200; ++rep) {
    const std::uint64_t x = rng() % 1'000'001;
    const auto expect = x < 2 ? 0 : count_primes(2, x + 1, Exec::kSerial);
    ASSERT_EQ(pi.at_most(static_cast<double>(x)), expect) << x;
    ASSERT_EQ(pi.at_most(static_cast<double>(x) + 0.5), expect) << x;
    ASSERT_EQ(pi.below(static_cast<double>(x)), x <= 2 ? 0 : count_primes(2, x, Exec::kSerial)) << x;
  }
  EXPECT_EQ(pi.below(3.0), 1u);
  EXPECT_EQ(pi.at_most(2.0), 1u);
  EXPECT_EQ(pi.below(2.0), 0u);
  EXPECT_EQ(pi.at_most(1'000'000.0), 78498u);
}
