#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "digitlaw/cramer.hpp"
#include "digitlaw/error.hpp"

using namespace digitlaw;

TEST(Philox, KnownAnswerVectors) {
  // Reference vectors published with the Random123 library.
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  EXPECT_EQ(Philox4x32::generate(C{0, 0, 0, 0}, K{0, 0}),
            (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::generate(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                 K{0xffffffff, 0xffffffff}),
            (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::generate(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                 K{0xa4093822, 0x299f31d0}),
            (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(UrnUniform, RangeAndDeterminism) {
  for (std::uint64_t k = 0; k < 10000; ++k) {
    const double u = urn_uniform(42, k);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_EQ(u, urn_uniform(42, k));
  }
  EXPECT_NE(urn_uniform(1, 5), urn_uniform(2, 5));
}

TEST(CramerSequence, SingleUrn) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto run = cramer_sequence(3, seed);
    EXPECT_LE(run.pseudo_primes.size(), 1u);
    if (!run.pseudo_primes.empty()) EXPECT_EQ(run.pseudo_primes[0], 3u);
  }
  EXPECT_THROW(cramer_sequence(2, 0), Error);
}

TEST(CramerSequence, MatchesUrnDefinition) {
  const auto run = cramer_sequence(20000, 99, Exec::kSerial);
  std::vector<std::uint64_t> expect;
  for (std::uint64_t k = 3; k <= 20000; ++k) {
    if (urn_uniform(99, k) * std::log(static_cast<double>(k)) < 1.0) expect.push_back(k);
  }
  EXPECT_EQ(run.pseudo_primes, expect);
  EXPECT_EQ(run.seed, 99u);
  EXPECT_EQ(run.ceiling, 20000u);
  EXPECT_EQ(run.generator_version, kCramerGeneratorVersion);
}

TEST(CramerSequence, IncludeTwoOption) {
  CramerOptions opt;
  opt.include_two = true;
  const auto run = cramer_sequence(100, 5, Exec::kSerial, opt);
  ASSERT_FALSE(run.pseudo_primes.empty());
  EXPECT_EQ(run.pseudo_primes.front(), 2u);
  EXPECT_EQ(cramer_count(100, 5, Exec::kSerial, opt), run.pseudo_primes.size());
}

TEST(CramerSequence, ParallelEqualsSerialAndPrefixStable) {
  const std::uint64_t n = 3'000'000;
  const auto par = cramer_sequence(n, 7, Exec::kParallel);
  const auto ser = cramer_sequence(n, 7, Exec::kSerial);
  EXPECT_EQ(par.pseudo_primes, ser.pseudo_primes);
  EXPECT_EQ(cramer_count(n, 7, Exec::kParallel), ser.pseudo_primes.size());
  // The run to a smaller ceiling is a prefix of the larger one.
  const auto small = cramer_sequence(1'000'000, 7, Exec::kParallel);
  ASSERT_LE(small.pseudo_primes.size(), par.pseudo_primes.size());
  EXPECT_TRUE(std::equal(small.pseudo_primes.begin(), small.pseudo_primes.end(), par.pseudo_primes.begin()));
  for (int k : {1, 2}) {
    const auto h = cramer_digit_histogram(n, 7, k, Exec::kParallel);
    EXPECT_EQ(h, cramer_digit_histogram(n, 7, k, Exec::kSerial));
    EXPECT_EQ(h, digit_histogram(ser.pseudo_primes, k));
  }
}

TEST(CramerExpectation, SumOfReciprocalLogs) {
  EXPECT_NEAR(cramer_expected_count(1000), 175.99610527361830969, 1e-10);
  EXPECT_EQ(cramer_expected_count(3), 1.0 / std::log(3.0));
  double var = 0.0;
  for (int k = 3; k <= 1000; ++k) {
    const double p = 1.0 / std::log(k);
    var += p * (1 - p);
  }
  EXPECT_NEAR(cramer_count_variance(1000), var, 1e-9);
}

TEST(CramerExpectation, MonteCarloMeanWithinThreeStandardErrors) {
  const std::uint64_t n = 1'000'000;
  constexpr int kSeeds = 24;
  double sum = 0.0;
  for (int s = 0; s < kSeeds; ++s) sum += static_cast<double>(cramer_count(n, 1000 + s));
  const double mean = sum / kSeeds;
  const double se = std::sqrt(cramer_count_variance(n) / kSeeds);
  EXPECT_LT(std::abs(mean - cramer_expected_count(n)), 3.0 * se);
  // Single runs sit within four sigma of the offset log integral.
  EXPECT_LT(std::abs(static_cast<double>(cramer_count(n, 1)) - 78628.0), 4.0 * std::sqrt(78628.0));
}

TEST(CramerManifest, Fields) {
  const auto run = cramer_sequence(1000, 3);
  std::ostringstream os;
  write_cramer_manifest(os, run);
  const auto j = nlohmann::json::parse(os.str());
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(j["ceiling"], 1000);
  EXPECT_EQ(j["generator_version"], kCramerGeneratorVersion);
  EXPECT_EQ(j["count"], run.pseudo_primes.size());
  EXPECT_FALSE(j.contains("meta"));
}
