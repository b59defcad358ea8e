#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "digitlaw/error.hpp"
#include "digitlaw/sieve.hpp"
#include "digitlaw/stats.hpp"

using namespace digitlaw;

namespace {

DigitHistogram histogram_from_counts(const std::array<std::uint64_t, 9>& c) {
  return histogram_from_dense(1, c);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no exception";
  return ErrorKind::kUsage;
}

}  // namespace

TEST(MadClasses, HalfOpenBands) {
  EXPECT_EQ(classify_mad(0.0), MadClass::kClose);
  EXPECT_EQ(classify_mad(std::nextafter(0.004, 0.0)), MadClass::kClose);
  EXPECT_EQ(classify_mad(0.004), MadClass::kAcceptable);
  EXPECT_EQ(classify_mad(0.008), MadClass::kMarginal);
  EXPECT_EQ(classify_mad(std::nextafter(0.012, 0.0)), MadClass::kMarginal);
  EXPECT_EQ(classify_mad(0.012), MadClass::kNonconforming);
  EXPECT_STREQ(to_string(MadClass::kAcceptable), "acceptable");
}

TEST(Chi2Decisions, CriticalValues) {
  EXPECT_EQ(Chi2Critical::kP10, 12.02);
  EXPECT_EQ(Chi2Critical::kP05, 14.07);
  EXPECT_EQ(Chi2Critical::kP01, 18.47);
  const auto at = decide_chi2(12.02);
  EXPECT_FALSE(at.reject_p10);
  const auto mid = decide_chi2(15.0);
  EXPECT_TRUE(mid.reject_p10);
  EXPECT_TRUE(mid.reject_p05);
  EXPECT_FALSE(mid.reject_p01);
  EXPECT_TRUE(decide_chi2(18.48).reject_p01);
}

TEST(GblMean, HighPrecisionValues) {
  EXPECT_NEAR(gbl_mean(0.5), 4.2337293605331059293, 1e-14);
  EXPECT_NEAR(gbl_mean_derivative(0.5), -1.5909898432783686499, 1e-12);
  EXPECT_NEAR(gbl_mean(-2.0), 6.981981981981981982, 1e-14);
  EXPECT_NEAR(gbl_mean_derivative(-2.0), -0.601231136716527965, 1e-12);
}

TEST(GblMean, DerivativeMatchesFiniteDifference) {
  for (double b = -4.0; b <= 4.0; b += 0.173) {
    const double h = 1e-5;
    const double fd = (gbl_mean(b + h) - gbl_mean(b - h)) / (2 * h);
    EXPECT_NEAR(gbl_mean_derivative(b), fd, 1e-6) << b;
  }
}

TEST(FitMoments, UniformAndBenford) {
  const auto uni = fit_alpha_moments(histogram_from_counts({7, 7, 7, 7, 7, 7, 7, 7, 7}), Convention::kPrimes);
  EXPECT_NEAR(uni.alpha, 0.0, 1e-10);
  std::array<double, 9> benford{};
  for (int d = 1; d <= 9; ++d) benford[static_cast<std::size_t>(d - 1)] = std::log10(1.0 + 1.0 / d);
  const auto b = fit_alpha_moments(benford, Convention::kPrimes);
  EXPECT_NEAR(b.alpha, 1.0, 1e-8);
  EXPECT_LE(b.residual, 1e-10);
  const auto z = fit_alpha_moments(benford, Convention::kZeros);
  EXPECT_NEAR(z.alpha, -1.0, 1e-8);
}

TEST(FitMoments, RecoversExponent) {
  for (double beta = -1.5; beta <= 1.5; beta += 0.01) {
    const auto fit = fit_alpha_moments(gbl_pmf_all(beta), Convention::kPrimes);
    EXPECT_NEAR(fit.beta, beta, 1e-8);
    EXPECT_LE(fit.residual, 1e-10);
    EXPECT_LE(fit.iterations, 100);
  }
}

TEST(FitMoments, FarExponentsNeedWiderBracket) {
  for (double beta : {-9.0, 7.5}) {
    const auto fit = fit_alpha_moments(gbl_pmf_all(beta), Convention::kPrimes);
    EXPECT_NEAR(fit.beta, beta, 1e-6);
  }
}

TEST(FitMoments, Errors) {
  EXPECT_EQ(kind_of([] { fit_alpha_moments(DigitHistogram(1), Convention::kPrimes); }), ErrorKind::kDomain);
  EXPECT_EQ(kind_of([] { fit_alpha_moments(histogram_from_counts({5, 0, 0, 0, 0, 0, 0, 0, 0}), Convention::kPrimes); }),
            ErrorKind::kDomain);
  EXPECT_EQ(kind_of([] { fit_alpha_moments(histogram_from_counts({0, 0, 0, 0, 0, 0, 0, 0, 4}), Convention::kPrimes); }),
            ErrorKind::kDomain);
  FitOptions opt;
  opt.max_iterations = 1;
  EXPECT_EQ(kind_of([&] { fit_alpha_moments(gbl_pmf_all(0.7), Convention::kPrimes, opt); }), ErrorKind::kNumeric);
}

TEST(FitMoments, PrimesBelowHundredMillion) {
  const auto h = prime_digit_histogram(2, 100'000'001, 1, Exec::kParallel);
  const auto fit = fit_alpha_moments(h, Convention::kPrimes);
  EXPECT_NEAR(fit.alpha, 1.0 / (std::log(1e8) - 1.1), 0.002);
}

TEST(FitSizeConstant, ExactRecovery) {
  std::vector<std::pair<double, double>> pts;
  for (double n = 1e4; n <= 1e9; n *= 10) pts.emplace_back(n, 1.0 / (std::log(n) - 1.1));
  EXPECT_NEAR(fit_size_constant(pts), 1.1, 1e-9);
  pts.clear();
  for (double n = 1e3; n <= 1e5; n *= 10) pts.emplace_back(n, 1.0 / (std::log(n) - 2.92));
  EXPECT_NEAR(fit_size_constant(pts), 2.92, 1e-9);
}

TEST(FitSizeConstant, Errors) {
  const std::vector<std::pair<double, double>> same{{1e4, 0.1}, {1e4, 0.12}};
  EXPECT_EQ(kind_of([&] { fit_size_constant(same); }), ErrorKind::kDomain);
  const std::vector<std::pair<double, double>> one{{1e4, 0.1}};
  EXPECT_EQ(kind_of([&] { fit_size_constant(one); }), ErrorKind::kDomain);
  const std::vector<std::pair<double, double>> neg{{1e4, 0.1}, {1e5, -0.1}};
  EXPECT_EQ(kind_of([&] { fit_size_constant(neg); }), ErrorKind::kDomain);
}

TEST(TestReportStats, PerfectFit) {
  const auto model = GblParams{0.3};
  const auto rep = test_report(gbl_pmf_all(0.3), 1000, model);
  EXPECT_NEAR(rep.chi2, 0.0, 1e-20);
  EXPECT_EQ(rep.m, 0.0);
  EXPECT_EQ(rep.mad, 0.0);
  EXPECT_NEAR(rep.r, 1.0, 1e-15);
  EXPECT_EQ(rep.dof, 7);
  EXPECT_EQ(rep.mad_class, MadClass::kClose);
}

TEST(TestReportStats, Invariants) {
  std::mt19937_64 rng(4);
  for (int rep_i = 0; rep_i < 200; ++rep_i) {
    std::array<std::uint64_t, 9> c{};
    for (auto& x : c) x = 1 + rng() % 1000;
    const auto h = histogram_from_counts(c);
    const auto r = test_report(h, GblParams{static_cast<double>(rng() % 300) / 100.0 - 1.0});
    EXPECT_GE(r.chi2, 0.0);
    EXPECT_LE(r.mad, r.m);
    EXPECT_GE(r.mad, 0.0);
    EXPECT_GE(r.r, -1.0 - 1e-15);
    EXPECT_LE(r.r, 1.0 + 1e-15);
    EXPECT_EQ(r.mad_class, classify_mad(r.mad));
  }
}

TEST(TestReportStats, IndependentFormulas) {
  const std::array<std::uint64_t, 9> c{300, 180, 120, 100, 80, 70, 60, 50, 40};
  const auto h = histogram_from_counts(c);
  const double beta = 0.8;
  const auto rep = test_report(h, GblParams{beta});
  double chi = 0, m = 0, mad = 0;
  const double total = 1000.0;
  for (int d = 1; d <= 9; ++d) {
    const double s = 1.0 - beta;
    const double e = (std::pow(d + 1.0, s) - std::pow(d, s)) / (std::pow(10.0, s) - 1.0);
    const double f = static_cast<double>(c[static_cast<std::size_t>(d - 1)]) / total;
    chi += total * (f - e) * (f - e) / e;
    m = std::max(m, std::abs(f - e));
    mad += std::abs(f - e) / 9.0;
  }
  EXPECT_NEAR(rep.chi2, chi, 1e-10);
  EXPECT_NEAR(rep.m, m, 1e-15);
  EXPECT_NEAR(rep.mad, mad, 1e-15);
}

TEST(TestReportStats, Chi2ScalesWithSampleSize) {
  const std::array<std::uint64_t, 9> c{310, 170, 125, 95, 80, 70, 60, 50, 40};
  std::array<std::uint64_t, 9> c10{};
  for (std::size_t i = 0; i < 9; ++i) c10[i] = 10 * c[i];
  const auto a = test_report(histogram_from_counts(c), GblParams{1.0});
  const auto b = test_report(histogram_from_counts(c10), GblParams{1.0});
  EXPECT_NEAR(b.chi2 / a.chi2, 10.0, 1e-6);
  EXPECT_NEAR(b.mad, a.mad, 1e-15);
}

TEST(Pearson, AffineInvariance) {
  const std::vector<double> x{1, 3, 2, 7, 5, 4};
  const std::vector<double> y{2, 2.5, 2.2, 6, 5.5, 3};
  const double r = pearson(x, y);
  std::vector<double> y2;
  for (double v : y) y2.push_back(3.5 * v - 11.0);
  EXPECT_NEAR(pearson(x, y2), r, 1e-14);
  std::vector<double> y3;
  for (double v : y) y3.push_back(-v);
  EXPECT_NEAR(pearson(x, y3), -r, 1e-14);
  EXPECT_EQ(pearson(std::vector<double>{1, 1}, std::vector<double>{1, 1}), 1.0);
  EXPECT_EQ(pearson(std::vector<double>{1, 1}, std::vector<double>{1, 2}), 0.0);
  EXPECT_THROW(pearson(std::vector<double>{1}, std::vector<double>{1, 2}), Error);
}

TEST(Conformance, PowerLawHasZeroDistance) {
  for (double beta : {-0.4, 0.0577, 0.3, 1.0}) {
    for (int decades : {1, 3, 8}) {
      const auto f = power_law_cdf(beta, decades - 1);
      EXPECT_NEAR(conformance_chi2(f, decades, beta), 0.0, 1e-12);
      EXPECT_NEAR(conformance_correlation(f, beta, decades - 1, 100), 1.0, 1e-12);
    }
  }
}

TEST(Conformance, InducedLawSumsToOne) {
  const auto f = power_law_cdf(0.4, 4);
  const auto p = induced_first_digit_law(f, 5);
  double s = 0.0;
  for (double v : p) s += v;
  EXPECT_NEAR(s, 1.0, 1e-14);
}

TEST(Conformance, Errors) {
  const CdfFunction unnormalized = [](double x) { return std::log10(x) / 4.0; };
  EXPECT_EQ(kind_of([&] { conformance_chi2(unnormalized, 3, 1.0); }), ErrorKind::kContract);
  const auto f = power_law_cdf(0.3, 2);
  EXPECT_EQ(kind_of([&] { conformance_correlation(f, 0.3, 2, 5); }), ErrorKind::kDomain);
}

TEST(ReportJson, Schema) {
  TestReport rep = test_report(gbl_pmf_all(0.2), 50, GblParams{0.25});
  rep.sequence = "primes";
  rep.n = 1e4;
  rep.alpha = 0.25;
  rep.alpha_source = "fit";
  std::ostringstream os;
  write_report_json(os, rep, "digitlaw x analyze 0");
  const auto j = nlohmann::ordered_json::parse(os.str());
  const std::vector<std::string> keys{"chi2", "dof", "chi2_critical", "m", "mad", "mad_class",
                                      "r", "alpha", "N", "sequence"};
  auto it = j.begin();
  for (const auto& k : keys) {
    ASSERT_NE(it, j.end());
    EXPECT_EQ(it.key(), k);
    ++it;
  }
  EXPECT_EQ(j["chi2_critical"]["p05"], 14.07);
  EXPECT_EQ(j["dof"], 7);
  EXPECT_EQ(j["meta"], "digitlaw x analyze 0");
}
