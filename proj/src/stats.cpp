#include "digitlaw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <json.hpp>

#include "digitlaw/error.hpp"

namespace digitlaw {

namespace {

const double kLn10 = std::log(10.0);

// d p_d / d s with s = 1 - beta.
double pmf_slope(int d, double s) {
  const double l0 = std::log(static_cast<double>(d));
  const double l1 = std::log(static_cast<double>(d) + 1.0);
  if (std::abs(s) < 1e-4) {
    const double base = (l1 - l0) / kLn10;
    return base * (l1 + l0 - kLn10) / 2.0;
  }
  if (s > 0.0) {
    // Everything scaled by 10^-s so large s cannot overflow.
    const double r0 = std::exp(s * (l0 - kLn10));
    const double r1 = std::exp(s * (l1 - kLn10));
    const double q = std::exp(-s * kLn10);
    const double den = -std::expm1(-s * kLn10);
    const double num = (r1 * (l1 - kLn10) - r0 * (l0 - kLn10)) * den - (r1 - r0) * q * kLn10;
    return num / (den * den);
  }
  const double e0 = std::exp(s * l0);
  const double e1 = std::exp(s * l1);
  const double den = std::expm1(s * kLn10);
  const double num = (e1 * l1 - e0 * l0) * den - (e1 - e0) * std::exp(s * kLn10) * kLn10;
  return num / (den * den);
}

double empirical_mean(const std::array<double, 9>& f) {
  double m = 0.0;
  for (int d = 1; d <= 9; ++d) m += d * f[static_cast<std::size_t>(d - 1)];
  return m;
}

}  // namespace

MadClass classify_mad(double mad) {
  if (mad < kMadClose) return MadClass::kClose;
  if (mad < kMadAcceptable) return MadClass::kAcceptable;
  if (mad < kMadMarginal) return MadClass::kMarginal;
  return MadClass::kNonconforming;
}

const char* to_string(MadClass c) {
  switch (c) {
    case MadClass::kClose: return "close";
    case MadClass::kAcceptable: return "acceptable";
    case MadClass::kMarginal: return "marginal";
    case MadClass::kNonconforming: return "nonconforming";
  }
  return "unknown";
}

Chi2Decision decide_chi2(double chi2) {
  return {chi2 > Chi2Critical::kP10, chi2 > Chi2Critical::kP05, chi2 > Chi2Critical::kP01};
}

double gbl_mean(double beta) {
  const auto p = gbl_pmf_all(beta);
  return empirical_mean(p);
}

double gbl_mean_derivative(double beta) {
  const double s = 1.0 - beta;
  double acc = 0.0;
  for (int d = 1; d <= 9; ++d) acc += d * pmf_slope(d, s);
  return -acc;  // d/dbeta = -d/ds
}

FitResult fit_alpha_moments(const DigitHistogram& hist, Convention c, const FitOptions& opt) {
  if (hist.total() == 0) fail(ErrorKind::kDomain, "cannot fit an empty histogram");
  return fit_alpha_moments(hist.first_digit_frequencies(), c, opt);
}

FitResult fit_alpha_moments(const std::array<double, 9>& freqs, Convention c,
                            const FitOptions& opt) {
  double total = 0.0;
  for (double f : freqs) {
    if (!(f >= 0.0) || !std::isfinite(f)) fail(ErrorKind::kDomain, "frequencies must be finite and non-negative");
    total += f;
  }
  if (std::abs(total - 1.0) > 1e-9) fail(ErrorKind::kDomain, "frequencies must sum to one");
  const double target = empirical_mean(freqs);
  if (!(target > 1.0 && target < 9.0)) {
    fail(ErrorKind::kDomain, "mean first digit must lie strictly between 1 and 9");
  }

  // The GBL mean decreases in beta. Grow the bracket until it holds the target.
  double lo = -5.0;
  double hi = 5.0;
  while (gbl_mean(lo) < target) {
    lo *= 2.0;
    if (lo < -1e6) fail(ErrorKind::kNumeric, "could not bracket the moment equation");
  }
  while (gbl_mean(hi) > target) {
    hi *= 2.0;
    if (hi > 1e6) fail(ErrorKind::kNumeric, "could not bracket the moment equation");
  }

  FitResult out;
  double beta = 0.0;
  for (int it = 1; it <= opt.max_iterations; ++it) {
    out.iterations = it;
    const double g = gbl_mean(beta) - target;
    if (g == 0.0) break;
    if (g > 0.0) lo = beta; else hi = beta;
    const double slope = gbl_mean_derivative(beta);
    double next = beta - g / slope;
    if (!std::isfinite(next) || next < lo || next > hi) next = 0.5 * (lo + hi);
    const double step = std::abs(next - beta);
    beta = next;
    if (std::abs(g) <= opt.tolerance && step <= 1e-13 * std::max(1.0, std::abs(beta))) break;
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(beta))) break;
  }
  out.beta = beta;
  out.residual = std::abs(gbl_mean(beta) - target);
  if (out.residual > opt.tolerance) {
    fail(ErrorKind::kNumeric, "moment fit did not converge");
  }
  out.alpha = GblParams{beta, std::nullopt}.alpha(c);
  return out;
}

double fit_size_constant(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) fail(ErrorKind::kDomain, "need at least two (N, alpha) points");
  double min_log = std::numeric_limits<double>::infinity();
  double max_log = -min_log;
  for (const auto& [n, alpha] : points) {
    if (!(n > 1.0) || !std::isfinite(n)) fail(ErrorKind::kDomain, "N must exceed 1");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) fail(ErrorKind::kDomain, "alpha must be positive");
    min_log = std::min(min_log, std::log(n));
    max_log = std::max(max_log, std::log(n));
  }
  if (max_log == min_log) fail(ErrorKind::kDomain, "need at least two distinct N");

  // Derivative of the squared error, up to a factor of -2.
  auto slope = [&](double a) {
    double acc = 0.0;
    for (const auto& [n, alpha] : points) {
      const double f = 1.0 / (std::log(n) - a);
      acc += (alpha - f) * f * f;
    }
    return acc;
  };
  auto loss = [&](double a) {
    double acc = 0.0;
    for (const auto& [n, alpha] : points) {
      const double e = alpha - 1.0 / (std::log(n) - a);
      acc += e * e;
    }
    return acc;
  };

  // a = min ln N - exp(t); scan t, then bisect the derivative around the best node.
  constexpr int kNodes = 4000;
  const double t_lo = std::log(1e-6);
  const double t_hi = std::log(1e3);
  auto a_at = [&](int i) {
    return min_log - std::exp(t_lo + (t_hi - t_lo) * i / kNodes);
  };
  int best = 0;
  double best_loss = loss(a_at(0));
  for (int i = 1; i <= kNodes; ++i) {
    const double v = loss(a_at(i));
    if (v < best_loss) { best_loss = v; best = i; }
  }
  if (best == 0 || best == kNodes) {
    fail(ErrorKind::kNumeric, "size-constant fit has no interior minimum");
  }
  // a decreases with i: a_at(best+1) < a_at(best) < a_at(best-1).
  double left = a_at(best + 1);
  double right = a_at(best - 1);
  // slope > 0 means the loss decreases as a grows.
  for (int i = 0; i < 200 && right - left > 1e-15 * std::max(1.0, std::abs(left)); ++i) {
    const double mid = 0.5 * (left + right);
    if (slope(mid) > 0.0) left = mid; else right = mid;
  }
  return 0.5 * (left + right);
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) fail(ErrorKind::kDomain, "pearson needs equal non-empty inputs");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    return std::equal(x.begin(), x.end(), y.begin()) ? 1.0 : 0.0;
  }
  return sxy / std::sqrt(sxx * syy);
}

TestReport test_report(const DigitHistogram& hist, const GblParams& model) {
  if (hist.total() == 0) fail(ErrorKind::kDomain, "cannot test an empty histogram");
  return test_report(hist.first_digit_frequencies(), hist.total(), model);
}

TestReport test_report(const std::array<double, 9>& freqs, std::uint64_t sample_size,
                       const GblParams& model) {
  const auto expected = gbl_pmf_all(model.exponent);
  TestReport rep;
  rep.sample_size = sample_size;
  rep.beta = model.exponent;
  rep.alpha = model.exponent;
  double chi = 0.0, m = 0.0, mad = 0.0;
  for (std::size_t i = 0; i < 9; ++i) {
    const double diff = freqs[i] - expected[i];
    chi += diff * diff / expected[i];
    m = std::max(m, std::abs(diff));
    mad += std::abs(diff);
  }
  rep.chi2 = static_cast<double>(sample_size) * chi;
  rep.chi2_decision = decide_chi2(rep.chi2);
  rep.m = m;
  rep.mad = mad / 9.0;
  rep.mad_class = classify_mad(rep.mad);
  rep.r = pearson(freqs, expected);
  return rep;
}

std::array<double, 9> induced_first_digit_law(const CdfFunction& cdf, int decades) {
  if (decades < 1) fail(ErrorKind::kDomain, "need at least one decade");
  std::array<double, 9> p{};
  for (int j = 0; j < decades; ++j) {
    const double scale = std::pow(10.0, j);
    double prev = cdf(scale);
    for (int d = 1; d <= 9; ++d) {
      const double cur = cdf((d + 1) * scale);
      p[static_cast<std::size_t>(d - 1)] += cur - prev;
      prev = cur;
    }
  }
  return p;
}

double conformance_chi2(const CdfFunction& cdf, int decades, double beta) {
  if (decades < 1) fail(ErrorKind::kDomain, "need at least one decade");
  const double lo = cdf(1.0);
  const double hi = cdf(std::pow(10.0, decades));
  if (std::abs(lo) > 1e-12 || std::abs(hi - 1.0) > 1e-12) {
    fail(ErrorKind::kContract, "cdf must run from 0 at 1 to 1 at the top of the range");
  }
  const auto p = induced_first_digit_law(cdf, decades);
  const auto e = gbl_pmf_all(beta);
  double chi = 0.0;
  for (std::size_t i = 0; i < 9; ++i) {
    if (p[i] < -1e-12) fail(ErrorKind::kContract, "cdf is not monotone");
    chi += (p[i] - e[i]) * (p[i] - e[i]) / e[i];
  }
  return chi;
}

double conformance_correlation(const CdfFunction& cdf, double beta, int top_decade, int grid) {
  if (grid < 10) fail(ErrorKind::kDomain, "grid needs at least ten intervals");
  std::vector<double> z(static_cast<std::size_t>(grid) + 1);
  std::vector<double> sum(z.size());
  for (int i = 0; i <= grid; ++i) {
    z[static_cast<std::size_t>(i)] = static_cast<double>(i) / grid;
    sum[static_cast<std::size_t>(i)] = conformance_sum(cdf, beta, top_decade, z[static_cast<std::size_t>(i)]);
  }
  return pearson(z, sum);
}

void write_report_json(std::ostream& os, const TestReport& r, const std::string& meta) {
  nlohmann::ordered_json j;
  j["chi2"] = r.chi2;
  j["dof"] = r.dof;
  j["chi2_critical"] = {{"p10", Chi2Critical::kP10}, {"p05", Chi2Critical::kP05},
                        {"p01", Chi2Critical::kP01}};
  j["m"] = r.m;
  j["mad"] = r.mad;
  j["mad_class"] = to_string(r.mad_class);
  j["r"] = r.r;
  j["alpha"] = r.alpha;
  j["N"] = r.n;
  j["sequence"] = r.sequence;
  j["sample_size"] = r.sample_size;
  j["alpha_source"] = r.alpha_source;
  if (!meta.empty()) j["meta"] = meta;
  os << j.dump(2) << '\n';
}

}  // namespace digitlaw
