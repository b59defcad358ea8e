#include "digitlaw/gbl.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "digitlaw/error.hpp"

namespace digitlaw {

namespace {

const double kLn10 = std::log(10.0);

bool near_benford(double s) { return std::abs(s) < kBenfordLimitBand; }

// Mass of the significand interval [x, x(1 + 1/x)) = [x, x + 1) under the
// law with exponent 1 - s, relative to a decade whose lower edge is `base`.
// Written with expm1 so nothing cancels as s -> 0 and nothing overflows for
// large |s|.
double interval_mass(double x, double base, double s) {
  const double c = std::log1p(1.0 / x);
  if (near_benford(s)) return c / kLn10;
  if (s > 0.0) {
    // ((x+1)^s - x^s) / ((10 base)^s - base^s), scaled by (10 base)^-s.
    return std::pow(x / (10.0 * base), s) * std::expm1(s * c) /
           -std::expm1(-s * kLn10);
  }
  return std::pow(x / base, s) * std::expm1(s * c) / std::expm1(s * kLn10);
}

void check_digit(int d, const char* what) {
  if (d < 1 || d > 9) {
    fail(ErrorKind::kDomain, std::string(what) + " must be in 1..9, got " + std::to_string(d));
  }
}

// Exact decimal exponent of a positive finite double.
int decade_of(double t) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, t, std::chars_format::scientific);
  const char* e = std::find(buf, res.ptr, 'e');
  int exp10 = 0;
  std::from_chars(e + 1 + (e[1] == '+' ? 1 : 0), res.ptr, exp10);
  return exp10;
}

}  // namespace

GblParams GblParams::from_alpha(double alpha, Convention c, std::optional<double> a) {
  return GblParams{c == Convention::kPrimes ? alpha : -alpha, a};
}

double GblParams::alpha(Convention c) const {
  return c == Convention::kPrimes ? exponent : -exponent;
}

UniformSample::UniformSample(double u) : u_(u) {
  if (!(u >= 0.0 && u < 1.0)) fail(ErrorKind::kDomain, "uniform sample must lie in [0, 1)");
}

double gbl_pmf(int d, double beta) {
  check_digit(d, "first digit");
  return interval_mass(static_cast<double>(d), 1.0, 1.0 - beta);
}

std::array<double, 9> gbl_pmf_all(double beta) {
  std::array<double, 9> p{};
  for (int d = 1; d <= 9; ++d) p[static_cast<std::size_t>(d - 1)] = gbl_pmf(d, beta);
  return p;
}

double gbl_cdf(int y, double beta) {
  check_digit(y, "digit");
  if (y == 9) return 1.0;
  const double s = 1.0 - beta;
  const double l = std::log(static_cast<double>(y) + 1.0);
  if (near_benford(s)) return l / kLn10;
  return std::expm1(s * l) / std::expm1(s * kLn10);
}

double gbl_extended_pmf(const DigitPrefix& prefix, double beta) {
  const double base = static_cast<double>(pow10_u64(prefix.k() - 1));
  return interval_mass(static_cast<double>(prefix.value()), base, 1.0 - beta);
}

double alpha_of_size(double n, double a) {
  if (!(n > 0.0) || !std::isfinite(n)) fail(ErrorKind::kDomain, "interval bound must be positive");
  const double denom = std::log(n) - a;
  if (!(denom > 0.0)) {
    fail(ErrorKind::kDomain, "ln N must exceed the size constant a");
  }
  return 1.0 / denom;
}

double gbl_quantile_significand(double z, double beta) {
  const double s = 1.0 - beta;
  if (near_benford(s)) return std::pow(10.0, z);
  return std::exp(std::log1p(std::expm1(s * kLn10) * z) / s);
}

int sample_digit(UniformSample u, double beta) {
  const double v = gbl_quantile_significand(u.value(), beta);
  return std::clamp(static_cast<int>(std::floor(v)), 1, 9);
}

double z_transform(double t, double beta) {
  if (!(t > 0.0) || !std::isfinite(t)) fail(ErrorKind::kDomain, "z-transform needs t > 0");
  const int decade = decade_of(t);
  const double m = t / std::pow(10.0, decade);
  const double s = 1.0 - beta;
  double z = near_benford(s) ? std::log10(m) : std::expm1(s * std::log(m)) / std::expm1(s * kLn10);
  return std::clamp(z, 0.0, std::nextafter(1.0, 0.0));
}

double conformance_sum(const CdfFunction& cdf, double beta, int top_decade, double z) {
  if (top_decade < 0) fail(ErrorKind::kDomain, "top decade must be >= 0");
  if (!(z >= 0.0 && z <= 1.0)) fail(ErrorKind::kDomain, "z must lie in [0, 1]");
  constexpr double kSlack = 1e-12;
  const double v = std::clamp(gbl_quantile_significand(z, beta), 1.0, 10.0);
  double sum = 0.0;
  double scale = 1.0;
  for (int d = 0; d <= top_decade; ++d, scale *= 10.0) {
    const double lo = cdf(scale);
    const double mid = cdf(v * scale);
    const double hi = cdf(10.0 * scale);
    if (mid < lo - kSlack || hi < mid - kSlack) {
      fail(ErrorKind::kContract,
           "cdf is not monotone on decade [10^" + std::to_string(d) + ", 10^" +
               std::to_string(d + 1) + "]");
    }
    sum += mid - lo;
  }
  return sum;
}

CdfFunction power_law_cdf(double beta, int top_decade) {
  const double s = 1.0 - beta;
  const double span = (top_decade + 1) * kLn10;
  const double upper = std::pow(10.0, top_decade + 1);
  return [s, span, upper](double t) {
    t = std::clamp(t, 1.0, upper);
    if (near_benford(s)) return std::log(t) / span;
    return std::expm1(s * std::log(t)) / std::expm1(s * span);
  };
}

}  // namespace digitlaw
