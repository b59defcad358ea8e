#pragma once

#include <array>
#include <functional>
#include <optional>

#include "digitlaw/digits.hpp"

namespace digitlaw {

// Which way the power-law density points. Primes thin out (density x^-alpha,
// beta = alpha); zeta zeros thicken (density x^alpha, beta = -alpha).
enum class Convention { kPrimes, kZeros };

// A generalized Benford law: the first-digit law induced by a density
// proportional to x^(-beta). beta = 1 is Benford, beta = 0 is uniform.
struct GblParams {
  double exponent = 1.0;                // beta
  std::optional<double> size_constant;  // a, when the exponent came from a size law

  static GblParams from_alpha(double alpha, Convention c,
                              std::optional<double> a = std::nullopt);
  double alpha(Convention c) const;
};

// Probability drawn uniformly from [0, 1).
class UniformSample {
 public:
  explicit UniformSample(double u);
  double value() const noexcept { return u_; }

 private:
  double u_;
};

// |1 - beta| below this is evaluated through the Benford limit.
inline constexpr double kBenfordLimitBand = 1e-9;

double gbl_pmf(int d, double beta);
std::array<double, 9> gbl_pmf_all(double beta);
double gbl_cdf(int y, double beta);

// k-digit law, normalized with the telescoped denominator
// (10^k)^(1-beta) - (10^(k-1))^(1-beta) so it sums to one.
double gbl_extended_pmf(const DigitPrefix& prefix, double beta);

// 1 / (ln N - a); throws kDomain when ln N <= a.
double alpha_of_size(double n, double a);

// Inverse-cdf sampler for the first digit, clamped to 1..9.
int sample_digit(UniformSample u, double beta);

// Maps t onto [0, 1) by its position inside its own decade; uniform when t
// follows the power law with exponent beta.
double z_transform(double t, double beta);

// The significand v in [1, 10] whose GBL cdf equals z.
double gbl_quantile_significand(double z, double beta);

using CdfFunction = std::function<double(double)>;

// Sum over decades d = 0..top_decade of F(v 10^d) - F(10^d), where v is the
// GBL significand quantile of z. Equals z for any cdf whose first-digit law is
// the GBL with exponent beta. Throws kContract when F is caught decreasing.
double conformance_sum(const CdfFunction& cdf, double beta, int top_decade, double z);

// Normalized power-law cdf on [1, 10^(top_decade+1)].
CdfFunction power_law_cdf(double beta, int top_decade);

}  // namespace digitlaw
