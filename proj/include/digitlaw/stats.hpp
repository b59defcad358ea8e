#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <utility>

#include "digitlaw/digits.hpp"
#include "digitlaw/gbl.hpp"

namespace digitlaw {

// Nigrini's first-digit conformity bands for the mean absolute deviation.
enum class MadClass { kClose, kAcceptable, kMarginal, kNonconforming };

inline constexpr double kMadClose = 0.4e-2;
inline constexpr double kMadAcceptable = 0.8e-2;
inline constexpr double kMadMarginal = 1.2e-2;

MadClass classify_mad(double mad);
const char* to_string(MadClass c);

// Chi-square critical values for 7 degrees of freedom.
struct Chi2Critical {
  static constexpr double kP10 = 12.02;
  static constexpr double kP05 = 14.07;
  static constexpr double kP01 = 18.47;
};

struct Chi2Decision {
  bool reject_p10 = false;
  bool reject_p05 = false;
  bool reject_p01 = false;
};

Chi2Decision decide_chi2(double chi2);

struct FitResult {
  double alpha = 0.0;  // in the requested convention
  double beta = 0.0;   // the exponent entering gbl_pmf
  int iterations = 0;
  double residual = 0.0;  // |model mean - empirical mean| at exit
};

struct FitOptions {
  int max_iterations = 100;
  double tolerance = 1e-10;
};

// Method of moments: the beta whose GBL mean first digit equals the
// empirical one. Newton-Raphson from beta = 0 on the analytic derivative,
// safeguarded by bisection on a bracket that starts at [-5, 5].
FitResult fit_alpha_moments(const DigitHistogram& hist, Convention c, const FitOptions& opt = {});
FitResult fit_alpha_moments(const std::array<double, 9>& freqs, Convention c,
                            const FitOptions& opt = {});

// Mean first digit of the GBL and its derivative with respect to beta.
double gbl_mean(double beta);
double gbl_mean_derivative(double beta);

// Least-squares a for alpha_i ~ 1/(ln N_i - a). Points are (N, alpha).
double fit_size_constant(std::span<const std::pair<double, double>> points);

struct TestReport {
  std::string sequence;
  double n = 0.0;
  std::uint64_t sample_size = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::string alpha_source;  // "fit" or "size-law"

  double chi2 = 0.0;
  int dof = 7;
  Chi2Decision chi2_decision;
  double m = 0.0;
  double mad = 0.0;
  MadClass mad_class = MadClass::kClose;
  double r = 0.0;
};

// Chi-square, max/mean absolute deviation and Pearson r between the
// histogram's first-digit frequencies and the model law.
TestReport test_report(const DigitHistogram& hist, const GblParams& model);
TestReport test_report(const std::array<double, 9>& freqs, std::uint64_t sample_size,
                       const GblParams& model);

// Pearson correlation. When either side is constant the result is 1 for
// identical sequences and 0 otherwise.
double pearson(std::span<const double> x, std::span<const double> y);

// First-digit law induced by a cdf on [1, 10^decades]:
// sum over j < decades of F((d+1) 10^j) - F(d 10^j).
std::array<double, 9> induced_first_digit_law(const CdfFunction& cdf, int decades);

// Chi-square distance between the law induced by `cdf` on [1, 10^decades] and
// the GBL with exponent beta. Throws kContract unless F(10^decades) = 1.
double conformance_chi2(const CdfFunction& cdf, int decades, double beta);

// Pearson r between z and the conformance sum at z = i/grid, i = 0..grid.
double conformance_correlation(const CdfFunction& cdf, double beta, int top_decade, int grid);

// {chi2, dof, chi2_critical:{p10,p05,p01}, m, mad, mad_class, r, alpha, N, sequence},
// followed by sample_size, alpha_source and, when given, "meta".
void write_report_json(std::ostream& os, const TestReport& report, const std::string& meta = {});

}  // namespace digitlaw
