#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <vector>

namespace digitlaw {

// Imaginary parts of the nontrivial zeta zeros in the upper half plane,
// strictly increasing. Immutable once loaded.
class ZeroTable {
 public:
  ZeroTable() = default;
  // Throws kDomain unless heights are strictly increasing and positive.
  explicit ZeroTable(std::vector<double> heights);

  std::span<const double> heights() const noexcept { return heights_; }
  std::size_t size() const noexcept { return heights_.size(); }
  bool empty() const noexcept { return heights_.empty(); }

  // Number of zeros with height in [0, t].
  std::size_t count_up_to(double t) const;
  std::span<const double> up_to(double t) const;

  // First height inside the sanity band [14.0, 14.3].
  bool plausible() const;

 private:
  std::vector<double> heights_;
};

// One decimal height per line, LF or CRLF, '#' comment lines and blank lines
// ignored, ascending order required. Throws ParseError with the line number.
ZeroTable load_zeros(std::istream& in);
// Throws kMissingData when the file cannot be opened.
ZeroTable load_zeros_file(const std::filesystem::path& path);

// Riemann-von Mangoldt average count (N/2pi) ln(N/2pi) - N/2pi, for N > 2pi.
double rvm_count(double n);

// alpha_of_size(N, ln(2 pi) + a): the size law after rescaling heights by 2pi.
double zeros_alpha_of_size(double n, double a);

}  // namespace digitlaw
