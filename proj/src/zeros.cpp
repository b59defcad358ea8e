#include "digitlaw/zeros.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "digitlaw/error.hpp"
#include "digitlaw/gbl.hpp"

namespace digitlaw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
  const auto b = std::find_if(s.begin(), s.end(), not_space);
  const auto e = std::find_if(s.rbegin(), s.rend(), not_space).base();
  return b < e ? std::string_view(&*b, static_cast<std::size_t>(e - b)) : std::string_view{};
}

bool plain_decimal(std::string_view s) {
  bool digits = false;
  bool point = false;
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      digits = true;
    } else if (c == '.' && !point) {
      point = true;
    } else {
      return false;
    }
  }
  return digits;
}

}  // namespace

ZeroTable::ZeroTable(std::vector<double> heights) : heights_(std::move(heights)) {
  for (std::size_t i = 0; i < heights_.size(); ++i) {
    if (!(heights_[i] > 0.0)) fail(ErrorKind::kDomain, "zero heights must be positive");
    if (i > 0 && !(heights_[i] > heights_[i - 1])) {
      fail(ErrorKind::kDomain, "zero heights must be strictly increasing");
    }
  }
}

std::size_t ZeroTable::count_up_to(double t) const {
  return static_cast<std::size_t>(std::upper_bound(heights_.begin(), heights_.end(), t) -
                                  heights_.begin());
}

std::span<const double> ZeroTable::up_to(double t) const {
  return heights().first(count_up_to(t));
}

bool ZeroTable::plausible() const {
  return !heights_.empty() && heights_.front() >= 14.0 && heights_.front() <= 14.3;
}

ZeroTable load_zeros(std::istream& in) {
  std::vector<double> heights;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = trim(line);
    if (lineno == 1 && s.substr(0, 3) == "\xEF\xBB\xBF") s.remove_prefix(3);
    if (s.empty() || s.front() == '#') continue;
    if (!plain_decimal(s)) throw ParseError(lineno, "not a plain decimal height: '" + std::string(s) + "'");
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw ParseError(lineno, "unparseable height '" + std::string(s) + "'");
    }
    if (!(v > 0.0)) throw ParseError(lineno, "heights must be positive");
    if (!heights.empty() && !(v > heights.back())) {
      throw ParseError(lineno, "heights must be strictly increasing");
    }
    heights.push_back(v);
  }
  return ZeroTable(std::move(heights));
}

ZeroTable load_zeros_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kMissingData, "cannot open zeros file " + path.string());
  return load_zeros(in);
}

double rvm_count(double n) {
  if (!(n > kTwoPi) || !std::isfinite(n)) fail(ErrorKind::kDomain, "R(N) needs N > 2 pi");
  const double x = n / kTwoPi;
  return x * std::log(x) - x;
}

double zeros_alpha_of_size(double n, double a) {
  return alpha_of_size(n, std::log(kTwoPi) + a);
}

}  // namespace digitlaw
