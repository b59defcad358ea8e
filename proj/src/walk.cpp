#include "digitlaw/walk.hpp"

#include <memory>

#include "digitlaw/cramer.hpp"
#include "digitlaw/digits.hpp"
#include "digitlaw/error.hpp"
#include "digitlaw/sieve.hpp"

namespace digitlaw {

namespace {

constexpr std::array<Step, 9> kDefaultTable{{
    {1, 1}, {0, 1}, {-1, 1},
    {1, 0}, {0, 0}, {-1, 0},
    {1, -1}, {0, -1}, {-1, -1},
}};

// Uniform index in [0, n) for draw i. Counter word 2 separates these draws
// from the Cramer urns, which leave it at zero.
std::uint64_t draw_index(std::uint64_t seed, std::uint64_t i, std::uint64_t n) {
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32),
                                1u, 0u};
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed),
                            static_cast<std::uint32_t>(seed >> 32)};
  const auto out = Philox4x32::generate(ctr, key);
  const std::uint64_t bits = (static_cast<std::uint64_t>(out[0]) << 32 | out[1]) >> 11;
  const double u = static_cast<double>(bits) * 0x1.0p-53;
  const auto idx = static_cast<std::uint64_t>(u * static_cast<double>(n));
  return idx < n ? idx : n - 1;
}

int first_digit(std::uint64_t x) {
  while (x >= 10) x /= 10;
  return static_cast<int>(x);
}

}  // namespace

StepRule::StepRule() : table_(kDefaultTable) {}

StepRule::StepRule(const std::array<Step, 9>& table) : table_(table) {
  for (const auto& s : table_) {
    if (s.dx < -1 || s.dx > 1 || s.dy < -1 || s.dy > 1) {
      fail(ErrorKind::kDomain, "step components must lie in {-1, 0, 1}");
    }
  }
}

const Step& StepRule::operator()(int digit) const {
  if (digit < 1 || digit > 9) {
    fail(ErrorKind::kContract, "sampler produced " + std::to_string(digit) + ", expected 1..9");
  }
  return table_[static_cast<std::size_t>(digit - 1)];
}

std::pair<double, double> StepRule::drift(const std::array<double, 9>& p) const {
  double x = 0.0, y = 0.0;
  for (std::size_t i = 0; i < 9; ++i) {
    x += p[i] * table_[i].dx;
    y += p[i] * table_[i].dy;
  }
  return {x, y};
}

Trajectory walk_trajectory(const DigitSampler& sampler, std::uint64_t steps, const StepRule& rule) {
  Trajectory t;
  t.reserve(steps + 1);
  Point p;
  t.push_back(p);
  for (std::uint64_t i = 0; i < steps; ++i) {
    const Step& s = rule(sampler());
    p.x += s.dx;
    p.y += s.dy;
    t.push_back(p);
  }
  return t;
}

DigitSampler uniform_integer_sampler(std::uint64_t seed, std::uint64_t ceiling) {
  if (ceiling < 1) fail(ErrorKind::kDomain, "ceiling must be at least 1");
  return [seed, ceiling, i = std::uint64_t{0}]() mutable {
    return first_digit(draw_index(seed, i++, ceiling) + 1);
  };
}

DigitSampler prime_sampler(std::uint64_t seed, std::uint64_t ceiling) {
  if (ceiling < 2) fail(ErrorKind::kDomain, "no primes below the ceiling");
  auto primes = std::make_shared<const std::vector<std::uint64_t>>(
      list_primes(2, ceiling + 1, Exec::kSerial));
  return [seed, primes, i = std::uint64_t{0}]() mutable {
    return first_digit((*primes)[draw_index(seed, i++, primes->size())]);
  };
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t, const std::string& meta_line) {
  if (!meta_line.empty()) os << meta_line << '\n';
  os << "t,x,y\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << i << ',' << t[i].x << ',' << t[i].y << '\n';
  }
}

}  // namespace digitlaw
