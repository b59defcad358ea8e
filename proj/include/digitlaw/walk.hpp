#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace digitlaw {

struct Step {
  int dx = 0;
  int dy = 0;
  friend bool operator==(const Step&, const Step&) = default;
};

// Maps each first digit 1..9 to a unit step in {-1, 0, 1}^2.
class StepRule {
 public:
  // d=1 up-right, then row by row: (1,1) (0,1) (-1,1) / (1,0) (0,0) (-1,0) /
  // (1,-1) (0,-1) (-1,-1). The nine images sum to zero.
  StepRule();
  explicit StepRule(const std::array<Step, 9>& table);

  const Step& operator()(int digit) const;
  const std::array<Step, 9>& table() const noexcept { return table_; }

  // Expected step under a first-digit law; index 0 of `p` is digit 1.
  std::pair<double, double> drift(const std::array<double, 9>& p) const;

 private:
  std::array<Step, 9> table_;
};

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

using Trajectory = std::vector<Point>;

// Yields first digits; anything outside 1..9 is a contract violation.
using DigitSampler = std::function<int()>;

Trajectory walk_trajectory(const DigitSampler& sampler, std::uint64_t steps,
                           const StepRule& rule = StepRule{});

// Seeded samplers drawing uniformly from [1, ceiling]: every integer, or every
// prime, reporting its first digit. Draw i uses Philox counter (i, 0, 1, 0).
DigitSampler uniform_integer_sampler(std::uint64_t seed, std::uint64_t ceiling = 1'000'000);
DigitSampler prime_sampler(std::uint64_t seed, std::uint64_t ceiling = 1'000'000);

// `t,x,y`, one row per point. The optional header line is written first.
void write_trajectory_csv(std::ostream& os, const Trajectory& t, const std::string& meta_line = {});

}  // namespace digitlaw
