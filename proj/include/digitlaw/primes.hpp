#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "digitlaw/sieve.hpp"

namespace digitlaw {

// Primes in [lo, hi), ascending.
struct PrimeSegment {
  std::uint64_t lo = 2;
  std::uint64_t hi = 2;
  std::vector<std::uint64_t> primes;
};

// Requires 2 <= lo < hi <= ceiling. Throws kResource when the list would not
// fit the configured memory budget.
PrimeSegment primes_in_range(std::uint64_t lo, std::uint64_t hi, Exec exec = Exec::kParallel,
                             const SieveConfig& cfg = {});

// Persistent pi(N) values keyed by N. Writes go through a temporary file and
// an atomic rename, so concurrent readers never see a torn file.
class PiCache {
 public:
  explicit PiCache(std::filesystem::path path);

  // $DIGITLAW_CACHE, else $XDG_CACHE_HOME/digitlaw/pi_cache.json, else
  // ~/.cache/digitlaw/pi_cache.json.
  static std::filesystem::path default_path();

  std::optional<std::uint64_t> lookup(std::uint64_t n) const;
  // Largest cached N' <= n, if any.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> floor_entry(std::uint64_t n) const;
  // Best effort: an unwritable cache location is not an error.
  void store(std::uint64_t n, std::uint64_t pi);

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  void load();

  std::filesystem::path path_;
  std::map<std::uint64_t, std::uint64_t> entries_;
};

// Exact pi(N) = #{p <= N}. Reuses the nearest cached value below N and sieves
// only the remainder.
std::uint64_t prime_count(std::uint64_t n, PiCache* cache = nullptr, Exec exec = Exec::kParallel,
                          const SieveConfig& cfg = {});

// Offset logarithmic integral: integral of 1/ln t from 2 to x, computed by
// adaptive Gauss-Kronrod quadrature on u = ln t (absolute tolerance 1e-6).
double li(double x);
// li(x) for x >= 2 and 0 on [1, 2]: the convention Li(1) = 0 keeps the
// normalized Li a nondecreasing cdf on [1, N].
double li_cdf_numerator(double x);

// e alpha/(1 - alpha) (N^(1-alpha) - 2^(1-alpha)) with alpha = 1/(ln N - a).
double l_count(double n, double a);

// Coefficient 1 - a + a^2/2 of the N/ln^3 N gap between Li(N) and L(N).
double expansion_error_coeff(double a);

struct CountingRow {
  std::uint64_t n = 0;
  std::uint64_t pi = 0;
  double li = 0.0;
  double n_over_log = 0.0;
  double l = 0.0;
  double ratio_l_pi = 0.0;
};

struct CountingTable {
  double a = 1.1;
  std::vector<CountingRow> rows;
};

// Rows at 10^2, 10^3, ... up to max_n, plus max_n itself when it is not a
// power of ten. One sieve pass covers all rows.
CountingTable counting_table(std::uint64_t max_n, double a, PiCache* cache = nullptr,
                             Exec exec = Exec::kParallel, const SieveConfig& cfg = {});

// Header `N,pi,li,n_over_log,l,ratio_l_pi`.
void write_counting_csv(std::ostream& os, const CountingTable& table,
                        const std::string& meta_line = {});

// pi(x) for arbitrary real x up to a fixed limit, answered from an odd-number
// bitmap with per-word prefix counts.
class PrimePi {
 public:
  explicit PrimePi(std::uint64_t limit, Exec exec = Exec::kParallel, const SieveConfig& cfg = {});

  std::uint64_t limit() const noexcept { return limit_; }
  // Primes <= x.
  std::uint64_t at_most(double x) const;
  // Primes < x: the left limit of the step function.
  std::uint64_t below(double x) const;

 private:
  std::uint64_t at_most_int(std::uint64_t n) const;

  std::uint64_t limit_;
  std::vector<std::uint64_t> words_;  // bit i: 2i + 1 is prime
  std::vector<std::uint64_t> prefix_; // primes among odd numbers before word w
};

}  // namespace digitlaw
