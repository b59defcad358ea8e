#include "digitlaw/primes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <queue>
#include <system_error>

#include <json.hpp>

#include "digitlaw/error.hpp"
#include "digitlaw/gbl.hpp"

namespace digitlaw {

PrimeSegment primes_in_range(std::uint64_t lo, std::uint64_t hi, Exec exec, const SieveConfig& cfg) {
  if (lo < 2 || hi <= lo) fail(ErrorKind::kDomain, "primes_in_range needs 2 <= lo < hi");
  return PrimeSegment{lo, hi, list_primes(lo, hi, exec, cfg)};
}

// ---------------------------------------------------------------- cache

PiCache::PiCache(std::filesystem::path path) : path_(std::move(path)) { load(); }

std::filesystem::path PiCache::default_path() {
  if (const char* env = std::getenv("DIGITLAW_CACHE"); env != nullptr && *env != '\0') {
    return env;
  }
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
    return std::filesystem::path(xdg) / "digitlaw" / "pi_cache.json";
  }
  const char* home = std::getenv("HOME");
  return std::filesystem::path(home != nullptr ? home : ".") / ".cache" / "digitlaw" /
         "pi_cache.json";
}

void PiCache::load() {
  std::ifstream in(path_);
  if (!in) return;
  try {
    const auto doc = nlohmann::json::parse(in);
    for (const auto& [key, value] : doc.at("entries").items()) {
      entries_[std::stoull(key)] = value.get<std::uint64_t>();
    }
  } catch (const std::exception&) {
    // A corrupt cache is ignored and rewritten on the next store.
    entries_.clear();
  }
}

std::optional<std::uint64_t> PiCache::lookup(std::uint64_t n) const {
  const auto it = entries_.find(n);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> PiCache::floor_entry(std::uint64_t n) const {
  auto it = entries_.upper_bound(n);
  if (it == entries_.begin()) return std::nullopt;
  --it;
  return *it;
}

void PiCache::store(std::uint64_t n, std::uint64_t pi) {
  // Merge with whatever another process wrote since we loaded.
  PiCache fresh(path_);
  entries_.merge(fresh.entries_);
  entries_[n] = pi;

  nlohmann::json doc;
  doc["format"] = "digitlaw-pi-cache";
  doc["version"] = 1;
  auto& e = doc["entries"] = nlohmann::json::object();
  for (const auto& [k, v] : entries_) e[std::to_string(k)] = v;

  std::error_code ec;
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path(), ec);
  auto tmp = path_;
  tmp += ".tmp" + std::to_string(static_cast<unsigned long long>(std::hash<std::string>{}(
                      std::to_string(n) + path_.string())));
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return;
    out << doc.dump(1) << '\n';
    if (!out) return;
  }
  std::filesystem::rename(tmp, path_, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

std::uint64_t prime_count(std::uint64_t n, PiCache* cache, Exec exec, const SieveConfig& cfg) {
  if (n > cfg.ceiling) {
    fail(ErrorKind::kResource, "N = " + std::to_string(n) + " exceeds the sieve ceiling");
  }
  if (n < 2) return 0;
  std::uint64_t start = 0;
  std::uint64_t pi = 0;
  if (cache != nullptr) {
    if (auto hit = cache->lookup(n)) return *hit;
    if (auto below = cache->floor_entry(n)) std::tie(start, pi) = *below;
  }
  pi += count_primes(start + 1, n + 1, exec, cfg);
  if (cache != nullptr) cache->store(n, pi);
  return pi;
}

// ---------------------------------------------------------------- Li

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gauss_kronrod15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[static_cast<std::size_t>(j)];
    const double s = f(c - dx) + f(c + dx);
    kronrod += kWgk[static_cast<std::size_t>(j)] * s;
    if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * s;
  }
  return Panel{a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

template <class F>
double adaptive_integrate(const F& f, double a, double b, double abs_tol) {
  std::priority_queue<Panel> panels;
  panels.push(gauss_kronrod15(f, a, b));
  double total_error = panels.top().error;
  for (int iter = 0; iter < 2000 && total_error > abs_tol; ++iter) {
    const Panel worst = panels.top();
    if (worst.b - worst.a < 1e-12 * std::max(1.0, std::abs(worst.a))) break;
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gauss_kronrod15(f, worst.a, mid);
    const Panel right = gauss_kronrod15(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Neumaier summation of the panel values.
  double sum = 0.0;
  double comp = 0.0;
  while (!panels.empty()) {
    const double v = panels.top().value;
    panels.pop();
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

double li(double x) {
  if (!(x >= 2.0) || !std::isfinite(x)) fail(ErrorKind::kDomain, "Li(x) needs x >= 2");
  if (x == 2.0) return 0.0;
  // dt / ln t = e^u / u du with t = e^u.
  const auto integrand = [](double u) { return std::exp(u) / u; };
  return adaptive_integrate(integrand, std::log(2.0), std::log(x), 1e-6);
}

double li_cdf_numerator(double x) {
  if (!(x >= 1.0)) fail(ErrorKind::kDomain, "Li cdf is defined on [1, N]");
  return x <= 2.0 ? 0.0 : li(x);
}

double l_count(double n, double a) {
  if (!(n > 2.0) || !std::isfinite(n)) fail(ErrorKind::kDomain, "L(N) needs N > 2");
  const double alpha = alpha_of_size(n, a);
  if (!(alpha < 1.0)) fail(ErrorKind::kDomain, "L(N) needs alpha(N) < 1, i.e. ln N > a + 1");
  const double s = 1.0 - alpha;
  return std::exp(1.0) * alpha / s * (std::pow(n, s) - std::pow(2.0, s));
}

double expansion_error_coeff(double a) { return 1.0 - a + 0.5 * a * a; }

// ---------------------------------------------------------------- table

CountingTable counting_table(std::uint64_t max_n, double a, PiCache* cache, Exec exec,
                             const SieveConfig& cfg) {
  if (max_n < 3) fail(ErrorKind::kDomain, "counting table needs N >= 3");
  std::vector<std::uint64_t> points;
  for (std::uint64_t p = 100; p <= max_n; p *= 10) {
    points.push_back(p);
    if (p > max_n / 10) break;
  }
  if (points.empty() || points.back() != max_n) points.push_back(max_n);

  CountingTable table;
  table.a = a;
  std::uint64_t prev_n = 0;
  std::uint64_t prev_pi = 0;
  for (std::uint64_t n : points) {
    std::uint64_t pi = 0;
    if (cache != nullptr) {
      pi = prime_count(n, cache, exec, cfg);
    } else {
      pi = prev_pi + count_primes(prev_n + 1, n + 1, exec, cfg);
    }
    prev_n = n;
    prev_pi = pi;

    CountingRow row;
    row.n = n;
    row.pi = pi;
    const double x = static_cast<double>(n);
    row.li = li(x);
    row.n_over_log = x / std::log(x);
    row.l = l_count(x, a);
    row.ratio_l_pi = row.l / static_cast<double>(pi);
    table.rows.push_back(row);
  }
  return table;
}

void write_counting_csv(std::ostream& os, const CountingTable& table, const std::string& meta_line) {
  if (!meta_line.empty()) os << meta_line << '\n';
  os << "N,pi,li,n_over_log,l,ratio_l_pi\n";
  char buf[256];
  for (const auto& r : table.rows) {
    std::snprintf(buf, sizeof buf, "%llu,%llu,%.6f,%.6f,%.6f,%.8f\n",
                  static_cast<unsigned long long>(r.n), static_cast<unsigned long long>(r.pi), r.li,
                  r.n_over_log, r.l, r.ratio_l_pi);
    os << buf;
  }
}

// ---------------------------------------------------------------- PrimePi

PrimePi::PrimePi(std::uint64_t limit, Exec exec, const SieveConfig& cfg) : limit_(limit) {
  if (limit > cfg.ceiling) fail(ErrorKind::kResource, "PrimePi limit exceeds the sieve ceiling");
  const std::uint64_t hi = limit + 1;
  const std::uint64_t odd_flags = hi / 2;  // odd numbers 1, 3, ... below hi
  words_.assign(static_cast<std::size_t>((odd_flags + 63) / 64), 0);

  SieveConfig seg_cfg = cfg;
  seg_cfg.segment_flags = std::max<std::size_t>(64, cfg.segment_flags / 64 * 64);
  const std::uint64_t span = 2 * static_cast<std::uint64_t>(seg_cfg.segment_flags);
  const auto segments = static_cast<std::ptrdiff_t>((hi + span - 1) / span);
  const auto base = small_primes(static_cast<std::uint32_t>(std::sqrt(static_cast<double>(hi)) + 2));

  auto run = [&](std::ptrdiff_t i, SieveSegment& seg) {
    const std::uint64_t lo = span * static_cast<std::uint64_t>(i);
    seg.sieve(lo, std::min(hi, lo + span), base);
    const auto w = seg.words();
    std::copy(w.begin(), w.end(), words_.begin() + static_cast<std::ptrdiff_t>(lo / 128));
  };
  if (exec == Exec::kSerial) {
    SieveSegment seg(seg_cfg.segment_flags);
    for (std::ptrdiff_t i = 0; i < segments; ++i) run(i, seg);
  } else {
#pragma omp parallel
    {
      SieveSegment seg(seg_cfg.segment_flags);
#pragma omp for schedule(dynamic, 1)
      for (std::ptrdiff_t i = 0; i < segments; ++i) run(i, seg);
    }
  }

  prefix_.resize(words_.size() + 1);
  prefix_[0] = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    prefix_[w + 1] = prefix_[w] + static_cast<std::uint64_t>(__builtin_popcountll(words_[w]));
  }
}

std::uint64_t PrimePi::at_most_int(std::uint64_t n) const {
  if (n < 2) return 0;
  if (n > limit_) fail(ErrorKind::kDomain, "pi(x) query beyond the table limit");
  // Odd numbers 1..n occupy flags 0..(n-1)/2.
  const std::uint64_t flags = (n + 1) / 2;
  const std::size_t w = static_cast<std::size_t>(flags / 64);
  const unsigned rem = static_cast<unsigned>(flags % 64);
  std::uint64_t c = prefix_[w];
  if (rem != 0) c += static_cast<std::uint64_t>(__builtin_popcountll(words_[w] & ((std::uint64_t{1} << rem) - 1)));
  return c + 1;  // the even prime 2
}

std::uint64_t PrimePi::at_most(double x) const {
  if (!(x >= 0.0)) return 0;
  return at_most_int(static_cast<std::uint64_t>(std::floor(x)));
}

std::uint64_t PrimePi::below(double x) const {
  if (!(x > 0.0)) return 0;
  const double c = std::ceil(x);
  return at_most_int(static_cast<std::uint64_t>(c) - 1);
}

}  // namespace digitlaw
