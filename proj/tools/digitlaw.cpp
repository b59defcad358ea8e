// Batch front end: builds sequences, digit histograms and goodness-of-fit
// reports, and writes them as CSV/JSON.

#include <unistd.h>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "digitlaw/cramer.hpp"
#include "digitlaw/digits.hpp"
#include "digitlaw/error.hpp"
#include "digitlaw/gbl.hpp"
#include "digitlaw/primes.hpp"
#include "digitlaw/sequences.hpp"
#include "digitlaw/sieve.hpp"
#include "digitlaw/stats.hpp"
#include "digitlaw/walk.hpp"
#include "digitlaw/zeros.hpp"

#ifndef DIGITLAW_VERSION
#define DIGITLAW_VERSION "dev"
#endif

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace digitlaw;

namespace {

struct RunConfig {
  std::string command;
  std::string seq = "primes";
  std::string max_text;
  std::uint64_t n = 0;
  int k = 1;
  std::optional<double> a;
  std::uint64_t seed = 0;
  std::string zeros_path;
  std::string format;
  std::string out;
  std::uint64_t steps = 10000;
  int min_decade = 0;
  int grid = 100;
};

std::uint64_t parse_max(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    fail(ErrorKind::kUsage, "--max: '" + text + "' is not a number");
  }
  if (used != text.size() || !std::isfinite(v) || v < 1.0 || v > 1e19 || v != std::floor(v)) {
    fail(ErrorKind::kUsage, "--max: '" + text + "' is not a positive integer");
  }
  return static_cast<std::uint64_t>(v);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// FNV-1a over the settings that determine the output.
std::string config_hash(const RunConfig& c) {
  std::ostringstream canon;
  canon << "command=" << c.command << ";seq=" << c.seq << ";max=" << c.n << ";k=" << c.k
        << ";a=" << (c.a ? format_double(*c.a) : "none") << ";seed=" << c.seed
        << ";zeros=" << c.zeros_path << ";steps=" << c.steps << ";min=" << c.min_decade
        << ";grid=" << c.grid;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canon.str()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

class Outputs {
 public:
  Outputs(const RunConfig& cfg, std::string default_format)
      : cfg_(cfg),
        format_(cfg.format.empty() ? std::move(default_format) : cfg.format),
        meta_(std::string("digitlaw ") + DIGITLAW_VERSION + " " + cfg.command + " " +
              config_hash(cfg)) {
    if (!cfg_.out.empty()) {
      std::error_code ec;
      fs::create_directories(cfg_.out, ec);
      if (ec) fail(ErrorKind::kResource, "cannot create output directory " + cfg_.out);
    }
  }

  const std::string& meta() const { return meta_; }
  std::string csv_meta() const { return "# " + meta_; }

  // With --out every artifact goes to its own file; otherwise the one in the
  // requested format goes to stdout.
  void emit(const std::string& name, const std::string& format,
            const std::function<void(std::ostream&)>& body) {
    if (cfg_.out.empty()) {
      if (format == format_ && !printed_) {
        body(std::cout);
        std::cout.flush();
        printed_ = true;
      }
      return;
    }
    write_atomic(fs::path(cfg_.out) / name, body);
  }

 private:
  static void write_atomic(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) fail(ErrorKind::kResource, "cannot write " + tmp.string());
      body(f);
      f.flush();
      if (!f) fail(ErrorKind::kResource, "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
      fs::remove(tmp, ec);
      fail(ErrorKind::kResource, "cannot move output into place at " + path.string());
    }
  }

  const RunConfig& cfg_;
  std::string format_;
  std::string meta_;
  bool printed_ = false;
};

ZeroTable load_zero_table(const RunConfig& cfg, double n) {
  if (cfg.zeros_path.empty()) {
    fail(ErrorKind::kMissingData, "the zeros sequence needs --zeros PATH");
  }
  ZeroTable table = load_zeros_file(cfg.zeros_path);
  if (table.empty() || table.heights().back() < n) {
    fail(ErrorKind::kMissingData, "zeros file " + cfg.zeros_path + " does not reach height " +
                                      format_double(n));
  }
  if (!table.plausible()) {
    fail(ErrorKind::kParse, "zeros file " + cfg.zeros_path + " does not start near 14.13");
  }
  return table;
}

DigitHistogram build_histogram(const RunConfig& cfg, Sequence seq, std::uint64_t n, int k,
                               const ZeroTable* zeros) {
  switch (seq) {
    case Sequence::kPrimes: return prime_digit_histogram(2, n + 1, k, Exec::kParallel);
    case Sequence::kCramer: return cramer_digit_histogram(n, cfg.seed, k, Exec::kParallel);
    case Sequence::kIntegers: return integer_digit_histogram(n, k);
    case Sequence::kZeros: return digit_histogram(zeros->up_to(static_cast<double>(n)), k);
  }
  fail(ErrorKind::kContract, "unhandled sequence");
}

std::string decade_tag(std::uint64_t n) { return "1e" + std::to_string(decade_exponent(n)); }

int cmd_analyze(const RunConfig& cfg) {
  const Sequence seq = parse_sequence(cfg.seq);
  const int d = decade_exponent(cfg.n);
  const Convention conv = convention_of(seq);
  std::optional<ZeroTable> zeros;
  if (seq == Sequence::kZeros) zeros = load_zero_table(cfg, static_cast<double>(cfg.n));

  const DigitHistogram hist = build_histogram(cfg, seq, cfg.n, cfg.k, zeros ? &*zeros : nullptr);
  if (hist.total() == 0) fail(ErrorKind::kDomain, "the sequence is empty below N");

  GblParams model;
  std::string source;
  if (cfg.a) {
    // For zeros, a is the effective constant of the shifted law.
    model = GblParams::from_alpha(alpha_of_size(static_cast<double>(cfg.n), *cfg.a), conv, cfg.a);
    source = "size-law";
  } else {
    const FitResult fit = fit_alpha_moments(hist, conv);
    model = GblParams{fit.beta, std::nullopt};
    source = "fit";
  }

  TestReport rep = test_report(hist, model);
  rep.sequence = to_string(seq);
  rep.n = static_cast<double>(cfg.n);
  rep.alpha = model.alpha(conv);
  rep.alpha_source = source;

  Outputs out(cfg, "json");
  const std::string stem = std::string(to_string(seq)) + "_1e" + std::to_string(d);
  out.emit(stem + "_k" + std::to_string(cfg.k) + ".csv", "csv",
           [&](std::ostream& os) { write_histogram_csv(os, hist, out.csv_meta()); });
  out.emit(stem + "_report.json", "json",
           [&](std::ostream& os) { write_report_json(os, rep, out.meta()); });
  return 0;
}

struct DecadeFit {
  std::uint64_t n;
  FitResult fit;
};

std::vector<DecadeFit> decade_fits(const RunConfig& cfg, Sequence seq, int lo, int hi,
                                   const ZeroTable* zeros) {
  std::vector<DecadeFit> fits;
  for (int j = lo; j <= hi; ++j) {
    const std::uint64_t n = pow10_u64(j);
    const DigitHistogram h = build_histogram(cfg, seq, n, 1, zeros);
    fits.push_back({n, fit_alpha_moments(h, convention_of(seq))});
  }
  return fits;
}

json size_fit_json(Sequence seq, const std::vector<DecadeFit>& fits, const std::string& meta) {
  json doc;
  doc["sequence"] = to_string(seq);
  json pts = json::array();
  std::vector<std::pair<double, double>> xy;
  for (const auto& f : fits) {
    pts.push_back({{"N", f.n}, {"alpha", f.fit.alpha}, {"iterations", f.fit.iterations},
                   {"residual", f.fit.residual}});
    xy.emplace_back(static_cast<double>(f.n), f.fit.alpha);
  }
  doc["points"] = pts;
  if (xy.size() >= 2) {
    const double a = fit_size_constant(xy);
    doc["a"] = a;
    if (seq == Sequence::kZeros) doc["a_shifted"] = a - std::log(2.0 * std::numbers::pi);
  } else {
    doc["a"] = nullptr;
  }
  doc["meta"] = meta;
  return doc;
}

void write_fits_csv(std::ostream& os, const std::vector<DecadeFit>& fits, const std::string& meta) {
  os << meta << '\n' << "N,alpha,iterations,residual\n";
  char buf[160];
  for (const auto& f : fits) {
    std::snprintf(buf, sizeof buf, "%" PRIu64 ",%.10f,%d,%.3e\n", f.n, f.fit.alpha,
                  f.fit.iterations, f.fit.residual);
    os << buf;
  }
}

int default_min_decade(Sequence seq) {
  switch (seq) {
    case Sequence::kZeros: return 3;
    case Sequence::kIntegers: return 2;
    default: return 4;
  }
}

int cmd_fit(const RunConfig& cfg) {
  const Sequence seq = parse_sequence(cfg.seq);
  const int d = decade_exponent(cfg.n);
  const int lo = cfg.min_decade > 0 ? cfg.min_decade : default_min_decade(seq);
  if (lo > d) fail(ErrorKind::kUsage, "--min exceeds the decade of --max");
  std::optional<ZeroTable> zeros;
  if (seq == Sequence::kZeros) zeros = load_zero_table(cfg, static_cast<double>(cfg.n));
  const auto fits = decade_fits(cfg, seq, lo, d, zeros ? &*zeros : nullptr);

  Outputs out(cfg, "json");
  const json doc = size_fit_json(seq, fits, out.meta());
  const std::string stem = std::string("fit_") + to_string(seq);
  out.emit(stem + ".csv", "csv", [&](std::ostream& os) { write_fits_csv(os, fits, out.csv_meta()); });
  out.emit(stem + ".json", "json", [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  return 0;
}

struct ConformanceRow {
  std::uint64_t n;
  double alpha;
  double c_pi;
  double c_li;
  double r_pi;
  double r_li;
};

ConformanceRow conformance_row(std::shared_ptr<const PrimePi> pi, int j, double a, int grid) {
  const std::uint64_t n = pow10_u64(j);
  const double alpha = alpha_of_size(static_cast<double>(n), a);
  const CdfFunction f_pi = prime_pi_cdf(std::move(pi), n);
  const CdfFunction f_li = li_cdf(static_cast<double>(n));
  return {n,
          alpha,
          conformance_chi2(f_pi, j, alpha),
          conformance_chi2(f_li, j, alpha),
          conformance_correlation(f_pi, alpha, j - 1, grid),
          conformance_correlation(f_li, alpha, j - 1, grid)};
}

void write_conformance_csv(std::ostream& os, const std::vector<ConformanceRow>& rows,
                           const std::string& meta) {
  os << meta << '\n' << "N,alpha,c_pi,c_li,r_pi,r_li\n";
  char buf[200];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%" PRIu64 ",%.10f,%.6e,%.6e,%.9f,%.9f\n", r.n, r.alpha,
                  r.c_pi, r.c_li, r.r_pi, r.r_li);
    os << buf;
  }
}

// Largest D with 10^D <= n.
int floor_decade(std::uint64_t n) {
  int d = 0;
  while (d + 1 <= kMaxIntegerDigits && pow10_u64(d + 1) <= n) ++d;
  return d;
}

int cmd_tables(const RunConfig& cfg) {
  if (cfg.n < 100) fail(ErrorKind::kUsage, "--max must be at least 100 for the counting table");
  const double a = cfg.a.value_or(1.1);
  PiCache cache(PiCache::default_path());
  const CountingTable table = counting_table(cfg.n, a, &cache);

  // Conformance rows need pi(x) at arbitrary x; the bitmap costs N/16 bytes.
  const int top = floor_decade(cfg.n);
  const int conf_top = std::min(top, 9);
  std::vector<ConformanceRow> conf;
  if (conf_top >= 3) {
    auto pi = std::make_shared<const PrimePi>(pow10_u64(conf_top));
    for (int j = 3; j <= conf_top; ++j) conf.push_back(conformance_row(pi, j, a, cfg.grid));
  }

  const auto fits = top >= 4 ? decade_fits(cfg, Sequence::kPrimes, 4, top, nullptr)
                             : std::vector<DecadeFit>{};

  Outputs out(cfg, "csv");
  out.emit("counting.csv", "csv",
           [&](std::ostream& os) { write_counting_csv(os, table, out.csv_meta()); });
  out.emit("conformance.csv", "conformance",
           [&](std::ostream& os) { write_conformance_csv(os, conf, out.csv_meta()); });
  const json fit_doc = size_fit_json(Sequence::kPrimes, fits, out.meta());
  out.emit("size_fit.json", "json", [&](std::ostream& os) {
    json doc;
    doc["a"] = a;
    json rows = json::array();
    for (const auto& r : table.rows) {
      rows.push_back({{"N", r.n}, {"pi", r.pi}, {"li", r.li}, {"n_over_log", r.n_over_log},
                      {"l", r.l}, {"ratio_l_pi", r.ratio_l_pi}});
    }
    json crow = json::array();
    for (const auto& r : conf) {
      crow.push_back({{"N", r.n}, {"alpha", r.alpha}, {"c_pi", r.c_pi}, {"c_li", r.c_li},
                      {"r_pi", r.r_pi}, {"r_li", r.r_li}});
    }
    if (cfg.out.empty()) {
      doc["counting"] = rows;
      doc["conformance"] = crow;
      doc["size_fit"] = fit_doc;
      doc["meta"] = out.meta();
      os << doc.dump(2) << '\n';
    } else {
      os << fit_doc.dump(2) << '\n';
    }
  });
  return 0;
}

int cmd_conform(const RunConfig& cfg) {
  const Sequence seq = parse_sequence(cfg.seq);
  if (seq != Sequence::kPrimes) fail(ErrorKind::kUsage, "conform supports --seq primes only");
  const int d = decade_exponent(cfg.n);
  const double a = cfg.a.value_or(1.1);
  auto pi = std::make_shared<const PrimePi>(cfg.n);
  const ConformanceRow row = conformance_row(pi, d, a, cfg.grid);

  const CdfFunction f_pi = prime_pi_cdf(pi, cfg.n);
  const CdfFunction f_li = li_cdf(static_cast<double>(cfg.n));
  const CdfFunction f_pow = power_law_cdf(row.alpha, d - 1);

  Outputs out(cfg, "json");
  const std::string stem = "conform_" + decade_tag(cfg.n);
  out.emit(stem + ".csv", "csv", [&](std::ostream& os) {
    os << out.csv_meta() << '\n' << "z,power_law,pi,li\n";
    char buf[160];
    for (int i = 0; i <= cfg.grid; ++i) {
      const double z = static_cast<double>(i) / cfg.grid;
      std::snprintf(buf, sizeof buf, "%.6f,%.12f,%.12f,%.12f\n", z,
                    conformance_sum(f_pow, row.alpha, d - 1, z),
                    conformance_sum(f_pi, row.alpha, d - 1, z),
                    conformance_sum(f_li, row.alpha, d - 1, z));
      os << buf;
    }
  });
  out.emit(stem + ".json", "json", [&](std::ostream& os) {
    json doc;
    doc["N"] = row.n;
    doc["a"] = a;
    doc["alpha"] = row.alpha;
    doc["c_pi"] = row.c_pi;
    doc["c_li"] = row.c_li;
    doc["r_pi"] = row.r_pi;
    doc["r_li"] = row.r_li;
    doc["grid"] = cfg.grid;
    doc["meta"] = out.meta();
    os << doc.dump(2) << '\n';
  });
  return 0;
}

int cmd_cramer(const RunConfig& cfg) {
  if (cfg.n < 3) fail(ErrorKind::kUsage, "--max must be at least 3");
  // The list costs 8 bytes per pseudo-prime; about N/ln N of them.
  const double estimate = 1.25506 * static_cast<double>(cfg.n) / std::log(static_cast<double>(cfg.n));
  if (estimate * 8.0 > static_cast<double>(SieveConfig{}.memory_budget_bytes)) {
    fail(ErrorKind::kResource, "pseudo-prime list would exceed the memory budget; use analyze");
  }
  const CramerRun run = cramer_sequence(cfg.n, cfg.seed, Exec::kParallel);

  Outputs out(cfg, "json");
  const std::string stem = "cramer_N" + std::to_string(cfg.n) + "_seed" + std::to_string(cfg.seed);
  out.emit(stem + ".csv", "csv", [&](std::ostream& os) {
    os << out.csv_meta() << '\n' << "k\n";
    for (std::uint64_t p : run.pseudo_primes) os << p << '\n';
  });
  out.emit(stem + "_manifest.json", "json",
           [&](std::ostream& os) { write_cramer_manifest(os, run, out.meta()); });
  return 0;
}

std::array<double, 9> source_law(Sequence seq, std::uint64_t ceiling) {
  const DigitHistogram h = seq == Sequence::kPrimes
                               ? prime_digit_histogram(2, ceiling + 1, 1, Exec::kParallel)
                               : integer_digit_histogram(ceiling, 1);
  return h.first_digit_frequencies();
}

int cmd_walk(const RunConfig& cfg) {
  const Sequence seq = parse_sequence(cfg.seq);
  if (seq != Sequence::kPrimes && seq != Sequence::kIntegers) {
    fail(ErrorKind::kUsage, "walk supports --seq primes or integers");
  }
  decade_exponent(cfg.n);
  const DigitSampler sampler = seq == Sequence::kPrimes ? prime_sampler(cfg.seed, cfg.n)
                                                        : uniform_integer_sampler(cfg.seed, cfg.n);
  const StepRule rule;
  const Trajectory traj = walk_trajectory(sampler, cfg.steps, rule);
  const auto [ex, ey] = rule.drift(source_law(seq, cfg.n));

  Outputs out(cfg, "csv");
  const std::string stem = std::string("walk_") + to_string(seq) + "_seed" + std::to_string(cfg.seed);
  out.emit(stem + ".csv", "csv",
           [&](std::ostream& os) { write_trajectory_csv(os, traj, out.csv_meta()); });
  out.emit(stem + ".json", "json", [&](std::ostream& os) {
    const Point& last = traj.back();
    const double steps = static_cast<double>(std::max<std::uint64_t>(cfg.steps, 1));
    json doc;
    doc["sequence"] = to_string(seq);
    doc["ceiling"] = cfg.n;
    doc["seed"] = cfg.seed;
    doc["steps"] = cfg.steps;
    doc["final"] = {{"x", last.x}, {"y", last.y}};
    doc["mean_step"] = {{"x", static_cast<double>(last.x) / steps},
                        {"y", static_cast<double>(last.y) / steps}};
    doc["expected_drift"] = {{"x", ex}, {"y", ey}};
    doc["meta"] = out.meta();
    os << doc.dump(2) << '\n';
  });
  return 0;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool with_seq, const std::string& max_default) {
  if (with_seq) {
    sub->add_option("--seq", cfg.seq, "primes | zeros | cramer | integers")
        ->check(CLI::IsMember({"primes", "zeros", "cramer", "integers"}));
  }
  auto* max = sub->add_option("--max", cfg.max_text, "upper bound N, e.g. 1e8");
  if (max_default.empty()) {
    max->required();
  } else {
    cfg.max_text = max_default;
  }
  sub->add_option("--digits", cfg.k, "digit depth k")->check(CLI::Range(1, 7));
  sub->add_option("--a", cfg.a, "size constant a in alpha = 1/(ln N - a)");
  sub->add_option("--seed", cfg.seed, "random seed");
  sub->add_option("--zeros", cfg.zeros_path, "zeta zeros file, one height per line");
  sub->add_option("--format", cfg.format, "stdout format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", cfg.out, "output directory; every artifact is written there");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leading-digit statistics of primes, zeta zeros and related sequences"};
  app.set_version_flag("--version", DIGITLAW_VERSION);
  app.require_subcommand(1);
  RunConfig cfg;

  auto* analyze = app.add_subcommand("analyze", "digit histogram and goodness-of-fit report");
  add_common(analyze, cfg, true, "");
  auto* tables = app.add_subcommand("tables", "counting, conformance and size-constant tables");
  add_common(tables, cfg, false, "");
  tables->add_option("--grid", cfg.grid, "z samples for the conformance correlation")
      ->check(CLI::Range(10, 100000));
  auto* conform = app.add_subcommand("conform", "conformance of pi- and Li-based cdfs");
  add_common(conform, cfg, true, "");
  conform->add_option("--grid", cfg.grid, "z samples")->check(CLI::Range(10, 100000));
  auto* cramer = app.add_subcommand("cramer", "Cramer-model pseudo-primes and run manifest");
  add_common(cramer, cfg, false, "");
  auto* walk = app.add_subcommand("walk", "first-digit driven 2D random walk");
  add_common(walk, cfg, true, "1e6");
  walk->add_option("--steps", cfg.steps, "number of steps");
  auto* fit = app.add_subcommand("fit", "per-decade exponents and the size constant a");
  add_common(fit, cfg, true, "");
  fit->add_option("--min", cfg.min_decade, "first decade exponent")->check(CLI::Range(1, 19));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    cfg.n = parse_max(cfg.max_text);
    if (cfg.command == "analyze") return cmd_analyze(cfg);
    if (cfg.command == "tables") return cmd_tables(cfg);
    if (cfg.command == "conform") return cmd_conform(cfg);
    if (cfg.command == "cramer") return cmd_cramer(cfg);
    if (cfg.command == "walk") return cmd_walk(cfg);
    if (cfg.command == "fit") return cmd_fit(cfg);
    fail(ErrorKind::kUsage, "unknown command");
  } catch (const Error& e) {
    std::cerr << "digitlaw: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::bad_alloc&) {
    std::cerr << "digitlaw: resource error: out of memory\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "digitlaw: " << e.what() << '\n';
    return 4;
  }
}
