// tensorlsd: verification suites, moment tables, Monte Carlo runs and MP
// tables for sums of random rank-one tensor-product matrices.
//
// Exit status: 0 success, 2 usage error, 3 numerical failure,
// 4 verification failure, 1 anything else.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tensorlsd/combinatorics.hpp"
#include "tensorlsd/error.hpp"
#include "tensorlsd/io.hpp"
#include "tensorlsd/kernels/kernels.hpp"
#include "tensorlsd/moments.hpp"
#include "tensorlsd/mplaw.hpp"
#include "tensorlsd/simulation.hpp"
#include "tensorlsd/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace tensorlsd;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerification = 4;

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<double> read_numbers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& ch : line) {
      if (ch == ',' || ch == ';') ch = ' ';
    }
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || !std::isfinite(v)) {
        throw UsageError("'" + path + "': not a number: '" + tok + "'");
      }
      out.push_back(v);
    }
  }
  if (out.empty()) throw UsageError("'" + path + "' holds no numbers");
  return out;
}

// const:v | file:PATH | moments:PATH
TauModel parse_tau(const std::string& spec) {
  if (spec.rfind("const:", 0) == 0) {
    const std::string tail = spec.substr(6);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tail, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tail.size() || !std::isfinite(v)) {
      throw UsageError("bad tau constant '" + tail + "'");
    }
    return TauModel::constant(v);
  }
  if (spec.rfind("file:", 0) == 0) return TauModel::from_coefficients(read_numbers(spec.substr(5)));
  if (spec.rfind("moments:", 0) == 0) return TauModel::from_moments(read_numbers(spec.substr(8)));
  throw UsageError("bad tau spec '" + spec + "' (const:v|file:PATH|moments:PATH)");
}

struct Common {
  std::string out;
  bool force = false;
};

// Creates <out>/<command>-<hash of config> and returns it; refuses to reuse
// an existing directory unless forced.
fs::path output_dir(const Common& common, const std::string& command, const json& config) {
  const fs::path dir = fs::path(common.out) / (command + "-" + hex64(fnv1a(config.dump())));
  if (fs::exists(dir)) {
    if (!common.force) {
      throw UsageError("output directory " + dir.string() +
                       " exists (same config already run); pass --force to overwrite");
    }
    fs::remove_all(dir);
  }
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

void emit(const Common& common, const std::string& command, const json& config,
          const std::string& file_name, const std::string& body) {
  if (common.out.empty()) {
    std::cout << body;
    return;
  }
  const fs::path dir = output_dir(common, command, config);
  write_file(dir / "config.json", config.dump(2) + "\n");
  write_file(dir / file_name, body);
  std::cerr << "wrote " << (dir / file_name).string() << "\n";
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  int p_max = 6;
};

int cmd_verify(const VerifyArgs& a, const Common& common) {
  const VerifyReport rep = run_verify(a.suite, a.p_max);
  json config;
  config["command"] = "verify";
  config["suite"] = a.suite;
  config["p_max"] = a.p_max;
  json body = rep.to_json();
  body["config"] = config;
  emit(common, "verify", config, "report.json", body.dump(2) + "\n");
  std::size_t failed = 0;
  for (const auto& c : rep.claims) failed += c.pass ? 0 : 1;
  std::cerr << "verify " << a.suite << ": " << rep.claims.size() - failed << "/"
            << rep.claims.size() << " claims pass\n";
  return rep.pass() ? 0 : kExitVerification;
}

// ---- moments --------------------------------------------------------------

struct MomentsArgs {
  int p_max = 4;
  double c = 1.0;
  std::string tau = "const:1";
  int n = 0;
  int k = 0;
  std::size_t m = 0;
  std::string dist = "phase";
};

int cmd_moments(const MomentsArgs& a, const Common& common) {
  if (a.p_max < 1 || a.p_max > kDefaultLengthCap) {
    throw UsageError("--p-max must be in [1, " + std::to_string(kDefaultLengthCap) + "]");
  }
  const TauModel tau = parse_tau(a.tau);
  const bool exact = a.n > 0 || a.k > 0;
  json config;
  config["command"] = "moments";
  config["p_max"] = a.p_max;
  config["c"] = a.c;
  config["tau"] = a.tau;
  if (exact) {
    config["n"] = a.n;
    config["k"] = a.k;
    config["m"] = a.m;
    config["dist"] = a.dist;
  }

  std::ostringstream csv;
  csv << (exact ? "p,theory,exact,abs_error\n" : "p,theory\n");
  std::size_t m = a.m;
  MixedMomentRule rule = MixedMomentRule::uniform_phase();
  if (exact) {
    if (a.n < 1 || a.k < 1) throw UsageError("exact moments need both --n and --k");
    if (m == 0) m = static_cast<std::size_t>(std::llround(a.c * to_double(ipow(a.n, a.k))));
    if (m == 0) throw UsageError("m resolves to 0");
    rule = EntryDistribution::parse(a.dist).moment_rule();
  }
  for (int p = 1; p <= a.p_max; ++p) {
    const double lim = limiting_moment(p, a.c, tau);
    csv << p << ',' << format_number(lim);
    if (exact) {
      const double ex = exact_mean_trace_moment(a.n, a.k, m, p, tau, rule);
      csv << ',' << format_number(ex) << ',' << format_number(std::abs(ex - lim));
    }
    csv << '\n';
  }
  emit(common, "moments", config, "moments.csv", csv.str());
  return 0;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  int n = 8;
  int k = 4;
  std::size_t m = 0;
  double c = 0.5;
  std::string dist = "phase";
  std::string tau = "const:1";
  int p_max = 4;
  int trials = 20;
  std::uint64_t seed = 42;
  int threads = 0;
  int bins = 60;
  double zero_threshold = kDefaultZeroThreshold;
  double mem_limit_mb = 4096;
  bool dense_check = false;
};

json config_json(const SimulateArgs& a, const SimulationConfig& cfg) {
  json j;
  j["command"] = "simulate";
  j["n"] = a.n;
  j["k"] = a.k;
  j["m"] = resolved_m(cfg);
  j["c"] = a.c;
  j["dist"] = cfg.dist.name();
  j["tau"] = a.tau;
  j["p_max"] = a.p_max;
  j["trials"] = a.trials;
  j["seed"] = a.seed;
  j["bins"] = a.bins;
  j["zero_threshold"] = a.zero_threshold;
  j["dense_check"] = a.dense_check;
  j["kernels"] = std::string(kernels::to_string(kernels::active_kernels().backend));
  return j;
}

int cmd_simulate(const SimulateArgs& a, const Common& common) {
  const auto start = std::chrono::steady_clock::now();
  if (a.p_max < 1 || a.p_max > kDefaultLengthCap) {
    throw UsageError("--p-max must be in [1, " + std::to_string(kDefaultLengthCap) + "]");
  }
  SimulationConfig cfg;
  cfg.n = a.n;
  cfg.k = a.k;
  cfg.m = a.m;
  cfg.c = a.c;
  cfg.dist = EntryDistribution::parse(a.dist);
  cfg.tau = parse_tau(a.tau);
  cfg.max_order = a.p_max;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.histogram_bins = a.bins;
  cfg.zero_threshold = a.zero_threshold;
  cfg.dense_check = a.dense_check;
  cfg.threads = a.threads > 0 ? a.threads
                              : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (cfg.n < 1 || cfg.k < 1 || cfg.trials < 1) {
    throw UsageError("--n, --k and --trials must be >= 1");
  }
  if (!(cfg.c > 0.0)) throw UsageError("--c must be > 0");

  const std::size_t m = resolved_m(cfg);
  const BigCount dim = tensor_dimension(cfg.n, cfg.k);
  const double target = std::round(cfg.c * to_double(dim));
  if (static_cast<double>(m) != target) {
    std::cerr << "warning: m = " << m << " differs from round(c n^k) = " << format_number(target)
              << "; theory columns use c = " << format_number(cfg.c) << "\n";
  }

  // Memory guard: one trial must fit; concurrency is trimmed to the limit.
  const double limit = a.mem_limit_mb * 1024.0 * 1024.0;
  double per_trial = static_cast<double>(estimate_trial_bytes(m, cfg.max_order));
  if (cfg.dense_check) {
    per_trial += 3.0 * static_cast<double>(ComplexMatrix::bytes_for(static_cast<std::size_t>(dim)));
  }
  if (per_trial > limit) {
    std::ostringstream msg;
    msg << "estimated " << std::llround(per_trial / (1024.0 * 1024.0))
        << " MiB per trial (m = " << m << ") exceeds --mem-limit-mb " << a.mem_limit_mb;
    throw UsageError(msg.str());
  }
  const int concurrent = std::min(cfg.threads, cfg.trials);
  const int allowed = static_cast<int>(std::max(1.0, std::floor(limit / per_trial)));
  if (concurrent > allowed) {
    std::cerr << "note: memory limit allows " << allowed << " concurrent trials\n";
    cfg.threads = allowed;
  }

  const json config = config_json(a, cfg);
  const fs::path dir = output_dir(common, "simulate", config);
  const TrialReport rep = run_trials(cfg);

  std::ostringstream moments;
  moments << (cfg.dense_check ? "trial,p,value,dense_value,abs_diff\n" : "trial,p,value\n");
  for (const auto& tr : rep.trials) {
    for (int p = 1; p <= cfg.max_order; ++p) {
      const double v = tr.sample.trace_moments[static_cast<std::size_t>(p - 1)];
      moments << tr.trial << ',' << p << ',' << format_number(v);
      if (cfg.dense_check) {
        const double d = tr.dense_moments[static_cast<std::size_t>(p - 1)];
        moments << ',' << format_number(d) << ',' << format_number(std::abs(v - d));
      }
      moments << '\n';
    }
  }

  std::ostringstream hist;
  hist << "bin_left,bin_right,mass\n";
  for (const auto& b : rep.histogram) {
    hist << format_number(b.left) << ',' << format_number(b.right) << ',' << format_number(b.mass)
         << '\n';
  }
  std::ostringstream hist_trials;
  hist_trials << "trial,bin_left,bin_right,mass\n";
  for (const auto& tr : rep.trials) {
    for (const auto& b : tr.histogram) {
      hist_trials << tr.trial << ',' << format_number(b.left) << ',' << format_number(b.right)
                  << ',' << format_number(b.mass) << '\n';
    }
  }

  std::ostringstream summary;
  summary << "p,theory,mean,standard_error,abs_error\n";
  json report;
  report["config"] = config;
  report["dimension"] = rep.dimension.str();
  auto& mom = report["moments"] = json::array();
  for (const auto& s : rep.moments) {
    json j;
    j["p"] = s.p;
    j["mean"] = s.mean;
    j["standard_error"] = s.standard_error;
    j["stddev"] = s.stddev;
    summary << s.p << ',' << (s.theory ? format_number(*s.theory) : "") << ','
            << format_number(s.mean) << ',' << format_number(s.standard_error) << ','
            << (s.theory ? format_number(std::abs(s.mean - *s.theory)) : "") << '\n';
    if (s.theory) {
      j["theory"] = *s.theory;
      j["abs_error"] = std::abs(s.mean - *s.theory);
    } else {
      j["theory"] = nullptr;
    }
    mom.push_back(std::move(j));
  }
  report["ks"] = {{"reference_c", cfg.c}, {"mean", rep.ks_mean}, {"max", rep.ks_max}};
  auto& trials = report["trials"] = json::array();
  for (const auto& tr : rep.trials) {
    json j;
    j["trial"] = tr.trial;
    j["seed"] = tr.sample.seed;
    j["nonzero_eigenvalues"] = tr.sample.nonzero_eigenvalues.size();
    j["zero_multiplicity"] = tr.sample.zero_multiplicity.str();
    j["ks"] = tr.ks;
    j["trace_consistency"] = tr.trace_consistency;
    j["trace_identity_error"] = tr.trace_identity_error;
    if (cfg.dense_check) j["dense_spectrum_deviation"] = tr.dense_spectrum_deviation;
    trials.push_back(std::move(j));
  }
  report["files"] = {"histogram.csv", "histogram_by_trial.csv", "moments.csv", "summary.csv"};

  write_file(dir / "config.json", config.dump(2) + "\n");
  write_file(dir / "moments.csv", moments.str());
  write_file(dir / "histogram.csv", hist.str());
  write_file(dir / "histogram_by_trial.csv", hist_trials.str());
  write_file(dir / "summary.csv", summary.str());
  write_file(dir / "report.json", report.dump(2) + "\n");

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "wrote " << dir.string() << " (" << rep.trials.size() << " trials, runtime "
            << format_number(std::round(secs * 100.0) / 100.0) << " s)\n";
  std::cout << dir.string() << "\n";
  return 0;
}

// ---- mplaw ----------------------------------------------------------------

struct MplawArgs {
  double c = 1.0;
  double x_min = 0.0;
  double x_max = -1.0;  // default: right edge of the support
  int points = 201;
};

int cmd_mplaw(const MplawArgs& a, const Common& common) {
  const MPLaw law(a.c);
  const double hi = a.x_max > a.x_min ? a.x_max : law.upper;
  json config;
  config["command"] = "mplaw";
  config["c"] = a.c;
  config["x_min"] = a.x_min;
  config["x_max"] = hi;
  config["points"] = a.points;
  std::ostringstream csv;
  write_mp_table_csv(csv, mp_table(a.c, a.x_min, hi, a.points));
  emit(common, "mplaw", config, "mplaw.csv", csv.str());
  return 0;
}

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--out", common.out,
                  "Output root; files go to <out>/<command>-<config hash>/ (default: stdout, "
                  "except simulate which uses ./runs)");
  sub->add_flag("--force", common.force, "Overwrite an existing output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of sums of random rank-one tensor-product matrices"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI config file; command-line flags take precedence");
  std::string backend;
  app.add_option("--kernels", backend, "Force the SIMD backend")
      ->check(CLI::IsMember({"scalar", "avx2"}));

  Common common;

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run an exhaustive verification suite");
  verify->add_option("suite", va.suite, "sequences|graphs|stirling|moments")
      ->required()
      ->check(CLI::IsMember(verify_suites()));
  verify->add_option("--p-max", va.p_max, "Largest sequence length checked")
      ->capture_default_str();
  add_common(verify, common);

  MomentsArgs ma;
  auto* moments = app.add_subcommand("moments", "Limiting moments, optionally with the exact finite-size mean");
  moments->add_option("--p-max", ma.p_max, "Largest moment order")->capture_default_str();
  moments->add_option("--c", ma.c, "Ratio c = lim m / n^k")->capture_default_str();
  moments->add_option("--tau", ma.tau, "const:v | file:PATH | moments:PATH")->capture_default_str();
  moments->add_option("--n", ma.n, "Leg dimension for the exact finite-size column");
  moments->add_option("--k", ma.k, "Number of tensor legs for the exact column");
  moments->add_option("--m", ma.m, "Number of rank-one terms (default round(c n^k))");
  moments->add_option("--dist", ma.dist, "phase | rademacher | roots:q")->capture_default_str();
  add_common(moments, common);

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo trials of the tensor model");
  simulate->add_option("--n", sa.n, "Leg dimension")->capture_default_str();
  simulate->add_option("--k", sa.k, "Number of tensor legs")->capture_default_str();
  simulate->add_option("--m", sa.m, "Number of rank-one terms (default round(c n^k))");
  simulate->add_option("--c", sa.c, "Ratio c used for theory and the MP reference")
      ->capture_default_str();
  simulate->add_option("--dist", sa.dist, "phase | rademacher | roots:q")->capture_default_str();
  simulate->add_option("--tau", sa.tau, "const:v | file:PATH")->capture_default_str();
  simulate->add_option("--p-max", sa.p_max, "Largest trace moment order")->capture_default_str();
  simulate->add_option("--trials", sa.trials, "Number of independent trials")
      ->capture_default_str();
  simulate->add_option("--seed", sa.seed, "Master seed")->capture_default_str();
  simulate->add_option("--threads", sa.threads, "Worker threads (default: all cores)");
  simulate->add_option("--bins", sa.bins, "Histogram bins")->capture_default_str();
  simulate->add_option("--zero-threshold", sa.zero_threshold,
                       "Relative size below which eigenvalues join the zero atom")
      ->capture_default_str();
  simulate->add_option("--mem-limit-mb", sa.mem_limit_mb, "Memory limit for the guard")
      ->capture_default_str();
  simulate->add_flag("--dense-check", sa.dense_check,
                     "Compare with the dense n^k-dimensional matrix (n^k <= 4096)");
  add_common(simulate, common);

  MplawArgs pa;
  auto* mplaw = app.add_subcommand("mplaw", "Marchenko-Pastur density and CDF table");
  mplaw->add_option("--c", pa.c, "Ratio parameter c > 0")->capture_default_str();
  mplaw->add_option("--x-min", pa.x_min, "Grid start")->capture_default_str();
  mplaw->add_option("--x-max", pa.x_max, "Grid end (default: right support edge)");
  mplaw->add_option("--points", pa.points, "Grid points")->capture_default_str();
  add_common(mplaw, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (backend == "scalar") kernels::set_active_backend(kernels::Backend::Scalar);
    if (backend == "avx2") kernels::set_active_backend(kernels::Backend::Avx2);
    if (*verify) return cmd_verify(va, common);
    if (*moments) return cmd_moments(ma, common);
    if (*simulate) {
      if (common.out.empty()) common.out = "runs";
      return cmd_simulate(sa, common);
    }
    if (*mplaw) return cmd_mplaw(pa, common);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
