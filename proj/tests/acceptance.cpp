// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Set TENSORLSD_ACCEPTANCE_THREADS to parallelize trials.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "tensorlsd/combinatorics.hpp"
#include "tensorlsd/graphs.hpp"
#include "tensorlsd/moments.hpp"
#include "tensorlsd/mplaw.hpp"
#include "tensorlsd/sequences.hpp"
#include "tensorlsd/simulation.hpp"

using namespace tensorlsd;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int g_failures = 0;

void report(int id, const char* name, const Outcome& o, double secs) {
  std::printf("criterion %2d %-34s %s  (%s; %.1f s)\n", id, name, o.pass ? "PASS" : "FAIL",
              o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++g_failures;
}

template <typename Fn>
void run(int id, const char* name, Fn fn) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  report(id, name, o,
         std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

std::vector<std::vector<int>> oracle_canonical(int p, int s) {
  std::vector<std::vector<int>> out;
  for (auto& v : oracle::brute_canonical(p))
    if (oracle::distinct_values(v) == s) out.push_back(std::move(v));
  return out;
}

std::string show(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += std::to_string(x);
  return s;
}

int threads() {
  if (const char* env = std::getenv("TENSORLSD_ACCEPTANCE_THREADS")) return std::max(1, std::atoi(env));
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

SimulationConfig mc_config(int n, int k) {
  SimulationConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.c = 0.5;
  cfg.tau = TauModel::constant(1.0);
  cfg.dist = EntryDistribution::uniform_phase();
  cfg.max_order = 4;
  cfg.trials = 20;
  cfg.seed = 42;
  cfg.threads = threads();
  return cfg;
}

std::size_t available_memory_bytes() {
  std::ifstream in("/proc/meminfo");
  std::string key;
  std::size_t kb = 0;
  std::string unit;
  while (in >> key >> kb >> unit) {
    if (key == "MemAvailable:") return kb * 1024;
  }
  return 0;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult shell(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp_dir(const fs::path& dir) {
  std::set<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.insert(e.path());
  std::string all;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    all += f.filename().string() + "\n" + s.str();
  }
  return all;
}

}  // namespace

int main() {
  std::printf("acceptance: %d worker thread(s)\n", threads());

  run(1, "non-crossing counting law", [] {
    Outcome o;
    std::uint64_t checked = 0;
    for (int p = 1; p <= 7; ++p) {
      BigCount total = 0;
      for (int s = 1; s <= p; ++s) {
        std::uint64_t count = 0;
        for (const auto& v : oracle_canonical(p, s)) count += oracle::crossing_scan(v) ? 0 : 1;
        total += count;
        ++checked;
        if (BigCount(count) != c1_count(s, p)) {
          o.fail("p=" + std::to_string(p) + " s=" + std::to_string(s) + " brute=" +
                 std::to_string(count) + " formula=" + c1_count(s, p).str());
        }
      }
      if (total != catalan(p)) o.fail("total at p=" + std::to_string(p) + " is not Catalan");
    }
    if (o.pass) o.detail = std::to_string(checked) + " (p,s) counts exact, totals Catalan";
    return o;
  });

  run(2, "Delta1 partner uniqueness", [] {
    Outcome o;
    std::uint64_t nc = 0, cr = 0;
    for (int p = 1; p <= 7; ++p) {
      const auto all = oracle::brute_canonical(p);
      std::vector<std::vector<std::vector<int>>> by_s(static_cast<std::size_t>(p) + 1);
      for (const auto& v : all) by_s[static_cast<std::size_t>(oracle::distinct_values(v))].push_back(v);
      for (const auto& a : all) {
        const int r = p + 1 - oracle::distinct_values(a);
        std::vector<std::vector<int>> found;
        for (const auto& i : by_s[static_cast<std::size_t>(r)])
          if (oracle::brute_delta1(i, a)) found.push_back(i);
        const auto partner = delta1_partner(CanonicalSequence(a));
        if (oracle::crossing_scan(a)) {
          ++cr;
          if (!found.empty() || partner) o.fail("crossing alpha=" + show(a) + " has a Delta1 graph");
        } else {
          ++nc;
          const bool ok = found.size() == 1 && partner &&
                          std::vector<int>(partner->values().begin(), partner->values().end()) ==
                              found.front();
          if (!ok) o.fail("alpha=" + show(a) + " found " + std::to_string(found.size()));
        }
      }
    }
    if (o.pass) {
      o.detail = std::to_string(nc) + " non-crossing alpha with unique partner, " +
                 std::to_string(cr) + " crossing with none";
    }
    return o;
  });

  run(3, "paired/single dichotomy", [] {
    Outcome o;
    std::uint64_t graphs = 0;
    for (int p = 1; p <= 6; ++p) {
      const auto all = oracle::brute_canonical(p);
      for (const auto& a : all) {
        if (oracle::crossing_scan(a)) continue;
        for (const auto& i : all) {
          ++graphs;
          const int cls = oracle::brute_class(i, a);
          const GraphClass lib = classify(WalkGraph(CanonicalSequence(i), CanonicalSequence(a)));
          if (cls == 2 || lib == GraphClass::Other) o.fail("alpha=" + show(a) + " i=" + show(i));
        }
      }
    }
    if (o.pass) o.detail = std::to_string(graphs) + " graphs, none Other";
    return o;
  });

  run(4, "paired count and partition images", [] {
    Outcome o;
    std::uint64_t cases = 0;
    for (int p = 1; p <= 7; ++p) {
      const auto all = oracle::brute_canonical(p);
      for (const auto& a : all) {
        if (oracle::crossing_scan(a)) continue;
        const int s = oracle::distinct_values(a);
        for (int r = 1; r <= p; ++r) {
          ++cases;
          std::set<std::vector<int>> brute;
          for (const auto& i : all)
            if (oracle::distinct_values(i) == r && oracle::brute_class(i, a) == 0) brute.insert(i);
          if (BigCount(brute.size()) != stirling2(p + 1 - s, r)) {
            o.fail("count alpha=" + show(a) + " r=" + std::to_string(r));
          }
          std::set<std::vector<int>> images;
          for (const auto& i : paired_partners(CanonicalSequence(a), r))
            images.insert(std::vector<int>(i.values().begin(), i.values().end()));
          if (images != brute) o.fail("image alpha=" + show(a) + " r=" + std::to_string(r));
        }
      }
    }
    if (o.pass) o.detail = std::to_string(cases) + " (alpha, r) cases exact";
    return o;
  });

  run(5, "Stirling identities", [] {
    Outcome o;
    for (int n = 0; n <= 20; ++n)
      for (int k = 0; k <= n; ++k)
        if (stirling2(n, k) != stirling2_explicit(n, k)) o.fail("S(" + std::to_string(n) + "," + std::to_string(k) + ")");
    for (int n = 0; n <= 10; ++n) {
      for (int x = 0; x <= 10; ++x) {
        BigCount sum = 0;
        for (int r = 0; r <= n; ++r) sum += stirling2(n, r) * falling_factorial(x, r);
        if (sum != ipow(x, n)) o.fail("falling factorial n=" + std::to_string(n) + " x=" + std::to_string(x));
      }
    }
    for (int p = 1; p <= 10; ++p)
      for (int s = 1; s <= p; ++s)
        for (int n = 1; n <= 10; ++n) {
          BigCount sum = 0;
          for (int r = 1; r <= p + 1 - s; ++r) sum += falling_factorial(n, r) * stirling2(p + 1 - s, r);
          if (sum != ipow(n, p + 1 - s)) o.fail("collapse p=" + std::to_string(p) + " s=" + std::to_string(s));
        }
    if (o.pass) o.detail = "recurrence=explicit n<=20, falling-factorial n,x<=10, collapse p,n<=10";
    return o;
  });

  run(6, "moment identity", [] {
    Outcome o;
    double worst = 0.0;
    for (double c : {0.1, 0.5, 1.0, 2.0}) {
      for (int p = 1; p <= 10; ++p) {
        if (limiting_moment(p, c, TauModel::constant(1.0)) != mp_moment(p, c)) {
          o.fail("limiting != mp at p=" + std::to_string(p) + " c=" + fmt(c));
        }
      }
      for (int p = 1; p <= 6; ++p) {
        const double diff = std::abs(mp_quadrature_moment(p, c) - mp_moment(p, c));
        worst = std::max(worst, diff);
        if (diff > 1e-6) o.fail("quadrature p=" + std::to_string(p) + " c=" + fmt(c) + " diff=" + fmt(diff));
      }
    }
    if (o.pass) o.detail = "exact for p<=10; max quadrature diff " + fmt(worst);
    return o;
  });

  run(7, "exact oracle vs exhaustive", [] {
    Outcome o;
    double worst = 0.0;
    for (int k = 1; k <= 2; ++k) {
      for (const std::vector<double>& tau : {std::vector<double>{1.0, 1.0}, std::vector<double>{0.7, 1.9}}) {
        const auto want = oracle::exhaustive_mean_trace(2, k, 2, tau, {1.0, -1.0}, 3);
        for (int p = 1; p <= 3; ++p) {
          const double got = exact_mean_trace_moment(2, k, 2, p, TauModel::from_coefficients(tau),
                                                     MixedMomentRule::rademacher());
          const double rel = std::abs(got - want[p - 1]) / std::abs(want[p - 1]);
          worst = std::max(worst, rel);
          if (rel > 1e-12) o.fail("k=" + std::to_string(k) + " p=" + std::to_string(p) + " rel=" + fmt(rel));
        }
      }
    }
    if (o.pass) o.detail = "max relative diff " + fmt(worst);
    return o;
  });

  run(8, "Gram reduction vs dense", [] {
    Outcome o;
    int configs = 0;
    double worst = 0.0;
    const EntryDistribution dists[] = {EntryDistribution::uniform_phase(), EntryDistribution::rademacher(),
                                       EntryDistribution::roots_of_unity(3)};
    for (int n = 1; n <= 64; ++n) {
      for (int k = 1; k <= 6; ++k) {
        const double dimd = std::pow(static_cast<double>(n), k);
        if (dimd > 64.0 || (n == 1 && k > 3)) break;
        const int dim = static_cast<int>(dimd);
        std::set<int> ms{1, std::max(1, dim / 2), dim, dim + 3};
        for (const auto& dist : dists) {
          for (int m : ms) {
            const auto y = sample_base_vectors(n, k, static_cast<std::size_t>(m), dist,
                                               static_cast<std::uint64_t>(n * 1000 + k * 100 + m));
            const std::vector<double> tau(static_cast<std::size_t>(m), 1.0);
            const auto reduced = padded_spectrum(esd(gram_matrix(y), tau, BigCount(dim)));
            std::vector<std::vector<std::vector<oracle::cd>>> legs(static_cast<std::size_t>(m));
            for (int a = 0; a < m; ++a)
              for (int l = 0; l < k; ++l) {
                std::vector<oracle::cd> leg;
                for (int t = 0; t < n; ++t) leg.push_back(y.entry(static_cast<std::size_t>(a), l, t));
                legs[static_cast<std::size_t>(a)].push_back(leg);
              }
            const auto dense_m = oracle::dense_model(legs, tau);
            ComplexMatrix dm(dense_m.size(), dense_m.size());
            for (std::size_t r = 0; r < dense_m.size(); ++r)
              for (std::size_t c = 0; c < dense_m.size(); ++c) dm.set(r, c, dense_m[r][c]);
            const auto dense = hermitian_eigenvalues(dm);
            ++configs;
            if (dense.size() != reduced.size()) {
              o.fail("size mismatch n=" + std::to_string(n) + " k=" + std::to_string(k));
              continue;
            }
            for (std::size_t j = 0; j < dense.size(); ++j) {
              const double d = std::abs(dense[j] - reduced[j]);
              worst = std::max(worst, d);
              if (d > 1e-8) {
                o.fail("n=" + std::to_string(n) + " k=" + std::to_string(k) + " m=" + std::to_string(m) +
                       " dev=" + fmt(d));
              }
            }
          }
        }
      }
    }
    if (o.pass) o.detail = std::to_string(configs) + " configs, max deviation " + fmt(worst);
    return o;
  });

  // Criteria 9-11 share the Monte Carlo runs.
  std::printf("running Monte Carlo ladder (n,k) = (4,4), (4,5), (8,4) with 20 trials each...\n");
  std::fflush(stdout);
  std::vector<std::pair<std::pair<int, int>, TrialReport>> ladder;
  std::string ladder_error;
  try {
    for (auto nk : {std::pair{4, 4}, std::pair{4, 5}, std::pair{8, 4}}) {
      const auto start = std::chrono::steady_clock::now();
      ladder.emplace_back(nk, run_trials(mc_config(nk.first, nk.second)));
      std::printf("  (n=%d,k=%d) m=%zu done in %.1f s\n", nk.first, nk.second, ladder.back().second.m,
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      std::fflush(stdout);
    }
  } catch (const std::exception& e) {
    ladder_error = e.what();
  }
  // The (8,5) rung needs m = 16384; it runs only if the machine has room.
  {
    const std::size_t need = estimate_trial_bytes(16384, 4);
    const std::size_t have = available_memory_bytes();
    if (ladder_error.empty() && have > need + need / 4) {
      auto cfg = mc_config(8, 5);
      cfg.threads = 1;
      ladder.emplace_back(std::pair{8, 5}, run_trials(cfg));
    } else {
      std::printf("  (n=8,k=5) skipped: needs ~%zu MiB per trial, %zu MiB available\n", need >> 20,
                  have >> 20);
    }
  }

  auto find = [&](int n, int k) -> const TrialReport* {
    for (const auto& [nk, rep] : ladder)
      if (nk.first == n && nk.second == k) return &rep;
    return nullptr;
  };

  run(9, "Monte Carlo moment convergence", [&] {
    Outcome o;
    const TrialReport* rep = find(8, 4);
    if (rep == nullptr) {
      o.fail("Monte Carlo run failed: " + ladder_error);
      return o;
    }
    std::string d;
    for (const auto& s : rep->moments) {
      const double target = mp_moment(s.p, 0.5);
      const double z = s.standard_error > 0 ? std::abs(s.mean - target) / s.standard_error : 0.0;
      if (s.p == 1) {
        const double exact = static_cast<double>(rep->m) / 4096.0;
        const double rel = std::abs(s.mean - exact) / exact;
        d += "p=1 rel " + fmt(rel) + "; ";
        if (rel > 1e-12) o.fail("p=1 mean " + fmt(s.mean) + " != m/n^k");
        for (const auto& tr : rep->trials) {
          if (std::abs(tr.sample.trace_moments[0] - exact) > 1e-12 * exact) o.fail("p=1 trial not exact");
        }
        continue;
      }
      d += "p=" + std::to_string(s.p) + " |mean-mp|/SE " + fmt(z) + "; ";
      if (!(std::abs(s.mean - target) <= 3.0 * s.standard_error)) {
        o.fail("p=" + std::to_string(s.p) + " mean " + fmt(s.mean) + " vs " + fmt(target) + " SE " +
               fmt(s.standard_error));
      }
    }
    if (o.pass) o.detail = d.substr(0, d.size() - 2);
    return o;
  });

  run(10, "ESD convergence (KS)", [&] {
    Outcome o;
    const TrialReport* rep = find(8, 4);
    if (rep == nullptr || ladder.size() < 3) {
      o.fail("Monte Carlo run failed: " + ladder_error);
      return o;
    }
    if (rep->ks_max >= 0.08) o.fail("max KS " + fmt(rep->ks_max) + " at (8,4)");
    std::string trend;
    double prev = 2.0;
    for (const auto& [nk, r] : ladder) {
      trend += "(" + std::to_string(nk.first) + "," + std::to_string(nk.second) + ") " + fmt(r.ks_mean) + " ";
      if (!(r.ks_mean < prev)) o.fail("KS mean not decreasing: " + trend);
      prev = r.ks_mean;
    }
    trend.pop_back();
    if (o.pass) o.detail = "max KS at (8,4) " + fmt(rep->ks_max) + "; mean KS " + trend;
    return o;
  });

  run(11, "concentration proxy", [&] {
    Outcome o;
    const TrialReport* rep = find(8, 4);
    if (rep == nullptr || ladder.size() < 3) {
      o.fail("Monte Carlo run failed: " + ladder_error);
      return o;
    }
    const auto& s2 = rep->moments[1];
    if (!(s2.stddev < 0.25 * s2.mean)) o.fail("sd " + fmt(s2.stddev) + " vs mean " + fmt(s2.mean));
    std::string trend;
    double prev = 1e300;
    for (const auto& [nk, r] : ladder) {
      const double sd = r.moments[1].stddev;
      trend += "(" + std::to_string(nk.first) + "," + std::to_string(nk.second) + ") " + fmt(sd) + " ";
      if (!(sd < prev)) o.fail("sd not shrinking: " + trend);
      prev = sd;
    }
    trend.pop_back();
    if (o.pass) o.detail = "sd/mean at (8,4) " + fmt(s2.stddev / s2.mean) + "; sd " + trend;
    return o;
  });

  run(12, "determinism", [] {
    Outcome o;
    const fs::path root = fs::temp_directory_path() / "tensorlsd_acceptance_determinism";
    fs::remove_all(root);
    const std::string cli = TENSORLSD_CLI_PATH;
    const std::vector<std::string> commands{
        "verify graphs --p-max 5",
        "verify sequences --p-max 7",
        "moments --c 0.5 --p-max 6",
        "moments --c 0.5 --p-max 3 --n 2 --k 2 --m 3 --dist roots:3",
        "mplaw --c 0.25 --points 50",
    };
    for (const auto& args : commands) {
      const auto a = shell(cli + " " + args);
      const auto b = shell(cli + " " + args);
      if (a.code != 0 || a.out != b.out || a.out.empty()) o.fail("stdout differs: " + args);
    }
    const std::string sim = " simulate --n 4 --k 3 --c 0.5 --trials 4 --seed 42 --p-max 4 --threads ";
    const auto a = shell(cli + sim + "1 --out " + (root / "a").string());
    const auto b = shell(cli + sim + "2 --out " + (root / "b").string());
    if (a.code != 0 || b.code != 0) {
      o.fail("simulate failed");
    } else {
      auto trim = [](std::string s) {
        while (!s.empty() && s.back() == '\n') s.pop_back();
        return s;
      };
      if (slurp_dir(trim(a.out)) != slurp_dir(trim(b.out))) o.fail("simulate outputs differ");
    }
    fs::remove_all(root);
    if (o.pass) o.detail = std::to_string(commands.size() + 1) + " commands byte-identical on rerun";
    return o;
  });

  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
