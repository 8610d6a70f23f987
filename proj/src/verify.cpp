#include "tensorlsd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "tensorlsd/combinatorics.hpp"
#include "tensorlsd/error.hpp"
#include "tensorlsd/graphs.hpp"
#include "tensorlsd/moments.hpp"
#include "tensorlsd/mplaw.hpp"
#include "tensorlsd/sequences.hpp"

namespace tensorlsd {

namespace {

std::string str(const BigCount& x) { return x.str(); }

class Recorder {
 public:
  Recorder(VerifyReport& report, std::string claim, int p) : report_(report) {
    result_.claim = std::move(claim);
    result_.p = p;
  }
  ~Recorder() { report_.claims.push_back(std::move(result_)); }
  Recorder(const Recorder&) = delete;
  Recorder& operator=(const Recorder&) = delete;

  void count(std::uint64_t n = 1) { result_.checked += n; }
  void fail(const std::string& what) {
    if (result_.pass) result_.counterexample = what;
    result_.pass = false;
  }
  void expect(bool ok, const std::string& what) {
    ++result_.checked;
    if (!ok) fail(what);
  }
  void detail(std::string d) { result_.detail = std::move(d); }

 private:
  VerifyReport& report_;
  ClaimResult result_;
};

// Crossing test straight from the definition: j1 < j2 < j3 < j4 with
// a[j1] == a[j3] != a[j2] == a[j4].
bool crossing_by_scan(std::span<const int> a) {
  const std::size_t p = a.size();
  for (std::size_t j1 = 0; j1 < p; ++j1)
    for (std::size_t j2 = j1 + 1; j2 < p; ++j2)
      for (std::size_t j3 = j2 + 1; j3 < p; ++j3)
        for (std::size_t j4 = j3 + 1; j4 < p; ++j4)
          if (a[j1] == a[j3] && a[j2] == a[j4] && a[j1] != a[j2]) return true;
  return false;
}

void suite_sequences(VerifyReport& rep, int p_max) {
  for (int p = 1; p <= p_max; ++p) {
    std::vector<BigCount> by_s(static_cast<std::size_t>(p) + 1, 0);
    std::vector<BigCount> nc_by_s(static_cast<std::size_t>(p) + 1, 0);
    BigCount total = 0;
    bool canonical_ok = true;
    bool ordered_ok = true;
    std::optional<std::string> canon_bad;
    std::optional<std::string> scan_bad;
    std::uint64_t scanned = 0;
    std::vector<int> prev;
    for_each_canonical(p, std::nullopt, [&](const CanonicalSequence& a) {
      ++total;
      by_s[static_cast<std::size_t>(a.distinct())] += 1;
      std::vector<int> v(a.values().begin(), a.values().end());
      if (!is_canonical(v)) {
        canonical_ok = false;
        if (!canon_bad) canon_bad = a.to_string();
      }
      if (!prev.empty() && !(prev < v)) {
        ordered_ok = false;
        if (!canon_bad) canon_bad = a.to_string();
      }
      prev = v;
      const bool crossing = is_crossing(a);
      if (!crossing) nc_by_s[static_cast<std::size_t>(a.distinct())] += 1;
      if (p <= 9) {
        ++scanned;
        if (crossing != crossing_by_scan(a.values()) && !scan_bad) scan_bad = a.to_string();
      }
    });

    {
      Recorder r(rep, "canonical sequences of length p number Bell(p)", p);
      r.count(static_cast<std::uint64_t>(total));
      r.detail("enumerated=" + str(total) + " formula=" + str(bell(p)));
      if (total != bell(p)) r.fail("p=" + std::to_string(p));
    }
    {
      Recorder r(rep, "enumeration is canonical and lexicographically increasing", p);
      r.count(static_cast<std::uint64_t>(total));
      if (!canonical_ok || !ordered_ok) r.fail(*canon_bad);
    }
    {
      Recorder r(rep, "canonical s-sequences number S(p,s)", p);
      std::ostringstream d;
      for (int s = 1; s <= p; ++s) {
        const BigCount f = stirling2(p, s);
        d << (s > 1 ? " " : "") << "s=" << s << ":" << str(by_s[s]) << "/" << str(f);
        r.expect(by_s[s] == f, "s=" + std::to_string(s) + " enumerated=" + str(by_s[s]) +
                                   " formula=" + str(f));
      }
      r.detail(d.str());
    }
    {
      Recorder r(rep, "non-crossing s-sequences number C(p,s-1)C(p,s)/p", p);
      std::ostringstream d;
      BigCount nc_total = 0;
      for (int s = 1; s <= p; ++s) {
        const BigCount f = c1_count(s, p);
        nc_total += nc_by_s[s];
        d << (s > 1 ? " " : "") << "s=" << s << ":" << str(nc_by_s[s]) << "/" << str(f);
        r.expect(nc_by_s[s] == f, "s=" + std::to_string(s) + " enumerated=" + str(nc_by_s[s]) +
                                      " formula=" + str(f));
      }
      r.detail(d.str());
      r.expect(nc_total == catalan(p), "total " + str(nc_total) + " != Catalan " + str(catalan(p)));
    }
    if (p <= 9) {
      Recorder r(rep, "crossing test agrees with the four-index scan", p);
      r.count(scanned);
      if (scan_bad) r.fail(*scan_bad);
    }
  }
}

void suite_graphs(VerifyReport& rep, int p_max) {
  for (int p = 1; p <= p_max; ++p) {
    const auto all = enumerate_canonical(p);
    std::vector<CanonicalSequence> noncrossing;
    std::vector<CanonicalSequence> crossing;
    for (const auto& a : all) (is_crossing(a) ? crossing : noncrossing).push_back(a);

    {
      Recorder r(rep, "non-crossing count", p);
      BigCount formula = 0;
      for (int s = 1; s <= p; ++s) formula += c1_count(s, p);
      r.count(noncrossing.size());
      r.detail("enumerated=" + std::to_string(noncrossing.size()) + " formula=" + str(formula));
      if (BigCount(noncrossing.size()) != formula) r.fail("p=" + std::to_string(p));
    }
    {
      Recorder r(rep, "each non-crossing alpha has exactly one Delta1 partner", p);
      for (const auto& a : noncrossing) {
        const int rr = p + 1 - a.distinct();
        std::vector<CanonicalSequence> found;
        for_each_canonical(p, rr, [&](const CanonicalSequence& i) {
          if (is_delta1(i, a)) found.push_back(i);
        });
        const auto partner = delta1_partner(a);
        const bool ok = found.size() == 1 && partner && found.front() == *partner;
        r.expect(ok, "alpha=" + a.to_string() + " found=" + std::to_string(found.size()) +
                         (partner ? " constructed=" + partner->to_string() : ""));
      }
    }
    {
      Recorder r(rep, "crossing alpha has no Delta1 graph", p);
      for (const auto& a : crossing) {
        bool any = false;
        for_each_canonical(p, p + 1 - a.distinct(), [&](const CanonicalSequence& i) {
          if (is_delta1(i, a)) any = true;
        });
        r.expect(!any && !delta1_partner(a), "alpha=" + a.to_string());
      }
    }
    {
      Recorder r(rep, "non-crossing alpha gives only paired or single graphs", p);
      for (const auto& a : noncrossing) {
        for (const auto& i : all) {
          r.expect(classify(WalkGraph(i, a)) != GraphClass::Other,
                   "alpha=" + a.to_string() + " i=" + i.to_string());
        }
      }
    }
    {
      Recorder r(rep, "paired partners with r values number S(p+1-s,r)", p);
      Recorder img(rep, "partition images of the Delta1 partner are exactly the paired set", p);
      for (const auto& a : noncrossing) {
        std::vector<std::set<CanonicalSequence>> paired(static_cast<std::size_t>(p) + 1);
        for (const auto& i : all) {
          if (classify(WalkGraph(i, a)) == GraphClass::Paired) {
            paired[static_cast<std::size_t>(i.distinct())].insert(i);
          }
        }
        for (int rr = 1; rr <= p; ++rr) {
          const BigCount f = stirling2(p + 1 - a.distinct(), rr);
          const auto& brute = paired[static_cast<std::size_t>(rr)];
          r.expect(BigCount(brute.size()) == f,
                   "alpha=" + a.to_string() + " r=" + std::to_string(rr) +
                       " enumerated=" + std::to_string(brute.size()) + " formula=" + str(f));
          const auto images = paired_partners(a, rr);
          const std::set<CanonicalSequence> image_set(images.begin(), images.end());
          img.expect(image_set == brute && image_set.size() == images.size(),
                     "alpha=" + a.to_string() + " r=" + std::to_string(rr));
        }
      }
    }
  }
}

void suite_stirling(VerifyReport& rep, int p_max) {
  for (int n = 0; n <= p_max; ++n) {
    Recorder r(rep, "recurrence equals explicit sum; row sums to Bell(n)", n);
    BigCount row = 0;
    for (int k = 0; k <= n; ++k) {
      const BigCount a = stirling2(n, k);
      const BigCount b = stirling2_explicit(n, k);
      row += a;
      r.expect(a == b, "S(" + std::to_string(n) + "," + std::to_string(k) + ") recurrence=" +
                           str(a) + " explicit=" + str(b));
    }
    r.expect(row == bell(n), "Bell(" + std::to_string(n) + ")");
  }
  for (int n = 0; n <= p_max; ++n) {
    Recorder r(rep, "x^n equals sum_r S(n,r) x(x-1)...(x-r+1)", n);
    for (int x = 0; x <= p_max; ++x) {
      BigCount sum = 0;
      for (int k = 0; k <= n; ++k) sum += stirling2(n, k) * falling_factorial(x, k);
      r.expect(sum == ipow(x, n), "n=" + std::to_string(n) + " x=" + std::to_string(x));
    }
  }
  for (int p = 1; p <= p_max; ++p) {
    Recorder r(rep, "sum_r n(n-1)...(n-r+1) S(p+1-s,r) = n^(p+1-s)", p);
    for (int s = 1; s <= p; ++s) {
      for (int n = 1; n <= p_max; ++n) {
        BigCount sum = 0;
        for (int rr = 1; rr <= p + 1 - s; ++rr) {
          sum += falling_factorial(n, rr) * stirling2(p + 1 - s, rr);
        }
        r.expect(sum == ipow(n, p + 1 - s),
                 "s=" + std::to_string(s) + " n=" + std::to_string(n));
      }
    }
  }
}

void suite_moments(VerifyReport& rep, int p_max) {
  const double grid[] = {0.1, 0.5, 1.0, 2.0};
  const TauModel one = TauModel::constant(1.0);
  for (int p = 1; p <= p_max; ++p) {
    {
      Recorder r(rep, "limiting moment with tau = 1 equals the MP moment exactly", p);
      for (double c : grid) {
        const double lim = limiting_moment(p, c, one);
        const double mp = mp_moment(p, c);
        r.expect(lim == mp, "c=" + std::to_string(c) + " limiting=" + std::to_string(lim) +
                                " mp=" + std::to_string(mp));
      }
    }
    {
      Recorder r(rep, "moments at c = 1 are Catalan numbers", p);
      const double v = mp_moment(p, 1.0);
      r.expect(v == to_double(catalan(p)), "moment=" + std::to_string(v));
    }
    if (p <= 6) {
      Recorder r(rep, "quadrature moments of the MP density match within 1e-6", p);
      for (double c : grid) {
        const double q = mp_quadrature_moment(p, c);
        const double mp = mp_moment(p, c);
        r.expect(std::abs(q - mp) <= 1e-6, "c=" + std::to_string(c) + " quadrature=" +
                                               std::to_string(q) + " mp=" + std::to_string(mp));
      }
    }
  }
}

}  // namespace

bool VerifyReport::pass() const {
  return std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.pass; });
}

nlohmann::ordered_json VerifyReport::to_json() const {
  nlohmann::ordered_json out;
  out["suite"] = suite;
  out["p_max"] = p_max;
  out["pass"] = pass();
  auto& arr = out["claims"] = nlohmann::ordered_json::array();
  for (const auto& c : claims) {
    nlohmann::ordered_json j;
    j["claim"] = c.claim;
    j["p"] = c.p;
    j["status"] = c.pass ? "pass" : "fail";
    j["checked"] = c.checked;
    if (!c.detail.empty()) j["counts"] = c.detail;
    j["counterexample"] = c.counterexample ? nlohmann::ordered_json(*c.counterexample) : nullptr;
    arr.push_back(std::move(j));
  }
  return out;
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"sequences", "graphs", "stirling", "moments"};
  return names;
}

int verify_cap(const std::string& suite) {
  if (suite == "sequences") return kDefaultLengthCap;
  if (suite == "graphs") return 8;
  if (suite == "stirling") return 40;
  if (suite == "moments") return kDefaultLengthCap;
  throw UsageError("unknown verification suite '" + suite + "'");
}

VerifyReport run_verify(const std::string& suite, int p_max) {
  const int cap = verify_cap(suite);
  if (p_max < 1 || p_max > cap) {
    throw UsageError("p_max for suite '" + suite + "' must be in [1, " + std::to_string(cap) +
                     "], got " + std::to_string(p_max));
  }
  VerifyReport rep;
  rep.suite = suite;
  rep.p_max = p_max;
  if (suite == "sequences") suite_sequences(rep, p_max);
  if (suite == "graphs") suite_graphs(rep, p_max);
  if (suite == "stirling") suite_stirling(rep, p_max);
  if (suite == "moments") suite_moments(rep, p_max);
  return rep;
}

}  // namespace tensorlsd
