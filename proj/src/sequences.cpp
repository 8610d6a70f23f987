#include "tensorlsd/sequences.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "tensorlsd/error.hpp"

namespace tensorlsd {

namespace {

void check_length(int p, int cap) {
  if (p < 1) {
    throw UsageError("sequence length must be at least 1, got " + std::to_string(p));
  }
  if (p > cap) {
    throw UsageError("sequence length " + std::to_string(p) + " exceeds enumeration cap " +
                     std::to_string(cap));
  }
}

}  // namespace

bool is_canonical(std::span<const int> seq) {
  int running_max = 0;
  for (int v : seq) {
    if (v < 1 || v > running_max + 1) return false;
    running_max = std::max(running_max, v);
  }
  return !seq.empty();
}

CanonicalSequence::CanonicalSequence(std::vector<int> values) : values_(std::move(values)) {
  if (!is_canonical(values_)) {
    std::ostringstream msg;
    msg << "not a canonical sequence: (";
    for (std::size_t u = 0; u < values_.size(); ++u) msg << (u ? "," : "") << values_[u];
    msg << ")";
    throw UsageError(msg.str());
  }
  distinct_ = *std::max_element(values_.begin(), values_.end());
}

std::string CanonicalSequence::to_string() const {
  std::string out = "(";
  for (std::size_t u = 0; u < values_.size(); ++u) {
    if (u) out += ',';
    out += std::to_string(values_[u]);
  }
  out += ')';
  return out;
}

CanonicalSequence canonicalize(std::span<const int> seq) {
  if (seq.empty()) throw UsageError("canonicalize: empty sequence");
  std::unordered_map<int, int> relabel;
  std::vector<int> out;
  out.reserve(seq.size());
  for (int v : seq) {
    auto [it, inserted] = relabel.try_emplace(v, static_cast<int>(relabel.size()) + 1);
    out.push_back(it->second);
  }
  const int distinct = static_cast<int>(relabel.size());
  return CanonicalSequence(CanonicalSequence::Trusted{}, std::move(out), distinct);
}

void for_each_canonical(int p, std::optional<int> s,
                        const std::function<void(const CanonicalSequence&)>& visit, int cap) {
  check_length(p, cap);
  if (s && (*s < 1 || *s > p)) return;

  std::vector<int> buf(static_cast<std::size_t>(p), 1);
  // Restricted growth strings in lexicographic order: position u may take any
  // value in [1, running_max + 1]. With an s filter, prune prefixes that can
  // no longer reach (or already exceed) s distinct values.
  std::function<void(int, int)> rec = [&](int u, int running_max) {
    if (u == p) {
      if (!s || running_max == *s) {
        visit(CanonicalSequence(CanonicalSequence::Trusted{}, buf, running_max));
      }
      return;
    }
    const int top = s ? std::min(running_max + 1, *s) : running_max + 1;
    for (int v = 1; v <= top; ++v) {
      const int next_max = std::max(running_max, v);
      if (s && (*s - next_max) > (p - u - 1)) continue;
      buf[static_cast<std::size_t>(u)] = v;
      rec(u + 1, next_max);
    }
  };
  buf[0] = 1;
  rec(1, 1);
}

std::vector<CanonicalSequence> enumerate_canonical(int p, std::optional<int> s, int cap) {
  std::vector<CanonicalSequence> out;
  for_each_canonical(p, s, [&](const CanonicalSequence& a) { out.push_back(a); }, cap);
  return out;
}

std::vector<CanonicalSequence> enumerate_partitions(int n, std::optional<int> q, int cap) {
  // A partition of [n] with blocks ordered by least element is the same
  // object as a canonical label sequence of length n.
  return enumerate_canonical(n, q, cap);
}

bool is_crossing(std::span<const int> seq) {
  const int p = static_cast<int>(seq.size());
  if (p < 4) return false;
  // last[v]: last position of value v. next_same[j]: next position after j
  // holding seq[j], or p if none.
  std::unordered_map<int, int> last;
  std::vector<int> next_same(static_cast<std::size_t>(p), p);
  for (int j = 0; j < p; ++j) last[seq[j]] = j;
  std::unordered_map<int, int> following;
  for (int j = p - 1; j >= 0; --j) {
    auto it = following.find(seq[j]);
    next_same[j] = (it == following.end()) ? p : it->second;
    following[seq[j]] = j;
  }
  for (int j1 = 0; j1 < p; ++j1) {
    for (int j2 = j1 + 1; j2 < p; ++j2) {
      if (seq[j2] == seq[j1]) continue;
      // earliest j3 > j2 with seq[j3] == seq[j1]
      int j3 = next_same[j1];
      while (j3 < p && j3 <= j2) j3 = next_same[j3];
      if (j3 >= p) continue;
      if (last.at(seq[j2]) > j3) return true;
    }
  }
  return false;
}

int degree(const CanonicalSequence& a, int t) {
  if (t < 1 || t > a.distinct()) return 0;
  return static_cast<int>(std::count(a.values().begin(), a.values().end(), t));
}

std::vector<int> degree_profile(const CanonicalSequence& a) {
  std::vector<int> deg(static_cast<std::size_t>(a.distinct()), 0);
  for (int v : a.values()) ++deg[static_cast<std::size_t>(v - 1)];
  return deg;
}

}  // namespace tensorlsd
