#include "tensorlsd/graphs.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "tensorlsd/error.hpp"

namespace tensorlsd {

std::string to_string(GraphClass cls) {
  switch (cls) {
    case GraphClass::Paired: return "Paired";
    case GraphClass::Single: return "Single";
    case GraphClass::Other: return "Other";
  }
  return "?";
}

WalkGraph::WalkGraph(CanonicalSequence i_seq, CanonicalSequence alpha)
    : i_seq_(std::move(i_seq)), alpha_(std::move(alpha)) {
  if (i_seq_.length() != alpha_.length()) {
    throw UsageError("build_graph: i has length " + std::to_string(i_seq_.length()) +
                     " but alpha has length " + std::to_string(alpha_.length()));
  }
  const std::size_t cells =
      static_cast<std::size_t>(alpha_.distinct()) * static_cast<std::size_t>(i_seq_.distinct());
  down_.assign(cells, 0);
  up_.assign(cells, 0);
  const int p = alpha_.length();
  for (int u = 0; u < p; ++u) {
    const int v = i_seq_[u];
    ++down_[index(alpha_[u], v)];
    ++up_[index(alpha_[(u + 1) % p], v)];
  }
}

std::vector<EdgeMultiplicity> WalkGraph::edges() const {
  std::vector<EdgeMultiplicity> out;
  for (int a = 1; a <= alpha_.distinct(); ++a) {
    for (int v = 1; v <= i_seq_.distinct(); ++v) {
      const std::size_t idx = index(a, v);
      if (down_[idx] + up_[idx] > 0) out.push_back({a, v, down_[idx], up_[idx]});
    }
  }
  return out;
}

bool WalkGraph::connected() const {
  const int s = alpha_.distinct();
  const int r = i_seq_.distinct();
  // Vertices 0..s-1 are alpha values, s..s+r-1 are i values.
  std::vector<int> parent(static_cast<std::size_t>(s + r));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = s + r;
  for (int a = 1; a <= s; ++a) {
    for (int v = 1; v <= r; ++v) {
      const std::size_t idx = index(a, v);
      if (down_[idx] + up_[idx] == 0) continue;
      const int x = find(a - 1);
      const int y = find(s + v - 1);
      if (x != y) {
        parent[x] = y;
        --components;
      }
    }
  }
  return components == 1;
}

GraphClass classify(const WalkGraph& g) {
  bool all_equal = true;
  bool has_unit_gap = false;
  for (const auto& e : g.edges()) {
    const int gap = std::abs(e.up - e.down);
    if (gap != 0) all_equal = false;
    if (gap == 1) has_unit_gap = true;
  }
  if (all_equal) return GraphClass::Paired;
  if (has_unit_gap) return GraphClass::Single;
  return GraphClass::Other;
}

bool is_delta1(const WalkGraph& g) {
  const int p = g.length();
  if (g.alpha().distinct() + g.i_seq().distinct() != p + 1) return false;
  for (const auto& e : g.edges()) {
    if (e.up != 1 || e.down != 1) return false;
  }
  // p distinct glued edges on p + 1 vertices: a tree iff connected.
  return g.connected();
}

bool is_delta1(const CanonicalSequence& i_seq, const CanonicalSequence& alpha) {
  return is_delta1(WalkGraph(i_seq, alpha));
}

namespace {

std::vector<int> relabel_to_canonical(std::span<const int> seq) {
  const CanonicalSequence c = canonicalize(seq);
  return {c.values().begin(), c.values().end()};
}

int max_value(const std::vector<int>& v) { return *std::max_element(v.begin(), v.end()); }

// `a` is canonical and non-crossing.
std::vector<int> partner_rec(std::span<const int> a) {
  const std::size_t p = a.size();
  if (p == 1) return {1};

  // Split at the next return to alpha_1: both halves hang off alpha_1 and
  // share no other vertex, so their i-vertices are made disjoint.
  const auto repeat = std::find(a.begin() + 1, a.end(), a[0]);
  if (repeat != a.end()) {
    const auto j = static_cast<std::size_t>(repeat - a.begin());
    std::vector<int> head = partner_rec(a.subspan(0, j));
    const std::vector<int> tail = partner_rec(relabel_to_canonical(a.subspan(j)));
    const int offset = max_value(head);
    for (int v : tail) head.push_back(v + offset);
    return relabel_to_canonical(head);
  }

  // alpha_1 occurs once, so alpha_2 = 2. Find the last return to alpha_2.
  std::size_t last = 0;
  for (std::size_t k = 2; k < p; ++k) {
    if (a[k] == a[1]) last = k;
  }

  std::vector<int> out{1};
  if (last == 0) {
    // alpha_2 is a leaf: remove it, solve the shorter walk and reinsert the
    // glued edge pair i_1 = i_2 <-> alpha_2.
    std::vector<int> beta{a[0]};
    beta.insert(beta.end(), a.begin() + 2, a.end());
    const std::vector<int> sub = partner_rec(relabel_to_canonical(beta));
    out.insert(out.end(), sub.begin(), sub.end());
    return relabel_to_canonical(out);
  }

  // Excursion alpha_2 .. alpha_{last-1} returns to alpha_2 at position last;
  // the outer walk alpha_1, alpha_{last+1}, ..., alpha_p shares only the i
  // vertex 1 with it (through the glued edge 1 <-> alpha_2).
  const std::vector<int> inner = partner_rec(relabel_to_canonical(a.subspan(1, last - 1)));
  std::vector<int> outer_alpha{a[0]};
  outer_alpha.insert(outer_alpha.end(), a.begin() + static_cast<std::ptrdiff_t>(last) + 1, a.end());
  const std::vector<int> outer = partner_rec(relabel_to_canonical(outer_alpha));
  const int inner_max = max_value(inner);
  for (int v : inner) out.push_back(v + 1);
  for (int v : outer) out.push_back(v == 1 ? 1 : v + inner_max);
  return relabel_to_canonical(out);
}

}  // namespace

std::optional<CanonicalSequence> delta1_partner(const CanonicalSequence& alpha) {
  if (is_crossing(alpha)) return std::nullopt;
  CanonicalSequence partner(partner_rec(alpha.values()));
  if (!is_delta1(partner, alpha)) {
    throw std::logic_error("delta1_partner: construction failed for " + alpha.to_string());
  }
  return partner;
}

std::vector<CanonicalSequence> paired_partners(const CanonicalSequence& alpha, int r) {
  const int p = alpha.length();
  if (r < 1 || r > p) {
    throw UsageError("paired_partners: r must lie in [1, " + std::to_string(p) + "], got " +
                     std::to_string(r));
  }
  const auto partner = delta1_partner(alpha);
  if (!partner) {
    throw UsageError("paired_partners: alpha " + alpha.to_string() + " is crossing");
  }
  const int free_vertices = p + 1 - alpha.distinct();
  std::vector<CanonicalSequence> out;
  if (r > free_vertices) return out;
  std::vector<int> image(static_cast<std::size_t>(p));
  for (const auto& block : enumerate_partitions(free_vertices, r, kDefaultLengthCap + 1)) {
    for (int u = 0; u < p; ++u) image[u] = block[(*partner)[u] - 1];
    out.push_back(canonicalize(image));
  }
  return out;
}

std::optional<ConsecutivePair> count_consecutive_violations(const WalkGraph& g) {
  const auto& a = g.alpha();
  const auto& i = g.i_seq();
  const int p = g.length();
  using Pair = std::pair<int, int>;
  auto down_pair = [&](int u) { return Pair{a[u], i[u]}; };
  auto up_pair = [&](int u) { return Pair{a[(u + 1) % p], i[u]}; };

  std::optional<ConsecutivePair> best;
  auto offer = [&](ConsecutivePair c) {
    if (!best || c.distance() < best->distance() ||
        (c.distance() == best->distance() &&
         (c.first < best->first ||
          (c.first == best->first && c.direction == EdgeDirection::Down &&
           best->direction == EdgeDirection::Up)))) {
      best = c;
    }
  };

  for (int j1 = 0; j1 < p; ++j1) {
    for (int j2 = j1 + 1; j2 < p; ++j2) {
      if (down_pair(j1) == down_pair(j2)) {
        bool separated = false;
        for (int j = j1; j < j2 && !separated; ++j) separated = up_pair(j) == down_pair(j1);
        if (!separated) offer({EdgeDirection::Down, j1 + 1, j2 + 1});
      }
      if (up_pair(j1) == up_pair(j2)) {
        bool separated = false;
        for (int j = j1 + 1; j <= j2 && !separated; ++j) separated = down_pair(j) == up_pair(j1);
        if (!separated) offer({EdgeDirection::Up, j1 + 1, j2 + 1});
      }
    }
  }
  return best;
}

std::string dump_record(const WalkGraph& g) {
  nlohmann::json rec;
  rec["alpha"] = std::vector<int>(g.alpha().values().begin(), g.alpha().values().end());
  rec["i"] = std::vector<int>(g.i_seq().values().begin(), g.i_seq().values().end());
  rec["class"] = to_string(classify(g));
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back({e.alpha_vertex, e.i_vertex, e.down, e.up});
  rec["edges"] = std::move(edges);
  return rec.dump();
}

void dump_records(std::ostream& out, const std::vector<WalkGraph>& graphs) {
  for (const auto& g : graphs) out << dump_record(g) << '\n';
}

}  // namespace tensorlsd
