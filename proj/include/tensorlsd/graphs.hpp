#pragma once

// Walk graphs g(i, alpha): for positions u = 1..p a down edge alpha_u -> i_u
// and an up edge i_u -> alpha_{u+1}, with alpha_{p+1} = alpha_1. Alpha
// vertices and i vertices are disjoint (the graph is bipartite), so an edge
// is identified by the pair (alpha value, i value) plus its direction.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tensorlsd/sequences.hpp"

namespace tensorlsd {

enum class GraphClass { Paired, Single, Other };

std::string to_string(GraphClass cls);

struct EdgeMultiplicity {
  int alpha_vertex = 0;  // 1-based alpha value
  int i_vertex = 0;      // 1-based i value
  int down = 0;          // copies of alpha -> i
  int up = 0;            // copies of i -> alpha
};

class WalkGraph {
 public:
  // Throws UsageError on length mismatch.
  WalkGraph(CanonicalSequence i_seq, CanonicalSequence alpha);

  const CanonicalSequence& alpha() const { return alpha_; }
  const CanonicalSequence& i_seq() const { return i_seq_; }
  int length() const { return alpha_.length(); }

  int down(int a, int v) const { return down_[index(a, v)]; }
  int up(int a, int v) const { return up_[index(a, v)]; }

  // Vertex pairs carrying at least one edge, ordered by (a, v).
  std::vector<EdgeMultiplicity> edges() const;

  // Connectivity of the undirected, orientation-free multigraph.
  bool connected() const;

 private:
  std::size_t index(int a, int v) const {
    return static_cast<std::size_t>(a - 1) * static_cast<std::size_t>(i_seq_.distinct()) +
           static_cast<std::size_t>(v - 1);
  }

  CanonicalSequence i_seq_;
  CanonicalSequence alpha_;
  std::vector<int> down_;
  std::vector<int> up_;
};

inline WalkGraph build_graph(const CanonicalSequence& i_seq, const CanonicalSequence& alpha) {
  return WalkGraph(i_seq, alpha);
}

// Paired: up and down counts agree on every vertex pair. Single: some pair
// differs by exactly one (this wins even if another pair differs by more).
// Other: everything else.
GraphClass classify(const WalkGraph& g);

// Every down edge coincides with exactly one up edge and gluing those pairs
// gives a tree on r + s = p + 1 vertices.
bool is_delta1(const WalkGraph& g);
bool is_delta1(const CanonicalSequence& i_seq, const CanonicalSequence& alpha);

// The unique canonical i of length p with p + 1 - s distinct values making
// g(i, alpha) a Delta_1 graph, built recursively (split at the next copy of
// alpha_1, else drop or split off the excursion at alpha_2). Empty when alpha
// is crossing.
std::optional<CanonicalSequence> delta1_partner(const CanonicalSequence& alpha);

// All canonical r-sequences i with g(i, alpha) paired, produced as images of
// the Delta_1 partner under the set partitions of [p + 1 - s] with r blocks.
// Ordered by partition (lexicographic on block labels). Throws UsageError if
// alpha is crossing or r is outside [1, p].
std::vector<CanonicalSequence> paired_partners(const CanonicalSequence& alpha, int r);

enum class EdgeDirection { Down, Up };

// Two coincident same-direction edges at positions j1 < j2 (1-based) with no
// opposite-direction copy of the same vertex pair walked in between.
struct ConsecutivePair {
  EdgeDirection direction = EdgeDirection::Down;
  int first = 0;
  int second = 0;
  int distance() const { return second - first; }
};

// The consecutive pair of smallest distance; ties go to the smaller first
// position, then down edges before up edges. Empty when none exists.
std::optional<ConsecutivePair> count_consecutive_violations(const WalkGraph& g);

// One JSON object per line: alpha, i, class, and the edge multiset as
// [alpha_vertex, i_vertex, down, up] quadruples.
std::string dump_record(const WalkGraph& g);
void dump_records(std::ostream& out, const std::vector<WalkGraph>& graphs);

}  // namespace tensorlsd
