#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "oracles.hpp"
#include "tensorlsd/combinatorics.hpp"
#include "tensorlsd/error.hpp"
#include "tensorlsd/graphs.hpp"

using namespace tensorlsd;

TEST(WalkGraph, EdgeMultiplicities) {
  const WalkGraph g(CanonicalSequence{1, 1}, CanonicalSequence{1, 2});
  // down 1->1, 2->1; up 1->2, 1->1
  EXPECT_EQ(g.down(1, 1), 1);
  EXPECT_EQ(g.up(1, 1), 1);
  EXPECT_EQ(g.down(2, 1), 1);
  EXPECT_EQ(g.up(2, 1), 1);
  EXPECT_EQ(g.edges().size(), 2u);
  EXPECT_THROW(WalkGraph(CanonicalSequence{1}, CanonicalSequence{1, 2}), UsageError);
}

TEST(WalkGraph, MatchesEdgeCountOracle) {
  for (int p = 1; p <= 5; ++p) {
    const auto all = enumerate_canonical(p);
    for (const auto& a : all) {
      for (const auto& i : all) {
        const WalkGraph g(i, a);
        const auto want = oracle::edge_counts(i.values(), a.values());
        const auto edges = g.edges();
        ASSERT_EQ(edges.size(), want.size());
        for (const auto& e : edges) {
          const auto& c = want.at({e.alpha_vertex, e.i_vertex});
          EXPECT_EQ(e.down, c.first);
          EXPECT_EQ(e.up, c.second);
        }
        // A closed walk is connected.
        EXPECT_TRUE(g.connected());
        EXPECT_EQ(classify(g) == GraphClass::Paired ? 0 : classify(g) == GraphClass::Single ? 1 : 2,
                  oracle::brute_class(i.values(), a.values()));
        EXPECT_EQ(is_delta1(g), oracle::brute_delta1(i.values(), a.values()))
            << a.to_string() << " " << i.to_string();
      }
    }
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(WalkGraph({1, 1}, {1, 1})), GraphClass::Paired);
  EXPECT_EQ(classify(WalkGraph({1, 2}, {1, 1})), GraphClass::Paired);
  EXPECT_EQ(classify(WalkGraph({1, 2, 1, 2}, {1, 2, 1, 2})), GraphClass::Other);
  EXPECT_EQ(classify(WalkGraph({1, 2, 3}, {1, 2, 1})), GraphClass::Single);
  EXPECT_EQ(to_string(GraphClass::Single), "Single");
}

TEST(Classify, NonCrossingGivesPairedOrSingle) {
  for (int p = 1; p <= 6; ++p) {
    const auto all = enumerate_canonical(p);
    for (const auto& a : all) {
      if (is_crossing(a)) continue;
      for (const auto& i : all) ASSERT_NE(classify(WalkGraph(i, a)), GraphClass::Other);
    }
  }
}

TEST(Delta1, PartnerExamples) {
  EXPECT_EQ(delta1_partner(CanonicalSequence{1}), CanonicalSequence({1}));
  EXPECT_EQ(delta1_partner(CanonicalSequence{1, 1}), CanonicalSequence({1, 2}));
  EXPECT_EQ(delta1_partner(CanonicalSequence{1, 2}), CanonicalSequence({1, 1}));
  EXPECT_EQ(delta1_partner(CanonicalSequence{1, 1, 1}), CanonicalSequence({1, 2, 3}));
  EXPECT_FALSE(delta1_partner(CanonicalSequence{1, 2, 1, 2}).has_value());
}

TEST(Delta1, UniquePartnerFoundByExhaustiveSearch) {
  for (int p = 1; p <= 7; ++p) {
    for (const auto& a : enumerate_canonical(p)) {
      const int r = p + 1 - a.distinct();
      std::vector<CanonicalSequence> found;
      for (const auto& i : enumerate_canonical(p, r)) {
        if (oracle::brute_delta1(i.values(), a.values())) found.push_back(i);
      }
      const auto partner = delta1_partner(a);
      if (is_crossing(a)) {
        EXPECT_TRUE(found.empty()) << a.to_string();
        EXPECT_FALSE(partner.has_value());
      } else {
        ASSERT_EQ(found.size(), 1u) << a.to_string();
        ASSERT_TRUE(partner.has_value());
        EXPECT_EQ(*partner, found.front()) << a.to_string();
      }
    }
  }
}

TEST(Delta1, CrossingHasNoDelta1AtAnyR) {
  for (int p = 4; p <= 6; ++p) {
    const auto all = enumerate_canonical(p);
    for (const auto& a : all) {
      if (!is_crossing(a)) continue;
      for (const auto& i : all) ASSERT_FALSE(is_delta1(i, a));
    }
  }
}

TEST(Paired, PartnersMatchBruteForceSet) {
  for (int p = 1; p <= 7; ++p) {
    const auto all = enumerate_canonical(p);
    for (const auto& a : all) {
      if (is_crossing(a)) continue;
      for (int r = 1; r <= p; ++r) {
        std::set<CanonicalSequence> brute;
        for (const auto& i : enumerate_canonical(p, r)) {
          if (oracle::brute_class(i.values(), a.values()) == 0) brute.insert(i);
        }
        const auto images = paired_partners(a, r);
        const std::set<CanonicalSequence> got(images.begin(), images.end());
        EXPECT_EQ(got.size(), images.size()) << "duplicate images";
        EXPECT_EQ(got, brute) << a.to_string() << " r=" << r;
        EXPECT_EQ(BigCount(brute.size()), stirling2(p + 1 - a.distinct(), r));
      }
    }
  }
}

TEST(Paired, Errors) {
  EXPECT_THROW(paired_partners(CanonicalSequence{1, 2, 1, 2}, 1), UsageError);
  EXPECT_THROW(paired_partners(CanonicalSequence{1, 1}, 0), UsageError);
  EXPECT_THROW(paired_partners(CanonicalSequence{1, 1}, 3), UsageError);
  EXPECT_TRUE(paired_partners(CanonicalSequence{1, 2, 2}, 3).empty());
}

TEST(Consecutive, Example) {
  const WalkGraph g({1, 2, 1, 2}, {1, 2, 1, 2});
  const auto pair = count_consecutive_violations(g);
  ASSERT_TRUE(pair.has_value());
  EXPECT_EQ(pair->direction, EdgeDirection::Down);
  EXPECT_EQ(pair->first, 1);
  EXPECT_EQ(pair->second, 3);
  EXPECT_EQ(pair->distance(), 2);
}

TEST(Consecutive, NoneInDelta1Graphs) {
  for (int p = 1; p <= 6; ++p) {
    for (const auto& a : enumerate_canonical(p)) {
      if (const auto partner = delta1_partner(a)) {
        EXPECT_FALSE(count_consecutive_violations(WalkGraph(*partner, a)).has_value());
      }
    }
  }
}

TEST(Dump, RecordFormat) {
  const WalkGraph g(CanonicalSequence{1, 1}, CanonicalSequence{1, 2});
  EXPECT_EQ(dump_record(g),
            R"({"alpha":[1,2],"class":"Paired","edges":[[1,1,1,1],[2,1,1,1]],"i":[1,1]})");
  std::ostringstream out;
  dump_records(out, {g, g});
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}
