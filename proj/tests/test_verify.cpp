#include <gtest/gtest.h>

#include "tensorlsd/error.hpp"
#include "tensorlsd/verify.hpp"

using namespace tensorlsd;

TEST(Verify, AllSuitesPassAtModerateLength) {
  for (const auto& suite : verify_suites()) {
    const auto rep = run_verify(suite, 6);
    EXPECT_TRUE(rep.pass()) << suite;
    EXPECT_FALSE(rep.claims.empty());
    std::uint64_t checked = 0;
    for (const auto& c : rep.claims) checked += c.checked;
    EXPECT_GT(checked, 50u) << suite;
    for (const auto& c : rep.claims) {
      EXPECT_TRUE(c.pass) << suite << ": " << c.claim << " p=" << c.p << " "
                          << c.counterexample.value_or("");
    }
  }
}

TEST(Verify, ReportJsonShape) {
  const auto j = run_verify("graphs", 4).to_json();
  EXPECT_EQ(j["suite"], "graphs");
  EXPECT_EQ(j["pass"], true);
  const auto& first = j["claims"][0];
  EXPECT_EQ(first["claim"], "non-crossing count");
  EXPECT_EQ(first["counts"], "enumerated=1 formula=1");
  EXPECT_TRUE(first["counterexample"].is_null());
}

TEST(Verify, CapsAndUnknownSuites) {
  EXPECT_THROW(run_verify("sequences", 99), UsageError);
  EXPECT_THROW(run_verify("sequences", 0), UsageError);
  EXPECT_THROW(run_verify("graphs", verify_cap("graphs") + 1), UsageError);
  EXPECT_THROW(run_verify("nothing", 3), UsageError);
  EXPECT_EQ(verify_cap("sequences"), 12);
}
