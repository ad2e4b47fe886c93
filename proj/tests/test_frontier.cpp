#include <gtest/gtest.h>

#include "chanlin/frontier.hpp"
#include "chanlin/generators.hpp"
#include "chanlin/oracle.hpp"
#include "chanlin/wellformed.hpp"
#include "support.hpp"

using namespace chanlin;

namespace {

Instance fig(const std::string& name) { return load_instance(support::instance_path(name)); }

}  // namespace

TEST(frontier, fig2a_consistent_with_valid_witness) {
  Instance inst = fig("fig2a.vchk");
  Verdict v = solve_vch(inst);
  ASSERT_TRUE(v.consistent);
  EXPECT_FALSE(verify_witness(inst, v.witness));
  EXPECT_EQ(v.algorithm, "frontier");
  EXPECT_GT(v.explored, 0u);
}

TEST(frontier, fig4_witness_has_four_events) {
  Instance inst = fig("fig4.vchk");
  Verdict v = solve_vch(inst);
  ASSERT_TRUE(v.consistent);
  EXPECT_EQ(v.witness.size(), 4u);
  EXPECT_FALSE(verify_witness(inst, v.witness));
}

TEST(frontier, fig2b_inconsistent) {
  Instance inst = fig("fig2b.vchk");
  EXPECT_FALSE(solve_vchrf(inst).consistent);
  Verdict s = solve_vchrf_saturated(inst);
  EXPECT_FALSE(s.consistent);
  EXPECT_EQ(s.explored, 0u);
  EXPECT_EQ(s.algorithm, "frontier-rf+saturation");
}

TEST(frontier, value_search_needs_values) {
  EXPECT_THROW(solve_vch(fig("fig2b.vchk")), ValidationError);
}

TEST(frontier, empty_instance_is_consistent) {
  Instance inst = parse_instance_text("vchk v1\n");
  Verdict v = solve_vchrf(inst);
  EXPECT_TRUE(v.consistent);
  EXPECT_TRUE(v.witness.empty());
  EXPECT_EQ(v.explored, 1u);
  EXPECT_TRUE(solve_vch(inst).consistent);
}

TEST(frontier, unmatched_receive_is_inconsistent) {
  Instance inst = parse_instance_text("vchk v1\nchannel c cap 1\nevent 1 t snd c\nevent 2 u rcv c\nevent 3 u rcv c\nrf 1 2\n");
  Verdict v = solve_vchrf(inst);
  EXPECT_FALSE(v.consistent);
  EXPECT_TRUE(validate_rf(inst).has_value());
}

TEST(frontier, node_keys_distinguish_nodes) {
  Instance inst = fig("fig2a.vchk");
  FrontierNode a = source_node(inst);
  FrontierNode b = a;
  EXPECT_EQ(node_key(a), node_key(b));
  b.counts[0] = 1;
  EXPECT_NE(node_key(a), node_key(b));
  FrontierNode c = a;
  c.queues[0].push_back(0);
  EXPECT_NE(node_key(a), node_key(c));
  FrontierNode d = a;
  d.pending = 0;
  EXPECT_NE(node_key(a), node_key(d));
}

TEST(frontier, pipeline_explores_a_chain) {
  Instance inst = sync_pipeline(1000, 3);
  Verdict v = solve_vchrf_saturated(inst);
  ASSERT_TRUE(v.consistent);
  EXPECT_EQ(v.explored, static_cast<std::size_t>(inst.n()) + 1);
  EXPECT_FALSE(verify_witness(inst, v.witness));
}

TEST(frontier, agrees_with_brute_force) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto c = support::suite_case(seed);
    bool truth_v = brute_force(c.values).consistent;
    Verdict vch = solve_vch(c.values);
    ASSERT_EQ(vch.consistent, truth_v) << "seed " << seed;
    if (vch.consistent) ASSERT_FALSE(verify_witness(c.values, vch.witness)) << "seed " << seed;

    bool truth_rf = brute_force(c.rf).consistent;
    for (const Verdict& v : {solve_vchrf(c.rf), solve_vchrf_saturated(c.rf)}) {
      ASSERT_EQ(v.consistent, truth_rf) << "seed " << seed << " " << v.algorithm;
      if (v.consistent) ASSERT_FALSE(verify_witness(c.rf, v.witness)) << "seed " << seed;
    }
  }
}

TEST(frontier, simulated_traces_are_consistent) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    RandomParams p;
    p.events = 30;
    p.threads = 4;
    p.channels = 3;
    p.seed = seed;
    auto pos = random_positive(p);
    EXPECT_TRUE(solve_vchrf_saturated(pos.instance).consistent) << seed;
    EXPECT_TRUE(solve_vch(without_rf(pos.instance)).consistent) << seed;
  }
}
