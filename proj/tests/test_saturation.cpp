#include <gtest/gtest.h>

#include "chanlin/frontier.hpp"
#include "chanlin/generators.hpp"
#include "chanlin/saturation.hpp"
#include "support.hpp"

using namespace chanlin;

namespace {

Instance fig(const std::string& name) { return load_instance(support::instance_path(name)); }

}  // namespace

TEST(saturation, fig2b_is_cyclic) { EXPECT_TRUE(saturate(fig("fig2b.vchk")).cyclic()); }

TEST(saturation, fig5_orders_pairs) {
  Instance inst = fig("fig5.vchk");
  SaturatedOrder o = saturate(inst);
  ASSERT_FALSE(o.cyclic());
  auto idx = [&](std::uint64_t id) { return *inst.index_of(id); };
  EXPECT_TRUE(o.before(idx(1), idx(2)));  // program order
  EXPECT_TRUE(o.before(idx(1), idx(4)));  // send before its receive
  EXPECT_TRUE(o.before(idx(1), idx(5)));  // transitively through thread 2
  EXPECT_FALSE(o.before(idx(2), idx(1)));
}

TEST(saturation, ov_example_derives_alpha_and_channel_order) {
  // A = {01, 10}, B = {01, 11}
  OvInstance ov{2, {{0, 1}, {1, 0}}, {{0, 1}, {1, 1}}};
  Instance inst = from_orthogonal_vectors(ov);
  SaturatedOrder o = saturate(inst);
  ASSERT_FALSE(o.cyclic());
  int ta = 0, tb = 1;
  ASSERT_EQ(inst.threads[ta], "tA");
  // tA opens with snd ch2 (a1), snd alpha (a1); tB's init ends with snd alpha (b1), snd ch2 (b1)
  int a1_ch2 = inst.at(ta, 0), a1_alpha = inst.at(ta, 1);
  int b1_alpha = inst.at(tb, 3), b1_ch2 = inst.at(tb, 4);
  ASSERT_EQ(inst.channels[inst.events[a1_alpha].channel], "alpha");
  ASSERT_EQ(inst.channels[inst.events[b1_alpha].channel], "alpha");
  ASSERT_EQ(inst.channels[inst.events[b1_ch2].channel], "ch2");
  EXPECT_TRUE(o.before(a1_alpha, b1_alpha));
  EXPECT_TRUE(o.before(a1_ch2, b1_ch2));
}

TEST(saturation, clocks_have_sentinels) {
  Instance inst = fig("fig2a.vchk");
  SaturatedOrder o = saturate(inst);
  ASSERT_FALSE(o.cyclic());
  int first = inst.at(0, 0);
  EXPECT_EQ(o.pred_pos(first, 0), -1);
  EXPECT_LE(o.succ_pos(first, 1), inst.thread_size(1));
  EXPECT_GE(o.rounds(), 1u);
}

// Every saturated edge must hold in every concretization, in particular in
// the simulated trace a positive instance came from.
TEST(saturation, sound_on_simulated_traces) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    RandomParams p;
    p.events = 24;
    p.threads = 3;
    p.channels = 2;
    p.seed = seed;
    auto pos = random_positive(p);
    SaturatedOrder o = saturate(pos.instance);
    ASSERT_FALSE(o.cyclic()) << seed;
    std::vector<int> at(pos.instance.n());
    for (std::size_t i = 0; i < pos.witness.size(); ++i) at[pos.witness[i]] = static_cast<int>(i);
    for (int a = 0; a < pos.instance.n(); ++a)
      for (int b = 0; b < pos.instance.n(); ++b)
        if (o.before(a, b)) ASSERT_LT(at[a], at[b]) << "seed " << seed;
  }
}

TEST(saturation, cycle_implies_inconsistent) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Instance inst = support::suite_case(seed).rf;
    if (validate_rf(inst)) continue;
    if (saturate(inst).cyclic()) EXPECT_FALSE(solve_vchrf(inst).consistent) << seed;
  }
}

TEST(saturation, ready_respects_predecessors) {
  Instance inst = fig("fig5.vchk");
  SaturatedOrder o = saturate(inst);
  std::vector<std::uint32_t> counts(inst.t(), 0);
  // thread 2's first event receives from thread 1's first send, which is not yet done
  EXPECT_FALSE(o.ready(*inst.index_of(4), counts));
  EXPECT_TRUE(o.ready(*inst.index_of(1), counts));
  EXPECT_GT(o.added_edges() + 1, 0u);
}
