#include "teleclone/states.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace teleclone;

TEST(States, ParsesResourceSpecs) {
  EXPECT_EQ(parse_resource("tmsv").family, ResourceSpec::Family::tmsv);
  const ResourceSpec ps = parse_resource("ps:1,2");
  EXPECT_EQ(ps.family, ResourceSpec::Family::ps);
  EXPECT_EQ(ps.n1, 1);
  EXPECT_EQ(ps.n2, 2);
  EXPECT_EQ(parse_resource("pa:1,0").label(), "pa:1,0");
  const ResourceSpec asym = parse_resource("asym:0.5,0.05,0.125,0.1");
  ASSERT_EQ(asym.taus.size(), 4u);
  EXPECT_DOUBLE_EQ(asym.taus[2], 0.125);
  EXPECT_EQ(asym.label(), "asym:0.5,0.05,0.125,0.1");
}

TEST(States, RejectsBadResourceSpecs) {
  for (const char* bad : {"", "ps", "ps:1", "ps:1.5,0", "ps:0,0", "pa:-1,1", "asym:", "asym:1.2", "gkp:1,1"})
    EXPECT_THROW(parse_resource(bad), Error) << bad;
}

TEST(States, ParsesInputSpecs) {
  const InputSpec c = parse_input("coherent:0.5,-1");
  EXPECT_EQ(c.kind, InputSpec::Kind::coherent);
  EXPECT_DOUBLE_EQ(c.alpha.imag(), -1.0);
  const InputSpec s = parse_input("squeezed:0.5");
  EXPECT_EQ(s.kind, InputSpec::Kind::squeezed);
  EXPECT_DOUBLE_EQ(s.s, 0.5);
  EXPECT_EQ(s.axis, SqueezeAxis::x);
  EXPECT_EQ(parse_input("squeezed:0.5,1,2,p").axis, SqueezeAxis::p);
  for (const char* bad : {"thermal:1", "coherent:1", "squeezed:-0.1", "squeezed:0.1,2", "coherent:a,b"})
    EXPECT_THROW(parse_input(bad), Error) << bad;
}

TEST(States, CoherentStateMeanUsesUnitVacuumConvention) {
  const GaussianState c = coherent({0.5, -0.25});
  EXPECT_DOUBLE_EQ(c.mean()(0), 1.0);
  EXPECT_DOUBLE_EQ(c.mean()(1), -0.5);
}

TEST(States, SqueezedInputIsXSqueezedByDefault) {
  const GaussianState s = squeezed_input(0.5, {});
  EXPECT_NEAR(s.cov()(0, 0), std::exp(-1.0), 1e-14);
  EXPECT_NEAR(s.cov()(1, 1), std::exp(1.0), 1e-14);
}

TEST(States, SubtractionOnOneSideEqualsAdditionOnTheOther) {
  const auto a = degaussify(ResourceSpec::ps(1, 0), 0.6).state;
  const auto b = degaussify(ResourceSpec::pa(0, 1), 0.6).state;
  EXPECT_NEAR(overlap(a, b), 1.0, 1e-10);
}

TEST(States, DegaussifiedStatesArePureAndNormalized) {
  for (const auto& spec : {ResourceSpec::ps(1, 1), ResourceSpec::pa(1, 1), ResourceSpec::ps(2, 1)}) {
    const auto res = degaussify(spec, 0.5);
    EXPECT_NEAR(trace(res.state), 1.0, 1e-12);
    EXPECT_NEAR(overlap(res.state, res.state), 1.0, 1e-9);
    EXPECT_GT(res.herald_weight, 0.0);
  }
}

TEST(States, SubtractionFromUnsqueezedResourceIsUndefined) {
  EXPECT_THROW(degaussify(ResourceSpec::ps(1, 1), 0.0), Error);
  EXPECT_NO_THROW(degaussify(ResourceSpec::pa(1, 1), 0.0));
}

TEST(States, SingleSplitterChainIsTmsv) {
  const double taus[] = {0.5};
  const GaussianState chain = asymmetric_resource(0.7, taus);
  EXPECT_NEAR(gaussian_overlap(chain, tmsv(0.7)), 1.0, 1e-12);
}

TEST(States, ChainResourceIsPhysical) {
  const double taus[] = {0.5, 0.05, 0.125, 0.1};
  const GaussianState s = asymmetric_resource(1.3, taus);
  EXPECT_EQ(s.num_modes(), 5u);
  EXPECT_TRUE(is_physical(s));
  EXPECT_NEAR(gaussian_overlap(s, s), 1.0, 1e-10);
}
