#include "teleclone/measures.hpp"
#include "teleclone/protocols.hpp"
#include "teleclone/states.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace teleclone;

namespace {
double irreversible_tmsv(double r) {
  return 4.0 / (5.0 + 3.0 * std::cosh(2 * r) - 2.0 * std::numbers::sqrt2 * std::sinh(2 * r));
}
}  // namespace

TEST(Protocols, IrreversibleTmsvMatchesClosedForm) {
  for (double r : {0.0, 0.25, 0.8814, 1.0}) {
    const CloneReport rep = fidelity_gaussian(tmsv(r), InputSpec::coherent_state({0.3, 0.9}),
                                              ProtocolSpec::irreversible());
    ASSERT_EQ(rep.clones.size(), 2u);
    EXPECT_NEAR(rep.clones[0].fidelity, irreversible_tmsv(r), 1e-12);
    EXPECT_NEAR(rep.clones[1].fidelity, rep.clones[0].fidelity, 1e-14);
    EXPECT_FALSE(rep.anticlone.has_value());
  }
}

TEST(Protocols, ReversibleTmsvMatchesClosedForm) {
  for (double r : {0.0, 0.4, 1.0}) {
    const CloneReport rep = fidelity_gaussian(tmsv(r), InputSpec::coherent_state(), ProtocolSpec::reversible());
    EXPECT_NEAR(rep.clones[0].fidelity, 2.0 / (3.0 + std::exp(-2 * r)), 1e-12);
    ASSERT_TRUE(rep.anticlone.has_value());
    EXPECT_NEAR(rep.anticlone->fidelity, 0.5, 1e-12);
  }
}

TEST(Protocols, UnsqueezedResourceGivesClassicalThreshold) {
  const CloneReport rep = fidelity_gaussian(tmsv(0.0), InputSpec::coherent_state(), ProtocolSpec::irreversible());
  EXPECT_NEAR(rep.clones[0].fidelity, 0.5, 1e-15);
  EXPECT_NEAR(rep.clones[0].q, 0.0, 1e-15);
}

TEST(Protocols, FidelityIndependentOfCoherentAmplitude) {
  const auto p = ProtocolSpec::reversible(0.2);
  const double f0 = fidelity_gaussian(tmsv(0.5), InputSpec::coherent_state(), p).clones[0].fidelity;
  const double f1 = fidelity_gaussian(tmsv(0.5), InputSpec::coherent_state({2.0, -3.0}), p).clones[0].fidelity;
  EXPECT_NEAR(f0, f1, 1e-13);
}

TEST(Protocols, WignerPathAgreesWithCovariancePath) {
  for (Scheme scheme : {Scheme::irreversible, Scheme::reversible}) {
    ProtocolSpec p = scheme == Scheme::irreversible ? ProtocolSpec::irreversible(0.3) : ProtocolSpec::reversible(0.3);
    const InputSpec in = InputSpec::squeezed(0.5, {0.2, 0.1});
    const CloneReport g = fidelity_gaussian(tmsv(0.6), in, p);
    const CloneReport w = teleclone_wigner(lift_gaussian(tmsv(0.6)), in, p);
    EXPECT_NEAR(g.clones[0].fidelity, w.clones[0].fidelity, 1e-12);
    EXPECT_NEAR(g.clones[0].q, w.clones[0].q, 1e-12);
  }
}

TEST(Protocols, ThreeCloneNetworkIsSymmetric) {
  ProtocolSpec p = ProtocolSpec::irreversible();
  p.num_clones = 3;
  const CloneReport rep = fidelity_gaussian(tmsv(0.7), InputSpec::coherent_state(), p);
  ASSERT_EQ(rep.clones.size(), 3u);
  EXPECT_NEAR(rep.clones[0].fidelity, rep.clones[1].fidelity, 1e-12);
  EXPECT_NEAR(rep.clones[0].fidelity, rep.clones[2].fidelity, 1e-12);
  // Each clone receives a third of R, so it is noisier than in the two-clone network.
  const double two = fidelity_gaussian(tmsv(0.7), InputSpec::coherent_state(), ProtocolSpec::irreversible())
                         .clones[0].fidelity;
  EXPECT_LT(rep.clones[0].fidelity, two);
}

TEST(Protocols, NonGaussianReversibleAnticloneStaysAtOneHalf) {
  const auto ps = degaussify(ResourceSpec::ps(1, 1), 0.5).state;
  const CloneReport rep = teleclone_wigner(ps, InputSpec::coherent_state({0.4, 0.4}), ProtocolSpec::reversible());
  ASSERT_TRUE(rep.anticlone.has_value());
  EXPECT_NEAR(rep.anticlone->fidelity, 0.5, 1e-10);
}

TEST(Protocols, PhotonSubtractionImprovesLowSqueezingFidelity) {
  const InputSpec in = InputSpec::coherent_state();
  const auto p = ProtocolSpec::irreversible();
  const double ps = teleclone_wigner(degaussify(ResourceSpec::ps(1, 1), 0.3).state, in, p).clones[0].fidelity;
  const double t = fidelity_gaussian(tmsv(0.3), in, p).clones[0].fidelity;
  EXPECT_GT(ps, t);
}

TEST(Protocols, AsymmetricClosedFormMatchesSimulation) {
  const std::vector<double> taus{0.5, 0.05, 0.125, 0.1};
  for (double r : {0.0, 0.3, 1.2})
    for (std::size_t m = 1; m <= taus.size(); ++m) {
      const auto a = asymmetric_clone_moments_closed(r, taus, m);
      const auto b = asymmetric_clone_moments_sim(r, taus, m);
      EXPECT_NEAR(a.x_mm, b.x_mm, 1e-12);
      EXPECT_NEAR(a.x_sm, b.x_sm, 1e-12);
      EXPECT_NEAR(a.p_ss, b.p_ss, 1e-12);
      EXPECT_NEAR(a.p_sm, b.p_sm, 1e-12);
      for (Scheme s : {Scheme::irreversible, Scheme::reversible})
        EXPECT_NEAR(asymmetric_fidelity_closed(r, taus, s, m).fidelity, asymmetric_fidelity(r, taus, s, m).fidelity,
                    1e-12);
    }
}

TEST(Protocols, PublishedChainFormulaDiffersForOddClones) {
  const std::vector<double> taus{0.5, 0.05, 0.125, 0.1};
  const auto pub = asymmetric_clone_moments_closed(0.5, taus, 3, ClosedForm::published);
  const auto sim = asymmetric_clone_moments_sim(0.5, taus, 3);
  EXPECT_GT(std::abs(pub.x_mm - sim.x_mm), 1e-3);
}

TEST(Protocols, SingleSplitterChainIsPlainTeleportation) {
  const std::vector<double> taus{0.5};
  for (double r : {0.0, 0.5, 1.2}) {
    const double f = asymmetric_fidelity(r, taus, Scheme::irreversible, 1).fidelity;
    EXPECT_NEAR(f, 1.0 / (1.0 + std::exp(-2.0 * r)), 1e-12);
  }
}

TEST(Protocols, RejectsInvalidConfigurations) {
  ProtocolSpec p = ProtocolSpec::irreversible();
  p.num_clones = 1;
  EXPECT_THROW(fidelity_gaussian(tmsv(0.3), InputSpec::coherent_state(), p), Error);
  EXPECT_THROW(anticlone_fidelity(InputSpec::coherent_state(), ProtocolSpec::irreversible()), Error);
  const std::vector<double> bad{0.5, 1.5};
  EXPECT_THROW(asymmetric_clone_moments_sim(0.3, bad, 1), Error);
  const std::vector<double> taus{0.5, 0.5};
  EXPECT_THROW(asymmetric_clone_moments_closed(0.3, taus, 3), Error);
}
