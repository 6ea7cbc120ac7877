#include "teleclone/oracle/fock.hpp"
#include "teleclone/oracle/monte_carlo.hpp"
#include "teleclone/protocols.hpp"
#include "teleclone/states.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace teleclone;
using namespace teleclone::oracle;

TEST(FockOracle, AddingToVacuumGivesOnePhoton) {
  const auto res = fock_ladder(fock_vacuum(1), 0, Ladder::add);
  EXPECT_NEAR(res.weight, 1.0, 1e-15);
  EXPECT_NEAR(fock_overlap(res.state, fock_number(1)), 1.0, 1e-15);
  EXPECT_NEAR(fock_overlap(fock_number(1), fock_number(0)), 0.0, 1e-15);
}

TEST(FockOracle, SubtractingFromVacuumThrows) {
  EXPECT_THROW(fock_ladder(fock_vacuum(2), 1, Ladder::subtract), Error);
}

TEST(FockOracle, TruncationGuardTrips) {
  EXPECT_THROW(fock_ladder(fock_number(12, 12), 0, Ladder::add), Error);
  EXPECT_THROW(fock_tmsv(2.5, 20), Error);
}

TEST(FockOracle, QuadratureMomentsOfNumberStates) {
  EXPECT_NEAR(fock_moment(fock_number(0), Monomial::from({2, 0})), 1.0, 1e-14);
  EXPECT_NEAR(fock_moment(fock_number(1), Monomial::from({0, 2})), 3.0, 1e-13);
  EXPECT_NEAR(fock_moment(fock_number(2), Monomial::from({4, 0})), 39.0, 1e-11);
  // Symmetrised x p has zero mean in any number state.
  EXPECT_NEAR(fock_moment(fock_number(3), Monomial::from({1, 1})), 0.0, 1e-13);
}

TEST(FockOracle, TmsvPhotonStatistics) {
  const auto s = fock_tmsv(0.5);
  EXPECT_NEAR(fock_mean_photons(s, 0), std::sinh(0.5) * std::sinh(0.5), 1e-12);
  EXPECT_NEAR(fock_parity(s, 1), 1.0 / std::cosh(1.0), 1e-12);
}

TEST(FockOracle, MomentsMatchWignerEngine) {
  for (const auto& [kind, n1, n2] : {std::tuple{Ladder::subtract, 1, 1}, std::tuple{Ladder::add, 1, 1},
                                     std::tuple{Ladder::subtract, 2, 0}}) {
    const ResourceSpec spec = kind == Ladder::subtract ? ResourceSpec::ps(n1, n2) : ResourceSpec::pa(n1, n2);
    const auto w = degaussify(spec, 0.4);
    const auto f = fock_degaussified_tmsv(0.4, kind, n1, n2);
    EXPECT_NEAR(w.herald_weight, f.weight, 1e-10);
    for (const auto& m : {Monomial::from({2, 0, 0, 0}), Monomial::from({0, 0, 0, 2}), Monomial::from({1, 0, 1, 0}),
                          Monomial::from({0, 1, 0, 1}), Monomial::from({2, 0, 2, 0}), Monomial::from({0, 4, 0, 0})})
      EXPECT_NEAR(moment(w.state, m), fock_moment(f.state, m), 1e-6);
  }
}

TEST(FockOracle, CutoffDoublingIsStable) {
  const auto a = fock_degaussified_tmsv(0.8, Ladder::add, 1, 1, 40);
  const auto b = fock_degaussified_tmsv(0.8, Ladder::add, 1, 1, 80);
  const Monomial m = Monomial::from({2, 0, 2, 0});
  const double hi = fock_moment(b.state, m);
  EXPECT_NEAR(fock_moment(a.state, m), hi, 1e-8 * std::max(1.0, std::abs(hi)));
  EXPECT_NEAR(a.weight, b.weight, 1e-8 * b.weight);
}

TEST(MonteCarlo, VacuumOverlapWithinThreeSigma) {
  const PolyGaussian v = lift_gaussian(vacuum_state(1));
  const auto e = mc_overlap(v, v, {100000, 7, 2});
  EXPECT_LT(std::abs(e.estimate - 1.0), 3.0 * e.std_error);
  EXPECT_EQ(e.algorithm, kRngAlgorithm);
}

TEST(MonteCarlo, TraceOfNonGaussianState) {
  const PolyGaussian w = degaussify(ResourceSpec::ps(1, 1), 0.6).state;
  const auto e = mc_integral(w, {200000, 3, 4});
  EXPECT_LT(std::abs(e.estimate - 1.0), 3.0 * e.std_error);
}

TEST(MonteCarlo, CloneFidelityOfPhotonSubtractedResource) {
  const ProtocolSpec p = ProtocolSpec::irreversible();
  const InputSpec in = InputSpec::coherent_state();
  const PolyGaussian res = degaussify(ResourceSpec::ps(1, 1), 0.4137).state;
  const NetworkModes net = network_modes(p);
  const PolyGaussian joint = network_distribution(res, in.state(), p);
  const auto e = mc_output_overlap(joint, clone_output_map(net, net.clones[0]), lift_gaussian(in.state()),
                                   {200000, 11, 4});
  const double exact = teleclone_wigner(res, in, p).clones[0].fidelity;
  EXPECT_LT(std::abs(e.estimate - exact), 3.0 * e.std_error);
  EXPECT_NEAR(exact, 0.656, 0.005);
}

TEST(MonteCarlo, DeterministicAcrossWorkerCounts) {
  const PolyGaussian w = degaussify(ResourceSpec::pa(1, 0), 0.5).state;
  const auto a = mc_integral(w, {50000, 42, 1});
  const auto b = mc_integral(w, {50000, 42, 8});
  const auto c = mc_integral(w, {50000, 43, 1});
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_NE(a.estimate, c.estimate);
}

TEST(MonteCarlo, ErrorShrinksAtInverseSquareRootRate) {
  const PolyGaussian w = degaussify(ResourceSpec::ps(1, 1), 0.5).state;
  const auto small = mc_integral(w, {25000, 5, 4});
  const auto big = mc_integral(w, {100000, 5, 4});
  EXPECT_NEAR(small.std_error / big.std_error, 2.0, 0.4);
}

TEST(MonteCarlo, RejectsTooFewSamples) {
  const PolyGaussian v = lift_gaussian(vacuum_state(1));
  EXPECT_THROW(mc_integral(v, {999, 1, 1}), Error);
}
