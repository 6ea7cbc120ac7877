#include "teleclone/states.hpp"
#include "teleclone/wigner.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace teleclone;

namespace {
PolyGaussian vac1() { return lift_gaussian(vacuum_state(1)); }
}  // namespace

TEST(Wigner, LiftedGaussianIsNormalizedAndPure) {
  const PolyGaussian w = lift_gaussian(tmsv(0.6));
  EXPECT_NEAR(trace(w), 1.0, 1e-14);
  EXPECT_NEAR(overlap(w, w), 1.0, 1e-12);
}

TEST(Wigner, VacuumValueAtOrigin) {
  const double origin[] = {0.0, 0.0};
  EXPECT_NEAR(evaluate(vac1(), origin), 1.0 / (2.0 * std::numbers::pi), 1e-15);
}

TEST(Wigner, AddingToVacuumGivesSinglePhoton) {
  const Normalized n = ladder_superop(vac1(), 0, Ladder::add);
  EXPECT_NEAR(n.weight, 1.0, 1e-14);
  const PolyGaussian one = normalize(n.state).state;
  EXPECT_NEAR(moment(one, Monomial::from({2, 0})), 3.0, 1e-12);
  EXPECT_NEAR(overlap(one, vac1()), 0.0, 1e-14);
  EXPECT_NEAR(overlap(one, one), 1.0, 1e-12);
  const double origin[] = {0.0, 0.0};
  EXPECT_NEAR(evaluate(one, origin), -1.0 / (2.0 * std::numbers::pi), 1e-14);
}

TEST(Wigner, SubtractingFromVacuumIsRejected) {
  EXPECT_THROW(ladder_superop(vac1(), 0, Ladder::subtract), Error);
}

TEST(Wigner, SubtractionWeightOnTmsvEqualsMeanPhotonNumber) {
  const double r = 0.5;
  const Normalized n = ladder_superop(lift_gaussian(tmsv(r)), 1, Ladder::subtract);
  EXPECT_NEAR(n.weight, std::sinh(r) * std::sinh(r), 1e-13);
  const Normalized a = ladder_superop(lift_gaussian(tmsv(r)), 0, Ladder::add);
  EXPECT_NEAR(a.weight, std::cosh(r) * std::cosh(r), 1e-13);
}

TEST(Wigner, SecondMomentsOfGaussianMatchCovariance) {
  const GaussianState s = displace(tmsv(0.3), 0, 0.4, -0.2);
  const auto m = second_moments(lift_gaussian(s));
  EXPECT_LT(detail::max_abs(m.cov - s.cov()), 1e-13);
  EXPECT_LT((m.mean - s.mean()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Wigner, PushforwardOfGaussianMatchesCovarianceAlgebra) {
  const GaussianState s = tmsv(0.7);
  Matrix a(2, 4);
  a << 1.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, 1.0;
  Vector b(2);
  b << 0.3, 0.1;
  const PolyGaussian out = linear_pushforward(lift_gaussian(s), a, b);
  EXPECT_LT(detail::max_abs(out.gamma() - a * s.cov() * a.transpose()), 1e-12);
  EXPECT_NEAR(out.mu()(0), 0.3, 1e-15);
  EXPECT_NEAR(trace(out), 1.0, 1e-13);
}

TEST(Wigner, PushforwardPreservesTraceOfNonGaussianStates) {
  const PolyGaussian w = degaussify(ResourceSpec::pa(1, 1), 0.6).state;
  Matrix a(2, 4);
  a << 0.5, 0.0, 0.5, 0.0, 0.0, 1.0, 0.0, -0.3;
  EXPECT_NEAR(trace(linear_pushforward(w, a, Vector::Zero(2))), 1.0, 1e-12);
}

TEST(Wigner, MarginalOfTmsvIsThermal) {
  const std::size_t keep[] = {0};
  const PolyGaussian m = marginal(lift_gaussian(tmsv(0.4)), keep);
  EXPECT_NEAR(m.gamma()(0, 0), std::cosh(0.8), 1e-13);
}

TEST(Wigner, MarginalOfPhotonSubtractedStateMatchesMoments) {
  const PolyGaussian w = degaussify(ResourceSpec::ps(1, 1), 0.4).state;
  const std::size_t keep[] = {1};
  const PolyGaussian m = marginal(w, keep);
  EXPECT_NEAR(moment(m, Monomial::from({2, 0})), moment(w, Monomial::from({0, 0, 2, 0})), 1e-12);
  EXPECT_NEAR(moment(m, Monomial::from({4, 0})), moment(w, Monomial::from({0, 0, 4, 0})), 1e-11);
}

TEST(Wigner, TensorProductFactorizesOverlap) {
  const PolyGaussian a = lift_gaussian(coherent({0.2, 0.4}));
  const PolyGaussian b = normalize(ladder_superop(vac1(), 0, Ladder::add).state).state;
  const PolyGaussian ab = tensor(a, b);
  EXPECT_EQ(ab.num_modes(), 2u);
  EXPECT_NEAR(overlap(ab, tensor(a, vac1())), overlap(b, vac1()), 1e-14);
  EXPECT_NEAR(overlap(ab, ab), 1.0, 1e-12);
}

TEST(Wigner, OverlapPrefactorControlsPurity) {
  const PolyGaussian w = lift_gaussian(tmsv(0.2));
  EXPECT_NEAR(overlap(w, w, 2.0 * std::numbers::pi), 0.25, 1e-12);
}

TEST(Wigner, RejectsMalformedInputs) {
  EXPECT_THROW(PolyGaussian(Vector::Zero(2), -Matrix::Identity(2, 2), Polynomial::constant(2, 1.0)), Error);
  EXPECT_THROW(ladder_superop(vac1(), 3, Ladder::add), Error);
  Matrix rank_deficient = Matrix::Zero(2, 4);
  rank_deficient(0, 0) = 1.0;
  rank_deficient(1, 0) = 2.0;
  EXPECT_THROW(linear_pushforward(lift_gaussian(tmsv(0.1)), rank_deficient, Vector::Zero(2)), Error);
}
