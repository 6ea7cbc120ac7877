#include "teleclone/phase_space.hpp"
#include "teleclone/states.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace teleclone;

TEST(PhaseSpace, VacuumHasUnitCovariance) {
  const GaussianState v = vacuum_state(3);
  EXPECT_EQ(v.num_modes(), 3u);
  EXPECT_LT(detail::max_abs(v.cov() - Matrix::Identity(6, 6)), 1e-15);
  EXPECT_TRUE(is_physical(v));
}

TEST(PhaseSpace, StandardMapsAreSymplectic) {
  const Matrix omega = symplectic_form(3);
  for (const SymplecticMap& m : {squeezer(3, 1, 0.7), beam_splitter(3, 0, 2, 0.3),
                                 compose(beam_splitter(3, 1, 2, 0.5), squeezer(3, 0, -0.4))}) {
    EXPECT_LT(detail::max_abs(m.matrix * omega * m.matrix.transpose() - omega), 1e-12);
  }
}

TEST(PhaseSpace, SqueezerScalesQuadratures) {
  const GaussianState s = apply_symplectic(vacuum_state(1), squeezer(1, 0, 0.5));
  EXPECT_NEAR(s.cov()(0, 0), std::exp(-1.0), 1e-14);
  EXPECT_NEAR(s.cov()(1, 1), std::exp(1.0), 1e-14);
}

TEST(PhaseSpace, TwoModeSqueezedVacuumCovariance) {
  const double r = 0.6;
  const GaussianState s = tmsv(r);
  const double c = std::cosh(2 * r);
  const double sh = std::sinh(2 * r);
  EXPECT_NEAR(s.cov()(0, 0), c, 1e-13);
  EXPECT_NEAR(s.cov()(1, 1), c, 1e-13);
  EXPECT_NEAR(s.cov()(0, 2), sh, 1e-13);
  EXPECT_NEAR(s.cov()(1, 3), -sh, 1e-13);
  EXPECT_TRUE(is_physical(s));
}

TEST(PhaseSpace, PartialTraceOfTmsvIsThermal) {
  const std::size_t keep[] = {1};
  const GaussianState red = partial_trace(tmsv(0.4), keep);
  EXPECT_NEAR(red.cov()(0, 0), std::cosh(0.8), 1e-13);
  EXPECT_NEAR(red.cov()(0, 1), 0.0, 1e-15);
}

TEST(PhaseSpace, LogNegativityOfTmsv) {
  for (double r : {0.0, 0.3, 1.1}) EXPECT_NEAR(log_negativity(tmsv(r)), 2.0 * r / std::log(2.0), 1e-12);
  EXPECT_NEAR(pt_symplectic_eigenvalue(tmsv(0.5)), std::exp(-1.0), 1e-12);
}

TEST(PhaseSpace, DuanSumOfTmsv) {
  EXPECT_NEAR(duan_zeta(tmsv(0.0), 0, 1), 4.0, 1e-14);
  EXPECT_NEAR(duan_zeta(tmsv(0.7), 0, 1), 4.0 * std::exp(-1.4), 1e-12);
}

TEST(PhaseSpace, GaussianOverlapOfCoherentStates) {
  EXPECT_NEAR(gaussian_overlap(vacuum_state(2), vacuum_state(2)), 1.0, 1e-15);
  const std::complex<double> a{0.3, -0.8};
  const std::complex<double> b{-0.5, 0.2};
  EXPECT_NEAR(gaussian_overlap(coherent(a), coherent(b)), std::exp(-std::norm(a - b)), 1e-14);
  EXPECT_NEAR(gaussian_overlap(tmsv(0.9), tmsv(0.9)), 1.0, 1e-12);
}

TEST(PhaseSpace, DisplacementMovesMean) {
  const GaussianState d = displace(vacuum_state(2), 1, 0.5, -1.5);
  EXPECT_DOUBLE_EQ(d.mean()(2), 0.5);
  EXPECT_DOUBLE_EQ(d.mean()(3), -1.5);
}

TEST(PhaseSpace, RejectsInvalidArguments) {
  EXPECT_THROW(beam_splitter(2, 1, 1, 0.5), Error);
  EXPECT_THROW(beam_splitter(2, 0, 1, 1.5), Error);
  EXPECT_THROW(squeezer(2, 5, 0.1), Error);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = 1.0;
  EXPECT_THROW(GaussianState(Vector::Zero(2), bad), Error);
}

TEST(PhaseSpace, UnphysicalCovarianceDetected) {
  Matrix cov = Matrix::Identity(2, 2) * 0.5;
  EXPECT_FALSE(is_physical(GaussianState(Vector::Zero(2), cov)));
}
