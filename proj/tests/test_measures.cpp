#include "teleclone/measures.hpp"
#include "teleclone/protocols.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace teleclone;

TEST(Measures, QFromDuanSum) {
  EXPECT_DOUBLE_EQ(q_from_zeta(4.0), 0.0);
  EXPECT_DOUBLE_EQ(q_from_zeta(2.0), 0.5);
  EXPECT_DOUBLE_EQ(q_from_zeta(0.0), 1.0);
}

TEST(Measures, FidelityBoundFromQ) {
  EXPECT_DOUBLE_EQ(prop1_bound(0.0), 0.5);
  EXPECT_DOUBLE_EQ(prop1_bound(0.5), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(prop1_bound(1.0), 1.0);
  EXPECT_THROW(prop1_bound(1.5), Error);
}

TEST(Measures, BracketIsOrdered) {
  for (double q : {-1.0, 0.0, 0.5, 2.0}) {
    const auto b = prop1_bracket(q);
    EXPECT_LT(b.lower, b.upper);
  }
}

TEST(Measures, ClassicalThresholds) {
  EXPECT_DOUBLE_EQ(classical_threshold(InputSpec::coherent_state({1.0, 2.0})), 0.5);
  EXPECT_NEAR(classical_threshold(InputSpec::squeezed(0.5)), 0.4434, 1e-4);
}

TEST(Measures, QOfIrreversibleTmsvNetwork) {
  const auto rep = fidelity_gaussian(tmsv(std::asinh(1.0)), InputSpec::coherent_state(), ProtocolSpec::irreversible());
  EXPECT_NEAR(rep.clones[0].q, 0.5, 1e-12);
  EXPECT_NEAR(rep.clones[0].zeta, 2.0, 1e-12);
}

TEST(Measures, ClosedFormEntanglementReferences) {
  EXPECT_NEAR(eln_closed_form(0.0), 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(ggm_closed_form(0.0), 0.0);
  double prev = 0.0;
  for (double r = 0.1; r <= 1.0; r += 0.1) {
    EXPECT_GT(ggm_closed_form(r), prev);
    prev = ggm_closed_form(r);
    EXPECT_GT(eln_closed_form(r), 0.0);
  }
  EXPECT_THROW(ggm_closed_form(-0.1), Error);
}

TEST(Measures, ClosedFormNuIsSquareOfPartialTransposeEigenvalue) {
  for (double r : {0.2, 0.6, 1.0}) {
    const GaussianState joint = network_state(tmsv(r), vacuum_state(1), ProtocolSpec::irreversible());
    const GaussianState mixed = apply_symplectic(joint, beam_splitter(4, 2, 3, 0.5));
    const std::size_t keep[] = {1, 2};
    const double nu = pt_symplectic_eigenvalue(partial_trace(mixed, keep));
    EXPECT_NEAR(eln_nu_closed_form(r), nu * nu, 1e-12);
  }
}
