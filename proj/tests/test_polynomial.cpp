#include "teleclone/polynomial.hpp"

#include <gtest/gtest.h>

using namespace teleclone;

TEST(Polynomial, IsserlisMoments) {
  Matrix g(2, 2);
  g << 2.0, 0.5, 0.5, 3.0;
  EXPECT_NEAR(gaussian_moment(g, Monomial::from({4, 0})), 3.0 * 4.0, 1e-12);
  EXPECT_NEAR(gaussian_moment(g, Monomial::from({1, 1})), 0.5, 1e-14);
  EXPECT_NEAR(gaussian_moment(g, Monomial::from({2, 2})), 2.0 * 3.0 + 2.0 * 0.25, 1e-12);
  EXPECT_EQ(gaussian_moment(g, Monomial::from({3, 0})), 0.0);
  EXPECT_EQ(gaussian_moment(g, Monomial::from({0, 0})), 1.0);
}

TEST(Polynomial, EvaluateAndDerivative) {
  Polynomial p(2);
  p.add_term(Monomial::from({2, 1}), 3.0);
  p.add_term(Monomial::from({0, 0}), -1.0);
  const double pt[] = {2.0, -1.0};
  EXPECT_DOUBLE_EQ(p.evaluate(pt), 3.0 * 4.0 * -1.0 - 1.0);
  EXPECT_DOUBLE_EQ(p.derivative(0).evaluate(pt), 6.0 * 2.0 * -1.0);
  EXPECT_EQ(p.degree(), 3);
}

TEST(Polynomial, ZeroCoefficientsDropOut) {
  Polynomial p(1);
  p.add_term(Monomial::from({1}), 2.0);
  p.add_term(Monomial::from({1}), -2.0);
  EXPECT_TRUE(p.is_zero());
}

TEST(Polynomial, SubstitutionComposesLinearMaps) {
  // p(y) = y0 * y1, y = M z + c.
  Polynomial p(2);
  p.add_term(Monomial::from({1, 1}), 1.0);
  Matrix m(2, 2);
  m << 1.0, 2.0, 0.0, 1.0;
  Vector c(2);
  c << 1.0, -1.0;
  const Polynomial q = p.substitute(m, c);
  const double z[] = {0.5, 1.5};
  EXPECT_NEAR(q.evaluate(z), (0.5 + 3.0 + 1.0) * (1.5 - 1.0), 1e-14);
}

TEST(Polynomial, SmoothingMatchesGaussianAverage) {
  // E[(y + u)^2] over u ~ N(0, s) = y^2 + s.
  Polynomial p(1);
  p.add_term(Monomial::from({2}), 1.0);
  Matrix s(1, 1);
  s << 0.7;
  const Polynomial q = gaussian_smooth(p, s);
  const double y[] = {1.3};
  EXPECT_NEAR(q.evaluate(y), 1.69 + 0.7, 1e-14);
}

TEST(Polynomial, TimesLinearAndEmbed) {
  Polynomial p = Polynomial::variable(2, 1);
  const double coeffs[] = {1.0, 0.0};
  const Polynomial q = p.times_linear(coeffs, 2.0);  // y1 (y0 + 2)
  const Polynomial e = q.embed(4, 2);
  const double pt[] = {9.0, 9.0, 3.0, 5.0};
  EXPECT_DOUBLE_EQ(e.evaluate(pt), 5.0 * 5.0);
}
