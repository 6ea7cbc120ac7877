#pragma once

// Quasi-probability distributions of the form
//
//   W(xi) = scale * P(xi - mu) * G_gamma(xi - mu),
//
// with G_gamma the normalised zero-mean Gaussian density. Gaussian states
// have P = 1 and gamma equal to their covariance matrix; photon-added and
// photon-subtracted states pick up a polynomial prefactor. All integrals
// are evaluated exactly through Gaussian moments.

#include "teleclone/phase_space.hpp"
#include "teleclone/polynomial.hpp"

#include <numbers>
#include <utility>

namespace teleclone {

class PolyGaussian {
 public:
  PolyGaussian(Vector mu, Matrix gamma, Polynomial poly, double scale = 1.0)
      : mu_(std::move(mu)), gamma_(std::move(gamma)), poly_(std::move(poly)), scale_(scale) {
    detail::require(mu_.size() > 0 && mu_.size() % 2 == 0,
                    "PolyGaussian: mean must have even, non-zero length");
    detail::require(gamma_.rows() == mu_.size() && gamma_.cols() == mu_.size(),
                    "PolyGaussian: kernel dimension mismatch");
    detail::require(poly_.num_vars() == static_cast<std::size_t>(mu_.size()),
                    "PolyGaussian: polynomial arity mismatch");
    const double tol = kSymmetryTolerance * std::max(1.0, detail::max_abs(gamma_));
    detail::require(detail::max_abs(gamma_ - gamma_.transpose()) <= tol,
                    "PolyGaussian: kernel covariance is not symmetric");
    gamma_ = 0.5 * (gamma_ + gamma_.transpose());
    const Eigen::LLT<Matrix> llt(gamma_);
    detail::require(llt.info() == Eigen::Success,
                    "PolyGaussian: kernel covariance is not positive definite");
  }

  std::size_t num_modes() const { return static_cast<std::size_t>(mu_.size() / 2); }
  std::size_t num_vars() const { return static_cast<std::size_t>(mu_.size()); }
  const Vector& mu() const { return mu_; }
  const Matrix& gamma() const { return gamma_; }
  const Polynomial& poly() const { return poly_; }
  double scale() const { return scale_; }

  PolyGaussian with_scale(double s) const { return {mu_, gamma_, poly_, s}; }

 private:
  Vector mu_;
  Matrix gamma_;
  Polynomial poly_;
  double scale_;
};

enum class Ladder { subtract, add };

struct Normalized {
  PolyGaussian state;
  double weight;
};

struct PhaseSpaceMoments {
  Vector mean;
  Matrix cov;
};

namespace detail {

/// P viewed as a polynomial in the listed variables only (others must be absent).
inline Polynomial restrict_vars(const Polynomial& p, std::span<const std::size_t> vars) {
  Polynomial out(vars.size());
  for (const auto& [m, c] : p.terms()) {
    Monomial r(vars.size());
    for (std::size_t k = 0; k < vars.size(); ++k) r.bump(k, m[vars[k]]);
    out.add_term(r, c);
  }
  return out;
}

inline Matrix sub_matrix(const Matrix& m, std::span<const std::size_t> rows,
                         std::span<const std::size_t> cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b)
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          m(static_cast<Eigen::Index>(rows[a]), static_cast<Eigen::Index>(cols[b]));
  return out;
}

inline Matrix sub_rows(const Matrix& m, std::span<const std::size_t> rows) {
  Matrix out(rows.size(), m.cols());
  for (std::size_t a = 0; a < rows.size(); ++a)
    out.row(static_cast<Eigen::Index>(a)) = m.row(static_cast<Eigen::Index>(rows[a]));
  return out;
}

inline double gaussian_density(const Vector& y, const Matrix& gamma) {
  const Eigen::LLT<Matrix> llt(gamma);
  const double quad = y.dot(llt.solve(y));
  const double half_dim = 0.5 * static_cast<double>(y.size());
  return std::exp(-0.5 * quad) /
         (std::pow(2.0 * std::numbers::pi, half_dim) * std::sqrt(gamma.determinant()));
}

/// Q(u) = P(u + shift) restricted to P's active variables, re-embedded.
inline Polynomial shift_poly(const Polynomial& p, const Vector& shift) {
  const auto act = p.active_variables();
  if (act.empty()) return p;
  Vector sub(act.size());
  for (std::size_t k = 0; k < act.size(); ++k)
    sub(static_cast<Eigen::Index>(k)) = shift(static_cast<Eigen::Index>(act[k]));
  const Polynomial shifted =
      restrict_vars(p, act).substitute(Matrix::Identity(act.size(), act.size()), sub);
  Matrix embed = Matrix::Zero(act.size(), p.num_vars());
  for (std::size_t k = 0; k < act.size(); ++k)
    embed(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(act[k])) = 1.0;
  return shifted.substitute(embed, Vector::Zero(act.size()));
}

}  // namespace detail

inline PolyGaussian lift_gaussian(const GaussianState& s) {
  const auto n = static_cast<std::size_t>(s.mean().size());
  return {s.mean(), s.cov(), Polynomial::constant(n, 1.0), 1.0};
}

/// Full phase-space integral.
inline double trace(const PolyGaussian& w) {
  GaussianMoments g(w.gamma());
  return w.scale() * g.expectation(w.poly());
}

inline Normalized normalize(const PolyGaussian& w) {
  const double t = trace(w);
  detail::require(t > 0.0, "normalize: non-positive trace (unphysical construction)");
  return {w.with_scale(w.scale() / t), t};
}

inline double evaluate(const PolyGaussian& w, std::span<const double> point) {
  detail::require(point.size() == w.num_vars(), "evaluate: point dimension mismatch");
  Vector y(w.num_vars());
  for (std::size_t i = 0; i < point.size(); ++i)
    y(static_cast<Eigen::Index>(i)) = point[i] - w.mu()(static_cast<Eigen::Index>(i));
  std::vector<double> yv(y.data(), y.data() + y.size());
  return w.scale() * w.poly().evaluate(yv) * detail::gaussian_density(y, w.gamma());
}

inline PolyGaussian tensor(const PolyGaussian& a, const PolyGaussian& b) {
  const auto na = static_cast<Eigen::Index>(a.num_vars());
  const auto nb = static_cast<Eigen::Index>(b.num_vars());
  const auto n = static_cast<std::size_t>(na + nb);
  Vector mu(na + nb);
  mu << a.mu(), b.mu();
  Matrix gamma = Matrix::Zero(na + nb, na + nb);
  gamma.topLeftCorner(na, na) = a.gamma();
  gamma.bottomRightCorner(nb, nb) = b.gamma();
  Polynomial poly = a.poly().embed(n, 0) * b.poly().embed(n, a.num_vars());
  return {std::move(mu), std::move(gamma), std::move(poly), a.scale() * b.scale()};
}

/// E[xi^k] of the normalised distribution, absolute coordinates.
inline double moment(const PolyGaussian& w, const Monomial& m) {
  detail::require(m.num_vars() == w.num_vars(), "moment: monomial arity mismatch");
  Polynomial mono(w.num_vars());
  mono.add_term(m, 1.0);
  const Polynomial in_y = detail::shift_poly(mono, w.mu());
  GaussianMoments g(w.gamma());
  return g.expectation(w.poly() * in_y) / g.expectation(w.poly());
}

/// Mean vector and covariance <xi xi^T> - <xi><xi>^T of the quasi-distribution.
inline PhaseSpaceMoments second_moments(const PolyGaussian& w) {
  const std::size_t n = w.num_vars();
  GaussianMoments g(w.gamma());
  const double norm = g.expectation(w.poly());
  detail::require(norm != 0.0, "second_moments: zero trace");
  Vector ey = Vector::Zero(static_cast<Eigen::Index>(n));
  Matrix eyy = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& [m, c] : w.poly().terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      const Monomial mi = m.bumped(i, 1);
      ey(static_cast<Eigen::Index>(i)) += c * g.moment(mi);
      for (std::size_t j = i; j < n; ++j)
        eyy(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            c * g.moment(mi.bumped(j, 1));
    }
  }
  ey /= norm;
  eyy /= norm;
  eyy = eyy.selfadjointView<Eigen::Upper>();
  return {w.mu() + ey, eyy - ey * ey.transpose()};
}

/// Law of eta = a * xi + b for full-row-rank `a`.
///
/// Conditioning on z = a (xi - mu): y = K z + v with K = gamma a^T (a gamma a^T)^{-1}
/// and v ~ N(0, gamma - K a gamma) independent of z, so the new polynomial is
/// z -> E_v[P(K z + v)]. Only variables that appear in P are carried.
inline PolyGaussian linear_pushforward(const PolyGaussian& w, const Matrix& a, const Vector& b) {
  detail::require(a.cols() == static_cast<Eigen::Index>(w.num_vars()),
                  "linear_pushforward: map column count must match phase-space dimension");
  detail::require(a.rows() > 0 && a.rows() % 2 == 0,
                  "linear_pushforward: map must have an even, non-zero row count");
  detail::require(b.size() == a.rows(), "linear_pushforward: shift length mismatch");
  const Eigen::FullPivLU<Matrix> lu(a);
  detail::require(lu.rank() == a.rows(), "linear_pushforward: map is rank deficient");

  const Matrix gamma_eta = a * w.gamma() * a.transpose();
  const Vector mu_eta = a * w.mu() + b;
  const Matrix gain = w.gamma() * a.transpose() * gamma_eta.inverse();
  const Matrix residual = w.gamma() - gain * a * w.gamma();

  const auto act = w.poly().active_variables();
  const auto m = static_cast<std::size_t>(a.rows());
  Polynomial q(m);
  if (act.empty()) {
    q = Polynomial::constant(m, w.poly().coefficient(Monomial(w.num_vars())));
  } else {
    const Polynomial p_act = detail::restrict_vars(w.poly(), act);
    Matrix res_act = detail::sub_matrix(residual, act, act);
    res_act = 0.5 * (res_act + res_act.transpose());
    const Polynomial smooth = gaussian_smooth(p_act, res_act);
    q = smooth.substitute(detail::sub_rows(gain, act), Vector::Zero(act.size()));
  }
  return {mu_eta, 0.5 * (gamma_eta + gamma_eta.transpose()), std::move(q), w.scale()};
}

/// Invertible affine change of variables xi' = t xi + c (density transforms with 1/|det t|).
inline PolyGaussian affine_transform(const PolyGaussian& w, const Matrix& t, const Vector& c) {
  detail::require(t.rows() == t.cols() && t.rows() == static_cast<Eigen::Index>(w.num_vars()),
                  "affine_transform: map must be square and match dimension");
  const Eigen::FullPivLU<Matrix> lu(t);
  detail::require(lu.isInvertible(), "affine_transform: map is singular");
  const Matrix t_inv = lu.inverse();
  const auto act = w.poly().active_variables();
  Polynomial q = act.empty()
                     ? w.poly()
                     : detail::restrict_vars(w.poly(), act)
                           .substitute(detail::sub_rows(t_inv, act), Vector::Zero(act.size()));
  const Matrix g = t * w.gamma() * t.transpose();
  return {t * w.mu() + c, 0.5 * (g + g.transpose()), std::move(q), w.scale()};
}

/// Same law as linear_pushforward, computed by stacking `a` with the
/// complement rows `completion`, transforming, and integrating out the
/// trailing coordinates.
inline PolyGaussian linear_pushforward_completed(const PolyGaussian& w, const Matrix& a,
                                                 const Vector& b, const Matrix& completion) {
  detail::require(a.rows() + completion.rows() == static_cast<Eigen::Index>(w.num_vars()) &&
                      completion.cols() == a.cols(),
                  "linear_pushforward_completed: completion has the wrong shape");
  Matrix t(a.rows() + completion.rows(), a.cols());
  t << a, completion;
  Vector c = Vector::Zero(t.rows());
  c.head(b.size()) = b;
  const PolyGaussian full = affine_transform(w, t, c);
  Matrix select = Matrix::Zero(a.rows(), t.rows());
  select.leftCols(a.rows()) = Matrix::Identity(a.rows(), a.rows());
  return linear_pushforward(full, select, Vector::Zero(a.rows()));
}

/// Reduced distribution of the listed modes.
inline PolyGaussian marginal(const PolyGaussian& w, std::span<const std::size_t> keep) {
  detail::require(!keep.empty(), "marginal: empty keep set");
  Matrix select = Matrix::Zero(2 * keep.size(), w.num_vars());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    detail::require(keep[k] < w.num_modes(), "marginal: mode index out of range");
    select(2 * k, 2 * keep[k]) = 1.0;
    select(2 * k + 1, 2 * keep[k] + 1) = 1.0;
  }
  return linear_pushforward(w, select, Vector::Zero(select.rows()));
}

/// Wigner image of a rho a^dag (subtract) or a^dag rho a (add) on `mode`.
///
/// With alpha = (x + i p)/2 the left/right actions are
///   a rho    <-> (alpha  + d_{alpha*}/2) W,   rho a^dag <-> (alpha* + d_alpha/2) W,
///   a^dag rho <-> (alpha* - d_alpha/2) W,     rho a     <-> (alpha  - d_{alpha*}/2) W,
/// which combine to W' = [(x +- d_x)^2 + (p +- d_p)^2] W / 4.
/// The returned weight is trace(result) / trace(w).
inline Normalized ladder_superop(const PolyGaussian& w, std::size_t mode, Ladder kind) {
  detail::require(mode < w.num_modes(), "ladder_superop: mode index out of range");
  const double sign = kind == Ladder::subtract ? 1.0 : -1.0;
  const std::size_t n = w.num_vars();
  const Matrix precision = w.gamma().inverse();

  // (xi_k + sign * d_k) acting on P * G, expressed on the polynomial part.
  auto shifted = [&](const Polynomial& p, std::size_t k) {
    std::vector<double> coeffs(n);
    for (std::size_t j = 0; j < n; ++j)
      coeffs[j] = (j == k ? 1.0 : 0.0) -
                  sign * precision(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
    Polynomial out = p.times_linear(coeffs, w.mu()(static_cast<Eigen::Index>(k)));
    out += sign * p.derivative(k);
    return out;
  };

  const std::size_t ix = 2 * mode;
  const std::size_t ip = 2 * mode + 1;
  Polynomial q = shifted(shifted(w.poly(), ix), ix) + shifted(shifted(w.poly(), ip), ip);
  q *= 0.25;
  const PolyGaussian out(w.mu(), w.gamma(), std::move(q), w.scale());

  const double before = trace(w);
  const double after = trace(out);
  const double weight = after / before;
  detail::require(weight > 1e-12, "ladder_superop: zero weight (operator annihilates the state)");
  return {out, weight};
}

inline constexpr double kWignerOverlapPrefactor = 4.0 * std::numbers::pi;

/// Tr[rho1 rho2] = (4 pi)^N * integral of W1 W2.
///
/// `per_mode_prefactor` exists for negative-control checks of the purity
/// normalisation; physical callers keep the default.
inline double overlap(const PolyGaussian& w1, const PolyGaussian& w2,
                      double per_mode_prefactor = kWignerOverlapPrefactor) {
  detail::require(w1.num_vars() == w2.num_vars(), "overlap: mode counts differ");
  const Matrix prec1 = w1.gamma().inverse();
  const Matrix prec2 = w2.gamma().inverse();
  Matrix g = (prec1 + prec2).inverse();
  g = 0.5 * (g + g.transpose());
  const Vector m = g * (prec1 * w1.mu() + prec2 * w2.mu());
  const Matrix sum = w1.gamma() + w2.gamma();
  const double c = detail::gaussian_density(w1.mu() - w2.mu(), sum);

  const Polynomial p1 = detail::shift_poly(w1.poly(), m - w1.mu());
  const Polynomial p2 = detail::shift_poly(w2.poly(), m - w2.mu());
  GaussianMoments moments(g);
  const double integral = w1.scale() * w2.scale() * c * moments.expectation(p1 * p2);
  return std::pow(per_mode_prefactor, static_cast<double>(w1.num_modes())) * integral;
}

}  // namespace teleclone
