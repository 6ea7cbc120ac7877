#pragma once

// Gaussian states in phase space.
//
// Quadratures are ordered (x1, p1, ..., xN, pN) with x = a + a^dag and
// p = -i(a - a^dag), so the vacuum has unit variance in every quadrature.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace teleclone {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Raised for malformed arguments (bad indices, dimension mismatches, ...).
class Error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kSymmetryTolerance = 1e-12;

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(what);
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Block-diagonal symplectic form with omega = [[0, 1], [-1, 0]] per mode.
inline Matrix symplectic_form(std::size_t num_modes) {
  Matrix omega = Matrix::Zero(2 * num_modes, 2 * num_modes);
  for (std::size_t k = 0; k < num_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

class GaussianState {
 public:
  GaussianState(Vector mean, Matrix cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    detail::require(mean_.size() > 0 && mean_.size() % 2 == 0,
                    "GaussianState: mean must have even, non-zero length");
    detail::require(cov_.rows() == mean_.size() && cov_.cols() == mean_.size(),
                    "GaussianState: covariance dimension does not match mean");
    const double tol = kSymmetryTolerance * std::max(1.0, detail::max_abs(cov_));
    detail::require(detail::max_abs(cov_ - cov_.transpose()) <= tol,
                    "GaussianState: covariance is not symmetric");
    cov_ = 0.5 * (cov_ + cov_.transpose());
  }

  std::size_t num_modes() const { return static_cast<std::size_t>(mean_.size() / 2); }
  const Vector& mean() const { return mean_; }
  const Matrix& cov() const { return cov_; }

 private:
  Vector mean_;
  Matrix cov_;
};

/// cov + i*Omega >= 0 up to `tol`.
inline bool is_physical(const GaussianState& s, double tol = 1e-9) {
  const Eigen::MatrixXcd h =
      s.cov().cast<std::complex<double>>() +
      std::complex<double>(0.0, 1.0) * symplectic_form(s.num_modes()).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol * std::max(1.0, detail::max_abs(s.cov()));
}

/// Affine phase-space map xi -> matrix * xi + shift.
struct SymplecticMap {
  Matrix matrix;
  Vector shift;

  static SymplecticMap identity(std::size_t num_modes) {
    return {Matrix::Identity(2 * num_modes, 2 * num_modes), Vector::Zero(2 * num_modes)};
  }

  bool is_square() const { return matrix.rows() == matrix.cols(); }

  /// matrix^T Omega matrix == Omega; only meaningful for square maps.
  bool is_symplectic(double tol = kSymmetryTolerance) const {
    if (!is_square() || matrix.rows() % 2 != 0) return false;
    const Matrix omega = symplectic_form(static_cast<std::size_t>(matrix.rows() / 2));
    return detail::max_abs(matrix.transpose() * omega * matrix - omega) <=
           tol * std::max(1.0, detail::max_abs(matrix) * detail::max_abs(matrix));
  }
};

/// `second` after `first`.
inline SymplecticMap compose(const SymplecticMap& second, const SymplecticMap& first) {
  detail::require(second.matrix.cols() == first.matrix.rows(), "compose: dimension mismatch");
  return {second.matrix * first.matrix, second.matrix * first.shift + second.shift};
}

inline GaussianState vacuum_state(std::size_t num_modes) {
  detail::require(num_modes >= 1, "vacuum_state: need at least one mode");
  return {Vector::Zero(2 * num_modes), Matrix::Identity(2 * num_modes, 2 * num_modes)};
}

/// Single-mode squeezer: x scaled by e^{-r}, p by e^{+r}.
inline SymplecticMap squeezer(std::size_t num_modes, std::size_t mode, double r) {
  detail::require(mode < num_modes, "squeezer: mode index out of range");
  detail::require(std::isfinite(r), "squeezer: r must be finite");
  SymplecticMap m = SymplecticMap::identity(num_modes);
  m.matrix(2 * mode, 2 * mode) = std::exp(-r);
  m.matrix(2 * mode + 1, 2 * mode + 1) = std::exp(r);
  return m;
}

/// Beam splitter of transmissivity tau:
///   q_i' = sqrt(tau) q_i + sqrt(1 - tau) q_j
///   q_j' = sqrt(1 - tau) q_i - sqrt(tau) q_j
/// for q in {x, p}.
inline SymplecticMap beam_splitter(std::size_t num_modes, std::size_t i, std::size_t j,
                                   double tau) {
  detail::require(i < num_modes && j < num_modes, "beam_splitter: mode index out of range");
  detail::require(i != j, "beam_splitter: modes must differ");
  detail::require(tau >= 0.0 && tau <= 1.0, "beam_splitter: transmissivity outside [0, 1]");
  SymplecticMap m = SymplecticMap::identity(num_modes);
  const double t = std::sqrt(tau);
  const double u = std::sqrt(1.0 - tau);
  for (std::size_t q = 0; q < 2; ++q) {
    const auto a = 2 * i + q;
    const auto b = 2 * j + q;
    m.matrix(a, a) = t;
    m.matrix(a, b) = u;
    m.matrix(b, a) = u;
    m.matrix(b, b) = -t;
  }
  return m;
}

/// Output mode k carries input mode order[k].
inline SymplecticMap mode_permutation(std::span<const std::size_t> order) {
  const std::size_t n = order.size();
  SymplecticMap m{Matrix::Zero(2 * n, 2 * n), Vector::Zero(2 * n)};
  std::vector<bool> seen(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    detail::require(order[k] < n && !seen[order[k]], "mode_permutation: not a permutation");
    seen[order[k]] = true;
    m.matrix(2 * k, 2 * order[k]) = 1.0;
    m.matrix(2 * k + 1, 2 * order[k] + 1) = 1.0;
  }
  return m;
}

inline GaussianState apply_symplectic(const GaussianState& s, const SymplecticMap& m) {
  detail::require(m.matrix.cols() == static_cast<Eigen::Index>(2 * s.num_modes()),
                  "apply_symplectic: map does not match state dimension");
  detail::require(m.shift.size() == m.matrix.rows(), "apply_symplectic: shift length mismatch");
  return {m.matrix * s.mean() + m.shift, m.matrix * s.cov() * m.matrix.transpose()};
}

inline GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  const auto na = a.mean().size();
  const auto nb = b.mean().size();
  Vector mean(na + nb);
  mean << a.mean(), b.mean();
  Matrix cov = Matrix::Zero(na + nb, na + nb);
  cov.topLeftCorner(na, na) = a.cov();
  cov.bottomRightCorner(nb, nb) = b.cov();
  return {std::move(mean), std::move(cov)};
}

/// Reduced state on `keep`, in the given order.
inline GaussianState partial_trace(const GaussianState& s, std::span<const std::size_t> keep) {
  detail::require(!keep.empty(), "partial_trace: empty keep set");
  const auto n = static_cast<Eigen::Index>(keep.size());
  std::vector<Eigen::Index> idx;
  idx.reserve(2 * keep.size());
  for (auto k : keep) {
    detail::require(k < s.num_modes(), "partial_trace: mode index out of range");
    idx.push_back(static_cast<Eigen::Index>(2 * k));
    idx.push_back(static_cast<Eigen::Index>(2 * k + 1));
  }
  Vector mean(2 * n);
  Matrix cov(2 * n, 2 * n);
  for (Eigen::Index a = 0; a < 2 * n; ++a) {
    mean(a) = s.mean()(idx[a]);
    for (Eigen::Index b = 0; b < 2 * n; ++b) cov(a, b) = s.cov()(idx[a], idx[b]);
  }
  return {std::move(mean), std::move(cov)};
}

inline GaussianState displace(const GaussianState& s, std::size_t mode, double dx, double dp) {
  detail::require(mode < s.num_modes(), "displace: mode index out of range");
  Vector mean = s.mean();
  mean(2 * mode) += dx;
  mean(2 * mode + 1) += dp;
  return {std::move(mean), s.cov()};
}

/// Mean and variance of the scalar observable row . xi.
struct ScalarStats {
  double mean;
  double var;
};

inline ScalarStats observable_stats(const GaussianState& s, const Vector& row) {
  detail::require(row.size() == s.mean().size(), "observable_stats: coefficient length mismatch");
  return {row.dot(s.mean()), row.dot(s.cov() * row)};
}

struct LinearFormStats {
  double mean_x;
  double var_x;
  double mean_p;
  double var_p;
};

/// Statistics of sum_i c_i x_i and sum_i d_i p_i.
inline LinearFormStats linear_form_stats(const GaussianState& s, std::span<const double> xcoeffs,
                                         std::span<const double> pcoeffs) {
  const std::size_t n = s.num_modes();
  detail::require(xcoeffs.size() == n && pcoeffs.size() == n,
                  "linear_form_stats: coefficient vectors must have one entry per mode");
  Vector rx = Vector::Zero(2 * n);
  Vector rp = Vector::Zero(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    rx(2 * k) = xcoeffs[k];
    rp(2 * k + 1) = pcoeffs[k];
  }
  const auto sx = observable_stats(s, rx);
  const auto sp = observable_stats(s, rp);
  return {sx.mean, sx.var, sp.mean, sp.var};
}

/// Var(x_i - x_j) + Var(p_i + p_j). Two-mode vacuum gives 4.
inline double duan_zeta(const GaussianState& s, std::size_t i, std::size_t j) {
  const std::size_t n = s.num_modes();
  detail::require(i < n && j < n && i != j, "duan_zeta: need two distinct valid modes");
  std::vector<double> cx(n, 0.0), cp(n, 0.0);
  cx[i] = 1.0;
  cx[j] = -1.0;
  cp[i] = 1.0;
  cp[j] = 1.0;
  const auto st = linear_form_stats(s, cx, cp);
  return st.var_x + st.var_p;
}

/// Smallest symplectic eigenvalue of the partially transposed two-mode
/// covariance (vacuum gives 1).
inline double pt_symplectic_eigenvalue(const GaussianState& s) {
  detail::require(s.num_modes() == 2, "pt_symplectic_eigenvalue: two-mode state required");
  const Matrix& v = s.cov();
  const double det_a = v.block<2, 2>(0, 0).determinant();
  const double det_b = v.block<2, 2>(2, 2).determinant();
  const double det_c = v.block<2, 2>(0, 2).determinant();
  const double delta = det_a + det_b - 2.0 * det_c;
  const double disc = std::max(0.0, delta * delta - 4.0 * v.determinant());
  return std::sqrt(std::max(0.0, 0.5 * (delta - std::sqrt(disc))));
}

/// max(0, -log2 of the smallest PT symplectic eigenvalue).
inline double log_negativity(const GaussianState& s) {
  detail::require(s.num_modes() == 2, "log_negativity: two-mode state required");
  return std::max(0.0, -std::log2(pt_symplectic_eigenvalue(s)));
}

/// Tr[rho sigma] for Gaussian rho, sigma.
inline double gaussian_overlap(const GaussianState& a, const GaussianState& b) {
  detail::require(a.num_modes() == b.num_modes(), "gaussian_overlap: mode counts differ");
  const Matrix sum = a.cov() + b.cov();
  const Eigen::LLT<Matrix> llt(sum);
  detail::require(llt.info() == Eigen::Success, "gaussian_overlap: singular covariance sum");
  const Vector delta = a.mean() - b.mean();
  const double quad = delta.dot(llt.solve(delta));
  const double det = sum.determinant();
  return std::pow(2.0, static_cast<double>(a.num_modes())) * std::exp(-0.5 * quad) /
         std::sqrt(det);
}

}  // namespace teleclone
