#pragma once

// Truncated Fock-space reference implementation for pure multimode states.
// Used only to cross-check the phase-space engine.

#include "teleclone/phase_space.hpp"
#include "teleclone/polynomial.hpp"
#include "teleclone/wigner.hpp"

#include <complex>
#include <vector>

namespace teleclone::oracle {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr int kDefaultCutoff = 40;
inline constexpr double kTruncationTolerance = 1e-10;

/// Pure state with photon numbers 0..cutoff in each mode; mode 0 is the most
/// significant index.
class FockState {
 public:
  FockState(std::size_t num_modes, int cutoff, CVector amplitudes)
      : num_modes_(num_modes), cutoff_(cutoff), amps_(std::move(amplitudes)) {
    detail::require(num_modes_ >= 1, "FockState: need at least one mode");
    detail::require(cutoff_ >= 1, "FockState: cutoff must be positive");
    detail::require(amps_.size() == static_cast<Eigen::Index>(dimension()),
                    "FockState: amplitude count does not match cutoff");
  }

  std::size_t num_modes() const { return num_modes_; }
  int cutoff() const { return cutoff_; }
  std::size_t levels() const { return static_cast<std::size_t>(cutoff_) + 1; }
  std::size_t dimension() const {
    std::size_t d = 1;
    for (std::size_t k = 0; k < num_modes_; ++k) d *= levels();
    return d;
  }
  const CVector& amplitudes() const { return amps_; }
  double norm() const { return amps_.norm(); }

  std::size_t index(std::span<const int> photons) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < num_modes_; ++k) idx = idx * levels() + static_cast<std::size_t>(photons[k]);
    return idx;
  }

 private:
  std::size_t num_modes_;
  int cutoff_;
  CVector amps_;
};

namespace detail {

using teleclone::detail::require;

inline CMatrix annihilation(int cutoff) {
  const auto d = static_cast<Eigen::Index>(cutoff + 1);
  CMatrix a = CMatrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

/// x = a + a^dag, p = -i (a - a^dag).
inline CMatrix quadrature_x(int cutoff) {
  const CMatrix a = annihilation(cutoff);
  return a + a.adjoint();
}
inline CMatrix quadrature_p(int cutoff) {
  const CMatrix a = annihilation(cutoff);
  return std::complex<double>(0.0, -1.0) * (a - a.adjoint());
}

/// Apply a single-mode operator to one mode of a multimode amplitude vector.
inline CVector apply_mode(const FockState& s, const CMatrix& op, std::size_t mode) {
  const std::size_t d = s.levels();
  std::size_t outer = 1;
  for (std::size_t k = 0; k < mode; ++k) outer *= d;
  std::size_t inner = 1;
  for (std::size_t k = mode + 1; k < s.num_modes(); ++k) inner *= d;
  const CVector& in = s.amplitudes();
  CVector out = CVector::Zero(in.size());
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t i = 0; i < inner; ++i)
      for (std::size_t row = 0; row < d; ++row) {
        std::complex<double> acc = 0.0;
        for (std::size_t col = 0; col < d; ++col) {
          const auto v = op(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
          if (v != 0.0) acc += v * in(static_cast<Eigen::Index>((o * d + col) * inner + i));
        }
        out(static_cast<Eigen::Index>((o * d + row) * inner + i)) = acc;
      }
  return out;
}

/// Weyl-symmetrised x^k p^l: average of all distinct orderings.
inline CMatrix symmetrized_monomial(int cutoff, int kx, int kp) {
  const CMatrix x = quadrature_x(cutoff);
  const CMatrix p = quadrature_p(cutoff);
  const auto d = static_cast<Eigen::Index>(cutoff + 1);
  CMatrix total = CMatrix::Zero(d, d);
  int count = 0;
  // Enumerate placements of kx x's among kx + kp slots.
  const int n = kx + kp;
  std::vector<int> slots(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < kx; ++i) slots[static_cast<std::size_t>(n - 1 - i)] = 1;
  do {
    CMatrix prod = CMatrix::Identity(d, d);
    for (int s : slots) prod = prod * (s ? x : p);
    total += prod;
    ++count;
  } while (std::next_permutation(slots.begin(), slots.end()));
  return total / static_cast<double>(count);
}

}  // namespace detail

inline FockState fock_vacuum(std::size_t num_modes, int cutoff = kDefaultCutoff) {
  teleclone::detail::require(num_modes >= 1 && cutoff >= 1, "fock_vacuum: bad dimensions");
  std::size_t dim = 1;
  for (std::size_t k = 0; k < num_modes; ++k) dim *= static_cast<std::size_t>(cutoff) + 1;
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v(0) = 1.0;
  return {num_modes, cutoff, v};
}

/// Single-mode number state |n>.
inline FockState fock_number(int n, int cutoff = kDefaultCutoff) {
  teleclone::detail::require(n >= 0 && n <= cutoff, "fock_number: n outside 0..cutoff");
  CVector v = CVector::Zero(cutoff + 1);
  v(n) = 1.0;
  return {1, cutoff, v};
}

/// sech r sum_n tanh^n r |n, n>, mode 0 = S, mode 1 = R.
inline FockState fock_tmsv(double r, int cutoff = kDefaultCutoff) {
  teleclone::detail::require(cutoff >= 10, "fock_tmsv: cutoff must be at least 10");
  teleclone::detail::require(r >= 0.0 && std::isfinite(r), "fock_tmsv: r must be finite and non-negative");
  const auto d = static_cast<Eigen::Index>(cutoff + 1);
  CVector v = CVector::Zero(d * d);
  const double t = std::tanh(r);
  double amp = 1.0 / std::cosh(r);
  for (Eigen::Index n = 0; n < d; ++n) {
    v(n * d + n) = amp;
    amp *= t;
  }
  const double deficit = 1.0 - v.squaredNorm();
  teleclone::detail::require(deficit <= 1e-6, "fock_tmsv: cutoff too small for this squeezing");
  return {2, cutoff, v};
}

struct FockLadderResult {
  FockState state;  // normalised
  double weight;    // squared norm after the operator
};

/// a|psi> (subtract) or a^dag|psi> (add) on one mode, renormalised.
inline FockLadderResult fock_ladder(const FockState& s, std::size_t mode, Ladder kind) {
  teleclone::detail::require(mode < s.num_modes(), "fock_ladder: mode index out of range");
  if (kind == Ladder::add) {
    // The highest level would be lost by truncation.
    const std::size_t d = s.levels();
    double top = 0.0;
    for (std::size_t idx = 0; idx < s.dimension(); ++idx) {
      std::size_t rest = idx;
      for (std::size_t k = s.num_modes() - 1; k > mode; --k) rest /= d;
      if (rest % d == d - 1) top += std::norm(s.amplitudes()(static_cast<Eigen::Index>(idx)));
    }
    teleclone::detail::require(top <= kTruncationTolerance,
                               "fock_ladder: truncation guard tripped (raise the cutoff)");
  }
  const CMatrix a = detail::annihilation(s.cutoff());
  CVector out = detail::apply_mode(s, kind == Ladder::subtract ? a : CMatrix(a.adjoint()), mode);
  const double weight = out.squaredNorm() / s.amplitudes().squaredNorm();
  teleclone::detail::require(weight > 1e-12, "fock_ladder: zero weight (operator annihilates the state)");
  out /= out.norm();
  return {FockState(s.num_modes(), s.cutoff(), std::move(out)), weight};
}

/// Expectation of the Weyl-ordered quadrature monomial; exponents ordered
/// (x1, p1, ..., xN, pN). Equals the corresponding Wigner moment.
inline double fock_moment(const FockState& s, const Monomial& m) {
  teleclone::detail::require(m.num_vars() == 2 * s.num_modes(), "fock_moment: monomial arity mismatch");
  FockState work = s;
  for (std::size_t k = 0; k < s.num_modes(); ++k) {
    const int kx = m[2 * k];
    const int kp = m[2 * k + 1];
    if (kx + kp == 0) continue;
    const CMatrix op = detail::symmetrized_monomial(s.cutoff(), kx, kp);
    work = FockState(s.num_modes(), s.cutoff(), detail::apply_mode(work, op, k));
  }
  return s.amplitudes().dot(work.amplitudes()).real() / s.amplitudes().squaredNorm();
}

/// |<a|b>|^2 for normalised states.
inline double fock_overlap(const FockState& a, const FockState& b) {
  teleclone::detail::require(a.num_modes() == b.num_modes() && a.cutoff() == b.cutoff(),
                             "fock_overlap: states live in different spaces");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

inline double fock_mean_photons(const FockState& s, std::size_t mode) {
  teleclone::detail::require(mode < s.num_modes(), "fock_mean_photons: mode index out of range");
  const CMatrix a = detail::annihilation(s.cutoff());
  const CVector an = detail::apply_mode(s, a, mode);
  return an.squaredNorm() / s.amplitudes().squaredNorm();
}

/// <(-1)^n> on one mode.
inline double fock_parity(const FockState& s, std::size_t mode) {
  const auto d = static_cast<Eigen::Index>(s.levels());
  CMatrix parity = CMatrix::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) parity(n, n) = n % 2 == 0 ? 1.0 : -1.0;
  const CVector out = detail::apply_mode(s, parity, mode);
  return s.amplitudes().dot(out).real() / s.amplitudes().squaredNorm();
}

/// Photon-subtracted/added TMSV built with ladder matrices; n1 acts on R
/// (mode 1), n2 on S (mode 0), matching states::degaussify.
inline FockLadderResult fock_degaussified_tmsv(double r, Ladder kind, int n1, int n2,
                                               int cutoff = kDefaultCutoff) {
  FockState s = fock_tmsv(r, cutoff);
  double weight = 1.0;
  for (auto [mode, count] : {std::pair<std::size_t, int>{1, n1}, {0, n2}})
    for (int k = 0; k < count; ++k) {
      auto step = fock_ladder(s, mode, kind);
      weight *= step.weight;
      s = std::move(step.state);
    }
  return {std::move(s), weight};
}

}  // namespace teleclone::oracle
