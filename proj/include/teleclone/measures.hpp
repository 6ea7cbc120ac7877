#pragma once

// Nonclassicality measure, fidelity bounds and closed-form entanglement
// references for the two-clone networks.

#include "teleclone/phase_space.hpp"
#include "teleclone/states.hpp"

namespace teleclone {

struct QReport {
  double zeta;                 // Var(x_h - x_C) + Var(p_h + p_C), vacuum-1 units
  double q;                    // 1 - zeta / 4
  double classical_threshold;
};

/// Duan sum 4 (two-mode vacuum) maps to q = 0.
inline double q_from_zeta(double zeta) { return 1.0 - zeta / 4.0; }

/// EPR variance sum between two linear mode combinations of a network state.
/// `h` and `c` hold one real coefficient per network mode, applied to both quadratures.
inline double zeta_between(const GaussianState& network, const Vector& h, const Vector& c) {
  const auto n = static_cast<Eigen::Index>(network.num_modes());
  detail::require(h.size() == n && c.size() == n, "zeta_between: combination length mismatch");
  Vector rx = Vector::Zero(2 * n);
  Vector rp = Vector::Zero(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    rx(2 * k) = h(k) - c(k);
    rp(2 * k + 1) = h(k) + c(k);
  }
  return observable_stats(network, rx).var + observable_stats(network, rp).var;
}

inline QReport q_measure(const GaussianState& network, const Vector& h, const Vector& c,
                         double classical_threshold = 0.5) {
  const double zeta = zeta_between(network, h, c);
  return {zeta, q_from_zeta(zeta), classical_threshold};
}

/// Lower bound on the clone fidelity implied by q; exact when the clone noise is
/// symmetric in x and p and the input is coherent.
inline double prop1_bound(double q) {
  detail::require(q <= 1.0, "prop1_bound: q must not exceed 1");
  return 1.0 / (2.0 - q);
}

struct FidelityBracket {
  double lower;
  double upper;
};

/// Bracket 2/sqrt(7 - 2q) <= F <= 2/sqrt(6 - 2q) with q read in quarter-vacuum
/// units. Diagnostic only: it is not invariant under the choice of units.
inline FidelityBracket prop1_bracket(double q) {
  detail::require(q <= 3.0, "prop1_bracket: q out of range");
  return {2.0 / std::sqrt(7.0 - 2.0 * q), 2.0 / std::sqrt(6.0 - 2.0 * q)};
}

/// Measure-and-prepare benchmark: 1/2 for coherent inputs, 1/(2 cosh s) for
/// squeezed inputs (the zero-entanglement limit of the unit-gain network).
inline double classical_threshold(const InputSpec& in) {
  if (in.kind == InputSpec::Kind::coherent) return 0.5;
  return 1.0 / (2.0 * std::cosh(in.s));
}

/// nu(r) of the closed-form sender/clone logarithmic negativity.
inline double eln_nu_closed_form(double r) {
  detail::require(r >= 0.0, "eln_closed_form: r must be non-negative");
  const double d = std::sinh(r) - 3.0 * std::sinh(3.0 * r);
  return (3.0 + 4.0 * std::cosh(2.0 * r) + 9.0 * std::cosh(4.0 * r) -
          std::sqrt(2.0 * d * d * (9.0 * std::cosh(2.0 * r) + 7.0))) /
         16.0;
}

inline double eln_closed_form(double r) { return -std::log2(eln_nu_closed_form(r)); }

/// Genuine multimode entanglement of the irreversible TMSV network.
inline double ggm_closed_form(double r) {
  detail::require(r >= 0.0, "ggm_closed_form: r must be non-negative");
  const double c = std::cosh(r);
  return 1.0 - 2.0 / (1.0 + c * c);
}

}  // namespace teleclone
