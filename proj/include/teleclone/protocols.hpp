#pragma once

// Unit-gain telecloning networks.
//
// Every network is a list of modes (input first) plus real mode combinations
// for the homodyne mode h, the clone modes C_k and, for the reversible
// scheme, the anticlone mode aC. After homodyning (in, h) and unit-gain feed
// forward the output quadratures are
//
//   x_Ck' = x_Ck + x_in - x_h,      p_Ck' = p_Ck + p_in + p_h,
//   x_aC' = x_aC + x_in - x_h,      p_aC' = p_aC - p_in - p_h,
//
// so averaging over measurement outcomes is a fixed linear map on the joint
// phase space, applied identically to Gaussian covariances and to Wigner
// quasi-distributions.

#include "teleclone/measures.hpp"
#include "teleclone/phase_space.hpp"
#include "teleclone/states.hpp"
#include "teleclone/wigner.hpp"

#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace teleclone {

enum class Scheme { irreversible, reversible };
enum class Variant { irreversible, reversible, asymmetric };

struct ProtocolSpec {
  Scheme scheme = Scheme::irreversible;
  std::size_t num_clones = 2;  // symmetric networks only
  double epsilon = 0.0;        // squeezing of the splitting ancillas
  SqueezeAxis ancilla_axis = SqueezeAxis::x;
  bool squeeze_sender_vacuum = true;  // reversible: vS squeezed by epsilon as well
  std::vector<double> taus;    // non-empty selects the asymmetric chain network

  Variant variant() const {
    if (!taus.empty()) return Variant::asymmetric;
    return scheme == Scheme::irreversible ? Variant::irreversible : Variant::reversible;
  }

  static ProtocolSpec irreversible(double eps = 0.0) { return {Scheme::irreversible, 2, eps}; }
  static ProtocolSpec reversible(double eps = 0.0) { return {Scheme::reversible, 2, eps}; }
  static ProtocolSpec asymmetric(std::vector<double> taus, Scheme scheme = Scheme::irreversible) {
    ProtocolSpec p{scheme, taus.size(), 0.0, SqueezeAxis::x, true};
    p.taus = std::move(taus);
    return p;
  }
};

inline std::string scheme_name(Scheme s) {
  return s == Scheme::irreversible ? "irreversible" : "reversible";
}

inline Scheme parse_scheme(std::string_view text) {
  if (text == "irreversible") return Scheme::irreversible;
  if (text == "reversible") return Scheme::reversible;
  throw Error("unknown protocol '" + std::string(text) + "'");
}

struct NetworkModes {
  std::vector<std::string> names;  // one per network mode; names[0] == "in"
  std::size_t resource_first = 1;  // resource modes are contiguous from here
  std::size_t resource_modes = 2;
  std::vector<std::size_t> squeezed_ancillas;  // vacuum modes squeezed by epsilon
  std::optional<std::size_t> sender_vacuum;    // vS
  Vector h;
  std::vector<Vector> clones;
  std::optional<Vector> anticlone;

  std::size_t num_modes() const { return names.size(); }
};

/// Mode layout: in, S, R, vR_1..vR_{M-1}, [vS] for symmetric networks;
/// in, 1..N, N+1 (= sender), [vS] for the asymmetric chain.
///
/// The M symmetric clones come from a left-deep splitter tree on R: splitter k
/// (transmissivity 1/(M-k+1)) sends the remaining branch and vR_k into clone k
/// and the continuing branch. For M = 2 this is C_1,2 = (R +- vR)/sqrt 2.
inline NetworkModes network_modes(const ProtocolSpec& p) {
  NetworkModes net;
  const bool reversible = p.scheme == Scheme::reversible;
  net.names.push_back("in");
  if (p.variant() == Variant::asymmetric) {
    const std::size_t n = p.taus.size();
    for (std::size_t k = 1; k <= n; ++k) net.names.push_back("C" + std::to_string(k));
    net.names.push_back("S");
    net.resource_first = 1;
    net.resource_modes = n + 1;
    if (reversible) {
      net.sender_vacuum = net.names.size();
      net.names.push_back("vS");
    }
    const auto total = static_cast<Eigen::Index>(net.names.size());
    const auto sender = static_cast<Eigen::Index>(n + 1);
    net.h = Vector::Zero(total);
    for (std::size_t k = 1; k <= n; ++k) {
      Vector c = Vector::Zero(total);
      c(static_cast<Eigen::Index>(k)) = 1.0;
      net.clones.push_back(c);
    }
    if (reversible) {
      const auto vs = static_cast<Eigen::Index>(*net.sender_vacuum);
      net.h(sender) = net.h(vs) = std::numbers::sqrt2 / 2.0;
      Vector ac = Vector::Zero(total);
      ac(sender) = std::numbers::sqrt2 / 2.0;
      ac(vs) = -std::numbers::sqrt2 / 2.0;
      net.anticlone = ac;
    } else {
      net.h(sender) = 1.0;
    }
    return net;
  }

  detail::require(p.num_clones >= 2, "network_modes: need at least two clones");
  const std::size_t m = p.num_clones;
  net.names.push_back("S");
  net.names.push_back("R");
  net.resource_first = 1;
  net.resource_modes = 2;
  for (std::size_t k = 1; k < m; ++k) {
    net.squeezed_ancillas.push_back(net.names.size());
    net.names.push_back("vR" + std::to_string(k));
  }
  if (reversible) {
    net.sender_vacuum = net.names.size();
    net.names.push_back("vS");
  }
  const auto total = static_cast<Eigen::Index>(net.names.size());

  // Real beam-splitter algebra on mode combinations.
  Vector branch = Vector::Zero(total);
  branch(2) = 1.0;
  for (std::size_t k = 1; k < m; ++k) {
    const double tau = 1.0 / static_cast<double>(m - k + 1);
    Vector anc = Vector::Zero(total);
    anc(static_cast<Eigen::Index>(net.squeezed_ancillas[k - 1])) = 1.0;
    net.clones.push_back(std::sqrt(tau) * branch + std::sqrt(1.0 - tau) * anc);
    branch = std::sqrt(1.0 - tau) * branch - std::sqrt(tau) * anc;
  }
  net.clones.push_back(branch);

  net.h = Vector::Zero(total);
  if (reversible) {
    const auto vs = static_cast<Eigen::Index>(*net.sender_vacuum);
    net.h(1) = net.h(vs) = std::numbers::sqrt2 / 2.0;
    Vector ac = Vector::Zero(total);
    ac(1) = std::numbers::sqrt2 / 2.0;
    ac(vs) = -std::numbers::sqrt2 / 2.0;
    net.anticlone = ac;
  } else {
    net.h(1) = 1.0;
  }
  return net;
}

/// 2 x 2n map from the joint phase space to a clone's output quadratures.
inline Matrix clone_output_map(const NetworkModes& net, const Vector& clone) {
  const auto n = static_cast<Eigen::Index>(net.num_modes());
  Matrix a = Matrix::Zero(2, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    a(0, 2 * k) = clone(k) - net.h(k);
    a(1, 2 * k + 1) = clone(k) + net.h(k);
  }
  a(0, 0) += 1.0;
  a(1, 1) += 1.0;
  return a;
}

inline Matrix anticlone_output_map(const NetworkModes& net) {
  detail::require(net.anticlone.has_value(), "anticlone_output_map: network has no anticlone");
  const auto n = static_cast<Eigen::Index>(net.num_modes());
  Matrix a = Matrix::Zero(2, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    a(0, 2 * k) = (*net.anticlone)(k) - net.h(k);
    a(1, 2 * k + 1) = (*net.anticlone)(k) - net.h(k);
  }
  a(0, 0) += 1.0;
  a(1, 1) -= 1.0;
  return a;
}

/// The state an ideal anticlone approximates: p -> -p.
inline GaussianState phase_conjugate(const GaussianState& s) {
  detail::require(s.num_modes() == 1, "phase_conjugate: single-mode state expected");
  Matrix flip = Matrix::Identity(2, 2);
  flip(1, 1) = -1.0;
  return {flip * s.mean(), flip * s.cov() * flip};
}

inline GaussianState sender_vacuum_state(const ProtocolSpec& p) {
  return p.squeeze_sender_vacuum ? squeezed_vacuum(p.epsilon, p.ancilla_axis) : vacuum_state(1);
}

/// Joint Gaussian state in the layout of network_modes(p).
inline GaussianState network_state(const GaussianState& resource, const GaussianState& input,
                                   const ProtocolSpec& p) {
  const NetworkModes net = network_modes(p);
  detail::require(resource.num_modes() == net.resource_modes,
                  "network_state: resource mode count does not match the network");
  GaussianState s = tensor(input, resource);
  for (std::size_t k = 0; k < net.squeezed_ancillas.size(); ++k)
    s = tensor(s, squeezed_vacuum(p.epsilon, p.ancilla_axis));
  if (net.sender_vacuum) s = tensor(s, sender_vacuum_state(p));
  return s;
}

inline PolyGaussian network_distribution(const PolyGaussian& resource, const GaussianState& input,
                                         const ProtocolSpec& p) {
  const NetworkModes net = network_modes(p);
  detail::require(resource.num_modes() == net.resource_modes,
                  "network_distribution: resource mode count does not match the network");
  PolyGaussian w = tensor(lift_gaussian(input), resource);
  for (std::size_t k = 0; k < net.squeezed_ancillas.size(); ++k)
    w = tensor(w, lift_gaussian(squeezed_vacuum(p.epsilon, p.ancilla_axis)));
  if (net.sender_vacuum) w = tensor(w, lift_gaussian(sender_vacuum_state(p)));
  return w;
}

struct CloneEntry {
  double fidelity = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
  double q = 0.0;
  double zeta = 0.0;
};

struct CloneReport {
  std::vector<CloneEntry> clones;
  std::optional<CloneEntry> anticlone;  // q and zeta are not defined for it (NaN)
  std::optional<double> herald_weight;
  double classical_threshold = 0.5;
};

namespace detail {

inline std::vector<QReport> q_reports(const GaussianState& network, const NetworkModes& net,
                                      double threshold) {
  std::vector<QReport> out;
  for (const auto& c : net.clones) out.push_back(q_measure(network, net.h, c, threshold));
  return out;
}

inline CloneEntry anticlone_entry(double fidelity, double var_x, double var_p) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {fidelity, var_x, var_p, nan, nan};
}

}  // namespace detail

/// Output clone state of clone k for a Gaussian resource.
inline GaussianState clone_state_gaussian(const GaussianState& resource, const InputSpec& input,
                                          const ProtocolSpec& p, std::size_t k = 0) {
  const NetworkModes net = network_modes(p);
  detail::require(k < net.clones.size(), "clone_state_gaussian: clone index out of range");
  const GaussianState joint = network_state(resource, input.state(), p);
  const Matrix a = clone_output_map(net, net.clones[k]);
  return apply_symplectic(joint, SymplecticMap{a, Vector::Zero(2)});
}

struct CloneVariances {
  double var_x;
  double var_p;
};

inline CloneVariances clone_moments_gaussian(const GaussianState& resource, const InputSpec& input,
                                             const ProtocolSpec& p, std::size_t k = 0) {
  detail::require(p.variant() == Variant::asymmetric || resource.num_modes() == 2,
                  "clone_moments_gaussian: two-mode resource required");
  const GaussianState c = clone_state_gaussian(resource, input, p, k);
  return {c.cov()(0, 0), c.cov()(1, 1)};
}

/// Fidelity of the anticlone against the phase-conjugated input. The
/// anticlone quadratures contain no resource modes, so any resource gives
/// the same value; the vacuum stands in here.
inline double anticlone_fidelity(const InputSpec& input, const ProtocolSpec& p) {
  detail::require(p.scheme == Scheme::reversible, "anticlone_fidelity: reversible scheme required");
  const NetworkModes net = network_modes(p);
  const GaussianState joint = network_state(vacuum_state(net.resource_modes), input.state(), p);
  const GaussianState ac =
      apply_symplectic(joint, SymplecticMap{anticlone_output_map(net), Vector::Zero(2)});
  return gaussian_overlap(phase_conjugate(input.state()), ac);
}

inline CloneReport fidelity_gaussian(const GaussianState& resource, const InputSpec& input,
                                     const ProtocolSpec& p) {
  const NetworkModes net = network_modes(p);
  const GaussianState in = input.state();
  const GaussianState joint = network_state(resource, in, p);
  CloneReport report;
  report.classical_threshold = classical_threshold(input);
  const auto qs = detail::q_reports(joint, net, report.classical_threshold);
  for (std::size_t k = 0; k < net.clones.size(); ++k) {
    const GaussianState c =
        apply_symplectic(joint, SymplecticMap{clone_output_map(net, net.clones[k]), Vector::Zero(2)});
    report.clones.push_back(
        {gaussian_overlap(in, c), c.cov()(0, 0), c.cov()(1, 1), qs[k].q, qs[k].zeta});
  }
  if (net.anticlone) {
    const GaussianState ac =
        apply_symplectic(joint, SymplecticMap{anticlone_output_map(net), Vector::Zero(2)});
    report.anticlone = detail::anticlone_entry(gaussian_overlap(phase_conjugate(in), ac),
                                               ac.cov()(0, 0), ac.cov()(1, 1));
  }
  return report;
}

/// Gaussian state with the first and second moments of a quasi-distribution.
inline GaussianState moment_matched(const PolyGaussian& w) {
  const PhaseSpaceMoments m = second_moments(w);
  return {m.mean, m.cov};
}

/// Clone fidelities by pushing the joint Wigner quasi-distribution through the
/// unit-gain output maps and overlapping with the input.
inline CloneReport teleclone_wigner(const PolyGaussian& resource, const InputSpec& input,
                                    const ProtocolSpec& p) {
  const NetworkModes net = network_modes(p);
  const GaussianState in = input.state();
  const PolyGaussian joint = network_distribution(resource, in, p);
  const PolyGaussian in_w = lift_gaussian(in);

  CloneReport report;
  report.classical_threshold = classical_threshold(input);
  const GaussianState matched = network_state(moment_matched(resource), in, p);
  const auto qs = detail::q_reports(matched, net, report.classical_threshold);
  for (std::size_t k = 0; k < net.clones.size(); ++k) {
    const PolyGaussian c =
        linear_pushforward(joint, clone_output_map(net, net.clones[k]), Vector::Zero(2));
    const PhaseSpaceMoments mom = second_moments(c);
    report.clones.push_back({overlap(in_w, c), mom.cov(0, 0), mom.cov(1, 1), qs[k].q, qs[k].zeta});
  }
  if (net.anticlone) {
    const PolyGaussian ac = linear_pushforward(joint, anticlone_output_map(net), Vector::Zero(2));
    const PhaseSpaceMoments mom = second_moments(ac);
    report.anticlone = detail::anticlone_entry(overlap(lift_gaussian(phase_conjugate(in)), ac),
                                               mom.cov(0, 0), mom.cov(1, 1));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Asymmetric chain network

/// Second moments of clone mode m and sender mode N+1 (zero means).
struct AsymmetricMoments {
  double x_mm, x_ss, x_sm;
  double p_mm, p_ss, p_sm;
};

enum class ClosedForm {
  corrected,  // agrees with the covariance simulation
  published,  // odd-m terms exactly as originally tabulated (diagnostic only)
};

namespace detail {

/// sum_{i = 1, 3, ...}^{sum_hi} tau_i prod_{j = i+1}^{prod_hi} (1 - tau_j), 1-based.
inline double chain_sum(std::span<const double> taus, int sum_hi, int prod_hi) {
  double total = 0.0;
  for (int i = 1; i <= sum_hi; i += 2) {
    double term = taus[static_cast<std::size_t>(i - 1)];
    for (int j = i + 1; j <= prod_hi; ++j) term *= 1.0 - taus[static_cast<std::size_t>(j - 1)];
    total += term;
  }
  return total;
}

struct ChainTerms {
  double mm, ss, sm;
};

/// Closed-form entries for x; p follows from r -> -r.
inline ChainTerms chain_terms(double r, std::span<const double> taus, int m, ClosedForm form) {
  const int n = static_cast<int>(taus.size());
  auto tau = [&](int i) { return taus[static_cast<std::size_t>(i - 1)]; };
  const double sh2 = 2.0 * std::sinh(2.0 * r);
  ChainTerms t{};
  if (m % 2 == 0) {
    const int k = m / 2;
    const double s = chain_sum(taus, 2 * k - 1, 2 * k - 1);
    double tail = 1.0;
    for (int l = 2 * k; l <= n; ++l) tail *= std::sqrt(1.0 - tau(l));
    t.mm = std::exp(2.0 * r) - sh2 * s * tau(2 * k);
    t.sm = -sh2 * std::sqrt(tau(2 * k)) * s * tail;
  } else {
    const int k = (m + 1) / 2;
    const double a = 1.0 - chain_sum(taus, 2 * k - 3, 2 * k - 2);
    const double t_m = tau(2 * k - 1);
    double tail = 1.0;
    if (form == ClosedForm::corrected) {
      for (int l = 2 * k; l <= n; ++l) tail *= std::sqrt(1.0 - tau(l));
      t.mm = std::exp(-2.0 * r) + sh2 * a * t_m;
      t.sm = a * tail * sh2 * std::sqrt(t_m * (1.0 - t_m));
    } else {
      for (int l = 2 * k; l <= n; ++l) tail *= std::sqrt(tau(l));
      t.mm = std::exp(2.0 * r) + sh2 * a * t_m;
      t.sm = a * tail * sh2 * std::sqrt(1.0 - t_m);
    }
  }
  if (n % 2 == 0) {
    const int k = n / 2;
    t.ss = std::exp(2.0 * r) - sh2 * chain_sum(taus, 2 * k - 1, 2 * k);
  } else {
    const int k = (n + 1) / 2;
    t.ss = std::exp(2.0 * r) - sh2 * chain_sum(taus, 2 * k - 1, 2 * k - 1);
  }
  return t;
}

inline void check_chain_args(double r, std::span<const double> taus, std::size_t m) {
  require(!taus.empty(), "asymmetric moments: need at least one transmissivity");
  require(std::isfinite(r), "asymmetric moments: r must be finite");
  require(m >= 1 && m <= taus.size(), "asymmetric moments: clone index must be in 1..N");
  for (double t : taus) require(t >= 0.0 && t <= 1.0, "asymmetric moments: tau outside [0, 1]");
}

}  // namespace detail

/// Closed-form clone/sender moments for clone mode m (1-based).
inline AsymmetricMoments asymmetric_clone_moments_closed(double r, std::span<const double> taus,
                                                         std::size_t m,
                                                         ClosedForm form = ClosedForm::corrected) {
  detail::check_chain_args(r, taus, m);
  const auto x = detail::chain_terms(r, taus, static_cast<int>(m), form);
  const auto p = detail::chain_terms(-r, taus, static_cast<int>(m), form);
  return {x.mm, x.ss, x.sm, p.mm, p.ss, p.sm};
}

/// Same quantities read off the simulated N+1 mode covariance.
inline AsymmetricMoments asymmetric_clone_moments_sim(double r, std::span<const double> taus,
                                                      std::size_t m) {
  detail::check_chain_args(r, taus, m);
  const GaussianState s = asymmetric_resource(r, taus);
  const auto& v = s.cov();
  const auto i = static_cast<Eigen::Index>(2 * (m - 1));
  const auto j = static_cast<Eigen::Index>(2 * taus.size());
  return {v(i, i), v(j, j), v(j, i), v(i + 1, i + 1), v(j + 1, j + 1), v(j + 1, i + 1)};
}

/// Clone m from the sender/clone moments alone:
///   Var x = <x_m^2> + Var x_in + <x_h^2> - 2 <x_m x_h>,
///   Var p = <p_m^2> + Var p_in + <p_h^2> + 2 <p_m p_h>,
/// with x_h = (x_{N+1} + x_vS)/sqrt 2 for the reversible scheme.
inline CloneEntry asymmetric_entry_from_moments(const AsymmetricMoments& mo, Scheme scheme,
                                                const InputSpec& input) {
  const bool rev = scheme == Scheme::reversible;
  const double g = rev ? std::numbers::sqrt2 / 2.0 : 1.0;
  const double x_hh = rev ? 0.5 * (mo.x_ss + 1.0) : mo.x_ss;
  const double p_hh = rev ? 0.5 * (mo.p_ss + 1.0) : mo.p_ss;
  const double x_hm = g * mo.x_sm;
  const double p_hm = g * mo.p_sm;
  const GaussianState in = input.state();
  const double var_x = mo.x_mm + in.cov()(0, 0) + x_hh - 2.0 * x_hm;
  const double var_p = mo.p_mm + in.cov()(1, 1) + p_hh + 2.0 * p_hm;
  Matrix cov = Matrix::Zero(2, 2);
  cov(0, 0) = var_x;
  cov(1, 1) = var_p;
  const double zeta = (x_hh + mo.x_mm - 2.0 * x_hm) + (p_hh + mo.p_mm + 2.0 * p_hm);
  return {gaussian_overlap(in, GaussianState(in.mean(), cov)), var_x, var_p, q_from_zeta(zeta),
          zeta};
}

inline CloneEntry asymmetric_fidelity_closed(double r, std::span<const double> taus, Scheme scheme,
                                             std::size_t m,
                                             const InputSpec& input = InputSpec::coherent_state()) {
  return asymmetric_entry_from_moments(asymmetric_clone_moments_closed(r, taus, m), scheme, input);
}

/// Clone m (1-based) of the asymmetric network through the full covariance pipeline.
inline CloneEntry asymmetric_fidelity(double r, std::span<const double> taus, Scheme scheme,
                                      std::size_t m,
                                      const InputSpec& input = InputSpec::coherent_state()) {
  detail::check_chain_args(r, taus, m);
  const ProtocolSpec p = ProtocolSpec::asymmetric({taus.begin(), taus.end()}, scheme);
  const CloneReport rep = fidelity_gaussian(asymmetric_resource(r, taus), input, p);
  return rep.clones[m - 1];
}

}  // namespace teleclone
