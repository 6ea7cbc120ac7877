#pragma once

// Input and resource states.

#include "teleclone/phase_space.hpp"
#include "teleclone/wigner.hpp"

#include <charconv>
#include <complex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace teleclone {

/// Two-mode squeezed vacuum. Mode 0 is the sender's mode S, mode 1 the receivers' mode R.
inline GaussianState tmsv(double r) {
  detail::require(r >= 0.0 && std::isfinite(r), "tmsv: r must be finite and non-negative");
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  Matrix cov(4, 4);
  cov << c, 0, s, 0,
         0, c, 0, -s,
         s, 0, c, 0,
         0, -s, 0, c;
  return {Vector::Zero(4), cov};
}

/// Coherent state |alpha>: mean (2 Re alpha, 2 Im alpha).
inline GaussianState coherent(std::complex<double> alpha) {
  Vector mean(2);
  mean << 2.0 * alpha.real(), 2.0 * alpha.imag();
  return {mean, Matrix::Identity(2, 2)};
}

enum class SqueezeAxis { x, p };

/// Squeezed coherent state; x-squeezed means cov = diag(e^{-2s}, e^{2s}).
inline GaussianState squeezed_input(double s, std::complex<double> alpha,
                                    SqueezeAxis axis = SqueezeAxis::x) {
  detail::require(s >= 0.0 && std::isfinite(s), "squeezed_input: s must be finite and non-negative");
  const double signed_s = axis == SqueezeAxis::x ? s : -s;
  Matrix cov = Matrix::Zero(2, 2);
  cov(0, 0) = std::exp(-2.0 * signed_s);
  cov(1, 1) = std::exp(2.0 * signed_s);
  return {coherent(alpha).mean(), cov};
}

/// Squeezed vacuum used as a splitting ancilla; eps = 0 is the vacuum.
inline GaussianState squeezed_vacuum(double eps, SqueezeAxis axis = SqueezeAxis::x) {
  detail::require(std::isfinite(eps), "squeezed_vacuum: eps must be finite");
  return apply_symplectic(vacuum_state(1), squeezer(1, 0, axis == SqueezeAxis::x ? eps : -eps));
}

struct InputSpec {
  enum class Kind { coherent, squeezed };
  Kind kind = Kind::coherent;
  std::complex<double> alpha{0.0, 0.0};
  double s = 0.0;
  SqueezeAxis axis = SqueezeAxis::x;

  static InputSpec coherent_state(std::complex<double> a = {}) { return {Kind::coherent, a, 0.0}; }
  static InputSpec squeezed(double s, std::complex<double> a = {}, SqueezeAxis ax = SqueezeAxis::x) {
    return {Kind::squeezed, a, s, ax};
  }

  GaussianState state() const {
    return kind == Kind::coherent ? coherent(alpha) : squeezed_input(s, alpha, axis);
  }
};

struct ResourceSpec {
  enum class Family { tmsv, ps, pa, asymmetric };
  Family family = Family::tmsv;
  int n1 = 0;  // operations on R (mode 1)
  int n2 = 0;  // operations on S (mode 0)
  std::vector<double> taus;

  bool is_gaussian() const { return family == Family::tmsv || family == Family::asymmetric; }

  static ResourceSpec tmsv() { return {}; }
  static ResourceSpec ps(int n1, int n2) { return validated({Family::ps, n1, n2, {}}); }
  static ResourceSpec pa(int n1, int n2) { return validated({Family::pa, n1, n2, {}}); }
  static ResourceSpec asymmetric(std::vector<double> taus) {
    return validated({Family::asymmetric, 0, 0, std::move(taus)});
  }

  static ResourceSpec validated(ResourceSpec r) {
    if (r.family == Family::ps || r.family == Family::pa) {
      detail::require(r.n1 >= 0 && r.n2 >= 0, "ResourceSpec: photon numbers must be non-negative");
      detail::require(r.n1 + r.n2 > 0, "ResourceSpec: at least one photon must be added or subtracted");
    }
    if (r.family == Family::asymmetric) {
      detail::require(!r.taus.empty(), "ResourceSpec: asymmetric resource needs at least one tau");
      for (double t : r.taus)
        detail::require(t >= 0.0 && t <= 1.0, "ResourceSpec: tau outside [0, 1]");
    }
    return r;
  }

  std::string label() const;
};

namespace detail {

inline std::vector<double> parse_number_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      require(used == item.size(), std::string(what) + ": bad number '" + item + "'");
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw Error(std::string(what) + ": bad number '" + item + "'");
    }
  }
  return out;
}

inline std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace detail

inline std::string ResourceSpec::label() const {
  switch (family) {
    case Family::tmsv:
      return "tmsv";
    case Family::ps:
      return "ps:" + std::to_string(n1) + "," + std::to_string(n2);
    case Family::pa:
      return "pa:" + std::to_string(n1) + "," + std::to_string(n2);
    case Family::asymmetric: {
      std::string s = "asym:";
      for (std::size_t i = 0; i < taus.size(); ++i)
        s += (i ? "," : "") + detail::format_number(taus[i]);
      return s;
    }
  }
  return {};
}

/// `tmsv`, `ps:n1,n2`, `pa:n1,n2`, `asym:t1,...,tN`.
inline ResourceSpec parse_resource(std::string_view text) {
  if (text == "tmsv") return ResourceSpec::tmsv();
  const auto colon = text.find(':');
  detail::require(colon != std::string_view::npos, "resource spec: unknown form '" + std::string(text) + "'");
  const auto head = text.substr(0, colon);
  const auto values = detail::parse_number_list(text.substr(colon + 1), "resource spec");
  if (head == "ps" || head == "pa") {
    detail::require(values.size() == 2, "resource spec: ps/pa need two photon numbers");
    for (double v : values)
      detail::require(v == std::floor(v), "resource spec: photon numbers must be integers");
    const int a = static_cast<int>(values[0]);
    const int b = static_cast<int>(values[1]);
    return head == "ps" ? ResourceSpec::ps(a, b) : ResourceSpec::pa(a, b);
  }
  if (head == "asym") return ResourceSpec::asymmetric(values);
  throw Error("resource spec: unknown family '" + std::string(head) + "'");
}

inline std::string input_label(const InputSpec& in) {
  std::string s = in.kind == InputSpec::Kind::coherent
                      ? "coherent:"
                      : "squeezed:" + detail::format_number(in.s) + ",";
  s += detail::format_number(in.alpha.real()) + "," + detail::format_number(in.alpha.imag());
  if (in.kind == InputSpec::Kind::squeezed && in.axis == SqueezeAxis::p) s += ",p";
  return s;
}

/// `coherent:re,im`, `coherent`, `squeezed:s[,re,im]`; a trailing `,p` selects p-squeezing.
inline InputSpec parse_input(std::string_view text) {
  if (text == "coherent") return InputSpec::coherent_state();
  const auto colon = text.find(':');
  detail::require(colon != std::string_view::npos, "input spec: unknown form '" + std::string(text) + "'");
  const auto head = text.substr(0, colon);
  auto body = std::string(text.substr(colon + 1));
  SqueezeAxis axis = SqueezeAxis::x;
  for (const char* suffix : {",p", ",x"}) {
    const std::string_view sv(suffix);
    if (body.size() >= sv.size() && body.compare(body.size() - sv.size(), sv.size(), sv) == 0) {
      axis = sv == ",p" ? SqueezeAxis::p : SqueezeAxis::x;
      body.resize(body.size() - sv.size());
      break;
    }
  }
  const auto values = detail::parse_number_list(body, "input spec");
  if (head == "coherent") {
    detail::require(values.size() == 2, "input spec: coherent needs re,im");
    return InputSpec::coherent_state({values[0], values[1]});
  }
  if (head == "squeezed") {
    detail::require(values.size() == 1 || values.size() == 3, "input spec: squeezed needs s or s,re,im");
    detail::require(values[0] >= 0.0, "input spec: squeezing must be non-negative");
    const std::complex<double> a = values.size() == 3 ? std::complex<double>{values[1], values[2]}
                                                      : std::complex<double>{};
    return InputSpec::squeezed(values[0], a, axis);
  }
  throw Error("input spec: unknown kind '" + std::string(head) + "'");
}

struct DegaussifiedResource {
  PolyGaussian state;
  double herald_weight;
};

/// Photon-subtracted / photon-added TMSV with ideal ladder operators.
/// n1 operations act on the receivers' mode R (mode 1), n2 on the sender's mode S (mode 0).
inline DegaussifiedResource degaussify(const ResourceSpec& spec, double r) {
  detail::require(spec.family == ResourceSpec::Family::ps || spec.family == ResourceSpec::Family::pa,
                  "degaussify: resource must be ps or pa");
  const Ladder kind = spec.family == ResourceSpec::Family::ps ? Ladder::subtract : Ladder::add;
  PolyGaussian w = lift_gaussian(tmsv(r));
  double weight = 1.0;
  for (auto [mode, count] : {std::pair<std::size_t, int>{1, spec.n1}, {0, spec.n2}}) {
    for (int k = 0; k < count; ++k) {
      auto step = ladder_superop(w, mode, kind);
      auto norm = normalize(step.state);
      weight *= step.weight;
      w = std::move(norm.state);
    }
  }
  return {std::move(w), weight};
}

/// N+1 mode chain resource: mode k (1-based) anti-squeezed by r in x for odd k and
/// squeezed in x for even k; splitter k takes the running chain at its first port and fresh
/// mode k+1 at its second, final mode k leaves the first output and the chain
/// continues from the second. The chain's last output is mode N+1 (the sender).
inline GaussianState asymmetric_resource(double r, std::span<const double> taus) {
  detail::require(!taus.empty(), "asymmetric_resource: need at least one transmissivity");
  detail::require(r >= 0.0 && std::isfinite(r), "asymmetric_resource: r must be finite and non-negative");
  for (double t : taus)
    detail::require(t >= 0.0 && t <= 1.0, "asymmetric_resource: tau outside [0, 1]");
  const std::size_t n = taus.size() + 1;
  GaussianState s = vacuum_state(n);
  for (std::size_t k = 0; k < n; ++k)
    s = apply_symplectic(s, squeezer(n, k, k % 2 == 0 ? -r : r));
  // Physical slots: chain lives in `chain`; splitter k mixes it with slot k+1.
  std::vector<std::size_t> final_slot;
  std::size_t chain = 0;
  for (std::size_t k = 0; k < taus.size(); ++k) {
    const std::size_t fresh = k + 1;
    s = apply_symplectic(s, beam_splitter(n, chain, fresh, taus[k]));
    final_slot.push_back(chain);
    chain = fresh;
  }
  final_slot.push_back(chain);
  return apply_symplectic(s, mode_permutation(final_slot));
}

}  // namespace teleclone
