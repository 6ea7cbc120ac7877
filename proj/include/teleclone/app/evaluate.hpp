#pragma once

// Evaluation of one (protocol, resource, input, r, epsilon) point and the CSV
// row schema shared by the command-line subcommands.

#include "teleclone/measures.hpp"
#include "teleclone/protocols.hpp"
#include "teleclone/states.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace teleclone::app {

struct Scenario {
  Scheme scheme = Scheme::irreversible;
  bool asymmetric = false;
  ResourceSpec resource;
  InputSpec input;
  double epsilon = 0.0;
  SqueezeAxis ancilla_axis = SqueezeAxis::x;
  bool squeeze_sender_vacuum = true;
  std::size_t num_clones = 2;

  ProtocolSpec protocol() const {
    ProtocolSpec p;
    p.scheme = scheme;
    p.num_clones = num_clones;
    p.epsilon = epsilon;
    p.ancilla_axis = ancilla_axis;
    p.squeeze_sender_vacuum = squeeze_sender_vacuum;
    if (asymmetric || resource.family == ResourceSpec::Family::asymmetric) p.taus = resource.taus;
    return p;
  }

  std::string protocol_label() const {
    const bool asym = asymmetric || resource.family == ResourceSpec::Family::asymmetric;
    return asym ? "asymmetric-" + scheme_name(scheme) : scheme_name(scheme);
  }
};

struct PointResult {
  double r = 0.0;
  double epsilon = 0.0;
  bool defined = true;  // false when the resource does not exist (e.g. subtraction at r = 0)
  CloneReport report;
  std::optional<double> eln;
  std::optional<double> ggm;
  std::optional<double> herald_weight;
};

inline bool has_entanglement_columns(const Scenario& s) {
  return s.resource.family == ResourceSpec::Family::tmsv && !s.asymmetric;
}
inline bool has_herald_column(const Scenario& s) { return !s.resource.is_gaussian(); }

inline PointResult evaluate_point(const Scenario& s, double r) {
  PointResult out;
  out.r = r;
  out.epsilon = s.epsilon;
  const ProtocolSpec p = s.protocol();
  if (p.variant() == Variant::asymmetric) {
    detail::require(s.resource.family == ResourceSpec::Family::asymmetric,
                    "asymmetric protocol needs an asym:... resource");
    out.report = fidelity_gaussian(asymmetric_resource(r, s.resource.taus), s.input, p);
    return out;
  }
  detail::require(s.resource.family != ResourceSpec::Family::asymmetric,
                  "asym:... resources need --protocol asymmetric");
  if (s.resource.family == ResourceSpec::Family::tmsv) {
    out.report = fidelity_gaussian(tmsv(r), s.input, p);
    out.eln = eln_closed_form(r);
    out.ggm = ggm_closed_form(r);
    return out;
  }
  try {
    const DegaussifiedResource res = degaussify(s.resource, r);
    out.report = teleclone_wigner(res.state, s.input, p);
    out.herald_weight = res.herald_weight;
  } catch (const Error&) {
    if (r != 0.0) throw;
    out.defined = false;
    out.herald_weight = 0.0;
    out.report.classical_threshold = classical_threshold(s.input);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.report.clones.assign(p.num_clones, CloneEntry{nan, nan, nan, nan, nan});
    if (p.scheme == Scheme::reversible) out.report.anticlone = CloneEntry{nan, nan, nan, nan, nan};
  }
  return out;
}

/// Evaluate f(0..n-1) on `threads` workers; results are stored by index.
template <class T>
std::vector<T> parallel_map(std::size_t n, unsigned threads, const std::function<T(std::size_t)>& f) {
  std::vector<std::optional<T>> slots(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < n && !failed; i = next++) {
      try {
        slots[i] = f(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

inline std::vector<double> linspace(double lo, double hi, int steps) {
  detail::require(steps >= 2, "grid: need at least two steps");
  detail::require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi, "grid: need lo <= hi");
  std::vector<double> xs(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
  return xs;
}

inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // no negative zero in output
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_header(std::ostream& os, const Scenario& s) {
  os << "protocol,resource,input,r,epsilon,clone_index,fidelity,var_x,var_p,q,zeta";
  if (has_entanglement_columns(s)) os << ",eln,ggm";
  if (has_herald_column(s)) os << ",herald_weight";
  os << '\n';
}

inline void write_rows(std::ostream& os, const Scenario& s, const PointResult& pt) {
  auto row = [&](const std::string& index, const CloneEntry& e) {
    os << s.protocol_label() << ",\"" << s.resource.label() << "\",\"" << input_label(s.input) << '"'
       << ',' << fmt(pt.r) << ',' << fmt(pt.epsilon) << ',' << index << ',' << fmt(e.fidelity) << ','
       << fmt(e.var_x) << ',' << fmt(e.var_p) << ',' << fmt(e.q) << ',' << fmt(e.zeta);
    if (has_entanglement_columns(s)) os << ',' << fmt(pt.eln.value_or(NAN)) << ',' << fmt(pt.ggm.value_or(NAN));
    if (has_herald_column(s)) os << ',' << fmt(pt.herald_weight.value_or(NAN));
    os << '\n';
  };
  for (std::size_t k = 0; k < pt.report.clones.size(); ++k) row(std::to_string(k + 1), pt.report.clones[k]);
  if (pt.report.anticlone) row("aC", *pt.report.anticlone);
}

}  // namespace teleclone::app
