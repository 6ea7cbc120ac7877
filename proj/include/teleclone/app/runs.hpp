#pragma once

// Subcommand bodies: sweeps, optimum search, figure bundles, asymmetric network
// tables and the validation report. All output is deterministic for a given
// configuration; grid points may be evaluated on several threads but rows are
// emitted in grid order.

#include "teleclone/app/checks.hpp"
#include "teleclone/app/evaluate.hpp"
#include "teleclone/optimize.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace teleclone::app {

struct Grid {
  double lo = 0.0;
  double hi = 1.0;
  int steps = 101;
};

struct SweepConfig {
  Scenario setup;
  Grid r;
  std::optional<Grid> epsilon;  // sweep epsilon too when set
  unsigned threads = 1;
};

inline std::vector<PointResult> run_sweep(const SweepConfig& cfg) {
  const auto rs = linspace(cfg.r.lo, cfg.r.hi, cfg.r.steps);
  const std::vector<double> eps = cfg.epsilon ? linspace(cfg.epsilon->lo, cfg.epsilon->hi, cfg.epsilon->steps)
                                              : std::vector<double>{cfg.setup.epsilon};
  // Validate the spec once up front so errors surface before any work is spread out.
  evaluate_point([&] {
    Scenario s = cfg.setup;
    s.epsilon = eps.front();
    return s;
  }(), rs.back());
  return parallel_map<PointResult>(eps.size() * rs.size(), cfg.threads, [&](std::size_t i) {
    Scenario s = cfg.setup;
    s.epsilon = eps[i / rs.size()];
    return evaluate_point(s, rs[i % rs.size()]);
  });
}

inline void write_sweep(std::ostream& os, const Scenario& setup, const std::vector<PointResult>& points) {
  write_header(os, setup);
  for (const auto& pt : points) write_rows(os, setup, pt);
}

// ---------------------------------------------------------------------------

enum class OptimizeTarget { r, epsilon };

struct OptimizeConfig {
  Scenario setup;
  OptimizeTarget target = OptimizeTarget::r;
  double r = 1.0;  // fixed r when optimising epsilon
  Grid range{0.0, 1.0, 41};
  std::size_t clone = 1;  // 1-based
};

inline OptimumResult run_optimize(const OptimizeConfig& cfg) {
  detail::require(cfg.clone >= 1, "optimize: clone index is 1-based");
  auto objective = [&](double v) {
    Scenario s = cfg.setup;
    double r = cfg.r;
    if (cfg.target == OptimizeTarget::r) r = v;
    else s.epsilon = v;
    const PointResult pt = evaluate_point(s, r);
    detail::require(cfg.clone <= pt.report.clones.size(), "optimize: clone index out of range");
    const double f = pt.report.clones[cfg.clone - 1].fidelity;
    return std::isnan(f) ? -1.0 : f;
  };
  return maximize(objective, cfg.range.lo, cfg.range.hi, {std::max(cfg.range.steps, 3), 1e-7});
}

inline void write_optimum(std::ostream& os, const OptimizeConfig& cfg, const OptimumResult& o) {
  os << "protocol,resource,input,target,location,value,degenerate,bracket_lo,bracket_hi,evaluations\n";
  os << cfg.setup.protocol_label() << ",\"" << cfg.setup.resource.label() << "\",\"" << input_label(cfg.setup.input)
     << "\"," << (cfg.target == OptimizeTarget::r ? "r" : "epsilon") << ',' << fmt(o.location) << ','
     << fmt(o.value) << ',' << (o.degenerate ? "true" : "false") << ',' << fmt(o.bracket_lo) << ','
     << fmt(o.bracket_hi) << ',' << o.evaluations << '\n';
}

// ---------------------------------------------------------------------------

struct FigureFile {
  std::string name;
  std::string contents;
};

inline std::string file_stem(const ResourceSpec& spec) {
  std::string s = spec.label();
  for (char& c : s)
    if (c == ':' || c == ',') c = '-';
  return s;
}

inline std::string sweep_csv(const SweepConfig& cfg) {
  std::ostringstream os;
  write_sweep(os, cfg.setup, run_sweep(cfg));
  return os.str();
}

inline std::string gnuplot_preamble(const std::string& title, const std::string& xlabel,
                                    const std::string& ylabel) {
  return "set datafile separator ','\nset key autotitle columnhead\nset title '" + title + "'\nset xlabel '" +
         xlabel + "'\nset ylabel '" + ylabel + "'\n";
}

/// gnuplot `using` clause selecting one clone's rows.
inline std::string clone_filter(int x_col, int y_col, const std::string& clone) {
  return "using " + std::to_string(x_col) + ":(strcol(6) eq '" + clone + "' ? $" + std::to_string(y_col) +
         " : NaN)";
}

inline std::vector<FigureFile> figure_bundle(const std::string& id, unsigned threads) {
  std::vector<FigureFile> out;
  const Grid r_grid{0.0, 1.0, 101};
  auto curve = [&](Scenario s, Grid g = {0.0, 1.0, 101}) {
    SweepConfig cfg{std::move(s), g, std::nullopt, threads};
    return sweep_csv(cfg);
  };

  if (id == "fig2") {
    Scenario s;
    s.resource = ResourceSpec::tmsv();
    out.push_back({"fig2.csv", curve(s)});
    std::ostringstream os;
    os << "r,eln_closed_form,eln_sender_clone,ggm_closed_form\n";
    for (double r : linspace(r_grid.lo, r_grid.hi, r_grid.steps))
      os << fmt(r) << ',' << fmt(eln_closed_form(r)) << ','
         << fmt(log_negativity(checks::sender_clone_state(r))) << ',' << fmt(ggm_closed_form(r)) << '\n';
    out.push_back({"fig2_entanglement.csv", os.str()});
    out.push_back({"fig2.gp", gnuplot_preamble("irreversible TMSV, coherent input", "r", "value") +
                                  "plot 'fig2.csv' " + clone_filter(4, 7, "1") + " title 'F', \\\n"
                                  "     'fig2.csv' " + clone_filter(4, 10, "1") + " title 'q', \\\n"
                                  "     'fig2_entanglement.csv' using 1:2 with lines title 'E_LN closed form', \\\n"
                                  "     'fig2_entanglement.csv' using 1:3 with lines title 'E_LN (S,C1)', \\\n"
                                  "     'fig2_entanglement.csv' using 1:4 with lines title 'GGM'\n"});
    return out;
  }

  const std::vector<ResourceSpec> fig3_resources{ResourceSpec::tmsv(), ResourceSpec::ps(1, 1),
                                                 ResourceSpec::pa(1, 1), ResourceSpec::ps(1, 0),
                                                 ResourceSpec::pa(1, 0)};
  if (id == "fig3") {
    for (Scheme scheme : {Scheme::irreversible, Scheme::reversible}) {
      std::string plot_f = "plot ";
      std::string plot_q = "plot ";
      for (const auto& res : fig3_resources) {
        Scenario s;
        s.scheme = scheme;
        s.resource = res;
        const std::string name = "fig3_" + scheme_name(scheme) + "_" + file_stem(res) + ".csv";
        out.push_back({name, curve(s)});
        const std::string sep = plot_f == "plot " ? "" : ", \\\n     ";
        plot_f += sep + "'" + name + "' " + clone_filter(4, 7, "1") + " with lines title '" + res.label() + "'";
        plot_q += sep + "'" + name + "' " + clone_filter(4, 10, "1") + " with lines title '" + res.label() + "'";
      }
      out.push_back({"fig3_" + scheme_name(scheme) + ".gp",
                     gnuplot_preamble(scheme_name(scheme) + ", coherent input", "r", "F and q") + "set multiplot layout 1,2\n" +
                         plot_f + "\n" + plot_q + "\nunset multiplot\n"});
    }
    return out;
  }

  if (id == "fig4") {
    const Grid eps_grid{0.0, 1.2, 61};
    for (Scheme scheme : {Scheme::irreversible, Scheme::reversible}) {
      std::string plot = "plot ";
      for (const auto& e : checks::table_one()) {
        Scenario s;
        s.scheme = scheme;
        s.resource = e.spec;
        s.input = InputSpec::squeezed(checks::kTableInputSqueezing);
        const double r = scheme == Scheme::irreversible ? e.r_irreversible : checks::kTableReversibleR;
        SweepConfig cfg{s, Grid{r, r, 2}, eps_grid, threads};
        // A degenerate r range keeps the grid machinery; drop the duplicate rows.
        auto points = run_sweep(cfg);
        std::vector<PointResult> unique;
        for (std::size_t i = 0; i < points.size(); i += 2) unique.push_back(points[i]);
        std::ostringstream os;
        write_sweep(os, s, unique);
        const std::string name = "fig4_" + scheme_name(scheme) + "_" + file_stem(e.spec) + ".csv";
        out.push_back({name, os.str()});
        plot += std::string(plot == "plot " ? "" : ", \\\n     ") + "'" + name + "' " + clone_filter(5, 7, "1") +
                " with lines title '" + e.spec.label() + "'";
      }
      out.push_back({"fig4_" + scheme_name(scheme) + ".gp",
                     gnuplot_preamble(scheme_name(scheme) + ", squeezed input s = 0.5", "epsilon", "F") + plot + "\n"});
    }
    return out;
  }

  if (id == "fig5") {
    for (Scheme scheme : {Scheme::irreversible, Scheme::reversible}) {
      std::string plot = "plot ";
      for (int n = 1; n <= 4; ++n) {
        Scenario s;
        s.scheme = scheme;
        s.resource = ResourceSpec::ps(n, n);
        const std::string name = "fig5_" + scheme_name(scheme) + "_" + file_stem(s.resource) + ".csv";
        out.push_back({name, curve(s)});
        plot += std::string(n == 1 ? "" : ", \\\n     ") + "'" + name + "' " + clone_filter(4, 7, "1") +
                " with lines title '" + s.resource.label() + "'";
      }
      out.push_back({"fig5_" + scheme_name(scheme) + ".gp",
                     gnuplot_preamble(scheme_name(scheme) + ", PS-n,n, coherent input", "r", "F") + plot + "\n"});
    }
    return out;
  }

  if (id == "fig6") {
    for (Scheme scheme : {Scheme::irreversible, Scheme::reversible}) {
      Scenario s;
      s.scheme = scheme;
      s.asymmetric = true;
      s.resource = ResourceSpec::asymmetric({0.5, 0.05, 0.125, 0.1});
      const std::string name = "fig6_" + scheme_name(scheme) + ".csv";
      out.push_back({name, curve(s, {0.0, 2.0, 201})});
      std::string plot_f = "plot ";
      std::string plot_q = "plot ";
      for (int m = 1; m <= 4; ++m) {
        const std::string sep = m == 1 ? "" : ", \\\n     ";
        plot_f += sep + "'" + name + "' " + clone_filter(4, 7, std::to_string(m)) + " with lines title 'F C" +
                  std::to_string(m) + "'";
        plot_q += sep + "'" + name + "' " + clone_filter(4, 10, std::to_string(m)) + " with lines title 'q C" +
                  std::to_string(m) + "'";
      }
      out.push_back({"fig6_" + scheme_name(scheme) + ".gp",
                     gnuplot_preamble("asymmetric network, " + scheme_name(scheme), "r", "F and q") +
                         "set multiplot layout 1,2\n" + plot_f + "\n" + plot_q + "\nunset multiplot\n"});
    }
    return out;
  }
  throw Error("figure: unknown id '" + id + "' (expected fig2..fig6)");
}

inline void write_bundle(const std::filesystem::path& dir, const std::vector<FigureFile>& files) {
  std::filesystem::create_directories(dir);
  for (const auto& f : files) {
    std::ofstream os(dir / f.name, std::ios::binary);
    detail::require(static_cast<bool>(os), "cannot write " + (dir / f.name).string());
    os << f.contents;
  }
}

// ---------------------------------------------------------------------------

struct NetworkConfig {
  std::vector<double> taus;
  Scheme scheme = Scheme::irreversible;
  InputSpec input;
  Grid r{0.0, 2.0, 201};
  ClosedForm form = ClosedForm::corrected;
  unsigned threads = 1;
};

inline void write_network(std::ostream& os, const NetworkConfig& cfg) {
  detail::require(!cfg.taus.empty(), "network: need at least one transmissivity");
  for (double t : cfg.taus) detail::require(t >= 0.0 && t <= 1.0, "network: tau outside [0, 1]");
  const auto rs = linspace(cfg.r.lo, cfg.r.hi, cfg.r.steps);
  const std::size_t n = cfg.taus.size();
  struct Row {
    CloneEntry closed;
    CloneEntry sim;
    double discrepancy;
  };
  const auto rows = parallel_map<Row>(rs.size() * n, cfg.threads, [&](std::size_t i) {
    const double r = rs[i / n];
    const std::size_t m = i % n + 1;
    const auto mc = asymmetric_clone_moments_closed(r, cfg.taus, m, cfg.form);
    const auto ms = asymmetric_clone_moments_sim(r, cfg.taus, m);
    double d = 0.0;
    for (double v : {mc.x_mm - ms.x_mm, mc.x_ss - ms.x_ss, mc.x_sm - ms.x_sm, mc.p_mm - ms.p_mm, mc.p_ss - ms.p_ss,
                     mc.p_sm - ms.p_sm})
      d = std::max(d, std::abs(v));
    const CloneEntry closed = asymmetric_entry_from_moments(mc, cfg.scheme, cfg.input);
    const CloneEntry sim = asymmetric_fidelity(r, cfg.taus, cfg.scheme, m, cfg.input);
    d = std::max({d, std::abs(closed.fidelity - sim.fidelity), std::abs(closed.q - sim.q)});
    return Row{closed, sim, d};
  });
  os << "protocol,taus,input,r,clone_index,fidelity_closed,fidelity_sim,q_closed,q_sim,max_discrepancy\n";
  std::string taus;
  for (std::size_t k = 0; k < n; ++k) taus += (k ? "," : "") + detail::format_number(cfg.taus[k]);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    os << "asymmetric-" << scheme_name(cfg.scheme) << ",\"" << taus << "\",\"" << input_label(cfg.input) << "\","
       << fmt(rs[i / n]) << ',' << (i % n + 1) << ',' << fmt(row.closed.fidelity) << ',' << fmt(row.sim.fidelity)
       << ',' << fmt(row.closed.q) << ',' << fmt(row.sim.q) << ',' << fmt(row.discrepancy) << '\n';
  }
}

// ---------------------------------------------------------------------------

struct ValidationReport {
  std::vector<Check> checks;
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

inline ValidationReport run_validation(const CheckOptions& opt, const std::vector<int>& criteria = {}) {
  ValidationReport rep;
  const auto all = acceptance_criteria();
  if (criteria.empty()) {
    for (auto& c : oracle_checks(opt)) rep.checks.push_back(std::move(c));
    for (const auto& f : all) rep.checks.push_back(f(opt));
  } else {
    for (int n : criteria) {
      detail::require(n >= 1 && n <= static_cast<int>(all.size()), "validate: unknown criterion");
      rep.checks.push_back(all[static_cast<std::size_t>(n - 1)](opt));
    }
  }
  return rep;
}

inline std::string check_line(const Check& c) {
  const bool numbered = !c.id.empty() && std::isdigit(static_cast<unsigned char>(c.id[0]));
  return (numbered ? "criterion " + c.id : c.id) + ": " + (c.passed ? "PASS" : "FAIL") + " " + c.name + ": " +
         c.detail;
}

inline nlohmann::ordered_json report_json(const ValidationReport& rep, const CheckOptions& opt) {
  nlohmann::ordered_json j;
  j["passed"] = rep.passed();
  j["seed"] = opt.seed;
  j["mc_samples"] = opt.mc_samples;
  j["rng_algorithm"] = std::string(oracle::kRngAlgorithm);
  j["overlap_prefactor"] = opt.overlap_prefactor;
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks) arr.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  std::size_t failed = 0;
  for (const auto& c : rep.checks) failed += c.passed ? 0 : 1;
  j["failed"] = failed;
  return j;
}

}  // namespace teleclone::app
