// teleclone: sweeps, optimum search, figure bundles, asymmetric network tables
// and validation runs for continuous-variable telecloning.
//
// Exit status: 0 success, 1 failed validation, 2 usage or input error.

#include "teleclone/app/runs.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace teleclone;
using namespace teleclone::app;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string protocol = "irreversible";
  std::string scheme = "irreversible";
  std::string resource;
  std::string input = "coherent:0,0";
  double r_min = 0.0;
  double r_max = 1.0;
  int r_steps = 101;
  double epsilon = 0.0;
  std::optional<double> eps_min;
  std::optional<double> eps_max;
  int eps_steps = 61;
  std::string taus;
  std::string out;
  std::uint64_t seed = 1;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string ancilla_axis = "x";
  std::string sender_vacuum = "squeezed";
  std::size_t clones = 2;
  // optimize
  std::string target = "r";
  double at_r = 1.0;
  std::size_t clone_index = 1;
  // network
  std::string closed_form = "corrected";
  // validate
  std::vector<int> criteria;
  std::string inject_fault;
  std::size_t mc_samples = oracle::kDefaultSamples;
  // figure
  std::string figure_id;
};

SqueezeAxis parse_axis(const std::string& s) {
  if (s == "x") return SqueezeAxis::x;
  if (s == "p") return SqueezeAxis::p;
  throw Error("ancilla axis must be x or p");
}

std::vector<double> taus_or_default(const Options& o) {
  if (o.taus.empty()) return {0.5, 0.05, 0.125, 0.1};
  return detail::parse_number_list(o.taus, "taus");
}

Scenario make_scenario(const Options& o) {
  Scenario s;
  s.input = parse_input(o.input);
  s.epsilon = o.epsilon;
  s.ancilla_axis = parse_axis(o.ancilla_axis);
  detail::require(o.sender_vacuum == "squeezed" || o.sender_vacuum == "vacuum",
                  "sender vacuum must be 'squeezed' or 'vacuum'");
  s.squeeze_sender_vacuum = o.sender_vacuum == "squeezed";
  s.num_clones = o.clones;
  if (o.protocol == "asymmetric") {
    s.asymmetric = true;
    s.scheme = parse_scheme(o.scheme);
    s.resource = o.resource.empty() ? ResourceSpec::asymmetric(taus_or_default(o)) : parse_resource(o.resource);
    detail::require(s.resource.family == ResourceSpec::Family::asymmetric,
                    "asymmetric protocol needs an asym:... resource or --taus");
  } else {
    s.scheme = parse_scheme(o.protocol);
    s.resource = parse_resource(o.resource.empty() ? "tmsv" : o.resource);
  }
  return s;
}

/// Write to --out, or stdout when it is empty or "-".
void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(o.out, std::ios::binary);
  detail::require(static_cast<bool>(os), "cannot open output file '" + o.out + "'");
  os << text;
  detail::require(static_cast<bool>(os), "failed writing output file '" + o.out + "'");
}

int cmd_sweep(const Options& o) {
  SweepConfig cfg;
  cfg.setup = make_scenario(o);
  cfg.r = {o.r_min, o.r_max, o.r_steps};
  if (o.eps_min || o.eps_max) cfg.epsilon = Grid{o.eps_min.value_or(0.0), o.eps_max.value_or(1.2), o.eps_steps};
  cfg.threads = o.threads;
  std::ostringstream os;
  write_sweep(os, cfg.setup, run_sweep(cfg));
  emit(o, os.str());
  return kExitOk;
}

int cmd_optimize(const Options& o) {
  OptimizeConfig cfg;
  cfg.setup = make_scenario(o);
  cfg.clone = o.clone_index;
  if (o.target == "r") {
    cfg.target = OptimizeTarget::r;
    cfg.range = {o.r_min, o.r_max, 41};
  } else if (o.target == "epsilon") {
    cfg.target = OptimizeTarget::epsilon;
    cfg.r = o.at_r;
    cfg.range = {o.eps_min.value_or(0.0), o.eps_max.value_or(1.5), 61};
  } else {
    throw Error("optimize target must be r or epsilon");
  }
  const OptimumResult res = run_optimize(cfg);
  std::ostringstream os;
  write_optimum(os, cfg, res);
  emit(o, os.str());
  return kExitOk;
}

int cmd_figure(const Options& o) {
  const auto files = figure_bundle(o.figure_id, o.threads);
  const std::string dir = o.out.empty() ? "figures" : o.out;
  write_bundle(dir, files);
  for (const auto& f : files) std::cout << dir << '/' << f.name << '\n';
  return kExitOk;
}

int cmd_network(const Options& o) {
  NetworkConfig cfg;
  cfg.taus = taus_or_default(o);
  cfg.scheme = parse_scheme(o.protocol == "asymmetric" ? o.scheme : o.protocol);
  cfg.input = parse_input(o.input);
  cfg.r = {o.r_min, o.r_max, o.r_steps};
  cfg.threads = o.threads;
  if (o.closed_form == "corrected") cfg.form = ClosedForm::corrected;
  else if (o.closed_form == "published") cfg.form = ClosedForm::published;
  else throw Error("closed form must be 'corrected' or 'published'");
  std::ostringstream os;
  write_network(os, cfg);
  emit(o, os.str());
  return kExitOk;
}

int cmd_validate(const Options& o) {
  CheckOptions opt;
  opt.seed = o.seed;
  opt.threads = o.threads;
  opt.mc_samples = o.mc_samples;
  if (o.inject_fault == "overlap-prefactor") opt.overlap_prefactor = 2.0 * std::numbers::pi;
  else detail::require(o.inject_fault.empty(), "unknown fault '" + o.inject_fault + "'");
  const ValidationReport rep = run_validation(opt, o.criteria);
  for (const auto& c : rep.checks) std::cout << check_line(c) << '\n';
  std::size_t failed = 0;
  for (const auto& c : rep.checks) failed += c.passed ? 0 : 1;
  std::cout << "summary: " << rep.checks.size() - failed << "/" << rep.checks.size() << " checks passed\n";
  if (!o.out.empty()) emit(o, report_json(rep, opt).dump(2) + "\n");
  return rep.passed() ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-variable telecloning simulator"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value configuration file (command-line flags take precedence)");
  Options o;
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  app.add_option("--protocol", o.protocol, "irreversible | reversible | asymmetric")
      ->check(CLI::IsMember({"irreversible", "reversible", "asymmetric"}))
      ->capture_default_str();
  app.add_option("--scheme", o.scheme, "scheme of the asymmetric network: irreversible | reversible")
      ->check(CLI::IsMember({"irreversible", "reversible"}))
      ->capture_default_str();
  app.add_option("--resource", o.resource, "tmsv | ps:n1,n2 | pa:n1,n2 | asym:t1,...,tN");
  app.add_option("--input", o.input, "coherent:re,im | squeezed:s[,re,im]")->capture_default_str();
  app.add_option("--r-min", o.r_min, "lower end of the r range")->capture_default_str();
  app.add_option("--r-max", o.r_max, "upper end of the r range")->capture_default_str();
  app.add_option("--r-steps", o.r_steps, "number of r grid points (>= 2)")->capture_default_str();
  app.add_option("--epsilon", o.epsilon, "ancilla squeezing")->capture_default_str();
  app.add_option("--eps-min", o.eps_min, "lower end of an epsilon sweep or search");
  app.add_option("--eps-max", o.eps_max, "upper end of an epsilon sweep or search");
  app.add_option("--eps-steps", o.eps_steps, "epsilon grid points for sweeps")->capture_default_str();
  app.add_option("--taus", o.taus, "comma-separated transmissivities of the asymmetric chain");
  app.add_option("--out", o.out, "output file (figure: output directory)");
  app.add_option("--seed", o.seed, "random seed for Monte-Carlo checks")->capture_default_str();
  app.add_option("--threads", o.threads, "worker threads")
      ->envname("TELECLONE_THREADS")
      ->check(CLI::PositiveNumber);
  app.add_option("--ancilla-axis", o.ancilla_axis, "squeezed axis of the splitting ancillas: x | p")
      ->capture_default_str();
  app.add_option("--sender-vacuum", o.sender_vacuum, "reversible scheme: 'squeezed' (by epsilon) or 'vacuum'")
      ->capture_default_str();
  app.add_option("--clones", o.clones, "number of symmetric clones")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "evaluate a grid of r (and optionally epsilon) values");
  auto* optimize = app.add_subcommand("optimize", "locate the fidelity maximum over r or epsilon");
  optimize->add_option("--target", o.target, "r | epsilon")->capture_default_str();
  optimize->add_option("--at-r", o.at_r, "fixed r for an epsilon search")->capture_default_str();
  optimize->add_option("--clone", o.clone_index, "clone index (1-based)")->capture_default_str();
  auto* figure = app.add_subcommand("figure", "write the CSV bundle and plot script of a figure");
  figure->add_option("id", o.figure_id, "fig2 | fig3 | fig4 | fig5 | fig6")->required();
  auto* network = app.add_subcommand("network", "asymmetric network: closed form against simulation");
  network->add_option("--closed-form", o.closed_form, "corrected | published")->capture_default_str();
  auto* validate = app.add_subcommand("validate", "run the oracle checks and acceptance criteria");
  validate->add_option("--criterion", o.criteria, "run only these numbered criteria");
  validate->add_option("--inject-fault", o.inject_fault, "negative control: overlap-prefactor");
  validate->add_option("--mc-samples", o.mc_samples, "Monte-Carlo samples per integral")->capture_default_str();
  for (auto* sub : {sweep, optimize, figure, network, validate}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sweep) return cmd_sweep(o);
    if (*optimize) return cmd_optimize(o);
    if (*figure) return cmd_figure(o);
    if (*network) return cmd_network(o);
    if (*validate) return cmd_validate(o);
  } catch (const teleclone::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
