#include "teleclone/app/runs.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace teleclone;
using namespace teleclone::app;

namespace {
std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}
}  // namespace

TEST(App, SweepHeaderFollowsSchema) {
  Scenario s;
  std::ostringstream os;
  write_header(os, s);
  EXPECT_EQ(os.str(), "protocol,resource,input,r,epsilon,clone_index,fidelity,var_x,var_p,q,zeta,eln,ggm\n");
  s.resource = ResourceSpec::ps(1, 1);
  std::ostringstream os2;
  write_header(os2, s);
  EXPECT_EQ(os2.str(), "protocol,resource,input,r,epsilon,clone_index,fidelity,var_x,var_p,q,zeta,herald_weight\n");
}

TEST(App, SweepIsIndependentOfThreadCount) {
  SweepConfig cfg;
  cfg.setup.scheme = Scheme::reversible;
  cfg.setup.resource = ResourceSpec::pa(1, 1);
  cfg.r = {0.0, 1.0, 9};
  cfg.threads = 1;
  const std::string a = sweep_csv(cfg);
  cfg.threads = 4;
  EXPECT_EQ(a, sweep_csv(cfg));
  // 9 points, two clones and the anticlone each, plus the header.
  EXPECT_EQ(lines(a).size(), 1u + 9u * 3u);
}

TEST(App, TmsvSweepPeaksAtExpectedRow) {
  SweepConfig cfg;
  cfg.r = {0.0, 1.0, 101};
  const auto pts = run_sweep(cfg);
  std::size_t best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i].report.clones[0].fidelity > pts[best].report.clones[0].fidelity) best = i;
  EXPECT_NEAR(pts[best].r, 0.88, 1e-12);
  EXPECT_NEAR(pts[best].report.clones[0].fidelity, 0.6667, 1e-4);
}

TEST(App, UndefinedSubtractionPointIsReportedAsNan) {
  Scenario s;
  s.resource = ResourceSpec::ps(1, 1);
  const PointResult pt = evaluate_point(s, 0.0);
  EXPECT_FALSE(pt.defined);
  std::ostringstream os;
  write_rows(os, s, pt);
  EXPECT_NE(os.str().find("nan"), std::string::npos);
}

TEST(App, OptimizeOverR) {
  OptimizeConfig cfg;
  const auto res = run_optimize(cfg);
  EXPECT_NEAR(res.location, 0.8814, 1e-3);
  EXPECT_NEAR(res.value, 2.0 / 3.0, 1e-6);
}

TEST(App, OptimizeOverEpsilonForSqueezedInput) {
  OptimizeConfig cfg;
  cfg.setup.input = InputSpec::squeezed(0.5);
  cfg.target = OptimizeTarget::epsilon;
  cfg.r = 0.89;
  cfg.range = {0.0, 1.5, 61};
  const auto res = run_optimize(cfg);
  EXPECT_NEAR(res.location, 0.38, 0.03);
}

TEST(App, HigherOrderSubtractionPeaksEarlierAndLower) {
  OptimizeConfig one;
  one.setup.resource = ResourceSpec::ps(1, 1);
  one.range = {0.02, 1.0, 41};
  OptimizeConfig four = one;
  four.setup.resource = ResourceSpec::ps(4, 4);
  const auto a = run_optimize(one);
  const auto b = run_optimize(four);
  EXPECT_LT(b.location, a.location);
  EXPECT_LT(b.value, a.value);
}

TEST(App, NetworkTableDiscrepancyIsTiny) {
  NetworkConfig cfg;
  cfg.taus = {0.5, 0.05, 0.125, 0.1};
  cfg.r = {0.0, 2.0, 21};
  std::ostringstream os;
  write_network(os, cfg);
  const auto rows = lines(os.str());
  ASSERT_EQ(rows.size(), 1u + 21u * 4u);
  double worst = 0.0;
  double f1 = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto last = rows[i].rfind(',');
    worst = std::max(worst, std::stod(rows[i].substr(last + 1)));
  }
  EXPECT_LT(worst, 1e-9);
  for (double r : linspace(0.0, 2.0, 201))
    f1 = std::max(f1, asymmetric_fidelity(r, cfg.taus, Scheme::irreversible, 1).fidelity);
  EXPECT_NEAR(f1, 2.0 / 3.0, 1e-3);
}

TEST(App, NetworkRejectsInvalidTaus) {
  NetworkConfig cfg;
  cfg.taus = {0.5, -0.1};
  std::ostringstream os;
  EXPECT_THROW(write_network(os, cfg), Error);
}

TEST(App, FigureBundleContents) {
  const auto files = figure_bundle("fig2", 2);
  ASSERT_EQ(files.size(), 3u);
  EXPECT_EQ(files[0].name, "fig2.csv");
  EXPECT_EQ(lines(files[1].contents)[0], "r,eln_closed_form,eln_sender_clone,ggm_closed_form");
  EXPECT_NE(files[2].contents.find("plot"), std::string::npos);
  EXPECT_THROW(figure_bundle("fig9", 1), Error);
}

TEST(App, InjectedOverlapFaultFailsPurityCheck) {
  CheckOptions opt;
  opt.mc_samples = 20000;
  opt.overlap_prefactor = 2.0 * std::numbers::pi;
  const Check c = criterion_13(opt);
  EXPECT_FALSE(c.passed);
  EXPECT_NE(c.detail.find("purity check FAILED"), std::string::npos);
}

TEST(App, ValidationReportIsDeterministic) {
  CheckOptions opt;
  opt.mc_samples = 20000;
  opt.threads = 3;
  const auto a = report_json(run_validation(opt, {7, 13}), opt).dump();
  opt.threads = 1;
  const auto b = report_json(run_validation(opt, {7, 13}), opt).dump();
  EXPECT_EQ(a, b);
}
