// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include "cli.hpp"
#include "oracles.hpp"
#include "qgres/error.hpp"
#include "qgres/fgr.hpp"
#include "qgres/fixtures.hpp"
#include "qgres/quasimode.hpp"
#include "qgres/tracker.hpp"

using namespace qgres;
using std::numbers::pi;

namespace
{

struct Outcome
{
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string &what)
  {
    if (!ok)
    {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void Note(const std::string &what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string Fmt(const char *f, double x)
{
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, x);
  return buf;
}

// Every window searched here is recorded for the counting criterion.
int g_windows = 0;
int g_window_mismatches = 0;

SpectralSearch Search(const MetricGraph &g, const Window &w)
{
  SpectralSearch s = FindSpectralPoints(g, w);
  g_windows++;
  if (s.winding_count != s.root_count)
  {
    g_window_mismatches++;
  }
  return s;
}

std::vector<double> Grid(double step, int n)
{
  std::vector<double> t;
  for (int i = -n; i <= n; i++)
  {
    t.push_back(i * step);
  }
  return t;
}

const double kLambda0 = 2.0 * std::atan(std::sqrt(2.0));

SpectralPoint Seed(const MetricGraph &g, double lambda)
{
  return MakeSpectralPoint(g, lambda, 1);
}

Outcome Criterion1()
{
  Outcome o;
  cli::RunConfig c;
  c.command = "eigs";
  c.fixture = "example2";
  c.window = Window{1.0, 7.0, -0.1, 0.1};
  std::ostringstream out;
  cli::CmdEigs(c, out);
  Search(fixtures::ExampleTwo(), *c.window);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::vector<double> got;
  while (std::getline(in, line))
  {
    got.push_back(std::stod(line.substr(0, line.find(','))));
  }
  // Roots of tan x + 2 tan(x/2) = 0 besides 2 pi Z: x = 2 atan(sqrt 2), 2 pi - 2 atan(sqrt 2).
  std::vector<double> want = {kLambda0, pi, 2.0 * pi - kLambda0, 2.0 * pi};
  o.Require(got.size() == want.size(), "expected 4 embedded eigenvalues, got " + std::to_string(got.size()));
  if (got.size() == want.size())
  {
    double worst = 0.0;
    for (size_t i = 0; i < want.size(); i++)
    {
      worst = std::max(worst, std::abs(got[i] - want[i]));
    }
    o.Require(worst <= 1e-8, "max deviation from closed form " + Fmt("%.2e", worst));
    o.Require(std::abs(got[0] - kLambda0) <= 1e-8, "first point vs 2 atan(sqrt 2)");
    o.Require(std::abs(got[0] - 1.9106) <= 5e-5, "first point vs 1.9106");
    o.Note("lambda0 = " + Fmt("%.15f", got[0]) + ", |lambda0 - 2 atan sqrt 2| = " +
           Fmt("%.1e", std::abs(got[0] - kLambda0)) + ", |lambda0 - 1.910633| = " +
           Fmt("%.1e", std::abs(got[0] - 1.910633)) + ", next = " + Fmt("%.15f", got.size() > 2 ? got[2] : NAN));
  }
  return o;
}

Outcome Criterion2()
{
  Outcome o;
  MetricGraph g = fixtures::ExampleTwo();
  SpectralPoint sp = Seed(g, kLambda0);
  o.Require(sp.kind == SpectralKind::EmbeddedEigenvalue && sp.multiplicity == 1, "simple embedded eigenvalue");
  EdgeWave u = Eigenfunction(g, sp);
  const double l = sp.lambda.real();
  const Complex c = EvalWave(g, u, {EdgeKind::Finite, 0}, 0.5) / std::sin(0.5 * l);
  const double sgn[5] = {1.0, 1.0, -1.0, -1.0, 0.0};
  double worst = 0.0;
  for (int m = 0; m < 5; m++)
  {
    for (int i = 0; i <= 20; i++)
    {
      const double x = i / 20.0;
      const Complex want = (m < 4) ? c * sgn[m] * std::sin(l * x)
                                   : c * std::sin(l) / std::sin(0.5 * l) * std::sin(l * (x - 0.5));
      worst = std::max(worst, std::abs(EvalWave(g, u, {EdgeKind::Finite, m}, x) - want) / std::abs(c));
    }
  }
  const double uv3 = std::abs(VertexTrace(g, u, {EdgeKind::Finite, 0}, g.VertexIndex("v3")));
  o.Require(worst <= 1e-8, "pattern deviation " + Fmt("%.2e", worst));
  o.Require(uv3 > 1e-6, "u(v3) vanishes");
  o.Note("max relative deviation " + Fmt("%.2e", worst) + ", |u(v3)| = " + Fmt("%.6f", uv3) +
         ", C sin(lambda0) = " + Fmt("%.6f", std::abs(c) * std::sin(l)));
  return o;
}

struct FamilyRun
{
  FgrReport report;
  ModelComparison cmp;
  Trajectory traj;
};

FamilyRun RunFamily(char fam)
{
  MetricGraph g = fixtures::TwoCycle();
  SpectralPoint sp = Seed(g, pi);
  PerturbationFamily p = fixtures::TwoCycleFamily(g, fam);
  FamilyRun r;
  r.report = FgrCoefficients(g, sp, Adot(p, g));
  std::vector<double> grid = Grid(0.0025, 8);
  for (double t : {0.02, 0.04})
  {
    grid.push_back(t);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(), [](double a, double b) { return std::abs(a - b) < 1e-15; }),
             grid.end());
  r.traj = Track(g, p, sp, grid);
  if (r.traj.lost_track)
  {
    throw Error(ErrorCode::LostTrack, std::string("family ") + fam);
  }
  AttachModel(r.traj, r.report);
  r.cmp = CompareToModel(r.traj, r.report);
  return r;
}

Outcome Criterion3()
{
  Outcome o;
  for (char fam : {'a', 'b', 'c', 'd'})
  {
    FamilyRun r = RunFamily(fam);
    const double fgr = r.report.im_lambda_ddot, fd = r.cmp.im_second_derivative;
    if (fam == 'a')
    {
      o.Require(std::abs(fgr) <= 1e-8 && std::abs(fd) <= 1e-8, "family (a) not zero");
    }
    else
    {
      o.Require(std::abs(fd - fgr) <= 1e-2 * std::abs(fgr), std::string("family (") + fam + ")");
    }
    o.Note(std::string("(") + fam + ") fgr " + Fmt("%.8f", fgr) + " vs trajectory " + Fmt("%.8f", fd));
  }
  return o;
}

Outcome Criterion4()
{
  Outcome o;
  const double want[4] = {pi, pi / 2.0, 0.0, -pi / 2.0};
  int i = 0;
  for (char fam : {'a', 'b', 'c', 'd'})
  {
    FamilyRun r = RunFamily(fam);
    const double diff = std::abs(r.report.lambda_dot - r.cmp.re_first_derivative);
    o.Require(diff <= 1e-5, std::string("family (") + fam + ") slope");
    o.Require(std::abs(r.report.lambda_dot - want[i]) <= 1e-10, std::string("family (") + fam + ") closed form");
    o.Note(std::string("(") + fam + ") " + Fmt("%.10f", r.report.lambda_dot) + " vs " +
           Fmt("%.10f", r.cmp.re_first_derivative));
    i++;
  }
  return o;
}

Outcome Criterion5()
{
  Outcome o;
  for (char fam : {'b', 'c', 'd'})
  {
    FamilyRun r = RunFamily(fam);
    std::vector<double> ratio;
    for (double t : {0.01, 0.02, 0.04})
    {
      for (const auto &s : r.traj.samples)
      {
        if (std::abs(s.t - t) < 1e-15)
        {
          ratio.push_back(std::abs(s.lambda.imag() - 0.5 * t * t * r.report.im_lambda_ddot) / (t * t * t));
        }
      }
    }
    const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
    const double spread = *hi / *lo;
    if (fam == 'b')
    {
      o.Require(ratio.size() == 3 && spread < 3.0, "family (b) ratio spread " + Fmt("%.3f", spread));
      o.Note("(b) ratios " + Fmt("%.5f", ratio[0]) + ", " + Fmt("%.5f", ratio[1]) + ", " + Fmt("%.5f", ratio[2]));
    }
    else
    {
      o.Note(std::string("(") + fam + ") informational ratios " + Fmt("%.5f", ratio[0]) + ", " +
             Fmt("%.5f", ratio[1]) + ", " + Fmt("%.5f", ratio[2]));
    }
  }
  return o;
}

Outcome Criterion6()
{
  Outcome o;
  MetricGraph g = fixtures::TwoCycle();
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  double worst = 0.0;
  for (double lambda : {pi, 2.0 * pi})
  {
    SpectralPoint sp = Seed(g, lambda);
    for (int trial = 0; trial < 50; trial++)
    {
      std::vector<double> adot = {d(rng), d(rng)};
      for (const auto &b : FgrCoefficients(g, sp, adot).boundary_terms)
      {
        worst = std::max(worst, std::abs(b));
      }
    }
  }
  o.Require(worst <= 1e-9, "boundary term " + Fmt("%.2e", worst));
  o.Note("max boundary term " + Fmt("%.2e", worst) + " over 100 random adot");
  return o;
}

Outcome Criterion7()
{
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lam(0.2, 10.0);
  double unitarity = 0.0;
  for (int trial = 0; trial < 100; trial++)
  {
    MetricGraph g = oracle::RandomGraph(rng, 4, 3);
    Eigen::MatrixXcd S = ScatteringMatrix(g, lam(rng));
    unitarity = std::max(unitarity, (S.adjoint() * S - Eigen::MatrixXcd::Identity(S.rows(), S.cols())).norm());
  }
  double half = 0.0;
  for (double l : {0.3, 1.0, 2.7, 9.9})
  {
    half = std::max(half, std::abs(ScatteringMatrix(fixtures::HalfLine(), l)(0, 0) - 1.0));
  }
  double transparency = 0.0;
  for (double len : {0.5, 1.0, 1.7})
  {
    for (double l : {0.4, 3.3, 7.1})
    {
      Eigen::MatrixXcd S = ScatteringMatrix(fixtures::Line(len), l);
      transparency = std::max({transparency, std::abs(S(0, 0)), std::abs(S(1, 1)), std::abs(std::abs(S(1, 0)) - 1.0)});
    }
  }
  o.Require(unitarity <= 1e-9, "unitarity");
  o.Require(half <= 1e-10, "half-line");
  o.Require(transparency <= 1e-10, "transparency");
  o.Note("max ||S*S - I|| " + Fmt("%.2e", unitarity) + ", half-line |s - 1| " + Fmt("%.2e", half) +
         ", degree-2 defect " + Fmt("%.2e", transparency));
  return o;
}

Outcome Criterion8()
{
  Outcome o;
  MetricGraph g = fixtures::TwoCycle();
  SpectralPoint sp = Seed(g, pi);
  EdgeWave u = Eigenfunction(g, sp);
  PerturbationFamily p = fixtures::TwoCycleFamily(g, 'b');
  std::vector<double> ratio;
  for (double t : {2.5e-3, 5e-3, 1e-2})
  {
    Quasimode q = BuildShiftedQuasimode(g, p, t, pi, u);
    ProximityResult r = CheckResonanceProximity(q.graph, pi, q.epsilon, 0.9);
    g_windows++;
    g_window_mismatches += r.counts_consistent ? 0 : 1;
    ratio.push_back(q.epsilon / t);
    o.Require(r.holds, "no resonance within eps^0.9 at t = " + Fmt("%g", t));
    o.Note("t " + Fmt("%g", t) + ": eps/t " + Fmt("%.5f", q.epsilon / t) + ", distance/eps^0.9 " +
           Fmt("%.4f", r.distance / r.radius) + ", C_observed " + Fmt("%.4f", r.distance / q.epsilon));
  }
  const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
  const double variation = (*hi - *lo) / *hi;
  o.Require(variation <= 0.2, "eps/t variation " + Fmt("%.3f", variation));
  o.Note("eps/t variation " + Fmt("%.4f", variation));
  // Same loop where eps < 1e-2.
  for (double t : {2.5e-7, 5e-7})
  {
    Quasimode q = BuildShiftedQuasimode(g, p, t, pi, u);
    ProximityResult r = CheckResonanceProximity(q.graph, pi, q.epsilon, 0.9);
    g_windows++;
    g_window_mismatches += r.counts_consistent ? 0 : 1;
    o.Require(q.epsilon < 1e-2 && r.holds, "small-eps regime at t = " + Fmt("%g", t));
    o.Note("t " + Fmt("%g", t) + ": eps " + Fmt("%.3e", q.epsilon) + ", distance/eps^0.9 " +
           Fmt("%.4f", r.distance / r.radius));
  }
  return o;
}

Outcome Criterion9()
{
  Outcome o;
  MetricGraph g = fixtures::TwoCycle();
  SpectralPoint seed = Seed(g, pi);
  PerturbationFamily p = fixtures::TwoCycleFamily(g, 'b');
  std::vector<double> grid = {0.0, 0.0125, 0.025, 0.0375, 0.05};
  Trajectory traj = Track(g, p, seed, grid);
  o.Require(!traj.lost_track, "tracking");
  std::vector<double> c0;
  double flux = 0.0;
  for (const auto &s : traj.samples)
  {
    if (s.t == 0.0 || s.t == 0.0375)
    {
      continue;
    }
    MetricGraph gt = GraphAt(p, g, s.t);
    SpectralPoint sp = MakeSpectralPoint(gt, s.lambda, 1);
    ConverseOptions opts;
    opts.lambda0 = pi;
    ConverseResult r = QuasimodeFromResonance(gt, sp, 0.45, opts);
    c0.push_back(r.c0);
    flux = std::max(flux, r.flux_defect);
  }
  const double C0 = *std::max_element(c0.begin(), c0.end());
  const double spread = C0 / *std::min_element(c0.begin(), c0.end());
  o.Require(c0.size() == 3 && spread <= 1.2, "C0 not uniform, spread " + Fmt("%.3f", spread));
  o.Require(flux <= 1e-8, "flux identity " + Fmt("%.2e", flux));
  o.Note("C0 = " + Fmt("%.4f", C0) + " (values " + Fmt("%.4f", c0[0]) + ", " + Fmt("%.4f", c0[1]) + ", " +
         Fmt("%.4f", c0[2]) + "), flux defect " + Fmt("%.1e", flux));
  return o;
}

Outcome Criterion10()
{
  Outcome o;
  std::mt19937_64 rng(10);
  double worst = 0.0, lowest = INFINITY;
  int checks = 0;
  for (int trial = 0; trial < 20; trial++)
  {
    MetricGraph g = oracle::SimpleCompact(rng);
    const int k = std::uniform_int_distribution<int>(0, g.NumEdges() - 1)(rng);
    for (int p = 1; p <= 5; p++)
    {
      DerivativeCheck d = EigenvalueDerivativeCheck(g, p, ShrinkEdge(g, k));
      worst = std::max(worst, std::abs(d.analytic - d.finite_difference) / std::max(std::abs(d.analytic), d.mu));
      lowest = std::min({lowest, d.analytic, d.finite_difference});
      checks++;
    }
  }
  o.Require(worst <= 1e-6, "relative error " + Fmt("%.2e", worst));
  o.Require(lowest >= -1e-9, "negative derivative " + Fmt("%.2e", lowest));
  o.Note(std::to_string(checks) + " checks, max relative error " + Fmt("%.2e", worst) + ", min derivative " +
         Fmt("%.3e", lowest));
  return o;
}

Outcome Criterion11()
{
  Outcome o;
  for (MetricGraph g : {fixtures::TwoCycle(), fixtures::ExampleTwo()})
  {
    SpectralSearch right = Search(g, {0.5, 7.0, -1.2, 0.1});
    SpectralSearch left = Search(g, {-7.0, -0.5, -1.2, 0.1});
    double worst = 0.0;
    for (const auto &p : right.points)
    {
      double best = INFINITY;
      for (const auto &q : left.points)
      {
        best = std::min(best, std::abs(q.lambda + std::conj(p.lambda)));
      }
      worst = std::max(worst, best);
    }
    o.Require(right.points.size() == left.points.size() && worst <= 1e-9, "mirror " + Fmt("%.2e", worst));
    o.Note(std::to_string(right.points.size()) + " points mirrored to " + Fmt("%.1e", worst));
  }
  o.Require(g_window_mismatches == 0, std::to_string(g_window_mismatches) + " windows disagree");
  o.Note("winding = roots on " + std::to_string(g_windows) + " windows");
  return o;
}

}  // namespace

int main()
{
  const std::vector<std::function<Outcome()>> criteria = {Criterion1, Criterion2, Criterion3, Criterion4,
                                                          Criterion5, Criterion6, Criterion7, Criterion8,
                                                          Criterion9, Criterion10, Criterion11};
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); i++)
  {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
      o = criteria[i]();
    }
    catch (const std::exception &e)
    {
      o.pass = false;
      o.Note(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu: %s (%.2f s) %s\n", i + 1, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    failures += o.pass ? 0 : 1;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
