// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "qgres/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include "qgres/error.hpp"

namespace qgres
{

namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Quadratic extrapolation through the last up-to-three samples.
Complex Predict(const std::vector<std::pair<double, Complex>> &hist, double t)
{
  const size_t n = hist.size();
  if (n == 1)
  {
    return hist[0].second;
  }
  if (n == 2)
  {
    const auto &[t0, l0] = hist[0];
    const auto &[t1, l1] = hist[1];
    return l1 + (l1 - l0) * ((t - t1) / (t1 - t0));
  }
  Complex sum = 0.0;
  for (size_t i = n - 3; i < n; i++)
  {
    Complex term = hist[i].second;
    for (size_t j = n - 3; j < n; j++)
    {
      if (j != i)
      {
        term *= (t - hist[j].first) / (hist[i].first - hist[j].first);
      }
    }
    sum += term;
  }
  return sum;
}

const TrajectorySample *FindSample(const Trajectory &traj, double t)
{
  for (const auto &s : traj.samples)
  {
    if (s.status == SampleStatus::Converged && std::abs(s.t - t) <= 1e-12 * std::max(1.0, std::abs(t)))
    {
      return &s;
    }
  }
  return nullptr;
}

}  // namespace

double NearestOtherPoint(const MetricGraph &g, Complex seed, double halfwidth)
{
  Window w{seed.real() - halfwidth, seed.real() + halfwidth, seed.imag() - halfwidth,
           seed.imag() + halfwidth};
  if (w.re_min <= 0.0 && seed.real() > 0.0)
  {
    w.re_min = std::min(0.1, 0.5 * seed.real());
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto &sp : FindSpectralPoints(g, w).points)
  {
    const double d = std::abs(sp.lambda - seed);
    if (d > 1e-8 * std::max(1.0, std::abs(seed)))
    {
      best = std::min(best, d);
    }
  }
  return best;
}

Trajectory Track(const MetricGraph &g, const PerturbationFamily &p, const SpectralPoint &seed,
                 std::span<const double> t_grid, const TrackOptions &opts)
{
  if (seed.multiplicity != 1)
  {
    throw Error(ErrorCode::NotSimple, "tracking requires a simple spectral point");
  }
  if (t_grid.empty() || !std::is_sorted(t_grid.begin(), t_grid.end()) ||
      std::adjacent_find(t_grid.begin(), t_grid.end()) != t_grid.end())
  {
    throw Error(ErrorCode::InvalidInput, "t grid must be strictly ascending");
  }
  auto zero = std::find(t_grid.begin(), t_grid.end(), 0.0);
  if (zero == t_grid.end())
  {
    throw Error(ErrorCode::InvalidInput, "t grid must contain 0");
  }

  Trajectory traj;
  if (opts.step_cap)
  {
    traj.step_cap = *opts.step_cap;
  }
  else
  {
    const double d = NearestOtherPoint(g, seed.lambda, opts.window_halfwidth);
    traj.step_cap = 0.5 * (std::isfinite(d) ? d : opts.window_halfwidth);
  }

  const int n = static_cast<int>(t_grid.size());
  const int i0 = static_cast<int>(zero - t_grid.begin());
  std::vector<std::optional<TrajectorySample>> slots(n);

  auto solve = [&](double t, Complex guess) -> std::optional<Complex>
  {
    MetricGraph gt = GraphAt(p, g, t);
    return PolishRoot(gt, guess, opts.tol, opts.max_newton);
  };
  auto residual = [&](double t, Complex lambda)
  { return DetSecular(GraphAt(p, g, t), lambda).Abs(); };

  auto start = solve(0.0, seed.lambda);
  if (!start || std::abs(*start - seed.lambda) > traj.step_cap)
  {
    throw Error(ErrorCode::LostTrack, "seed does not polish at t = 0");
  }
  Complex lambda0 = *start;
  if (seed.kind == SpectralKind::EmbeddedEigenvalue)
  {
    lambda0 = lambda0.real();
  }
  slots[i0] = TrajectorySample{0.0, lambda0, kNaN, residual(0.0, lambda0), SampleStatus::Converged};

  for (int dir : {1, -1})
  {
    std::vector<std::pair<double, Complex>> hist{{0.0, lambda0}};
    for (int i = i0 + dir; i >= 0 && i < n; i += dir)
    {
      const double t = t_grid[i];
      std::optional<Complex> z;
      try
      {
        z = solve(t, Predict(hist, t));
      }
      catch (const Error &e)
      {
        if (e.Code() != ErrorCode::NonpositiveLength)
        {
          throw;
        }
      }
      if (!z || std::abs(*z - hist.back().second) > traj.step_cap)
      {
        slots[i] = TrajectorySample{t, Complex(kNaN, kNaN), kNaN, kNaN, SampleStatus::LostTrack};
        traj.lost_track = true;
        break;
      }
      slots[i] = TrajectorySample{t, *z, kNaN, residual(t, *z), SampleStatus::Converged};
      hist.push_back({t, *z});
    }
  }
  for (auto &s : slots)
  {
    if (s)
    {
      traj.samples.push_back(*s);
    }
  }
  return traj;
}

void AttachModel(Trajectory &traj, const FgrReport &report)
{
  for (auto &s : traj.samples)
  {
    s.model = SecondOrderModel(report, s.t);
  }
}

void WriteTrajectoryCsv(std::ostream &out, const Trajectory &traj)
{
  out << "t,re_lambda,im_lambda,re_model,im_model,residual\n";
  char buf[256];
  for (const auto &s : traj.samples)
  {
    if (s.status != SampleStatus::Converged)
    {
      continue;
    }
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t,
                  s.lambda.real(), s.lambda.imag(), s.model.real(), s.model.imag(), s.residual);
    out << buf;
  }
}

ModelComparison CompareToModel(const Trajectory &traj, const FgrReport &report,
                               const CompareOptions &opts)
{
  ModelComparison c;
  int nonzero = 0;
  for (const auto &s : traj.samples)
  {
    if (s.status != SampleStatus::Converged || s.t == 0.0)
    {
      continue;
    }
    nonzero++;
    const Complex diff = s.lambda - SecondOrderModel(report, s.t);
    const double at = std::abs(s.t);
    c.max_re_residual = std::max(c.max_re_residual, std::abs(diff.real()) / (at * at));
    c.max_im_residual = std::max(c.max_im_residual, std::abs(diff.imag()) / (at * at * at));
  }
  if (nonzero < 4)
  {
    throw Error(ErrorCode::GridTooCoarse, "need at least 4 nonzero samples");
  }
  const TrajectorySample *s0 = FindSample(traj, 0.0);
  if (!s0)
  {
    throw Error(ErrorCode::GridTooCoarse, "no sample at t = 0");
  }
  const double h1 = opts.h1, h2 = opts.h2;
  const TrajectorySample *p1 = FindSample(traj, h1), *m1 = FindSample(traj, -h1);
  const TrajectorySample *p2 = FindSample(traj, h2), *m2 = FindSample(traj, -h2);
  const double w = h1 * h1 / (h1 * h1 - h2 * h2);
  if (p1 && m1 && p2 && m2)
  {
    c.two_sided = true;
    auto d2 = [&](const TrajectorySample *p, const TrajectorySample *m, double h)
    { return (p->lambda.imag() - 2.0 * s0->lambda.imag() + m->lambda.imag()) / (h * h); };
    auto d1 = [&](const TrajectorySample *p, const TrajectorySample *m, double h)
    { return (p->lambda.real() - m->lambda.real()) / (2.0 * h); };
    c.im_second_derivative = w * d2(p2, m2, h2) + (1.0 - w) * d2(p1, m1, h1);
    c.re_first_derivative = w * d1(p2, m2, h2) + (1.0 - w) * d1(p1, m1, h1);
    return c;
  }
  const TrajectorySample *q1 = FindSample(traj, h2), *q2 = FindSample(traj, 2 * h2),
                         *q3 = FindSample(traj, 3 * h2);
  if (q1 && q2 && q3)
  {
    const double f0 = s0->lambda.imag();
    c.im_second_derivative =
        (2.0 * f0 - 5.0 * q1->lambda.imag() + 4.0 * q2->lambda.imag() - q3->lambda.imag()) /
        (h2 * h2);
    c.re_first_derivative = (-11.0 * s0->lambda.real() + 18.0 * q1->lambda.real() -
                             9.0 * q2->lambda.real() + 2.0 * q3->lambda.real()) /
                            (6.0 * h2);
    return c;
  }
  throw Error(ErrorCode::GridTooCoarse, "grid lacks the stencil points");
}

MetricGraph CapLeads(const MetricGraph &g, double rho)
{
  RawGraph raw = g.ToRaw();
  for (const auto &l : raw.leads)
  {
    const std::string cap = "cap_" + l.id;
    raw.vertices.push_back(cap);
    raw.edges.push_back({l.id, l.vertex, cap, rho});
  }
  raw.leads.clear();
  return ValidateGraph(raw);
}

std::vector<SpectralPoint> CompactSpectrum(const MetricGraph &g, int count)
{
  if (g.NumLeads() != 0)
  {
    throw Error(ErrorCode::InvalidInput, "compact spectrum requires a graph without leads");
  }
  const double L = g.TotalLength();
  double top = std::numbers::pi * (count + g.NumEdges() + 2) / L + 1.0;
  for (int attempt = 0; attempt < 8; attempt++, top *= 2.0)
  {
    std::vector<SpectralPoint> pts = FindSpectralPoints(g, {0.05, top, -0.3, 0.3}).points;
    int total = 0;
    for (const auto &sp : pts)
    {
      total += sp.multiplicity;
    }
    if (total >= count)
    {
      return pts;
    }
  }
  throw Error(ErrorCode::InvalidInput, "could not find enough eigenvalues");
}

DerivativeCheck EigenvalueDerivativeCheck(const MetricGraph &g, int p,
                                          const PerturbationFamily &family)
{
  if (p < 1)
  {
    throw Error(ErrorCode::InvalidInput, "eigenvalue index starts at 1");
  }
  const std::vector<SpectralPoint> pts = CompactSpectrum(g, p + 1);
  const SpectralPoint *sp = nullptr;
  int seen = 0;
  for (const auto &pt : pts)
  {
    seen += pt.multiplicity;
    if (seen >= p)
    {
      sp = &pt;
      break;
    }
  }
  if (sp == nullptr)
  {
    throw Error(ErrorCode::InvalidInput, "eigenvalue " + std::to_string(p) + " not found");
  }
  if (sp->multiplicity != 1)
  {
    throw Error(ErrorCode::NotSimple, "eigenvalue " + std::to_string(p) + " is degenerate");
  }
  const double lambda = sp->lambda.real();
  const EdgeWave u = Eigenfunction(g, *sp);
  const std::vector<double> adot = Adot(family, g);

  DerivativeCheck out;
  out.p = p;
  out.mu = lambda * lambda;
  for (int m = 0; m < g.NumEdges(); m++)
  {
    const Complex a = Complex(0.0, 1.0) * (u.alpha[m] - u.beta[m]);
    const Complex b = u.alpha[m] + u.beta[m];
    out.analytic += adot[m] * out.mu * g.Edges()[m].length * (std::norm(a) + std::norm(b));
  }

  auto mu_at = [&](double t)
  {
    auto z = PolishRoot(GraphAt(family, g, t), lambda, 1e-14, 60);
    if (!z)
    {
      throw Error(ErrorCode::LostTrack, "eigenvalue lost at t = " + std::to_string(t));
    }
    return (*z * *z).real();
  };
  const double h1 = 1e-3, h2 = 5e-4;
  const double d1 = (mu_at(h1) - mu_at(-h1)) / (2.0 * h1);
  const double d2 = (mu_at(h2) - mu_at(-h2)) / (2.0 * h2);
  out.finite_difference = (4.0 * d2 - d1) / 3.0;
  out.monotone = out.analytic >= -1e-9 && out.finite_difference >= -1e-9;
  return out;
}

PerturbationFamily ShrinkEdge(const MetricGraph &g, int edge)
{
  RawPerturbation raw;
  raw.mode = PerturbationMode::LogScale;
  raw.entries[g.Edges().at(edge).id] = {0.0, 1.0};
  return ValidatePerturbation(raw, g);
}

}  // namespace qgres
