// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef QGRES_TRACKER_HPP
#define QGRES_TRACKER_HPP

#include <optional>
#include <ostream>
#include <span>
#include <vector>
#include "qgres/fgr.hpp"
#include "qgres/perturbation.hpp"
#include "qgres/secular.hpp"

namespace qgres
{

enum class SampleStatus
{
  Converged,
  LostTrack
};

struct TrajectorySample
{
  double t;
  Complex lambda;
  Complex model;
  double residual;
  SampleStatus status;
};

struct Trajectory
{
  std::vector<TrajectorySample> samples;  // ascending in t
  double step_cap = 0.0;
  bool lost_track = false;
};

struct TrackOptions
{
  double tol = 1e-12;
  std::optional<double> step_cap;
  double window_halfwidth = 1.0;
  int max_newton = 60;
};

// Distance from seed to the nearest other spectral point of g near it.
double NearestOtherPoint(const MetricGraph &g, Complex seed, double halfwidth);

Trajectory Track(const MetricGraph &g, const PerturbationFamily &p, const SpectralPoint &seed,
                 std::span<const double> t_grid, const TrackOptions &opts = {});

void AttachModel(Trajectory &traj, const FgrReport &report);

// Converged samples only.
void WriteTrajectoryCsv(std::ostream &out, const Trajectory &traj);

struct CompareOptions
{
  double h1 = 1e-2;
  double h2 = 5e-3;
};

struct ModelComparison
{
  double max_re_residual = 0.0;  // max |Re(lambda - model)| / t^2
  double max_im_residual = 0.0;  // max |Im(lambda - model)| / |t|^3
  double im_second_derivative = 0.0;
  double re_first_derivative = 0.0;
  bool two_sided = false;
};

ModelComparison CompareToModel(const Trajectory &traj, const FgrReport &report,
                               const CompareOptions &opts = {});

// Leads replaced by edges of length rho ending at free vertices.
MetricGraph CapLeads(const MetricGraph &g, double rho);

// Nonzero eigenvalues lambda_p > 0 of a compact graph, ascending, at least count of them
// counted with multiplicity.
std::vector<SpectralPoint> CompactSpectrum(const MetricGraph &g, int count);

struct DerivativeCheck
{
  int p = 0;
  double mu = 0.0;
  double analytic = 0.0;
  double finite_difference = 0.0;
  bool monotone = false;
};

// d/dt of the p-th eigenvalue mu_p = lambda_p^2 (p >= 1) under the family.
DerivativeCheck EigenvalueDerivativeCheck(const MetricGraph &g, int p,
                                          const PerturbationFamily &family);

// Single-edge family a_k(t) = t.
PerturbationFamily ShrinkEdge(const MetricGraph &g, int edge);

}  // namespace qgres

#endif  // QGRES_TRACKER_HPP
