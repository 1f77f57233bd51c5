// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef QGRES_QUASIMODE_HPP
#define QGRES_QUASIMODE_HPP

#include <optional>
#include <vector>
#include <json.hpp>
#include "qgres/cutoff.hpp"
#include "qgres/perturbation.hpp"
#include "qgres/secular.hpp"

namespace qgres
{

// Edge m of the deformed graph, length base_length + shift.
// Split edges carry chi0(x/l) w(x) + chi1((x - shift)/l) w(x - shift), chi1 = 1 - chi0.
struct QuasimodeEdge
{
  Complex alpha, beta;
  double base_length;
  double shift;
  bool split;
};

// amplitude e^{i lambda x} chi(x / radius) on the lead.
struct QuasimodeLead
{
  Complex amplitude;
  double radius;
};

struct Quasimode
{
  MetricGraph graph;
  Complex wave_lambda;
  double lambda0 = 0.0;
  double t = 0.0;
  double epsilon = 0.0;
  double R = 1.0;
  double scale = 1.0;
  std::vector<QuasimodeEdge> edges;
  std::vector<QuasimodeLead> leads;  // empty entries vanish
  SmoothStep edge_cutoff{0.45, 0.55};
  SmoothStep lead_cutoff{1.0, 1.9};
};

struct ComplexJet
{
  Complex value, d1, d2;
};

ComplexJet EvaluateQuasimode(const Quasimode &q, EdgeRef e, double x);

// -u'' - lambda0^2 u.
Complex QuasimodeResidual(const Quasimode &q, EdgeRef e, double x);

double QuasimodeNorm(const Quasimode &q);
double QuasimodeResidualNorm(const Quasimode &q);

// Largest continuity or Kirchhoff defect over the vertices of q.graph.
double QuasimodeVertexDefect(const Quasimode &q);

Quasimode BuildShiftedQuasimode(const MetricGraph &g, const PerturbationFamily &p, double t,
                                double lambda0, const EdgeWave &u0);

struct ProximityResult
{
  bool holds = false;
  double distance = 0.0;
  double radius = 0.0;
  std::optional<SpectralPoint> witness;
  bool counts_consistent = true;
};

ProximityResult CheckResonanceProximity(const MetricGraph &g_t, double lambda0, double epsilon,
                                        double gamma);

struct ConverseOptions
{
  std::optional<double> lambda0;  // defaults to Re lambda
  double R = 1.0;
  std::optional<double> delta;    // defaults to lambda0 / 2
};

struct ConverseResult
{
  Quasimode mode;
  double residual = 0.0;
  double epsilon = 0.0;
  double lambda0 = 0.0;
  double c0 = 0.0;
  double flux_lhs = 0.0;
  double flux_rhs = 0.0;
  double flux_defect = 0.0;
};

ConverseResult QuasimodeFromResonance(const MetricGraph &g, const SpectralPoint &sp, double r,
                                      const ConverseOptions &opts = {});

struct QuasimodeReport
{
  double lambda0 = 0.0;
  double t = 0.0;
  double epsilon = 0.0;
  double gamma = 0.0;
  double distance = 0.0;
  bool holds = false;
  double c_observed = 0.0;  // distance / epsilon
  double epsilon_over_t = 0.0;
  std::optional<Complex> witness;
};

nlohmann::json ToJson(const QuasimodeReport &report);

}  // namespace qgres

#endif  // QGRES_QUASIMODE_HPP
