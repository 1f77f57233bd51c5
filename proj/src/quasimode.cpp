// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "qgres/quasimode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include "qgres/error.hpp"
#include "qgres/quadrature.hpp"

namespace qgres
{

using namespace std::complex_literals;

namespace
{

constexpr int kQuadraturePoints = 128;

struct Piece
{
  double a, b;
  bool band;
  double c0, c1;  // constant cutoff values off the bands
};

std::vector<Piece> EdgePieces(const Quasimode &q, int m)
{
  const QuasimodeEdge &e = q.edges[m];
  const double l = e.base_length, d = e.shift, L = l + d;
  if (!e.split)
  {
    return {{0.0, L, false, 1.0, 0.0}};
  }
  const double s0 = q.edge_cutoff.Start(), s1 = q.edge_cutoff.End();
  std::vector<double> br{0.0, s0 * l, s1 * l, s0 * l + d, s1 * l + d, L};
  for (auto &x : br)
  {
    x = std::clamp(x, 0.0, L);
  }
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  std::vector<Piece> pieces;
  for (size_t i = 0; i + 1 < br.size(); i++)
  {
    const double a = br[i], b = br[i + 1], mid = 0.5 * (a + b);
    const double u0 = mid / l, u1 = (mid - d) / l;
    const bool band = (u0 > s0 && u0 < s1) || (u1 > s0 && u1 < s1);
    pieces.push_back({a, b, band, u0 <= s0 ? 1.0 : 0.0, u1 >= s1 ? 1.0 : 0.0});
  }
  return pieces;
}

std::vector<Piece> LeadPieces(const Quasimode &q, int k)
{
  const double r = q.leads[k].radius;
  return {{0.0, q.lead_cutoff.Start() * r, false, 1.0, 0.0},
          {q.lead_cutoff.Start() * r, q.lead_cutoff.End() * r, true, 0.0, 0.0}};
}

// Integral of |u|^2 over a piece where both cutoffs are constant.
double PureNormSquared(const Quasimode &q, EdgeRef e, const Piece &p)
{
  const Complex lam = q.wave_lambda;
  Complex A, B;
  if (e.kind == EdgeKind::Finite)
  {
    const QuasimodeEdge &qe = q.edges[e.index];
    A = p.c0 * qe.alpha + p.c1 * qe.alpha * std::exp(-1i * lam * qe.shift);
    B = p.c0 * qe.beta + p.c1 * qe.beta * std::exp(1i * lam * qe.shift);
  }
  else
  {
    A = q.leads[e.index].amplitude;
    B = 0.0;
  }
  return q.scale * q.scale * IntegrateProduct(A, B, lam, A, B, lam, p.a, p.b).real();
}

template <typename F>
double BandIntegral(F &&f, const Piece &p)
{
  return Integrate(GaussLegendre(kQuadraturePoints), f, p.a, p.b);
}

double EndCoordinate(const Quasimode &q, EdgeRef e, int v, bool *at_length)
{
  *at_length = false;
  if (e.kind == EdgeKind::Lead)
  {
    return 0.0;
  }
  const Edge &edge = q.graph.Edges()[e.index];
  if (v == edge.head)
  {
    *at_length = true;
    return edge.length;
  }
  return 0.0;
}

}  // namespace

ComplexJet EvaluateQuasimode(const Quasimode &q, EdgeRef e, double x)
{
  const Complex lam = q.wave_lambda, il = 1i * lam;
  auto wave = [&](Complex a, Complex b, double y) -> ComplexJet
  {
    const Complex E = std::exp(il * y);
    const Complex v = a * E + b / E;
    return {v, il * (a * E - b / E), -lam * lam * v};
  };
  auto times = [](Jet c, ComplexJet w) -> ComplexJet
  {
    return {c.value * w.value, c.d1 * w.value + c.value * w.d1,
            c.d2 * w.value + 2.0 * c.d1 * w.d1 + c.value * w.d2};
  };
  ComplexJet out{0.0, 0.0, 0.0};
  if (e.kind == EdgeKind::Finite)
  {
    const QuasimodeEdge &qe = q.edges[e.index];
    const double l = qe.base_length, d = qe.shift;
    if (x < 0.0 || x > l + d + 1e-12 * l)
    {
      throw Error(ErrorCode::OutOfRange, "x outside the edge");
    }
    if (!qe.split)
    {
      out = wave(qe.alpha, qe.beta, x);
    }
    else
    {
      Jet c0 = q.edge_cutoff(x / l);
      c0 = {c0.value, c0.d1 / l, c0.d2 / (l * l)};
      Jet c1 = q.edge_cutoff((x - d) / l);
      c1 = {1.0 - c1.value, -c1.d1 / l, -c1.d2 / (l * l)};
      const ComplexJet a = times(c0, wave(qe.alpha, qe.beta, x));
      const ComplexJet b = times(c1, wave(qe.alpha, qe.beta, x - d));
      out = {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2};
    }
  }
  else
  {
    if (x < 0.0)
    {
      throw Error(ErrorCode::OutOfRange, "x outside the lead");
    }
    if (e.index >= static_cast<int>(q.leads.size()))
    {
      return {0.0, 0.0, 0.0};
    }
    const QuasimodeLead &ql = q.leads[e.index];
    Jet c = q.lead_cutoff(x / ql.radius);
    c = {c.value, c.d1 / ql.radius, c.d2 / (ql.radius * ql.radius)};
    out = times(c, wave(ql.amplitude, 0.0, x));
  }
  return {q.scale * out.value, q.scale * out.d1, q.scale * out.d2};
}

Complex QuasimodeResidual(const Quasimode &q, EdgeRef e, double x)
{
  const ComplexJet j = EvaluateQuasimode(q, e, x);
  return -j.d2 - q.lambda0 * q.lambda0 * j.value;
}

double QuasimodeNorm(const Quasimode &q)
{
  double sum = 0.0;
  auto add = [&](EdgeRef e, const std::vector<Piece> &pieces)
  {
    for (const auto &p : pieces)
    {
      sum += p.band ? BandIntegral([&](double x) { return std::norm(EvaluateQuasimode(q, e, x).value); }, p)
                    : PureNormSquared(q, e, p);
    }
  };
  for (int m = 0; m < static_cast<int>(q.edges.size()); m++)
  {
    add({EdgeKind::Finite, m}, EdgePieces(q, m));
  }
  for (int k = 0; k < static_cast<int>(q.leads.size()); k++)
  {
    add({EdgeKind::Lead, k}, LeadPieces(q, k));
  }
  return std::sqrt(sum);
}

double QuasimodeResidualNorm(const Quasimode &q)
{
  const double shift = std::norm(q.wave_lambda * q.wave_lambda - q.lambda0 * q.lambda0);
  double sum = 0.0;
  auto add = [&](EdgeRef e, const std::vector<Piece> &pieces)
  {
    for (const auto &p : pieces)
    {
      if (p.band)
      {
        sum += BandIntegral([&](double x) { return std::norm(QuasimodeResidual(q, e, x)); }, p);
      }
      else if (shift != 0.0)
      {
        sum += shift * PureNormSquared(q, e, p);
      }
    }
  };
  for (int m = 0; m < static_cast<int>(q.edges.size()); m++)
  {
    add({EdgeKind::Finite, m}, EdgePieces(q, m));
  }
  for (int k = 0; k < static_cast<int>(q.leads.size()); k++)
  {
    add({EdgeKind::Lead, k}, LeadPieces(q, k));
  }
  return std::sqrt(sum);
}

double QuasimodeVertexDefect(const Quasimode &q)
{
  double defect = 0.0;
  for (int v = 0; v < q.graph.NumVertices(); v++)
  {
    const auto &ends = q.graph.Incident(v);
    if (ends.empty())
    {
      continue;
    }
    Complex first = 0.0, flux = 0.0;
    for (size_t i = 0; i < ends.size(); i++)
    {
      bool at_length;
      const double x = EndCoordinate(q, ends[i].edge, v, &at_length);
      const ComplexJet j = EvaluateQuasimode(q, ends[i].edge, x);
      if (i == 0)
      {
        first = j.value;
      }
      defect = std::max(defect, std::abs(j.value - first));
      flux += at_length ? j.d1 : -j.d1;
    }
    defect = std::max(defect, std::abs(flux) / std::max(1.0, std::abs(q.wave_lambda)));
  }
  return defect;
}

Quasimode BuildShiftedQuasimode(const MetricGraph &g, const PerturbationFamily &p, double t,
                                double lambda0, const EdgeWave &u0)
{
  const std::vector<double> lengths = LengthsAt(p, g, t);
  Quasimode q;
  q.graph = g.WithLengths(lengths);
  q.wave_lambda = lambda0;
  q.lambda0 = lambda0;
  q.t = t;
  for (int m = 0; m < g.NumEdges(); m++)
  {
    const double l = g.Edges()[m].length, d = lengths[m] - l;
    if (d <= -(1.0 - q.edge_cutoff.End()) * l)
    {
      throw Error(ErrorCode::SupportsOverlap,
                  "edge " + g.Edges()[m].id + " shrinks past the cutoff layout");
    }
    q.edges.push_back({u0.alpha[m], u0.beta[m], l, d, true});
  }
  const double nrm = QuasimodeNorm(q);
  if (!(nrm > 0.0))
  {
    throw Error(ErrorCode::InvalidInput, "eigenfunction vanishes");
  }
  q.scale = 1.0 / nrm;
  q.epsilon = QuasimodeResidualNorm(q);
  return q;
}

ProximityResult CheckResonanceProximity(const MetricGraph &g_t, double lambda0, double epsilon,
                                        double gamma)
{
  if (!(gamma > 0.0 && gamma < 1.0) || !(epsilon >= 0.0) || !(lambda0 > 0.0))
  {
    throw Error(ErrorCode::InvalidInput, "need 0 < gamma < 1, epsilon >= 0, lambda0 > 0");
  }
  ProximityResult out;
  out.radius = std::pow(epsilon, gamma);
  out.distance = std::numeric_limits<double>::infinity();
  const double s = std::max(1.0, lambda0);
  double r = std::max(1e-6 * s, std::min(out.radius, 1e-3 * s));
  const double r_end = std::max(r, out.radius);
  for (;;)
  {
    Window w{lambda0 - r, lambda0 + r, -r, r};
    w.re_min = std::max(w.re_min, std::min(0.1, 0.5 * lambda0));
    SpectralSearch found = FindSpectralPoints(g_t, w);
    out.counts_consistent = out.counts_consistent && found.winding_count == found.root_count;
    for (const auto &sp : found.points)
    {
      const double d = std::abs(sp.lambda - lambda0);
      if (d < out.distance)
      {
        out.distance = d;
        out.witness = sp;
      }
    }
    if (out.distance <= r || r >= r_end)
    {
      break;
    }
    r = std::min(r_end, 4.0 * r);
  }
  out.holds = out.witness.has_value() && (out.distance < out.radius || out.distance == 0.0);
  return out;
}

ConverseResult QuasimodeFromResonance(const MetricGraph &g, const SpectralPoint &sp, double r,
                                      const ConverseOptions &opts)
{
  if (sp.multiplicity != 1 || sp.kernel_basis.size() != 1)
  {
    throw Error(ErrorCode::NotSimple, "resonance must be simple");
  }
  if (!(r > 0.0) || !(r < 0.5 * opts.R))
  {
    throw Error(ErrorCode::InvalidInput, "need 0 < r < R/2");
  }
  const EdgeWave &v = sp.kernel_basis[0];
  for (const auto &c : v.lead_in)
  {
    if (c != 0.0)
    {
      throw Error(ErrorCode::NotOutgoing, "resonant state has incoming lead amplitude");
    }
  }
  if (sp.lambda.imag() > 1e-9)
  {
    throw Error(ErrorCode::NotOutgoing, "spectral point lies in the upper half-plane");
  }
  ConverseResult out;
  out.lambda0 = opts.lambda0.value_or(sp.lambda.real());
  out.epsilon = std::abs(sp.lambda - out.lambda0);
  const double delta = opts.delta.value_or(0.5 * out.lambda0);
  if (!(out.lambda0 > delta) || out.epsilon >= 0.5 * delta)
  {
    throw Error(ErrorCode::ResonanceTooDeep, "epsilon " + std::to_string(out.epsilon) +
                                                 " is not below delta/2");
  }

  Quasimode q;
  q.graph = g;
  q.wave_lambda = sp.lambda;
  q.lambda0 = out.lambda0;
  q.R = opts.R;
  for (int m = 0; m < g.NumEdges(); m++)
  {
    q.edges.push_back({v.alpha[m], v.beta[m], g.Edges()[m].length, 0.0, false});
  }
  for (int k = 0; k < g.NumLeads(); k++)
  {
    q.leads.push_back({v.lead_out[k], r});
  }
  q.scale = 1.0 / QuasimodeNorm(q);
  out.residual = QuasimodeResidualNorm(q);
  q.epsilon = out.residual;
  out.c0 = (out.epsilon > 0.0) ? out.residual / (out.epsilon * (out.lambda0 + out.epsilon)) : 0.0;

  for (const auto &a : v.lead_out)
  {
    out.flux_lhs += std::norm(a);
  }
  const double edge_norm = Norm(g, v);
  out.flux_rhs = 2.0 * std::abs(sp.lambda.imag()) * edge_norm * edge_norm;
  const double scale = std::max({out.flux_lhs, out.flux_rhs, 1e-14 * edge_norm * edge_norm});
  out.flux_defect = std::abs(out.flux_lhs - out.flux_rhs) / scale;
  out.mode = std::move(q);
  return out;
}

nlohmann::json ToJson(const QuasimodeReport &r)
{
  nlohmann::json j;
  j["lambda0"] = r.lambda0;
  j["t"] = r.t;
  j["epsilon"] = r.epsilon;
  j["gamma"] = r.gamma;
  j["distance"] = r.distance;
  j["holds"] = r.holds;
  j["C_observed"] = r.c_observed;
  j["epsilon_over_t"] = r.epsilon_over_t;
  if (r.witness)
  {
    j["witness"] = {r.witness->real(), r.witness->imag()};
  }
  return j;
}

}  // namespace qgres
