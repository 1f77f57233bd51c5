// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "qgres/wavefield.hpp"

#include <algorithm>
#include <cmath>
#include "qgres/error.hpp"

namespace qgres
{

using namespace std::complex_literals;

namespace
{

// (e^z - 1)/z without cancellation.
Complex Expm1OverZ(Complex z)
{
  if (std::abs(z) < 1e-8)
  {
    return 1.0 + z / 2.0 + z * z / 6.0;
  }
  const double x = z.real(), y = z.imag();
  const double s = std::sin(0.5 * y);
  Complex em1(std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y));
  return em1 / z;
}

// Integral of e^{i kappa x} over [lo, hi].
Complex ExpIntegral(Complex kappa, double lo, double hi)
{
  const double L = hi - lo;
  return std::exp(1i * kappa * lo) * L * Expm1OverZ(1i * kappa * L);
}

void CheckRange(const MetricGraph &g, EdgeRef e, double x)
{
  const bool bad = (e.kind == EdgeKind::Finite) ? (x < 0.0 || x > g.Edges()[e.index].length)
                                                : !(x >= 0.0);
  if (bad || !std::isfinite(x))
  {
    throw Error(ErrorCode::OutOfRange, "x = " + std::to_string(x));
  }
}

// Amplitudes of e^{i lambda x} and e^{-i lambda x} on the given edge.
std::pair<Complex, Complex> Amplitudes(const EdgeWave &w, EdgeRef e)
{
  if (e.kind == EdgeKind::Finite)
  {
    return {w.alpha[e.index], w.beta[e.index]};
  }
  return {w.lead_out[e.index], w.lead_in[e.index]};
}

// Coordinate of vertex v on edge e.
double EndCoordinate(const MetricGraph &g, EdgeRef e, int v, bool *at_length)
{
  if (e.kind == EdgeKind::Finite)
  {
    const Edge &edge = g.Edges()[e.index];
    if (v == edge.tail)
    {
      *at_length = false;
      return 0.0;
    }
    if (v == edge.head)
    {
      *at_length = true;
      return edge.length;
    }
  }
  else if (g.Leads()[e.index].vertex == v)
  {
    *at_length = false;
    return 0.0;
  }
  throw Error(ErrorCode::NotIncident, "vertex is not an endpoint of the edge");
}

void CheckShape(const MetricGraph &g, const EdgeWave &w)
{
  if (static_cast<int>(w.alpha.size()) != g.NumEdges() ||
      static_cast<int>(w.beta.size()) != g.NumEdges() ||
      static_cast<int>(w.lead_in.size()) != g.NumLeads() ||
      static_cast<int>(w.lead_out.size()) != g.NumLeads())
  {
    throw Error(ErrorCode::InvalidInput, "wave does not match graph");
  }
}

}  // namespace

EdgeWave EdgeWave::Zero(const MetricGraph &g, Complex lambda)
{
  EdgeWave w;
  w.lambda = lambda;
  w.alpha.assign(g.NumEdges(), 0.0);
  w.beta.assign(g.NumEdges(), 0.0);
  w.lead_in.assign(g.NumLeads(), 0.0);
  w.lead_out.assign(g.NumLeads(), 0.0);
  return w;
}

EdgeWave &EdgeWave::operator*=(Complex c)
{
  for (auto *v : {&alpha, &beta, &lead_in, &lead_out})
  {
    for (auto &x : *v)
    {
      x *= c;
    }
  }
  return *this;
}

EdgeWave &EdgeWave::operator+=(const EdgeWave &w)
{
  for (size_t m = 0; m < alpha.size(); m++)
  {
    alpha[m] += w.alpha[m];
    beta[m] += w.beta[m];
  }
  for (size_t k = 0; k < lead_in.size(); k++)
  {
    lead_in[k] += w.lead_in[k];
    lead_out[k] += w.lead_out[k];
  }
  return *this;
}

EdgeWave &EdgeWave::operator-=(const EdgeWave &w)
{
  *this += Complex(-1.0) * w;
  return *this;
}

EdgeWave operator*(Complex c, EdgeWave w)
{
  w *= c;
  return w;
}

EdgeWave operator+(EdgeWave a, const EdgeWave &b)
{
  a += b;
  return a;
}

EdgeWave operator-(EdgeWave a, const EdgeWave &b)
{
  a -= b;
  return a;
}

Complex EvalWave(const MetricGraph &g, const EdgeWave &w, EdgeRef e, double x)
{
  CheckRange(g, e, x);
  auto [a, b] = Amplitudes(w, e);
  const Complex E = std::exp(1i * w.lambda * x);
  return a * E + b / E;
}

Complex EvalDerivative(const MetricGraph &g, const EdgeWave &w, EdgeRef e, double x)
{
  CheckRange(g, e, x);
  auto [a, b] = Amplitudes(w, e);
  const Complex E = std::exp(1i * w.lambda * x);
  return 1i * w.lambda * (a * E - b / E);
}

Complex VertexTrace(const MetricGraph &g, const EdgeWave &w, EdgeRef e, int v)
{
  bool at_length;
  double x = EndCoordinate(g, e, v, &at_length);
  return EvalWave(g, w, e, x);
}

Complex NormalDerivative(const MetricGraph &g, const EdgeWave &w, EdgeRef e, int v)
{
  bool at_length;
  double x = EndCoordinate(g, e, v, &at_length);
  Complex d = EvalDerivative(g, w, e, x);
  return at_length ? d : -d;
}

EdgeWave Derivative(const EdgeWave &w)
{
  EdgeWave d = w;
  const Complex il = 1i * w.lambda;
  for (size_t m = 0; m < w.alpha.size(); m++)
  {
    d.alpha[m] = il * w.alpha[m];
    d.beta[m] = -il * w.beta[m];
  }
  for (size_t k = 0; k < w.lead_in.size(); k++)
  {
    d.lead_out[k] = il * w.lead_out[k];
    d.lead_in[k] = -il * w.lead_in[k];
  }
  return d;
}

Complex IntegrateProduct(Complex a1, Complex b1, Complex l1, Complex a2, Complex b2, Complex l2,
                         double lo, double hi)
{
  const Complex minus = l1 - std::conj(l2), plus = l1 + std::conj(l2);
  Complex sum = 0.0;
  if (a1 != 0.0 && a2 != 0.0)
  {
    sum += a1 * std::conj(a2) * ExpIntegral(minus, lo, hi);
  }
  if (a1 != 0.0 && b2 != 0.0)
  {
    sum += a1 * std::conj(b2) * ExpIntegral(plus, lo, hi);
  }
  if (b1 != 0.0 && a2 != 0.0)
  {
    sum += b1 * std::conj(a2) * ExpIntegral(-plus, lo, hi);
  }
  if (b1 != 0.0 && b2 != 0.0)
  {
    sum += b1 * std::conj(b2) * ExpIntegral(-minus, lo, hi);
  }
  return sum;
}

Complex InnerProduct(const MetricGraph &g, const EdgeWave &u, const EdgeWave &v,
                     std::span<const double> edge_weights, std::span<const double> lead_weights)
{
  CheckShape(g, u);
  CheckShape(g, v);
  if (static_cast<int>(edge_weights.size()) != g.NumEdges() ||
      (!lead_weights.empty() && static_cast<int>(lead_weights.size()) != g.NumLeads()))
  {
    throw Error(ErrorCode::InvalidInput, "weight vector does not match graph");
  }
  Complex sum = 0.0;
  for (int m = 0; m < g.NumEdges(); m++)
  {
    if (edge_weights[m] == 0.0)
    {
      continue;
    }
    sum += edge_weights[m] * IntegrateProduct(u.alpha[m], u.beta[m], u.lambda, v.alpha[m],
                                              v.beta[m], v.lambda, 0.0, g.Edges()[m].length);
  }
  for (int k = 0; k < static_cast<int>(lead_weights.size()); k++)
  {
    if (lead_weights[k] == 0.0)
    {
      continue;
    }
    // Each surviving term e^{i kappa x} must decay on [0, inf).
    const Complex minus = u.lambda - std::conj(v.lambda), plus = u.lambda + std::conj(v.lambda);
    const Complex terms[4][2] = {{u.lead_out[k] * std::conj(v.lead_out[k]), minus},
                                 {u.lead_out[k] * std::conj(v.lead_in[k]), plus},
                                 {u.lead_in[k] * std::conj(v.lead_out[k]), -plus},
                                 {u.lead_in[k] * std::conj(v.lead_in[k]), -minus}};
    for (const auto &term : terms)
    {
      if (term[0] == 0.0)
      {
        continue;
      }
      if (!(term[1].imag() > 0.0))
      {
        throw Error(ErrorCode::DivergentLeadIntegral, "lead " + g.Leads()[k].id);
      }
      sum += lead_weights[k] * term[0] * (1i / term[1]);
    }
  }
  return sum;
}

Complex InnerProduct(const MetricGraph &g, const EdgeWave &u, const EdgeWave &v)
{
  std::vector<double> ones(g.NumEdges(), 1.0);
  return InnerProduct(g, u, v, ones);
}

double Norm(const MetricGraph &g, const EdgeWave &w)
{
  return std::sqrt(std::max(0.0, InnerProduct(g, w, w).real()));
}

Complex BoundarySum(const MetricGraph &g, const EdgeWave &f, const EdgeWave &h)
{
  Complex sum = 0.0;
  for (int v = 0; v < g.NumVertices(); v++)
  {
    for (const auto &end : g.Incident(v))
    {
      if (end.edge.kind != EdgeKind::Finite)
      {
        continue;
      }
      sum += NormalDerivative(g, f, end.edge, v) * std::conj(VertexTrace(g, h, end.edge, v));
    }
  }
  return sum;
}

Complex BoundarySumByEdge(const MetricGraph &g, const EdgeWave &f, const EdgeWave &h)
{
  Complex sum = 0.0;
  for (int m = 0; m < g.NumEdges(); m++)
  {
    const EdgeRef e{EdgeKind::Finite, m};
    const double l = g.Edges()[m].length;
    sum += EvalDerivative(g, f, e, l) * std::conj(EvalWave(g, h, e, l));
    sum += -EvalDerivative(g, f, e, 0.0) * std::conj(EvalWave(g, h, e, 0.0));
  }
  return sum;
}

double GreenIdentityDefect(const MetricGraph &g, const EdgeWave &f, const EdgeWave &h)
{
  const EdgeWave df = Derivative(f), dh = Derivative(h);
  const EdgeWave ddf = Derivative(df), ddh = Derivative(dh);
  const Complex lhs = -InnerProduct(g, ddf, h);
  const Complex first = InnerProduct(g, df, dh) - BoundarySum(g, f, h);
  const Complex second = -InnerProduct(g, f, ddh) - BoundarySum(g, f, h) +
                         std::conj(BoundarySum(g, h, f));
  return std::max(std::abs(lhs - first), std::abs(lhs - second));
}

}  // namespace qgres
