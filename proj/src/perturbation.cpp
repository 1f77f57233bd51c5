// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "qgres/perturbation.hpp"

#include <cmath>
#include "qgres/error.hpp"

namespace qgres
{

double Polynomial::operator()(double t) const
{
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
  {
    v = v * t + *it;
  }
  return v;
}

double Polynomial::Derivative(double t) const
{
  double v = 0.0;
  for (int i = Degree(); i >= 1; i--)
  {
    v = v * t + i * coeffs[i];
  }
  return v;
}

PerturbationFamily ValidatePerturbation(const RawPerturbation &raw, const MetricGraph &g)
{
  PerturbationFamily p;
  p.mode = raw.mode;
  p.entries.assign(g.NumEdges(), std::nullopt);
  for (const auto &[id, coeffs] : raw.entries)
  {
    int m;
    try
    {
      m = g.EdgeIndex(id);
    }
    catch (const Error &)
    {
      throw Error(ErrorCode::DanglingReference, "perturbation references unknown edge " + id);
    }
    if (coeffs.empty() || static_cast<int>(coeffs.size()) > kMaxPolynomialDegree + 1)
    {
      throw Error(ErrorCode::InvalidPerturbation,
                  "edge " + id + ": polynomial must have 1 to 9 coefficients");
    }
    for (double c : coeffs)
    {
      if (!std::isfinite(c))
      {
        throw Error(ErrorCode::InvalidPerturbation, "edge " + id + ": non-finite coefficient");
      }
    }
    const double l0 = g.Edges()[m].length;
    if (raw.mode == PerturbationMode::LogScale && coeffs[0] != 0.0)
    {
      throw Error(ErrorCode::InvalidPerturbation, "edge " + id + ": a(0) must be 0");
    }
    if (raw.mode == PerturbationMode::Length && std::abs(coeffs[0] - l0) > 1e-12 * l0)
    {
      throw Error(ErrorCode::InvalidPerturbation, "edge " + id + ": l(0) must equal the edge length");
    }
    p.entries[m] = Polynomial(coeffs);
  }
  return p;
}

PerturbationFamily ZeroPerturbation(const MetricGraph &g)
{
  return ValidatePerturbation({}, g);
}

std::vector<double> LengthsAt(const PerturbationFamily &p, const MetricGraph &g, double t)
{
  if (p.NumEdges() != g.NumEdges())
  {
    throw Error(ErrorCode::InvalidPerturbation, "family and graph edge counts differ");
  }
  std::vector<double> lengths = g.Lengths();
  if (t == 0.0)
  {
    return lengths;
  }
  for (int m = 0; m < g.NumEdges(); m++)
  {
    const auto &poly = p.Entry(m);
    if (!poly)
    {
      continue;
    }
    lengths[m] = (p.Mode() == PerturbationMode::LogScale) ? std::exp(-(*poly)(t)) * lengths[m]
                                                          : (*poly)(t);
    if (!std::isfinite(lengths[m]) || lengths[m] <= 0.0)
    {
      throw Error(ErrorCode::NonpositiveLength,
                  "edge " + g.Edges()[m].id + " at t = " + std::to_string(t));
    }
  }
  return lengths;
}

MetricGraph GraphAt(const PerturbationFamily &p, const MetricGraph &g, double t)
{
  return g.WithLengths(LengthsAt(p, g, t));
}

std::vector<double> Adot(const PerturbationFamily &p, const MetricGraph &g)
{
  std::vector<double> adot(g.NumEdges(), 0.0);
  for (int m = 0; m < g.NumEdges() && m < p.NumEdges(); m++)
  {
    const auto &poly = p.Entry(m);
    if (!poly)
    {
      continue;
    }
    adot[m] = (p.Mode() == PerturbationMode::LogScale) ? poly->Coefficient(1)
                                                       : -poly->Coefficient(1) / poly->Coefficient(0);
  }
  return adot;
}

}  // namespace qgres
