// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "qgres/fgr.hpp"

#include <cmath>
#include <numbers>
#include "qgres/error.hpp"

namespace qgres
{

using namespace std::complex_literals;

namespace
{

void CheckAdot(const MetricGraph &g, std::span<const double> adot)
{
  if (static_cast<int>(adot.size()) != g.NumEdges())
  {
    throw Error(ErrorCode::InvalidInput, "adot size does not match the edge count");
  }
}

nlohmann::json Pair(Complex z)
{
  return nlohmann::json::array({z.real(), z.imag()});
}

nlohmann::json Pairs(const std::vector<Complex> &v)
{
  nlohmann::json j = nlohmann::json::array();
  for (const auto &z : v)
  {
    j.push_back(Pair(z));
  }
  return j;
}

}  // namespace

ZDot FirstOrderShift(const MetricGraph &g, const EdgeWave &u, std::span<const double> adot)
{
  CheckAdot(g, adot);
  const Complex z = u.lambda * u.lambda;
  Complex zdot = 2.0 * z * InnerProduct(g, u, u, adot);
  for (int v = 0; v < g.NumVertices(); v++)
  {
    for (const auto &end : g.Incident(v))
    {
      if (end.edge.kind != EdgeKind::Finite || adot[end.edge.index] == 0.0)
      {
        continue;
      }
      zdot += adot[end.edge.index] * NormalDerivative(g, u, end.edge, v) *
              std::conj(VertexTrace(g, u, end.edge, v));
    }
  }
  ZDot out;
  out.z_dot = zdot.real();
  out.z_dot_imag = zdot.imag();
  out.lambda_dot = (zdot / (2.0 * u.lambda)).real();
  return out;
}

bool Example1Condition(const MetricGraph &g, double lambda, double tol)
{
  for (const auto &e : g.Edges())
  {
    const double q = lambda * e.length / std::numbers::pi;
    if (std::abs(q - std::round(q)) > tol * std::max(1.0, std::abs(q)))
    {
      return false;
    }
  }
  return true;
}

FgrReport FgrCoefficients(const MetricGraph &g, double lambda, const EdgeWave &u,
                          std::span<const double> adot, const FgrOptions &opts)
{
  CheckAdot(g, adot);
  FgrReport r;
  r.lambda = lambda;
  r.z = lambda * lambda;
  r.conjugate_boundary = opts.conjugate_boundary;
  r.example1_condition_met = Example1Condition(g, lambda);
  const ZDot zd = FirstOrderShift(g, u, adot);
  r.z_dot = zd.z_dot;
  r.z_dot_imag = zd.z_dot_imag;
  r.lambda_dot = zd.lambda_dot;
  r.gauge = (opts.gauge == EkGauge::Extrapolated) ? "extrapolated" : "minimal_norm";

  const int K = g.NumLeads();
  r.im_lambda_ddot = 0.0;
  for (int k = 0; k < K; k++)
  {
    EdgeWave e;
    if (opts.gauge == EkGauge::Extrapolated)
    {
      try
      {
        GeneralizedEigenfunctionReport rep = GeneralizedEigenfunctionWithReport(g, lambda, k);
        e = rep.extrapolated;
        r.gauge_discrepancy =
            std::max({r.gauge_discrepancy, rep.lead_discrepancy, rep.edge_discrepancy});
      }
      catch (const Error &)
      {
        e = GeneralizedEigenfunction(g, lambda, k);
        r.gauge = "minimal_norm";
      }
    }
    else
    {
      e = GeneralizedEigenfunction(g, lambda, k);
    }

    const Complex volume = lambda * InnerProduct(g, u, e, adot);
    Complex boundary = 0.0;
    for (int v = 0; v < g.NumVertices(); v++)
    {
      for (const auto &end : g.Incident(v))
      {
        if (end.edge.kind != EdgeKind::Finite || adot[end.edge.index] == 0.0)
        {
          continue;
        }
        const Complex du = NormalDerivative(g, u, end.edge, v);
        const Complex uv = VertexTrace(g, u, end.edge, v);
        Complex ev = VertexTrace(g, e, end.edge, v);
        Complex dev = NormalDerivative(g, e, end.edge, v);
        if (opts.conjugate_boundary)
        {
          ev = std::conj(ev);
          dev = std::conj(dev);
        }
        boundary += 0.25 * adot[end.edge.index] * (3.0 * du * ev - uv * dev);
      }
    }
    boundary /= lambda;
    r.volume_terms.push_back(volume);
    r.boundary_terms.push_back(boundary);
    r.F.push_back(volume + boundary);
    r.im_lambda_ddot -= std::norm(volume + boundary);
  }
  return r;
}

FgrReport FgrCoefficients(const MetricGraph &g, const SpectralPoint &sp,
                          std::span<const double> adot, const FgrOptions &opts)
{
  const EdgeWave u = Eigenfunction(g, sp);
  return FgrCoefficients(g, sp.lambda.real(), u, adot, opts);
}

Complex SecondOrderModel(double lambda, double lambda_dot, double im_lambda_ddot, double t)
{
  return lambda + t * lambda_dot + 0.5i * t * t * im_lambda_ddot;
}

Complex SecondOrderModel(const FgrReport &report, double t)
{
  return SecondOrderModel(report.lambda, report.lambda_dot, report.im_lambda_ddot, t);
}

nlohmann::json ToJson(const FgrReport &r)
{
  nlohmann::json j;
  j["lambda"] = r.lambda;
  j["z"] = r.z;
  j["z_dot"] = r.z_dot;
  j["z_dot_imag"] = r.z_dot_imag;
  j["lambda_dot"] = r.lambda_dot;
  j["F"] = Pairs(r.F);
  j["volume_terms"] = Pairs(r.volume_terms);
  j["boundary_terms"] = Pairs(r.boundary_terms);
  j["im_lambda_ddot"] = r.im_lambda_ddot;
  j["example1_condition_met"] = r.example1_condition_met;
  j["conjugate_boundary"] = r.conjugate_boundary;
  j["gauge"] = r.gauge;
  j["gauge_discrepancy"] = r.gauge_discrepancy;
  return j;
}

}  // namespace qgres
