// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "qgres/secular.hpp"

#include <algorithm>
#include <cmath>
#include "qgres/error.hpp"

namespace qgres
{

using namespace std::complex_literals;

namespace
{

struct Entry
{
  int col;
  Complex value, derivative;
};

// Contributions of one edge end to the value and Kirchhoff rows.
struct EndTerms
{
  Entry value[2];
  Entry kirchhoff[2];
  int count;
  Complex value_known = 0.0, kirchhoff_known = 0.0;
};

EndTerms Terms(const MetricGraph &g, const EdgeEnd &end, Complex lambda, std::optional<int> incoming)
{
  EndTerms t{};
  const int M = g.NumEdges();
  if (end.edge.kind == EdgeKind::Lead)
  {
    const int col = 2 * M + end.edge.index;
    t.count = 1;
    t.value[0] = {col, 1.0, 0.0};
    t.kirchhoff[0] = {col, -1i, 0.0};
    if (incoming && *incoming == end.edge.index)
    {
      t.value_known = 1.0;
      t.kirchhoff_known = 1i;
    }
    return t;
  }
  const int m = end.edge.index;
  t.count = 2;
  if (!end.at_length)
  {
    t.value[0] = {2 * m, 1.0, 0.0};
    t.value[1] = {2 * m + 1, 1.0, 0.0};
    t.kirchhoff[0] = {2 * m, -1i, 0.0};
    t.kirchhoff[1] = {2 * m + 1, 1i, 0.0};
    return t;
  }
  const double l = g.Edges()[m].length;
  const Complex E = std::exp(1i * lambda * l), Einv = 1.0 / E;
  t.value[0] = {2 * m, E, 1i * l * E};
  t.value[1] = {2 * m + 1, Einv, -1i * l * Einv};
  t.kirchhoff[0] = {2 * m, 1i * E, -l * E};
  t.kirchhoff[1] = {2 * m + 1, -1i * Einv, -l * Einv};
  return t;
}

ScaledComplex Normalize(Complex m, long exponent)
{
  if (m == 0.0 || !std::isfinite(std::abs(m)))
  {
    return {m, 0};
  }
  int x;
  std::frexp(std::abs(m), &x);
  ScaledComplex s;
  s.mantissa = Complex(std::ldexp(m.real(), 1 - x), std::ldexp(m.imag(), 1 - x));
  s.exponent = static_cast<int>(exponent + x - 1);
  return s;
}

Eigen::JacobiSVD<Eigen::MatrixXcd> Svd(const Eigen::MatrixXcd &M)
{
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

constexpr double kRankThreshold = 1e-10;

Eigen::VectorXcd SolveMinimalNorm(const SecularSystem &sys)
{
  auto svd = Svd(sys.matrix);
  svd.setThreshold(kRankThreshold);
  Eigen::VectorXcd c = svd.solve(sys.rhs);
  const double res = (sys.matrix * c - sys.rhs).norm();
  const double scale = sys.rhs.norm() + sys.matrix.norm() * c.norm();
  if (!(res <= 1e-8 * scale))
  {
    throw Error(ErrorCode::SingularInconsistent,
                "residual " + std::to_string(res) + " at lambda " + std::to_string(sys.lambda.real()));
  }
  return c;
}

void RequireScattering(const MetricGraph &g, double lambda)
{
  if (g.NumLeads() < 1)
  {
    throw Error(ErrorCode::InvalidInput, "scattering requires at least one lead");
  }
  if (lambda == 0.0 || !std::isfinite(lambda))
  {
    throw Error(ErrorCode::InvalidInput, "scattering requires real lambda != 0");
  }
}

// L2-orthonormal eigenfunctions spanning the numerical kernel at real lambda.
std::vector<EdgeWave> EmbeddedKernel(const MetricGraph &g, double lambda,
                                     const Eigen::JacobiSVD<Eigen::MatrixXcd> &svd)
{
  std::vector<EdgeWave> basis;
  const auto &s = svd.singularValues();
  const int n = static_cast<int>(s.size());
  for (int i = n - 1; i >= 0 && s(i) <= kRankThreshold * s(0); i--)
  {
    EdgeWave u = WaveFromCoefficients(g, lambda, svd.matrixV().col(i));
    std::fill(u.lead_out.begin(), u.lead_out.end(), 0.0);
    for (const auto &b : basis)
    {
      u -= InnerProduct(g, u, b) * b;
    }
    double nrm = Norm(g, u);
    if (nrm > 1e-8)
    {
      u *= 1.0 / nrm;
      basis.push_back(u);
    }
  }
  return basis;
}

double MaxDifference(const std::vector<Complex> &a, const std::vector<Complex> &b)
{
  double d = 0.0;
  for (size_t i = 0; i < a.size(); i++)
  {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

}  // namespace

SecularSystem BuildSecular(const MetricGraph &g, Complex lambda, std::optional<int> incoming)
{
  if (incoming && (g.NumLeads() < 1 || *incoming < 0 || *incoming >= g.NumLeads()))
  {
    throw Error(ErrorCode::InvalidInput, "incoming lead out of range");
  }
  const int N = 2 * g.NumEdges() + g.NumLeads();
  SecularSystem sys;
  sys.lambda = lambda;
  sys.incoming = incoming;
  sys.matrix = Eigen::MatrixXcd::Zero(N, N);
  sys.derivative = Eigen::MatrixXcd::Zero(N, N);
  sys.rhs = Eigen::VectorXcd::Zero(N);
  int row = 0;
  for (int v = 0; v < g.NumVertices(); v++)
  {
    const auto &ends = g.Incident(v);
    if (ends.empty())
    {
      continue;
    }
    std::vector<EndTerms> terms;
    for (const auto &end : ends)
    {
      terms.push_back(Terms(g, end, lambda, incoming));
    }
    for (size_t j = 1; j < terms.size(); j++, row++)
    {
      for (int i = 0; i < terms[0].count; i++)
      {
        sys.matrix(row, terms[0].value[i].col) += terms[0].value[i].value;
        sys.derivative(row, terms[0].value[i].col) += terms[0].value[i].derivative;
      }
      for (int i = 0; i < terms[j].count; i++)
      {
        sys.matrix(row, terms[j].value[i].col) -= terms[j].value[i].value;
        sys.derivative(row, terms[j].value[i].col) -= terms[j].value[i].derivative;
      }
      sys.rhs(row) = -(terms[0].value_known - terms[j].value_known);
    }
    for (const auto &t : terms)
    {
      for (int i = 0; i < t.count; i++)
      {
        sys.matrix(row, t.kirchhoff[i].col) += t.kirchhoff[i].value;
        sys.derivative(row, t.kirchhoff[i].col) += t.kirchhoff[i].derivative;
      }
      sys.rhs(row) -= t.kirchhoff_known;
    }
    row++;
  }
  return sys;
}

EdgeWave WaveFromCoefficients(const MetricGraph &g, Complex lambda, const Eigen::VectorXcd &c,
                              std::optional<int> incoming)
{
  EdgeWave w = EdgeWave::Zero(g, lambda);
  const int M = g.NumEdges();
  for (int m = 0; m < M; m++)
  {
    w.alpha[m] = c(2 * m);
    w.beta[m] = c(2 * m + 1);
  }
  for (int k = 0; k < g.NumLeads(); k++)
  {
    w.lead_out[k] = c(2 * M + k);
  }
  if (incoming)
  {
    w.lead_in[*incoming] = 1.0;
  }
  return w;
}

Eigen::VectorXcd CoefficientsFromWave(const MetricGraph &g, const EdgeWave &w)
{
  const int M = g.NumEdges();
  Eigen::VectorXcd c(2 * M + g.NumLeads());
  for (int m = 0; m < M; m++)
  {
    c(2 * m) = w.alpha[m];
    c(2 * m + 1) = w.beta[m];
  }
  for (int k = 0; k < g.NumLeads(); k++)
  {
    c(2 * M + k) = w.lead_out[k];
  }
  return c;
}

Complex ScaledComplex::Value() const
{
  return Complex(std::ldexp(mantissa.real(), exponent), std::ldexp(mantissa.imag(), exponent));
}

double ScaledComplex::Abs() const
{
  return std::ldexp(std::abs(mantissa), exponent);
}

double ScaledComplex::LogAbs() const
{
  return std::log(std::abs(mantissa)) + exponent * std::log(2.0);
}

DetEvaluation EvaluateDet(const MetricGraph &g, Complex lambda)
{
  const SecularSystem sys = BuildSecular(g, lambda);
  DetEvaluation ev;
  const int N = static_cast<int>(sys.matrix.rows());
  if (N == 0)
  {
    ev.det = {1.0, 0};
    ev.log_derivative = 0.0;
    return ev;
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys.matrix);
  const auto &LU = lu.matrixLU();
  Complex m = static_cast<double>(lu.permutationP().determinant());
  long exponent = 0;
  bool singular = false;
  for (int i = 0; i < N; i++)
  {
    const Complex p = LU(i, i);
    if (p == 0.0 || !std::isfinite(std::abs(p)))
    {
      singular = true;
      m = 0.0;
      break;
    }
    ScaledComplex s = Normalize(m * p, exponent);
    m = s.mantissa;
    exponent = s.exponent;
  }
  ev.det = singular ? ScaledComplex{0.0, 0} : Normalize(m, exponent);
  if (singular)
  {
    ev.log_derivative = Complex(INFINITY, INFINITY);
  }
  else
  {
    ev.log_derivative = lu.solve(sys.derivative).trace();
  }
  return ev;
}

ScaledComplex DetSecular(const MetricGraph &g, Complex lambda)
{
  return EvaluateDet(g, lambda).det;
}

const char *SpectralKindName(SpectralKind kind)
{
  switch (kind)
  {
    case SpectralKind::EmbeddedEigenvalue:
      return "EmbeddedEigenvalue";
    case SpectralKind::Resonance:
      return "Resonance";
    case SpectralKind::RealResonance:
      return "RealResonance";
  }
  return "Unknown";
}

std::vector<EdgeWave> KernelBasis(const MetricGraph &g, Complex lambda, int dim)
{
  const SecularSystem sys = BuildSecular(g, lambda);
  auto svd = Svd(sys.matrix);
  const int n = static_cast<int>(sys.matrix.cols());
  std::vector<EdgeWave> basis;
  for (int i = n - 1; i >= std::max(0, n - dim); i--)
  {
    basis.push_back(WaveFromCoefficients(g, lambda, svd.matrixV().col(i)));
  }
  return basis;
}

SpectralPoint MakeSpectralPoint(const MetricGraph &g, Complex lambda, int multiplicity,
                                const SearchOptions &opts)
{
  SpectralPoint sp;
  sp.lambda = lambda;
  sp.multiplicity = multiplicity;
  sp.kernel_basis = KernelBasis(g, lambda, multiplicity);
  const double real_tol = std::max(opts.tol, 1e-11);
  if (std::abs(lambda.imag()) <= real_tol)
  {
    double lead = 0.0;
    for (const auto &w : sp.kernel_basis)
    {
      for (const auto &c : w.lead_out)
      {
        lead = std::max(lead, std::abs(c));
      }
    }
    if (lead < opts.lead_threshold)
    {
      sp.kind = SpectralKind::EmbeddedEigenvalue;
      sp.lambda = lambda.real();
      for (auto &w : sp.kernel_basis)
      {
        w.lambda = sp.lambda;
      }
    }
    else
    {
      sp.kind = SpectralKind::RealResonance;
    }
  }
  else
  {
    sp.kind = SpectralKind::Resonance;
  }
  sp.det_residual = DetSecular(g, sp.lambda).Abs();
  return sp;
}

EdgeWave Eigenfunction(const MetricGraph &g, const SpectralPoint &sp)
{
  if (sp.kind != SpectralKind::EmbeddedEigenvalue)
  {
    throw Error(ErrorCode::NotEmbedded, "spectral point is not an embedded eigenvalue");
  }
  if (sp.multiplicity != 1 || sp.kernel_basis.size() != 1)
  {
    throw Error(ErrorCode::NotSimple, "multiplicity " + std::to_string(sp.multiplicity));
  }
  EdgeWave u = sp.kernel_basis[0];
  u.lambda = sp.lambda.real();
  std::fill(u.lead_in.begin(), u.lead_in.end(), 0.0);
  std::fill(u.lead_out.begin(), u.lead_out.end(), 0.0);

  // Sine coefficient i(alpha - beta), cosine coefficient alpha + beta.
  Complex pivot = 0.0;
  for (int m = 0; m < g.NumEdges(); m++)
  {
    Complex a = 1i * (u.alpha[m] - u.beta[m]);
    if (std::abs(a) > std::abs(pivot) * (1.0 + 1e-9))
    {
      pivot = a;
    }
  }
  if (std::abs(pivot) < 1e-10)
  {
    for (int m = 0; m < g.NumEdges(); m++)
    {
      Complex b = u.alpha[m] + u.beta[m];
      if (std::abs(b) > std::abs(pivot) * (1.0 + 1e-9))
      {
        pivot = b;
      }
    }
  }
  if (pivot != 0.0)
  {
    u *= std::conj(pivot) / std::abs(pivot);
  }
  const double nrm = Norm(g, u);
  if (nrm == 0.0)
  {
    throw Error(ErrorCode::NotEmbedded, "kernel vanishes on the finite edges");
  }
  u *= 1.0 / nrm;
  return u;
}

Eigen::MatrixXcd ScatteringMatrix(const MetricGraph &g, double lambda)
{
  RequireScattering(g, lambda);
  const int K = g.NumLeads(), M = g.NumEdges();
  Eigen::MatrixXcd S(K, K);
  for (int k = 0; k < K; k++)
  {
    Eigen::VectorXcd c = SolveMinimalNorm(BuildSecular(g, lambda, k));
    S.col(k) = c.tail(K);
  }
  (void)M;
  return S;
}

EdgeWave GeneralizedEigenfunction(const MetricGraph &g, double lambda, int k)
{
  RequireScattering(g, lambda);
  const SecularSystem sys = BuildSecular(g, lambda, k);
  EdgeWave e = WaveFromCoefficients(g, lambda, SolveMinimalNorm(sys), k);
  auto svd = Svd(sys.matrix);
  for (const auto &u : EmbeddedKernel(g, lambda, svd))
  {
    const Complex c = InnerProduct(g, e, u);
    for (int m = 0; m < g.NumEdges(); m++)
    {
      e.alpha[m] -= c * u.alpha[m];
      e.beta[m] -= c * u.beta[m];
    }
  }
  return e;
}

GeneralizedEigenfunctionReport GeneralizedEigenfunctionWithReport(const MetricGraph &g,
                                                                  double lambda, int k)
{
  GeneralizedEigenfunctionReport report;
  report.minimal_norm = GeneralizedEigenfunction(g, lambda, k);
  auto svd = Svd(BuildSecular(g, lambda).matrix);
  const auto &s = svd.singularValues();
  report.at_eigenvalue = s.size() > 0 && s(s.size() - 1) <= kRankThreshold * s(0);

  // Symmetric averages cancel the odd terms; Richardson removes the eta^2 term.
  auto average = [&](double eta)
  {
    EdgeWave p = GeneralizedEigenfunction(g, lambda * (1.0 + eta), k);
    EdgeWave q = GeneralizedEigenfunction(g, lambda * (1.0 - eta), k);
    p.lambda = q.lambda = lambda;
    return 0.5 * (p + q);
  };
  const double eta1 = 1e-4, eta2 = 1e-5;
  const EdgeWave a1 = average(eta1), a2 = average(eta2);
  const double w = eta1 * eta1 / (eta1 * eta1 - eta2 * eta2);
  report.extrapolated = w * a2 + (1.0 - w) * a1;
  report.extrapolated.lambda = lambda;
  report.lead_discrepancy =
      MaxDifference(report.minimal_norm.lead_out, report.extrapolated.lead_out);
  report.edge_discrepancy = std::max(MaxDifference(report.minimal_norm.alpha, report.extrapolated.alpha),
                                     MaxDifference(report.minimal_norm.beta, report.extrapolated.beta));
  return report;
}

double VertexResidual(const MetricGraph &g, const EdgeWave &w)
{
  double scale = 0.0;
  for (auto *v : {&w.alpha, &w.beta, &w.lead_in, &w.lead_out})
  {
    for (const auto &x : *v)
    {
      scale = std::max(scale, std::abs(x));
    }
  }
  if (scale == 0.0)
  {
    return 0.0;
  }
  double res = 0.0;
  const double lam = std::max(std::abs(w.lambda), 1e-300);
  for (int v = 0; v < g.NumVertices(); v++)
  {
    const auto &ends = g.Incident(v);
    if (ends.empty())
    {
      continue;
    }
    const Complex f0 = VertexTrace(g, w, ends[0].edge, v);
    Complex flux = 0.0;
    for (const auto &end : ends)
    {
      res = std::max(res, std::abs(VertexTrace(g, w, end.edge, v) - f0));
      flux += NormalDerivative(g, w, end.edge, v);
    }
    res = std::max(res, std::abs(flux) / lam);
  }
  return res / scale;
}

}  // namespace qgres
