// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef QGRES_SECULAR_HPP
#define QGRES_SECULAR_HPP

#include <optional>
#include <vector>
#include <Eigen/Dense>
#include "qgres/graph.hpp"
#include "qgres/wavefield.hpp"

namespace qgres
{

// Unknowns: (alpha_m, beta_m) at columns 2m, 2m+1, then c_k^out at column 2M + k.
// Rows: per vertex, deg - 1 continuity rows then one Kirchhoff row divided by lambda.
struct SecularSystem
{
  Complex lambda;
  Eigen::MatrixXcd matrix;
  Eigen::MatrixXcd derivative;
  Eigen::VectorXcd rhs;
  std::optional<int> incoming;
};

SecularSystem BuildSecular(const MetricGraph &g, Complex lambda,
                           std::optional<int> incoming = std::nullopt);

EdgeWave WaveFromCoefficients(const MetricGraph &g, Complex lambda, const Eigen::VectorXcd &c,
                              std::optional<int> incoming = std::nullopt);

Eigen::VectorXcd CoefficientsFromWave(const MetricGraph &g, const EdgeWave &w);

// Value mantissa * 2^exponent with 1 <= |mantissa| < 2, or mantissa 0.
struct ScaledComplex
{
  Complex mantissa = 0.0;
  int exponent = 0;

  Complex Value() const;
  double Abs() const;
  double LogAbs() const;
};

ScaledComplex DetSecular(const MetricGraph &g, Complex lambda);

// det M(lambda) and its logarithmic derivative tr(M^{-1} M').
struct DetEvaluation
{
  ScaledComplex det;
  Complex log_derivative;
};

DetEvaluation EvaluateDet(const MetricGraph &g, Complex lambda);

enum class SpectralKind
{
  EmbeddedEigenvalue,
  Resonance,
  RealResonance
};

const char *SpectralKindName(SpectralKind kind);

struct SpectralPoint
{
  Complex lambda;
  int multiplicity = 1;
  SpectralKind kind = SpectralKind::Resonance;
  std::vector<EdgeWave> kernel_basis;
  double det_residual = 0.0;
};

struct Window
{
  double re_min, re_max, im_min, im_max;
};

struct SearchOptions
{
  double tol = 1e-12;
  int max_depth = 40;
  double lead_threshold = 1e-8;
  int max_jitter = 6;
};

struct SpectralSearch
{
  std::vector<SpectralPoint> points;
  int winding_count = 0;  // over the contour actually used
  int root_count = 0;     // polished roots inside that contour, with multiplicity
  Window contour;
};

// Argument-principle count of det zeros inside the rectangle.
int WindingNumber(const MetricGraph &g, const Window &w);

SpectralSearch FindSpectralPoints(const MetricGraph &g, const Window &w,
                                  const SearchOptions &opts = {});

// Newton on det M; empty if it does not converge.
std::optional<Complex> PolishRoot(const MetricGraph &g, Complex guess, double tol,
                                  int max_iter = 60);

// Classify a polished zero and attach its kernel.
SpectralPoint MakeSpectralPoint(const MetricGraph &g, Complex lambda, int multiplicity,
                                const SearchOptions &opts = {});

// Right singular vectors for the dim smallest singular values, unit coefficient norm.
std::vector<EdgeWave> KernelBasis(const MetricGraph &g, Complex lambda, int dim);

// Real gauge, unit L2 norm, lead parts zero.
EdgeWave Eigenfunction(const MetricGraph &g, const SpectralPoint &sp);

Eigen::MatrixXcd ScatteringMatrix(const MetricGraph &g, double lambda);

EdgeWave GeneralizedEigenfunction(const MetricGraph &g, double lambda, int k);

struct GeneralizedEigenfunctionReport
{
  EdgeWave minimal_norm;
  EdgeWave extrapolated;
  bool at_eigenvalue = false;
  double lead_discrepancy = 0.0;
  double edge_discrepancy = 0.0;
};

// Minimal-norm answer versus Richardson extrapolation from lambda (1 +- eta).
GeneralizedEigenfunctionReport GeneralizedEigenfunctionWithReport(const MetricGraph &g,
                                                                  double lambda, int k);

// Largest residual of the vertex conditions, normalized by the coefficient size.
double VertexResidual(const MetricGraph &g, const EdgeWave &w);

}  // namespace qgres

#endif  // QGRES_SECULAR_HPP
