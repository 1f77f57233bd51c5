// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef QGRES_FGR_HPP
#define QGRES_FGR_HPP

#include <span>
#include <string>
#include <vector>
#include <json.hpp>
#include "qgres/secular.hpp"

namespace qgres
{

enum class EkGauge
{
  Extrapolated,
  MinimalNorm
};

struct FgrOptions
{
  bool conjugate_boundary = true;
  EkGauge gauge = EkGauge::Extrapolated;
};

struct FgrReport
{
  double lambda = 0.0;
  double z = 0.0;
  double z_dot = 0.0;
  double z_dot_imag = 0.0;
  double lambda_dot = 0.0;
  std::vector<Complex> F;
  std::vector<Complex> volume_terms;
  std::vector<Complex> boundary_terms;
  double im_lambda_ddot = 0.0;
  bool example1_condition_met = false;
  bool conjugate_boundary = true;
  std::string gauge;
  double gauge_discrepancy = 0.0;
};

struct ZDot
{
  double z_dot;
  double z_dot_imag;
  double lambda_dot;
};

// zdot = 2 z <adot u, u> + sum_v sum_{e_m at v} adot_m d_nu u_m(v) conj(u(v)).
ZDot FirstOrderShift(const MetricGraph &g, const EdgeWave &u, std::span<const double> adot);

// lambda l_m in pi Z for every finite edge.
bool Example1Condition(const MetricGraph &g, double lambda, double tol = 1e-10);

FgrReport FgrCoefficients(const MetricGraph &g, double lambda, const EdgeWave &u,
                          std::span<const double> adot, const FgrOptions &opts = {});

FgrReport FgrCoefficients(const MetricGraph &g, const SpectralPoint &sp,
                          std::span<const double> adot, const FgrOptions &opts = {});

// lambda + t lambda_dot + (i/2) t^2 Im lambda_ddot.
Complex SecondOrderModel(double lambda, double lambda_dot, double im_lambda_ddot, double t);

Complex SecondOrderModel(const FgrReport &report, double t);

nlohmann::json ToJson(const FgrReport &report);

}  // namespace qgres

#endif  // QGRES_FGR_HPP
