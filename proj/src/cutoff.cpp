// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "qgres/cutoff.hpp"

#include <cmath>

namespace qgres
{

namespace
{

// f(u) = exp(-1/u) for u > 0 with two derivatives.
Jet Bump(double u)
{
  if (u <= 0.0)
  {
    return {0.0, 0.0, 0.0};
  }
  const double f = std::exp(-1.0 / u);
  const double u2 = u * u, u3 = u2 * u;
  return {f, f / u2, f * (1.0 / (u2 * u2) - 2.0 / u3)};
}

}  // namespace

Jet SmoothStep::operator()(double s) const
{
  const double w = end - start;
  const double u = (s - start) / w;
  if (u <= 0.0)
  {
    return {1.0, 0.0, 0.0};
  }
  if (u >= 1.0)
  {
    return {0.0, 0.0, 0.0};
  }
  // psi = f(u) / (f(u) + f(1 - u)) rises from 0 to 1.
  const Jet f = Bump(u), h = Bump(1.0 - u);
  const double g = h.value, g1 = -h.d1, g2 = h.d2;
  const double D = f.value + g, D1 = f.d1 + g1;
  const double N = f.d1 * g - f.value * g1;
  const double N1 = f.d2 * g - f.value * g2;
  const double psi = f.value / D;
  const double psi1 = N / (D * D);
  const double psi2 = (N1 * D - 2.0 * N * D1) / (D * D * D);
  return {1.0 - psi, -psi1 / w, -psi2 / (w * w)};
}

}  // namespace qgres
