// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef QGRES_QUADRATURE_HPP
#define QGRES_QUADRATURE_HPP

#include <vector>

namespace qgres
{

// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule
{
  std::vector<double> nodes, weights;
};

const QuadratureRule &GaussLegendre(int n);

// Integral of f over [a, b].
template <typename F>
auto Integrate(const QuadratureRule &rule, F &&f, double a, double b)
{
  const double h = 0.5 * (b - a), c = 0.5 * (a + b);
  decltype(f(a)) sum{};
  for (size_t i = 0; i < rule.nodes.size(); i++)
  {
    sum += rule.weights[i] * f(c + h * rule.nodes[i]);
  }
  return h * sum;
}

}  // namespace qgres

#endif  // QGRES_QUADRATURE_HPP
