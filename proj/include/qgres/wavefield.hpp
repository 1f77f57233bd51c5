// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef QGRES_WAVEFIELD_HPP
#define QGRES_WAVEFIELD_HPP

#include <complex>
#include <span>
#include <vector>
#include "qgres/graph.hpp"

namespace qgres
{

using Complex = std::complex<double>;

// Finite edge m: alpha[m] e^{i lambda x} + beta[m] e^{-i lambda x} on [0, l_m].
// Lead k: lead_in[k] e^{-i lambda x} + lead_out[k] e^{i lambda x} on [0, inf).
struct EdgeWave
{
  Complex lambda;
  std::vector<Complex> alpha, beta;
  std::vector<Complex> lead_in, lead_out;

  static EdgeWave Zero(const MetricGraph &g, Complex lambda);

  EdgeWave &operator*=(Complex c);
  EdgeWave &operator+=(const EdgeWave &w);
  EdgeWave &operator-=(const EdgeWave &w);
};

EdgeWave operator*(Complex c, EdgeWave w);
EdgeWave operator+(EdgeWave a, const EdgeWave &b);
EdgeWave operator-(EdgeWave a, const EdgeWave &b);

Complex EvalWave(const MetricGraph &g, const EdgeWave &w, EdgeRef e, double x);
Complex EvalDerivative(const MetricGraph &g, const EdgeWave &w, EdgeRef e, double x);

Complex VertexTrace(const MetricGraph &g, const EdgeWave &w, EdgeRef e, int v);

// Outward normal derivative: -u'(0) at x = 0, u'(l) at x = l.
Complex NormalDerivative(const MetricGraph &g, const EdgeWave &w, EdgeRef e, int v);

// d/dx of the wave, again in amplitude form.
EdgeWave Derivative(const EdgeWave &w);

// Integral over [lo, hi] of (a1 e^{i l1 x} + b1 e^{-i l1 x}) conj(a2 e^{i l2 x} + b2 e^{-i l2 x}).
Complex IntegrateProduct(Complex a1, Complex b1, Complex l1, Complex a2, Complex b2, Complex l2,
                         double lo, double hi);

// sum_m w_m int u_m conj(v_m) over finite edges, plus weighted lead integrals when given.
Complex InnerProduct(const MetricGraph &g, const EdgeWave &u, const EdgeWave &v,
                     std::span<const double> edge_weights,
                     std::span<const double> lead_weights = {});

// Unit weights on finite edges, leads excluded.
Complex InnerProduct(const MetricGraph &g, const EdgeWave &u, const EdgeWave &v);

double Norm(const MetricGraph &g, const EdgeWave &w);

// sum_v sum_{e_m at v} d_nu f_m(v) conj(h_m(v)) over finite edges.
Complex BoundarySum(const MetricGraph &g, const EdgeWave &f, const EdgeWave &h);

// Same sum grouped by edge: d_nu f conj(h) at x = l_m plus at x = 0.
Complex BoundarySumByEdge(const MetricGraph &g, const EdgeWave &f, const EdgeWave &h);

// Largest defect of the two integration-by-parts identities on the finite edges.
double GreenIdentityDefect(const MetricGraph &g, const EdgeWave &f, const EdgeWave &h);

}  // namespace qgres

#endif  // QGRES_WAVEFIELD_HPP
