// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <doctest.h>
#include <numbers>
#include <random>
#include "oracles.hpp"
#include "qgres/fgr.hpp"
#include "qgres/fixtures.hpp"
#include "qgres/perturbation.hpp"

using namespace qgres;
using std::numbers::pi;

namespace
{

SpectralPoint Seed(const MetricGraph &g, double lambda)
{
  SpectralPoint sp = MakeSpectralPoint(g, lambda, 1);
  REQUIRE(sp.kind == SpectralKind::EmbeddedEigenvalue);
  return sp;
}

}  // namespace

TEST_CASE("first-order shift on the two-cycle")
{
  MetricGraph g = fixtures::TwoCycle();
  EdgeWave u = Eigenfunction(g, Seed(g, pi));
  std::vector<double> zero = {0.0, 0.0};
  ZDot z0 = FirstOrderShift(g, u, zero);
  CHECK(z0.z_dot == 0.0);
  CHECK(z0.lambda_dot == 0.0);

  // lambda(t) = pi / (1 - t) for uniform shrink.
  std::vector<double> both = {1.0, 1.0};
  ZDot za = FirstOrderShift(g, u, both);
  CHECK(za.z_dot == doctest::Approx(2.0 * pi * pi).epsilon(1e-12));
  CHECK(za.lambda_dot == doctest::Approx(pi).epsilon(1e-12));
  CHECK(std::abs(za.z_dot_imag) < 1e-10);

  std::vector<double> first = {1.0, 0.0};
  CHECK(std::abs(InnerProduct(g, u, u, first) - 0.5) < 1e-13);
  CHECK(FirstOrderShift(g, u, first).lambda_dot == doctest::Approx(pi / 2.0).epsilon(1e-12));
}

TEST_CASE("two-cycle families")
{
  MetricGraph g = fixtures::TwoCycle();
  SpectralPoint sp = Seed(g, pi);
  for (char fam : {'a', 'b', 'c', 'd'})
  {
    CAPTURE(fam);
    std::vector<double> adot = Adot(fixtures::TwoCycleFamily(g, fam), g);
    FgrReport r = FgrCoefficients(g, sp, adot);
    // Only the antisymmetric part of adot couples to the leads.
    const double d = adot[0] - adot[1];
    CHECK(r.im_lambda_ddot == doctest::Approx(-pi * pi * d * d / 8.0).epsilon(1e-9));
    CHECK(std::abs(r.im_lambda_ddot + pi * pi * d * d / 8.0) < 1e-8);
    CHECK(r.lambda_dot == doctest::Approx(pi * (adot[0] + adot[1]) / 2.0).epsilon(1e-12));
    CHECK(r.example1_condition_met);
    REQUIRE(r.F.size() == 2);
    for (int k = 0; k < 2; k++)
    {
      CHECK(std::abs(r.boundary_terms[k]) <= 1e-9);
    }
    CHECK(r.gauge == "extrapolated");
    CHECK(r.gauge_discrepancy < 1e-6);
  }
}

TEST_CASE("volume term against quadrature")
{
  MetricGraph g = fixtures::TwoCycle();
  SpectralPoint sp = Seed(g, pi);
  EdgeWave u = Eigenfunction(g, sp);
  std::vector<double> adot = {1.0, 0.0};
  FgrReport r = FgrCoefficients(g, sp, adot);
  for (int k = 0; k < 2; k++)
  {
    EdgeWave e = GeneralizedEigenfunctionWithReport(g, pi, k).extrapolated;
    CHECK(std::abs(r.volume_terms[k] - pi * oracle::QuadratureInner(g, u, e, adot)) < 1e-12);
  }
}

TEST_CASE("boundary terms vanish at commensurate lengths")
{
  MetricGraph g = fixtures::TwoCycle();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (double lambda : {pi, 2.0 * pi})
  {
    SpectralPoint sp = Seed(g, lambda);
    for (int trial = 0; trial < 20; trial++)
    {
      std::vector<double> adot = {d(rng), d(rng)};
      FgrReport r = FgrCoefficients(g, sp, adot);
      CHECK(r.example1_condition_met);
      for (const auto &b : r.boundary_terms)
      {
        CHECK(std::abs(b) <= 1e-9);
      }
      CHECK(r.im_lambda_ddot <= 0.0);
    }
  }
}

TEST_CASE("example two boundary terms")
{
  MetricGraph g = fixtures::ExampleTwo();
  const double l0 = 2.0 * std::atan(std::sqrt(2.0));
  SpectralPoint sp = Seed(g, l0);
  std::vector<double> adot = {1.0, 0.0, 0.0, 0.0, 0.0};
  FgrReport r = FgrCoefficients(g, sp, adot);
  CHECK_FALSE(r.example1_condition_met);
  double largest = 0.0;
  for (const auto &b : r.boundary_terms)
  {
    largest = std::max(largest, std::abs(b));
  }
  CHECK(largest > 1e-3);
  CHECK(r.im_lambda_ddot < 0.0);

  FgrOptions raw;
  raw.conjugate_boundary = false;
  FgrReport u = FgrCoefficients(g, sp, adot, raw);
  CHECK_FALSE(u.conjugate_boundary);
  for (size_t k = 0; k < r.F.size(); k++)
  {
    CHECK(std::abs(u.volume_terms[k] - r.volume_terms[k]) < 1e-14);
  }

  FgrOptions mn;
  mn.gauge = EkGauge::MinimalNorm;
  FgrReport m = FgrCoefficients(g, sp, adot, mn);
  CHECK(m.gauge == "minimal_norm");
  CHECK(m.im_lambda_ddot == doctest::Approx(r.im_lambda_ddot).epsilon(1e-6));
}

TEST_CASE("sign and gauge robustness")
{
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  MetricGraph g = fixtures::ExampleTwo();
  const double l0 = 2.0 * std::atan(std::sqrt(2.0));
  SpectralPoint sp = Seed(g, l0);
  EdgeWave u = Eigenfunction(g, sp);
  for (int trial = 0; trial < 10; trial++)
  {
    std::vector<double> adot(5);
    for (double &x : adot)
    {
      x = d(rng);
    }
    FgrReport a = FgrCoefficients(g, l0, u, adot);
    FgrReport b = FgrCoefficients(g, l0, -1.0 * u, adot);
    CHECK(a.im_lambda_ddot <= 0.0);
    CHECK(a.im_lambda_ddot == doctest::Approx(b.im_lambda_ddot).epsilon(1e-12));
    for (size_t k = 0; k < a.F.size(); k++)
    {
      CHECK(std::abs(a.F[k] + b.F[k]) <= 1e-12 * (1.0 + std::abs(a.F[k])));
    }
    CHECK(std::abs(a.z_dot_imag) < 1e-10);
  }
}

TEST_CASE("uniform scaling keeps eigenvalues embedded")
{
  MetricGraph g = fixtures::ExampleTwo();
  const double l0 = 2.0 * std::atan(std::sqrt(2.0));
  SpectralPoint sp = Seed(g, l0);
  for (double c : {1.0, -0.5})
  {
    std::vector<double> adot(5, c);
    FgrReport r = FgrCoefficients(g, sp, adot);
    CHECK(std::abs(r.im_lambda_ddot) < 1e-8);
    CHECK(r.lambda_dot == doctest::Approx(c * l0).epsilon(1e-10));
    CHECK(r.z_dot == doctest::Approx(2.0 * l0 * l0 * c).epsilon(1e-10));
  }
}

TEST_CASE("second-order model")
{
  CHECK(SecondOrderModel(pi, 1.0, -2.0, 0.0) == Complex(pi, 0.0));
  CHECK(SecondOrderModel(pi, 1.0, 0.0, 0.3).imag() == 0.0);
  const Complex m = SecondOrderModel(pi, pi / 2.0, -1.0, 0.1);
  CHECK(m.real() == doctest::Approx(pi + 0.1 * pi / 2.0));
  CHECK(m.imag() == doctest::Approx(-0.005));
}

TEST_CASE("json report")
{
  MetricGraph g = fixtures::TwoCycle();
  std::vector<double> adot = {1.0, 0.0};
  nlohmann::json j = ToJson(FgrCoefficients(g, Seed(g, pi), adot));
  for (const char *key : {"lambda", "z", "z_dot", "lambda_dot", "F", "volume_terms", "boundary_terms",
                          "im_lambda_ddot", "example1_condition_met", "conjugate_boundary", "gauge"})
  {
    CHECK(j.contains(key));
  }
  REQUIRE(j["F"].size() == 2);
  CHECK(j["F"][0].size() == 2);
  CHECK(j["lambda"].get<double>() == doctest::Approx(pi));
}
