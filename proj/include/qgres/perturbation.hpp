// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef QGRES_PERTURBATION_HPP
#define QGRES_PERTURBATION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>
#include "qgres/graph.hpp"

namespace qgres
{

inline constexpr int kMaxPolynomialDegree = 8;

// Coefficients in ascending degree.
class Polynomial
{
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs) : coeffs(std::move(coeffs)) {}

  double operator()(double t) const;
  double Derivative(double t) const;
  int Degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double Coefficient(int i) const { return i < static_cast<int>(coeffs.size()) ? coeffs[i] : 0.0; }
  const std::vector<double> &Coefficients() const { return coeffs; }

private:
  std::vector<double> coeffs;
};

enum class PerturbationMode
{
  LogScale,  // l(t) = exp(-a(t)) l
  Length     // l(t) given directly
};

struct RawPerturbation
{
  PerturbationMode mode = PerturbationMode::LogScale;
  std::map<std::string, std::vector<double>> entries;
};

class PerturbationFamily
{
public:
  PerturbationFamily() = default;

  PerturbationMode Mode() const { return mode; }
  const std::optional<Polynomial> &Entry(int m) const { return entries[m]; }
  int NumEdges() const { return static_cast<int>(entries.size()); }

  friend PerturbationFamily ValidatePerturbation(const RawPerturbation &raw,
                                                 const MetricGraph &g);

private:
  PerturbationMode mode = PerturbationMode::LogScale;
  std::vector<std::optional<Polynomial>> entries;
};

PerturbationFamily ValidatePerturbation(const RawPerturbation &raw, const MetricGraph &g);

// The identity family.
PerturbationFamily ZeroPerturbation(const MetricGraph &g);

std::vector<double> LengthsAt(const PerturbationFamily &p, const MetricGraph &g, double t);

MetricGraph GraphAt(const PerturbationFamily &p, const MetricGraph &g, double t);

// a_m'(0), or -l_m'(0)/l_m(0) in length mode.
std::vector<double> Adot(const PerturbationFamily &p, const MetricGraph &g);

}  // namespace qgres

#endif  // QGRES_PERTURBATION_HPP
