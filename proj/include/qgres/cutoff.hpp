// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef QGRES_CUTOFF_HPP
#define QGRES_CUTOFF_HPP

namespace qgres
{

struct Jet
{
  double value, d1, d2;
};

// Smooth step equal to 1 for s <= start and 0 for s >= end, built from exp(-1/s).
class SmoothStep
{
public:
  SmoothStep(double start, double end) : start(start), end(end) {}

  Jet operator()(double s) const;

  double Start() const { return start; }
  double End() const { return end; }

private:
  double start, end;
};

}  // namespace qgres

#endif  // QGRES_CUTOFF_HPP
