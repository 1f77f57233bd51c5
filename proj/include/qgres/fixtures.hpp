// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef QGRES_FIXTURES_HPP
#define QGRES_FIXTURES_HPP

#include "qgres/graph.hpp"
#include "qgres/perturbation.hpp"

namespace qgres::fixtures
{

// Two unit edges e3, e4 from v1 to v2, leads e1 at v1 and e2 at v2.
MetricGraph TwoCycle();

// Families 'a'..'d': l3 = 1 - t and l4 = 1 - t, 1, 1 + t, 1 + 2t.
PerturbationFamily TwoCycleFamily(const MetricGraph &g, char family);

// Four degree-3 vertices, unit edges e3..e7, leads e1 at v1 and e2 at v2.
MetricGraph ExampleTwo();

// Families 'a'..'c': l3 = l5 = 1 - t, l4 = l6 = 1 + t, l7 = 1, 1 + t/2, 1 + t.
PerturbationFamily ExampleTwoFamily(const MetricGraph &g, char family);

// One vertex with one lead.
MetricGraph HalfLine();

// Ring of k unit edges e{k+1}..e{2k} with one lead per vertex.
MetricGraph Cycle(int k);

// Single finite edge with free ends.
MetricGraph Interval(double length);

// Two leads joined through one finite edge.
MetricGraph Line(double length);

}  // namespace qgres::fixtures

#endif  // QGRES_FIXTURES_HPP
