// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "qgres/fixtures.hpp"

#include <string>
#include "qgres/error.hpp"

namespace qgres::fixtures
{

MetricGraph TwoCycle()
{
  RawGraph raw;
  raw.vertices = {"v1", "v2"};
  raw.edges = {{"e3", "v1", "v2", 1.0}, {"e4", "v1", "v2", 1.0}};
  raw.leads = {{"e1", "v1"}, {"e2", "v2"}};
  return ValidateGraph(raw);
}

PerturbationFamily TwoCycleFamily(const MetricGraph &g, char family)
{
  RawPerturbation raw;
  raw.mode = PerturbationMode::Length;
  raw.entries["e3"] = {1.0, -1.0};
  switch (family)
  {
    case 'a':
      raw.entries["e4"] = {1.0, -1.0};
      break;
    case 'b':
      break;
    case 'c':
      raw.entries["e4"] = {1.0, 1.0};
      break;
    case 'd':
      raw.entries["e4"] = {1.0, 2.0};
      break;
    default:
      throw Error(ErrorCode::InvalidInput, std::string("unknown family ") + family);
  }
  return ValidatePerturbation(raw, g);
}

MetricGraph ExampleTwo()
{
  RawGraph raw;
  raw.vertices = {"v1", "v2", "v3", "v4"};
  raw.edges = {{"e3", "v1", "v3", 1.0},
               {"e4", "v2", "v3", 1.0},
               {"e5", "v2", "v4", 1.0},
               {"e6", "v1", "v4", 1.0},
               {"e7", "v4", "v3", 1.0}};
  raw.leads = {{"e1", "v1"}, {"e2", "v2"}};
  return ValidateGraph(raw);
}

PerturbationFamily ExampleTwoFamily(const MetricGraph &g, char family)
{
  RawPerturbation raw;
  raw.mode = PerturbationMode::Length;
  raw.entries["e3"] = {1.0, -1.0};
  raw.entries["e4"] = {1.0, 1.0};
  raw.entries["e5"] = {1.0, -1.0};
  raw.entries["e6"] = {1.0, 1.0};
  switch (family)
  {
    case 'a':
      break;
    case 'b':
      raw.entries["e7"] = {1.0, 0.5};
      break;
    case 'c':
      raw.entries["e7"] = {1.0, 1.0};
      break;
    default:
      throw Error(ErrorCode::InvalidInput, std::string("unknown family ") + family);
  }
  return ValidatePerturbation(raw, g);
}

MetricGraph HalfLine()
{
  RawGraph raw;
  raw.vertices = {"v1"};
  raw.leads = {{"e1", "v1"}};
  return ValidateGraph(raw);
}

MetricGraph Cycle(int k)
{
  if (k < 1)
  {
    throw Error(ErrorCode::InvalidInput, "cycle needs at least one vertex");
  }
  RawGraph raw;
  for (int i = 1; i <= k; i++)
  {
    raw.vertices.push_back("v" + std::to_string(i));
    raw.leads.push_back({"e" + std::to_string(i), "v" + std::to_string(i)});
  }
  for (int i = 1; i <= k; i++)
  {
    raw.edges.push_back({"e" + std::to_string(k + i), "v" + std::to_string(i),
                         "v" + std::to_string(i % k + 1), 1.0});
  }
  return ValidateGraph(raw);
}

MetricGraph Interval(double length)
{
  RawGraph raw;
  raw.vertices = {"v1", "v2"};
  raw.edges = {{"e1", "v1", "v2", length}};
  return ValidateGraph(raw);
}

MetricGraph Line(double length)
{
  RawGraph raw;
  raw.vertices = {"v1", "v2"};
  raw.edges = {{"e3", "v1", "v2", length}};
  raw.leads = {{"e1", "v1"}, {"e2", "v2"}};
  return ValidateGraph(raw);
}

}  // namespace qgres::fixtures
