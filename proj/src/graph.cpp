// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "qgres/graph.hpp"

#include <cmath>
#include <numeric>
#include "qgres/error.hpp"

namespace qgres
{

namespace
{

void CheckLength(const std::string &id, double length)
{
  if (!std::isfinite(length) || length <= 0.0)
  {
    throw Error(ErrorCode::NonpositiveLength,
                "edge " + id + " has length " + std::to_string(length));
  }
}

}  // namespace

MetricGraph ValidateGraph(const RawGraph &raw)
{
  MetricGraph g;
  for (const auto &v : raw.vertices)
  {
    if (!g.vertex_index.emplace(v, g.NumVertices()).second)
    {
      throw Error(ErrorCode::DuplicateId, "vertex " + v);
    }
    g.vertices.push_back(v);
  }

  // Edge and lead ids share one namespace.
  std::unordered_map<std::string, int> seen;
  auto claim = [&](const std::string &id)
  {
    if (id.empty())
    {
      throw Error(ErrorCode::InvalidInput, "empty edge id");
    }
    if (!seen.emplace(id, 0).second)
    {
      throw Error(ErrorCode::DuplicateId, "edge " + id);
    }
  };
  auto vertex = [&](const std::string &id, const std::string &owner)
  {
    auto it = g.vertex_index.find(id);
    if (it == g.vertex_index.end())
    {
      throw Error(ErrorCode::DanglingReference, owner + " references vertex " + id);
    }
    return it->second;
  };

  for (const auto &e : raw.edges)
  {
    claim(e.id);
    int tail = vertex(e.tail, e.id);
    int head = vertex(e.head, e.id);
    if (tail == head)
    {
      throw Error(ErrorCode::LoopEdge, "edge " + e.id + " joins " + e.tail + " to itself");
    }
    CheckLength(e.id, e.length);
    g.edge_index.emplace(e.id, g.NumEdges());
    g.edges.push_back({e.id, tail, head, e.length});
  }
  for (const auto &l : raw.leads)
  {
    claim(l.id);
    int v = vertex(l.vertex, l.id);
    g.lead_index.emplace(l.id, g.NumLeads());
    g.leads.push_back({l.id, v});
  }

  g.incidence.assign(g.vertices.size(), {});
  for (int m = 0; m < g.NumEdges(); m++)
  {
    g.incidence[g.edges[m].tail].push_back({{EdgeKind::Finite, m}, false});
    g.incidence[g.edges[m].head].push_back({{EdgeKind::Finite, m}, true});
  }
  for (int k = 0; k < g.NumLeads(); k++)
  {
    g.incidence[g.leads[k].vertex].push_back({{EdgeKind::Lead, k}, false});
  }
  return g;
}

int MetricGraph::VertexIndex(std::string_view id) const
{
  auto it = vertex_index.find(std::string(id));
  if (it == vertex_index.end())
  {
    throw Error(ErrorCode::DanglingReference, "unknown vertex " + std::string(id));
  }
  return it->second;
}

int MetricGraph::EdgeIndex(std::string_view id) const
{
  auto it = edge_index.find(std::string(id));
  if (it == edge_index.end())
  {
    throw Error(ErrorCode::DanglingReference, "unknown edge " + std::string(id));
  }
  return it->second;
}

int MetricGraph::LeadIndex(std::string_view id) const
{
  auto it = lead_index.find(std::string(id));
  if (it == lead_index.end())
  {
    throw Error(ErrorCode::DanglingReference, "unknown lead " + std::string(id));
  }
  return it->second;
}

EdgeRef MetricGraph::Find(std::string_view id) const
{
  if (auto it = edge_index.find(std::string(id)); it != edge_index.end())
  {
    return {EdgeKind::Finite, it->second};
  }
  return {EdgeKind::Lead, LeadIndex(id)};
}

std::vector<double> MetricGraph::Lengths() const
{
  std::vector<double> lengths;
  lengths.reserve(edges.size());
  for (const auto &e : edges)
  {
    lengths.push_back(e.length);
  }
  return lengths;
}

double MetricGraph::TotalLength() const
{
  double sum = 0.0;
  for (const auto &e : edges)
  {
    sum += e.length;
  }
  return sum;
}

MetricGraph MetricGraph::WithLengths(std::span<const double> lengths) const
{
  if (static_cast<int>(lengths.size()) != NumEdges())
  {
    throw Error(ErrorCode::InvalidInput, "length vector size mismatch");
  }
  MetricGraph g = *this;
  for (int m = 0; m < NumEdges(); m++)
  {
    CheckLength(edges[m].id, lengths[m]);
    g.edges[m].length = lengths[m];
  }
  return g;
}

RawGraph MetricGraph::ToRaw() const
{
  RawGraph raw;
  raw.vertices = vertices;
  for (const auto &e : edges)
  {
    raw.edges.push_back({e.id, vertices[e.tail], vertices[e.head], e.length});
  }
  for (const auto &l : leads)
  {
    raw.leads.push_back({l.id, vertices[l.vertex]});
  }
  return raw;
}

}  // namespace qgres
