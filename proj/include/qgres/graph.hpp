// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef QGRES_GRAPH_HPP
#define QGRES_GRAPH_HPP

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qgres
{

// Unvalidated graph description, ids as given in the input.
struct RawEdge
{
  std::string id;
  std::string tail, head;
  double length;
};

struct RawLead
{
  std::string id;
  std::string vertex;
};

struct RawGraph
{
  std::vector<std::string> vertices;
  std::vector<RawEdge> edges;
  std::vector<RawLead> leads;
};

// A finite edge runs from tail (x = 0) to head (x = length).
struct Edge
{
  std::string id;
  int tail, head;
  double length;
};

struct Lead
{
  std::string id;
  int vertex;
};

enum class EdgeKind
{
  Finite,
  Lead
};

struct EdgeRef
{
  EdgeKind kind;
  int index;
};

// One edge end meeting a vertex. For leads the end is always x = 0.
struct EdgeEnd
{
  EdgeRef edge;
  bool at_length;
};

class MetricGraph
{
public:
  MetricGraph() = default;

  int NumVertices() const { return static_cast<int>(vertices.size()); }
  int NumEdges() const { return static_cast<int>(edges.size()); }
  int NumLeads() const { return static_cast<int>(leads.size()); }

  const std::vector<std::string> &Vertices() const { return vertices; }
  const std::vector<Edge> &Edges() const { return edges; }
  const std::vector<Lead> &Leads() const { return leads; }
  const std::vector<EdgeEnd> &Incident(int v) const { return incidence[v]; }
  int Degree(int v) const { return static_cast<int>(incidence[v].size()); }

  int VertexIndex(std::string_view id) const;
  int EdgeIndex(std::string_view id) const;
  int LeadIndex(std::string_view id) const;
  EdgeRef Find(std::string_view id) const;

  std::vector<double> Lengths() const;
  double TotalLength() const;

  // Same combinatorics with new finite edge lengths.
  MetricGraph WithLengths(std::span<const double> lengths) const;

  RawGraph ToRaw() const;

  friend MetricGraph ValidateGraph(const RawGraph &raw);

private:
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::vector<Lead> leads;
  std::vector<std::vector<EdgeEnd>> incidence;
  std::unordered_map<std::string, int> vertex_index, edge_index, lead_index;
};

MetricGraph ValidateGraph(const RawGraph &raw);

}  // namespace qgres

#endif  // QGRES_GRAPH_HPP
