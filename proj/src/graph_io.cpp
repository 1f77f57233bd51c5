// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "qgres/graph_io.hpp"

#include <fstream>
#include <sstream>
#include "qgres/error.hpp"

namespace qgres
{

using nlohmann::json;

namespace
{

const json &Field(const json &j, const char *key, const char *what)
{
  if (!j.is_object() || !j.contains(key))
  {
    throw Error(ErrorCode::InvalidInput, std::string(what) + " is missing \"" + key + "\"");
  }
  return j.at(key);
}

std::string String(const json &j, const char *what)
{
  if (!j.is_string())
  {
    throw Error(ErrorCode::InvalidInput, std::string(what) + " must be a string");
  }
  return j.get<std::string>();
}

double Number(const json &j, const char *what)
{
  if (!j.is_number())
  {
    throw Error(ErrorCode::InvalidInput, std::string(what) + " must be a number");
  }
  return j.get<double>();
}

json Parse(const std::string &text)
{
  try
  {
    return json::parse(text);
  }
  catch (const json::parse_error &e)
  {
    throw Error(ErrorCode::InvalidInput, e.what());
  }
}

}  // namespace

RawGraph ParseGraphJson(const json &j)
{
  RawGraph raw;
  const json &vertices = Field(j, "vertices", "graph");
  if (!vertices.is_array())
  {
    throw Error(ErrorCode::InvalidInput, "\"vertices\" must be an array");
  }
  for (const auto &v : vertices)
  {
    raw.vertices.push_back(String(v, "vertex id"));
  }
  if (j.contains("edges"))
  {
    if (!j["edges"].is_array())
    {
      throw Error(ErrorCode::InvalidInput, "\"edges\" must be an array");
    }
    for (const auto &e : j["edges"])
    {
      const json &ends = Field(e, "ends", "edge");
      if (!ends.is_array() || ends.size() != 2)
      {
        throw Error(ErrorCode::InvalidInput, "edge \"ends\" must be a pair");
      }
      raw.edges.push_back({String(Field(e, "id", "edge"), "edge id"), String(ends[0], "edge end"),
                           String(ends[1], "edge end"),
                           Number(Field(e, "length", "edge"), "edge length")});
    }
  }
  if (j.contains("leads"))
  {
    if (!j["leads"].is_array())
    {
      throw Error(ErrorCode::InvalidInput, "\"leads\" must be an array");
    }
    for (const auto &l : j["leads"])
    {
      raw.leads.push_back({String(Field(l, "id", "lead"), "lead id"),
                           String(Field(l, "vertex", "lead"), "lead vertex")});
    }
  }
  return raw;
}

RawGraph ParseGraphText(const std::string &text)
{
  return ParseGraphJson(Parse(text));
}

json GraphToJson(const MetricGraph &g)
{
  json j;
  j["vertices"] = g.Vertices();
  j["edges"] = json::array();
  for (const auto &e : g.Edges())
  {
    j["edges"].push_back({{"id", e.id},
                          {"ends", {g.Vertices()[e.tail], g.Vertices()[e.head]}},
                          {"length", e.length}});
  }
  j["leads"] = json::array();
  for (const auto &l : g.Leads())
  {
    j["leads"].push_back({{"id", l.id}, {"vertex", g.Vertices()[l.vertex]}});
  }
  return j;
}

RawPerturbation ParsePerturbationJson(const json &j)
{
  RawPerturbation raw;
  std::string mode = String(Field(j, "mode", "perturbation"), "mode");
  if (mode == "a")
  {
    raw.mode = PerturbationMode::LogScale;
  }
  else if (mode == "length")
  {
    raw.mode = PerturbationMode::Length;
  }
  else
  {
    throw Error(ErrorCode::InvalidPerturbation, "mode must be \"a\" or \"length\"");
  }
  if (j.contains("entries"))
  {
    if (!j["entries"].is_object())
    {
      throw Error(ErrorCode::InvalidInput, "\"entries\" must be an object");
    }
    for (const auto &[id, coeffs] : j["entries"].items())
    {
      if (!coeffs.is_array())
      {
        throw Error(ErrorCode::InvalidInput, "coefficients of " + id + " must be an array");
      }
      std::vector<double> c;
      for (const auto &x : coeffs)
      {
        c.push_back(Number(x, "coefficient"));
      }
      raw.entries[id] = std::move(c);
    }
  }
  return raw;
}

RawPerturbation ParsePerturbationText(const std::string &text)
{
  return ParsePerturbationJson(Parse(text));
}

json PerturbationToJson(const PerturbationFamily &p, const MetricGraph &g)
{
  json j;
  j["mode"] = (p.Mode() == PerturbationMode::LogScale) ? "a" : "length";
  j["entries"] = json::object();
  for (int m = 0; m < p.NumEdges(); m++)
  {
    if (p.Entry(m))
    {
      j["entries"][g.Edges()[m].id] = p.Entry(m)->Coefficients();
    }
  }
  return j;
}

std::string ReadTextFile(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qgres
