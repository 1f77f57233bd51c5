// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef QGRES_GRAPH_IO_HPP
#define QGRES_GRAPH_IO_HPP

#include <string>
#include <json.hpp>
#include "qgres/graph.hpp"
#include "qgres/perturbation.hpp"

namespace qgres
{

RawGraph ParseGraphJson(const nlohmann::json &j);
RawGraph ParseGraphText(const std::string &text);
nlohmann::json GraphToJson(const MetricGraph &g);

RawPerturbation ParsePerturbationJson(const nlohmann::json &j);
RawPerturbation ParsePerturbationText(const std::string &text);
nlohmann::json PerturbationToJson(const PerturbationFamily &p, const MetricGraph &g);

std::string ReadTextFile(const std::string &path);

}  // namespace qgres

#endif  // QGRES_GRAPH_IO_HPP
