// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef QGRES_TOOLS_CLI_HPP
#define QGRES_TOOLS_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>
#include "qgres/graph.hpp"
#include "qgres/perturbation.hpp"
#include "qgres/secular.hpp"

namespace qgres::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSolver = 3;

struct RunConfig
{
  std::string command;
  std::string graph_path;
  std::string perturbation_path;
  std::string fixture;
  std::string family;
  std::optional<Window> window;
  double tol = 1e-10;
  double t_max = 0.1;
  int t_steps = 20;
  double gamma = 0.9;
  double t = 0.0;
  std::optional<double> lambda;
  std::string out_dir;
  std::uint64_t seed = 0;
};

// Throws Error(InvalidInput) when an invariant fails.
void ValidateConfig(const RunConfig &config);

std::optional<Window> ParseWindow(const std::string &text);

struct Problem
{
  MetricGraph graph;
  PerturbationFamily family;
};

Problem LoadProblem(const RunConfig &config);

// Each writes the command's CSV or JSON document to out.
void CmdEigs(const RunConfig &config, std::ostream &out);
void CmdResonances(const RunConfig &config, std::ostream &out);
void CmdFgr(const RunConfig &config, std::ostream &out);
void CmdTrack(const RunConfig &config, std::ostream &out);
void CmdQuasimode(const RunConfig &config, std::ostream &out);

// Runs one command and maps failures to exit codes.
int RunCommand(const RunConfig &config, std::ostream &out, std::ostream &err);

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// Writes via a temporary file and rename.
void WriteFileAtomic(const std::string &path, const std::string &contents);

}  // namespace qgres::cli

#endif  // QGRES_TOOLS_CLI_HPP
