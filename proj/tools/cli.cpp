// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <CLI11.hpp>
#include <json.hpp>
#include "qgres/error.hpp"
#include "qgres/fgr.hpp"
#include "qgres/fixtures.hpp"
#include "qgres/graph_io.hpp"
#include "qgres/quasimode.hpp"
#include "qgres/tracker.hpp"

namespace qgres::cli
{

namespace
{

std::string Format(double x)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Window DefaultWindow(const std::string &command)
{
  if (command == "resonances")
  {
    return {0.1, 10.0, -1.0, 0.1};
  }
  return {0.1, 10.0, -0.1, 0.1};
}

SearchOptions Search(const RunConfig &config)
{
  SearchOptions opts;
  opts.tol = config.tol;
  return opts;
}

// Lowest simple embedded eigenvalue, or the one nearest --lambda.
SpectralPoint SelectSeed(const RunConfig &config, const MetricGraph &g)
{
  const Window w = config.window.value_or(DefaultWindow("eigs"));
  SearchOptions opts = Search(config);
  opts.tol = std::min(opts.tol, 1e-12);
  const SpectralSearch found = FindSpectralPoints(g, w, opts);
  const SpectralPoint *best = nullptr;
  for (const auto &sp : found.points)
  {
    if (sp.kind != SpectralKind::EmbeddedEigenvalue)
    {
      continue;
    }
    if (config.lambda)
    {
      if (!best || std::abs(sp.lambda - *config.lambda) < std::abs(best->lambda - *config.lambda))
      {
        best = &sp;
      }
    }
    else if (sp.multiplicity == 1)
    {
      best = &sp;
      break;
    }
  }
  if (!best)
  {
    throw Error(ErrorCode::NotEmbedded, "no embedded eigenvalue in the window");
  }
  return *best;
}

std::vector<double> Grid(const RunConfig &config, bool include_zero)
{
  std::vector<double> t;
  for (int i = include_zero ? 0 : 1; i <= config.t_steps; i++)
  {
    t.push_back(config.t_max * i / config.t_steps);
  }
  return t;
}

// Least-squares slope of log y against log x.
double LogSlope(const std::vector<double> &x, const std::vector<double> &y)
{
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < x.size(); i++)
  {
    if (x[i] > 0.0 && y[i] > 0.0)
    {
      const double lx = std::log(x[i]), ly = std::log(y[i]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      n++;
    }
  }
  if (n < 2)
  {
    return std::nan("");
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const char *OutputName(const std::string &command)
{
  if (command == "eigs")
  {
    return "eigs.csv";
  }
  if (command == "resonances")
  {
    return "resonances.csv";
  }
  if (command == "fgr")
  {
    return "fgr.json";
  }
  if (command == "track")
  {
    return "trajectory.csv";
  }
  return "quasimode.json";
}

}  // namespace

void ValidateConfig(const RunConfig &c)
{
  static const char *commands[] = {"eigs", "resonances", "fgr", "track", "quasimode"};
  if (std::find(std::begin(commands), std::end(commands), c.command) == std::end(commands))
  {
    throw Error(ErrorCode::InvalidInput, "unknown command " + c.command);
  }
  if (c.graph_path.empty() == c.fixture.empty())
  {
    throw Error(ErrorCode::InvalidInput, "give exactly one of --graph or --fixture");
  }
  if (c.window && !(c.window->re_min < c.window->re_max && c.window->im_min < c.window->im_max))
  {
    throw Error(ErrorCode::InvalidInput, "window must be nonempty");
  }
  if (c.t_steps < 4)
  {
    throw Error(ErrorCode::InvalidInput, "--steps must be at least 4");
  }
  if (!(c.gamma > 0.0 && c.gamma < 1.0))
  {
    throw Error(ErrorCode::InvalidInput, "--gamma must lie in (0, 1)");
  }
  if (!(c.tol > 0.0))
  {
    throw Error(ErrorCode::InvalidInput, "--tol must be positive");
  }
  if (!(c.t_max > 0.0) || !std::isfinite(c.t_max))
  {
    throw Error(ErrorCode::InvalidInput, "--tmax must be positive");
  }
  if (!c.perturbation_path.empty() && !c.family.empty())
  {
    throw Error(ErrorCode::InvalidInput, "give at most one of --perturbation or --family");
  }
}

std::optional<Window> ParseWindow(const std::string &text)
{
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    try
    {
      size_t used;
      v.push_back(std::stod(item, &used));
      if (used != item.size())
      {
        return std::nullopt;
      }
    }
    catch (const std::exception &)
    {
      return std::nullopt;
    }
  }
  if (v.size() != 4)
  {
    return std::nullopt;
  }
  return Window{v[0], v[1], v[2], v[3]};
}

Problem LoadProblem(const RunConfig &c)
{
  Problem p;
  if (!c.fixture.empty())
  {
    if (c.fixture == "fig2")
    {
      p.graph = fixtures::TwoCycle();
    }
    else if (c.fixture == "example2")
    {
      p.graph = fixtures::ExampleTwo();
    }
    else if (c.fixture == "halfline")
    {
      p.graph = fixtures::HalfLine();
    }
    else if (c.fixture.rfind("cycle:", 0) == 0)
    {
      int k;
      try
      {
        size_t used;
        k = std::stoi(c.fixture.substr(6), &used);
        if (used != c.fixture.size() - 6)
        {
          throw std::invalid_argument("trailing characters");
        }
      }
      catch (const std::exception &)
      {
        throw Error(ErrorCode::InvalidInput, "bad fixture " + c.fixture);
      }
      p.graph = fixtures::Cycle(k);
    }
    else
    {
      throw Error(ErrorCode::InvalidInput, "unknown fixture " + c.fixture);
    }
  }
  else
  {
    p.graph = ValidateGraph(ParseGraphText(ReadTextFile(c.graph_path)));
  }

  if (!c.perturbation_path.empty())
  {
    p.family = ValidatePerturbation(ParsePerturbationText(ReadTextFile(c.perturbation_path)), p.graph);
  }
  else if (!c.family.empty())
  {
    if (c.family.size() != 1)
    {
      throw Error(ErrorCode::InvalidInput, "family is a single letter");
    }
    if (c.fixture == "fig2")
    {
      p.family = fixtures::TwoCycleFamily(p.graph, c.family[0]);
    }
    else if (c.fixture == "example2")
    {
      p.family = fixtures::ExampleTwoFamily(p.graph, c.family[0]);
    }
    else
    {
      throw Error(ErrorCode::InvalidInput, "--family needs --fixture fig2 or example2");
    }
  }
  else
  {
    p.family = ZeroPerturbation(p.graph);
  }
  return p;
}

void CmdEigs(const RunConfig &c, std::ostream &out)
{
  const Problem p = LoadProblem(c);
  const MetricGraph g = GraphAt(p.family, p.graph, c.t);
  const SpectralSearch found =
      FindSpectralPoints(g, c.window.value_or(DefaultWindow("eigs")), Search(c));
  out << "lambda,multiplicity\n";
  for (const auto &sp : found.points)
  {
    if (sp.kind == SpectralKind::EmbeddedEigenvalue)
    {
      out << Format(sp.lambda.real()) << "," << sp.multiplicity << "\n";
    }
  }
}

void CmdResonances(const RunConfig &c, std::ostream &out)
{
  const Problem p = LoadProblem(c);
  const MetricGraph g = GraphAt(p.family, p.graph, c.t);
  const SpectralSearch found =
      FindSpectralPoints(g, c.window.value_or(DefaultWindow("resonances")), Search(c));
  out << "re_lambda,im_lambda,multiplicity\n";
  for (const auto &sp : found.points)
  {
    out << Format(sp.lambda.real()) << "," << Format(sp.lambda.imag()) << "," << sp.multiplicity
        << "\n";
  }
}

void CmdFgr(const RunConfig &c, std::ostream &out)
{
  const Problem p = LoadProblem(c);
  const SpectralPoint seed = SelectSeed(c, p.graph);
  const FgrReport report = FgrCoefficients(p.graph, seed, Adot(p.family, p.graph));
  out << ToJson(report).dump(2) << "\n";
}

void CmdTrack(const RunConfig &c, std::ostream &out)
{
  const Problem p = LoadProblem(c);
  const SpectralPoint seed = SelectSeed(c, p.graph);
  const FgrReport report = FgrCoefficients(p.graph, seed, Adot(p.family, p.graph));
  const std::vector<double> grid = Grid(c, true);
  Trajectory traj = Track(p.graph, p.family, seed, grid);
  if (traj.lost_track)
  {
    throw Error(ErrorCode::LostTrack, "trajectory lost before t = " + Format(c.t_max));
  }
  AttachModel(traj, report);
  WriteTrajectoryCsv(out, traj);
}

void CmdQuasimode(const RunConfig &c, std::ostream &out)
{
  const Problem p = LoadProblem(c);
  const SpectralPoint seed = SelectSeed(c, p.graph);
  const double lambda0 = seed.lambda.real();
  const EdgeWave u0 = Eigenfunction(p.graph, seed);
  nlohmann::json reports = nlohmann::json::array();
  std::vector<double> eps, dist;
  for (double t : Grid(c, false))
  {
    const Quasimode q = BuildShiftedQuasimode(p.graph, p.family, t, lambda0, u0);
    const ProximityResult prox =
        CheckResonanceProximity(GraphAt(p.family, p.graph, t), lambda0, q.epsilon, c.gamma);
    QuasimodeReport r;
    r.lambda0 = lambda0;
    r.t = t;
    r.epsilon = q.epsilon;
    r.gamma = c.gamma;
    r.distance = prox.distance;
    r.holds = prox.holds;
    r.c_observed = (q.epsilon > 0.0) ? prox.distance / q.epsilon : 0.0;
    r.epsilon_over_t = q.epsilon / t;
    if (prox.witness)
    {
      r.witness = prox.witness->lambda;
    }
    reports.push_back(ToJson(r));
    eps.push_back(q.epsilon);
    dist.push_back(prox.distance);
  }
  nlohmann::json doc;
  doc["reports"] = reports;
  doc["distance_exponent"] = LogSlope(eps, dist);
  out << doc.dump(2) << "\n";
}

void WriteFileAtomic(const std::string &path, const std::string &contents)
{
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f)
    {
      throw Error(ErrorCode::InvalidInput, "cannot write " + tmp);
    }
    f << contents;
    f.flush();
    if (!f)
    {
      throw Error(ErrorCode::InvalidInput, "write failed for " + tmp);
    }
  }
  std::filesystem::rename(tmp, path);
}

int RunCommand(const RunConfig &c, std::ostream &out, std::ostream &err)
{
  try
  {
    ValidateConfig(c);
    std::ostringstream buf;
    if (c.command == "eigs")
    {
      CmdEigs(c, buf);
    }
    else if (c.command == "resonances")
    {
      CmdResonances(c, buf);
    }
    else if (c.command == "fgr")
    {
      CmdFgr(c, buf);
    }
    else if (c.command == "track")
    {
      CmdTrack(c, buf);
    }
    else
    {
      CmdQuasimode(c, buf);
    }
    if (c.out_dir.empty())
    {
      out << buf.str();
    }
    else
    {
      std::filesystem::create_directories(c.out_dir);
      WriteFileAtomic((std::filesystem::path(c.out_dir) / OutputName(c.command)).string(), buf.str());
    }
    return kExitOk;
  }
  catch (const Error &e)
  {
    err << "qgres: " << e.what() << "\n";
    return IsValidationError(e.Code()) ? kExitValidation : kExitSolver;
  }
  catch (const std::exception &e)
  {
    err << "qgres: " << e.what() << "\n";
    return kExitSolver;
  }
}

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Spectra, resonances and decay rates of quantum graphs with leads"};
  RunConfig c;
  std::string window;
  std::optional<double> lambda;
  app.add_option("command", c.command, "eigs | resonances | fgr | track | quasimode")->required();
  app.add_option("--graph", c.graph_path, "graph JSON file");
  app.add_option("--perturbation", c.perturbation_path, "perturbation JSON file");
  app.add_option("--fixture", c.fixture, "fig2 | example2 | halfline | cycle:K");
  app.add_option("--family", c.family, "built-in family of the fixture");
  app.add_option("--window", window, "re_min,re_max,im_min,im_max");
  app.add_option("--tmax", c.t_max, "largest t");
  app.add_option("--steps", c.t_steps, "number of t steps");
  app.add_option("--gamma", c.gamma, "proximity exponent");
  app.add_option("--tol", c.tol, "root tolerance");
  app.add_option("--t", c.t, "evaluate the perturbed graph at this t");
  app.add_option("--lambda", lambda, "pick the embedded eigenvalue nearest to this value");
  app.add_option("--out", c.out_dir, "output directory");
  app.add_option("--seed", c.seed, "random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch (const CLI::CallForHelp &)
  {
    out << app.help();
    return kExitOk;
  }
  catch (const CLI::ParseError &e)
  {
    err << "qgres: " << e.what() << "\n";
    return kExitValidation;
  }
  c.lambda = lambda;
  if (!window.empty())
  {
    c.window = ParseWindow(window);
    if (!c.window)
    {
      err << "qgres: --window needs four comma-separated numbers\n";
      return kExitValidation;
    }
  }
  return RunCommand(c, out, err);
}

}  // namespace qgres::cli
