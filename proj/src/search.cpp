// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include "qgres/error.hpp"
#include "qgres/secular.hpp"

namespace qgres
{

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Sample
{
  Complex z;
  Complex mantissa;
  Complex log_derivative;
};

class ArgumentCounter
{
public:
  ArgumentCounter(const MetricGraph &g, double scale) : g(g), min_length(1e-13 * scale) {}

  Sample Eval(Complex z)
  {
    DetEvaluation ev = EvaluateDet(g, z);
    if (ev.det.mantissa == 0.0 || !std::isfinite(std::abs(ev.log_derivative)))
    {
      throw Error(ErrorCode::ContourThroughZero, "det vanishes on the contour");
    }
    return {z, ev.det.mantissa, ev.log_derivative};
  }

  // Change of arg det along the straight segment a -> b.
  double Side(Complex a, Complex b)
  {
    const std::array<double, 4> key{a.real(), a.imag(), b.real(), b.imag()};
    if (auto it = cache.find(key); it != cache.end())
    {
      return it->second;
    }
    const std::array<double, 4> rev{b.real(), b.imag(), a.real(), a.imag()};
    if (auto it = cache.find(rev); it != cache.end())
    {
      return -it->second;
    }
    const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / 0.25)));
    double sum = 0.0;
    Sample prev = Eval(a);
    for (int i = 1; i <= pieces; i++)
    {
      Complex z = (i == pieces) ? b : a + (b - a) * (static_cast<double>(i) / pieces);
      Sample next = Eval(z);
      sum += Segment(prev, Eval(0.5 * (prev.z + next.z)), next);
      prev = next;
    }
    cache.emplace(key, sum);
    return sum;
  }

  int Winding(const Window &w)
  {
    const Complex c0(w.re_min, w.im_min), c1(w.re_max, w.im_min), c2(w.re_max, w.im_max),
        c3(w.re_min, w.im_max);
    const double total = Side(c0, c1) + Side(c1, c2) + Side(c2, c3) + Side(c3, c0);
    return static_cast<int>(std::lround(total / kTwoPi));
  }

private:
  static double Simpson(const Sample &a, const Sample &m, const Sample &b)
  {
    return ((b.z - a.z) / 6.0 * (a.log_derivative + 4.0 * m.log_derivative + b.log_derivative))
        .imag();
  }

  double Segment(const Sample &a, const Sample &m, const Sample &b)
  {
    if (std::abs(b.z - a.z) < min_length)
    {
      throw Error(ErrorCode::ContourThroughZero, "contour segment cannot be resolved");
    }
    const Sample q1 = Eval(0.5 * (a.z + m.z)), q3 = Eval(0.5 * (m.z + b.z));
    const double coarse = Simpson(a, m, b);
    const double fine = Simpson(a, q1, m) + Simpson(m, q3, b);
    // The endpoint ratio fixes the increment modulo 2 pi; quadrature picks the branch.
    const double exact = std::arg(b.mantissa / a.mantissa);
    const double branch = exact + kTwoPi * std::round((fine - exact) / kTwoPi);
    if (std::abs(coarse - fine) < 0.05 && std::abs(fine - branch) < 0.25 && std::abs(fine) < 2.0)
    {
      return branch;
    }
    return Segment(a, q1, m) + Segment(m, q3, b);
  }

  const MetricGraph &g;
  double min_length;
  std::map<std::array<double, 4>, double> cache;
};

double Scale(const Window &w)
{
  return std::max({1.0, std::abs(w.re_min), std::abs(w.re_max), std::abs(w.im_min),
                   std::abs(w.im_max)});
}

bool Contains(const Window &w, Complex z, double margin)
{
  return z.real() >= w.re_min - margin && z.real() <= w.re_max + margin &&
         z.imag() >= w.im_min - margin && z.imag() <= w.im_max + margin;
}

void CheckWindow(const Window &w)
{
  if (!(w.re_min < w.re_max) || !(w.im_min < w.im_max) || !std::isfinite(w.re_min) ||
      !std::isfinite(w.re_max) || !std::isfinite(w.im_min) || !std::isfinite(w.im_max))
  {
    throw Error(ErrorCode::InvalidInput, "empty search window");
  }
  if (Contains(w, 0.0, 0.0))
  {
    throw Error(ErrorCode::InvalidInput, "search window contains lambda = 0");
  }
}

std::optional<Complex> Newton(const MetricGraph &g, Complex guess, double tol, int max_iter,
                              int multiplicity)
{
  Complex z = guess;
  for (int it = 0; it < max_iter; it++)
  {
    DetEvaluation ev = EvaluateDet(g, z);
    if (ev.det.mantissa == 0.0)
    {
      return z;
    }
    const Complex step = -static_cast<double>(multiplicity) / ev.log_derivative;
    if (!std::isfinite(std::abs(step)))
    {
      return std::nullopt;
    }
    z += step;
    if (std::abs(step) <= tol)
    {
      // One more step to settle below the stopping tolerance.
      DetEvaluation last = EvaluateDet(g, z);
      if (last.det.mantissa != 0.0 && std::isfinite(std::abs(last.log_derivative)))
      {
        Complex s = -static_cast<double>(multiplicity) / last.log_derivative;
        if (std::abs(s) <= std::abs(step))
        {
          z += s;
        }
      }
      return z;
    }
  }
  return std::nullopt;
}

struct Root
{
  Complex lambda;
  int multiplicity;
};

class BoxSearch
{
public:
  BoxSearch(const MetricGraph &g, const SearchOptions &opts, double scale)
    : g(g), opts(opts), counter(g, scale), scale(scale)
  {
  }

  int Winding(const Window &w) { return counter.Winding(w); }

  void Process(const Window &w, int n, int depth)
  {
    if (n <= 0)
    {
      return;
    }
    const Complex center(0.5 * (w.re_min + w.re_max), 0.5 * (w.im_min + w.im_max));
    const double diameter = std::hypot(w.re_max - w.re_min, w.im_max - w.im_min);
    const double margin = 1e-9 * scale;
    if (auto z = Newton(g, center, opts.tol, 60, n); z && Contains(w, *z, margin))
    {
      if (n == 1 || KernelDimension(*z) >= n)
      {
        roots.push_back({*z, n});
        return;
      }
    }
    if (diameter < opts.tol)
    {
      roots.push_back({center, n});
      return;
    }
    if (depth >= opts.max_depth)
    {
      throw Error(ErrorCode::MaxDepthExceeded, "box subdivision did not separate roots");
    }
    static constexpr double kSplits[][2] = {
        {0.4913, 0.5179}, {0.4377, 0.5621}, {0.5531, 0.4489}, {0.4711, 0.4263}};
    for (int attempt = 0; attempt < 4; attempt++)
    {
      const double sx = w.re_min + kSplits[attempt][0] * (w.re_max - w.re_min);
      const double sy = w.im_min + kSplits[attempt][1] * (w.im_max - w.im_min);
      const Window children[4] = {{w.re_min, sx, w.im_min, sy},
                                  {sx, w.re_max, w.im_min, sy},
                                  {w.re_min, sx, sy, w.im_max},
                                  {sx, w.re_max, sy, w.im_max}};
      int counts[4];
      try
      {
        for (int i = 0; i < 4; i++)
        {
          counts[i] = counter.Winding(children[i]);
        }
      }
      catch (const Error &e)
      {
        if (e.Code() == ErrorCode::ContourThroughZero && attempt < 3)
        {
          continue;
        }
        throw;
      }
      if (counts[0] + counts[1] + counts[2] + counts[3] != n && attempt < 3)
      {
        continue;
      }
      for (int i = 0; i < 4; i++)
      {
        Process(children[i], counts[i], depth + 1);
      }
      return;
    }
  }

  std::vector<Root> roots;

private:
  int KernelDimension(Complex z)
  {
    const SecularSystem sys = BuildSecular(g, z);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys.matrix);
    const auto &s = svd.singularValues();
    int dim = 0;
    for (int i = 0; i < s.size(); i++)
    {
      dim += (s(i) <= 1e-8 * s(0)) ? 1 : 0;
    }
    return dim;
  }

  const MetricGraph &g;
  const SearchOptions &opts;
  ArgumentCounter counter;
  double scale;
};

Window Jitter(const Window &w, int attempt)
{
  if (attempt == 0)
  {
    return w;
  }
  const double h = 1e-3 * attempt * std::max(w.re_max - w.re_min, w.im_max - w.im_min);
  Window j{w.re_min - 0.37 * h, w.re_max + 0.61 * h, w.im_min - 0.83 * h, w.im_max + 0.29 * h};
  if (Contains(j, 0.0, 0.0))
  {
    // Never grow across lambda = 0.
    if (w.re_min > 0.0)
    {
      j.re_min = 0.5 * w.re_min;
    }
    else if (w.re_max < 0.0)
    {
      j.re_max = 0.5 * w.re_max;
    }
    else if (w.im_min > 0.0)
    {
      j.im_min = 0.5 * w.im_min;
    }
    else
    {
      j.im_max = 0.5 * w.im_max;
    }
  }
  return j;
}

}  // namespace

int WindingNumber(const MetricGraph &g, const Window &w)
{
  CheckWindow(w);
  ArgumentCounter counter(g, Scale(w));
  return counter.Winding(w);
}

std::optional<Complex> PolishRoot(const MetricGraph &g, Complex guess, double tol, int max_iter)
{
  return Newton(g, guess, tol, max_iter, 1);
}

SpectralSearch FindSpectralPoints(const MetricGraph &g, const Window &w, const SearchOptions &opts)
{
  CheckWindow(w);
  const double scale = Scale(w);
  for (int attempt = 0;; attempt++)
  {
    const Window contour = Jitter(w, attempt);
    BoxSearch search(g, opts, scale);
    int n;
    try
    {
      n = search.Winding(contour);
      search.Process(contour, n, 0);
    }
    catch (const Error &e)
    {
      if (e.Code() == ErrorCode::ContourThroughZero && attempt < opts.max_jitter)
      {
        continue;
      }
      throw;
    }

    std::vector<Root> roots = search.roots;
    std::sort(roots.begin(), roots.end(), [](const Root &a, const Root &b)
              { return a.lambda.real() != b.lambda.real() ? a.lambda.real() < b.lambda.real()
                                                           : a.lambda.imag() < b.lambda.imag(); });
    std::vector<Root> distinct;
    for (const auto &r : roots)
    {
      bool dup = false;
      for (const auto &d : distinct)
      {
        dup = dup || std::abs(d.lambda - r.lambda) <= 1e-9 * scale;
      }
      if (!dup)
      {
        distinct.push_back(r);
      }
    }

    SpectralSearch result;
    result.contour = contour;
    result.winding_count = n;
    for (const auto &r : distinct)
    {
      if (Contains(w, r.lambda, 1e-9 * scale))
      {
        result.points.push_back(MakeSpectralPoint(g, r.lambda, r.multiplicity, opts));
      }
      result.root_count += r.multiplicity;
    }
    return result;
  }
}

}  // namespace qgres
