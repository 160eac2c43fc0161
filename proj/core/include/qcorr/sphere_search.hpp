// Grid-plus-refinement minimisation of a function of a unit vector
// n = (sin t cos p, sin t sin p, cos t).
//
// A coarse (theta, phi) grid over [0, pi] x [0, 2 pi) seeds a few local
// minima; each seed is refined on a 9x9 window that shrinks by `shrink`
// per round. When the best point of a window sits on its edge, the window
// is re-centred at the same size before shrinking again.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

struct SphereGrid {
  int theta_points = 181;
  int phi_points = 360;
  int refine_rounds = 3;
  int refine_points = 9;
  double shrink = 10.0;
  int seeds = 4;

  // 181 x 360 coarse pass, 3 rounds of 9x9 refinement.
  static SphereGrid production() { return {}; }
  // 19 x 36 coarse pass, 4 refinement rounds; used for the V sweeps.
  static SphereGrid fast() { return {19, 36, 4, 9, 10.0, 4}; }
};

struct SphereMinimum {
  double value = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

inline Vec3 unit_vector(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Maps arbitrary (theta, phi) to the same point with theta in [0, pi] and
// phi in [0, 2 pi).
inline SphereMinimum canonical_angles(SphereMinimum m) {
  constexpr double pi = std::numbers::pi;
  double t = std::fmod(m.theta, 2 * pi);
  double p = m.phi;
  if (t < 0) t += 2 * pi;
  if (t > pi) {
    t = 2 * pi - t;
    p += pi;
  }
  p = std::fmod(p, 2 * pi);
  if (p < 0) p += 2 * pi;
  m.theta = t;
  m.phi = p;
  return m;
}

template <class F>
SphereMinimum minimize_on_sphere(F&& f, const SphereGrid& grid) {
  constexpr double pi = std::numbers::pi;
  const int nt = std::max(grid.theta_points, 2);
  const int np = std::max(grid.phi_points, 1);
  const double dt = pi / (nt - 1);
  const double dp = 2 * pi / np;

  std::vector<double> table(static_cast<std::size_t>(nt) * np);
  auto at = [&](int i, int j) -> double& { return table[static_cast<std::size_t>(i) * np + j]; };
  for (int i = 0; i < nt; ++i) {
    const double theta = i * dt;
    const bool pole = (i == 0 || i == nt - 1);
    for (int j = 0; j < np; ++j) {
      if (pole && j > 0) {
        at(i, j) = at(i, 0);
        continue;
      }
      at(i, j) = f(unit_vector(theta, j * dp));
    }
  }

  // Local minima of the coarse table, best first; scan order breaks ties
  // (lowest theta, then lowest phi).
  struct Seed {
    double value;
    int i, j;
  };
  std::vector<Seed> cands;
  for (int i = 0; i < nt; ++i) {
    const bool pole = (i == 0 || i == nt - 1);
    for (int j = 0; j < (pole ? 1 : np); ++j) {
      const double v = at(i, j);
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int ii = i + di;
          if (ii < 0 || ii >= nt) continue;
          const int jj = ((j + dj) % np + np) % np;
          if (at(ii, jj) < v) {
            is_min = false;
            break;
          }
        }
      if (is_min) cands.push_back({v, i, j});
    }
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Seed& a, const Seed& b) { return a.value < b.value; });
  if (cands.size() > static_cast<std::size_t>(std::max(grid.seeds, 1)))
    cands.resize(static_cast<std::size_t>(std::max(grid.seeds, 1)));

  SphereMinimum best{cands.front().value, cands.front().i * dt, cands.front().j * dp};
  const int k = std::max(grid.refine_points, 3);
  const int half = (k - 1) / 2;

  for (const Seed& s : cands) {
    SphereMinimum cur{s.value, s.i * dt, s.j * dp};
    double wt = dt;
    double wp = dp;
    int round = 0;
    int recentres = 0;
    while (round < grid.refine_rounds) {
      int bi = half, bj = half;
      double bv = cur.value;
      const double st = wt / half;
      const double sp = wp / half;
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
          if (a == half && b == half) continue;
          const double t = cur.theta + (a - half) * st;
          const double p = cur.phi + (b - half) * sp;
          const double v = f(unit_vector(t, p));
          if (v < bv) {
            bv = v;
            bi = a;
            bj = b;
          }
        }
      cur = {bv, cur.theta + (bi - half) * st, cur.phi + (bj - half) * sp};
      const bool on_edge = bi == 0 || bi == k - 1 || bj == 0 || bj == k - 1;
      if (on_edge && recentres < 16) {
        ++recentres;
        continue;
      }
      recentres = 0;
      wt /= grid.shrink;
      wp /= grid.shrink;
      ++round;
    }
    if (cur.value < best.value) best = cur;
  }
  return canonical_angles(best);
}

}  // namespace qcorr
