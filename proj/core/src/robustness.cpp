#include "qcorr/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "qcorr/error.hpp"
#include "qcorr/parallel.hpp"

namespace qcorr {

namespace {

using namespace std::complex_literals;

constexpr std::size_t index(Measure m) { return static_cast<std::size_t>(m); }

double witness(const DensityMatrix& rho) {
  if (auto x = as_x_state(rho, kXStateTolerance)) return concurrence_x(*x).witness;
  return concurrence_witness(rho);
}

ConcurrenceBranch concurrence_branch_of(const DensityMatrix& rho) {
  if (auto x = as_x_state(rho, kXStateTolerance)) return concurrence_x(*x).branch;
  return ConcurrenceBranch::None;
}

// Shrinks [lo, hi] around the point where pred flips from pred(lo) to
// !pred(lo).
std::pair<double, double> bisect(const std::function<bool(double)>& pred, double lo, double hi, double tol) {
  const bool at_lo = pred(lo);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid) == at_lo)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

// Branch tags; nullopt marks a sample whose tag is undetermined and matches
// anything.
using Tag = std::optional<std::string>;

Tag qd_tag(const CorrelationReport& r) {
  switch (r.qd_theta_branch) {
    case ThetaBranch::Generic:
      return std::nullopt;
    case ThetaBranch::Polar:
      return std::string("polar");
    case ThetaBranch::Interior:
      return std::string("interior");
    case ThetaBranch::Equatorial:
      if (r.qd_phi_branch == PhiBranch::Degenerate) return std::nullopt;
      return std::string("equatorial/") + to_string(r.qd_phi_branch);
  }
  return std::nullopt;
}

Tag gmqd_tag(const CorrelationReport& r) {
  if (r.gmqd_branch == GmqdBranch::Generic || r.gmqd_degenerate) return std::nullopt;
  return std::string(to_string(r.gmqd_branch));
}

Tag concurrence_tag(const CorrelationReport& r) { return std::string(to_string(r.concurrence_branch)); }

void scan_tags(const Trajectory& tr, std::span<const CorrelationReport> reports, const ReportOptions& options,
               double tol, Tag (*tag_of)(const CorrelationReport&), std::vector<Kink>& out) {
  std::optional<std::size_t> last;  // last sample with a determined tag
  Tag last_tag;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    Tag t = tag_of(reports[i]);
    if (!t) continue;
    if (last && *t != *last_tag) {
      const std::string from = *last_tag;
      const std::string to = *t;
      auto keeps_from = [&](double gt) {
        const Tag mid = tag_of(correlations(state_at(tr, gt), options));
        return !mid || *mid == from;
      };
      const auto [lo, hi] = bisect(keeps_from, tr.times[*last], tr.times[i], tol);
      out.push_back({0.5 * (lo + hi), from, to});
    }
    last = i;
    last_tag = std::move(t);
  }
}

// Maximal runs of consecutive samples where `holds` is true.
std::vector<TimeWindow> runs(std::span<const double> times, const std::vector<bool>& holds) {
  std::vector<TimeWindow> out;
  std::size_t i = 0;
  while (i < holds.size()) {
    if (!holds[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < holds.size() && holds[j + 1]) ++j;
    out.push_back({times[i], times[j]});
    i = j + 1;
  }
  return out;
}

}  // namespace

CMat2 LocalUnitary::matrix() const {
  const double sa = std::sin(alpha);
  const double ca = std::cos(alpha);
  return (sigma(1) * std::cos(gamma) + sigma(2) * std::sin(gamma)) * sa +
         (sigma(3) * std::cos(beta) - sigma(0) * (1i * std::sin(beta))) * ca;
}

DensityMatrix apply_local(const DensityMatrix& rho, const CMat2& v, Subsystem side) {
  const CMat4 u = side == Subsystem::A ? kron(v, sigma(0)) : kron(sigma(0), v);
  return DensityMatrix(u * rho.matrix() * u.adjoint());
}

DensityMatrix apply_local(const DensityMatrix& rho, const LocalUnitary& v, Subsystem side) {
  return apply_local(rho, v.matrix(), side);
}

std::vector<LocalUnitary> unitary_lattice(int alpha_points, int beta_points, int gamma_points) {
  if (alpha_points < 1 || beta_points < 1 || gamma_points < 1)
    throw ValidationError("unitary lattice needs at least one point per axis");
  std::vector<LocalUnitary> out;
  out.reserve(static_cast<std::size_t>(alpha_points) * beta_points * gamma_points);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int a = 0; a < alpha_points; ++a) {
    const double alpha = alpha_points == 1 ? 0.0 : 0.5 * std::numbers::pi * a / (alpha_points - 1);
    for (int b = 0; b < beta_points; ++b)
      for (int g = 0; g < gamma_points; ++g)
        out.push_back({alpha, two_pi * b / beta_points, two_pi * g / gamma_points});
  }
  return out;
}

const char* to_string(Measure m) {
  switch (m) {
    case Measure::Concurrence:
      return "concurrence";
    case Measure::EoF:
      return "eof";
    case Measure::MID:
      return "mid";
    case Measure::QD:
      return "qd";
    case Measure::GMQD:
      return "gmqd";
  }
  return "?";
}

double value_of(const CorrelationReport& r, Measure m) {
  switch (m) {
    case Measure::Concurrence:
      return r.concurrence;
    case Measure::EoF:
      return r.eof;
    case Measure::MID:
      return r.mid;
    case Measure::QD:
      return r.qd;
    case Measure::GMQD:
      return r.gmqd;
  }
  return 0.0;
}

std::vector<CorrelationReport> reports_for(const Trajectory& tr, const ReportOptions& options) {
  std::vector<CorrelationReport> out;
  out.reserve(tr.states.size());
  for (const auto& s : tr.states) out.push_back(correlations(s, options));
  return out;
}

MeasureSeries MeasureSeries::from(const Trajectory& tr, std::span<const CorrelationReport> reports) {
  if (reports.size() != tr.times.size()) throw ValidationError("one report per trajectory sample expected");
  MeasureSeries s;
  s.times = tr.times;
  for (Measure m : kAllMeasures) {
    auto& v = s.values[index(m)];
    v.reserve(reports.size());
    for (const auto& r : reports) v.push_back(value_of(r, m));
  }
  return s;
}

EsdReport esd_time(const Trajectory& tr, double tol) {
  EsdReport out;
  if (tr.times.empty()) return out;
  std::vector<double> w;
  w.reserve(tr.states.size());
  for (const auto& s : tr.states) w.push_back(witness(s));

  auto entangled = [&](double gt) { return witness(state_at(tr, gt)) > 0.0; };
  if (w.front() <= 0.0) {
    out.esd_time = tr.times.front();
  }
  bool in_revival = false;
  double revival_start = 0.0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    const bool was = w[i - 1] > 0.0;
    const bool is = w[i] > 0.0;
    if (was == is) continue;
    const auto [lo, hi] = bisect(entangled, tr.times[i - 1], tr.times[i], tol);
    if (was) {
      // Entangled -> separable. The upper end is the first separable point.
      if (!out.esd_time) {
        out.esd_time = hi;
      } else if (in_revival) {
        out.revivals.push_back({{revival_start, lo}, ConcurrenceBranch::None});
        in_revival = false;
      }
    } else if (out.esd_time) {
      in_revival = true;
      revival_start = hi;
    }
  }
  if (in_revival) out.revivals.push_back({{revival_start, tr.times.back()}, ConcurrenceBranch::None});
  for (auto& r : out.revivals)
    r.branch = concurrence_branch_of(state_at(tr, 0.5 * (r.window.start + r.window.end)));
  return out;
}

KinkReport detect_kinks(const Trajectory& tr, const ReportOptions& options, double tol) {
  const auto reports = reports_for(tr, options);
  return detect_kinks(tr, reports, options, tol);
}

KinkReport detect_kinks(const Trajectory& tr, std::span<const CorrelationReport> reports,
                        const ReportOptions& options, double tol) {
  if (reports.size() != tr.times.size()) throw ValidationError("one report per trajectory sample expected");
  KinkReport out;
  scan_tags(tr, reports, options, tol, concurrence_tag, out.concurrence);
  scan_tags(tr, reports, options, tol, qd_tag, out.qd);
  scan_tags(tr, reports, options, tol, gmqd_tag, out.gmqd);
  return out;
}

std::vector<int> slope_signs(std::span<const double> v, double dead_band) {
  std::vector<int> out(v.size(), 0);
  if (v.size() < 2) return out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == v.size() ? i : i + 1;
    const double per_step = (v[hi] - v[lo]) / static_cast<double>(hi - lo);
    out[i] = per_step > dead_band ? 1 : per_step < -dead_band ? -1 : 0;
  }
  return out;
}

std::vector<OrderingViolation> ordering_violations(const MeasureSeries& s, std::span<const Measure> measures,
                                                   double dead_band) {
  std::vector<OrderingViolation> out;
  for (std::size_t a = 0; a < measures.size(); ++a) {
    const auto sa = slope_signs(s[measures[a]], dead_band);
    for (std::size_t b = a + 1; b < measures.size(); ++b) {
      const auto sb = slope_signs(s[measures[b]], dead_band);
      for (int sign : {1, -1}) {
        std::vector<bool> holds(sa.size());
        for (std::size_t i = 0; i < sa.size(); ++i) holds[i] = sa[i] == sign && sb[i] == -sign;
        for (const auto& w : runs(s.times, holds)) out.push_back({measures[a], measures[b], sign, -sign, w});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return x.window.start < y.window.start; });
  return out;
}

std::vector<TimeWindow> pattern_windows(const MeasureSeries& s, std::span<const SlopeRequirement> pattern,
                                        double dead_band) {
  std::vector<bool> holds(s.times.size(), true);
  for (const auto& req : pattern) {
    const auto signs = slope_signs(s[req.measure], dead_band);
    for (std::size_t i = 0; i < holds.size(); ++i) holds[i] = holds[i] && signs[i] == req.sign;
  }
  return runs(s.times, holds);
}

Envelope envelope(const DensityMatrix& rho0, const AtomPairParams& params, std::span<const LocalUnitary> lattice,
                  std::span<const double> times, const EnvelopeOptions& options) {
  Envelope env;
  env.times.assign(times.begin(), times.end());
  env.lattice.assign(lattice.begin(), lattice.end());
  const std::size_t nt = times.size();
  const std::size_t nv = lattice.size();

  // Per-V series, written into fixed slots so the merge below is
  // independent of scheduling.
  std::vector<std::array<std::vector<double>, 5>> values(nv);
  env.esd_times.assign(nv, std::nullopt);
  env.completed.assign(nv, false);
  env.skip_reasons.assign(nv, std::string());

  auto run_one = [&](const DensityMatrix& rho, std::array<std::vector<double>, 5>& vals) {
    const Trajectory tr = integrate(rho, params, times, options.integrator);
    const auto reports = reports_for(tr, options.report);
    for (Measure m : kAllMeasures) {
      auto& v = vals[index(m)];
      v.resize(nt);
      for (std::size_t t = 0; t < nt; ++t) v[t] = value_of(reports[t], m);
    }
    return esd_time(tr).esd_time;
  };

  std::array<std::vector<double>, 5> base;
  env.baseline_esd = run_one(rho0, base);
  env.baseline = base;

  parallel_for(nv, options.jobs, [&](std::size_t i) {
    try {
      env.esd_times[i] = run_one(apply_local(rho0, lattice[i]), values[i]);
      env.completed[i] = true;
    } catch (const IntegrationError& e) {
      env.skip_reasons[i] = e.what();
    }
  });

  for (Measure m : kAllMeasures) {
    const std::size_t k = index(m);
    env.min[k] = base[k];
    env.max[k] = base[k];
    env.argmin[k].assign(nt, -1);
    env.argmax[k].assign(nt, -1);
    for (std::size_t i = 0; i < nv; ++i) {
      if (!env.completed[i]) continue;
      for (std::size_t t = 0; t < nt; ++t) {
        const double v = values[i][k][t];
        if (v < env.min[k][t]) {
          env.min[k][t] = v;
          env.argmin[k][t] = static_cast<long>(i);
        }
        if (v > env.max[k][t]) {
          env.max[k][t] = v;
          env.argmax[k][t] = static_cast<long>(i);
        }
      }
    }
  }
  for (std::size_t i = 0; i < nv; ++i)
    if (env.completed[i] && !env.esd_times[i]) env.no_esd.push_back(i);
  return env;
}

}  // namespace qcorr
