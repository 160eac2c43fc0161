// Local-unitary robustness: the V(alpha, beta, gamma) family acting on the
// second qubit, min/max envelopes of the correlation measures over a V
// lattice, entanglement sudden death, sudden-change (kink) detection and
// ordering disagreements between measures.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcorr/dynamics.hpp"
#include "qcorr/measures.hpp"

namespace qcorr {

// V = sin a (s1 cos g + s2 sin g) + cos a (s3 cos b - i s0 sin b),
// a in [0, pi/2], b and g in [0, 2 pi].
struct LocalUnitary {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  CMat2 matrix() const;
};

DensityMatrix apply_local(const DensityMatrix& rho, const CMat2& v, Subsystem side = Subsystem::B);
DensityMatrix apply_local(const DensityMatrix& rho, const LocalUnitary& v, Subsystem side = Subsystem::B);

// alpha on [0, pi/2] inclusive; beta and gamma on [0, 2 pi) (2 pi repeats 0).
std::vector<LocalUnitary> unitary_lattice(int alpha_points, int beta_points, int gamma_points);

enum class Measure { Concurrence, EoF, MID, QD, GMQD };
inline constexpr std::array<Measure, 5> kAllMeasures{Measure::Concurrence, Measure::EoF, Measure::MID, Measure::QD,
                                                     Measure::GMQD};
const char* to_string(Measure m);
double value_of(const CorrelationReport& r, Measure m);

// ------------------------------------------------------------------ series

std::vector<CorrelationReport> reports_for(const Trajectory& trajectory, const ReportOptions& options = {});

struct MeasureSeries {
  std::vector<double> times;
  std::array<std::vector<double>, 5> values;  // indexed by Measure

  static MeasureSeries from(const Trajectory& trajectory, std::span<const CorrelationReport> reports);
  const std::vector<double>& operator[](Measure m) const { return values[static_cast<std::size_t>(m)]; }
};

// --------------------------------------------------------------------- ESD

struct TimeWindow {
  double start = 0.0;
  double end = 0.0;
};

struct RevivalWindow {
  TimeWindow window;
  ConcurrenceBranch branch = ConcurrenceBranch::None;  // at the window's interior sample
};

struct EsdReport {
  std::optional<double> esd_time;  // none: entangled over the whole span
  std::vector<RevivalWindow> revivals;
};

// Concurrence sign-change boundaries bisected to 1e-6 in gamma t.
EsdReport esd_time(const Trajectory& trajectory, double tolerance = 1e-6);

// ------------------------------------------------------------------- kinks

struct Kink {
  double time = 0.0;
  std::string from;
  std::string to;
};

struct KinkReport {
  std::vector<Kink> concurrence;
  std::vector<Kink> qd;
  std::vector<Kink> gmqd;
};

// Branch-tag changes between consecutive samples, bisected to 1e-4.
KinkReport detect_kinks(const Trajectory& trajectory, const ReportOptions& options = {},
                        double tolerance = 1e-4);
KinkReport detect_kinks(const Trajectory& trajectory, std::span<const CorrelationReport> reports,
                        const ReportOptions& options = {}, double tolerance = 1e-4);

// ---------------------------------------------------------------- ordering

inline constexpr double kSlopeDeadBand = 1e-6;

// Per-sample sign of the centred per-step difference (one-sided at the
// ends); changes within the dead band count as 0.
std::vector<int> slope_signs(std::span<const double> values, double dead_band = kSlopeDeadBand);

struct OrderingViolation {
  Measure first = Measure::MID;
  Measure second = Measure::QD;
  int first_sign = 0;  // +1 rising, -1 falling
  int second_sign = 0;
  TimeWindow window;
};

// Windows where the two measures of a pair move in opposite directions,
// for every pair drawn from `measures`.
std::vector<OrderingViolation> ordering_violations(const MeasureSeries& series, std::span<const Measure> measures,
                                                   double dead_band = kSlopeDeadBand);

struct SlopeRequirement {
  Measure measure;
  int sign;  // +1 or -1
};

// Windows where every requirement holds simultaneously.
std::vector<TimeWindow> pattern_windows(const MeasureSeries& series, std::span<const SlopeRequirement> pattern,
                                        double dead_band = kSlopeDeadBand);

// ---------------------------------------------------------------- envelope

struct EnvelopeOptions {
  ReportOptions report{SphereGrid::fast()};
  IntegratorOptions integrator{};
  unsigned jobs = 0;  // 0: available parallelism
};

struct Envelope {
  std::vector<double> times;
  std::vector<LocalUnitary> lattice;
  // Indexed by Measure, then by time. The baseline (no V applied) is folded
  // into min/max; argmin/argmax hold a lattice index or -1 for the baseline.
  std::array<std::vector<double>, 5> min, max, baseline;
  std::array<std::vector<long>, 5> argmin, argmax;

  std::vector<std::optional<double>> esd_times;  // per lattice entry
  std::vector<bool> completed;                   // false: integration failed, point skipped
  std::vector<std::string> skip_reasons;
  std::optional<double> baseline_esd;
  std::vector<std::size_t> no_esd;  // lattice indices entangled over the whole span
};

Envelope envelope(const DensityMatrix& rho0, const AtomPairParams& params, std::span<const LocalUnitary> lattice,
                  std::span<const double> times, const EnvelopeOptions& options = {});

}  // namespace qcorr
