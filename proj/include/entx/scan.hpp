#pragma once

// Sweep drivers behind the entx-scan tool: trajectories of (N, U), the
// randomized bound check, and the closed-form vs. numerical cross-validation.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "entx/closed_form.hpp"
#include "entx/model.hpp"

namespace entx {

inline constexpr const char* kToolVersion = "0.1.0";

// SplitMix64 (Steele, Lea, Flood 2014).  next():
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
// uniform() maps the top 53 bits onto [0, 1).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();

 private:
  std::uint64_t state_;
};

enum class SweepMode { TimeSeries, PhaseDiagram, BoundCheck, Verify };
enum class Engine { ClosedForm, Exact, RungeKutta4 };

const char* to_string(SweepMode mode);
const char* to_string(Engine engine);
// Accepts "closed", "exact", "rk4".
Engine parse_engine(const std::string& name);

struct SweepSpec {
  SweepMode mode = SweepMode::TimeSeries;
  SystemConfig config;
  double t_final = 10.0;
  std::size_t samples = 1001;
  Engine engine = Engine::ClosedForm;
  std::uint64_t seed = 42;
  // Overlay points appended by the phase diagram.
  std::size_t frontier_samples = 101;

  // Throws DomainError unless samples >= 2 and t_final > 0.
  void validate() const;
};

struct TrajectoryRecord {
  double t = 0.0;
  double N = 0.0;
  double U = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d_re = 0.0;
  double d_im = 0.0;
  double residual = 0.0;
  double trace_err = 0.0;
  double min_eig = 0.0;
  int frontier = 0;
};

inline constexpr double kRecordResidualFloor = -1e-8;

// Uniformly spaced records on [0, t_final] from the selected engine.  Throws
// EngineMismatch for the exact engine with decay and BoundViolation if a
// record falls below kRecordResidualFloor.
std::vector<TrajectoryRecord> compute_trajectory(const SweepSpec& spec);
// X-states b = c = d = (1+U)/2, a = -U that realize the frontier.
std::vector<TrajectoryRecord> frontier_records(std::size_t count);

void write_csv_header(std::ostream& out, const SweepSpec& spec);
void write_records(std::ostream& out, const std::vector<TrajectoryRecord>& records);
// Parses the column-name row and data rows, skipping '#' lines.
std::vector<TrajectoryRecord> read_records(std::istream& in);

void run_time_series(const SweepSpec& spec, std::ostream& out);
void run_phase_diagram(const SweepSpec& spec, std::ostream& out);

struct BoundSample {
  double theta = 0.0;
  double ratio = 1.0;  // g_aA / g_bB
  double kappa_A = 0.0;
  double kappa_B = 0.0;
  double t = 0.0;
  double residual = 0.0;
};

struct BoundCheckReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  BoundSample worst;                  // smallest residual seen
  std::vector<BoundSample> offenders;  // first few violations
  // max |residual| along theta = pi/4, ratio 1, kappa = 0 (should ride the frontier)
  double equality_max_abs = 0.0;

  bool passed() const;
};

inline constexpr double kBoundViolationFloor = -1e-8;
inline constexpr double kFrontierEqualityTolerance = 1e-9;

// Draws (theta, ratio, kappa_A, kappa_B, t) from SplitMix64(seed):
// theta uniform on [0, 2pi), ratio log-uniform on [1/64, 64], kappa/g uniform
// on [0, 2] per pair (forced to 0 when the base config has no decay), t uniform
// on [0, t_final].  g_bB comes from the base config and g_aA = ratio * g_bB.
BoundCheckReport run_bound_check(const SweepSpec& spec);
void write_bound_report(std::ostream& out, const SweepSpec& spec, const BoundCheckReport& report);

struct VerifyCheck {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_error <= tolerance; }
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool passed() const;
};

// Cross-validates closed forms against numerical propagation.  spec.samples
// is the number of time points per trajectory.
VerifyReport run_verify(const SweepSpec& spec);
void write_verify_report(std::ostream& out, const SweepSpec& spec, const VerifyReport& report);

struct NegativityPeak {
  double t = 0.0;
  double N = 0.0;
};

// Largest closed-form negativity on [0, t_final]: dense scan, then
// golden-section refinement of each candidate maximum.
NegativityPeak peak_negativity(const SystemConfig& cfg, double t_final);

}  // namespace entx
