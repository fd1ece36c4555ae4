#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fishschool/cohesion.hpp"
#include "fishschool/error.hpp"
#include "fishschool/metrics.hpp"
#include "fishschool/patterns.hpp"
#include "fishschool/sde.hpp"

namespace fishschool::harness {

/// Labels per grid value of a one-parameter sweep.
struct SweepPoint {
  double value = 0.0;
  PatternLabel label = PatternLabel::kUnclassified;
  /// Non-empty when the point could not be run (e.g. NoConvergence).
  std::string error;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

struct SweepReport {
  std::string parameter;
  std::string config_hash;
  std::vector<double> grid_values;
  std::vector<PatternLabel> labels;
  std::vector<std::string> errors;
  /// Midpoints between consecutive grid values whose labels differ.
  std::vector<double> transition_boundaries;

  friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

std::string to_json(const SweepReport& report);
SweepReport sweep_report_from_json(std::string_view text);

struct CohesionRecord {
  std::string config_hash;
  CohesionReport report;
};

std::string to_json(const CohesionRecord& record);
CohesionRecord cohesion_record_from_json(std::string_view text);

std::string to_json(const SwarmState& state);
SwarmState swarm_state_from_json(std::string_view text);

std::string termination_name(const Termination& termination);

/// One JSON object per recorded sample:
/// {t, positions, velocities, n_eps, sigma_v, diameter}.
void write_trajectory_jsonl(std::ostream& out, const Trajectory& trajectory,
                            double epsilon);

/// Reads back the states written by write_trajectory_jsonl. The metric
/// fields are ignored (they are recomputed from positions/velocities).
std::vector<SwarmState> read_trajectory_jsonl(std::istream& in);

/// Flat columns t, agent, x0.., v0.. for plotting tools.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

/// {"error": code, "message": what, "exit_code": n}
std::string error_record(std::string_view code, std::string_view message,
                         int exit_code);

}  // namespace fishschool::harness
