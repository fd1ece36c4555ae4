#pragma once

#include <optional>
#include <string_view>

#include "fishschool/metrics.hpp"

namespace fishschool {

enum class PatternLabel {
  kRebound,         // I
  kPullback,        // II
  kPassAndReunion,  // III
  kSeparation,      // IV
  kUnclassified,
  kBlowUp,
};

std::string_view to_string(PatternLabel label);
std::optional<PatternLabel> parse_pattern_label(std::string_view name);

/// Reunion tolerance on sigma_V at the end of an encounter, as a multiple of
/// the strict schooling theta.
inline constexpr double kReunionThetaFactor = 1e3;

/// Clearance past the sphere, as a fraction of the initial school diameter.
inline constexpr double kPassMarginFraction = 0.5;

struct EncounterFeatures {
  bool ever_broke = false;
  int final_components = 0;
  bool passed = false;
  bool reunited = false;
  Vec final_heading;
};

/// True iff the centroid's projection on the approach axis (relative to the
/// obstacle centre) ever exceeds radius + margin.
bool passed_obstacle(const TrajectorySummary& summary,
                     const Obstacle& obstacle, const Vec& axis, double margin);

/// Same, with margin = kPassMarginFraction * initial diameter.
bool passed_obstacle(const TrajectorySummary& summary,
                     const Obstacle& obstacle, const Vec& axis);

EncounterFeatures encounter_features(const TrajectorySummary& summary,
                                     const Obstacle& obstacle,
                                     const Vec& axis,
                                     const SchoolingCriteria& criteria);

/// Decision table over (passed, ever_broke, reunited):
///
///   not completed          -> BlowUp
///   !P, !B                 -> Rebound
///   !P,  B,  R             -> Pullback
///    P,       R            -> PassAndReunion
///    P,      !R            -> Separation
///   !P,  B, !R             -> Unclassified
///
/// Throws HorizonTooShort for summaries with fewer than two samples.
PatternLabel classify(const TrajectorySummary& summary,
                      const Obstacle& obstacle, const Vec& axis,
                      const SchoolingCriteria& criteria);

/// Run length for an encounter: time for an undisturbed school to cover three
/// times the gap, but never below 20 time units.
double encounter_horizon(double gap, double speed);

}  // namespace fishschool
