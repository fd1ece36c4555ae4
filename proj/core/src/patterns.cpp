#include "fishschool/patterns.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "fishschool/error.hpp"

namespace fishschool {
namespace {

constexpr std::array<std::pair<PatternLabel, std::string_view>, 6> kNames{{
    {PatternLabel::kRebound, "Rebound"},
    {PatternLabel::kPullback, "Pullback"},
    {PatternLabel::kPassAndReunion, "PassAndReunion"},
    {PatternLabel::kSeparation, "Separation"},
    {PatternLabel::kUnclassified, "Unclassified"},
    {PatternLabel::kBlowUp, "BlowUp"},
}};

}  // namespace

std::string_view to_string(PatternLabel label) {
  for (const auto& [value, name] : kNames) {
    if (value == label) return name;
  }
  return "Unclassified";
}

std::optional<PatternLabel> parse_pattern_label(std::string_view name) {
  for (const auto& [value, text] : kNames) {
    if (text == name) return value;
  }
  return std::nullopt;
}

bool passed_obstacle(const TrajectorySummary& summary,
                     const Obstacle& obstacle, const Vec& axis,
                     double margin) {
  double furthest = -std::numeric_limits<double>::infinity();
  for (const Vec& c : summary.centroid) {
    furthest = std::max(furthest, (c - obstacle.center).dot(axis));
  }
  return furthest > obstacle.radius + margin;
}

bool passed_obstacle(const TrajectorySummary& summary,
                     const Obstacle& obstacle, const Vec& axis) {
  const double margin =
      summary.diameter.empty() ? 0.0
                               : kPassMarginFraction * summary.diameter.front();
  return passed_obstacle(summary, obstacle, axis, margin);
}

EncounterFeatures encounter_features(const TrajectorySummary& summary,
                                     const Obstacle& obstacle,
                                     const Vec& axis,
                                     const SchoolingCriteria& criteria) {
  if (summary.size() < 2) {
    throw Error(ErrorCode::kHorizonTooShort,
                "encounter summary needs at least two samples");
  }
  EncounterFeatures f;
  f.ever_broke = std::any_of(summary.n_components.begin(),
                             summary.n_components.end(),
                             [](int n) { return n >= 2; });
  f.final_components = summary.n_components.back();
  f.passed = passed_obstacle(summary, obstacle, axis);
  f.reunited = f.final_components == 1 &&
               summary.sigma_v.back() <= kReunionThetaFactor * criteria.theta;
  const Vec& heading = summary.mean_velocity.back();
  const double norm = heading.norm();
  f.final_heading = norm > 0.0 ? Vec(heading / norm) : Vec(heading);
  return f;
}

PatternLabel classify(const TrajectorySummary& summary,
                      const Obstacle& obstacle, const Vec& axis,
                      const SchoolingCriteria& criteria) {
  if (!completed(summary.termination)) return PatternLabel::kBlowUp;
  const EncounterFeatures f =
      encounter_features(summary, obstacle, axis, criteria);
  if (f.passed) {
    return f.reunited ? PatternLabel::kPassAndReunion
                      : PatternLabel::kSeparation;
  }
  if (!f.ever_broke) return PatternLabel::kRebound;
  return f.reunited ? PatternLabel::kPullback : PatternLabel::kUnclassified;
}

double encounter_horizon(double gap, double speed) {
  constexpr double kFloor = 20.0;
  if (!(speed > 0.0)) return kFloor;
  return std::max(kFloor, 3.0 * gap / speed);
}

}  // namespace fishschool
