#include "fishschool/harness/serialize.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

namespace fishschool::harness {
namespace {

using nlohmann::json;

json matrix_to_json(const AgentMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.cols(); ++i) {
    json col = json::array();
    for (Eigen::Index k = 0; k < m.rows(); ++k) col.push_back(m(k, i));
    out.push_back(std::move(col));
  }
  return out;
}

AgentMatrix matrix_from_json(const json& node) {
  if (!node.is_array() || node.empty()) {
    throw Error(ErrorCode::kConfigError, "expected a non-empty agent array");
  }
  const auto n = static_cast<Eigen::Index>(node.size());
  const auto d = static_cast<Eigen::Index>(node.front().size());
  AgentMatrix out(d, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& col = node[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(col.size()) != d) {
      throw Error(ErrorCode::kConfigError, "ragged agent array");
    }
    for (Eigen::Index k = 0; k < d; ++k) {
      out(k, i) = col[static_cast<std::size_t>(k)].get<double>();
    }
  }
  return out;
}

json state_to_json(const SwarmState& s) {
  return {{"t", s.time},
          {"positions", matrix_to_json(s.positions)},
          {"velocities", matrix_to_json(s.velocities)}};
}

SwarmState state_from_json(const json& node) {
  SwarmState s;
  s.time = node.at("t").get<double>();
  s.positions = matrix_from_json(node.at("positions"));
  s.velocities = matrix_from_json(node.at("velocities"));
  if (s.positions.rows() != s.velocities.rows() ||
      s.positions.cols() != s.velocities.cols()) {
    throw Error(ErrorCode::kConfigError,
                "positions and velocities differ in shape");
  }
  return s;
}

json parse_or_throw(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfigError, std::string("malformed JSON: ") +
                                             e.what());
  }
}

PatternLabel label_or_throw(const std::string& name) {
  const auto label = parse_pattern_label(name);
  if (!label) {
    throw Error(ErrorCode::kConfigError, "unknown pattern label " + name);
  }
  return *label;
}

}  // namespace

std::string termination_name(const Termination& termination) {
  if (std::holds_alternative<BlowUp>(termination)) return "BlowUp";
  if (std::holds_alternative<Penetration>(termination)) return "Penetration";
  return "Completed";
}

std::string to_json(const SweepReport& report) {
  json labels = json::array();
  for (const auto label : report.labels) {
    labels.push_back(std::string(to_string(label)));
  }
  json doc = {{"parameter", report.parameter},
              {"config_hash", report.config_hash},
              {"grid_values", report.grid_values},
              {"labels", labels},
              {"errors", report.errors},
              {"transition_boundaries", report.transition_boundaries}};
  return doc.dump(2);
}

SweepReport sweep_report_from_json(std::string_view text) {
  const json doc = parse_or_throw(text);
  SweepReport r;
  r.parameter = doc.at("parameter").get<std::string>();
  r.config_hash = doc.at("config_hash").get<std::string>();
  r.grid_values = doc.at("grid_values").get<std::vector<double>>();
  for (const auto& name : doc.at("labels")) {
    r.labels.push_back(label_or_throw(name.get<std::string>()));
  }
  r.errors = doc.at("errors").get<std::vector<std::string>>();
  r.transition_boundaries =
      doc.at("transition_boundaries").get<std::vector<double>>();
  if (r.labels.size() != r.grid_values.size()) {
    throw Error(ErrorCode::kConfigError,
                "sweep report: labels/grid_values length mismatch");
  }
  return r;
}

std::string to_json(const CohesionRecord& record) {
  json levels = json::array();
  for (const auto& level : record.report.levels) {
    levels.push_back({{"sigma", level.sigma},
                      {"all_pass", level.all_pass},
                      {"trials_passed", level.trials_passed}});
  }
  json doc = {{"config_hash", record.config_hash},
              {"sigma_bar", record.report.sigma_bar},
              {"box_side", record.report.box_side},
              {"levels", levels}};
  return doc.dump(2);
}

CohesionRecord cohesion_record_from_json(std::string_view text) {
  const json doc = parse_or_throw(text);
  CohesionRecord rec;
  rec.config_hash = doc.at("config_hash").get<std::string>();
  rec.report.sigma_bar = doc.at("sigma_bar").get<double>();
  rec.report.box_side = doc.at("box_side").get<double>();
  for (const auto& node : doc.at("levels")) {
    SigmaLevel level;
    level.sigma = node.at("sigma").get<double>();
    level.all_pass = node.at("all_pass").get<bool>();
    level.trials_passed = node.at("trials_passed").get<int>();
    rec.report.levels.push_back(level);
  }
  return rec;
}

std::string to_json(const SwarmState& state) {
  return state_to_json(state).dump();
}

SwarmState swarm_state_from_json(std::string_view text) {
  return state_from_json(parse_or_throw(text));
}

void write_trajectory_jsonl(std::ostream& out, const Trajectory& trajectory,
                            double epsilon) {
  for (const auto& s : trajectory.states) {
    json rec = state_to_json(s);
    rec["n_eps"] = epsilon_components(s, epsilon);
    rec["sigma_v"] = sigma_v(s);
    rec["diameter"] = diameter(s);
    out << rec.dump() << '\n';
  }
}

std::vector<SwarmState> read_trajectory_jsonl(std::istream& in) {
  std::vector<SwarmState> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(state_from_json(parse_or_throw(line)));
  }
  return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  if (trajectory.states.empty()) return;
  const int d = trajectory.states.front().dim();
  out << "t,agent";
  for (int k = 0; k < d; ++k) out << ",x" << k;
  for (int k = 0; k < d; ++k) out << ",v" << k;
  out << '\n';
  out.precision(17);
  for (const auto& s : trajectory.states) {
    for (int i = 0; i < s.size(); ++i) {
      out << s.time << ',' << i;
      for (int k = 0; k < d; ++k) out << ',' << s.positions(k, i);
      for (int k = 0; k < d; ++k) out << ',' << s.velocities(k, i);
      out << '\n';
    }
  }
}

std::string error_record(std::string_view code, std::string_view message,
                         int exit_code) {
  json doc = {{"error", std::string(code)},
              {"message", std::string(message)},
              {"exit_code", exit_code}};
  return doc.dump();
}

}  // namespace fishschool::harness
