#include "qmsr/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qmsr/errors.hpp"

namespace qmsr {

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
  out << "k,agent,state,updated,malicious\n";
  for (std::size_t k = 0; k < t.states.size(); ++k) {
    const auto& x = t.states[k];
    const NodeSet* u = k < t.update_sets.size() ? &t.update_sets[k] : nullptr;
    for (std::size_t idx = 0; idx < x.size(); ++idx) {
      const Node i = static_cast<Node>(idx + 1);
      const bool updated = u && std::binary_search(u->begin(), u->end(), i);
      const bool malicious = std::binary_search(t.malicious.begin(), t.malicious.end(), i);
      out << k << ',' << i << ',' << x[idx] << ',' << (updated ? 1 : 0) << ',' << (malicious ? 1 : 0) << '\n';
    }
  }
}

std::string run_verdict(const RunResult& r) {
  std::ostringstream out;
  if (r.agreed && r.agreement_time) {
    out << "agreement at k=" << *r.agreement_time << " on value " << *r.final_value;
  } else if (r.frozen) {
    out << "no agreement; states frozen";
  } else {
    out << "no agreement after " << r.steps << " steps";
  }
  out << "; safety " << (r.safety_ok ? "ok" : "VIOLATED") << " in [" << r.safety_lo << ", " << r.safety_hi << "]";
  return out.str();
}

void write_summary_table(std::ostream& out, const MonteCarloSummary& s) {
  const auto opt = [](const std::optional<Time>& t) { return t ? std::to_string(*t) : std::string("-"); };
  const auto row = [&](const std::string& key, const std::string& value) {
    out << std::left << std::setw(24) << key << value << '\n';
  };
  std::ostringstream rate;
  rate << std::fixed << std::setprecision(3) << s.agreement_rate;
  row("runs", std::to_string(s.runs));
  row("agreed", std::to_string(s.agreed));
  row("agreement rate", rate.str());
  row("k_a min/median/max", opt(s.ka_min) + " / " + opt(s.ka_median) + " / " + opt(s.ka_max));
  row("safety violations", std::to_string(s.safety_violations));
  row("envelope violations", std::to_string(s.invariants.envelope_violations));
  row("absorption violations", std::to_string(s.invariants.absorption_violations));
  if (!s.final_values.empty()) {
    out << "final values:\n";
    for (const auto& [value, count] : s.final_values)
      out << "  " << std::right << std::setw(8) << value << "  " << count << '\n';
  }
}

std::string summary_json(const MonteCarloSummary& s, int indent) {
  nlohmann::json j;
  j["runs"] = s.runs;
  j["agreed"] = s.agreed;
  j["agreement_rate"] = s.agreement_rate;
  const auto opt = [](const std::optional<Time>& t) { return t ? nlohmann::json(*t) : nlohmann::json(nullptr); };
  j["k_a"] = {{"min", opt(s.ka_min)}, {"median", opt(s.ka_median)}, {"max", opt(s.ka_max)}};
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [value, count] : s.final_values) hist[std::to_string(value)] = count;
  j["final_values"] = hist;
  j["safety_violations"] = s.safety_violations;
  j["invariant_violations"] = {{"envelope", s.invariants.envelope_violations},
                               {"absorption", s.invariants.absorption_violations},
                               {"weights", s.invariants.weight_violations}};
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : s.results) {
    runs.push_back({{"seed", r.seed},
                    {"agreed", r.agreed},
                    {"k_a", opt(r.agreement_time)},
                    {"final_value", r.final_value ? nlohmann::json(*r.final_value) : nlohmann::json(nullptr)},
                    {"steps", r.steps},
                    {"safety_ok", r.safety_ok},
                    {"final_state", r.final_state}});
  }
  j["per_run"] = runs;
  return j.dump(indent) + "\n";
}

void write_file_atomically(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw InputError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace qmsr
