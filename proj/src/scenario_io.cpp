#include "qmsr/scenario_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "qmsr/errors.hpp"

namespace qmsr {

namespace {

struct Entry {
  std::string value;
  int line;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

class Document {
 public:
  explicit Document(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const std::string content = trim(line);
      if (content.empty()) continue;
      const auto eq = content.find('=');
      if (eq == std::string::npos) fail(no, "expected `key = value`");
      const std::string key = trim(std::string_view(content).substr(0, eq));
      const std::string value = trim(std::string_view(content).substr(eq + 1));
      if (key.empty()) fail(no, "empty key");
      if (!entries_.emplace(key, Entry{value, no}).second) fail(no, "duplicate key `" + key + "`");
    }
  }

  [[noreturn]] static void fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::optional<Entry> take(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    Entry e = it->second;
    entries_.erase(it);
    return e;
  }

  Entry require(const std::string& key) {
    auto e = take(key);
    if (!e) throw ParseError("missing required key `" + key + "`");
    return *e;
  }

  void reject_leftovers() const {
    if (!entries_.empty()) {
      const auto& [key, e] = *entries_.begin();
      fail(e.line, "unknown key `" + key + "`");
    }
  }

 private:
  std::map<std::string, Entry> entries_;
};

template <typename T>
T parse_number(std::string_view token, const Entry& e) {
  T value{};
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) Document::fail(e.line, "invalid number `" + std::string(token) + "`");
  return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view text, const Entry& e) {
  std::string s(text);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') Document::fail(e.line, "unterminated list");
    s = s.substr(1, s.size() - 2);
  }
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream in(s);
  std::vector<T> values;
  std::string token;
  while (in >> token) values.push_back(parse_number<T>(token, e));
  return values;
}

template <typename T>
std::vector<std::vector<T>> parse_rows(const Entry& e) {
  std::vector<std::vector<T>> rows;
  std::string_view rest = e.value;
  while (true) {
    const auto semi = rest.find(';');
    const std::string row = trim(rest.substr(0, semi));
    if (!row.empty()) rows.push_back(parse_list<T>(row, e));
    if (semi == std::string_view::npos) break;
    rest = rest.substr(semi + 1);
  }
  return rows;
}

template <typename T>
T parse_scalar(const Entry& e) {
  return parse_number<T>(e.value, e);
}

DirectedGraph parse_graph(Document& doc, const std::string& base_dir) {
  auto path = doc.take("graph");
  auto n = doc.take("graph.n");
  auto edges = doc.take("graph.edges");
  if (path && (n || edges)) Document::fail(path->line, "give either `graph` or `graph.n`/`graph.edges`, not both");
  if (path) {
    std::filesystem::path p(path->value);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    try {
      return load_graph(p.string());
    } catch (const InputError& err) {
      throw ParseError("line " + std::to_string(path->line) + ": " + err.what());
    }
  }
  if (!n) throw ParseError("missing required key `graph` (or `graph.n`)");
  std::vector<Edge> list;
  if (edges) {
    for (const auto& row : parse_rows<int>(*edges)) {
      if (row.size() != 2) Document::fail(edges->line, "graph.edges rows must be `j i`");
      list.push_back({row[0], row[1]});
    }
  }
  try {
    return DirectedGraph(parse_scalar<int>(*n), std::move(list));
  } catch (const InputError& err) {
    throw ConfigError(std::string("graph: ") + err.what());
  }
}

Schedule parse_schedule(Document& doc) {
  auto kind = doc.take("schedule.kind");
  auto table = doc.take("schedule.table");
  auto window = doc.take("schedule.window");
  auto p = doc.take("schedule.p");
  const std::string k = kind ? kind->value : "synchronous";
  const auto unexpected = [&](const std::optional<Entry>& e, const char* key) {
    if (e) Document::fail(e->line, std::string("`") + key + "` does not apply to schedule.kind = " + k);
  };
  if (k == "synchronous") {
    unexpected(table, "schedule.table");
    unexpected(window, "schedule.window");
    unexpected(p, "schedule.p");
    return Schedule::synchronous();
  }
  if (k == "deterministic") {
    unexpected(p, "schedule.p");
    if (!table) throw ParseError("deterministic schedule needs `schedule.table`");
    auto rows = parse_rows<int>(*table);
    const int w = window ? parse_scalar<int>(*window) : static_cast<int>(rows.size());
    return Schedule::deterministic(std::move(rows), w);
  }
  if (k == "probabilistic") {
    unexpected(table, "schedule.table");
    unexpected(window, "schedule.window");
    if (!p) throw ParseError("probabilistic schedule needs `schedule.p`");
    if (!p->value.empty() && p->value.front() == '[') return Schedule::probabilistic(parse_list<double>(p->value, *p));
    return Schedule::probabilistic(parse_scalar<double>(*p));
  }
  Document::fail(kind->line, "unknown schedule.kind `" + k + "`");
}

DelayModel parse_delay(Document& doc) {
  auto kind = doc.take("delay.kind");
  auto bound = doc.take("delay.bound");
  auto value = doc.take("delay.value");
  auto table = doc.take("delay.table");
  auto script = doc.take("delay.script");
  const std::string k = kind ? kind->value : "none";
  std::optional<int> b;
  if (bound) b = parse_scalar<int>(*bound);
  const auto unexpected = [&](const std::optional<Entry>& e, const char* key) {
    if (e) Document::fail(e->line, std::string("`") + key + "` does not apply to delay.kind = " + k);
  };
  if (k == "none") {
    unexpected(value, "delay.value");
    unexpected(table, "delay.table");
    unexpected(script, "delay.script");
    if (b && *b != 0) Document::fail(bound->line, "delay.kind = none requires delay.bound = 0");
    return DelayModel::none();
  }
  if (k == "constant") {
    unexpected(table, "delay.table");
    unexpected(script, "delay.script");
    if (!value) throw ParseError("constant delay needs `delay.value`");
    const int tau = parse_scalar<int>(*value);
    if (b && *b != tau) Document::fail(bound->line, "delay.bound must equal delay.value for constant delays");
    return DelayModel::constant(tau);
  }
  if (k == "table") {
    unexpected(value, "delay.value");
    unexpected(script, "delay.script");
    if (!table) throw ParseError("table delay needs `delay.table`");
    std::vector<ParityDelayRow> rows;
    for (const auto& r : parse_rows<int>(*table)) {
      if (r.size() != 4) Document::fail(table->line, "delay.table rows must be `j i even odd`");
      rows.push_back({r[0], r[1], r[2], r[3]});
    }
    return DelayModel::table(std::move(rows), b);
  }
  if (k == "scripted") {
    unexpected(value, "delay.value");
    unexpected(table, "delay.table");
    if (!script) throw ParseError("scripted delay needs `delay.script`");
    std::vector<CyclicDelayRow> rows;
    for (const auto& r : parse_rows<int>(*script)) {
      if (r.size() < 3) Document::fail(script->line, "delay.script rows must be `j i tau0 [tau1 ...]`");
      rows.push_back({r[0], r[1], std::vector<int>(r.begin() + 2, r.end())});
    }
    return DelayModel::scripted(std::move(rows), b);
  }
  Document::fail(kind->line, "unknown delay.kind `" + k + "`");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename T>
std::string join(const std::vector<T>& values, const char* sep = ", ") {
  std::string s;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) s += sep;
    if constexpr (std::is_floating_point_v<T>) {
      char buf[64];
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, values[k]);
      s.append(buf, ptr);
    } else {
      s += std::to_string(values[k]);
    }
  }
  return s;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& base_dir) {
  Document doc(text);
  Scenario s;
  s.graph = parse_graph(doc, base_dir);

  const Entry x0 = doc.require("initial_states");
  s.x0 = parse_list<Value>(x0.value, x0);
  s.placement.f = parse_scalar<int>(doc.require("f"));
  if (auto mode = doc.take("fault_mode")) {
    const auto parsed = parse_fault_mode(mode->value);
    if (!parsed) Document::fail(mode->line, "fault_mode must be total or local");
    s.placement.mode = *parsed;
  }
  if (auto m = doc.take("malicious")) s.placement.malicious = parse_list<Node>(m->value, *m);

  auto attack_kind = doc.take("attack.kind");
  auto attack_params = doc.take("attack.params");
  if (attack_kind) {
    const auto kind = parse_attack_kind(attack_kind->value);
    if (!kind) Document::fail(attack_kind->line, "unknown attack.kind `" + attack_kind->value + "`");
    const auto params = attack_params ? parse_list<Value>(attack_params->value, *attack_params) : std::vector<Value>{};
    s.strategy = make_strategy(*kind, params);
  } else if (attack_params) {
    Document::fail(attack_params->line, "attack.params given without attack.kind");
  } else if (!s.placement.malicious.empty()) {
    throw ParseError("malicious agents need `attack.kind`");
  }

  s.schedule = parse_schedule(doc);
  s.delay = parse_delay(doc);

  if (auto q = doc.take("quantizer")) {
    const auto kind = parse_quantizer_kind(q->value);
    if (!kind) Document::fail(q->line, "quantizer must be probabilistic, floor or ceil");
    s.quantizer = *kind;
  }
  if (auto seed = doc.take("seed")) s.seed = parse_scalar<std::uint64_t>(*seed);
  auto horizon = doc.take("horizon");
  doc.reject_leftovers();

  s.horizon = horizon ? parse_scalar<Time>(*horizon) : default_horizon(s);
  validate_scenario(s);
  return s;
}

Scenario parse_scenario(const std::string& path) {
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_scenario_text(read_file(path), dir.empty() ? "." : dir.string());
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "graph.n = " << s.graph.size() << '\n';
  std::vector<std::string> edges;
  for (const auto& e : s.graph.edges()) edges.push_back(std::to_string(e.from) + " " + std::to_string(e.to));
  out << "graph.edges = ";
  for (std::size_t k = 0; k < edges.size(); ++k) out << (k ? "; " : "") << edges[k];
  out << '\n';
  out << "initial_states = [" << join(s.x0) << "]\n";
  out << "f = " << s.placement.f << '\n';
  out << "fault_mode = " << to_string(s.placement.mode) << '\n';
  out << "malicious = [" << join(s.placement.malicious) << "]\n";
  if (s.strategy.kind() == AdversaryStrategy::Kind::kAdaptive) {
    throw ConfigError("adaptive attacks cannot be serialized");
  }
  out << "attack.kind = " << to_string(s.strategy.kind()) << '\n';
  out << "attack.params = [" << join(s.strategy.params()) << "]\n";

  out << "schedule.kind = " << to_string(s.schedule.kind()) << '\n';
  if (s.schedule.kind() == Schedule::Kind::kDeterministic) {
    out << "schedule.table = ";
    for (std::size_t k = 0; k < s.schedule.table().size(); ++k)
      out << (k ? "; " : "") << join(s.schedule.table()[k], " ");
    out << "\nschedule.window = " << s.schedule.window() << '\n';
  } else if (s.schedule.kind() == Schedule::Kind::kProbabilistic) {
    if (s.schedule.uniform_probability()) {
      out << "schedule.p = " << join(s.schedule.probabilities()) << '\n';
    } else {
      out << "schedule.p = [" << join(s.schedule.probabilities()) << "]\n";
    }
  }

  out << "delay.kind = " << to_string(s.delay.kind()) << '\n';
  switch (s.delay.kind()) {
    case DelayModel::Kind::kNone: break;
    case DelayModel::Kind::kConstant: out << "delay.value = " << s.delay.constant_value() << '\n'; break;
    case DelayModel::Kind::kTable:
      out << "delay.bound = " << s.delay.bound() << "\ndelay.table = ";
      for (std::size_t k = 0; k < s.delay.table_rows().size(); ++k) {
        const auto& r = s.delay.table_rows()[k];
        out << (k ? "; " : "") << r.from << ' ' << r.to << ' ' << r.even << ' ' << r.odd;
      }
      out << '\n';
      break;
    case DelayModel::Kind::kScripted:
      out << "delay.bound = " << s.delay.bound() << "\ndelay.script = ";
      for (std::size_t k = 0; k < s.delay.scripted_rows().size(); ++k) {
        const auto& r = s.delay.scripted_rows()[k];
        out << (k ? "; " : "") << r.from << ' ' << r.to << ' ' << join(r.cycle, " ");
      }
      out << '\n';
      break;
    case DelayModel::Kind::kCustom: throw ConfigError("custom delay functions cannot be serialized");
  }
  out << "quantizer = " << to_string(s.quantizer) << '\n';
  out << "horizon = " << s.horizon << '\n';
  out << "seed = " << s.seed << '\n';
  return out.str();
}

}  // namespace qmsr
