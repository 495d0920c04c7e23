#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace std::string_literals;

namespace {

const std::string kDir = QMSR_SCENARIO_DIR;

struct Outcome {
  int code;
  std::string out;
};

Outcome cli(const std::string& args) {
  const std::string cmd = "\""s + QMSR_CLI_PATH + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (const auto n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "qmsr_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::vector<std::string> lines_of(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("robustness subcommand") {
  const auto graph = kDir + "/graphs/seven_node_22robust.graph";
  auto r = cli("robustness " + graph + " --r 2 --s 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("holds") != std::string::npos);
  r = cli("robustness " + graph + " --r 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("fails") != std::string::npos);
  CHECK(r.out.find("witness") != std::string::npos);
  r = cli("robustness " + graph + " --max");
  CHECK(r.out == "max r = 2\n");
  CHECK(cli("robustness " + graph).code == 1);
  CHECK(cli("robustness " + graph + " --r 9").code == 2);
}

TEST_CASE("run subcommand prints the verdict and writes the trajectory") {
  const auto csv = scratch("fig6.csv");
  auto r = cli("run " + kDir + "/fig6_async_det.scn -o " + csv.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("no agreement; states frozen") != std::string::npos);
  const auto lines = lines_of(csv);
  REQUIRE(!lines.empty());
  CHECK(lines.front() == "k,agent,state,updated,malicious");
  CHECK(lines.size() == 1 + 501 * 7);

  // Rows strictly ordered by (k, agent).
  long prev_k = -1, prev_agent = 0;
  bool ordered = true;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    long k = 0, agent = 0;
    std::sscanf(lines[l].c_str(), "%ld,%ld", &k, &agent);
    if (!(k > prev_k || (k == prev_k && agent > prev_agent))) ordered = false;
    prev_k = k;
    prev_agent = agent;
  }
  CHECK(ordered);
  CHECK(lines[1] == "0,1,1,0,1");
  CHECK(lines[2] == "0,2,10,0,0");
  CHECK(lines[3] == "0,3,1,1,0");
}

TEST_CASE("run stops after agreement is confirmed") {
  const auto csv = scratch("fig7.csv");
  const auto r = cli("run " + kDir + "/fig7_sync.scn -o " + csv.string());
  CHECK(r.code == 0);
  long ka = -1;
  const auto at = r.out.find("agreement at k=");
  REQUIRE(at != std::string::npos);
  std::sscanf(r.out.c_str() + at, "agreement at k=%ld", &ka);
  CHECK(lines_of(csv).size() == 1 + static_cast<std::size_t>(ka + 2) * 7);
}

TEST_CASE("montecarlo subcommand writes a JSON summary") {
  const auto json = scratch("mc.json");
  std::filesystem::remove(json);
  const auto r = cli("montecarlo " + kDir + "/fig9_async_prob.scn -n 8 -o " + json.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("agreement rate") != std::string::npos);
  std::ifstream in(json);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str().find("\"runs\": 8") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(json.string() + ".tmp"));
}

TEST_CASE("validate subcommand and exit classes") {
  CHECK(cli("validate " + kDir + "/fig7_sync.scn").code == 0);

  const auto invalid = scratch("invalid.scn");
  std::ofstream(invalid) << "graph.n = 3\ngraph.edges = 1 2; 2 3\ninitial_states = [1, 2, 3]\nf = 1\n"
                            "malicious = [1, 2]\nattack.kind = constant\nattack.params = [0]\n";
  const auto v = cli("validate " + invalid.string());
  CHECK(v.code == 2);
  CHECK(v.out.find("malicious set violates f-total bound") != std::string::npos);

  const auto garbled = scratch("garbled.scn");
  std::ofstream(garbled) << "graph.n = 3\nwhat is this\n";
  CHECK(cli("validate " + garbled.string()).code == 4);

  CHECK(cli("").code == 1);
  CHECK(cli("frobnicate").code == 1);
  CHECK(cli("run").code == 1);
  CHECK(cli("--help").code == 0);
}
