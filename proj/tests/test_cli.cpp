#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ptree/json_io.hpp"

namespace {

std::string binary() {
  const char* path = std::getenv("PTREE_BIN");
  REQUIRE(path != nullptr);
  return path;
}

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

RunResult run(const std::string& args) {
  std::string out_path = "cli_stdout.txt";
  std::string cmd = binary() + " " + args + " > " + out_path + " 2>&1";
  int status = std::system(cmd.c_str());
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return RunResult{code, ss.str()};
}

std::size_t line_count(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

struct TempDir {
  std::filesystem::path old = std::filesystem::current_path();
  TempDir() {
    auto dir = std::filesystem::temp_directory_path() / "ptree_cli_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    std::filesystem::current_path(dir);
  }
  ~TempDir() { std::filesystem::current_path(old); }
};

}  // namespace

TEST_CASE("no arguments: usage and exit 1") {
  TempDir tmp;
  RunResult r = run("");
  CHECK(r.exit_code == 1);
  CHECK(r.stdout_text.find("subcommand") != std::string::npos);
}

TEST_CASE("help exits 0") {
  TempDir tmp;
  CHECK(run("--help").exit_code == 0);
  CHECK(run("sample --help").exit_code == 0);
}

TEST_CASE("encode emits the 19-row contour CSV for the example tree") {
  TempDir tmp;
  ptree::write_file("fig.json", "{\"child_counts\":[1,5,0,0,1,0,0,2,0,0]}");
  RunResult r = run("encode --tree fig.json --kind contour --out c.csv");
  CHECK(r.exit_code == 0);
  CHECK(line_count("c.csv") == 20);  // header + 19 rows
  std::ifstream in("c.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "time,value");
  CHECK(std::filesystem::exists("c.csv.manifest.json"));
}

TEST_CASE("sample writes JSONL plus a manifest and reproduces digests") {
  TempDir tmp;
  CHECK(run("sample --degseq 3,1,2 --count 5 --seed 9 --out a.jsonl").exit_code == 0);
  CHECK(line_count("a.jsonl") == 5);
  auto manifest_a = nlohmann::json::parse(ptree::read_file("a.jsonl.manifest.json"));
  CHECK(manifest_a["command"] == "sample");
  CHECK(manifest_a["seed"] == 9);
  CHECK(manifest_a["library_version"].is_string());
  std::string digest_a = manifest_a["outputs"][0]["sha256"];
  CHECK(digest_a.size() == 64);

  CHECK(run("sample --degseq 3,1,2 --count 5 --seed 9 --out b.jsonl").exit_code == 0);
  auto manifest_b = nlohmann::json::parse(ptree::read_file("b.jsonl.manifest.json"));
  CHECK(std::string(manifest_b["outputs"][0]["sha256"]) == digest_a);

  CHECK(run("sample --degseq 3,1,2 --count 5 --seed 10 --out c.jsonl").exit_code == 0);
  auto manifest_c = nlohmann::json::parse(ptree::read_file("c.jsonl.manifest.json"));
  CHECK(std::string(manifest_c["outputs"][0]["sha256"]) != digest_a);
}

TEST_CASE("seed is mandatory for stochastic commands") {
  TempDir tmp;
  CHECK(run("sample --degseq 3,1,2 --count 1 --out x.jsonl").exit_code == 1);
  CHECK(run("coalesce --degseq 3,1,2 --out x.jsonl").exit_code == 1);
}

TEST_CASE("validation failures exit 1 with a one-line message") {
  TempDir tmp;
  RunResult forest = run("sample --degseq 2,1 --count 1 --seed 1 --out x.jsonl");
  CHECK(forest.exit_code == 1);
  ptree::write_file("broken.json", "{\"counts\": oops");
  RunResult broken = run("sample --degseq broken.json --count 1 --seed 1 --out x.jsonl");
  CHECK(broken.exit_code == 1);
  CHECK(broken.stdout_text.find("malformed JSON") != std::string::npos);
  RunResult badkind = run("encode --tree '{\"child_counts\":[0]}' --kind spiral --out x.csv");
  CHECK(badkind.exit_code == 1);
}

TEST_CASE("oracle enumerate and verify-counts") {
  TempDir tmp;
  RunResult r = run("oracle enumerate --degseq 3,1,2 --out cat.jsonl");
  CHECK(r.exit_code == 0);
  CHECK(line_count("cat.jsonl") == 10);
  CHECK(run("oracle verify-counts --max-size 7").exit_code == 0);
}

TEST_CASE("backbone law emits exact rationals as CSV") {
  TempDir tmp;
  RunResult r = run("backbone law --degseq 2,0,1 --out law.csv");
  CHECK(r.exit_code == 0);
  std::string csv = ptree::read_file("law.csv");
  CHECK(csv.find("m,probability") != std::string::npos);
  CHECK(csv.find("1/3") != std::string::npos);
  CHECK(csv.find("2/3") != std::string::npos);
}

TEST_CASE("backbone decompose round-trips through JSON") {
  TempDir tmp;
  ptree::write_file("fig.json", "{\"child_counts\":[1,5,0,0,1,0,0,2,0,0]}");
  RunResult r = run("backbone decompose --tree fig.json --mark 6");
  CHECK(r.exit_code == 0);
  auto d = ptree::decomposition_from_json(r.stdout_text);
  CHECK(d.content.steps.size() == 3);
  CHECK(d.forest.size() == 5);
  RunResult bad = run("backbone decompose --tree fig.json --mark 99");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("coalesce with trace") {
  TempDir tmp;
  RunResult r = run("coalesce --degseq 3,1,2 --mode plane --count 4 --seed 3 --out t.jsonl "
                    "--trace steps.csv");
  CHECK(r.exit_code == 0);
  CHECK(line_count("t.jsonl") == 4);
  std::string csv = ptree::read_file("steps.csv");
  CHECK(csv.find("step,cluster_size,count") != std::string::npos);
  RunResult labelled = run("coalesce --degseq 3,1,2 --mode labelled --count 2 --seed 3 "
                           "--out l.jsonl");
  CHECK(labelled.exit_code == 0);
  CHECK(line_count("l.jsonl") == 2);
}

TEST_CASE("sample-gw surfaces infeasibility as exit 1") {
  TempDir tmp;
  ptree::write_file("mu.json", "{\"probabilities\":[0.5,0.0,0.5]}");
  RunResult even = run("sample-gw --mu mu.json --size 4 --count 1 --seed 2 "
                       "--max-attempts 500 --out g.jsonl");
  CHECK(even.exit_code == 1);
  RunResult odd = run("sample-gw --mu mu.json --size 5 --count 3 --seed 2 --out g.jsonl");
  CHECK(odd.exit_code == 0);
  CHECK(line_count("g.jsonl") == 3);
}

TEST_CASE("limits run writes a report with a KS table") {
  TempDir tmp;
  ptree::write_file("exp.json",
                    "{\"families\":[{\"name\":\"binary\"},{\"name\":\"geometric-like\"}],"
                    "\"sizes\":[51,101],\"replicas\":40,\"seed\":7,"
                    "\"functionals\":[\"max\"],\"threads\":2}");
  RunResult r = run("limits run --config exp.json --out report.json --emit-plot-data plots");
  CHECK(r.exit_code == 0);
  auto report = nlohmann::json::parse(ptree::read_file("report.json"));
  CHECK(report["results"].size() == 4);
  CHECK(report["ks"].size() == 1);
  CHECK(std::filesystem::exists("plots/binary_101_max.csv"));
  CHECK(std::filesystem::exists("report.json.manifest.json"));
  ptree::write_file("noseed.json",
                    "{\"families\":[{\"name\":\"binary\"}],\"sizes\":[51],\"replicas\":2,"
                    "\"functionals\":[\"max\"]}");
  CHECK(run("limits run --config noseed.json --out r2.json").exit_code == 1);
}
