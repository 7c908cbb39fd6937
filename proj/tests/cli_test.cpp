#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

#include "graphsquash/rdf/ntriples.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int status = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(GSQ_CLI_BIN) + " " + args + " 2>&1";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 512> buf;
  while (fgets(buf.data(), buf.size(), pipe)) result.output += buf.data();
  int rc = pclose(pipe);
  result.status = WEXITSTATUS(rc);
  return result;
}

std::string data(const std::string& name) {
  return (fs::path(GSQ_TEST_DATA_DIR) / name).string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("verify on the desk graph and query exits 0 and reports lossless") {
  RunResult r = run_cli("verify --input " + data("desk.nt") + " --query " + data("q_desk.rq") +
                        " --embedding oracle --clusters " + data("desk.clusters.tsv"));
  CHECK(r.status == 0);
  CHECK(r.output.find("LOSSLESS") != std::string::npos);
}

TEST_CASE("offline gbs takes no query") {
  RunResult r = run_cli("summarize --method gbs --input " + data("desk.nt") + " --query " +
                        data("q_desk.rq") + " --out /tmp/gsq_cli_gbs_misuse");
  CHECK(r.status == 1);
}

TEST_CASE("qbs summarize requires a query") {
  RunResult r = run_cli("summarize --method qbs --input " + data("desk.nt") +
                        " --out /tmp/gsq_cli_qbs_misuse");
  CHECK(r.status == 1);
}

TEST_CASE("direct query writes four TSV rows for the desk query") {
  fs::path out = fs::temp_directory_path() / "gsq_cli_direct.tsv";
  fs::remove(out);
  RunResult r = run_cli("query --engine direct --input " + data("desk.nt") + " --query " +
                        data("q_desk.rq") + " --out " + out.string());
  CHECK(r.status == 0);
  std::istringstream in(slurp(out));
  std::string line;
  std::getline(in, line);
  CHECK(line == "?p");
  int rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 4);
  fs::remove(out);
}

TEST_CASE("gbs summarize + query with a reloaded summary") {
  fs::path dir = fs::temp_directory_path() / "gsq_cli_gbs";
  fs::remove_all(dir);
  RunResult s = run_cli("summarize --method gbs --input " + data("desk.nt") + " --out " +
                        dir.string() + " --keep-singletons --transitive-pred " +
                        gsq::test::ex("subClassOf") + " --type-pred " + gsq::test::ex("type"));
  CHECK(s.status == 0);
  CHECK(fs::exists(dir / "summary.nt"));
  CHECK(fs::exists(dir / "membership.tsv"));

  fs::path out = fs::temp_directory_path() / "gsq_cli_gbs.tsv";
  RunResult q = run_cli("query --engine gbs --input " + data("desk.nt") + " --query " +
                        data("q_desk.rq") + " --summary " + dir.string() +
                        " --embedding oracle --clusters " + data("desk.clusters.tsv") +
                        " --out " + out.string());
  CHECK(q.status == 0);
  std::istringstream in(slurp(out));
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 2);  // gbs loses Anna and Markus on the desk graph
  fs::remove_all(dir);
  fs::remove(out);
}

TEST_CASE("gen produces a graph that reloads, plus a clusters sidecar") {
  fs::path dir = fs::temp_directory_path() / "gsq_cli_gen";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream spec(dir / "spec.json");
    spec << R"({"entities": 80, "predicates": 5, "cluster_sizes": [2],
                "triples_per_predicate": 25, "object_pool": 10, "seed": 9})";
  }
  fs::path out = dir / "g.nt";
  RunResult r = run_cli("gen --spec " + (dir / "spec.json").string() + " --out " + out.string());
  CHECK(r.status == 0);
  CHECK(fs::exists(out));
  CHECK(fs::exists(dir / "g.nt.clusters.tsv"));
  gsq::rdf::Graph g = gsq::rdf::parse_ntriples_file(out);
  CHECK(g.size() > 0);

  // same seed, same bytes
  fs::path out2 = dir / "g2.nt";
  run_cli("gen --spec " + (dir / "spec.json").string() + " --out " + out2.string());
  CHECK(slurp(out) == slurp(out2));
  fs::remove_all(dir);
}

TEST_CASE("unknown engine and missing files exit with usage or data errors") {
  RunResult bad_engine = run_cli("query --engine warp --input " + data("desk.nt") +
                                 " --query " + data("q_desk.rq"));
  CHECK(bad_engine.status == 1);

  RunResult missing = run_cli("query --engine direct --input /nonexistent.nt --query " +
                              data("q_desk.rq"));
  CHECK(missing.status == 2);
}

TEST_CASE("verify exits 3 when the unsafe augmentation breaks equality") {
  fs::path dir = fs::temp_directory_path() / "gsq_cli_unsafe";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream g(dir / "g.nt");
    g << "<http://example.org/a> <http://example.org/country> <http://example.org/Germany> .\n"
      << "<http://example.org/m> <http://example.org/nationality> <http://example.org/Spain> .\n"
      << "<http://example.org/m> <http://example.org/deathPlace> <http://example.org/France> .\n";
  }
  {
    std::ofstream q(dir / "q.rq");
    q << "PREFIX : <http://example.org/>\n"
      << "SELECT ?x WHERE { { ?x :country :Germany } UNION { ?x :nationality :Germany } }\n";
  }
  RunResult r = run_cli("verify --input " + (dir / "g.nt").string() + " --query " +
                        (dir / "q.rq").string() + " --embedding oracle --clusters " +
                        data("desk.clusters.tsv") + " --unsafe-object-substitution");
  CHECK(r.status == 3);
  CHECK(r.output.find("NOT LOSSLESS") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("bench subcommand runs a small config end to end") {
  fs::path dir = fs::temp_directory_path() / "gsq_cli_bench";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "bench.json");
    cfg << R"({
      "graphs": [ {"name": "gen", "generator": {"entities": 100, "predicates": 6,
                   "cluster_sizes": [3], "triples_per_predicate": 30, "object_pool": 12,
                   "seed": 13}} ],
      "generate_queries": 3,
      "engines": ["direct", "qbs"],
      "repetitions": 1,
      "similarity": "oracle"
    })";
  }
  fs::path report = dir / "report.json";
  RunResult r = run_cli("bench --config " + (dir / "bench.json").string() + " --out " +
                        report.string() + " --table");
  CHECK(r.status == 0);
  CHECK(fs::exists(report));
  CHECK(r.output.find("engine") != std::string::npos);
  fs::remove_all(dir);
}

}  // TEST_SUITE
