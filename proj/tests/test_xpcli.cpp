#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "gramor/experiments.hpp"
#include "gramor/model_io.hpp"
#include "gramor/rng.hpp"

using namespace gramor;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("gramor_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

struct CsvRow {
  std::size_t order;
  std::string method;
  double error;
  int stable;
};

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  REQUIRE(std::getline(in, line));
  REQUIRE(line == "order,method,rel_l2_error,stable");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    CsvRow row;
    char method[64];
    REQUIRE(std::sscanf(line.c_str(), "%zu,%63[^,],%lf,%d", &row.order, method, &row.error,
                        &row.stable) == 4);
    row.method = method;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("model files round-trip exactly") {
  fs::path dir = fresh_dir("model_roundtrip");
  LtiSystem sys = random_system(5, 2, 3, 77, AMode::stable_random);
  const std::string path = (dir / "model.json").string();
  write_system(path, sys);
  LtiSystem back = read_system(path);
  CHECK(back.n == sys.n);
  CHECK(back.m == sys.m);
  CHECK(back.o == sys.o);
  CHECK(max_abs(sub(back.a, sys.a)) == 0.0);
  CHECK(max_abs(sub(back.b, sys.b)) == 0.0);
  CHECK(max_abs(sub(back.c, sys.c)) == 0.0);
}

TEST_CASE("reading a 1x1 model works") {
  fs::path dir = fresh_dir("model_scalar");
  const std::string path = (dir / "scalar.json").string();
  spit(path, R"({"n":1,"m":1,"o":1,"A":[[-2.5]],"B":[[1.0]],"C":[[3.0]]})");
  LtiSystem sys = read_system(path);
  CHECK(sys.n == 1);
  CHECK(sys.a(0, 0) == -2.5);
  CHECK(sys.c(0, 0) == 3.0);
}

TEST_CASE("model validation names the offending field") {
  fs::path dir = fresh_dir("model_invalid");
  const std::string bad_b = (dir / "bad_b.json").string();
  spit(bad_b, R"({"n":2,"m":1,"o":1,"A":[[-1,0],[0,-1]],"B":[[1],[2],[3]],"C":[[1,0]]})");
  CHECK_THROWS_WITH_AS(read_system(bad_b),
                       doctest::Contains("B: has 3 rows, expected 2"), std::runtime_error);

  const std::string bad_row = (dir / "bad_row.json").string();
  spit(bad_row, R"({"n":2,"m":1,"o":1,"A":[[-1,0],[0]],"B":[[1],[2]],"C":[[1,0]]})");
  CHECK_THROWS_WITH_AS(read_system(bad_row), doctest::Contains("A[1]"), std::runtime_error);

  const std::string bad_n = (dir / "bad_n.json").string();
  spit(bad_n, R"({"n":0,"m":1,"o":1,"A":[],"B":[],"C":[]})");
  CHECK_THROWS_WITH_AS(read_system(bad_n), doctest::Contains("n: expected a positive integer"),
                       std::runtime_error);

  const std::string garbled = (dir / "garbled.json").string();
  spit(garbled, "{\"n\": 2, ");
  CHECK_THROWS_WITH_AS(read_system(garbled), doctest::Contains("malformed JSON"),
                       std::runtime_error);

  CHECK_THROWS_AS(read_system((dir / "missing.json").string()), std::runtime_error);
}

TEST_CASE("matrix files round-trip and reject ragged input") {
  fs::path dir = fresh_dir("matrix_io");
  Matrix a = random_matrix(4, 3, 9, 2, -5.0, 5.0);
  const std::string path = (dir / "mat.json").string();
  write_matrix_file(path, a);
  CHECK(max_abs(sub(read_matrix_file(path), a)) == 0.0);

  const std::string ragged = (dir / "ragged.json").string();
  spit(ragged, "[[1,2],[3]]");
  CHECK_THROWS_AS(read_matrix_file(ragged), std::runtime_error);
  const std::string scalar = (dir / "scalar.json").string();
  spit(scalar, "42");
  CHECK_THROWS_WITH_AS(read_matrix_file(scalar), doctest::Contains("array of rows"),
                       std::runtime_error);
}

TEST_CASE("experiment defaults follow the experiment kind") {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::symmetric;
  cfg.n = 16;
  ExperimentConfig sym = with_defaults(cfg);
  CHECK(sym.m == 8);
  CHECK(sym.o == 8);
  CHECK(sym.orders.size() == 16);
  CHECK(sym.orders.front() == 1);
  CHECK(sym.orders.back() == 16);

  cfg.experiment = ExperimentKind::nonsquare;
  ExperimentConfig wide = with_defaults(cfg);
  CHECK(wide.m == 4);
  CHECK(wide.o == 8);

  cfg.experiment = ExperimentKind::symmetric;
  cfg.m = 3;
  ExperimentConfig narrowed = with_defaults(cfg);
  CHECK(narrowed.o == 3);

  cfg.o = 5;
  CHECK_THROWS_AS(with_defaults(cfg), std::invalid_argument);
}

TEST_CASE("order range specs parse and validate") {
  CHECK(parse_orders("2:10:2") == std::vector<std::size_t>{2, 4, 6, 8, 10});
  CHECK(parse_orders("1:5:10") == std::vector<std::size_t>{1});
  CHECK(parse_orders("3:3:1") == std::vector<std::size_t>{3});
  CHECK_THROWS_AS(parse_orders("5:1:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_orders("0:4:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_orders("1:4:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_orders("1:4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_orders("1:4:2x"), std::invalid_argument);
}

TEST_CASE("verification identity holds on small symmetric systems") {
  ExperimentConfig cfg;
  cfg.n = 16;
  cfg.m = 4;
  cfg.seed = 3;
  VerifyReport report = run_verify(cfg);
  CHECK(report.pass);
  CHECK(report.discrepancy >= 0.0);
  CHECK(report.discrepancy <= 1e-10);
  CHECK(report.threshold == 1e-10);
}

TEST_CASE("verification discrepancy is exactly zero for SISO systems") {
  ExperimentConfig cfg;
  cfg.n = 5;
  cfg.m = 1;
  cfg.seed = 9;
  CHECK(run_verify(cfg).discrepancy == 0.0);

  ExperimentConfig one;
  one.n = 1;  // scalar state, default channel count
  CHECK(run_verify(one).discrepancy <= 1e-14);
}

TEST_CASE("symmetric experiment writes a well-formed CSV") {
  fs::path dir = fresh_dir("xp_symmetric");
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::symmetric;
  cfg.n = 12;
  cfg.m = 3;
  cfg.seed = 5;
  cfg.out_dir = dir.string();
  ExperimentArtifacts artifacts = run_experiment(cfg);
  CHECK(artifacts.csv_path == (dir / "symmetric.csv").string());
  CHECK(artifacts.svg_path.empty());

  std::vector<CsvRow> rows = parse_csv(slurp(artifacts.csv_path));
  REQUIRE(!rows.empty());
  bool saw_cross = false, saw_nonsym = false, saw_bt = false;
  for (const CsvRow& row : rows) {
    CHECK(std::isfinite(row.error));
    CHECK(row.error >= 0.0);
    CHECK((row.stable == 0 || row.stable == 1));
    CHECK(row.order >= 1);
    CHECK(row.order <= 12);
    saw_cross |= row.method == "cross_gramian";
    saw_nonsym |= row.method == "nonsym_cross_gramian";
    saw_bt |= row.method == "balanced_truncation";
    CHECK(row.method != "embedding_cross_gramian");
    if (row.order == 12 && row.method != "balanced_truncation") CHECK(row.error <= 1e-6);
  }
  CHECK(saw_cross);
  CHECK(saw_nonsym);
  CHECK(saw_bt);

  for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
    CHECK(entry.path().extension() != ".tmp");
  }
}

TEST_CASE("nonsquare experiment swaps the cross method for the embedding") {
  fs::path dir = fresh_dir("xp_nonsquare");
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::nonsquare;
  cfg.n = 10;
  cfg.m = 2;
  cfg.o = 4;
  cfg.seed = 11;
  cfg.out_dir = dir.string();
  ExperimentArtifacts artifacts = run_experiment(cfg);
  std::vector<CsvRow> rows = parse_csv(slurp(artifacts.csv_path));
  bool saw_embed = false;
  for (const CsvRow& row : rows) {
    CHECK(row.method != "cross_gramian");
    saw_embed |= row.method == "embedding_cross_gramian";
  }
  CHECK(saw_embed);
}

TEST_CASE("nonsymmetric experiment runs all square-system methods") {
  fs::path dir = fresh_dir("xp_nonsymmetric");
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::nonsymmetric;
  cfg.n = 10;
  cfg.m = 2;
  cfg.seed = 13;
  cfg.out_dir = dir.string();
  ExperimentArtifacts artifacts = run_experiment(cfg);
  std::vector<CsvRow> rows = parse_csv(slurp(artifacts.csv_path));
  bool saw_cross = false;
  for (const CsvRow& row : rows) {
    saw_cross |= row.method == "cross_gramian";
    if (row.order == 10) CHECK(row.error <= 1e-6);
  }
  CHECK(saw_cross);
}

TEST_CASE("identical configs produce byte-identical CSVs") {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::symmetric;
  cfg.n = 10;
  cfg.m = 2;
  cfg.seed = 29;
  fs::path first = fresh_dir("xp_repeat_a");
  fs::path second = fresh_dir("xp_repeat_b");
  cfg.out_dir = first.string();
  run_experiment(cfg);
  cfg.out_dir = second.string();
  run_experiment(cfg);
  CHECK(slurp(first / "symmetric.csv") == slurp(second / "symmetric.csv"));
}

TEST_CASE("plot flag emits a polyline per method") {
  fs::path dir = fresh_dir("xp_plot");
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::symmetric;
  cfg.n = 8;
  cfg.m = 2;
  cfg.seed = 7;
  cfg.out_dir = dir.string();
  cfg.plot = true;
  ExperimentArtifacts artifacts = run_experiment(cfg);
  REQUIRE(!artifacts.svg_path.empty());
  std::string svg = slurp(artifacts.svg_path);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("balanced_truncation") != std::string::npos);
  CHECK(svg.find("cross_gramian") != std::string::npos);
  CHECK(svg.find("nonsym_cross_gramian") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("a user-supplied identity symmetrizer reproduces the default run") {
  fs::path dir_default = fresh_dir("xp_symm_default");
  fs::path dir_file = fresh_dir("xp_symm_file");
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::nonsquare;
  cfg.n = 8;
  cfg.seed = 19;
  cfg.out_dir = dir_default.string();
  run_experiment(cfg);

  const std::string jpath = (dir_file / "j.json").string();
  write_matrix_file(jpath, identity(8));
  cfg.out_dir = dir_file.string();
  cfg.symmetrizer_path = jpath;
  run_experiment(cfg);
  CHECK(slurp(dir_default / "nonsquare.csv") == slurp(dir_file / "nonsquare.csv"));
}

TEST_CASE("run_experiment rejects the verify kind and bad orders") {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::verify;
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);

  cfg.experiment = ExperimentKind::symmetric;
  cfg.n = 6;
  cfg.m = 2;
  cfg.orders = {9};
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("experiment failures carry a stage tag") {
  fs::path dir = fresh_dir("xp_stage");
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::nonsquare;
  cfg.n = 8;
  cfg.seed = 23;
  cfg.out_dir = dir.string();
  cfg.symmetrizer_path = (dir / "absent.json").string();
  CHECK_THROWS_WITH_AS(run_experiment(cfg),
                       doctest::Contains("experiment nonsquare: gramian computation:"),
                       std::runtime_error);
}
