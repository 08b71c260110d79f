#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <sstream>

#include "moddenoise/errors.hpp"
#include "moddenoise/cli.hpp"
#include "moddenoise/io.hpp"
#include "moddenoise/rng.hpp"
#include "moddenoise/signal.hpp"

using namespace moddenoise;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("moddenoise_cli_" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::vector<double> column(const std::string& csv, std::size_t col) {
  std::vector<double> v;
  for (const auto& row : parse_csv(csv).rows) v.push_back(parse_double(row.at(col)));
  return v;
}

}  // namespace

TEST_CASE("spectrum subcommand") {
  auto r = run({"spectrum", "--family", "path", "--n", "3"});
  CHECK(r.code == 0);
  const auto lam = column(r.out, 1);
  REQUIRE(lam.size() == 3);
  CHECK(lam[0] == doctest::Approx(3));
  CHECK(lam[1] == doctest::Approx(1));
  CHECK(lam[2] == 0.0);
  CHECK(r.out.find("lambda_min=") != std::string::npos);
  CHECK(r.out.find("delta=2") != std::string::npos);

  r = run({"spectrum", "--family", "complete", "--n", "5"});
  const auto k5 = column(r.out, 1);
  REQUIRE(k5.size() == 5);
  for (int i = 0; i < 4; ++i) CHECK(k5[i] == doctest::Approx(5));
  CHECK(k5[4] == 0.0);

  TempDir dir;
  write_text_file(dir.file("bad_disconnected.txt"), "4\n1 2\n3 4\n");
  r = run({"spectrum", "--edges", dir.file("bad_disconnected.txt")});
  CHECK(r.code == 2);
  CHECK(r.err.find("graph not connected") != std::string::npos);

  r = run({"spectrum", "--family", "path", "--n", "4", "--out", dir.file("s.csv")});
  CHECK(r.code == 0);
  CHECK(read_text_file(dir.file("s.csv")).rfind("j,lambda_j\n", 0) == 0);

  CHECK(run({"spectrum", "--family", "hexagon", "--n", "4"}).code == 2);
  CHECK(run({"spectrum"}).code == 2);
}

TEST_CASE("denoise subcommand") {
  TempDir dir;
  const auto h = lift_to_torus(sample_function(FunctionSpec::f1(), uniform_grid(500)));
  write_text_file(dir.file("h.csv"), signal_csv(h));

  auto r = run({"denoise", "--input", dir.file("h.csv"), "--n", "500", "--gamma", "0", "--out",
                dir.file("same.csv")});
  CHECK(r.code == 0);
  // the torus projection renormalizes, so agreement is to the last bit, not exact
  CHECK((parse_signal_csv(read_text_file(dir.file("same.csv")), true).values() - h.values())
            .cwiseAbs()
            .maxCoeff() <= 1e-15);

  write_text_file(dir.file("z2.csv"), "i,re,im\n1,1,0\n2,-1,0\n");
  r = run({"denoise", "--input", dir.file("z2.csv"), "--family", "path", "--gamma", "0.5",
           "--method", "trs"});
  CHECK(r.code == 3);

  NormalStream stream(4);
  const auto z = add_modulo_noise(h, 0.05, stream);
  write_text_file(dir.file("z.csv"), signal_csv(z));
  const auto start = std::chrono::steady_clock::now();
  r = run({"denoise", "--input", dir.file("z.csv"), "--truth", dir.file("h.csv"), "--gamma-rule",
           "path-caption", "--sigma", "0.05", "--out", dir.file("est.csv")});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(r.code == 0);
  CHECK(secs < 5.0);
  CHECK(r.out.find("mse_output=") != std::string::npos);

  r = run({"denoise", "--input", dir.file("z.csv"), "--gamma", "3", "--method", "trs", "--out",
           dir.file("trs.csv")});
  CHECK(r.code == 0);
  CHECK(r.out.find("mu_star=") != std::string::npos);
  CHECK(r.out.find("kkt_residual=") != std::string::npos);

  write_text_file(dir.file("raw.csv"), "i,re,im\n1,2,0\n2,0,0.5\n");
  CHECK(run({"denoise", "--input", dir.file("raw.csv"), "--gamma", "1"}).code == 2);
  CHECK(run({"denoise", "--input", dir.file("raw.csv"), "--gamma", "1", "--raw"}).code == 0);
  CHECK(run({"denoise", "--input", dir.file("z.csv")}).code == 2);
  CHECK(run({"denoise", "--input", dir.file("z.csv"), "--gamma", "1", "--n", "7"}).code == 2);
}

TEST_CASE("sweep subcommand") {
  TempDir dir;
  const std::string config = std::string(MODDENOISE_SOURCE_DIR) + "/configs/fig1_f1.json";
  auto r = run({"sweep", "--config", config, "--out", dir.file("f1.csv"), "--svg",
                dir.file("f1.svg")});
  CHECK(r.code == 0);
  const CsvTable table = parse_csv(read_text_file(dir.file("f1.csv")));
  CHECK(table.rows.size() == 75);
  CHECK(read_text_file(dir.file("f1.svg")).find("<path") != std::string::npos);

  // the replay config reproduces the CSV byte for byte
  r = run({"sweep", "--config", dir.file("f1.json"), "--out", dir.file("again.csv")});
  CHECK(r.code == 0);
  CHECK(read_text_file(dir.file("again.csv")) == read_text_file(dir.file("f1.csv")));

  r = run({"sweep", "--config", config, "--trials", "1", "--sigma", "0.05", "--out",
           dir.file("one.csv")});
  CHECK(r.code == 0);
  CHECK(parse_csv(read_text_file(dir.file("one.csv"))).rows.size() == 3);

  write_text_file(dir.file("broken.json"), R"({"trials": 3})");
  CHECK(run({"sweep", "--config", dir.file("broken.json"), "--out", dir.file("x.csv")}).code == 2);
}

TEST_CASE("bounds and check subcommands") {
  TempDir dir;
  write_text_file(dir.file("kn.json"),
                  R"({"family": "complete", "n": 1000, "epsilon": 0.5, "lambda_bar": 1000,
                      "B_n": 1.0, "sigma": 0.1})");
  auto r = run({"check", "thm2", "--query", dir.file("kn.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("1 + |L| <= eps n / 64") != std::string::npos);
  CHECK(r.out.find("lhs = 1, rhs = 7.8125") != std::string::npos);

  r = run({"bounds", "--query", dir.file("kn.json"), "--kind", "ucqp-highprob", "--sigma", "0"});
  CHECK(r.code == 0);
  CHECK(column(r.out, 1).at(0) == doctest::Approx(65536 * std::log(1000.0)).epsilon(1e-15));

  write_text_file(dir.file("gap.json"),
                  R"({"family": "complete", "n": 50, "k": 3, "epsilon": 0.5, "lambda_bar": 50,
                      "B_n": 1.0, "sigma": 0.1})");
  r = run({"check", "thm8", "--query", dir.file("gap.json")});
  CHECK(r.code == 2);
  CHECK(r.err.find("invalid gap index") != std::string::npos);

  write_text_file(dir.file("missing.json"), R"({"n": 100, "sigma": 0.1})");
  r = run({"check", "thm2", "--query", dir.file("missing.json")});
  CHECK(r.code == 2);
  CHECK(r.err.find("'epsilon'") != std::string::npos);

  write_text_file(dir.file("low.json"),
                  R"({"family": "complete", "n": 1000, "epsilon": 0.5, "lambda_bar": 1000,
                      "B_n": 1.0, "sigma": 0.01})");
  CHECK(run({"check", "thm6", "--query", dir.file("low.json")}).code == 1);

  write_text_file(dir.file("typo.json"), R"({"n": 100, "sgima": 0.1})");
  r = run({"check", "thm2", "--query", dir.file("typo.json")});
  CHECK(r.code == 2);
  CHECK(r.err.find("sgima") != std::string::npos);
  CHECK(run({"check", "thm9", "--query", dir.file("kn.json")}).code == 2);
}

TEST_CASE("argument errors and help") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(exit_code_for(ErrorKind::numerical) == 4);
  CHECK(exit_code_for(ErrorKind::degeneracy) == 3);
  CHECK(exit_code_for(ErrorKind::connectivity) == 2);
}
