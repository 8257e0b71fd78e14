#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli_app.hpp"
#include "gmfineq/serialization.hpp"

using namespace gmfineq;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("gmf and eig subcommands") {
  TempDir dir("gmfineq_cli_gmf");
  write_file_atomic(dir.file("ones.json"), R"({"n": 2, "real": [[1, 1], [1, 1]]})");
  write_file_atomic(dir.file("id3.json"), R"({"n": 3, "real": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})");
  CHECK(run_cli({"gmf", "--spec", "per", "--matrix", dir.file("ones.json")}).out == "2\n");
  CHECK(run_cli({"gmf", "--spec", "per", "--matrix", dir.file("ones.json"), "--engine", "naive"}).out == "2\n");
  CHECK(run_cli({"gmf", "--spec", "det", "--matrix", dir.file("ones.json"), "--engine", "lu"}).out == "0\n");
  CHECK(run_cli({"gmf", "--spec", "cyclic", "--matrix", dir.file("id3.json")}).out == "1\n");
  const auto tensor = run_cli({"gmf", "--spec", "cyclic:1", "--matrix", dir.file("id3.json"), "--engine", "tensor"});
  CHECK(tensor.code == cli::kOk);
  CHECK(std::stod(tensor.out) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(run_cli({"gmf", "--spec", "det", "--matrix", dir.file("ones.json"), "--engine", "ryser"}).code == cli::kUsage);
  CHECK(run_cli({"gmf", "--spec", "bogus", "--matrix", dir.file("ones.json")}).code == cli::kUsage);
  CHECK(run_cli({"gmf", "--spec", "per", "--matrix", dir.file("missing.json")}).code == cli::kUsage);
  const auto eig = run_cli({"eig", "--matrix", dir.file("ones.json")});
  CHECK(eig.code == cli::kOk);
  const Json j = Json::parse(eig.out);
  CHECK(j["eigenvalues"][0].get<double>() == doctest::Approx(0.0));
  CHECK(j["eigenvalues"][1].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("verify exit codes") {
  const auto ok = run_cli({"verify", "--suite", "three_term_power", "--spec", "det", "--n", "2", "--r", "2.5",
                           "--trials", "50", "--seed", "7"});
  CHECK(ok.code == cli::kOk);
  CHECK(std::count(ok.out.begin(), ok.out.end(), '\n') == 50);
  const auto bad = run_cli({"verify", "--suite", "theorem2_1", "--spec", "per", "--n", "2", "--r", "1.4",
                            "--trials", "5", "--seed", "7"});
  CHECK(bad.code == cli::kViolation);
  CHECK(bad.out.find("VIOLATED") != std::string::npos);
  const auto summary = run_cli({"verify", "--suite", "pairwise", "--m", "4", "--trials", "10", "--seed", "1",
                                "--summary"});
  CHECK(summary.code == cli::kOk);
  CHECK(Json::parse(summary.out)["evaluated"] == 10);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({}).code == cli::kUsage);
  CHECK(run_cli({"verify", "--suite", "three_term_power", "--r", "2", "--trials", "1"}).code == cli::kUsage);
  CHECK(run_cli({"verify", "--suite", "three_term_power", "--seed", "1", "--trials", "1"}).code == cli::kUsage);
  CHECK(run_cli({"verify", "--suite", "three_term_power", "--seed", "1", "--r", "2", "--n", "0"}).code ==
        cli::kUsage);
  CHECK(run_cli({"verify", "--suite", "pairwise", "--seed", "1", "--r", "2"}).code == cli::kUsage);
  CHECK(run_cli({"verify", "--suite", "nope", "--seed", "1", "--r", "2"}).code == cli::kUsage);
  CHECK(run_cli({"verify", "--suite", "three_level", "--m", "3", "--k", "2", "--l", "2", "--p", "3", "--seed",
                 "1", "--r", "2"})
            .code == cli::kUsage);
  CHECK(run_cli({"verify", "--suite", "three_term_power", "--k", "1", "--seed", "1", "--r", "2"}).code ==
        cli::kUsage);
  CHECK(run_cli({"reproduce", "eg9_9"}).code == cli::kUsage);
  CHECK(run_cli({"--help"}).code == cli::kOk);
}

TEST_CASE("reproduce subcommand") {
  const auto eg = run_cli({"reproduce", "eg2_3"});
  CHECK(eg.code == cli::kOk);
  CHECK(Json::parse(eg.out)["reproduced"] == true);
  const auto gap = run_cli({"reproduce", "majorization_gap"});
  CHECK(gap.code == cli::kViolation);
  CHECK(gap.err.find("n=3") != std::string::npos);
}

TEST_CASE("search writes replayable violations") {
  TempDir dir("gmfineq_cli_search");
  const auto res = run_cli({"search", "--suite", "three_term_power", "--spec", "per", "--n", "2", "--r", "1.4",
                            "--trials", "20", "--seed", "3", "--out", dir.file("search.json"), "--violations-dir",
                            dir.file("v")});
  CHECK(res.code == cli::kViolation);
  CHECK(res.out.empty());
  const Json doc = read_json_file(dir.file("search.json"));
  CHECK(doc["evaluated"] == 20);
  CHECK_FALSE(doc.contains("wall_time"));
  REQUIRE(fs::exists(dir.file("v/violation_0.json")));
  const auto replay = run_cli({"verify", "--suite", "three_term_power", "--spec", "per", "--r", "1.4",
                               "--instance", dir.file("v/violation_0.json")});
  CHECK(replay.code == cli::kViolation);
  const SlackReport original = report_from_json(read_json_file(dir.file("v/violation_0.json"))["report"]);
  const SlackReport again = report_from_json(Json::parse(replay.out));
  CHECK(again.slack == original.slack);
  CHECK(again.instance_digest == original.instance_digest);
}

TEST_CASE("reruns are byte-identical") {
  TempDir dir("gmfineq_cli_rerun");
  const std::vector<std::string> base = {"verify", "--suite", "alternating", "--spec", "per", "--n", "2", "--m",
                                         "4", "--r", "1.5", "2.5", "--trials", "30", "--seed", "11"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", dir.file("a.jsonl")});
  b.insert(b.end(), {"--out", dir.file("b.jsonl"), "--threads", "3"});
  run_cli(a);
  run_cli(b);
  CHECK(read_text_file(dir.file("a.jsonl")) == read_text_file(dir.file("b.jsonl")));
  CHECK_FALSE(read_text_file(dir.file("a.jsonl")).empty());
}
