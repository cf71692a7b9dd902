#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = evo::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  const auto r = run(std::move(args));
  INFO(r.err);
  REQUIRE(r.code == 0);
  return Json::parse(r.out);
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("evo_cli_test_" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("classify examples") {
  const Json e3 = run_json({"classify", "-m", "1,1,-1,-1"});
  CHECK(e3["class"] == "E3");
  CHECK(e3["verified"] == true);
  CHECK(e3["mode"] == "exact");

  CHECK(run_json({"classify", "-m", "0,0,0,0"})["class"] == "E0");

  const Json e6 = run_json({"classify", "-m", "2,4,6,2"});
  CHECK(e6["class"] == "E6");
  CHECK(e6["params"] == Json::array({2, 3}));

  const Json fl = run_json({"classify", "-m", "0.5,1,0,0"});
  CHECK(fl["mode"] == "floating");
  CHECK(fl["class"] == "E1");

  const Json q = run_json({"classify", "--matrix", "1/2,-1/2,-1/2,1/2"});
  CHECK(q["class"] == "E3");
  CHECK(q["input"] == Json::array({0.5, -0.5, -0.5, 0.5}));
}

TEST_CASE("classify golden output") {
  const auto r = run({"classify", "-m", "1,1,-1,-1"});
  CHECK(r.code == 0);
  CHECK(r.out == R"({
  "input": [
    1,
    1,
    -1,
    -1
  ],
  "mode": "exact",
  "class": "E3",
  "params": [],
  "params_exact": [],
  "witness": [
    [
      1,
      0
    ],
    [
      0,
      1
    ]
  ],
  "witness_exact": [
    [
      "1",
      "0"
    ],
    [
      "0",
      "1"
    ]
  ],
  "verified": true,
  "config": {
    "command": "classify",
    "tol": 1e-09
  }
}
)");
}

TEST_CASE("irrational parameters keep an exact form") {
  const Json j = run_json({"classify", "-m", "0,2,1,1"});
  CHECK(j["class"] == "E7");
  CHECK(j["params_exact"][0].get<std::string>().find("cbrt") != std::string::npos);
  CHECK(std::abs(j["params"][0].get<double>() - 1 / std::cbrt(2.0)) <= 1e-11);
}

TEST_CASE("iso examples") {
  const Json swap = run_json({"iso", "--left", "1,2,3,1", "--right", "1,3,2,1"});
  CHECK(swap["isomorphic"] == true);
  CHECK(swap["verified"] == true);
  CHECK(swap["witness"] == Json::parse("[[0,1],[1,0]]"));

  const Json e1e2 = run_json({"iso", "--left", "1,0,0,0", "--right", "1,0,1,0"});
  CHECK(e1e2["isomorphic"] == false);
  CHECK_FALSE(e1e2.contains("witness"));

  const Json self = run_json({"iso", "--left", "3,-2,7,5", "--right", "3,-2,7,5"});
  CHECK(self["isomorphic"] == true);
  CHECK(self["witness"] == Json::parse("[[1,0],[0,1]]"));

  const Json fl = run_json({"iso", "--left", "1,2.5,3,1", "--right", "1,3,2.5,1"});
  CHECK(fl["mode"] == "floating");
  CHECK(fl["isomorphic"] == true);
}

TEST_CASE("cea examples") {
  const Json f3 = run_json({"cea", "check", "--family", "f3", "--phi", "exp(t)", "--psi", "t"});
  CHECK(f3["pass"] == true);
  CHECK(f3["max_residual"].get<double>() <= 1e-9);
  CHECK(f3["samples"] == 1000);

  const Json f2 = run_json({"cea", "check", "--family", "f2", "--printed-form"});
  CHECK(f2["pass"] == false);
  CHECK(std::abs(f2["max_residual"].get<double>() - 0.353553390593) <= 1e-11);
  CHECK(f2["family"]["printed_form"] == true);
  CHECK(f2.contains("note"));

  const Json period = run_json({"cea", "period", "--family", "f2", "--var", "t", "--max", "10"});
  CHECK(std::abs(period["period"].get<double>() - 6.283185307) <= 1e-6);

  const Json none = run_json({"cea", "period", "--family", "f1"});
  CHECK(none["period"].is_null());

  const Json hom = run_json({"cea", "homogeneity", "--family", "f3", "--hi", "2"});
  CHECK(hom["pass"] == false);
  CHECK(hom["max_residual"].get<double>() > 0.1);

  const Json custom = run_json({"cea", "check", "--family", "custom", "--entries", "exp(t-s); 0; 0; 1"});
  CHECK(custom["pass"] == true);
}

TEST_CASE("trace examples") {
  TempDir dir;
  const auto csv = dir / "trace.csv";
  const auto r = run({"trace", "--family", "f2", "--s", "0", "--t0", "0", "--t1", "3.2", "--step", "0.1", "--out", csv.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const Json echo = Json::parse(r.err);
  CHECK(echo["format"] == "csv");
  const auto lines = split_lines(slurp(csv));
  REQUIRE(lines.size() == 34);
  CHECK(lines[0] == "s,t,class,param1,param2,expected_class,agrees,boundary");
  std::vector<std::string> flagged;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i].find(",true,") != std::string::npos);  // agrees
    if (lines[i].ends_with(",true")) flagged.push_back(lines[i].substr(0, lines[i].find(',', 2)));
  }
  CHECK(flagged == std::vector<std::string>{"0,1.5", "0,1.6"});

  const Json f1 = run_json({"trace", "--family", "f1", "--lambda", "2", "--mu", "2", "--t1", "2", "--step", "0.25"});
  REQUIRE(f1.size() == 9);
  for (const auto& rec : f1) {
    CHECK(rec["class"] == "E6");
    CHECK(rec["params"] == Json::array({0, 0}));
  }

  const Json f3 = run_json({"trace", "--family", "f3", "--phi", "exp(t)", "--psi", "t", "--t1", "2", "--step", "0.05"});
  CHECK(f3.size() == 41);
  for (const auto& rec : f3) CHECK(rec["agrees"] == true);
}

TEST_CASE("boundaries command") {
  const Json j = run_json({"boundaries", "--family", "f2", "--lo", "1", "--hi", "2"});
  REQUIRE(j["boundaries"].size() == 1);
  CHECK(std::abs(j["boundaries"][0].get<double>() - 1.5707963268) <= 1e-6);
}

TEST_CASE("config files") {
  TempDir dir;
  const auto cfg = dir / "run.cfg";
  write(cfg, "# trace settings\ncommand = trace\nfamily = f2\nt1 = 0.3\nstep = 0.1\nformat = csv\n");
  const auto r = run({"--config", cfg.string()});
  REQUIRE(r.code == 0);
  CHECK(split_lines(r.out).size() == 5);

  // command-line flags override the file
  const auto over = run({"--config", cfg.string(), "trace", "--t1", "0.5"});
  CHECK(split_lines(over.out).size() == 7);

  write(cfg, "command = cea\naction = check\nfamily = f2\nprinted-form = true\nsamples = 10\n");
  const Json cea = Json::parse(run({"--config", cfg.string()}).out);
  CHECK(cea["pass"] == false);
  CHECK(cea["samples"] == 10);

  write(cfg, "command = classify\nmatrix = 1,1,-1,-1\ncolour = blue\n");
  const auto bad = run({"--config", cfg.string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("unknown config key 'colour'") != std::string::npos);

  write(cfg, "matrix\n");
  CHECK(run({"--config", cfg.string(), "classify"}).code == 1);
  CHECK(run({"--config", (dir / "missing.cfg").string(), "classify"}).code == 1);

  CHECK(evo::cli::config_to_args("a = 1\nflag = true\noff = false # gone\n") ==
        std::vector<std::string>{"--a", "1", "--flag"});
}

TEST_CASE("exit codes") {
  CHECK(run({"classify", "-m", "1,1,-1,-1"}).code == 0);
  CHECK(run({"classify", "-m", "1,1,-1,-1.000000000001"}).code == 2);
  CHECK(run({"classify", "-m", "1,2,3"}).code == 1);
  CHECK(run({"classify", "-m", "1/0,0,0,0"}).code == 1);
  CHECK(run({"classify", "-m", "a,b,c,d"}).code == 1);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"cea", "check", "--family", "f3", "--phi", "0*t"}).code == 1);  // phi vanishes
  CHECK(run({"cea", "check", "--family", "f3", "--phi", "exp(x)"}).code == 1);
  CHECK(run({"trace", "--family", "f2", "--format", "xml"}).code == 1);
  const auto err = run({"cea", "check", "--family", "f3", "--phi", "exp(t"});
  CHECK(err.code == 1);
  CHECK(err.err.find("syntax error at offset 5") != std::string::npos);
}

TEST_CASE("failed runs leave no partial output") {
  TempDir dir;
  const auto out = dir / "trace.csv";
  // log(t) at s = 0 is not finite
  const auto r = run({"trace", "--family", "f3", "--phi", "2 + log(t)", "--t1", "1", "--out", out.string()});
  CHECK(r.code == 1);
  CHECK_FALSE(fs::exists(out));
  CHECK(fs::is_empty(dir.path()));
}

TEST_CASE("reruns are byte-identical") {
  TempDir dir;
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"classify", "-m", "0.3,1.7,-2.2,0.9"},
           {"iso", "--left", "1,2.5,3,1", "--right", "1,3,2.5,1"},
           {"cea", "check", "--family", "f1", "--samples", "200"},
           {"trace", "--family", "f3", "--t1", "1.5", "--step", "0.05", "--format", "csv"},
           {"trace", "--family", "f2", "--t1", "3", "--step", "0.2", "--format", "json"}}) {
    auto a = args, b = args;
    a.insert(a.end(), {"--out", (dir / "a").string()});
    b.insert(b.end(), {"--out", (dir / "b").string()});
    REQUIRE(run(a).code == 0);
    REQUIRE(run(b).code == 0);
    CHECK(slurp(dir / "a") == slurp(dir / "b"));
    CHECK_FALSE(slurp(dir / "a").empty());
  }
}
