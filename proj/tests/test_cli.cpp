#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using homspec::cli::run;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("homspec-test-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const char* kConfig = R"(# small sweep
[output]
seed = 11

[d]
command = dims
space = sphere
m = 2
n-max = 10

[v]
command = verify
theorem = 2.2
space = sphere
m = 2
r = 1
gamma = 3.5
count = 10000

[w]
command = weyl
kind = nilpotent
max-order = 6
matrices = 10

[n]
command = nystrom-check
family = geometric
param = 0.5
grid = 12x24
top-k = 9
)";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("dims on the sphere") {
  const auto r = call({"dims", "--space", "sphere", "--m", "2", "--n-max", "10"});
  CHECK(r.status == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 12);
  CHECK(lines[0] == "space,m,n,d_n,tau_n,lambda_n");
  CHECK(lines[11] == "sphere,2,10,21,121,110");
}

TEST_CASE("verify reports a passing verdict") {
  const auto r = call({"verify", "--theorem", "2.2", "--space", "sphere", "--m", "2", "--r", "1", "--gamma", "3.5",
                       "--count", "10000"});
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "pass");
  CHECK(j["theorem"] == "2.2");
  CHECK(j["theorem_exponent"].get<double>() == -1.5);
  CHECK(r.out.back() == '\n');
}

TEST_CASE("lemmas on the Cayley plane") {
  const auto r = call({"lemmas", "--space", "cayley", "--m", "16", "--n-max", "1000"});
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& l : j["lemmas"]) CHECK(l["violations"].empty());
}

TEST_CASE("spectrum and quadrature output") {
  auto r = call({"spectrum", "--space", "sphere", "--m", "2", "--coeff-family", "geometric", "--param", "0.5",
                 "--count", "4"});
  CHECK(r.status == 0);
  CHECK(lines_of(r.out) == std::vector<std::string>{"index,degree,value", "1,0,1", "2,1,0.5", "3,1,0.5", "4,1,0.5"});

  r = call({"spectrum", "--space", "sphere", "--m", "2", "--gamma", "3", "--count", "4", "--r", "1"});
  CHECK(lines_of(r.out)[2] == "2,1,0.25");  // lambda_1 a_1 = 2/8

  r = call({"quad", "--alpha", "0", "--beta", "0", "--nodes", "2"});
  CHECK(r.status == 0);
  CHECK(lines_of(r.out).size() == 3);
  CHECK(lines_of(r.out)[0] == "index,node,weight");
}

TEST_CASE("configuration errors exit with status 2") {
  CHECK(call({}).status == 2);
  CHECK(call({"dims", "--space", "torus", "--m", "2", "--n-max", "3"}).status == 2);
  CHECK(call({"dims", "--space", "complex-projective", "--m", "3", "--n-max", "3"}).status == 2);
  CHECK(call({"spectrum", "--space", "sphere", "--m", "2", "--coeff-family", "geometric", "--count", "3"}).status ==
        2);
  CHECK(call({"nystrom-check", "--family", "geometric", "--param", "0.5", "--grid", "24by48"}).status == 2);
  const auto r = call({"verify", "--theorem", "2.1", "--space", "sphere", "--m", "2", "--r", "1", "--p", "3.5",
                       "--gamma", "4"});
  CHECK(r.status == 2);
  CHECK(r.err.find("HypothesisViolation") != std::string::npos);
}

TEST_CASE("failing verdicts exit with status 1") {
  // 24x48 cannot resolve slowly decaying coefficients to 1e-5
  const auto r = call({"nystrom-check", "--family", "algebraic", "--param", "3"});
  CHECK(r.status == 1);
  CHECK(nlohmann::json::parse(r.out)["pass"] == false);
}

TEST_CASE("config runs write every report and are reproducible") {
  TempDir dir("run");
  const fs::path cfg = dir.path / "sweep.conf";
  std::ofstream(cfg) << kConfig;

  const auto a = dir.path / "a";
  const auto b = dir.path / "b";
  REQUIRE(call({"run", "--config", cfg.string(), "--out", a.string()}).status == 0);
  REQUIRE(call({"run", "--config", cfg.string(), "--jobs", "3", "--out", b.string()}).status == 0);

  const char* files[] = {"d.csv", "v.json", "v.csv", "w.json", "n.json", "verify_summary.csv"};
  for (const char* f : files) {
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  CHECK(lines_of(slurp(a / "verify_summary.csv"))[0] ==
        "theorem,space,m,r,p,gamma,fitted_slope,theorem_exponent,verdict");
  CHECK(nlohmann::json::parse(slurp(a / "w.json"))["seed"] == 11);
  for (const auto& e : fs::directory_iterator(a)) CHECK(e.path().extension() != ".tmp");
}

TEST_CASE("environment overrides the output directory") {
  TempDir dir("env");
  const auto target = dir.path / "from-env";
  ::setenv("HOMSPEC_OUT", target.string().c_str(), 1);
  const auto r = call({"dims", "--space", "sphere", "--m", "3", "--n-max", "4", "--out", (dir.path / "x").string()});
  ::unsetenv("HOMSPEC_OUT");
  CHECK(r.status == 0);
  CHECK(fs::exists(target / "dims.csv"));
  CHECK_FALSE(fs::exists(dir.path / "x"));
}

TEST_CASE("config validation happens before any job runs") {
  TempDir dir("bad");
  const fs::path cfg = dir.path / "bad.conf";
  std::ofstream(cfg) << "[ok]\ncommand = dims\nspace = sphere\nm = 2\nn-max = 3\n\n"
                        "[broken]\ncommand = verify\ntheorem = 2.2\nspace = sphere\nm = 2\nr = 1\ngamma = 2.5\n";
  const auto out = dir.path / "out";
  const auto r = call({"run", "--config", cfg.string(), "--out", out.string()});
  CHECK(r.status == 2);
  CHECK(r.err.find("[broken]") != std::string::npos);
  CHECK_FALSE(fs::exists(out / "ok.csv"));

  std::ofstream(cfg) << "[a]\ncommand = dims\nbogus-key = 1\n";
  CHECK(call({"run", "--config", cfg.string()}).status == 2);
  std::ofstream(cfg) << "key = value\n";
  CHECK(call({"run", "--config", cfg.string()}).status == 2);
  std::ofstream(cfg) << "[a]\ncommand = dims\n[a]\ncommand = dims\n";
  CHECK(call({"run", "--config", cfg.string()}).status == 2);
}

}  // TEST_SUITE
