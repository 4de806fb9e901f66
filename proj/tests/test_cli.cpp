#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ppca/cli.hpp"
#include "ppca/verify.hpp"

using namespace ppca::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ppca_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("grid and list syntax") {
  const auto g = parse_grid("0.45:0.65:0.005");
  CHECK(g.size() == 41);
  CHECK_THROWS_AS(parse_grid("0.4:0.5"), UsageError);
  CHECK_THROWS_AS(parse_grid("a:0.5:0.1"), UsageError);
  CHECK(parse_int_list("8,16,32") == std::vector<long>{8, 16, 32});
  CHECK(parse_int_list("2:5") == std::vector<long>{2, 3, 4, 5});
  CHECK_THROWS_AS(parse_int_list("3,x"), UsageError);
}

TEST_CASE("bounds command") {
  const auto r = call({"bounds", "-U", "-1,0,1"});
  CHECK(r.code == kOk);
  CHECK(r.out.rfind("# ppca", 0) == 0);
  CHECK(r.out.find("neighborhood,span,p1,p2\n-1;0;1,2,0.500,0.505\n") != std::string::npos);
  const auto all = call({"bounds"});
  CHECK(all.out.find("-1;0;3,4,0.333,0.343") != std::string::npos);
  const auto j = call({"bounds", "-U", "-1,0", "--format", "json"});
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["rows"][0]["span"] == 1);
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == kUsage);
  CHECK(call({"sweep", "-U", "-1,0,1", "--p-grid", "0.4:0.5:0.05"}).code == kUsage);
  CHECK(call({"bounds", "-U", "-1,,1"}).code == kUsage);
  CHECK(call({"simulate", "-U", "0,1", "--p", "1.5", "--n", "3", "--seed", "1"}).code == kUsage);
  CHECK(call({"simulate", "-U", "0,1", "--n", "3", "--seed", "1"}).code == kUsage);
  CHECK(call({"bounds", "--bogus"}).code == kUsage);
  CHECK(call({"--help"}).code == kOk);
}

TEST_CASE("config files") {
  const auto cfg = temp_file("cfg.txt");
  {
    std::ofstream f(cfg);
    f << "# sweep settings\nneighborhood = 0,1\nn=10\nT=10\nR=4\np-grid=0.2:0.4:0.1\nseed=5\n";
  }
  const auto r = call({"sweep", "--config", cfg.string(), "--seed", "6", "--print-config"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("seed=6\n") != std::string::npos);
  CHECK(r.out.find("n=10\n") != std::string::npos);
  CHECK(r.out.find("neighborhood=0,1\n") != std::string::npos);

  // The printed configuration is itself a valid config file.
  const auto printed = temp_file("printed.txt");
  {
    std::ofstream f(printed);
    f << r.out;
  }
  const auto again = call({"--config", printed.string(), "--print-config"});
  CHECK(again.code == kOk);
  CHECK(again.out == r.out);

  {
    std::ofstream f(cfg);
    f << "neighbourhood=0,1\n";
  }
  CHECK(call({"sweep", "--config", cfg.string()}).code == kUsage);
  CHECK_THROWS_AS(parse_config_text("p=0.5\nwhatever=1\n"), UsageError);
  CHECK_THROWS_AS(parse_config_text("novalue\n"), UsageError);
  std::filesystem::remove(cfg);
  std::filesystem::remove(printed);
}

TEST_CASE("output files are byte-identical across reruns and thread counts") {
  const auto a = temp_file("a.csv");
  const auto b = temp_file("b.csv");
  const std::vector<std::string> base{"gamma-scan", "-U", "0,1", "--p-grid", "0.6:0.8:0.1",
                                      "--m-max", "40", "--replicas", "16", "--seed", "11"};
  auto with = [&](std::vector<std::string> extra) {
    auto v = base;
    v.insert(v.end(), extra.begin(), extra.end());
    return v;
  };
  CHECK(call(with({"--threads", "1", "-o", a.string()})).code == kOk);
  CHECK(call(with({"--threads", "4", "-o", b.string()})).code == kOk);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).rfind("# ppca", 0) == 0);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("unwritable output") {
  const auto r = call({"bounds", "-o", "/nonexistent-dir/x.csv"});
  CHECK(r.code == kRuntime);
}

TEST_CASE("json reports parse") {
  for (const auto& cmd : std::vector<std::vector<std::string>>{
           {"sweep", "-U", "0,1", "--n", "8", "--T", "8", "--R", "4", "--p-grid", "0.5:0.6:0.1",
            "--seed", "1", "--format", "json"},
           {"tau-scaling", "-U", "0,1", "--p", "0.3", "--n-list", "4,8", "--replicas", "5",
            "--seed", "1", "--format", "json"},
           {"decay", "-U", "0,1", "--p", "0.3", "--m-list", "2:4", "--replicas", "50", "--seed",
            "1", "--format", "json"},
           {"simulate", "-U", "0,1", "--p", "0.3", "--n", "4", "--seed", "1", "--format",
            "json"}}) {
    const auto r = call(cmd);
    CHECK(r.code == kOk);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.contains("meta"));
    CHECK(doc["meta"]["seed"] == "1");
  }
}

TEST_CASE("verify exit code follows the checks") {
  const auto r = call({"verify"});
  const auto doc = nlohmann::json::parse(r.out);
  bool all = true;
  for (const auto& [name, check] : doc.items()) {
    CHECK(check.contains("computed"));
    CHECK(check.contains("reference"));
    CHECK(check.contains("tolerance"));
    all = all && check["pass"].get<bool>();
  }
  CHECK(doc.size() == ppca::verify_suite().size());
  CHECK(r.code == (all ? kOk : kVerificationFailed));
}
