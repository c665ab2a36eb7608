#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "wickenum/cli.hpp"

using namespace wickenum;
using namespace wickenum::cli;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::string& args) {
  const fs::path err = fs::temp_directory_path() / "wickenum_test_cli.err";
  const std::string cmd = std::string("\"") + WICKENUM_CLI_PATH + "\" " + args + " 2>\"" + err.string() + "\"";
  CliRun r{};
  FILE* pipe = popen(cmd.c_str(), "r");
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
  const int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(err);
  r.err.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  return r;
}

const std::string cubic = R"('[{"w":[3],"num":1,"den":1}]')";

}  // namespace

TEST(ParseWeights, Examples) {
  WeightSpec s = parse_weights(R"([{"w":[1,1,1],"num":1,"den":1}])", 3, 3);
  EXPECT_EQ(potential(s), build_elementary_symmetric(3, 3));
  WeightSpec h = parse_weights(R"([{"w":[2,1],"num":1,"den":2}])", 2, 3);
  EXPECT_EQ(h.weight(MultiIndex({2, 1})), Rational(1, 2));
  EXPECT_THROW(parse_weights(R"([{"w":[2],"num":1,"den":1}])", 1, 3), InvalidArgument);
  EXPECT_THROW(parse_weights(R"([{"w":[3],"num":1,"den":0}])", 1, 3), ConfigError);
  EXPECT_THROW(parse_weights(R"([{"w":[3],"num":1},{"w":[3],"num":2}])", 1, 3), ConfigError);
  EXPECT_THROW(parse_weights(R"([{"w":[3,0],"num":1}])", 1, 3), InvalidArgument);
  EXPECT_THROW(parse_weights(R"([{"w":[-1,4],"num":1}])", 2, 3), ConfigError);
  EXPECT_THROW(parse_weights("not json", 1, 3), ConfigError);
  // arbitrary-size integers as strings
  WeightSpec big = parse_weights(R"([{"w":[3],"num":"123456789012345678901234567890","den":"2"}])", 1, 3);
  EXPECT_EQ(big.weight(MultiIndex({3})), make_rational(Integer("123456789012345678901234567890"), 2));
}

TEST(ParseWeights, EchoRoundTrip) {
  const std::string text = R"([{"den":2,"num":1,"w":[0,3]},{"den":3,"num":-5,"w":[2,1]}])";
  const WeightSpec s = parse_weights(text, 2, 3);
  EXPECT_EQ(weights_to_json(s).dump(), text);
  EXPECT_EQ(parse_weights(weights_to_json(s).dump(), 2, 3), s);
}

TEST(NRange, Parsing) {
  EXPECT_EQ(parse_n_range("10:30:2").size(), 11u);
  EXPECT_EQ(parse_n_range("10:30:2").back(), 30);
  EXPECT_EQ(parse_n_range("2:4"), (std::vector<int>{2, 3, 4}));
  EXPECT_THROW(parse_n_range("4:2"), ConfigError);
  EXPECT_THROW(parse_n_range("1:5:0"), ConfigError);
  EXPECT_THROW(parse_n_range("a:b"), ConfigError);
}

TEST(ValidateConfig, Rules) {
  JobConfig c;
  c.command = "exact";
  c.c = 1;
  c.k = 3;
  c.n = 2;
  EXPECT_THROW(validate_config(c), ConfigError);  // no weights
  c.family = "ek";
  EXPECT_THROW(validate_config(c), ConfigError);  // k > c for e_k
  c.family.reset();
  c.weights = R"([{"w":[3],"num":1}])";
  EXPECT_NO_THROW(validate_config(c));
  c.family = "ek";
  EXPECT_THROW(validate_config(c), ConfigError);  // both
  c.family.reset();
  c.precision_bits = 80;
  EXPECT_THROW(validate_config(c), ConfigError);
  c.precision_bits = 53;
  c.n_range = "1:3";
  EXPECT_THROW(validate_config(c), ConfigError);

  JobConfig col;
  col.command = "colorings";
  col.c = 3;
  col.k = 3;
  col.n = 2;
  EXPECT_NO_THROW(validate_config(col));
  col.weights = R"([{"w":[1,1,1],"num":1}])";
  EXPECT_THROW(validate_config(col), ConfigError);
  col.weights.reset();
  col.mode = "fast";
  EXPECT_THROW(validate_config(col), ConfigError);
}

TEST(Tables, CsvAndJson) {
  JobConfig c;
  c.command = "exact";
  c.c = 1;
  c.k = 3;
  c.n_range = "0:2";
  c.weights = R"([{"w":[3],"num":1,"den":1}])";
  const Job job = validate_config(c);
  const Table t = run_exact(job);
  EXPECT_EQ(to_csv(t).substr(0, to_csv(t).find('\n')), "n,A,sign,log10_abs,decimal");
  EXPECT_EQ(t.rows[2][1], "5/24");
  EXPECT_EQ(t.rows[1][1], "0");
  const auto j = nlohmann::json::parse(to_json(t, job));
  EXPECT_EQ(j["rows"][2]["A"], "5/24");
  EXPECT_EQ(j["metadata"]["config"]["weights"], nlohmann::json::parse(*c.weights));
  EXPECT_EQ(j["metadata"]["tool"], "wickenum");
}

TEST(Binary, ExactExample) {
  const CliRun r = run_cli("exact --c 1 --k 3 --weights " + cubic + " --n 2");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\n2,5/24,"), std::string::npos) << r.out;
}

TEST(Binary, ColoringsExample) {
  const CliRun r = run_cli("colorings --k 3 --c 3 --n 2 --mode exact");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("2,exact,1/2,"), std::string::npos) << r.out;
  const CliRun b = run_cli("colorings --k 3 --c 3 --n 2 --mode brute_force");
  EXPECT_NE(b.out.find("2,brute_force,1/2,"), std::string::npos) << b.out;
}

TEST(Binary, ConvergeDecreasesAndIsDeterministic) {
  const std::string args = "converge --family ek --k 3 --c 3 --n-range 10:30:2";
  const CliRun a = run_cli(args), b = run_cli(args);
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::istringstream lines(a.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "n,l,A_exact_log10,A_est_log10,ratio,abs_ratio_minus_1");
  long double prev = 1;
  int rows = 0;
  while (std::getline(lines, line)) {
    const long double dev = std::stold(line.substr(line.rfind(',') + 1));
    EXPECT_LT(dev, prev);
    prev = dev;
    ++rows;
  }
  EXPECT_EQ(rows, 11);
}

TEST(Binary, ExitCodes) {
  const CliRun bad = run_cli("exact --c 1 --k 3 --weights '[{\"w\":[2],\"num\":1,\"den\":1}]' --n 2");
  EXPECT_EQ(bad.status, 2);
  const auto err = nlohmann::json::parse(bad.err);
  EXPECT_EQ(err["error"], "config_error");
  EXPECT_EQ(err["exit_code"], 2);

  EXPECT_EQ(run_cli("exact --c 1 --k 3 --weights " + cubic + " --n 3 --method brute-force").status, 3);
  EXPECT_EQ(run_cli("colorings --k 3 --c 3 --n 5 --mode brute_force").status, 3);
  EXPECT_EQ(run_cli("bogus").status, 2);
  EXPECT_EQ(run_cli("exact --c 1 --k 3 --n 2").status, 2);
  EXPECT_EQ(run_cli("--help").status, 0);
}

TEST(Binary, ConfigFileOverridesFlags) {
  const fs::path cfg = fs::temp_directory_path() / "wickenum_test_cfg.json";
  std::ofstream(cfg) << R"({"c": 1, "k": 3, "n": 2, "weights": [{"w":[3],"num":1,"den":1}], "output_format": "json"})";
  const CliRun r = run_cli("exact --c 2 --k 3 --n 4 --family ek --config " + cfg.string());
  ASSERT_EQ(r.status, 2) << r.out;  // file adds weights on top of --family
  const CliRun ok = run_cli("exact --n 4 --config " + cfg.string());
  ASSERT_EQ(ok.status, 0) << ok.err;
  const auto j = nlohmann::json::parse(ok.out);
  EXPECT_EQ(j["rows"][0]["n"], "2");
  EXPECT_EQ(j["rows"][0]["A"], "5/24");
  EXPECT_EQ(j["metadata"]["config"]["weights"], nlohmann::json::parse(R"([{"w":[3],"num":1,"den":1}])"));
}

TEST(Binary, CritAndAsym) {
  const CliRun crit = run_cli("crit --c 1 --k 3 --weights " + cubic);
  ASSERT_EQ(crit.status, 0);
  EXPECT_NE(crit.out.find("x1,tau_re,tau_im,g_re,g_im,hessdet_re,hessdet_im,nondegenerate\n1,2,0,"), std::string::npos)
      << crit.out;
  const CliRun asym = run_cli("asym --c 3 --k 3 --family ek --n-range 3:4");
  ASSERT_EQ(asym.status, 0) << asym.err;
  EXPECT_NE(asym.out.find("non-integral"), std::string::npos);
  const CliRun out = run_cli("expected --k 3 --c 3 --n 10 --output " + (fs::temp_directory_path() / "wickenum_e.csv").string());
  EXPECT_EQ(out.status, 0);
  EXPECT_TRUE(out.out.empty());
}
