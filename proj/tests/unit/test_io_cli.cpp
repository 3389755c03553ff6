#include <filesystem>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "effpot/errors.hpp"
#include "effpot/io.hpp"

namespace effpot {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "effpot_unit" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Io, FormatDouble) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  const double x = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Io, CoefficientCsvRoundTrip) {
  const fs::path dir = scratch("csv");
  const GridSpec g = build_grid(1, {2}, 2, Topology::Torus);
  write_text_file(dir / "c.csv", "V,a,m\n1,1,1\n0.5,2,1\n0,1,0.5\n2,1,1\n");
  const CoefficientField c = load_coefficients_csv(dir / "c.csv", g);
  EXPECT_EQ(c.V, (std::vector<double>{1, 0.5, 0, 2}));
  EXPECT_EQ(c.a.size(), 1u);
  EXPECT_EQ(c.a[0][1], 2.0);
  EXPECT_EQ(c.m[2], 0.5);
  EXPECT_EQ(c.v_bar, 2.0);
  write_text_file(dir / "short.csv", "V\n1\n2\n");
  EXPECT_THROW(load_coefficients_csv(dir / "short.csv", g), Error);
  EXPECT_THROW(load_coefficients_csv(dir / "missing.csv", g), Error);
}

TEST(Io, ErrorJson) {
  EXPECT_EQ(error_json("Io", "x \"y\""), "{\n  \"error\": \"Io\",\n  \"message\": \"x \\\"y\\\"\"\n}\n");
}

TEST(Config, StrictKeysAndLevels) {
  EXPECT_THROW(cli::parse_config("{\"nope\": 1}"), Error);
  EXPECT_THROW(cli::parse_config("{\"wells\": {\"mu\": 1}}"), Error);
  EXPECT_THROW(cli::parse_config("{"), Error);
  EXPECT_THROW(cli::parse_config("{\"wells\": {\"mu_bar\": \"lambda0\"}}"), Error);
  EXPECT_THROW(cli::parse_config("{\"coefficients\": {\"source\": \"constant\", \"value\": 1}}"), Error);

  const cli::RunConfig c = cli::parse_config(
      "{\"wells\": {\"mu_bar\": \"lambda5+2delta\", \"delta\": \"1/T\", \"alpha\": 0.25}}");
  EXPECT_TRUE(c.mu_bar.from_eigen);
  EXPECT_EQ(c.mu_bar.eigen_index, 5);
  EXPECT_EQ(c.mu_bar.delta_multiple, 2.0);
  EXPECT_EQ(c.delta.kind, cli::DeltaSpec::Kind::InverseT);
  EXPECT_EQ(c.alpha, 0.25);

  const cli::RunConfig d = cli::parse_config("{\"wells\": {\"mu_bar\": 0.75, \"delta\": 0.01}}");
  EXPECT_FALSE(d.mu_bar.from_eigen);
  EXPECT_EQ(d.mu_bar.value, 0.75);
  EXPECT_EQ(d.delta.value, 0.01);

  cli::RunConfig e = cli::parse_config("{\"ensemble\": {\"T\": [64, 128], \"realizations\": 3}}");
  cli::apply_seed_base(e, 99);
  EXPECT_EQ(e.ensemble.base_seed, 99u);
  EXPECT_EQ(e.ensemble.Ts, (std::vector<int>{64, 128}));
}

int run(const std::string& sub, const std::string& json, const fs::path& out, std::string* log = nullptr) {
  cli::RunConfig c = cli::parse_config(json);
  c.out = out;
  std::ostringstream os;
  const int status = cli::run_subcommand(sub, c, os);
  if (log) *log = os.str();
  return status;
}

TEST(Cli, VerifyOnConstantPotential) {
  const fs::path dir = scratch("verify_const");
  const std::string cfg =
      "{\"grid\": {\"dim\": 1, \"extent\": [16], \"cells_per_unit\": 2},"
      " \"coefficients\": {\"source\": \"constant\", \"value\": 1.0, \"V_bar\": 2.0},"
      " \"wells\": {\"mu_bar\": 1.0, \"delta\": 0.1}}";
  std::string log;
  ASSERT_EQ(run("verify", cfg, dir, &log), 0) << log;
  EXPECT_NE(log.find("check identity: 7 passed, 0 failed"), std::string::npos) << log;
  EXPECT_NE(log.find("check decay: "), std::string::npos) << log;
  EXPECT_TRUE(fs::exists(dir / "checks.json"));
  const std::string checks = read_text_file(dir / "checks.json");
  EXPECT_NE(checks.find("\"failed\": 0"), std::string::npos);
  EXPECT_NE(checks.find("\"config\""), std::string::npos);
}

TEST(Cli, EverySubcommandIsIdempotent) {
  const std::string cfg =
      "{\"coefficients\": {\"source\": \"generator\", \"generator\": \"uniform_1d\", \"seed\": 4, \"T\": 48},"
      " \"wells\": {\"mu_bar\": \"lambda2+delta\", \"delta\": \"1/T\"},"
      " \"eigs\": {\"count\": 4, \"localized\": true, \"write_vectors\": true},"
      " \"realization\": {\"seed\": 3, \"T\": 64},"
      " \"ensemble\": {\"T\": [32, 64, 128], \"realizations\": 4},"
      " \"demo2d\": {\"T\": 12, \"p\": 2, \"eigen_count\": 8, \"target\": 3}}";
  for (const auto& sub : cli::subcommands()) {
    const fs::path a = scratch("idem_a_" + sub);
    const fs::path b = scratch("idem_b_" + sub);
    std::string log;
    ASSERT_EQ(run(sub, cfg, a, &log), 0) << sub << ": " << log;
    ASSERT_EQ(run(sub, cfg, b), 0) << sub;
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
      ++files;
      EXPECT_EQ(read_text_file(entry.path()), read_text_file(b / entry.path().filename()))
          << sub << " " << entry.path().filename();
    }
    EXPECT_GT(files, 0u) << sub;
  }
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("exit");
  EXPECT_EQ(run("bogus", "{}", dir), 2);
  const std::string degenerate =
      "{\"grid\": {\"dim\": 1, \"extent\": [8], \"cells_per_unit\": 1},"
      " \"coefficients\": {\"source\": \"constant\", \"value\": 0.0}}";
  EXPECT_EQ(run("landscape", degenerate, dir), 1);
  const std::string err = read_text_file(dir / "error.json");
  EXPECT_NE(err.find("\"DegeneratePotential\""), std::string::npos);
  const std::string missing =
      "{\"grid\": {\"dim\": 1, \"extent\": [8], \"cells_per_unit\": 1},"
      " \"coefficients\": {\"source\": \"file\", \"path\": \"/nonexistent/v.csv\"}}";
  EXPECT_EQ(run("landscape", missing, dir), 1);
}

}  // namespace
}  // namespace effpot
