#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "pdmq/harness.hpp"

using namespace pdmq;
using namespace pdmq::harness;

namespace {

const std::string kModel2 = "power=2\nfield=none\nQ=1\nB0=1\neta=1\nlambda=0\nkz=0\nm=1:3\nn=0:2";

std::string csv(const Table& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

ErrorKind parse_error(const std::string& text, std::string* message = nullptr) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  return ErrorKind::DomainError;  // sentinel: no error
}

double number(const Cell& c) { return std::get<double>(c); }

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i] == name) return i;
  ADD_FAILURE() << "no column " << name;
  return 0;
}

}  // namespace

TEST(ParseConfig, HappyPath) {
  const auto c = parse_config(kModel2);
  EXPECT_EQ(c.problem, ProblemKind::Pdm);
  EXPECT_EQ(c.power, 2);
  EXPECT_EQ(c.field, ElectricFieldKind::None);
  EXPECT_EQ(c.m.first, 1);
  EXPECT_EQ(c.m.last, 3);
  EXPECT_EQ(c.n.values(), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(c.grid_n, 4000u);
  EXPECT_FALSE(c.rho_max.has_value());
  EXPECT_EQ(c.format, OutputFormat::Csv);
}

TEST(ParseConfig, CommentsWhitespaceAndOptionalKeys) {
  const auto c = parse_config("# header\n" + kModel2 + "\n  grid_n = 2000  # finer\nrho_max=15\nformat=json\n\n");
  EXPECT_EQ(c.grid_n, 2000u);
  ASSERT_TRUE(c.rho_max.has_value());
  EXPECT_EQ(*c.rho_max, 15.0);
  EXPECT_EQ(c.format, OutputFormat::Json);
}

TEST(ParseConfig, Errors) {
  std::string msg;
  EXPECT_EQ(parse_error("power=3\nfield=none\nQ=1\nB0=1\neta=1\nlambda=0\nkz=0\nm=1\nn=0"), ErrorKind::UnsupportedProfile);
  EXPECT_EQ(parse_error("power=1\nfield=none\nQ=1\nB0=-1\neta=1\nlambda=0\nkz=0\nm=1\nn=0", &msg), ErrorKind::ConfigError);
  EXPECT_NE(msg.find("line"), std::string::npos);
  EXPECT_EQ(parse_error(kModel2 + "\ncolour=blue", &msg), ErrorKind::ConfigError);
  EXPECT_NE(msg.find("line 10"), std::string::npos);
  EXPECT_NE(msg.find("colour"), std::string::npos);
  EXPECT_EQ(parse_error("power=2\nfield=none\nQ=1\nB0=1\neta=1\nlambda=0\nm=1\nn=0", &msg), ErrorKind::ConfigError);
  EXPECT_NE(msg.find("kz"), std::string::npos);
  EXPECT_EQ(parse_error(kModel2 + "\nQ=2"), ErrorKind::ConfigError);
  EXPECT_EQ(parse_error("power=2\nfield=none\nQ=abc\nB0=1\neta=1\nlambda=0\nkz=0\nm=1\nn=0", &msg), ErrorKind::ConfigError);
  EXPECT_NE(msg.find("line 3"), std::string::npos);
  EXPECT_EQ(parse_error("power=2\nfield=none\nQ=1\nB0=1\neta=1\nlambda=0\nkz=0\nm=3:1\nn=0"), ErrorKind::ConfigError);
  EXPECT_EQ(parse_error("power=2\nfield=magnetic\nQ=1\nB0=1\neta=1\nlambda=0\nkz=0\nm=1\nn=0"), ErrorKind::ConfigError);
  EXPECT_EQ(parse_error(kModel2 + "\ngrid_n=50"), ErrorKind::ConfigError);
  EXPECT_EQ(parse_error("power=2\nfield=none\nQ=1\nB0=1\neta=0\nlambda=0\nkz=0\nm=1\nn=0"), ErrorKind::ConfigError);
  EXPECT_EQ(parse_error("just words"), ErrorKind::ConfigError);
}

TEST(ParseConfig, OscillatorMode) {
  const auto c = parse_config("problem=oscillator\nn=0:2\nrho_max=12");
  EXPECT_EQ(c.problem, ProblemKind::Oscillator);
  EXPECT_EQ(parse_error("problem=oscillator\nn=0:2\nQ=1"), ErrorKind::ConfigError);
}

TEST(ParseConfig, LoadFromFile) {
  EXPECT_NO_THROW(load_config(std::string(PDMQ_CONFIG_DIR) + "/model2_none.cfg"));
  EXPECT_THROW(load_config("/nonexistent/file.cfg"), Error);
}

TEST(Output, CsvQuotingAndLineEndings) {
  Table t;
  t.columns = {"a", "b,c"};
  t.rows.push_back({std::string("say \"hi\""), 0.1});
  t.rows.push_back({Cell{}, true});
  EXPECT_EQ(csv(t), "a,\"b,c\"\r\n\"say \"\"hi\"\"\",0.1\r\n,true\r\n");
}

TEST(Output, FifteenSignificantDigits) {
  Table t;
  t.columns = {"x"};
  t.rows.push_back({1.0 / 3.0});
  t.rows.push_back({std::numeric_limits<double>::quiet_NaN()});
  EXPECT_EQ(csv(t), "x\r\n0.333333333333333\r\n\r\n");
  const auto j = to_json(t);
  EXPECT_TRUE(j["rows"][1]["x"].is_null());
  EXPECT_EQ(j["rows"][0]["x"].get<double>(), 0.333333333333333);
}

TEST(Spectrum, ModelTwoRows) {
  auto c = parse_config(kModel2);
  c.m = {1, 2};
  c.n = {0, 0};
  const auto t = cmd_spectrum(c);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"model", "field", "m", "n_rho", "k_z", "epsilon", "ell_tilde", "valid"}));
  EXPECT_NEAR(number(t.rows[0][5]), 0.777088, 1e-6);
  EXPECT_NEAR(number(t.rows[1][5]), 0.573248, 1e-6);
}

TEST(Spectrum, ModelOneAndInvalidRows) {
  auto c = parse_config("power=1\nfield=none\nQ=1\nB0=1\neta=1\nlambda=0\nkz=0\nm=0\nn=0");
  EXPECT_NEAR(number(cmd_spectrum(c).rows[0][5]), 3.162278, 1e-6);

  auto c2 = parse_config("power=2\nfield=none\nQ=1\nB0=1\neta=1\nlambda=0\nkz=0\nm=-1:1\nn=0");
  const auto t = cmd_spectrum(c2);
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(std::get<bool>(t.rows[0][7]), false);
  EXPECT_TRUE(std::holds_alternative<std::monostate>(t.rows[0][5]));
  EXPECT_EQ(std::get<bool>(t.rows[2][7]), true);
  EXPECT_NE(csv(t).find("2,none,-1,0,0,,"), std::string::npos);
}

TEST(Solve, OscillatorCalibration) {
  const auto c = load_config(std::string(PDMQ_CONFIG_DIR) + "/oscillator.cfg");
  const auto t = cmd_solve(c);
  ASSERT_EQ(t.rows.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(number(t.rows[k][5]), 4.0 * k + 3.0, 1e-6);
}

TEST(Solve, ModelTwoMatchesSpectrum) {
  const auto c = parse_config(kModel2);
  const auto s = cmd_spectrum(c), n = cmd_solve(c);
  ASSERT_EQ(s.rows.size(), n.rows.size());
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const double a = number(s.rows[i][5]), b = number(n.rows[i][5]);
    EXPECT_NEAR(b, a, 1e-6 * a);
    EXPECT_EQ(std::get<long long>(n.rows[i][7]), std::get<long long>(n.rows[i][3]));  // nodes == n_rho
  }
}

TEST(Solve, Deterministic) {
  const auto c = parse_config(kModel2);
  EXPECT_EQ(csv(cmd_solve(c)), csv(cmd_solve(c)));
  EXPECT_EQ(to_json(cmd_spectrum(c)).dump(), to_json(cmd_spectrum(c)).dump());
}

TEST(Solve, WritesWavefunctions) {
  auto c = parse_config(kModel2);
  c.m = {1, 1};
  c.n = {0, 1};
  const auto dir = std::filesystem::temp_directory_path() / "pdmq_wavefunctions_test";
  std::filesystem::remove_all(dir);
  const auto t = cmd_solve(c, dir);
  std::ifstream in(dir / "wavefunction_m1_n1.csv");
  ASSERT_TRUE(in.good());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "rho,R\r");
  std::size_t lines = 0;
  for (std::string l; std::getline(in, l);) ++lines;
  EXPECT_EQ(static_cast<long long>(lines), std::get<long long>(t.rows[1][column(t, "grid_n")]));
  EXPECT_TRUE(std::filesystem::exists(dir / "wavefunction_m1_n0.csv"));
  std::filesystem::remove_all(dir);
}

TEST(Verify, ModelTwoPassesWithSchema) {
  const auto out = cmd_verify(parse_config(kModel2));
  EXPECT_TRUE(out.passed);
  const auto& t = out.table;
  ASSERT_EQ(t.rows.size(), 9u);
  for (const auto& row : t.rows) {
    EXPECT_LE(number(row[column(t, "rel_gap")]), 1e-6);
    EXPECT_LE(number(row[column(t, "analytic_residual")]), 1e-6);
    EXPECT_EQ(std::get<std::string>(row[column(t, "analytic_provenance")]), "analytic");
    EXPECT_EQ(std::get<std::string>(row[column(t, "numeric_provenance")]), "numeric");
    EXPECT_TRUE(std::get<bool>(row[column(t, "within_tolerance")]));
  }
  const auto j = to_json(t);
  EXPECT_TRUE(j.contains("config"));
  EXPECT_TRUE(j.contains("rows"));
  EXPECT_TRUE(j.contains("summary"));
  EXPECT_EQ(j["rows"].size(), 9u);
  EXPECT_TRUE(j["summary"]["passed"].get<bool>());
  EXPECT_LE(j["summary"]["max_rel_gap_model2"].get<double>(), 1e-6);
  EXPECT_EQ(j["config"]["power"].get<int>(), 2);
}

TEST(Verify, ModelOneReportsGapWithoutFailing) {
  const auto c = load_config(std::string(PDMQ_CONFIG_DIR) + "/model1_none.cfg");
  const auto out = cmd_verify(c);
  EXPECT_TRUE(out.passed);
  const auto& t = out.table;
  ASSERT_EQ(t.rows.size(), 9u);
  for (const auto& row : t.rows) {
    EXPECT_FALSE(std::get<bool>(row[column(t, "heun_terminates")]));
    EXPECT_GT(number(row[column(t, "abs_gap")]), 0.0);
    EXPECT_TRUE(std::holds_alternative<double>(row[column(t, "analytic_residual")]));
  }
  EXPECT_EQ(csv(t), csv(cmd_verify(c).table));
}

TEST(Verify, LinearShiftModelTwo) {
  const auto c = load_config(std::string(PDMQ_CONFIG_DIR) + "/model2_linear.cfg");
  const auto out = cmd_verify(c);
  EXPECT_TRUE(out.passed);
  for (const auto& row : out.table.rows) EXPECT_LE(std::abs(number(row[column(out.table, "shift_residual")])), 1e-8);
}

TEST(Verify, FailsWhenModelTwoMissesTolerance) {
  auto c = parse_config(kModel2);
  c.rho_max = 3.0;  // truncated domain
  c.grid_n = 200;
  const auto out = cmd_verify(c);
  EXPECT_FALSE(out.passed);
  bool found = false;
  for (const auto& [k, v] : out.table.summary)
    if (k == "rows_failed") found = std::get<long long>(v) > 0;
  EXPECT_TRUE(found);
}

TEST(Wavefunction, NumericAndAnalyticAgree) {
  auto c = parse_config(kModel2);
  const auto a = cmd_wavefunction(c, 2, 1, WavefunctionSource::Analytic);
  const auto n = cmd_wavefunction(c, 2, 1, WavefunctionSource::Numeric);
  ASSERT_EQ(a.rows.size(), n.rows.size());
  double worst = 0.0;
  for (std::size_t j = 0; j < a.rows.size(); ++j) worst = std::max(worst, std::abs(number(a.rows[j][1]) - number(n.rows[j][1])));
  EXPECT_LE(worst, 1e-4);
}

TEST(Debug, HeunAndKummerTables) {
  const auto h = cmd_heun({1.0, 0.0, 3.0, 0.0}, 0.7, 0);
  EXPECT_EQ(h.rows.size(), 1u);
  EXPECT_EQ(std::get<bool>(h.summary[1].second), true);
  const auto f = cmd_f11(-2.0, 1.5, 2.0);
  EXPECT_NEAR(number(f.rows[0][3]), -0.6, 1e-15);
}
