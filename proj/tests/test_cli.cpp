#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "specquant/models.hpp"
#include "specquant/sample.hpp"

using namespace specquant;
using namespace specquant::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "specquant");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("specquant_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& content) const {
    const auto file = path_ / name;
    std::ofstream(file) << content;
    return file.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::istringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    rows.push_back(fields);
  }
  return rows;
}

std::string write_series(const TempDir& dir, const std::string& name, const SpectralModel& model, std::size_t n,
                         std::uint64_t seed) {
  std::ostringstream out;
  write_series_csv(out, generate(model, n, seed));
  return dir.write(name, out.str());
}

}  // namespace

TEST(ParseAngle, Forms) {
  EXPECT_DOUBLE_EQ(parse_angle("1.5"), 1.5);
  EXPECT_DOUBLE_EQ(parse_angle("pi"), kPi);
  EXPECT_DOUBLE_EQ(parse_angle("pi/4"), kPi / 4);
  EXPECT_DOUBLE_EQ(parse_angle("-3pi/4"), -3 * kPi / 4);
  EXPECT_DOUBLE_EQ(parse_angle("0.25*pi"), kPi / 4);
  EXPECT_DOUBLE_EQ(parse_angle(" PI / 2 "), kPi / 2);
  EXPECT_THROW(parse_angle("tau"), ArgumentError);
  EXPECT_THROW(parse_angle("pi/0"), ArgumentError);
}

TEST(ParseModelTag, ShorthandAndRoundTrip) {
  const auto wn = parse_model_tag("WN");
  EXPECT_TRUE(std::holds_alternative<WhiteNoise>(wn.noise()));
  const auto ar = parse_model_tag("ar1(-0.9)");
  EXPECT_DOUBLE_EQ(std::get<Ar1>(ar.noise()).coeff, -0.9);
  const auto ma = parse_model_tag("MA1(0.9,v=2)");
  EXPECT_DOUBLE_EQ(std::get<Ma1>(ma.noise()).variance, 2.0);
  const auto mixed = parse_model_tag("WN+cos(0.5@pi/2)");
  ASSERT_EQ(mixed.atoms().size(), 1u);
  EXPECT_DOUBLE_EQ(mixed.atoms()[0].frequency, kPi / 2);
  EXPECT_DOUBLE_EQ(mixed.atoms()[0].amplitude, 0.5);

  for (const char* tag : {"WN", "MA1(0.9)", "AR1(-0.9)", "AR1(0.5,v=3)", "WN(v=2)+cos(1@0.75)"}) {
    EXPECT_EQ(parse_model_tag(tag).tag(), tag);
  }
  EXPECT_THROW(parse_model_tag("ARMA(1,1)"), ArgumentError);
  EXPECT_THROW(parse_model_tag("AR1"), ArgumentError);
  EXPECT_THROW(parse_model_tag("AR1(1.2)"), ArgumentError);
  EXPECT_THROW(parse_model_tag("WN+sin(1@1)"), ArgumentError);
}

TEST(ParseConfig, AllPresetsValidate) {
  for (const auto& name : preset_names()) {
    EXPECT_NO_THROW(parse_config(preset_text(name), preset_command(name))) << name;
  }
  const auto t1 = parse_config(preset_text("table1"), Command::estimate);
  EXPECT_EQ(t1.models.size(), 4u);
  EXPECT_EQ(t1.sizes, std::vector<std::size_t>{30});
  EXPECT_EQ(t1.levels.size(), 6u);
  const auto t4 = parse_config(preset_text("table4"), Command::power);
  EXPECT_EQ(t4.sizes, std::vector<std::size_t>{50});
  EXPECT_DOUBLE_EQ(t4.alpha, 0.1);
  EXPECT_FALSE(t4.m.has_value());
}

TEST(ParseConfig, ErrorsAreLineAnchored) {
  auto message = [](const std::string& text, Command command) -> std::string {
    try {
      parse_config(text, command);
    } catch (const ConfigError& e) {
      return e.what();
    }
    return "no error";
  };
  EXPECT_EQ(message("models: [WN]\nn: 30\np: [0.5, 1.5]\n", Command::estimate).rfind("line 3: p:", 0), 0u);
  EXPECT_EQ(message("models: [WN]\nn: [30, 50]\np: 0.7\nm: 40\n", Command::estimate).rfind("line 4: m:", 0), 0u);
  EXPECT_EQ(message("models: [WN, MA1(0.9)]\nn: 50\np: 0.7\nalpha: 1.0\n", Command::power).rfind("line 4: alpha:", 0),
            0u);
  EXPECT_EQ(message("models: [WN]\nn: 30\np: 0.7\ncolour: red\n", Command::estimate).rfind("line 4: colour:", 0), 0u);
  EXPECT_EQ(message("models:\n  - WN\n  - AR1(1.5)\nn: 30\np: 0.7\n", Command::estimate).rfind("line 3: models[1]:", 0),
            0u);
  EXPECT_EQ(message("models: [WN]\nn: 1\np: 0.7\n", Command::estimate).rfind("line 2: n:", 0), 0u);
  EXPECT_EQ(message("models: [WN]\np: [0.7\n", Command::estimate).rfind("line ", 0), 0u);
  EXPECT_EQ(message("model: WN\nn: 64\nbeta: 1\nlambda: 3.13\n", Command::diagnose).rfind("line 4: lambda:", 0), 0u);
  EXPECT_NE(message("n: 30\np: 0.7\n", Command::power).find("models"), std::string::npos);
}

TEST(ParseConfig, JsonAndMappingModels) {
  const std::string json = R"({
  "models": [{"noise": {"family": "ar1", "coeff": 0.9}, "label": "ar"},
             {"noise": {"family": "wn"}, "atoms": [{"amplitude": 0.5, "frequency": "pi/2"}]}],
  "n": [30], "p": [0.7], "replications": 5, "kind": "both", "m": "auto"
})";
  const auto cfg = parse_config(json, Command::estimate);
  ASSERT_EQ(cfg.models.size(), 2u);
  EXPECT_EQ(cfg.models[0].label, "ar");
  EXPECT_DOUBLE_EQ(cfg.models[1].model.atoms()[0].frequency, kPi / 2);
  EXPECT_EQ(cfg.kind, "both");
}

TEST(Cli, Table1PresetShape) {
  const auto r = run({"estimate", "--preset", "table1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# source: preset table1"), std::string::npos);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.front()[0], "model");
  std::map<std::string, std::map<std::string, double>> means;
  for (std::size_t i = 1; i < rows.size(); ++i) means[rows[i][0]][rows[i][4]] = std::stod(rows[i][6]);
  ASSERT_EQ(means.size(), 4u);
  for (const auto& [model, by_p] : means) {
    EXPECT_EQ(by_p.at("0.5"), 0.0) << model;
    EXPECT_NEAR(by_p.at("1"), kPi, 1e-9) << model;
  }
  const auto& ar = means.at("AR1(0.9)");
  EXPECT_LE(ar.at("0.5"), ar.at("0.6"));
  EXPECT_LE(ar.at("0.6"), ar.at("0.7"));
  EXPECT_LE(ar.at("0.7"), ar.at("0.8"));
  EXPECT_LE(ar.at("0.8"), ar.at("0.9"));
  EXPECT_LT(ar.at("0.9"), 1.0);
  EXPECT_GT(means.at("AR1(-0.9)").at("0.6"), 2.0);
}

TEST(Cli, EstimateFromInputSeries) {
  TempDir dir;
  const auto series = write_series(dir, "x.csv", SpectralModel(WhiteNoise{1.0}), 64, 99);
  const auto cfg = dir.write("e.yaml", "p: [0.5, 0.7]\nkind: both\n");
  const auto r = run({"estimate", "--config", cfg, "--input", series});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"p", "lambda_hat", "kind", "n", "m", "seed"}));
  EXPECT_EQ(rows[1][1], "0");
  EXPECT_EQ(rows[1][5], "99");
  EXPECT_EQ(rows[3][2], "smoothed");
  EXPECT_EQ(rows[3][4], "5");
}

TEST(Cli, TestExitCodes) {
  TempDir dir;
  const auto cfg = dir.write("t.yaml", "model: WN\np: 0.7\nalpha: 0.1\nsigma_replications: 100\nbase_seed: 3\n");
  const auto strong = write_series(dir, "strong.csv", SpectralModel(WhiteNoise{1.0}, {{3.0, 3 * kPi / 4}}), 50, 5);
  const auto r = run({"test", "--config", cfg, "--input", strong});
  EXPECT_EQ(r.code, 2) << r.out << r.err;
  EXPECT_NE(r.out.find("reject,true"), std::string::npos);

  int accepted = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto null_series = write_series(dir, "null.csv", SpectralModel(WhiteNoise{1.0}), 50, 1000 + seed);
    const auto nr = run({"test", "--config", cfg, "--input", null_series});
    ASSERT_TRUE(nr.code == 0 || nr.code == 2) << nr.err;
    if (nr.code == 0) ++accepted;
  }
  EXPECT_GE(accepted, 14);

  EXPECT_EQ(run({"test", "--config", cfg, "--input", dir.file("missing.csv")}).code, 1);
  EXPECT_EQ(run({"test", "--config", dir.file("missing.yaml"), "--input", strong}).code, 1);
  const auto bad = dir.write("bad.csv", "# seed: 1\nvalue\n1.0\n2.0\noops\n");
  const auto br = run({"test", "--config", cfg, "--input", bad});
  EXPECT_EQ(br.code, 1);
  EXPECT_NE(br.err.find("line 5"), std::string::npos) << br.err;
}

TEST(Cli, PowerMatrixLayoutAndDeterminism) {
  TempDir dir;
  const auto cfg = dir.write("p.yaml", "models: [WN, AR1(0.9)]\np: 0.7\nn: 50\nreplications: 20\nsigma_replications: 20\n");
  const auto a = run({"power", "--config", cfg});
  const auto b = run({"power", "--config", cfg});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto rows = csv_rows(a.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"p", "n", "null", "WN", "AR1(0.9)"}));
  EXPECT_EQ(rows[1][3], "--");
  EXPECT_EQ(rows[2][4], "--");
  EXPECT_GE(std::stod(rows[1][4]), 0.9);

  const auto seeded = run({"power", "--config", cfg, "--seed", "77", "--threads", "2"});
  ASSERT_EQ(seeded.code, 0);
  EXPECT_NE(seeded.out.find("# base_seed: 77"), std::string::npos);

  const auto single = dir.write("s.yaml", "models: [WN]\np: 0.7\nn: 50\nreplications: 5\n");
  const auto one = csv_rows(run({"power", "--config", single}).out);
  ASSERT_EQ(one.size(), 2u);
  EXPECT_EQ(one[1], (std::vector<std::string>{"0.7", "50", "WN", "--"}));
}

TEST(Cli, SimulateRoundTripsThroughSeriesReader) {
  TempDir dir;
  const auto cfg = dir.write("s.yaml", "model: AR1(0.5)\nn: 40\nreplications: 1\nbase_seed: 8\n");
  const auto out = dir.file("series.csv");
  ASSERT_EQ(run({"simulate", "--config", cfg, "--out", out}).code, 0);
  std::ifstream in(out);
  const auto series = read_series_csv(in);
  EXPECT_EQ(series.size(), 40u);
  EXPECT_EQ(series.seed, replicate_seed(8, 0));
  EXPECT_EQ(series.values, generate(SpectralModel(Ar1{0.5, 1.0}), 40, replicate_seed(8, 0)).values);

  const auto many = dir.write("m.yaml", "model: WN\nn: 10\nreplications: 3\n");
  const auto rows = csv_rows(run({"simulate", "--config", many}).out);
  EXPECT_EQ(rows.size(), 31u);
}

TEST(Cli, DiagnoseTidyOutput) {
  TempDir dir;
  const auto cfg = dir.write("d.yaml", "diagnostic: tn_variance\nmodel: WN\nlambda: pi/4\nbeta: [0.5, 1]\nn: [32, 64]\nreplications: 50\n");
  const auto r = run({"diagnose", "--config", cfg});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0][0], "n");
  EXPECT_EQ(rows[0][1], "beta");
  EXPECT_EQ(rows[0][2], "variance");

  const auto raw = dir.write("r.yaml", "diagnostic: raw_limit\nmodel: WN\np: 0.7\nn: [60]\nreplications: 50\n");
  const auto rr = run({"diagnose", "--config", raw});
  ASSERT_EQ(rr.code, 0) << rr.err;
  EXPECT_EQ(csv_rows(rr.out).size(), 3u);
}

TEST(Cli, ValidationHappensBeforeWork) {
  TempDir dir;
  const auto cfg = dir.write("bad.yaml", "models: [WN]\nn: 50\np: 0.7\nm: 50\n");
  const auto r = run({"power", "--config", cfg});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 4: m:"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());

  EXPECT_EQ(run({"power", "--preset", "table1"}).code, 1);
  EXPECT_EQ(run({"power", "--preset", "nope"}).code, 1);
  EXPECT_EQ(run({"power"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"power", "--preset", "table4", "--threads", "0"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
  const auto listed = run({"--list-presets"});
  EXPECT_NE(listed.out.find("table5 power"), std::string::npos);
}
