#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "spdeht/cli.hpp"

// SPDEHT_CLI_PATH is injected by the build and points at the installed tool.

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spdeht::cli;

namespace {

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    const fs::path d =
        fs::temp_directory_path() / ("spdeht-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream file(path);
  std::ostringstream text;
  text << file.rdbuf();
  return text.str();
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_tool(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const std::string tag = std::to_string(counter++);
  const fs::path out_path = scratch_dir() / ("stdout_" + tag);
  const fs::path err_path = scratch_dir() / ("stderr_" + tag);
  const std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") +
                          std::string(SPDEHT_CLI_PATH) + " " + args + " > " +
                          out_path.string() + " 2> " + err_path.string();
  const int raw = std::system(cmd.c_str());
  CliResult result;
  result.code = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path path = scratch_dir() / name;
  std::ofstream file(path);
  file << content;
  return path;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream stream(line);
  std::string field;
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

TEST(CliExitCodes, HelpSucceeds) {
  const CliResult res = run_tool("--help");
  EXPECT_EQ(res.code, 0);
  EXPECT_NE(res.out.find("simulate"), std::string::npos);
  EXPECT_NE(res.out.find("sld-table"), std::string::npos);
}

TEST(CliExitCodes, MissingSubcommandIsAUsageError) {
  const CliResult res = run_tool("");
  EXPECT_EQ(res.code, 2);
  EXPECT_FALSE(res.err.empty());
}

TEST(CliExitCodes, UnknownFlagIsAUsageError) {
  EXPECT_EQ(run_tool("test --bogus 1").code, 2);
}

TEST(CliExitCodes, BadFieldValueIsAConfigError) {
  const CliResult res = run_tool(
      "type1 --theta0 1 --theta1 2 --horizon 1 --n-modes 1 --reps 5 "
      "--steps-per-unit 20 --regime sideways");
  EXPECT_EQ(res.code, 2);
  EXPECT_NE(res.err.find("field 'regime'"), std::string::npos);
}

TEST(CliExitCodes, MissingRequiredFieldIsAConfigError) {
  const CliResult res = run_tool("simulate --horizon 1 --n-modes 1");
  EXPECT_EQ(res.code, 2);
  EXPECT_NE(res.err.find("missing required field 'theta'"), std::string::npos);
}

TEST(CliExitCodes, UnwritableOutputIsARuntimeError) {
  const CliResult res = run_tool(
      "simulate --theta 1 --horizon 1 --n-modes 1 --steps-per-unit 20 "
      "--out /nonexistent-dir-zzz/x.csv");
  EXPECT_EQ(res.code, 3);
  EXPECT_NE(res.err.find("cannot open output file"), std::string::npos);
}

TEST(CliSimulate, WritesTheTrajectoryGrid) {
  const fs::path out = scratch_dir() / "traj.csv";
  const CliResult res = run_tool(
      "simulate --theta 1.5 --horizon 2 --steps-per-unit 20 --n-modes 3 "
      "--seed 9 --out " + out.string());
  ASSERT_EQ(res.code, 0) << res.err;
  const auto lines = data_lines(slurp(out));
  ASSERT_EQ(lines.size(), 42u);  // header + 41 grid points
  EXPECT_EQ(lines[0], "t,u_1,u_2,u_3");
  EXPECT_EQ(lines[1].substr(0, 2), "0,");
  EXPECT_EQ(split_csv(lines[41]).size(), 4u);
}

TEST(CliTest, EmitsOneConsistentJsonLine) {
  const CliResult res = run_tool(
      "test --theta 2 --theta0 1 --theta1 2 --horizon 2 --steps-per-unit 50 "
      "--n-modes 1 --seed 4 --alpha 0.1");
  ASSERT_EQ(res.code, 0) << res.err;
  const json j = json::parse(res.out);
  for (const char* key :
       {"statistic", "threshold", "reject", "log_lr", "log_threshold_lr"}) {
    ASSERT_TRUE(j.contains(key)) << key;
  }
  const bool reject = j["reject"].get<bool>();
  EXPECT_EQ(reject, j["log_lr"].get<double>() >= j["log_threshold_lr"].get<double>());
  EXPECT_EQ(reject, j["statistic"].get<double>() <= j["threshold"].get<double>());
}

TEST(CliConfig, FileAndFlagsAgreeAndFlagsWin) {
  const fs::path config = write_file("sim.conf",
                                     "# trajectory settings\n"
                                     "theta = 1.25\n"
                                     "horizon = 2\n"
                                     "n-modes = 2\n"
                                     "steps-per-unit = 20\n"
                                     "seed = 11\n");
  const fs::path a = scratch_dir() / "a.csv";
  const fs::path b = scratch_dir() / "b.csv";
  const fs::path c = scratch_dir() / "c.csv";
  const fs::path d = scratch_dir() / "d.csv";

  ASSERT_EQ(run_tool("simulate --config " + config.string() + " --out " + a.string()).code, 0);
  ASSERT_EQ(run_tool("simulate --theta 1.25 --horizon 2 --n-modes 2 "
                     "--steps-per-unit 20 --seed 11 --out " + b.string()).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));

  ASSERT_EQ(run_tool("simulate --config " + config.string() +
                     " --theta 2.5 --out " + c.string()).code, 0);
  ASSERT_EQ(run_tool("simulate --theta 2.5 --horizon 2 --n-modes 2 "
                     "--steps-per-unit 20 --seed 11 --out " + d.string()).code, 0);
  EXPECT_EQ(slurp(c), slurp(d));
  EXPECT_NE(slurp(c), slurp(a));
}

TEST(CliConfig, ErrorsNameTheConfigLine) {
  const fs::path bad_shape = write_file("bad1.conf", "theta = 1\nwhat is this\n");
  const CliResult shape = run_tool("simulate --config " + bad_shape.string());
  EXPECT_EQ(shape.code, 2);
  EXPECT_NE(shape.err.find("config line 2"), std::string::npos);

  const fs::path bad_key = write_file("bad2.conf", "theta = 1\n\nbogus = 3\n");
  const CliResult key = run_tool("simulate --config " + bad_key.string());
  EXPECT_EQ(key.code, 2);
  EXPECT_NE(key.err.find("config line 3"), std::string::npos);
  EXPECT_NE(key.err.find("unknown key 'bogus'"), std::string::npos);
}

TEST(CliReports, HeaderRoundTripsThroughTheParser) {
  const fs::path out = scratch_dir() / "type1.csv";
  ASSERT_EQ(run_tool("type1 --theta0 1 --theta1 2 --horizon 2 --n-modes 1 "
                     "--steps-per-unit 20 --reps 30 --seed 3 --alpha 0.2 "
                     "--out " + out.string()).code, 0);
  std::ifstream file(out);
  const std::vector<ConfigEntry> header = read_report_header(file);
  ASSERT_FALSE(header.empty());
  RunConfig cfg;
  for (const auto& entry : header) apply_entry(cfg, entry);
  const auto kv = to_key_values(cfg);
  ASSERT_EQ(kv.size(), header.size());
  for (std::size_t i = 0; i < kv.size(); ++i) {
    EXPECT_EQ(kv[i].first, header[i].key);
    EXPECT_EQ(kv[i].second, header[i].value);
  }
}

TEST(CliReports, ByteIdenticalAcrossRunsAndWorkerCounts) {
  const std::string args =
      "type1 --theta0 1 --theta1 2 --horizon 2 --n-modes 1 --steps-per-unit 20 "
      "--reps 40 --seed 6 --alpha 0.2 --out ";
  const fs::path f1 = scratch_dir() / "rep1.csv";
  const fs::path f2 = scratch_dir() / "rep2.csv";
  const fs::path f3 = scratch_dir() / "rep3.csv";
  ASSERT_EQ(run_tool(args + f1.string()).code, 0);
  ASSERT_EQ(run_tool(args + f2.string(), "SPDE_HYPOTEST_THREADS=1").code, 0);
  ASSERT_EQ(run_tool(args + f3.string(), "SPDE_HYPOTEST_THREADS=4").code, 0);
  // the header echoes the output path, so mask that one line before comparing
  const auto canon = [](std::string text) {
    const auto pos = text.find("# out=");
    if (pos != std::string::npos) {
      const auto end = text.find('\n', pos);
      text.erase(pos, end == std::string::npos ? text.size() - pos
                                               : end - pos + 1);
    }
    return text;
  };
  const std::string first = canon(slurp(f1));
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, canon(slurp(f2)));
  EXPECT_EQ(first, canon(slurp(f3)));
}

TEST(CliSweep, MergesErrorRatesPerSweepPoint) {
  const fs::path out = scratch_dir() / "sweep.csv";
  ASSERT_EQ(run_tool("sweep --theta0 1 --theta1 2 --horizon 1 --n-modes 1 "
                     "--steps-per-unit 20 --reps 20 --seed 5 --sweep 1,2 "
                     "--alpha 0.2 --out " + out.string()).code, 0);
  const auto lines = data_lines(slurp(out));
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "horizon,type1,type1_se,power,power_se,type2");
  const auto row1 = split_csv(lines[1]);
  const auto row2 = split_csv(lines[2]);
  ASSERT_EQ(row1.size(), 6u);
  EXPECT_EQ(row1[0], "1");
  EXPECT_EQ(row2[0], "2");
  for (const auto& row : {row1, row2}) {
    EXPECT_DOUBLE_EQ(std::stod(row[3]) + std::stod(row[5]), 1.0);
  }
}

TEST(CliSldTable, ProbeRowsVanishExactly) {
  const fs::path out = scratch_dir() / "sld.csv";
  ASSERT_EQ(run_tool("sld-table --theta0 1 --theta1 2 --sigma 1 --horizon 1 "
                     "--n-modes 1 --table-points 7 --out " + out.string()).code, 0);
  const std::string text = slurp(out);
  const auto lines = data_lines(text);
  ASSERT_GE(lines.size(), 2u);
  EXPECT_EQ(lines[0], "eps,log_m,c,L,H,R");
  int probes_seen = 0;
  bool eta_header_seen = false;
  for (const auto& line : lines) {
    if (line == "eta,rate,eps_eta,variance") {
      eta_header_seen = true;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() == 6 && (fields[0] == "0" || fields[0] == "-1")) {
      ++probes_seen;
      for (std::size_t i = 1; i < fields.size(); ++i) {
        if (i == 2) continue;  // the density limit column
        EXPECT_EQ(std::stod(fields[i]), 0.0) << line;
      }
      // c vanishes at both probes too: q(0) = q(-1) = 0
      EXPECT_EQ(std::stod(fields[2]), 0.0) << line;
    }
  }
  EXPECT_EQ(probes_seen, 2);
  EXPECT_TRUE(eta_header_seen);
}

TEST(CliReports, JsonFormatParses) {
  const fs::path out = scratch_dir() / "type1.json";
  ASSERT_EQ(run_tool("type1 --theta0 1 --theta1 2 --horizon 2 --n-modes 1 "
                     "--steps-per-unit 20 --reps 25 --seed 8 --alpha 0.2 "
                     "--format json --out " + out.string()).code, 0);
  const json j = json::parse(slurp(out));
  ASSERT_TRUE(j.contains("config"));
  ASSERT_TRUE(j.contains("points"));
  EXPECT_EQ(j["config"]["alpha"].get<std::string>(),
            "0.20000000000000001");  // %.17g of 0.2
  ASSERT_EQ(j["points"].size(), 1u);
  EXPECT_TRUE(j["points"][0].contains("horizon"));
  EXPECT_TRUE(j["points"][0]["estimate"].is_number());
}

TEST(CliCompare, PairedComparisonKeepsNesting) {
  const fs::path out = scratch_dir() / "compare.json";
  ASSERT_EQ(run_tool("compare --theta0 1 --theta1 1.5 --horizon 2 --n-modes 2 "
                     "--steps-per-unit 20 --reps 50 --seed 7 "
                     "--threshold-offset -0.5 --format json --out " +
                     out.string()).code, 0);
  const json j = json::parse(slurp(out));
  ASSERT_EQ(j["points"].size(), 2u);
  for (const auto& pt : j["points"]) {
    EXPECT_EQ(pt["nested_violations"].get<double>(), 0.0);
    EXPECT_TRUE(pt.contains("under"));
    EXPECT_DOUBLE_EQ(pt["log_thr_b"].get<double>(),
                     pt["log_thr_a"].get<double>() - 0.5);
  }
}
