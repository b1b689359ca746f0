#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "app.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = fsilab::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    v.push_back(l);
  }
  return v;
}

// Data rows only: no '#' comments, no header.
std::vector<std::vector<std::string>> rows(const std::string& text) {
  std::vector<std::vector<std::string>> v;
  bool header = true;
  for (const auto& l : lines(text)) {
    if (l.starts_with("#")) {
      continue;
    }
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream in(l);
    for (std::string c; std::getline(in, c, ',');) {
      cells.push_back(c);
    }
    v.push_back(cells);
  }
  return v;
}

std::string header(const std::string& text) {
  for (const auto& l : lines(text)) {
    if (!l.starts_with("#")) {
      return l;
    }
  }
  return {};
}

std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fsilab_test_" + name);
}

}  // namespace

TEST(Cli, HelpAndVersion) {
  auto r = cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("kepler"), std::string::npos);
  r = cli({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, std::string(FSI_VERSION) + "\n");
}

TEST(Cli, MissingSubcommandIsUsageError) {
  const auto r = cli({});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, SchemesListing) {
  const auto r = cli({"schemes"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(header(r.out), "name,family,params,order,forward,note");
  EXPECT_NE(r.out.find("\nC,4acb,"), std::string::npos);
  EXPECT_NE(r.out.find("\nTI,second-order,"), std::string::npos);
}

TEST(Cli, StampCarriesEffectiveConfiguration) {
  const auto r = cli({"coeffs", "--scheme", "builtin:C", "--precision", "80"});
  ASSERT_EQ(r.code, 0);
  const auto first = lines(r.out).front();
  EXPECT_TRUE(first.starts_with("# fsilab " FSI_VERSION));
  EXPECT_NE(first.find("precision=80"), std::string::npos);
  EXPECT_NE(first.find("coeffs.scheme=\"builtin:C\""), std::string::npos);
  EXPECT_EQ(first.find("kepler."), std::string::npos);
}

TEST(Cli, CoeffsOfC) {
  const auto r = cli({"coeffs", "--scheme", "builtin:C"});
  ASSERT_EQ(r.code, 0);
  std::map<std::string, double> v;
  for (const auto& row : rows(r.out)) {
    v[row[0]] = std::stod(row[1]);
  }
  EXPECT_NEAR(v["eTTV"], 0, 1e-40);
  EXPECT_NEAR(v["eVTV"], 0, 1e-40);
  EXPECT_NEAR(v["u0"], 1.0 / 192, 1e-16);
  EXPECT_EQ(v["forward"], 1);
  EXPECT_NEAR(v["correctable_alpha"], 0.9, 1e-15);
}

TEST(Cli, ParameterisedBuiltinMatchesPreset) {
  const auto a = cli({"coeffs", "--scheme", "builtin:4acb(t0=1/6,alpha=0)"});
  const auto b = cli({"coeffs", "--scheme", "builtin:C"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(rows(a.out), rows(b.out));
}

TEST(Cli, SchemeFileMatchesBuiltin) {
  const auto path = tmp("ti.scheme");
  std::ofstream(path) << "fsi-scheme 1\nname = TI\nnominal_order = 2\nstage = drift 1/2\n"
                         "stage = kick 1 1/24\nstage = drift 1/2\n";
  const auto a = cli({"coeffs", "--scheme", "file:" + path.string()});
  const auto b = cli({"coeffs", "--scheme", "builtin:TI"});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto ra = rows(a.out);
  const auto rb = rows(b.out);
  ASSERT_EQ(ra.size(), rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    EXPECT_EQ(ra[i][0], rb[i][0]);
    EXPECT_NEAR(std::stod(ra[i][1]), std::stod(rb[i][1]), 1e-15) << ra[i][0];
  }
}

TEST(Cli, BadSelectorsAreUsageErrors) {
  for (const std::string s : {"builtin:nope", "builtin:C(t0=1)", "builtin:4acb", "nonsense",
                              "builtin:4acb(t0=0.1", "file:/nonexistent/x.scheme"}) {
    const auto r = cli({"coeffs", "--scheme", s});
    EXPECT_EQ(r.code, 2) << s;
    EXPECT_NE(r.err.find("usage error"), std::string::npos) << s;
  }
}

TEST(Cli, OscillatorSeriesOfTI) {
  const auto r = cli({"oscillator", "--scheme", "builtin:TI", "--eps", "0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(header(r.out), "quantity,value,error,prediction,value_ext");
  std::map<std::string, std::vector<std::string>> v;
  for (const auto& row : rows(r.out)) {
    v[row[0]] = row;
  }
  EXPECT_NEAR(std::stod(v["c2"][1]), 0, 1e-30);
  EXPECT_NEAR(std::stod(v["c4"][1]), -1.0 / 720, 1e-15);
  EXPECT_NEAR(std::stod(v["E6"][1]), std::stod(v["E6"][3]), 1e-15);
  ASSERT_TRUE(v.contains("omega_A"));
  EXPECT_NE(r.out.find("energy leading exponent 6"), std::string::npos);
}

TEST(Cli, OscillatorTrajectory) {
  const auto r = cli({"oscillator", "--scheme", "builtin:leapfrog", "--eps", "0.1", "--steps",
                         "20", "--sample-every", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(header(r.out), "t,q,p,H,H_A,drift");
  const auto data = rows(r.out);
  ASSERT_EQ(data.size(), 5u);
  EXPECT_NEAR(std::stod(data.back()[0]), 2.0, 1e-12);
  // The second-order shadow Hamiltonian drifts far less than H itself varies.
  for (const auto& row : data) {
    EXPECT_LT(std::abs(std::stod(row[5])), 1e-4);
  }
}

TEST(Cli, TrajectoryNeedsEps) {
  EXPECT_EQ(cli({"oscillator", "--scheme", "builtin:TI", "--steps", "10"}).code, 2);
}

TEST(Cli, KeplerCurve) {
  const auto r = cli({"kepler", "--scheme", "builtin:C", "--e", "0.9", "--sample-every", "500"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(header(r.out), "t/T,h4,theta,theta4");
  const auto data = rows(r.out);
  ASSERT_EQ(data.size(), 11u);
  EXPECT_EQ(data.front()[0], "0");
  EXPECT_EQ(data.back()[0], "1");
  EXPECT_NEAR(std::stod(data.back()[3]), 0.003557, 1e-5);
}

TEST(Cli, KeplerKindSelectsColumns) {
  auto r = cli({"kepler", "--scheme", "builtin:C", "--py", "0.1", "--kind", "energy",
                   "--sample-every", "1000"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(header(r.out), "t/T,h4");
  r = cli({"kepler", "--scheme", "builtin:C", "--py", "0.1", "--kind", "angle", "--shadow",
              "--sample-every", "1000"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(header(r.out), "t/T,theta,theta4,H,H_A,drift");
}

TEST(Cli, KeplerSweepKeepsOrder) {
  const auto r = cli({"kepler", "--scheme", "builtin:C", "--e-list", "0.95,0.9,0.0",
                         "--threads", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto data = rows(r.out);
  ASSERT_EQ(data.size(), 3u);
  EXPECT_NEAR(std::stod(data[0][0]), 0.95, 1e-15);
  EXPECT_NEAR(std::stod(data[1][0]), 0.9, 1e-15);
  EXPECT_EQ(data[2][5], "degenerate");
  EXPECT_EQ(data[0][5], "ok");
}

TEST(Cli, KeplerUsageErrors) {
  EXPECT_EQ(cli({"kepler", "--scheme", "builtin:C"}).code, 2);
  EXPECT_EQ(cli({"kepler", "--scheme", "builtin:C", "--e", "0.9", "--N", "2999"}).code, 2);
  EXPECT_EQ(cli({"kepler", "--scheme", "builtin:C", "--e", "0.9", "--py", "0.1"}).code, 2);
  EXPECT_EQ(cli({"kepler", "--scheme", "builtin:C", "--e", "1.5"}).code, 2);
  EXPECT_EQ(cli({"kepler", "--scheme", "builtin:C", "--e", "0.9", "--kind", "x"}).code, 2);
}

TEST(Cli, UnboundOrbitIsComputationError) {
  const auto r = cli({"kepler", "--scheme", "builtin:C", "--py", "0.5"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, ScanFreq6) {
  const auto r = cli({"scan", "--objective", "freq6", "--from", "0.1", "--to", "0.2",
                         "--points", "11", "--threads", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(header(r.out), "t0,value,status");
  EXPECT_EQ(rows(r.out).size(), 11u);
  EXPECT_NE(r.out.find("# min t0 = 0.12129084"), std::string::npos);
}

TEST(Cli, ScanKeplerPrecessionReportsOptimum) {
  const auto r = cli({"scan", "--objective", "kepler-precession", "--from", "0.16", "--to",
                         "0.17", "--points", "5", "--e", "0.936"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# optimum t0 = 0.1660"), std::string::npos);
}

TEST(Cli, ScanUsageErrors) {
  EXPECT_EQ(cli({"scan", "--objective", "freq6", "--from", "0.1", "--to", "0.2", "--points", "2"}).code, 2);
  EXPECT_EQ(cli({"scan", "--objective", "freq6", "--from", "0.2", "--to", "0.1", "--points", "5"}).code, 2);
  EXPECT_EQ(cli({"scan", "--objective", "freq6"}).code, 2);
  EXPECT_EQ(cli({"scan", "--objective", "nope", "--from", "0", "--to", "1", "--points", "5"}).code, 2);
}

TEST(Cli, FigureColumnsAreNumeric) {
  const auto r = cli({"figure", "5", "--sample-every", "1000", "--scheme", "builtin:leapfrog"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(header(r.out), "t/T,theta4_C,theta4_Opt-C,theta4_leapfrog");
  for (const auto& row : rows(r.out)) {
    for (const auto& cell : row) {
      std::size_t used = 0;
      (void)std::stod(cell, &used);
      EXPECT_EQ(used, cell.size()) << cell;
    }
  }
  EXPECT_EQ(cli({"figure", "8"}).code, 2);
}

TEST(Cli, OutputFileWrittenOnlyOnSuccess) {
  const auto good = tmp("good.csv");
  const auto bad = tmp("bad.csv");
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
  auto r = cli({"schemes", "--out", good.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(good);
  std::string first;
  std::getline(in, first);
  EXPECT_TRUE(first.starts_with("# fsilab"));

  r = cli({"kepler", "--scheme", "builtin:C", "--py", "0.5", "--out", bad.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(std::filesystem::exists(bad));
}

TEST(Cli, ConfigFile) {
  const auto cfg = tmp("run.toml");
  std::ofstream(cfg) << "threads = 2\n[kepler]\nscheme = \"builtin:C\"\ne = 0.9\nsample-every = 2500\n";
  auto r = cli({"--config", cfg.string(), "kepler"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(rows(r.out).size(), 3u);
  EXPECT_NE(r.out.find("threads=2"), std::string::npos);

  std::ofstream(cfg) << "[kepler]\nscheme = \"builtin:C\"\ne = 0.9\ntypo = 1\n";
  r = cli({"--config", cfg.string(), "kepler"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, UnknownOptionIsUsageError) {
  EXPECT_EQ(cli({"coeffs", "--scheme", "builtin:C", "--bogus"}).code, 2);
}
