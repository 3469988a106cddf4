#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sqzres/wigner.hpp"
#include "sqzres_cli/config.hpp"
#include "sqzres_cli/run.hpp"

using namespace sqzres;
using namespace sqzres::cli;
namespace fs = std::filesystem;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& ex) {
    return ex.what();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

class CliRun : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sqzres_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the executable on `config`; returns its exit status.
  int run_exe(const std::string& config, const std::string& flags = "", const std::string& out = "out") {
    const fs::path cfg = dir_ / "run.cfg";
    std::ofstream(cfg, std::ios::binary) << config;
    const std::string cmd = std::string(SQZRES_EXE) + " --config " + cfg.string() + " --out " +
                            (dir_ / out).string() + " " + flags + " > " + (dir_ / "stdout.txt").string() + " 2> " +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string stdout_text() const { return slurp(dir_ / "stdout.txt"); }
  std::string stderr_text() const { return slurp(dir_ / "stderr.txt"); }

  fs::path dir_;
};

}  // namespace

TEST(Config, MinimalBeamRoundTrips) {
  const RunConfig cfg = parse_config("[beam]\nn_atoms = 200\ntau = 3.1\nlambda1 = 0.1\nlambda2 = 0.076\n");
  EXPECT_EQ(cfg.experiment, Experiment::beam);
  EXPECT_EQ(cfg.beam.n_atoms, 200);
  EXPECT_DOUBLE_EQ(cfg.beam.tau, 3.1);
  EXPECT_EQ(cfg.beam.lambda1, cplx(0.1, 0.0));
  EXPECT_EQ(cfg.beam.lambda2, cplx(0.076, 0.0));
  EXPECT_EQ(parse_config(serialize(cfg)), cfg);
}

TEST(Config, EveryExperimentRoundTrips) {
  RunConfig a = parse_config("[bath]\nlambda = 0.03-0.01i\nphis = 0, 1\nt_end = 100/g\nmodel = static\n");
  EXPECT_EQ(parse_config(serialize(a)), a);
  RunConfig b = parse_config(
      "[wigner]\nmodel = dispersive\nclock = reset\nomega1 = 15+2i\nomega2 = -30\nDelta1 = 200\nDelta2 = 300\n"
      "delta2 = 0.5\ncheckpoints = 0, 7\nx_count = 11\n[output]\ndir = somewhere\n");
  EXPECT_EQ(parse_config(serialize(b)), b);
  EXPECT_EQ(b.output_dir, "somewhere");
  EXPECT_TRUE(b.wigner.beam.dispersive);
  EXPECT_FALSE(b.wigner.beam.drive.delta1.has_value());
  RunConfig c = parse_config("[design]\nr = 0.5\nalpha = 0.2i\nscale = 0.05\n");
  EXPECT_EQ(parse_config(serialize(c)), c);
  RunConfig d = parse_config("[validate]\n");
  EXPECT_EQ(parse_config(serialize(d)), d);
}

TEST(Config, UnknownKeyNamesLine) {
  const std::string msg = error_of("[beam]\nn_atoms = 10\n# comment\nfoo = 1\n");
  EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
  EXPECT_NE(msg.find("foo"), std::string::npos) << msg;
}

TEST(Config, EmptyFile) {
  EXPECT_EQ(error_of(""), "no experiment section");
  EXPECT_EQ(error_of("# nothing\n\n[output]\ndir = x\n"), "no experiment section");
}

TEST(Config, StructuralErrors) {
  EXPECT_NE(error_of("[beam]\n[bath]\n").find("more than one experiment"), std::string::npos);
  EXPECT_NE(error_of("[beam]\n[beam]\n").find("duplicate section"), std::string::npos);
  EXPECT_NE(error_of("[telescope]\n").find("unknown section"), std::string::npos);
  EXPECT_NE(error_of("n_atoms = 3\n[beam]\n").find("outside any section"), std::string::npos);
  EXPECT_NE(error_of("[beam]\nn_atoms\n").find("line 2"), std::string::npos);
  EXPECT_NE(error_of("[beam]\nn_atoms = 3\nn_atoms = 4\n").find("duplicate key"), std::string::npos);
  EXPECT_NE(error_of("[beam]\nn_atoms = 3.5\n").find("not an integer"), std::string::npos);
  EXPECT_NE(error_of("[beam]\nmodel = quantum\n").find("'static' or 'dispersive'"), std::string::npos);
  EXPECT_NE(error_of("[design]\nscale = 0.1\n").find("missing required key 'r'"), std::string::npos);
}

TEST(Config, UnitSuffixes) {
  const RunConfig a = parse_config("[beam]\ntau = 3.08/g\nlambda2 = 0.1g\nkappa = 0.01 g\n");
  EXPECT_DOUBLE_EQ(a.beam.tau, 3.08);
  EXPECT_EQ(a.beam.lambda2, cplx(0.1, 0.0));
  EXPECT_DOUBLE_EQ(a.beam.kappa, 0.01);
  EXPECT_EQ(parse_config("[beam]\nlambda1 = (0.1-0.2i)g\n").beam.lambda1, cplx(0.1, -0.2));

  const std::string time_as_rate = error_of("[beam]\ntau = 3.08g\n");
  EXPECT_NE(time_as_rate.find("line 2"), std::string::npos);
  EXPECT_NE(time_as_rate.find("time"), std::string::npos);
  EXPECT_NE(error_of("[beam]\nlambda2 = 0.1/g\n").find("rate"), std::string::npos);
  EXPECT_NE(error_of("[bath]\nr = 1.5g\n").find("dimensionless"), std::string::npos);
  EXPECT_NE(error_of("[beam]\nn_atoms = 200g\n").find("dimensionless"), std::string::npos);
}

TEST(Config, ComplexLiterals) {
  EXPECT_EQ(parse_complex("3"), cplx(3.0, 0.0));
  EXPECT_EQ(parse_complex("0.1+0.05i"), cplx(0.1, 0.05));
  EXPECT_EQ(parse_complex("-2i"), cplx(0.0, -2.0));
  EXPECT_EQ(parse_complex("i"), cplx(0.0, 1.0));
  EXPECT_EQ(parse_complex("-1-i"), cplx(-1.0, -1.0));
  EXPECT_EQ(parse_complex("(1e-3-2.5e+2i)"), cplx(1e-3, -250.0));
  EXPECT_EQ(parse_complex(format_complex(cplx(0.1, -1.0 / 3.0))), cplx(0.1, -1.0 / 3.0));
  EXPECT_THROW(parse_complex("1+2j"), ConfigError);
  EXPECT_THROW(parse_complex("abc"), ConfigError);
}

TEST(Config, Overrides) {
  RunConfig cfg = parse_config("[bath]\n");
  override_n_max(cfg, 5);
  override_dt(cfg, 0.01);
  EXPECT_EQ(cfg.bath.n_max, 5);
  EXPECT_EQ(cfg.bath.dt, 0.01);
}

TEST(Csv, NumberFormat) {
  EXPECT_EQ(csv_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(csv_number(-0.0), "0");
  EXPECT_EQ(csv_number(1.3811e-7), "1.3811e-07");
}

TEST_F(CliRun, BeamWritesObservables) {
  ASSERT_EQ(run_exe("[beam]\n"), 0) << stderr_text();
  const std::string csv = slurp(dir_ / "out" / "beam_observables.csv");
  const auto rows = lines(csv);
  ASSERT_EQ(rows.size(), 202u);
  EXPECT_EQ(rows[0], "atom_index,n_mean,var_x1,var_x2,fidelity,purity");
  EXPECT_EQ(rows[1].substr(0, 4), "0,0,");
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  std::istringstream last(rows.back());
  std::string idx, n;
  std::getline(last, idx, ',');
  std::getline(last, n, ',');
  EXPECT_EQ(idx, "200");
  EXPECT_NEAR(std::stod(n), 1.3811, 0.10);

  const std::string meta = slurp(dir_ / "out" / "run_metadata.csv");
  EXPECT_EQ(lines(meta).front(), "key,value");
  EXPECT_NE(meta.find("\nr,1\n"), std::string::npos) << meta;
  EXPECT_NE(meta.find("var_x2_target,0.0338"), std::string::npos);
  EXPECT_NE(stdout_text().find("<n>"), std::string::npos);
}

TEST_F(CliRun, BeamOutputIsDeterministic) {
  const std::string cfg = "[beam]\nn_atoms = 30\n";
  ASSERT_EQ(run_exe(cfg, "", "a"), 0);
  ASSERT_EQ(run_exe(cfg, "", "b"), 0);
  EXPECT_EQ(slurp(dir_ / "a" / "beam_observables.csv"), slurp(dir_ / "b" / "beam_observables.csv"));
  EXPECT_EQ(slurp(dir_ / "a" / "run_metadata.csv"), slurp(dir_ / "b" / "run_metadata.csv"));
}

TEST_F(CliRun, StrictPromotesAdvisories) {
  // At n_max = 30 the r = 1 target loses weight to truncation.
  EXPECT_EQ(run_exe("[beam]\nn_atoms = 5\n", "--strict"), 2);
  EXPECT_NE(stderr_text().find("advisory"), std::string::npos);
  EXPECT_EQ(run_exe("[beam]\nn_atoms = 5\n", "--strict --nmax 50"), 0) << stderr_text();
}

TEST_F(CliRun, BathWritesPerPhaseSeries) {
  ASSERT_EQ(run_exe("[bath]\nphis = 0, 1.5708, 3.1416\nnum_samples = 50\n"), 0) << stderr_text();
  for (int k = 0; k < 3; ++k) {
    const auto rows = lines(slurp(dir_ / "out" / ("bath_phi_" + std::to_string(k) + ".csv")));
    ASSERT_EQ(rows.size(), 52u);
    EXPECT_EQ(rows[0], "t,sx_exact,sy_exact,sz_exact,sx_adiabatic,sy_adiabatic,sz_adiabatic,sx_analytic,n_field");
  }
  const auto summary = lines(slurp(dir_ / "out" / "bath_summary.csv"));
  ASSERT_EQ(summary.size(), 4u);
  EXPECT_EQ(summary[0].substr(0, 9), "phi,file,");
  EXPECT_NE(stdout_text().find("ordering"), std::string::npos);
}

TEST_F(CliRun, WignerWritesGrids) {
  ASSERT_EQ(run_exe("[wigner]\ncheckpoints = 5, 10\nx_count = 21\np_count = 11\nn_max = 40\n"), 0)
      << stderr_text();
  for (int k : {0, 5, 10}) {
    const WignerGrid g = read_grid(dir_ / "out" / ("wigner_" + std::to_string(k) + ".txt"));
    EXPECT_EQ(g.values.rows(), 21);
    EXPECT_EQ(g.values.cols(), 11);
  }
  EXPECT_NEAR(read_grid(dir_ / "out" / "wigner_0.txt").values(10, 5), 0.636619772368, 1e-11);
}

TEST_F(CliRun, DesignPrintsDrives) {
  ASSERT_EQ(run_exe("[design]\nr = 1\nalpha = 0\nscale = 0.1\n"), 0) << stderr_text();
  EXPECT_NE(stdout_text().find("Omega1"), std::string::npos);
  EXPECT_NE(stdout_text().find("regime checks"), std::string::npos);

  ASSERT_EQ(run_exe("[design]\nr = 0\nscale = 0.1\n"), 0);
  const std::string single = stdout_text();
  EXPECT_NE(single.find("Omega1                   off"), std::string::npos) << single;
  EXPECT_EQ(single.find("Omega2                   off"), std::string::npos);

  EXPECT_EQ(run_exe("[design]\nr = 1\nscale = 5\n"), 0);
  EXPECT_NE(stderr_text().find("advisory"), std::string::npos);
  EXPECT_EQ(run_exe("[design]\nr = 1\nscale = 5\n", "--strict"), 2);
}

TEST_F(CliRun, ValidateIsGreen) {
  EXPECT_EQ(run_exe("[validate]\n"), 0) << stdout_text();
  EXPECT_EQ(stdout_text().find("FAIL"), std::string::npos);
}

TEST_F(CliRun, BadConfigFails) {
  EXPECT_EQ(run_exe("[beam]\nfoo = 1\n"), 1);
  EXPECT_NE(stderr_text().find("line 2"), std::string::npos);
  EXPECT_EQ(run_exe("[beam]\nn_atoms = 0\n"), 1);
}
