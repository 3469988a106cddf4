#pragma once

// Run configuration of the sqzres tool. Text format, one setting per line:
//
//   # comment
//   [beam]
//   n_atoms = 200
//   tau = 3.08/g
//   lambda2 = 0.1g
//   lambda1 = -0.0762g
//
// Exactly one experiment section ([beam], [bath], [wigner], [design] or
// [validate]) must be present; an optional [output] section sets `dir`.
// Rates may carry the suffix `g` and times the suffix `/g` (every quantity is
// a multiple of g or 1/g either way). Complex values are written `a+bi`.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqzres/hilbert.hpp"

namespace sqzres::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Experiment { beam, bath, wigner, design, validate };

// Drive parameters of the Lambda atom, needed by the dispersive beam model.
struct DriveSection {
  cplx g{1.0, 0.0};
  cplx omega1{}, omega2{}, omega3{}, omega4{};
  double Delta1 = 0.0, Delta2 = 0.0, Delta3 = 0.0;
  // Small detunings; matched to the Stark shifts when absent.
  std::optional<double> delta1, delta2, delta3;

  bool operator==(const DriveSection&) const = default;
};

struct BeamSection {
  int n_atoms = 200;
  double tau = 3.08;
  cplx lambda1{-0.0761594155955765, 0.0};  // -0.1 tanh(1)
  cplx lambda2{0.1, 0.0};
  cplx beta{};
  int n_max = 30;
  double r_at = 0.0;
  double kappa = 0.0;
  bool dispersive = false;
  bool reset_clock = false;
  std::optional<double> dt;
  DriveSection drive;

  bool operator==(const BeamSection&) const = default;
};

struct BathSection {
  cplx lambda{0.04, 0.0};
  double Gamma = 40.0;
  double gamma = 0.0;
  double r = 1.5;
  std::vector<double> phis{0.0, 1.5707963267948966, 3.141592653589793};
  int n_max = 3;
  std::optional<double> t_end;  // defaults to 5 / (Gamma_eng e^{-2r})
  int num_samples = 400;
  bool static_model = false;
  std::optional<double> dt;

  bool operator==(const BathSection&) const = default;
};

struct WignerSection {
  BeamSection beam;
  std::vector<int> checkpoints{50, 100, 200};
  double x_min = -4.0, x_max = 4.0;
  int x_count = 81;
  double p_min = -4.0, p_max = 4.0;
  int p_count = 81;

  bool operator==(const WignerSection&) const = default;
};

struct DesignSection {
  double r = 1.0;
  double phi = 0.0;
  cplx alpha{};
  double scale = 0.1;
  cplx g{1.0, 0.0};
  double Delta1 = 100.0, Delta2 = 400.0, Delta3 = 700.0;
  double threshold = 0.15;

  bool operator==(const DesignSection&) const = default;
};

struct RunConfig {
  Experiment experiment = Experiment::validate;
  BeamSection beam;
  BathSection bath;
  WignerSection wigner;
  DesignSection design;
  std::string output_dir = ".";

  bool operator==(const RunConfig&) const = default;
};

// Throws ConfigError (with the offending line number when there is one).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
// Text that parse_config maps back to an equal RunConfig.
std::string serialize(const RunConfig& cfg);

const char* experiment_name(Experiment e);

// Applies --nmax / --dt to whichever section the experiment reads.
void override_n_max(RunConfig& cfg, int n_max);
void override_dt(RunConfig& cfg, double dt);

cplx parse_complex(const std::string& text);
std::string format_complex(cplx z);

}  // namespace sqzres::cli
