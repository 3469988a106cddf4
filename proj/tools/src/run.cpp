#include "sqzres_cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "sqzres/beam.hpp"
#include "sqzres/errors.hpp"
#include "sqzres/squeezedbath.hpp"
#include "sqzres/validation.hpp"
#include "sqzres/wigner.hpp"

namespace sqzres::cli {
namespace {

namespace fs = std::filesystem;
using Row = std::vector<std::string>;

struct Metadata {
  std::vector<std::pair<std::string, std::string>> entries;

  void add(const std::string& key, const std::string& value) { entries.emplace_back(key, value); }
  void add(const std::string& key, double value) { add(key, csv_number(value)); }
  void add(const std::string& key, int value) { add(key, std::to_string(value)); }
  void add(const std::string& key, cplx value) {
    add(key + "_re", value.real());
    add(key + "_im", value.imag());
  }

  void write(const fs::path& path) const {
    std::vector<Row> rows;
    for (const auto& [k, v] : entries) rows.push_back({k, v});
    write_csv(path, {"key", "value"}, rows);
  }
};

PhysicalParams physical(const DriveSection& d) {
  PhysicalParams phys;
  phys.g = d.g;
  phys.omega = {d.omega1, d.omega2, d.omega3, d.omega4};
  phys.Delta = {d.Delta1, d.Delta2, d.Delta3};
  const PhysicalParams matched = with_matched_detunings(phys);
  phys.delta = {d.delta1.value_or(matched.delta[0]), d.delta2.value_or(matched.delta[1]),
                d.delta3.value_or(matched.delta[2])};
  return phys;
}

BeamConfig beam_config(const BeamSection& s) {
  BeamConfig cfg;
  cfg.n_atoms = s.n_atoms;
  cfg.tau = s.tau;
  cfg.n_max = s.n_max;
  cfg.r_at = s.r_at;
  cfg.kappa = s.kappa;
  cfg.dt = s.dt;
  cfg.clock = s.reset_clock ? PhaseClock::reset : PhaseClock::global;
  if (s.dispersive) {
    cfg.hamiltonian = BeamHamiltonian::dispersive;
    cfg.phys = physical(s.drive);
    cfg.eff = effective_params(*cfg.phys);
  } else {
    cfg.eff.lambda1 = s.lambda1;
    cfg.eff.lambda2 = s.lambda2;
    cfg.eff.beta = s.beta;
  }
  return cfg;
}

// Regime checks of the dispersive model, against the photon number of its target.
std::vector<std::string> regime_advisories(const BeamConfig& cfg) {
  if (!cfg.phys) return {};
  double n_bar = 1.0;
  try {
    const SqueezeSpec spec = squeeze_spec(cfg.eff);
    n_bar = std::max(1.0, std::norm(spec.alpha) + std::pow(std::sinh(spec.r), 2));
  } catch (const std::exception&) {
  }
  return check_regime(*cfg.phys, n_bar).advisories();
}

void describe_beam(Metadata& meta, const BeamConfig& cfg, const std::optional<SqueezeSpec>& spec) {
  meta.add("n_atoms", cfg.n_atoms);
  meta.add("tau", cfg.tau);
  meta.add("n_max", cfg.n_max);
  meta.add("model", cfg.hamiltonian == BeamHamiltonian::dispersive ? "dispersive" : "static");
  meta.add("clock", cfg.clock == PhaseClock::reset ? "reset" : "global");
  meta.add("kappa", cfg.kappa);
  meta.add("lambda1", cfg.eff.lambda1);
  meta.add("lambda2", cfg.eff.lambda2);
  meta.add("beta", cfg.eff.beta);
  if (!spec) return;
  const double r = spec->r;
  meta.add("r", r);
  meta.add("phi", spec->phi);
  meta.add("alpha", spec->alpha);
  meta.add("lambda_abs", std::abs(spec->lambda));
  meta.add("dominant", spec->dominant == Dominant::lambda2 ? "lambda2" : "lambda1");
  // Moments of D(alpha) S(r, phi)|0>.
  const double c = std::cosh(2 * r);
  const double s = std::sinh(2 * r) * std::cos(spec->phi);
  meta.add("n_mean_target", std::norm(spec->alpha) + std::pow(std::sinh(r), 2));
  meta.add("var_x1_target", (c + s) / 4);
  meta.add("var_x2_target", (c - s) / 4);
}

std::string display(cplx z) {
  if (z.imag() == 0.0) return csv_number(z.real());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real() == 0.0 ? 0.0 : z.real(), z.imag());
  return buf;
}

void print_advisories(std::ostream& err, const std::vector<std::string>& advisories) {
  for (const auto& a : advisories) err << "advisory: " << a << "\n";
}

int finish(const std::vector<std::string>& advisories, const RunOptions& opts, std::ostream& err) {
  print_advisories(err, advisories);
  if (opts.strict && !advisories.empty()) {
    err << "strict mode: " << advisories.size() << " advisory(ies) treated as errors\n";
    return kAdvisory;
  }
  return kSuccess;
}

void row(std::ostream& out, const char* label, const std::string& value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "  %-24s ", label);
  out << buf << value << "\n";
}

int run_beam_experiment(const RunConfig& rc, const fs::path& dir, const RunOptions& opts, std::ostream& out,
                        std::ostream& err) {
  const BeamConfig cfg = beam_config(rc.beam);
  const BeamResult res = run_beam(cfg);

  std::vector<Row> rows;
  for (std::size_t k = 0; k < res.n_mean.size(); ++k) {
    rows.push_back({std::to_string(k), csv_number(res.n_mean[k]), csv_number(res.var_x1[k]),
                    csv_number(res.var_x2[k]), csv_number(res.fidelity[k]), csv_number(res.purity[k])});
  }
  write_csv(dir / "beam_observables.csv", {"atom_index", "n_mean", "var_x1", "var_x2", "fidelity", "purity"}, rows);

  Metadata meta;
  meta.add("experiment", "beam");
  describe_beam(meta, cfg, res.spec);
  meta.add("gamma_eng", res.gamma_eng);
  meta.write(dir / "run_metadata.csv");

  out << "beam: " << cfg.n_atoms << " atoms, n_max = " << cfg.n_max << "\n";
  row(out, "<n>", csv_number(res.n_mean.back()));
  row(out, "(dX1)^2", csv_number(res.var_x1.back()));
  row(out, "(dX2)^2", csv_number(res.var_x2.back()));
  row(out, "fidelity", csv_number(res.fidelity.back()));
  row(out, "purity", csv_number(res.purity.back()));
  if (res.spec) {
    row(out, "target r", csv_number(res.spec->r));
    row(out, "target phi", csv_number(res.spec->phi));
    row(out, "Gamma_eng", csv_number(res.gamma_eng));
  }
  std::vector<std::string> advisories = regime_advisories(cfg);
  advisories.insert(advisories.end(), res.advisories.begin(), res.advisories.end());
  row(out, "advisories", std::to_string(advisories.size()));
  return finish(advisories, opts, err);
}

int run_bath_experiment(const RunConfig& rc, const fs::path& dir, const RunOptions& opts, std::ostream& out,
                        std::ostream& err) {
  const BathSection& s = rc.bath;
  const BathParams bp = bath_params(s.lambda, s.Gamma, s.gamma, s.r, 0.0);
  const double t_end = s.t_end.value_or(decay_window(bp));
  ExactOptions eo;
  eo.model = s.static_model ? BathModel::static_effective : BathModel::squeezed_coupling;
  eo.n_max = s.n_max;
  eo.num_samples = s.num_samples;
  eo.dt = s.dt;
  const PhaseReport rep = phase_sensitivity_report(bp, s.phis, t_end, eo);

  std::vector<Row> summary;
  std::vector<std::string> advisories = bath_advisories(bp);
  out << "bath: Gamma_eng = " << csv_number(bp.gamma_eng) << ", t_end = " << csv_number(t_end) << "\n";
  out << "  phi            max|exact-closed|  max|adiabatic-closed|  max|exact-adiabatic|  t(sx=0.5)\n";
  for (std::size_t k = 0; k < rep.cases.size(); ++k) {
    const PhaseCase& c = rep.cases[k];
    const std::string file = "bath_phi_" + std::to_string(k) + ".csv";
    const auto& ex = c.exact.series;
    const auto& ad = c.adiabatic.series;
    std::vector<Row> rows;
    for (std::size_t j = 0; j < ex.size(); ++j) {
      rows.push_back({csv_number(ex.times()[j]), csv_number(ex.channel("sx")[j]), csv_number(ex.channel("sy")[j]),
                      csv_number(ex.channel("sz")[j]), csv_number(ad.channel("sx")[j]),
                      csv_number(ad.channel("sy")[j]), csv_number(ad.channel("sz")[j]), csv_number(c.analytic[j]),
                      csv_number(ex.channel("n_field")[j])});
    }
    write_csv(dir / file,
              {"t", "sx_exact", "sy_exact", "sz_exact", "sx_adiabatic", "sy_adiabatic", "sz_adiabatic",
               "sx_analytic", "n_field"},
              rows);
    const std::string half = c.half_time ? csv_number(*c.half_time) : "";
    summary.push_back({csv_number(c.phi), file, csv_number(c.max_dev_exact_analytic),
                       csv_number(c.max_dev_adiabatic_analytic), csv_number(c.max_dev_exact_adiabatic), half,
                       csv_number(c.exact.max_photon_number)});
    char buf[160];
    std::snprintf(buf, sizeof buf, "  %-14.6g %-18.4g %-22.4g %-21.4g %s\n", c.phi, c.max_dev_exact_analytic,
                  c.max_dev_adiabatic_analytic, c.max_dev_exact_adiabatic, half.empty() ? "-" : half.c_str());
    out << buf;
    for (const auto& a : c.exact.advisories) {
      // Ratio advisories repeat per case; keep the case-specific ones.
      if (std::find(advisories.begin(), advisories.end(), a) == advisories.end()) advisories.push_back(a);
    }
  }
  write_csv(dir / "bath_summary.csv",
            {"phi", "file", "max_dev_exact_analytic", "max_dev_adiabatic_analytic", "max_dev_exact_adiabatic",
             "half_time", "max_photon_number"},
            summary);

  Metadata meta;
  meta.add("experiment", "bath");
  meta.add("lambda", s.lambda);
  meta.add("Gamma", s.Gamma);
  meta.add("gamma", s.gamma);
  meta.add("r", s.r);
  meta.add("gamma_eng", bp.gamma_eng);
  meta.add("N", bp.n);
  meta.add("M_abs", std::abs(bp.m));
  meta.add("t_end", t_end);
  meta.add("n_max", s.n_max);
  meta.add("model", s.static_model ? "static" : "squeezed");
  meta.add("ordering_ok", rep.ordering_ok ? "true" : "false");
  meta.write(dir / "run_metadata.csv");
  row(out, "half-time ordering", rep.ordering_ok ? "ok" : "violated");
  return finish(advisories, opts, err);
}

int run_wigner_experiment(const RunConfig& rc, const fs::path& dir, const RunOptions& opts, std::ostream& out,
                          std::ostream& err) {
  const WignerSection& s = rc.wigner;
  const BeamConfig cfg = beam_config(s.beam);
  const Axis x{s.x_min, s.x_max, s.x_count};
  const Axis p{s.p_min, s.p_max, s.p_count};
  const auto grids = beam_snapshots(cfg, s.checkpoints, x, p);

  std::vector<std::string> advisories = regime_advisories(cfg);
  Metadata meta;
  meta.add("experiment", "wigner");
  std::optional<SqueezeSpec> spec;
  try {
    spec = squeeze_spec(cfg.eff);
  } catch (const std::exception&) {
  }
  describe_beam(meta, cfg, spec);
  out << "wigner: " << grids.size() << " snapshots\n";
  for (const auto& [k, grid] : grids) {
    const std::string file = "wigner_" + std::to_string(k) + ".txt";
    write_grid(grid, dir / file);
    meta.add("grid_" + std::to_string(k), file);
    row(out, ("after " + std::to_string(k) + " atoms").c_str(),
        file + "  (max W " + csv_number(grid.values.maxCoeff()) + ", integral " + csv_number(grid.integral()) + ")");
    for (const auto& w : grid.warnings) {
      if (std::find(advisories.begin(), advisories.end(), w) == advisories.end()) advisories.push_back(w);
    }
  }
  meta.write(dir / "run_metadata.csv");
  return finish(advisories, opts, err);
}

int run_design_experiment(const RunConfig& rc, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  const DesignSection& s = rc.design;
  DesignRequest req;
  req.target = {s.r, s.phi, s.alpha};
  req.g = s.g;
  req.Delta = {s.Delta1, s.Delta2, s.Delta3};
  req.scale = s.scale;
  req.regime_threshold = s.threshold;
  req.strict = opts.strict;
  const DesignResult res = design_couplings(req);

  const auto& ph = res.params;
  out << "design: r = " << csv_number(s.r) << ", phi = " << csv_number(s.phi) << ", alpha = "
      << display(s.alpha) << ", scale = " << csv_number(s.scale) << "\n";
  for (int k = 0; k < 4; ++k) {
    const std::string label = "Omega" + std::to_string(k + 1);
    row(out, label.c_str(), std::abs(ph.omega[k]) > 0.0 ? display(ph.omega[k]) : "off");
  }
  for (int k = 0; k < 3; ++k) {
    row(out, ("Delta" + std::to_string(k + 1)).c_str(), csv_number(ph.Delta[k]));
    row(out, ("delta" + std::to_string(k + 1)).c_str(), csv_number(ph.delta[k]));
  }
  row(out, "lambda1", display(res.effective.lambda1));
  row(out, "lambda2", display(res.effective.lambda2));
  row(out, "beta", display(res.effective.beta));
  out << "  regime checks (threshold " << csv_number(s.threshold) << "):\n";
  for (const auto& c : res.report.checks) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "    %-32s %-12.4g %s\n", c.name.c_str(), c.value, c.ok ? "ok" : "ADVISORY");
    out << buf;
  }
  return finish(res.advisories, opts, err);
}

int run_validate(std::ostream& out) {
  bool ok = true;
  out << "validate:\n";
  for (const auto& r : run_invariant_suite()) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "  %-28s %-5s %s\n", r.name.c_str(), r.passed ? "ok" : "FAIL", r.detail.c_str());
    out << buf;
    ok = ok && r.passed;
  }
  return ok ? kSuccess : kFailure;
}

}  // namespace

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

void write_csv(const fs::path& path, const std::vector<std::string>& header, const std::vector<Row>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  auto line = [&](const Row& r) {
    for (std::size_t k = 0; k < r.size(); ++k) f << (k ? "," : "") << r[k];
    f << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

int run(const RunConfig& cfg, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.experiment == Experiment::validate) return run_validate(out);
    if (cfg.experiment == Experiment::design) return run_design_experiment(cfg, opts, out, err);

    const fs::path dir = opts.out_dir.empty() ? fs::path(cfg.output_dir) : opts.out_dir;
    fs::create_directories(dir);
    switch (cfg.experiment) {
      case Experiment::beam: return run_beam_experiment(cfg, dir, opts, out, err);
      case Experiment::bath: return run_bath_experiment(cfg, dir, opts, out, err);
      case Experiment::wigner: return run_wigner_experiment(cfg, dir, opts, out, err);
      default: break;
    }
    return kFailure;
  } catch (const UnreachableError& ex) {
    err << "error: " << ex.what() << "\n";
    return opts.strict ? kAdvisory : kFailure;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kFailure;
  }
}

}  // namespace sqzres::cli
