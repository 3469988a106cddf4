#include "sqzres/wigner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "sqzres/errors.hpp"

namespace sqzres {
namespace {

void check_axis(const Axis& a, const char* name) {
  if (a.count < 2 || !(a.max > a.min)) {
    throw PreconditionError(std::string("wigner_grid: bad ") + name + " axis");
  }
}

// <m|D(beta)|n> for all m, n < d. Uses h_n^k = sqrt(k! n!/(n+k)!) L_n^(k)(x),
// which obeys the Laguerre three-term recurrence without factorial growth:
//   h_{n+1} = ((2n + 1 + k - x) h_n - sqrt(n (n + k)) h_{n-1}) / sqrt((n + 1)(n + 1 + k)).
Matrix displacement_elements(cplx beta, int d) {
  const double x = std::norm(beta);
  const double gauss = std::exp(-x / 2.0);
  Matrix out(d, d);
  cplx up = 1.0;    // beta^k / sqrt(k!)
  cplx down = 1.0;  // (-beta*)^k / sqrt(k!)
  for (int k = 0; k < d; ++k) {
    if (k > 0) {
      up *= beta / std::sqrt(static_cast<double>(k));
      down *= -std::conj(beta) / std::sqrt(static_cast<double>(k));
    }
    double h_prev = 0.0;
    double h = 1.0;
    for (int n = 0; n + k < d; ++n) {
      out(n + k, n) = gauss * up * h;
      if (k > 0) out(n, n + k) = gauss * down * h;
      const double next = ((2.0 * n + 1.0 + k - x) * h - std::sqrt(double(n) * (n + k)) * h_prev) /
                          std::sqrt((n + 1.0) * (n + 1.0 + k));
      h_prev = h;
      h = next;
    }
  }
  return out;
}

}  // namespace

double WignerGrid::integral() const { return values.sum() * cell_area(); }

double wigner_at(const QuantumState& field, cplx alpha) {
  if (field.dims().size() != 1) throw DimensionError("wigner: expected a single-mode field state");
  const int d = field.dim();
  const Matrix rho = field.density();
  const Matrix disp = displacement_elements(2.0 * alpha, d);
  // Tr[rho D(2 alpha) Pi] = sum_{m,n} rho_{nm} (-1)^n <m|D(2 alpha)|n>.
  cplx acc = 0.0;
  for (int n = 0; n < d; ++n) {
    cplx col = 0.0;
    for (int m = 0; m < d; ++m) col += rho(n, m) * disp(m, n);
    acc += (n % 2 == 0) ? col : -col;
  }
  return 2.0 / std::numbers::pi * acc.real();
}

WignerGrid wigner_grid(const QuantumState& field, const Axis& x, const Axis& p) {
  if (field.dims().size() != 1) throw DimensionError("wigner: expected a single-mode field state");
  check_axis(x, "x");
  check_axis(p, "p");
  WignerGrid grid;
  grid.x = x;
  grid.p = p;
  grid.values.resize(x.count, p.count);
  const int n_max = field.dim() - 1;
  double reach = 0.0;
  for (int i = 0; i < x.count; ++i) {
    for (int j = 0; j < p.count; ++j) {
      const cplx alpha(x.at(i), p.at(j));
      reach = std::max(reach, std::norm(alpha));
      grid.values(i, j) = wigner_at(field, alpha);
    }
  }
  if (reach > n_max / 2.0) {
    std::ostringstream os;
    os << "grid reaches |alpha|^2 = " << reach << " beyond n_max/2 = " << n_max / 2.0
       << "; values there are truncation-limited";
    grid.warnings.push_back(os.str());
  }
  return grid;
}

std::map<int, WignerGrid> beam_snapshots(const BeamConfig& cfg, const std::vector<int>& checkpoints,
                                         const Axis& x, const Axis& p) {
  BeamConfig local = cfg;
  int last = 0;
  local.snapshot_atoms = {0};
  for (int c : checkpoints) {
    if (c < 0) throw PreconditionError("beam_snapshots: checkpoints must be >= 0");
    local.snapshot_atoms.push_back(c);
    last = std::max(last, c);
  }
  local.n_atoms = std::max(last, 1);
  const BeamResult res = run_beam(local);
  std::map<int, WignerGrid> out;
  for (const auto& [k, state] : res.snapshots) out.emplace(k, wigner_grid(state, x, p));
  return out;
}

std::string format_grid(const WignerGrid& grid) {
  std::string out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "x %.12g %.12g %d\n", grid.x.min, grid.x.max, grid.x.count);
  out += buf;
  std::snprintf(buf, sizeof buf, "p %.12g %.12g %d\n", grid.p.min, grid.p.max, grid.p.count);
  out += buf;
  for (int i = 0; i < grid.values.rows(); ++i) {
    for (int j = 0; j < grid.values.cols(); ++j) {
      std::snprintf(buf, sizeof buf, j == 0 ? "%.12g" : " %.12g", grid.values(i, j));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

WignerGrid parse_grid(const std::string& text) {
  std::istringstream in(text);
  WignerGrid grid;
  auto read_axis = [&](const char* label, Axis& axis) {
    std::string tag;
    if (!(in >> tag >> axis.min >> axis.max >> axis.count) || tag != label || axis.count < 1) {
      throw PreconditionError(std::string("grid file: bad '") + label + "' header");
    }
  };
  read_axis("x", grid.x);
  read_axis("p", grid.p);
  grid.values.resize(grid.x.count, grid.p.count);
  for (int i = 0; i < grid.x.count; ++i) {
    for (int j = 0; j < grid.p.count; ++j) {
      if (!(in >> grid.values(i, j))) throw PreconditionError("grid file: truncated values");
    }
  }
  std::string extra;
  if (in >> extra) throw PreconditionError("grid file: trailing data");
  return grid;
}

void write_grid(const WignerGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_grid(grid);
}

WignerGrid read_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_grid(ss.str());
}

}  // namespace sqzres
