#pragma once

// Wigner function of a single-mode field on a rectangular (x, p) grid, with
// alpha = x + i p so that x and p are the X1 and X2 quadratures. Normalized to
// unit integral: the vacuum is (2/pi) exp(-2 (x^2 + p^2)).
//
// Grid file format (text, LF line endings):
//   x <min> <max> <count>
//   p <min> <max> <count>
//   then <count_x> lines of <count_p> whitespace-separated values, so row i
//   holds W(x_i, p_0 .. p_{count_p - 1}).

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sqzres/beam.hpp"
#include "sqzres/hilbert.hpp"

namespace sqzres {

struct Axis {
  double min = -4.0;
  double max = 4.0;
  int count = 81;

  double step() const { return count > 1 ? (max - min) / (count - 1) : 0.0; }
  double at(int k) const { return min + k * step(); }
};

struct WignerGrid {
  Axis x;
  Axis p;
  Eigen::MatrixXd values;  // values(i, j) = W(x_i, p_j)
  std::vector<std::string> warnings;

  double cell_area() const { return x.step() * p.step(); }
  // Sum of values times the cell area.
  double integral() const;
};

// W at a single phase-space point.
double wigner_at(const QuantumState& field, cplx alpha);

// Throws DimensionError unless the state lives on a single Fock factor and
// PreconditionError on an axis with count < 2 or max <= min. Attaches a warning
// when the grid reaches |alpha|^2 > n_max/2.
WignerGrid wigner_grid(const QuantumState& field, const Axis& x = {}, const Axis& p = {});

// Grids of the beam-driven field after each checkpoint (0 = initial field).
std::map<int, WignerGrid> beam_snapshots(const BeamConfig& cfg, const std::vector<int>& checkpoints,
                                         const Axis& x = {}, const Axis& p = {});

void write_grid(const WignerGrid& grid, const std::filesystem::path& path);
WignerGrid read_grid(const std::filesystem::path& path);
std::string format_grid(const WignerGrid& grid);
WignerGrid parse_grid(const std::string& text);

}  // namespace sqzres
