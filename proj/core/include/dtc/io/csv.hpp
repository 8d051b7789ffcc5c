#pragma once

// CSV persistence. Doubles are written in shortest round-trip form, so every
// table re-reads into exactly the values that produced it. Lines starting with
// '#' carry metadata (run parameters as JSON, warnings).

#include <iosfwd>
#include <string>
#include <vector>

#include "dtc/dissipative.hpp"
#include "dtc/observables.hpp"
#include "dtc/sweep.hpp"

namespace dtc::io {

std::string format_double(double value);

struct CsvTable {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
void write_csv(std::ostream& out, const CsvTable& table);

/// Columns n, P, Q (empty at n = 0) and optionally norm.
void write_trajectory(std::ostream& out, const Trajectory& t, bool include_norm = false);
Trajectory read_trajectory(std::istream& in);

/// Columns nu, re, im, abs.
void write_spectrum(std::ostream& out, const Spectrum& s);
Spectrum read_spectrum(std::istream& in);

/// One row per grid point: parameters, n_c, censored, wall_time, error.
void write_points(std::ostream& out, const std::vector<PointResult>& points);
std::vector<PointResult> read_points(std::istream& in);

/// Columns L, epsilon, delta_n_c, class, censored.
void write_phase(std::ostream& out, const std::vector<PhaseCell>& cells);
std::vector<PhaseCell> read_phase(std::istream& in);

void write_symmetry(std::ostream& out, const SymmetryReport& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace dtc::io
