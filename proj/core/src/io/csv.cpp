#include "dtc/io/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dtc/error.hpp"
#include "dtc/io/config.hpp"
#include "dtc/units.hpp"

namespace dtc::io {

namespace {

constexpr const char* kParamsTag = "params ";
constexpr const char* kWarningTag = "warning ";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

void expect_header(const CsvTable& t, const std::vector<std::string>& prefix) {
  if (t.header.size() < prefix.size() || !std::equal(prefix.begin(), prefix.end(), t.header.begin())) {
    fail(ErrorKind::InvalidArgument, "unexpected CSV header '" + join(t.header) + "'");
  }
}

std::optional<ModelParams> params_comment(const CsvTable& t) {
  for (const auto& c : t.comments) {
    if (starts_with(c, kParamsTag)) return params_from_json(nlohmann::json::parse(c.substr(7)));
  }
  return std::nullopt;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) fail(ErrorKind::Io, "cannot format double");
  return std::string(buf, ptr);
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  fail(ErrorKind::InvalidArgument, "CSV has no column '" + name + "'");
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      t.comments.push_back(line.size() > 2 ? line.substr(2) : std::string());
      continue;
    }
    auto cells = split(line);
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size()) fail(ErrorKind::InvalidArgument, "ragged CSV row: '" + line + "'");
    t.rows.push_back(std::move(cells));
  }
  if (!have_header) fail(ErrorKind::InvalidArgument, "CSV has no header");
  return t;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (const auto& c : table.comments) out << "# " << c << '\n';
  out << join(table.header) << '\n';
  for (const auto& row : table.rows) out << join(row) << '\n';
}

void write_trajectory(std::ostream& out, const Trajectory& t, bool include_norm) {
  CsvTable table;
  table.comments.push_back(kParamsTag + to_json(t.params).dump());
  for (const auto& w : t.warnings) table.comments.push_back(kWarningTag + w);
  table.header = {"n", "P", "Q"};
  const bool norm = include_norm && t.norm.size() == t.p.size();
  if (norm) table.header.push_back("norm");
  for (std::size_t n = 0; n < t.p.size(); ++n) {
    std::vector<std::string> row = {std::to_string(n), format_double(t.p[n]),
                                    n == 0 ? std::string() : std::to_string(t.q[n - 1])};
    if (norm) row.push_back(format_double(t.norm[n]));
    table.rows.push_back(std::move(row));
  }
  write_csv(out, table);
}

Trajectory read_trajectory(std::istream& in) {
  const CsvTable t = read_csv(in);
  expect_header(t, {"n", "P", "Q"});
  const bool has_norm = t.header.size() > 3 && t.header[3] == "norm";
  std::vector<double> p;
  std::vector<double> norm;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (parse_integer(t.rows[i][0]) != static_cast<long long>(i)) {
      fail(ErrorKind::InvalidArgument, "trajectory rows must run n = 0, 1, 2, ...");
    }
    p.push_back(parse_double(t.rows[i][1]));
    if (has_norm) norm.push_back(parse_double(t.rows[i][3]));
  }
  Trajectory traj = make_trajectory(params_comment(t).value_or(ModelParams{}), std::move(p));
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    if (parse_integer(t.rows[i][2]) != traj.q[i - 1]) {
      fail(ErrorKind::InvalidArgument, "stored Q disagrees with P at n = " + std::to_string(i));
    }
  }
  traj.norm = std::move(norm);
  for (const auto& c : t.comments) {
    if (starts_with(c, kWarningTag)) traj.warnings.push_back(c.substr(8));
  }
  return traj;
}

void write_spectrum(std::ostream& out, const Spectrum& s) {
  CsvTable table;
  table.header = {"nu", "re", "im", "abs"};
  for (std::size_t k = 0; k < s.nu.size(); ++k) {
    table.rows.push_back({format_double(s.nu[k]), format_double(s.values[k].real()),
                          format_double(s.values[k].imag()), format_double(s.magnitude[k])});
  }
  write_csv(out, table);
}

Spectrum read_spectrum(std::istream& in) {
  const CsvTable t = read_csv(in);
  expect_header(t, {"nu", "re", "im", "abs"});
  Spectrum s;
  for (const auto& row : t.rows) {
    s.nu.push_back(parse_double(row[0]));
    s.values.emplace_back(parse_double(row[1]), parse_double(row[2]));
    s.magnitude.push_back(parse_double(row[3]));
  }
  return s;
}

namespace {

const std::vector<std::string> kPointHeader = {"variant", "L", "epsilon", "delta", "v", "t1", "t2",
                                               "boundary", "n_c", "censored", "wall_time", "error"};

}  // namespace

void write_points(std::ostream& out, const std::vector<PointResult>& points) {
  CsvTable table;
  table.header = kPointHeader;
  for (const auto& r : points) {
    const ModelParams& p = r.params;
    std::string error = r.error;
    for (char& c : error) {
      if (c == ',' || c == '\n') c = ';';
    }
    table.rows.push_back({to_string(p.variant), std::to_string(p.atoms), format_double(p.epsilon),
                          format_double(p.delta), format_double(p.interaction), format_double(p.t1),
                          format_double(p.t2), to_string(p.boundary), std::to_string(r.n_c),
                          r.censored ? "1" : "0", format_double(r.wall_time), error});
  }
  write_csv(out, table);
}

std::vector<PointResult> read_points(std::istream& in) {
  const CsvTable t = read_csv(in);
  expect_header(t, kPointHeader);
  std::vector<PointResult> out;
  for (const auto& row : t.rows) {
    PointResult r;
    r.params.variant = parse_variant(row[0]);
    r.params.atoms = static_cast<int>(parse_integer(row[1]));
    r.params.epsilon = parse_double(row[2]);
    r.params.delta = parse_double(row[3]);
    r.params.interaction = parse_double(row[4]);
    r.params.t1 = parse_double(row[5]);
    r.params.t2 = parse_double(row[6]);
    r.params.boundary = parse_boundary(row[7]);
    r.n_c = parse_integer(row[8]);
    r.censored = row[9] == "1";
    r.wall_time = parse_double(row[10]);
    r.error = row[11];
    out.push_back(std::move(r));
  }
  return out;
}

void write_phase(std::ostream& out, const std::vector<PhaseCell>& cells) {
  CsvTable table;
  table.header = {"L", "epsilon", "delta_n_c", "class", "censored"};
  for (const auto& c : cells) {
    table.rows.push_back({std::to_string(c.atoms), format_double(c.epsilon), std::to_string(c.delta_n_c),
                          std::string(1, symbol(c.phase)), c.censored ? "1" : "0"});
  }
  write_csv(out, table);
}

std::vector<PhaseCell> read_phase(std::istream& in) {
  const CsvTable t = read_csv(in);
  expect_header(t, {"L", "epsilon", "delta_n_c", "class", "censored"});
  std::vector<PhaseCell> out;
  for (const auto& row : t.rows) {
    PhaseCell c;
    c.atoms = static_cast<int>(parse_integer(row[0]));
    c.epsilon = parse_double(row[1]);
    c.delta_n_c = parse_integer(row[2]);
    c.phase = classify(c.delta_n_c);
    if (row[3].size() != 1 || row[3][0] != symbol(c.phase)) {
      fail(ErrorKind::InvalidArgument, "phase class disagrees with delta_n_c");
    }
    c.censored = row[4] == "1";
    out.push_back(c);
  }
  return out;
}

void write_symmetry(std::ostream& out, const SymmetryReport& report) {
  CsvTable table;
  table.comments.push_back("cycles " + std::to_string(report.cycles));
  table.header = {"variant", "L", "epsilon", "delta", "v", "t2", "max_p_difference", "n_c", "mirrored_n_c",
                  "violation"};
  for (const auto& e : report.entries) {
    const ModelParams& p = e.params;
    table.rows.push_back({to_string(p.variant), std::to_string(p.atoms), format_double(p.epsilon),
                          format_double(p.delta), format_double(p.interaction), format_double(p.t2),
                          format_double(e.max_p_difference), std::to_string(e.n_c), std::to_string(e.mirrored_n_c),
                          e.violation ? "1" : "0"});
  }
  write_csv(out, table);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path);
  out << content;
  if (!out) fail(ErrorKind::Io, "write failed for " + path);
}

}  // namespace dtc::io
