#include "relenergy/trajectory_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace relenergy {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string write_trajectory(const Trajectory& t) {
  std::string out;
  out.reserve(t.snapshots.size() * (t.snapshots.empty() ? 64 : t.snapshots[0].cells.size() * 48));
  for (const auto& f : t.snapshots) {
    out += "# t=" + format_double(f.time) + " n=" + std::to_string(f.grid.n_cells) +
           " dx=" + format_double(f.grid.dx()) +
           " gamma=" + format_double(t.config.gamma) + "\n";
    out += "i,x_center,rho,mom\n";
    for (int i = 0; i < f.grid.n_cells; ++i) {
      out += std::to_string(i);
      out += ',';
      out += format_double(f.grid.center(i));
      out += ',';
      out += format_double(f.cells[i].rho);
      out += ',';
      out += format_double(f.cells[i].mom);
      out += '\n';
    }
  }
  return out;
}

void write_trajectory_file(const Trajectory& t, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << write_trajectory(t);
}

namespace {

double parse_field(const std::string& line, const char* key) {
  const auto pos = line.find(key);
  if (pos == std::string::npos)
    throw std::runtime_error("trajectory header missing field: " + std::string(key));
  return std::strtod(line.c_str() + pos + std::strlen(key), nullptr);
}

} // namespace

Trajectory read_trajectory(const std::string& text) {
  Trajectory traj;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] != '#')
      throw std::runtime_error("trajectory: expected '# t=...' header, got: " + line);
    Field f;
    f.time = parse_field(line, "t=");
    const int n = static_cast<int>(parse_field(line, "n="));
    const double dx = parse_field(line, "dx=");
    traj.config.gamma = parse_field(line, "gamma=");
    if (!std::getline(is, line) || line != "i,x_center,rho,mom")
      throw std::runtime_error("trajectory: expected column header after block header");
    f.cells.resize(n);
    double x0 = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!std::getline(is, line))
        throw std::runtime_error("trajectory: truncated snapshot block");
      const char* p = line.c_str();
      char* end = nullptr;
      const long idx = std::strtol(p, &end, 10);
      if (idx != i || *end != ',')
        throw std::runtime_error("trajectory: bad row index in: " + line);
      p = end + 1;
      const double xc = std::strtod(p, &end);
      if (*end != ',') throw std::runtime_error("trajectory: bad row: " + line);
      p = end + 1;
      f.cells[i].rho = std::strtod(p, &end);
      if (*end != ',') throw std::runtime_error("trajectory: bad row: " + line);
      p = end + 1;
      f.cells[i].mom = std::strtod(p, &end);
      if (i == 0) x0 = xc;
    }
    // The header stores dx, not the endpoints; recover them from the first
    // cell centre. Exact for the grids this project ships.
    f.grid.n_cells = n;
    f.grid.x_min = x0 - 0.5 * dx;
    f.grid.x_max = f.grid.x_min + n * dx;
    traj.snapshots.push_back(std::move(f));
  }
  return traj;
}

Trajectory read_trajectory_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return read_trajectory(ss.str());
}

} // namespace relenergy
