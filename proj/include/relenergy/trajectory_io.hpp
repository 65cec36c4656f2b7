#ifndef RELENERGY_TRAJECTORY_IO_HPP
#define RELENERGY_TRAJECTORY_IO_HPP

#include <string>

#include "relenergy/solver.hpp"

namespace relenergy {

/// One block per snapshot:
///   # t=<time> n=<cells> dx=<dx> gamma=<gamma>
///   i,x_center,rho,mom
///   <i>,<x>,<rho>,<mom>
/// Doubles are printed with 17 significant digits so numeric fields
/// round-trip bit-exactly.
std::string write_trajectory(const Trajectory& t);
void write_trajectory_file(const Trajectory& t, const std::string& path);

Trajectory read_trajectory(const std::string& text);
Trajectory read_trajectory_file(const std::string& path);

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

} // namespace relenergy

#endif
