#ifndef RELENERGY_ERRORS_HPP
#define RELENERGY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace relenergy {

/// State outside the physical domain (negative density, non-finite input).
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A lemma/theorem hypothesis is violated (e.g. gamma < 2 with vacuum box).
class hypothesis_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The requested regime is valid but not covered by this code path.
class unsupported_regime_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Non-finite state produced by the solver; carries the offending cell.
class blowup_error : public std::runtime_error {
public:
  blowup_error(std::string what, int cell, double time)
      : std::runtime_error(std::move(what)), cell(cell), time(time) {}
  int cell;
  double time;
};

/// A quadrature or evaluation region is not covered by the available grid.
class coverage_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class insufficient_data_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Radial direction undefined (evaluation exactly at the cutoff centre).
class undefined_direction_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class config_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace relenergy

#endif
