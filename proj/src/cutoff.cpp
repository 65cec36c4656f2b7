#include "relenergy/cutoff.hpp"

// Header-only module; this translation unit pins the template instantiations
// used throughout the project.

namespace relenergy {

template struct TransportedCutoff<1>;
template struct TransportedCutoff<2>;

template double bump_eval<1>(const RadialBump<1>&, const Vec<1>&);
template double bump_eval<2>(const RadialBump<2>&, const Vec<2>&);
template double transport_residual<1>(const TransportedCutoff<1>&, const Vec<1>&,
                                      double, double);
template double transport_residual<2>(const TransportedCutoff<2>&, const Vec<2>&,
                                      double, double);

} // namespace relenergy
