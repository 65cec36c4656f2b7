#ifndef RELENERGY_GEOM_HPP
#define RELENERGY_GEOM_HPP

#include <array>
#include <cmath>
#include <cstddef>

namespace relenergy {

template <std::size_t D>
using Vec = std::array<double, D>;

using Vec1 = Vec<1>;
using Vec2 = Vec<2>;

template <std::size_t D>
inline double dot(const Vec<D>& a, const Vec<D>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < D; ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t D>
inline double norm2(const Vec<D>& a) {
  return dot(a, a);
}

template <std::size_t D>
inline double norm(const Vec<D>& a) {
  return std::sqrt(norm2(a));
}

template <std::size_t D>
inline Vec<D> operator+(Vec<D> a, const Vec<D>& b) {
  for (std::size_t i = 0; i < D; ++i) a[i] += b[i];
  return a;
}

template <std::size_t D>
inline Vec<D> operator-(Vec<D> a, const Vec<D>& b) {
  for (std::size_t i = 0; i < D; ++i) a[i] -= b[i];
  return a;
}

template <std::size_t D>
inline Vec<D> operator*(double s, Vec<D> a) {
  for (std::size_t i = 0; i < D; ++i) a[i] *= s;
  return a;
}

} // namespace relenergy

#endif
