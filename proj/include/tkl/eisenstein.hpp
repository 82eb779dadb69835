#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace tkl {

// Exact element of Z[zeta], zeta a primitive cube root of unity
// (zeta^2 = -1 - zeta). Stored as u + v*zeta.
struct EisensteinInt {
  boost::multiprecision::cpp_int u, v;

  bool is_rational() const { return v == 0; }

  friend EisensteinInt operator+(const EisensteinInt& a, const EisensteinInt& b) {
    return {a.u + b.u, a.v + b.v};
  }
  friend EisensteinInt operator-(const EisensteinInt& a, const EisensteinInt& b) {
    return {a.u - b.u, a.v - b.v};
  }
  EisensteinInt operator-() const { return {-u, -v}; }
  friend EisensteinInt operator*(const EisensteinInt& a, const EisensteinInt& b) {
    return {a.u * b.u - a.v * b.v, a.u * b.v + a.v * b.u - a.v * b.v};
  }
  friend bool operator==(const EisensteinInt& a, const EisensteinInt& b) {
    return a.u == b.u && a.v == b.v;
  }
  friend bool operator!=(const EisensteinInt& a, const EisensteinInt& b) { return !(a == b); }

  EisensteinInt times_zeta() const { return {-v, u - v}; }
  EisensteinInt times_zeta_sq() const { return {v - u, -u}; }
};

// zeta^t for t in {0, 1, 2}.
inline EisensteinInt zeta_power(int t) {
  switch (t % 3) {
    case 1:
      return {0, 1};
    case 2:
      return {-1, -1};
    default:
      return {1, 0};
  }
}

}  // namespace tkl
