#pragma once

#include <cmath>

namespace pdc {

// Second-order dual number: carries a value together with first and second
// derivatives with respect to one independent variable. Used to obtain group
// velocities and group-velocity dispersion from the index formulas without
// finite differences (step-size noise makes d2k/dw2 unrecoverable in double
// precision otherwise).
struct Dual2 {
  double v = 0.0;   // value
  double d1 = 0.0;  // first derivative
  double d2 = 0.0;  // second derivative

  static Dual2 variable(double x) { return {x, 1.0, 0.0}; }
  static Dual2 constant(double x) { return {x, 0.0, 0.0}; }
};

inline Dual2 operator+(const Dual2& a, const Dual2& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}
inline Dual2 operator-(const Dual2& a, const Dual2& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}
inline Dual2 operator-(const Dual2& a) { return {-a.v, -a.d1, -a.d2}; }
inline Dual2 operator*(const Dual2& a, const Dual2& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1,
          a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
inline Dual2 operator/(const Dual2& a, const Dual2& b) {
  const double q = a.v / b.v;
  const double q1 = (a.d1 - q * b.d1) / b.v;
  const double q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) / b.v;
  return {q, q1, q2};
}
inline Dual2 operator+(const Dual2& a, double c) { return a + Dual2::constant(c); }
inline Dual2 operator+(double c, const Dual2& a) { return Dual2::constant(c) + a; }
inline Dual2 operator-(const Dual2& a, double c) { return a - Dual2::constant(c); }
inline Dual2 operator-(double c, const Dual2& a) { return Dual2::constant(c) - a; }
inline Dual2 operator*(const Dual2& a, double c) { return a * Dual2::constant(c); }
inline Dual2 operator*(double c, const Dual2& a) { return Dual2::constant(c) * a; }
inline Dual2 operator/(const Dual2& a, double c) { return a / Dual2::constant(c); }
inline Dual2 operator/(double c, const Dual2& a) { return Dual2::constant(c) / a; }

inline Dual2 sqrt(const Dual2& a) {
  const double s = std::sqrt(a.v);
  const double d1 = a.d1 / (2.0 * s);
  const double d2 = a.d2 / (2.0 * s) - a.d1 * a.d1 / (4.0 * s * a.v);
  return {s, d1, d2};
}

}
