#pragma once

#include <array>

#include "qts/rational.hpp"

namespace qts {

// Cubic polynomial c[0] + c[1] t + c[2] t^2 + c[3] t^3 with rational
// coefficients, compared by value at all large t.
struct HilbertPoly {
  std::array<Rational, 4> c{Rational(0), Rational(0), Rational(0), Rational(0)};

  bool operator==(const HilbertPoly&) const = default;
};

// (t+1)(t+2)(t+3)/6, the polynomial of the structure sheaf of 3-space.
inline HilbertPoly structure_poly() {
  HilbertPoly p;
  p.c = {Rational(1), Rational(11, 6), Rational(1), Rational(1, 6)};
  return p;
}

// r copies of the structure polynomial minus a length-n correction: the
// polynomial of the kernel of a surjection O^r -> Q with Q of length n.
inline HilbertPoly kernel_poly(int r, long long n) {
  HilbertPoly p = structure_poly();
  for (auto& ci : p.c) ci *= r;
  p.c[0] -= n;
  return p;
}

// Polynomial of a length-n quotient (the constant n).
inline HilbertPoly quotient_poly(long long n) {
  HilbertPoly p;
  p.c[0] = n;
  return p;
}

inline Rational eval(const HilbertPoly& p, const Rational& t) {
  return ((p.c[3] * t + p.c[2]) * t + p.c[1]) * t + p.c[0];
}

enum class Ordering { less, equal, greater };

// Orders p/s against q/r coefficientwise from the top degree down.
inline Ordering compare_reduced(const HilbertPoly& p, long long s, const HilbertPoly& q,
                                long long r) {
  for (int d = 3; d >= 0; --d) {
    // p.c[d]/s vs q.c[d]/r with s, r > 0.
    const Rational lhs = p.c[d] * r;
    const Rational rhs = q.c[d] * s;
    if (lhs < rhs) return Ordering::less;
    if (lhs > rhs) return Ordering::greater;
  }
  return Ordering::equal;
}

}  // namespace qts
