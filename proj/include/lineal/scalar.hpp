#pragma once

#include <cmath>
#include <complex>

namespace lineal {

// Comparison tolerance for amplitudes, probabilities and unitarity checks.
inline constexpr double kEpsilon = 1e-9;

// Complex scalar with epsilon-tolerant equality. Exact comparison is still
// available through the ordering helper used by canonicalization.
struct Scalar {
  double re = 0.0;
  double im = 0.0;

  constexpr Scalar() = default;
  constexpr Scalar(double r, double i) : re(r), im(i) {}
  explicit constexpr Scalar(double r) : re(r), im(0.0) {}

  static constexpr Scalar zero() { return Scalar(0.0, 0.0); }
  static constexpr Scalar one() { return Scalar(1.0, 0.0); }

  std::complex<double> to_complex() const { return {re, im}; }
  static Scalar from_complex(std::complex<double> c) { return {c.real(), c.imag()}; }

  double norm2() const { return re * re + im * im; }
  double abs() const { return std::sqrt(norm2()); }
  Scalar conj() const { return {re, -im}; }

  Scalar operator+(const Scalar& o) const { return {re + o.re, im + o.im}; }
  Scalar operator-(const Scalar& o) const { return {re - o.re, im - o.im}; }
  Scalar operator*(const Scalar& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Scalar operator-() const { return {-re, -im}; }

  bool approx_eq(const Scalar& o, double eps = kEpsilon) const {
    return std::abs(re - o.re) <= eps && std::abs(im - o.im) <= eps;
  }
  bool approx_zero(double eps = kEpsilon) const { return approx_eq(zero(), eps); }
  bool approx_one(double eps = kEpsilon) const { return approx_eq(one(), eps); }
};

// Total order on the raw doubles; used only to make canonical forms
// deterministic, never for semantic equality.
inline int scalar_order(const Scalar& a, const Scalar& b) {
  if (a.re < b.re) return -1;
  if (a.re > b.re) return 1;
  if (a.im < b.im) return -1;
  if (a.im > b.im) return 1;
  return 0;
}

inline bool approx(double a, double b, double eps = kEpsilon) {
  return std::abs(a - b) <= eps;
}

}  // namespace lineal
