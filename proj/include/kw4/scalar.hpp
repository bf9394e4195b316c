#pragma once

// Scalar rings used by the engine: real doubles and a minimal complex type.
//
// The complex type is a plain pair of doubles. Arithmetic is arranged so that
// a computation on complex values with zero imaginary parts produces, in the
// real components, exactly the bits the same computation produces on doubles.

#include <cmath>
#include <concepts>
#include <ostream>

namespace kw4 {

struct Complex {
  double re = 0.0;
  double im = 0.0;

  constexpr Complex() = default;
  constexpr Complex(double r) : re(r) {}  // NOLINT(google-explicit-constructor)
  constexpr Complex(double r, double i) : re(r), im(i) {}

  constexpr Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  constexpr Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  constexpr Complex& operator*=(const Complex& o) {
    const double r = re * o.re - im * o.im;
    const double i = re * o.im + im * o.re;
    re = r;
    im = i;
    return *this;
  }
  // Smith's algorithm; reduces to re / o.re when both imaginary parts vanish.
  Complex& operator/=(const Complex& o) {
    if (std::abs(o.im) <= std::abs(o.re)) {
      const double r = o.im / o.re;
      const double den = o.re + o.im * r;
      const double nr = (re + im * r) / den;
      const double ni = (im - re * r) / den;
      re = nr;
      im = ni;
    } else {
      const double r = o.re / o.im;
      const double den = o.re * r + o.im;
      const double nr = (re * r + im) / den;
      const double ni = (im * r - re) / den;
      re = nr;
      im = ni;
    }
    return *this;
  }

  friend constexpr Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend constexpr Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend constexpr Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend constexpr Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend constexpr bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }

  friend std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << '(' << z.re << (z.im < 0 ? "-" : "+") << std::abs(z.im) << "i)";
  }
};

inline constexpr Complex kImaginaryUnit{0.0, 1.0};

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Complex>;

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Complex& z) { return std::hypot(z.re, z.im); }

inline double real_part(double x) { return x; }
inline double real_part(const Complex& z) { return z.re; }
inline double imag_part(double) { return 0.0; }
inline double imag_part(const Complex& z) { return z.im; }

inline double scalar_exp(double x) { return std::exp(x); }
inline Complex scalar_exp(const Complex& z) {
  const double r = std::exp(z.re);
  return {r * std::cos(z.im), r * std::sin(z.im)};
}

template <Scalar S>
constexpr bool is_complex_v = std::same_as<S, Complex>;

}  // namespace kw4
