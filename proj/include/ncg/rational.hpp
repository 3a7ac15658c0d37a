#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ncg {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

inline Rat rat(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rat(BigInt(num), BigInt(den));
}

// Parses "p", "-p", or "p/q". Whitespace not accepted.
Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& r);

// Gaussian rational re + i*im with exact components.
struct GaussRat {
  Rat re{0};
  Rat im{0};

  GaussRat() = default;
  GaussRat(Rat r) : re(std::move(r)) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  static GaussRat unit_i() { return GaussRat(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRat conj() const { return {re, -im}; }

  GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
  GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
  GaussRat operator-() const { return {-re, -im}; }
  GaussRat operator*(const GaussRat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussRat& operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    *this = *this * o;
    return *this;
  }
  GaussRat inv() const {
    Rat n = re * re + im * im;
    if (n == 0) throw std::invalid_argument("division by zero");
    return {re / n, -im / n};
  }
  GaussRat operator/(const GaussRat& o) const { return *this * o.inv(); }
  bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussRat& o) const { return !(*this == o); }
};

std::string gauss_to_string(const GaussRat& g);

}  // namespace ncg
