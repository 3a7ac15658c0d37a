#pragma once

#include "ncg/rational.hpp"

#include <complex>
#include <map>
#include <vector>

namespace ncg {

// Element of Q(i)[zeta_q], zeta_q = exp(2*pi*i/q), stored in the canonical
// basis 1, zeta, ..., zeta^{phi'-1} where phi' = deg Phi_q. Every mutating
// operation re-reduces modulo the cyclotomic polynomial Phi_q, so equality of
// the coefficient maps is equality in the ring. q = 1 is the scalar field
// Q(i) itself; mixed-order arithmetic lifts both operands to the lcm order.
class Cyclo {
 public:
  Cyclo() : q_(1) {}
  explicit Cyclo(GaussRat scalar, int q = 1);
  Cyclo(int q, std::map<int, GaussRat> coeffs);  // reduces

  static Cyclo zero(int q = 1) { return Cyclo(GaussRat(), q); }
  static Cyclo one(int q = 1) { return Cyclo(GaussRat(Rat(1)), q); }
  // zeta_q^k for any integer k (reduced mod q, then mod Phi_q).
  static Cyclo root_pow(int q, long long k);

  int order() const { return q_; }
  bool is_zero() const { return c_.empty(); }
  const std::map<int, GaussRat>& coeffs() const { return c_; }

  // Scalar part if the element lies in Q(i) (i.e. all zeta terms vanished);
  // throws otherwise. Always succeeds for q = 1.
  GaussRat as_scalar() const;
  bool is_scalar() const;

  Cyclo conj() const;  // complex conjugation: zeta^k -> zeta^{-k}, i -> -i

  Cyclo operator+(const Cyclo& o) const;
  Cyclo operator-(const Cyclo& o) const;
  Cyclo operator-() const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
  bool operator==(const Cyclo& o) const;
  bool operator!=(const Cyclo& o) const { return !(*this == o); }

  Cyclo scaled(const GaussRat& s) const;

  std::complex<double> to_complex() const;
  std::string to_string() const;

  // Coefficient vector of Phi_q in increasing degree; cached per q.
  static const std::vector<BigInt>& cyclotomic(int q);

 private:
  int q_;
  std::map<int, GaussRat> c_;  // exponent -> coefficient, kept reduced

  void reduce();
  Cyclo lifted(int new_q) const;  // q_ must divide new_q
};

}  // namespace ncg
