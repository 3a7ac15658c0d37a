#pragma once

#include "ncg/errors.hpp"
#include "ncg/phase.hpp"

#include <complex>
#include <map>
#include <sstream>
#include <utility>

namespace ncg {

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Cyclo> {
  static Cyclo lambda_pow(const Phase& ph, long long k) { return ph.lambda_pow(k); }
  static Cyclo conj(const Cyclo& c) { return c.conj(); }
  static bool is_zero(const Cyclo& c) { return c.is_zero(); }
  static Cyclo from_int(long long n) { return Cyclo(GaussRat(Rat(n))); }
};

template <>
struct ScalarOps<std::complex<double>> {
  using C = std::complex<double>;
  static C lambda_pow(const Phase& ph, long long k) { return ph.lambda_pow_f(k); }
  static C conj(const C& c) { return std::conj(c); }
  static bool is_zero(const C& c) { return c == C{0.0, 0.0}; }
  static C from_int(long long n) { return C(static_cast<double>(n), 0.0); }
};

// Finite sum (2*pi*i)^pi_power * sum b_{nm} U^n V^m subject to V U = lambda U V.
// The 2*pi*i prefactor is a formal tag: derivations raise it, the star twists
// it by (-1)^pi_power, and sums demand matching powers (pi is not a scalar of
// the coefficient ring). Exact coefficients for rational phases, complex
// doubles otherwise.
template <class S>
class TorusElemT {
 public:
  using Key = std::pair<long long, long long>;  // exponents (n, m) of U^n V^m

  explicit TorusElemT(Phase ph) : ph_(std::move(ph)) {}

  static TorusElemT monomial(const Phase& ph, long long n, long long m, S coeff,
                             int pi_power = 0) {
    TorusElemT e(ph);
    e.pi_pow_ = pi_power;
    if (!ScalarOps<S>::is_zero(coeff)) e.c_[{n, m}] = std::move(coeff);
    return e;
  }
  static TorusElemT unit(const Phase& ph) {
    return monomial(ph, 0, 0, ScalarOps<S>::from_int(1));
  }

  const Phase& phase() const { return ph_; }
  int pi_power() const { return pi_pow_; }
  bool is_zero() const { return c_.empty(); }
  const std::map<Key, S>& coeffs() const { return c_; }

  S coeff(long long n, long long m) const {
    auto it = c_.find({n, m});
    return it == c_.end() ? S{} : it->second;
  }

  TorusElemT operator+(const TorusElemT& o) const {
    require_same_phase(o);
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (pi_pow_ != o.pi_pow_)
      throw ParameterError("cannot add torus elements with different 2*pi*i powers");
    TorusElemT r = *this;
    for (auto& [k, v] : o.c_) r.insert(k, v);
    return r;
  }
  TorusElemT operator-(const TorusElemT& o) const { return *this + (-o); }
  TorusElemT operator-() const {
    TorusElemT r = *this;
    for (auto& [k, v] : r.c_) v = S{} - v;
    return r;
  }

  // (U^a V^b)(U^c V^d) = lambda^{bc} U^{a+c} V^{b+d}
  TorusElemT operator*(const TorusElemT& o) const {
    require_same_phase(o);
    TorusElemT r(ph_);
    r.pi_pow_ = pi_pow_ + o.pi_pow_;
    for (auto& [ka, va] : c_)
      for (auto& [kb, vb] : o.c_) {
        S w = va * vb * ScalarOps<S>::lambda_pow(ph_, ka.second * kb.first);
        r.insert({ka.first + kb.first, ka.second + kb.second}, w);
      }
    return r;
  }

  TorusElemT scaled(const S& s) const {
    TorusElemT r(ph_);
    r.pi_pow_ = pi_pow_;
    for (auto& [k, v] : c_) r.insert(k, v * s);
    return r;
  }

  // (b U^n V^m)* = conj(b) lambda^{nm} U^{-n} V^{-m}; conjugation also flips
  // the sign of each 2*pi*i prefactor.
  TorusElemT star() const {
    TorusElemT r(ph_);
    r.pi_pow_ = pi_pow_;
    bool flip = (pi_pow_ % 2) != 0;
    for (auto& [k, v] : c_) {
      S w = ScalarOps<S>::conj(v) * ScalarOps<S>::lambda_pow(ph_, k.first * k.second);
      if (flip) w = S{} - w;
      r.insert({-k.first, -k.second}, w);
    }
    return r;
  }

  // Canonical trace: the coefficient of U^0 V^0 (pi_power reported separately).
  S trace() const { return coeff(0, 0); }

  // delta_1 scales U^n V^m by n, delta_2 by m; each raises pi_power by one.
  TorusElemT derive(int direction) const {
    if (direction != 1 && direction != 2)
      throw ParameterError("derivation direction must be 1 or 2");
    TorusElemT r(ph_);
    r.pi_pow_ = pi_pow_ + 1;
    for (auto& [k, v] : c_) {
      long long deg = direction == 1 ? k.first : k.second;
      r.insert(k, v * ScalarOps<S>::from_int(deg));
    }
    return r;
  }

  bool operator==(const TorusElemT& o) const {
    if (ph_ != o.ph_) return false;
    if (is_zero() && o.is_zero()) return true;
    return pi_pow_ == o.pi_pow_ && c_ == o.c_;
  }
  bool operator!=(const TorusElemT& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  Phase ph_;
  int pi_pow_ = 0;
  std::map<Key, S> c_;

  void insert(const Key& k, const S& v) {
    auto it = c_.find(k);
    if (it == c_.end()) {
      if (!ScalarOps<S>::is_zero(v)) c_[k] = v;
      return;
    }
    it->second = it->second + v;
    if (ScalarOps<S>::is_zero(it->second)) c_.erase(it);
  }

  void require_same_phase(const TorusElemT& o) const {
    if (ph_ != o.ph_)
      throw ParameterError("torus elements carry different deformation phases");
  }
};

using TorusElement = TorusElemT<Cyclo>;
using TorusElementF = TorusElemT<std::complex<double>>;

template <class S>
TorusElemT<S> torus_mul(const TorusElemT<S>& a, const TorusElemT<S>& b) {
  return a * b;
}
template <class S>
TorusElemT<S> torus_star(const TorusElemT<S>& a) {
  return a.star();
}
template <class S>
S torus_trace(const TorusElemT<S>& a) {
  return a.trace();
}
// The basic derivations delta_1, delta_2.
template <class S>
TorusElemT<S> delta(int j, const TorusElemT<S>& a) {
  return a.derive(j);
}

inline std::string monomial_name(long long n, long long m) {
  std::ostringstream os;
  if (n == 0 && m == 0) return "1";
  if (n != 0) {
    os << "U";
    if (n != 1) os << "^" << n;
  }
  if (m != 0) {
    if (n != 0) os << " ";
    os << "V";
    if (m != 1) os << "^" << m;
  }
  return os.str();
}

template <class S>
std::string TorusElemT<S>::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  if (pi_pow_ != 0) os << "(2*pi*i)^" << pi_pow_ << " * [";
  bool first = true;
  for (auto& [k, v] : c_) {
    if (!first) os << " + ";
    first = false;
    if constexpr (std::is_same_v<S, Cyclo>)
      os << "(" << v.to_string() << ")";
    else
      os << "(" << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i)";
    os << " " << monomial_name(k.first, k.second);
  }
  if (pi_pow_ != 0) os << "]";
  return os.str();
}

}  // namespace ncg
