#pragma once

#include "ncg/cyclo.hpp"

#include <complex>
#include <numeric>
#include <stdexcept>

namespace ncg {

// Deformation parameter theta of the twist lambda = exp(2*pi*i*theta).
// A rational theta = p/q is kept exact (lambda powers live in the order-q
// cyclotomic ring); an irrational theta falls back to double precision.
class Phase {
 public:
  static Phase rational(long long p, long long q) {
    if (q <= 0) throw std::invalid_argument("phase denominator must be positive");
    long long g = std::gcd(p < 0 ? -p : p, q);
    p /= g;
    q /= g;
    p %= q;
    if (p < 0) p += q;
    Phase ph;
    ph.exact_ = true;
    ph.p_ = p;
    ph.q_ = q;
    ph.theta_ = static_cast<double>(p) / static_cast<double>(q);
    return ph;
  }

  static Phase irrational(double theta) {
    Phase ph;
    ph.exact_ = false;
    ph.theta_ = theta;
    return ph;
  }

  bool exact() const { return exact_; }
  long long p() const { return p_; }
  long long q() const { return q_; }
  double theta() const { return theta_; }

  // lambda^k in the cyclotomic ring; exact phases only.
  Cyclo lambda_pow(long long k) const {
    if (!exact_) throw std::domain_error("lambda_pow requires a rational phase");
    return Cyclo::root_pow(static_cast<int>(q_), p_ * k);
  }

  std::complex<double> lambda_pow_f(long long k) const {
    constexpr double two_pi = 6.283185307179586476925286766559;
    if (exact_) {
      long long e = ((p_ * k) % q_ + q_) % q_;
      return std::polar(1.0, two_pi * static_cast<double>(e) / static_cast<double>(q_));
    }
    return std::polar(1.0, two_pi * theta_ * static_cast<double>(k));
  }

  bool operator==(const Phase& o) const {
    if (exact_ != o.exact_) return false;
    if (exact_) return p_ == o.p_ && q_ == o.q_;
    return theta_ == o.theta_;
  }
  bool operator!=(const Phase& o) const { return !(*this == o); }

 private:
  bool exact_ = true;
  long long p_ = 0;
  long long q_ = 1;
  double theta_ = 0.0;
};

}  // namespace ncg
