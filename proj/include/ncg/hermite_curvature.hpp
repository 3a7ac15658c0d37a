#pragma once

#include "ncg/errors.hpp"
#include "ncg/rational.hpp"

#include <complex>
#include <map>
#include <vector>

namespace ncg {

// Finite sum c_1*sqrt(r_1) + ... with squarefree integer radicands and exact
// rational weights. Closed under ring operations; sqrt(1) carries the
// rational part.
struct QuadRat {
  std::map<long long, Rat> terms;  // radicand -> coefficient

  QuadRat() = default;
  explicit QuadRat(Rat r) {
    if (r != 0) terms[1] = std::move(r);
  }
  static QuadRat sqrt_of(long long n);  // n >= 0

  bool is_zero() const { return terms.empty(); }
  double to_double() const;

  QuadRat operator+(const QuadRat& o) const;
  QuadRat operator-(const QuadRat& o) const;
  QuadRat operator-() const;
  QuadRat operator*(const QuadRat& o) const;
  QuadRat& operator+=(const QuadRat& o) { return *this = *this + o; }
  bool operator==(const QuadRat& o) const { return terms == o.terms; }
  bool operator!=(const QuadRat& o) const { return !(*this == o); }
};

// Schwartz vector in the orthonormal Hermite basis h_0..h_N with exact
// quadratic-rational coefficients. The ladder recurrences
//   s h_n = sqrt((n+1)/2) h_{n+1} + sqrt(n/2) h_{n-1}
//   h_n'  = sqrt(n/2) h_{n-1} - sqrt((n+1)/2) h_{n+1}
// make both connection directions exact tridiagonal maps. rational_scale and
// pi_power track the -(1/theta) and 2*pi*i prefactors symbolically.
struct HermiteVector {
  std::vector<QuadRat> coef;
  Rat rational_scale{1};
  int pi_power = 0;

  bool is_zero() const;
  static HermiteVector basis(int n, int N);  // h_n padded to degree N
};

// Exact connection: j=1 multiplies by -(2*pi*i*s/theta) via the position
// ladder; j=2 differentiates via the derivative ladder.
HermiteVector connection_apply_exact(int j, const HermiteVector& xi, const Rat& theta);

struct ExactCurvature {
  Rat inverse_theta;               // [grad_1, grad_2] = (2*pi*i) * inverse_theta * id
  int pi_power;                    // always 1
  Rat normalized_total;            // theta * inverse_theta, exactly 1
  std::complex<double> raw_ratio;  // 2*pi*i/theta as a number
};

// Applies the commutator to xi and certifies pointwise constancy exactly.
// xi must be nonzero with a vanishing top coefficient (the one truncation
// defect of the ladder sits at the highest degree).
ExactCurvature curvature_exact(const Rat& theta, const HermiteVector& xi);

}  // namespace ncg
