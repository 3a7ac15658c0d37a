#include "ncg/hermite_curvature.hpp"

#include <cmath>

namespace ncg {

QuadRat QuadRat::sqrt_of(long long n) {
  if (n < 0) throw ParameterError("negative radicand");
  QuadRat q;
  if (n == 0) return q;
  // peel square factors into the rational weight
  Rat outside(1);
  long long r = n;
  for (long long d = 2; d * d <= r; ++d)
    while (r % (d * d) == 0) {
      r /= d * d;
      outside *= d;
    }
  q.terms[r] = outside;
  return q;
}

double QuadRat::to_double() const {
  double acc = 0.0;
  for (auto& [r, c] : terms) acc += ncg::to_double(c) * std::sqrt(static_cast<double>(r));
  return acc;
}

QuadRat QuadRat::operator+(const QuadRat& o) const {
  QuadRat q = *this;
  for (auto& [r, c] : o.terms) {
    auto it = q.terms.find(r);
    if (it == q.terms.end()) {
      if (c != 0) q.terms[r] = c;
    } else {
      it->second += c;
      if (it->second == 0) q.terms.erase(it);
    }
  }
  return q;
}

QuadRat QuadRat::operator-(const QuadRat& o) const { return *this + (-o); }

QuadRat QuadRat::operator-() const {
  QuadRat q = *this;
  for (auto& [r, c] : q.terms) c = -c;
  return q;
}

QuadRat QuadRat::operator*(const QuadRat& o) const {
  QuadRat acc;
  for (auto& [r1, c1] : terms)
    for (auto& [r2, c2] : o.terms) {
      QuadRat part = sqrt_of(r1 * r2);
      for (auto& [r, c] : part.terms) {
        QuadRat piece;
        piece.terms[r] = c * c1 * c2;
        acc += piece;
      }
    }
  return acc;
}

bool HermiteVector::is_zero() const {
  for (auto& c : coef)
    if (!c.is_zero()) return false;
  return true;
}

HermiteVector HermiteVector::basis(int n, int N) {
  if (n < 0 || n > N) throw ParameterError("basis index outside 0..N");
  HermiteVector v;
  v.coef.assign(N + 1, QuadRat());
  v.coef[n] = QuadRat(Rat(1));
  return v;
}

namespace {

// a_n = sqrt(n/2) = sqrt(2n)/2
QuadRat ladder(long long n) {
  QuadRat q = QuadRat::sqrt_of(2 * n);
  for (auto& [r, c] : q.terms) c /= 2;
  return q;
}

// position operator: (S xi)_m = a_m xi_{m-1} + a_{m+1} xi_{m+1}
std::vector<QuadRat> apply_S(const std::vector<QuadRat>& x) {
  int N = static_cast<int>(x.size()) - 1;
  std::vector<QuadRat> y(N + 1);
  for (int m = 0; m <= N; ++m) {
    if (m > 0) y[m] += ladder(m) * x[m - 1];
    if (m < N) y[m] += ladder(m + 1) * x[m + 1];
  }
  return y;
}

// derivative operator: (D xi)_m = a_{m+1} xi_{m+1} - a_m xi_{m-1}
std::vector<QuadRat> apply_D(const std::vector<QuadRat>& x) {
  int N = static_cast<int>(x.size()) - 1;
  std::vector<QuadRat> y(N + 1);
  for (int m = 0; m <= N; ++m) {
    if (m < N) y[m] += ladder(m + 1) * x[m + 1];
    if (m > 0) y[m] += -(ladder(m) * x[m - 1]);
  }
  return y;
}

}  // namespace

HermiteVector connection_apply_exact(int j, const HermiteVector& xi, const Rat& theta) {
  HermiteVector out;
  out.pi_power = xi.pi_power;
  out.rational_scale = xi.rational_scale;
  if (j == 1) {
    if (theta == 0) throw ParameterError("connection is singular at theta = 0");
    out.coef = apply_S(xi.coef);
    out.rational_scale *= -1 / theta;
    out.pi_power += 1;
    return out;
  }
  if (j != 2) throw ParameterError("connection direction must be 1 or 2");
  out.coef = apply_D(xi.coef);
  return out;
}

ExactCurvature curvature_exact(const Rat& theta, const HermiteVector& xi) {
  if (theta == 0) throw ParameterError("connection is singular at theta = 0");
  if (xi.is_zero()) throw ParameterError("curvature of an identically zero vector");
  if (!xi.coef.back().is_zero())
    throw ParameterError("top Hermite coefficient must vanish (truncation defect)");

  // [S, D] equals -identity except for a +N defect at the top degree, which
  // the support condition above keeps out of play. Both commutator terms
  // carry the same -(2*pi*i/theta) prefactor, so the coefficient arrays
  // compare directly.
  HermiteVector c12 = connection_apply_exact(1, connection_apply_exact(2, xi, theta), theta);
  HermiteVector c21 = connection_apply_exact(2, connection_apply_exact(1, xi, theta), theta);
  for (size_t m = 0; m < xi.coef.size(); ++m) {
    QuadRat comm = c12.coef[m] - c21.coef[m];  // = ([S,D] xi)_m
    if (comm != -xi.coef[m])
      throw ParameterError("curvature is not pointwise constant on this vector");
  }

  // grad_1 grad_2 - grad_2 grad_1 = -(2*pi*i/theta) [S, D] = (2*pi*i/theta) id
  ExactCurvature out;
  out.inverse_theta = 1 / theta;
  out.pi_power = 1;
  out.normalized_total = theta * out.inverse_theta;
  out.raw_ratio = {0.0, 2 * 3.14159265358979323846 / ncg::to_double(theta)};
  return out;
}

}  // namespace ncg
