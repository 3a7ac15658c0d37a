#include "ncg/cyclo.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ncg {

Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
}

std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

std::string gauss_to_string(const GaussRat& g) {
  if (g.im == 0) return rat_to_string(g.re);
  std::ostringstream os;
  if (g.re != 0) os << rat_to_string(g.re) << (g.im > 0 ? "+" : "");
  os << rat_to_string(g.im) << "i";
  return os.str();
}

namespace {

// Polynomial quotient over BigInt, exact division assumed (both cyclotomic).
std::vector<BigInt> poly_div_exact(std::vector<BigInt> num,
                                   const std::vector<BigInt>& den) {
  std::vector<BigInt> quot(num.size() - den.size() + 1);
  for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
    BigInt c = num[k + den.size() - 1] / den.back();
    quot[k] = c;
    if (c == 0) continue;
    for (size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
  }
  return quot;
}

}  // namespace

const std::vector<BigInt>& Cyclo::cyclotomic(int q) {
  static std::map<int, std::vector<BigInt>> cache;
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  if (q < 1) throw std::invalid_argument("cyclotomic order must be positive");
  // Phi_q = (x^q - 1) / prod_{d | q, d < q} Phi_d
  std::vector<BigInt> num(q + 1);
  num[0] = -1;
  num[q] = 1;
  for (int d = 1; d < q; ++d)
    if (q % d == 0) num = poly_div_exact(std::move(num), cyclotomic(d));
  return cache.emplace(q, std::move(num)).first->second;
}

Cyclo::Cyclo(GaussRat scalar, int q) : q_(q) {
  if (q < 1) throw std::invalid_argument("cyclotomic order must be positive");
  if (!scalar.is_zero()) c_[0] = std::move(scalar);
  reduce();
}

Cyclo::Cyclo(int q, std::map<int, GaussRat> coeffs) : q_(q), c_(std::move(coeffs)) {
  if (q < 1) throw std::invalid_argument("cyclotomic order must be positive");
  reduce();
}

Cyclo Cyclo::root_pow(int q, long long k) {
  long long e = ((k % q) + q) % q;
  std::map<int, GaussRat> m;
  m[static_cast<int>(e)] = GaussRat(Rat(1));
  return Cyclo(q, std::move(m));
}

void Cyclo::reduce() {
  // Fold exponents >= q via zeta^q = 1, then take the remainder mod Phi_q.
  const auto& phi = cyclotomic(q_);
  int deg = static_cast<int>(phi.size()) - 1;
  std::map<int, GaussRat> folded;
  for (auto& [e, v] : c_) {
    if (v.is_zero()) continue;
    int r = ((e % q_) + q_) % q_;
    folded[r] += v;
  }
  // Remainder by the monic Phi_q, highest exponent first.
  while (!folded.empty()) {
    auto top = std::prev(folded.end());
    if (top->first < deg) break;
    GaussRat lead = top->second;
    int shift = top->first - deg;
    folded.erase(top);
    if (lead.is_zero()) continue;
    for (int j = 0; j < deg; ++j) {
      if (phi[j] == 0) continue;
      folded[j + shift] += -lead * GaussRat(Rat(phi[j]));
    }
  }
  c_.clear();
  for (auto& [e, v] : folded)
    if (!v.is_zero()) c_[e] = v;
}

Cyclo Cyclo::lifted(int new_q) const {
  if (new_q == q_) return *this;
  if (new_q % q_ != 0) throw std::invalid_argument("incompatible root orders");
  int scale = new_q / q_;
  std::map<int, GaussRat> m;
  for (auto& [e, v] : c_) m[e * scale] = v;
  return Cyclo(new_q, std::move(m));
}

namespace {
int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }
}  // namespace

Cyclo Cyclo::operator+(const Cyclo& o) const {
  int q = lcm_int(q_, o.q_);
  Cyclo a = lifted(q), b = o.lifted(q);
  for (auto& [e, v] : b.c_) a.c_[e] += v;
  a.reduce();
  return a;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& [e, v] : r.c_) v = -v;
  return r;
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
  int q = lcm_int(q_, o.q_);
  Cyclo a = lifted(q), b = o.lifted(q);
  std::map<int, GaussRat> prod;
  for (auto& [ea, va] : a.c_)
    for (auto& [eb, vb] : b.c_) prod[ea + eb] += va * vb;
  return Cyclo(q, std::move(prod));
}

bool Cyclo::operator==(const Cyclo& o) const {
  // Reduce to a common order; canonical forms then compare directly.
  int q = lcm_int(q_, o.q_);
  return lifted(q).c_ == o.lifted(q).c_;
}

Cyclo Cyclo::scaled(const GaussRat& s) const {
  Cyclo r = *this;
  if (s.is_zero()) {
    r.c_.clear();
    return r;
  }
  for (auto& [e, v] : r.c_) v *= s;
  return r;
}

Cyclo Cyclo::conj() const {
  std::map<int, GaussRat> m;
  for (auto& [e, v] : c_) m[(q_ - e) % q_] += v.conj();
  return Cyclo(q_, std::move(m));
}

bool Cyclo::is_scalar() const {
  return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0);
}

GaussRat Cyclo::as_scalar() const {
  if (c_.empty()) return GaussRat();
  if (!is_scalar()) throw std::domain_error("cyclotomic element is not a scalar");
  return c_.begin()->second;
}

std::complex<double> Cyclo::to_complex() const {
  std::complex<double> acc{0.0, 0.0};
  constexpr double two_pi = 6.283185307179586476925286766559;
  for (auto& [e, v] : c_) {
    std::complex<double> coeff{to_double(v.re), to_double(v.im)};
    acc += coeff * std::polar(1.0, two_pi * e / q_);
  }
  return acc;
}

std::string Cyclo::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, v] : c_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << gauss_to_string(v) << ")";
    if (e > 0) os << "*z^" << e;
  }
  if (!is_scalar()) os << " [z=zeta_" << q_ << "]";
  return os.str();
}

}  // namespace ncg
