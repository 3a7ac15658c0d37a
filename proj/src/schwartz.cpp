#include "ncg/schwartz.hpp"

#include <cmath>

namespace ncg {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kTailTol = 1e-8;
}  // namespace

SchwartzVector SchwartzVector::zeros(double L, double h) {
  SchwartzVector v;
  v.L = L;
  v.h = h;
  v.samples.assign(static_cast<size_t>(std::lround(2 * L / h)) + 1, {0.0, 0.0});
  return v;
}

SchwartzVector SchwartzVector::gaussian(double L, double h) {
  SchwartzVector v = zeros(L, h);
  for (int k = 0; k < v.size(); ++k) v.samples[k] = std::exp(-v.s(k) * v.s(k));
  return v;
}

SchwartzVector SchwartzVector::hermite(int n, double L, double h) {
  // Orthonormal Hermite functions by the stable three-term recurrence.
  SchwartzVector v = zeros(L, h);
  const double pi_quarter = std::pow(3.14159265358979323846, -0.25);
  for (int k = 0; k < v.size(); ++k) {
    double s = v.s(k);
    double hm2 = 0.0, hm1 = pi_quarter * std::exp(-s * s / 2);
    if (n == 0) {
      v.samples[k] = hm1;
      continue;
    }
    for (int m = 1; m <= n; ++m) {
      double hm = s * std::sqrt(2.0 / m) * hm1 - std::sqrt((m - 1.0) / m) * hm2;
      hm2 = hm1;
      hm1 = hm;
    }
    v.samples[k] = hm1;
  }
  return v;
}

double SchwartzVector::boundary_magnitude() const {
  if (samples.empty()) return 0.0;
  return std::max(std::abs(samples.front()), std::abs(samples.back()));
}

namespace {

// xi(s + amount) with linear interpolation off the lattice. The shift is NOT
// reduced mod 1: acting by U^n moves by n*theta in full.
SchwartzVector shifted(const SchwartzVector& xi, double amount) {
  SchwartzVector out = SchwartzVector::zeros(xi.L, xi.h);
  out.tail_alarm = xi.tail_alarm;
  double shift = amount / xi.h;
  long long base = static_cast<long long>(std::floor(shift));
  double frac = shift - static_cast<double>(base);
  if (frac < 1e-9) frac = 0.0;
  if (frac > 1 - 1e-9) {
    frac = 0.0;
    ++base;
  }
  auto at = [&](long long idx) -> std::complex<double> {
    if (idx < 0 || idx >= xi.size()) return {0.0, 0.0};
    return xi.samples[static_cast<size_t>(idx)];
  };
  for (int k = 0; k < out.size(); ++k) {
    std::complex<double> lo = at(k + base), hi = at(k + base + 1);
    out.samples[k] = frac == 0.0 ? lo : (1 - frac) * lo + frac * hi;
  }
  if (out.boundary_magnitude() > kTailTol) out.tail_alarm = true;
  return out;
}

}  // namespace

SchwartzVector module_act_gen(const SchwartzVector& xi, char gen, const Phase& ph) {
  if (gen == 'V' || gen == 'v') {
    SchwartzVector out = SchwartzVector::zeros(xi.L, xi.h);
    out.tail_alarm = xi.tail_alarm;
    for (int k = 0; k < xi.size(); ++k)
      out.samples[k] = std::polar(1.0, kTwoPi * xi.s(k)) * xi.samples[k];
    return out;
  }
  if (gen != 'U' && gen != 'u') throw ParameterError("generator must be 'U' or 'V'");
  return shifted(xi, ph.theta());
}

SchwartzVector module_act(const SchwartzVector& xi, const TorusElementF& a) {
  SchwartzVector acc = SchwartzVector::zeros(xi.L, xi.h);
  acc.tail_alarm = xi.tail_alarm;
  std::complex<double> tag{1.0, 0.0};
  for (int p = 0; p < a.pi_power(); ++p) tag *= std::complex<double>{0.0, kTwoPi};
  double theta = a.phase().exact()
                     ? static_cast<double>(a.phase().p()) / static_cast<double>(a.phase().q())
                     : a.phase().theta();
  for (auto& [nm, coeff] : a.coeffs()) {
    // xi * (U^n V^m): the U-shift by n*theta first, then the V phases.
    long long n = nm.first, m = nm.second;
    SchwartzVector term = shifted(xi, static_cast<double>(n) * theta);
    for (int k = 0; k < term.size(); ++k)
      term.samples[k] *= std::polar(1.0, kTwoPi * static_cast<double>(m) * term.s(k));
    for (int k = 0; k < acc.size(); ++k) acc.samples[k] += tag * coeff * term.samples[k];
    acc.tail_alarm = acc.tail_alarm || term.tail_alarm;
  }
  return acc;
}

SchwartzVector connection_apply(int j, const SchwartzVector& xi, double theta) {
  SchwartzVector out = SchwartzVector::zeros(xi.L, xi.h);
  out.tail_alarm = xi.tail_alarm;
  if (j == 1) {
    if (theta == 0.0) throw ParameterError("connection is singular at theta = 0");
    for (int k = 0; k < xi.size(); ++k)
      out.samples[k] = std::complex<double>{0.0, -kTwoPi * xi.s(k) / theta} * xi.samples[k];
    return out;
  }
  if (j != 2) throw ParameterError("connection direction must be 1 or 2");
  for (int k = 0; k < xi.size(); ++k) {
    std::complex<double> hi = k + 1 < xi.size() ? xi.samples[k + 1] : std::complex<double>{};
    std::complex<double> lo = k > 0 ? xi.samples[k - 1] : std::complex<double>{};
    out.samples[k] = (hi - lo) / (2 * xi.h);
  }
  return out;
}

CurvatureEstimate curvature(double theta, const SchwartzVector& xi) {
  double peak = 0.0;
  for (auto& v : xi.samples) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) throw ParameterError("curvature of an identically zero vector");

  SchwartzVector c12 = connection_apply(1, connection_apply(2, xi, theta), theta);
  SchwartzVector c21 = connection_apply(2, connection_apply(1, xi, theta), theta);
  CurvatureEstimate est;
  est.field = SchwartzVector::zeros(xi.L, xi.h);
  for (int k = 0; k < xi.size(); ++k)
    est.field.samples[k] = c12.samples[k] - c21.samples[k];
  est.expected = {0.0, kTwoPi / theta};

  // Pointwise ratio over the numerically supported interior.
  std::complex<double> sum{0.0, 0.0};
  int count = 0;
  for (int k = 1; k + 1 < xi.size(); ++k) {
    if (std::abs(xi.samples[k]) < 1e-6 * peak) continue;
    sum += est.field.samples[k] / xi.samples[k];
    ++count;
  }
  est.mean_ratio = sum / static_cast<double>(count);
  double var = 0.0;
  for (int k = 1; k + 1 < xi.size(); ++k) {
    if (std::abs(xi.samples[k]) < 1e-6 * peak) continue;
    var += std::norm(est.field.samples[k] / xi.samples[k] - est.mean_ratio);
  }
  est.ratio_stddev = std::sqrt(var / count);
  return est;
}

}  // namespace ncg
