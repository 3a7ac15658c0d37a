#include "ncg/harper.hpp"

#include <cmath>
#include <numeric>

namespace ncg {

ClockShiftRep ClockShiftRep::make(long long p, long long q) {
  if (q < 1) throw ParameterError("representation dimension must be positive");
  if (std::gcd(p < 0 ? -p : p, q) != 1 && !(p == 0 && q == 1))
    throw ParameterError("p and q must be coprime");
  ClockShiftRep rep;
  rep.p = p;
  rep.q = q;
  rep.U = Eigen::MatrixXcd::Zero(q, q);
  rep.V = Eigen::MatrixXcd::Zero(q, q);
  constexpr double two_pi = 6.283185307179586476925286766559;
  for (long long j = 0; j < q; ++j) {
    rep.U(j, j) = std::polar(1.0, two_pi * static_cast<double>(p * j % q) / q);
    rep.V((j + q - 1) % q, j) = 1.0;  // down-shift makes V U = omega U V
  }
  return rep;
}

std::vector<double> harper_spectrum(long long p, long long q, double mu,
                                    long long q_budget) {
  if (q > q_budget) throw ParameterError("q exceeds the configured size budget");
  ClockShiftRep rep = ClockShiftRep::make(p, q);
  Eigen::MatrixXcd H = rep.U + rep.U.adjoint() + mu * (rep.V + rep.V.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  std::vector<double> out(q);
  for (long long j = 0; j < q; ++j) out[j] = es.eigenvalues()[j];
  return out;
}

ButterflySweep butterfly_sweep(long long q_max, double mu) {
  if (q_max < 2) throw ParameterError("sweep needs q_max >= 2");
  ButterflySweep sweep;
  auto emit = [&](long long p, long long q) {
    std::vector<double> ev = harper_spectrum(p, q, mu);
    for (int i = 0; i < static_cast<int>(ev.size()); ++i)
      sweep.rows.push_back({p, q, i, ev[i]});
    // spacings between numerically distinct eigenvalues
    int gaps = 0;
    double scale = 2 + 2 * std::abs(mu);
    for (size_t i = 1; i < ev.size(); ++i)
      if (ev[i] - ev[i - 1] > 1e-9 * scale) ++gaps;
    sweep.gaps[{p, q}] = gaps;
  };
  emit(0, 1);  // the commutative point
  for (long long q = 2; q <= q_max; ++q)
    for (long long p = 1; p < q; ++p)
      if (std::gcd(p, q) == 1) emit(p, q);
  return sweep;
}

}  // namespace ncg
