#pragma once

#include "ncg/errors.hpp"

#include <Eigen/Dense>

#include <map>
#include <vector>

namespace ncg {

// q-dimensional representation at theta = p/q: U the clock diag(omega^j),
// V the cyclic shift, omega = exp(2*pi*i*p/q), satisfying V U = omega U V.
struct ClockShiftRep {
  long long p, q;
  Eigen::MatrixXcd U, V;

  static ClockShiftRep make(long long p, long long q);
};

// Eigenvalues of U + U* + mu(V + V*), ascending. gcd(p, q) must be 1 and q
// must stay within the size budget.
std::vector<double> harper_spectrum(long long p, long long q, double mu,
                                    long long q_budget = 1000);

struct ButterflyRow {
  long long p, q;
  int index;
  double eigenvalue;
};

struct ButterflySweep {
  std::vector<ButterflyRow> rows;  // sorted by (q, p, index)
  std::map<std::pair<long long, long long>, int> gaps;  // (p, q) -> gap count
};

// All reduced fractions p/q with q <= q_max (theta = 0 included as 0/1).
// Gap count is the number of spacings between distinct eigenvalues.
ButterflySweep butterfly_sweep(long long q_max, double mu);

}  // namespace ncg
