#pragma once

#include "ncg/torus_element.hpp"

#include <complex>
#include <vector>

namespace ncg {

// Rapidly decaying test vector sampled on the uniform grid s_k = -L + k*h.
// The module actions below may set tail_alarm when mass is pushed across the
// grid boundary; consumers treat it as a truncation warning, not an error.
struct SchwartzVector {
  std::vector<std::complex<double>> samples;
  double L = 10.0;
  double h = 1.0 / 64.0;
  bool tail_alarm = false;

  int size() const { return static_cast<int>(samples.size()); }
  double s(int k) const { return -L + k * h; }

  static SchwartzVector zeros(double L, double h);
  static SchwartzVector gaussian(double L, double h);      // exp(-s^2)
  static SchwartzVector hermite(int n, double L, double h);  // orthonormal h_n

  double boundary_magnitude() const;
};

// Right action of a single generator: (xi U)(s) = xi(s + theta),
// (xi V)(s) = exp(2*pi*i*s) xi(s). Shifts landing between grid points are
// linearly interpolated.
SchwartzVector module_act_gen(const SchwartzVector& xi, char gen, const Phase& ph);

// Right action of a full element, term by term; the 2*pi*i tag is applied
// numerically.
SchwartzVector module_act(const SchwartzVector& xi, const TorusElementF& a);

// (grad_1 xi)(s) = -(2*pi*i*s/theta) xi(s); (grad_2 xi)(s) = xi'(s) by
// central differences. theta = 0 is singular for grad_1.
SchwartzVector connection_apply(int j, const SchwartzVector& xi, double theta);

struct CurvatureEstimate {
  SchwartzVector field;                // (grad_1 grad_2 - grad_2 grad_1) xi
  std::complex<double> mean_ratio;     // field / xi averaged over the interior
  double ratio_stddev;                 // spread of the pointwise ratio
  std::complex<double> expected;       // 2*pi*i/theta
};

// Pointwise curvature ratio of the grid backend. Rejects xi that vanishes on
// the whole grid.
CurvatureEstimate curvature(double theta, const SchwartzVector& xi);

}  // namespace ncg
