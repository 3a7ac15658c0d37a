#pragma once

#include "ncg/cyclic.hpp"

#include <map>
#include <string>
#include <vector>

namespace ncg {

using CycloMatrix = std::vector<std::vector<Cyclo>>;  // [row][col]

// Finite-dimensional Hopf algebra with a distinguished group-like element
// sigma and character delta forming a modular pair: all structure tensors
// over the cyclotomic scalars, every axiom checked exactly at construction
// unless explicitly deferred.
class HopfData {
 public:
  using Combo = FinAlgebra::Combo;
  // coproduct of a basis element: sum of c * e_j (x) e_k entries
  using CoprodEntry = std::tuple<int, int, Cyclo>;

  HopfData(std::vector<std::string> labels,
           std::vector<std::vector<Combo>> mult, std::vector<Cyclo> unit,
           std::vector<std::vector<CoprodEntry>> coprod,
           std::vector<Cyclo> counit, CycloMatrix antipode,
           std::vector<Cyclo> sigma, std::vector<Cyclo> delta,
           bool validate = true);

  // group algebra of Z/q with sigma = g^{sigma_power} and
  // delta(g^k) = zeta_q^{delta_root * k}; requires delta(sigma) = 1
  static HopfData cyclic_group(int q, int sigma_power = 0, int delta_root = 0);

  int dim() const { return d_; }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<Cyclo>& unit() const { return unit_; }
  const std::vector<std::vector<CoprodEntry>>& coprod() const { return coprod_; }
  const Cyclo& counit(int i) const { return counit_[i]; }
  const std::vector<Cyclo>& sigma() const { return sigma_; }
  const Cyclo& delta(int i) const { return delta_[i]; }

  Combo combo_product(const Combo& x, const Combo& y) const;
  Combo apply_matrix(const CycloMatrix& m, const Combo& x) const;
  const CycloMatrix& antipode() const { return S_; }

  // twisted antipode St(y) = sum delta(y_(1)) S(y_(2)), as a matrix
  CycloMatrix twisted_antipode() const;
  // S(sigma), checked to be a two-sided inverse of sigma
  Combo sigma_inverse() const;
  // (sigma^{-1} St)^2 = id
  bool modular_involution_holds() const;

  // iterated coproduct of a combo into n slots (n >= 1)
  std::map<std::vector<int>, Cyclo> iterated_coproduct(const Combo& x,
                                                       int n) const;

 private:
  int d_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Combo>> mult_;
  std::vector<Cyclo> unit_;
  std::vector<std::vector<CoprodEntry>> coprod_;
  std::vector<Cyclo> counit_;
  CycloMatrix S_;
  std::vector<Cyclo> sigma_;
  std::vector<Cyclo> delta_;

  void verify() const;
};

// Operators of the cyclic structure on H^{tensor n}, as dense matrices over
// the flattened tensor basis. Faces send H^{tensor n-1} to H^{tensor n}:
// the 0th prepends the unit, inner ones apply the coproduct to one slot, the
// last appends sigma. Degeneracies apply the counit to one slot. The cyclic
// operator multiplies the iterated coproduct of the twisted antipode of the
// first slot into the shifted remainder; it requires the modular pair to be
// in involution and throws otherwise.
CycloMatrix hopf_face(const HopfData& h, int n, int i);
CycloMatrix hopf_degeneracy(const HopfData& h, int n, int i);
CycloMatrix hopf_tau(const HopfData& h, int n);
// alternating sum of the faces
CycloMatrix hopf_boundary(const HopfData& h, int n);

CycloMatrix cyclo_mat_mul(const CycloMatrix& a, const CycloMatrix& b);
CycloMatrix cyclo_identity(size_t n);
bool cyclo_mat_equal(const CycloMatrix& a, const CycloMatrix& b);

// Action of H on an algebra A with a reference functional tau: act[h] is the
// matrix of h on the basis of A. Construction verifies that the action is a
// unital algebra action satisfying the module-algebra law
// h(xy) = sum h_(1)(x) h_(2)(y) and h(1) = counit(h) 1.
struct HopfAction {
  HopfAction(const HopfData& hopf, const FinAlgebra& alg,
             std::vector<CycloMatrix> act, std::vector<Cyclo> trace);

  const HopfData* hopf;
  const FinAlgebra* alg;
  std::vector<CycloMatrix> act;   // per H basis element
  std::vector<Cyclo> trace;       // tau on the A basis

  FinAlgebra::Combo apply(const HopfData::Combo& h,
                          const FinAlgebra::Combo& x) const;
  Cyclo trace_of(const FinAlgebra::Combo& x) const;
};

// tau(ab) = tau(b sigma(a)) on the basis; throws naming the failing pair
void verify_sigma_trace(const HopfAction& a);
// tau(h(x) y) = tau(x St(h)(y)) on the basis; throws naming the failing triple
void verify_delta_invariance(const HopfAction& a);

// characteristic cochain gamma(h^1 (x) ... (x) h^n)(x^0, .., x^n) =
// tau(x^0 h^1(x^1) ... h^n(x^n)), extended linearly to tensor combinations.
// Verifies the trace conditions above before computing.
Cochain characteristic_map(const HopfAction& a,
                           const std::map<std::vector<int>, Cyclo>& tensor,
                           int n);

// exact null space basis of a matrix over the Gaussian rationals
std::vector<std::vector<GaussRat>> gauss_kernel(
    std::vector<std::vector<GaussRat>> m);

}  // namespace ncg
