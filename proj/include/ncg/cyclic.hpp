#pragma once

#include "ncg/errors.hpp"
#include "ncg/phase.hpp"

#include <array>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace ncg {

// Finite-dimensional unital algebra given by structure constants over the
// cyclotomic scalars: e_i e_j = sum_k c^k_{ij} e_k. Construction verifies
// associativity and the unit law exactly.
class FinAlgebra {
 public:
  using Combo = std::vector<std::pair<int, Cyclo>>;  // sparse coordinates

  FinAlgebra(std::vector<std::string> labels,
             std::vector<std::vector<Combo>> mult, std::vector<Cyclo> unit);

  static FinAlgebra matrix_algebra(int n);          // M_n, basis e_{rc}
  static FinAlgebra cyclic_group_algebra(int q);    // C[Z/q], basis g^k
  static FinAlgebra functions_on_cyclic_group(int q);  // pointwise product
  // Full q^2-dimensional twisted algebra at theta = p/q: basis U^a V^b with
  // wrapped exponents, products picking up clock-shift phases.
  static FinAlgebra clock_shift_algebra(long long p, long long q);

  int dim() const { return d_; }
  const std::string& label(int i) const { return labels_[i]; }
  const Combo& product(int i, int j) const { return mult_[i][j]; }
  const std::vector<Cyclo>& unit() const { return unit_; }

  Combo combo_product(const Combo& x, const Combo& y) const;

 private:
  int d_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Combo>> mult_;
  std::vector<Cyclo> unit_;

  void verify() const;
};

// Multilinear functional of fixed degree n, stored densely: the value at
// (e_{i0}, ..., e_{in}) sits at index i0*d^n + i1*d^{n-1} + ... + in.
class Cochain {
 public:
  Cochain(const FinAlgebra& alg, int degree);

  const FinAlgebra& algebra() const { return *alg_; }
  int degree() const { return n_; }
  size_t entry_count() const { return v_.size(); }

  Cyclo& at(const std::vector<int>& tuple);
  const Cyclo& at(const std::vector<int>& tuple) const;
  std::vector<Cyclo>& raw() { return v_; }
  const std::vector<Cyclo>& raw() const { return v_; }

  // value on sparse algebra elements (multilinear expansion)
  Cyclo eval(const std::vector<FinAlgebra::Combo>& args) const;

  bool is_zero() const;
  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain scaled(const Cyclo& c) const;
  bool operator==(const Cochain& o) const;
  bool operator!=(const Cochain& o) const { return !(*this == o); }

  static Cochain random(const FinAlgebra& alg, int degree, std::mt19937& rng);
  static Cochain trace_cochain(const FinAlgebra& alg);  // degree 0, matrix algebras

 private:
  const FinAlgebra* alg_;
  int n_;
  std::vector<Cyclo> v_;
};

// Hochschild coboundary with the wrap term (-1)^{n+1} phi(a^{n+1} a^0, ...).
Cochain hochschild_b(const Cochain& phi);

// Signed cyclic shift (lambda phi)(a^0..a^n) = (-1)^n phi(a^n, a^0, ..).
Cochain cyclic_shift(const Cochain& phi);
// A = sum of the powers of the signed shift.
Cochain cyclic_symmetrizer(const Cochain& phi);
// B = A B0; degree 0 input has no B.
Cochain connes_B(const Cochain& phi);

bool is_cyclic(const Cochain& phi);

// Degree-n chain: sparse element of A^{tensor (n+1)}.
struct Chain {
  const FinAlgebra* alg;
  int degree;
  std::map<std::vector<int>, Cyclo> terms;
};

// Matrix over the algebra, entries in coordinates.
using AlgMatrix = std::vector<std::vector<std::vector<Cyclo>>>;

AlgMatrix alg_identity(const FinAlgebra& alg, int k);
AlgMatrix alg_mat_mul(const FinAlgebra& alg, const AlgMatrix& x, const AlgMatrix& y);
bool alg_mat_equal(const AlgMatrix& x, const AlgMatrix& y);

// (e - 1/2) tensor e tensor ... tensor e with 2n + 1 slots and matrix indices
// contracted cyclically. Requires e^2 = e exactly.
Chain chern_character(const FinAlgebra& alg, const AlgMatrix& e, int n);

// Pairing <phi, c>: phi applied slotwise to every tensor term.
Cyclo pair_cochain_chain(const Cochain& phi, const Chain& c);

// The standard area 2-cocycle of the twisted torus evaluated on the window
// U^a V^b, 0 <= a, b < q: phi(x0, x1, x2) = tau(x0 (d1 x1 d2 x2 - d2 x1 d1 x2))
// computed in the unwrapped twisted algebra on balanced representatives, then
// stored as a cochain of the q^2-dimensional wrapped algebra alg (one 2*pi*i
// power per derivation is dropped; normalization is left to the caller).
Cochain torus_area_cocycle(const FinAlgebra& alg, long long p, long long q);

// Averaging idempotent (1/q) sum_b V^b and the rank-one idempotent
// (1/2)(E_00 + E_01 + E_10 + E_11) used as pairing test elements.
AlgMatrix clock_shift_averaging_idempotent(const FinAlgebra& alg, long long q);
AlgMatrix clock_shift_rank_one_idempotent(const FinAlgebra& alg, long long p, long long q);

// Band-form projection e = f(V) + g(V) U + U^{-1} g*(V) with the rational
// point-mass solution g = (1/2) delta_0, f = (1/2)(delta_0 + delta_{-p}) of
// the idempotent conditions g(j)g(j-p) = 0, f - f^2 = |g|^2 + |g(.+p)|^2,
// f(0) + f(-p) = 1. Rank one, trace 1/q.
AlgMatrix clock_shift_band_projection(const FinAlgebra& alg, long long p, long long q);

// ---------------------------------------------------------------------------
// group cocycles on Z^2 over a finite window

struct GroupWindow {
  int radius;
  std::vector<std::array<int, 2>> elems;

  explicit GroupWindow(int radius);
  int find(const std::array<int, 2>& g) const;  // -1 outside
};

using GroupCocycle = std::function<Rat(const std::vector<std::array<int, 2>>&)>;

// Dense group cochain phi_c(g0..gn) = [g0 + ... + gn = 0] c(g1..gn) over the
// window. c must be normalized (vanish when any argument is the identity).
class GroupCochain {
 public:
  GroupCochain(const GroupWindow& win, int degree, GroupCocycle c);

  int degree() const { return n_; }
  const GroupWindow& window() const { return *win_; }
  Rat value(const std::vector<int>& tuple) const;       // by window indices
  Rat value_free(const std::vector<std::array<int, 2>>& gs) const;  // formula

  bool is_cyclic_cochain() const;
  // max |b phi| over window tuples; group products computed in Z^2 itself
  Rat b_residual_max() const;
  // tensor-level b over the window: throws IncompleteDataError when a product
  // leaves the span
  Rat b_windowed(const std::vector<int>& tuple) const;

 private:
  const GroupWindow* win_;
  int n_;
  GroupCocycle c_;
};

}  // namespace ncg
