#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ncg/errors.hpp"
#include "ncg/rational.hpp"

namespace ncg {

// ---------------------------------------------------------------------------
// rooted trees and forests

// Rooted tree in canonical form: children are ordered by their canonical
// encodings, so equal keys mean isomorphic trees. The parent array lists the
// preorder parent indices (root first, parent -1).
class Tree {
 public:
  static Tree leaf();
  static Tree graft(std::vector<Tree> children);  // B+
  static Tree ladder(int n);                      // chain of n nodes
  // DSL: "•" (or "*") for the leaf, "B+[t1 t2 ...]" for grafting
  static Tree parse(const std::string& text);
  // all canonical trees with exactly n nodes
  static std::vector<Tree> with_nodes(int n);
  // all canonical trees with 1..n nodes, smaller first
  static std::vector<Tree> up_to_nodes(int n);

  int size() const { return static_cast<int>(parent_.size()); }
  const std::vector<int>& parent_array() const { return parent_; }
  const std::string& key() const { return key_; }
  std::vector<Tree> children() const;
  std::string to_string() const;  // DSL form

  bool operator==(const Tree& o) const { return key_ == o.key_; }
  bool operator!=(const Tree& o) const { return key_ != o.key_; }
  bool operator<(const Tree& o) const {
    if (size() != o.size()) return size() < o.size();
    return key_ < o.key_;
  }

 private:
  Tree() = default;
  std::vector<int> parent_;
  std::string key_;
};

// Multiset of trees, kept sorted: the monomial basis of the Hopf algebra.
class Forest {
 public:
  Forest() = default;
  explicit Forest(std::vector<Tree> trees);
  static Forest single(const Tree& t);

  bool empty() const { return trees_.empty(); }
  int nodes() const;
  int tree_count() const { return static_cast<int>(trees_.size()); }
  const std::vector<Tree>& trees() const { return trees_; }
  Forest merged(const Forest& o) const;
  std::string key() const;
  std::string to_string() const;

  bool operator==(const Forest& o) const { return trees_ == o.trees_; }
  bool operator<(const Forest& o) const;

 private:
  std::vector<Tree> trees_;  // sorted
};

// Proper admissible cuts of a tree: the removed part (a forest) and the part
// still holding the root. Excludes the empty cut and the full tree.
std::vector<std::pair<Forest, Tree>> proper_cuts(const Tree& t);

// Full coproduct term list for a tree: t(x)1 + 1(x)t + sum of proper cuts,
// as (left forest, right forest) pairs with multiplicity one per entry.
std::vector<std::pair<Forest, Forest>> coproduct(const Tree& t);

// Coproduct extended multiplicatively to forests.
std::vector<std::pair<Forest, Forest>> coproduct(const Forest& f);

// Formal rational combination of forests.
using ForestSum = std::map<Forest, Rat>;

ForestSum fs_scale(const ForestSum& a, const Rat& c);
ForestSum fs_add(const ForestSum& a, const ForestSum& b);
ForestSum fs_mul(const ForestSum& a, const ForestSum& b);

// Antipode S(t) = -t - sum S(P_c) R_c over proper cuts, multiplicative on
// forests; memoized internally per call tree.
ForestSum antipode(const Tree& t);
ForestSum antipode(const Forest& f);

// ---------------------------------------------------------------------------
// Laurent series in the regulator with polynomial log-scale coefficients

// Polynomial in the log-scale symbol L with rational coefficients.
class LPoly {
 public:
  LPoly() = default;
  explicit LPoly(Rat constant);
  static LPoly symbol();                  // L
  static LPoly monomial(int k, Rat c);    // c L^k

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rat coeff(int k) const;
  Rat constant() const { return coeff(0); }

  LPoly operator+(const LPoly& o) const;
  LPoly operator-(const LPoly& o) const;
  LPoly operator-() const;
  LPoly operator*(const LPoly& o) const;
  bool operator==(const LPoly& o) const { return c_ == o.c_; }
  bool operator!=(const LPoly& o) const { return c_ != o.c_; }

  // substitute L -> L + shift
  LPoly shifted(const Rat& shift) const;
  double eval(double Lval) const;
  std::string to_string() const;

 private:
  void prune();
  std::vector<Rat> c_;  // c_[k] multiplies L^k, trailing zeros pruned
};

// Truncated Laurent series: finitely many pole terms kept exactly, regular
// part kept through eps^K. Powers above K are discarded by arithmetic; the
// truncation order of a product is the minimum of the factors'.
class Laurent {
 public:
  explicit Laurent(int trunc_order);
  static Laurent zero(int K) { return Laurent(K); }
  static Laurent one(int K);
  static Laurent monomial(int K, int pow, LPoly coeff);
  // exp(a eps) summed through eps^K
  static Laurent exp_eps(int K, const LPoly& a);

  int trunc() const { return K_; }
  bool is_zero() const { return c_.empty(); }
  // lowest stored exponent; 0 for the zero series
  int lowest() const { return c_.empty() ? 0 : c_.begin()->first; }
  LPoly coeff(int pow) const;
  const std::map<int, LPoly>& coeffs() const { return c_; }

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator-() const;
  Laurent operator*(const Laurent& o) const;
  Laurent scaled(const Rat& c) const;
  bool operator==(const Laurent& o) const;
  bool operator!=(const Laurent& o) const { return !(*this == o); }

  // strictly negative powers (minimal subtraction T)
  Laurent pole_part() const;
  Laurent finite_part() const;  // complement of pole_part
  bool has_pole() const;
  LPoly at_zero() const { return coeff(0); }
  std::string to_string() const;

 private:
  int K_;
  std::map<int, LPoly> c_;  // exponent -> coefficient, zeros pruned
};

// Minimal subtraction projector, exposed as the spec operation.
Laurent pole_part(const Laurent& s);

// ---------------------------------------------------------------------------
// characters of the tree Hopf algebra

// Multiplicative map Forest -> Laurent determined by its tree values.
class HopfCharacter {
 public:
  // generator rule evaluated lazily and memoized
  HopfCharacter(int trunc_order, std::function<Laurent(const Tree&)> rule);
  // finite table; evaluation on a missing tree raises IncompleteDataError
  static HopfCharacter from_table(int trunc_order,
                                  std::map<Tree, Laurent> table);
  // toy family phi_L(B+(F)) = phi_L(F) e^{eps L} / (|F|+1) / eps, with the
  // ladder closed form phi_L(l_n) = e^{n eps L} / (n! eps^n)
  static HopfCharacter ladder_toy(int trunc_order);
  // counit: 1 on the empty forest, 0 on every tree
  static HopfCharacter counit(int trunc_order);

  int trunc() const { return K_; }
  Laurent value(const Tree& t) const;
  Laurent value(const Forest& f) const;

 private:
  int K_;
  std::function<Laurent(const Tree&)> rule_;
  std::shared_ptr<std::map<Tree, Laurent>> memo_;
};

// Convolution (f * g)(x) = sum f(x_(1)) g(x_(2)) over the full coproduct.
// Works for any functionals presented on forests.
using ForestFunctional = std::function<Laurent(const Forest&)>;
Laurent convolve_at(const Forest& x, const ForestFunctional& f,
                    const ForestFunctional& g, int trunc_order);

// ---------------------------------------------------------------------------
// Bogoliubov recursion and Birkhoff decomposition

struct BogoliubovValues {
  Laurent rbar;         // preparation
  Laurent counterterm;  // C = -T(rbar)
  Laurent renormalized; // R = rbar + C
};

// Memoizing engine for one character. gamma must outlive the object.
class Birkhoff {
 public:
  explicit Birkhoff(const HopfCharacter& gamma);

  const HopfCharacter& character() const { return *gamma_; }
  int trunc() const { return gamma_->trunc(); }

  Laurent rbar(const Tree& t);
  Laurent counterterm(const Tree& t);          // gamma_minus on a generator
  Laurent renormalized(const Tree& t);         // gamma_plus on a generator
  Laurent gamma_minus(const Forest& f);        // multiplicative extension
  Laurent gamma_plus(const Forest& f);

  // coefficient of 1/eps in gamma_minus with the scattering sign convention:
  // Res = -(d/du gamma_minus(1/u))|_0, so Res(t) = -[eps^{-1}] C(t).
  // Throws ParameterError when the coefficient still carries L.
  Rat residue(const Tree& t);
  // beta = grading applied to the residue: beta(t) = |t| Res(t)
  Rat beta(const Tree& t);

 private:
  const HopfCharacter* gamma_;
  std::map<Tree, BogoliubovValues> memo_;
};

// One-shot Bogoliubov values for a single tree.
BogoliubovValues bogoliubov(const HopfCharacter& gamma, const Tree& t);

// Scale flow: (theta_t gamma)(tree) = e^{|tree| t eps} gamma(tree).
HopfCharacter theta_action(const Rat& t_param, const HopfCharacter& gamma);

// ---------------------------------------------------------------------------
// renormalization-group flow and the scattering product

// Rational combination of exponentials sum c_m e^{-t m}, m >= 0.
using ExpComb = std::map<int, Rat>;

// One tree value of the scattering product e^{-t(beta/eps + Z0)} e^{t Z0}:
// Laurent in eps whose coefficients are exponential combinations in t.
using ScatterValue = std::map<int, ExpComb>;  // eps power -> combination

// Evaluates the scattering product on every tree with <= n_max nodes by
// integrating dF/dt = -F * (e^{-t Y} beta / eps) exactly.
std::map<Tree, ScatterValue> scattering_product(Birkhoff& bk, int n_max);

// Coefficient-wise distance between gamma_minus and the scattering product
// at parameter t_large, summed over all trees with <= n_max nodes.
double scattering_distance(Birkhoff& bk, double t_large, int n_max);

// Distance on the doubling sequence t_large/4, t_large/2, t_large; raises
// RegimeError when the sequence fails to decrease (truncation artifact).
double scattering_check(const HopfCharacter& gamma, double t_large, int n_max);

// Renormalization-group one-parameter value F_t(tree) computed as the
// eps -> 0 limit of gamma_minus * theta_{t eps}(gamma_minus^{-1}); raises
// RegimeError when the pole parts fail to cancel (the flow limit does not
// exist). Values are exact rationals for rational t.
std::map<Tree, Rat> rg_flow(Birkhoff& bk, const Rat& t_param, int n_max);

}  // namespace ncg
