#pragma once

#include "ncg/cyclic.hpp"

#include <string>
#include <vector>

namespace ncg {

// Morphism of the cyclic category: a nondecreasing map F: Z -> Z with
// F(i + m + 1) = F(i) + (n + 1), stored modulo translation by n + 1 via the
// canonical window values F(0..m) with 0 <= F(0) <= n. Composition is
// function composition, so the generator relations hold by construction and
// the normal form is independent of how a composite was assembled.
class LambdaMorphism {
 public:
  LambdaMorphism(int source, int target, std::vector<int> window);

  static LambdaMorphism identity(int n);
  // face [n-1] -> [n], the monotone injection missing i (0 <= i <= n)
  static LambdaMorphism face(int n, int i);
  // degeneracy [n+1] -> [n], the surjection identifying j and j+1 (0 <= j <= n)
  static LambdaMorphism degeneracy(int n, int j);
  // cyclic generator [n] -> [n], i -> i - 1
  static LambdaMorphism cyclic(int n);

  int source() const { return m_; }
  int target() const { return n_; }
  const std::vector<int>& window() const { return f_; }

  // g after f; source/target mismatch is a type error
  static LambdaMorphism compose(const LambdaMorphism& g, const LambdaMorphism& f);
  LambdaMorphism pow(int k) const;  // endomorphism power, k >= 0

  bool operator==(const LambdaMorphism& o) const;
  bool operator!=(const LambdaMorphism& o) const { return !(*this == o); }

  bool is_simplicial() const;  // window stays inside [0, target]

  // Unique decomposition: (faces, strictly decreasing) after (degeneracies,
  // strictly increasing) after (cyclic power on the source object). The
  // reconstruction is verified internally before returning.
  struct NormalForm {
    std::vector<int> faces;
    std::vector<int> degens;
    int cyclic_power;
  };
  NormalForm normal_form() const;

  static std::vector<LambdaMorphism> all_morphisms(int m, int n);

  std::string to_string() const;

 private:
  int m_, n_;
  std::vector<int> f_;  // canonical window values
};

LambdaMorphism reconstruct(int m, int n, const LambdaMorphism::NormalForm& nf);

// ---------------------------------------------------------------------------
// the cochain realization: operators of a Lambda-module on Cochain spaces

struct LambdaOp {
  enum Kind { FACE, DEGEN, TAU, TAU_NO_WRAP } kind;
  int index;        // generator index (ignored for TAU)
  int target_deg;   // cochain degree of the output
};

// sparse linear functional expansion: (Op phi)(tuple) = sum coeff * phi(src)
using Expansion = std::map<std::vector<int>, Cyclo>;

Expansion op_expansion(const FinAlgebra& alg, const LambdaOp& op,
                       const std::vector<int>& tuple);
Expansion word_expansion(const FinAlgebra& alg, const std::vector<LambdaOp>& word,
                         const std::vector<int>& tuple);
// operators composed right-to-left, like the category composition
bool words_agree(const FinAlgebra& alg, const std::vector<LambdaOp>& lhs,
                 const std::vector<LambdaOp>& rhs, int out_degree);

Cochain apply_lambda_op(const LambdaOp& op, const Cochain& phi);

struct RelationReport {
  std::string relation;
  bool pass;
  std::string witness;  // first failing instance, empty when pass
};

// Verifies the face/degeneracy/cyclic operator relations on all cochain
// degrees up to n_max (at most 4). corrupt_tau swaps in a wrap-free cyclic
// operator that discards the last argument, a deliberate failure probe.
std::vector<RelationReport> lambda_module_check(const FinAlgebra& alg, int n_max,
                                                bool corrupt_tau = false);

}  // namespace ncg
