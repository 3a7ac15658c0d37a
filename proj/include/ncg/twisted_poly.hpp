#pragma once

#include "ncg/errors.hpp"
#include "ncg/phase.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ncg {

using Word = std::vector<int>;  // generator indices, left to right

// Finitely presented *-algebra with a lambda-twisted commutation skeleton:
// generators carry a fixed order, each descending adjacent pair (i after j,
// i > j) rewrites as g_i g_j -> lambda^{k(i,j)} g_j g_i, and optional
// polynomial relations rewrite a normal-ordered word into a polynomial.
// finalize() checks local confluence of the combined system via critical
// pairs and freezes the presentation.
class GeneratorSpec {
 public:
  explicit GeneratorSpec(Phase ph);

  int add_generator(const std::string& name);
  // Marks a and b as mutual star partners (a generator may be self-adjoint).
  void set_star_pair(int a, int b);
  // g_hi g_lo = lambda^k g_lo g_hi for hi > lo; unset pairs default to k = 0.
  void set_commutation(int hi, int lo, long long k);
  // lhs must be in normal order; rhs is a list of (word, coefficient) terms.
  void add_relation(Word lhs, std::vector<std::pair<Word, Cyclo>> rhs);
  void finalize();

  const Phase& phase() const { return ph_; }
  bool finalized() const { return finalized_; }
  int generator_count() const { return static_cast<int>(names_.size()); }
  const std::string& name(int g) const { return names_.at(g); }
  int star_partner(int g) const { return star_.at(g); }
  long long comm_exponent(int hi, int lo) const;
  int find(const std::string& name) const;  // -1 if absent

  // Commutation-only normal form: sorts the word ascending, accumulating the
  // lambda exponent produced by the swaps.
  std::pair<Word, long long> normal_order(Word w) const;

  struct Relation {
    Word lhs;
    std::vector<std::pair<Word, Cyclo>> rhs;
  };
  const std::vector<Relation>& relations() const { return rels_; }

 private:
  Phase ph_;
  std::vector<std::string> names_;
  std::vector<int> star_;
  std::map<std::pair<int, int>, long long> comm_;  // (hi, lo) -> exponent
  std::vector<Relation> rels_;
  bool finalized_ = false;

  void check_confluence() const;
  friend class TwistedPoly;
};

// Polynomial over a GeneratorSpec. Keys are always kept in commutation-normal
// order; reduce() additionally rewrites modulo the polynomial relations. The
// spec object must outlive every polynomial built on it.
class TwistedPoly {
 public:
  explicit TwistedPoly(const GeneratorSpec& spec) : spec_(&spec) {}

  static TwistedPoly zero(const GeneratorSpec& spec) { return TwistedPoly(spec); }
  static TwistedPoly one(const GeneratorSpec& spec);
  static TwistedPoly monomial(const GeneratorSpec& spec, Word w,
                              Cyclo coeff = Cyclo::one());
  static TwistedPoly generator(const GeneratorSpec& spec, int g);

  const GeneratorSpec& spec() const { return *spec_; }
  const std::map<Word, Cyclo>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }

  TwistedPoly operator+(const TwistedPoly& o) const;
  TwistedPoly operator-(const TwistedPoly& o) const;
  TwistedPoly operator-() const;
  TwistedPoly operator*(const TwistedPoly& o) const;
  TwistedPoly scaled(const Cyclo& c) const;
  bool operator==(const TwistedPoly& o) const;
  bool operator!=(const TwistedPoly& o) const { return !(*this == o); }

  // Anti-multiplicative involution: reverses words, swaps star partners,
  // conjugates coefficients, then renormalizes the order.
  TwistedPoly star() const;

  // Rewrites modulo the polynomial relations until irreducible. Applies the
  // leftmost match of the first applicable rule unless an rng is supplied, in
  // which case rule and position are chosen at random (confluence makes the
  // result order-independent). Throws ReductionBudgetError past max_steps.
  TwistedPoly reduced(std::mt19937* rng = nullptr,
                      long long max_steps = 1'000'000) const;

  std::string to_string() const;

  void add_term(Word w, const Cyclo& coeff);  // normalizes, merges

 private:
  const GeneratorSpec* spec_;
  std::map<Word, Cyclo> terms_;
};

// Expression parser. Factors are juxtaposed: generator names (a trailing '*'
// selects the star partner), '^' integer powers, integer or p/q coefficients
// (parenthesized or bare), 'i' for the imaginary unit when no generator uses
// that name, and 'l^k' for an explicit lambda power. Terms are joined by
// '+' / '-'. Unknown names raise ParseError.
TwistedPoly parse_poly(const GeneratorSpec& spec, const std::string& text);

// Serialization: an object mapping monomial strings ("a b* t^2", "1" for the
// empty word) to coefficient triples [re, im, lambda_exp] with re and im as
// exact rational strings. A coefficient with several lambda components is an
// array of such triples.
nlohmann::json poly_to_json(const TwistedPoly& p);
TwistedPoly poly_from_json(const GeneratorSpec& spec, const nlohmann::json& j);

// Commutation-normal form of a textual expression (no polynomial rewriting).
inline TwistedPoly poly_normal_form(const GeneratorSpec& spec, const std::string& text) {
  return parse_poly(spec, text);
}

// Full rewriting modulo the polynomial relations.
inline TwistedPoly poly_reduce(const TwistedPoly& p, long long max_steps = 1'000'000) {
  return p.reduced(nullptr, max_steps);
}

// Coordinate *-algebra of the deformed 4-sphere: generators a, a*, b, b*, t
// with the twisted commutation table (a and b lambda-commute, t central) and,
// unless disabled, the radius relation t^2 -> t - a a* - b b*. `twisted`
// false zeroes every commutation exponent while keeping the same generators;
// that deliberately breaks the idempotency of the standard projector and
// serves as a negative control.
GeneratorSpec sphere_presentation(const Phase& ph, bool with_sphere_relation = true,
                                  bool twisted = true);

// Same algebra presented with the opposite generator order; normal forms
// differ but every closed identity must evaluate identically.
GeneratorSpec sphere_presentation_reversed(const Phase& ph);

}  // namespace ncg
