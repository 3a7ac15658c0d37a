#include "ncg/twisted_poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ncg {

GeneratorSpec::GeneratorSpec(Phase ph) : ph_(std::move(ph)) {}

int GeneratorSpec::add_generator(const std::string& name) {
  if (finalized_) throw ParameterError("presentation is frozen");
  if (find(name) >= 0) throw ParameterError("duplicate generator name: " + name);
  names_.push_back(name);
  star_.push_back(static_cast<int>(names_.size()) - 1);  // self-adjoint default
  return static_cast<int>(names_.size()) - 1;
}

void GeneratorSpec::set_star_pair(int a, int b) {
  if (finalized_) throw ParameterError("presentation is frozen");
  star_.at(a) = b;
  star_.at(b) = a;
}

void GeneratorSpec::set_commutation(int hi, int lo, long long k) {
  if (finalized_) throw ParameterError("presentation is frozen");
  if (hi <= lo) throw ParameterError("commutation exponent expects hi > lo");
  if (hi >= generator_count() || lo < 0) throw ParameterError("generator index out of range");
  comm_[{hi, lo}] = k;
}

long long GeneratorSpec::comm_exponent(int hi, int lo) const {
  auto it = comm_.find({hi, lo});
  return it == comm_.end() ? 0 : it->second;
}

int GeneratorSpec::find(const std::string& name) const {
  for (int g = 0; g < generator_count(); ++g)
    if (names_[g] == name) return g;
  return -1;
}

std::pair<Word, long long> GeneratorSpec::normal_order(Word w) const {
  long long k = 0;
  bool moved = true;
  while (moved) {
    moved = false;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] > w[i + 1]) {
        k += comm_exponent(w[i], w[i + 1]);
        std::swap(w[i], w[i + 1]);
        moved = true;
      }
    }
  }
  return {std::move(w), k};
}

void GeneratorSpec::add_relation(Word lhs, std::vector<std::pair<Word, Cyclo>> rhs) {
  if (finalized_) throw ParameterError("presentation is frozen");
  auto [nf, k] = normal_order(lhs);
  if (nf != lhs || k != 0)
    throw ParameterError("relation left side must be in normal order");
  if (lhs.empty()) throw ParameterError("relation left side must be nonempty");
  rels_.push_back({std::move(lhs), std::move(rhs)});
}

void GeneratorSpec::finalize() {
  if (finalized_) return;
  finalized_ = true;  // reduction below needs a usable spec
  try {
    check_confluence();
  } catch (...) {
    finalized_ = false;
    throw;
  }
}

namespace {

// prefix * rhs * suffix, renormalized, as a polynomial.
TwistedPoly splice(const GeneratorSpec& spec, const Word& prefix,
                   const std::vector<std::pair<Word, Cyclo>>& rhs,
                   const Word& suffix) {
  TwistedPoly out(spec);
  for (auto& [w, c] : rhs) {
    Word full = prefix;
    full.insert(full.end(), w.begin(), w.end());
    full.insert(full.end(), suffix.begin(), suffix.end());
    out.add_term(std::move(full), c);
  }
  return out;
}

Word subrange(const Word& w, size_t from, size_t to) {
  return Word(w.begin() + from, w.begin() + to);
}

}  // namespace

void GeneratorSpec::check_confluence() const {
  // Critical pairs of the polynomial rules over the normal-ordered skeleton.
  // Both one-step divergences are pushed to full normal form and compared.
  for (size_t r1 = 0; r1 < rels_.size(); ++r1) {
    for (size_t r2 = 0; r2 < rels_.size(); ++r2) {
      const Word& u = rels_[r1].lhs;
      const Word& v = rels_[r2].lhs;
      // containment: v occurs inside u
      if (v.size() <= u.size()) {
        for (size_t p = 0; p + v.size() <= u.size(); ++p) {
          if (r1 == r2 && p == 0 && v.size() == u.size()) continue;
          if (!std::equal(v.begin(), v.end(), u.begin() + p)) continue;
          TwistedPoly a = splice(*this, {}, rels_[r1].rhs, {});
          TwistedPoly b =
              splice(*this, subrange(u, 0, p), rels_[r2].rhs, subrange(u, p + v.size(), u.size()));
          if (a.reduced() != b.reduced())
            throw ConfluenceError("relations are not confluent (containment overlap)");
        }
      }
      // proper overlap: a suffix of u is a prefix of v
      for (size_t len = 1; len < std::min(u.size(), v.size()); ++len) {
        if (!std::equal(u.end() - len, u.end(), v.begin())) continue;
        Word tail = subrange(v, len, v.size());
        TwistedPoly a = splice(*this, {}, rels_[r1].rhs, tail);
        TwistedPoly b = splice(*this, subrange(u, 0, u.size() - len), rels_[r2].rhs, {});
        if (a.reduced() != b.reduced())
          throw ConfluenceError("relations are not confluent (proper overlap)");
      }
    }
  }
}

TwistedPoly TwistedPoly::one(const GeneratorSpec& spec) {
  return monomial(spec, {}, Cyclo::one());
}

TwistedPoly TwistedPoly::monomial(const GeneratorSpec& spec, Word w, Cyclo coeff) {
  TwistedPoly p(spec);
  p.add_term(std::move(w), coeff);
  return p;
}

TwistedPoly TwistedPoly::generator(const GeneratorSpec& spec, int g) {
  if (g < 0 || g >= spec.generator_count())
    throw ParameterError("generator index out of range");
  return monomial(spec, {g});
}

void TwistedPoly::add_term(Word w, const Cyclo& coeff) {
  if (coeff.is_zero()) return;
  auto [nf, k] = spec_->normal_order(std::move(w));
  Cyclo c = coeff;
  if (k != 0) c *= spec_->phase().lambda_pow(k);
  auto it = terms_.find(nf);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(std::move(nf), std::move(c));
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

TwistedPoly TwistedPoly::operator+(const TwistedPoly& o) const {
  if (spec_ != o.spec_) throw ParameterError("polynomials over different presentations");
  TwistedPoly r = *this;
  for (auto& [w, c] : o.terms_) r.add_term(Word(w), c);
  return r;
}

TwistedPoly TwistedPoly::operator-(const TwistedPoly& o) const { return *this + (-o); }

TwistedPoly TwistedPoly::operator-() const {
  TwistedPoly r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

TwistedPoly TwistedPoly::operator*(const TwistedPoly& o) const {
  if (spec_ != o.spec_) throw ParameterError("polynomials over different presentations");
  TwistedPoly r(*spec_);
  for (auto& [wa, ca] : terms_)
    for (auto& [wb, cb] : o.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_term(std::move(w), ca * cb);
    }
  return r;
}

TwistedPoly TwistedPoly::scaled(const Cyclo& c) const {
  TwistedPoly r(*spec_);
  for (auto& [w, v] : terms_) r.add_term(Word(w), v * c);
  return r;
}

bool TwistedPoly::operator==(const TwistedPoly& o) const {
  return spec_ == o.spec_ && terms_ == o.terms_;
}

TwistedPoly TwistedPoly::star() const {
  TwistedPoly r(*spec_);
  for (auto& [w, c] : terms_) {
    Word rev(w.rbegin(), w.rend());
    for (int& g : rev) g = spec_->star_partner(g);
    r.add_term(std::move(rev), c.conj());
  }
  return r;
}

namespace {

struct Match {
  size_t rule;
  size_t pos;
};

std::vector<Match> find_matches(const GeneratorSpec& spec, const Word& w) {
  std::vector<Match> out;
  const auto& rels = spec.relations();
  for (size_t r = 0; r < rels.size(); ++r) {
    const Word& lhs = rels[r].lhs;
    if (lhs.size() > w.size()) continue;
    for (size_t p = 0; p + lhs.size() <= w.size(); ++p)
      if (std::equal(lhs.begin(), lhs.end(), w.begin() + p)) out.push_back({r, p});
  }
  return out;
}

}  // namespace

TwistedPoly TwistedPoly::reduced(std::mt19937* rng, long long max_steps) const {
  std::map<Word, Cyclo> work = terms_;
  TwistedPoly done(*spec_);
  long long steps = 0;
  while (!work.empty()) {
    auto it = work.begin();
    if (rng && work.size() > 1) {
      std::uniform_int_distribution<size_t> pick(0, work.size() - 1);
      std::advance(it, pick(*rng));
    }
    Word w = it->first;
    Cyclo c = it->second;
    work.erase(it);
    if (c.is_zero()) continue;
    auto matches = find_matches(*spec_, w);
    if (matches.empty()) {
      done.add_term(std::move(w), c);
      continue;
    }
    if (++steps > max_steps)
      throw ReductionBudgetError("rewriting exceeded its step budget");
    Match m = matches.front();
    if (rng && matches.size() > 1) {
      std::uniform_int_distribution<size_t> pick(0, matches.size() - 1);
      m = matches[pick(*rng)];
    }
    const auto& rel = spec_->relations()[m.rule];
    Word prefix = subrange(w, 0, m.pos);
    Word suffix = subrange(w, m.pos + rel.lhs.size(), w.size());
    TwistedPoly spliced = splice(*spec_, prefix, rel.rhs, suffix);
    for (auto& [nw, nc] : spliced.terms()) {
      Cyclo add = nc * c;
      auto jt = work.find(nw);
      if (jt == work.end()) {
        if (!add.is_zero()) work.emplace(nw, std::move(add));
      } else {
        jt->second += add;
        if (jt->second.is_zero()) work.erase(jt);
      }
    }
  }
  return done;
}

std::string TwistedPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    size_t i = 0;
    while (i < w.size()) {
      size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      os << " " << spec_->name(w[i]);
      if (j - i > 1) os << "^" << (j - i);
      i = j;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Lexer {
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  char take() {
    skip();
    return s[i++];
  }
  bool accept(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
  long long integer() {
    skip();
    bool neg = accept('-');
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("expected an integer at position " + std::to_string(i));
    long long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      v = v * 10 + (s[i++] - '0');
    return neg ? -v : v;
  }
  std::string ident() {
    skip();
    size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\''))
      ++i;
    std::string name = s.substr(start, i - start);
    if (i < s.size() && s[i] == '*') {
      ++i;
      name += '*';
    }
    return name;
  }
};

Rat parse_ratio(Lexer& lx) {
  long long num = lx.integer();
  if (lx.accept('/')) return rat(num, lx.integer());
  return rat(num);
}

}  // namespace

TwistedPoly parse_poly(const GeneratorSpec& spec, const std::string& text) {
  TwistedPoly out(spec);
  Lexer lx{text};
  bool any = false;
  while (!lx.done()) {
    // sign
    GaussRat sign(Rat(1));
    if (lx.accept('-'))
      sign = GaussRat(Rat(-1));
    else
      lx.accept('+');
    // term: one or more factors
    Cyclo coeff = Cyclo::one().scaled(sign);
    Word word;
    bool factors = false;
    while (!lx.done()) {
      char c = lx.peek();
      if (c == '+' || c == '-') break;
      factors = true;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff = coeff.scaled(GaussRat(parse_ratio(lx)));
        continue;
      }
      if (c == '(') {
        lx.take();
        Rat r = parse_ratio(lx);
        if (!lx.accept(')')) throw ParseError("expected ')'");
        coeff = coeff.scaled(GaussRat(r));
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string name = lx.ident();
        long long power = 1;
        if (lx.accept('^')) power = lx.integer();
        int g = spec.find(name);
        if (g < 0) {
          if (name == "i") {
            // imaginary unit (only when no generator claims the name)
            long long r4 = ((power % 4) + 4) % 4;
            GaussRat ipow = r4 == 0   ? GaussRat(Rat(1))
                            : r4 == 1 ? GaussRat::unit_i()
                            : r4 == 2 ? GaussRat(Rat(-1))
                                      : GaussRat(Rat(0), Rat(-1));
            coeff = coeff.scaled(ipow);
            continue;
          }
          if (name == "l") {
            coeff *= spec.phase().lambda_pow(power);
            continue;
          }
          throw ParseError("unknown generator: " + name);
        }
        if (power < 0) throw ParseError("negative generator powers are not supported");
        for (long long k = 0; k < power; ++k) word.push_back(g);
        continue;
      }
      throw ParseError(std::string("unexpected character '") + c + "'");
    }
    if (!factors) throw ParseError("empty term");
    out.add_term(std::move(word), coeff);
    any = true;
  }
  if (!any) throw ParseError("empty expression");
  return out;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

std::string word_key(const GeneratorSpec& spec, const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  size_t i = 0;
  while (i < w.size()) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (i > 0) os << " ";
    os << spec.name(w[i]);
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  return os.str();
}

// inverse of p modulo q (q >= 1, gcd(p, q) = 1)
long long mod_inverse(long long p, long long q) {
  long long t = 0, new_t = 1, r = q, new_r = p % q;
  while (new_r != 0) {
    long long quot = r / new_r;
    t -= quot * new_t;
    std::swap(t, new_t);
    r -= quot * new_r;
    std::swap(r, new_r);
  }
  return ((t % q) + q) % q;
}

nlohmann::json coeff_to_json(const Phase& ph, const Cyclo& c) {
  long long q = ph.exact() ? ph.q() : 1;
  long long pinv = (q > 1) ? mod_inverse(ph.p(), q) : 0;
  nlohmann::json arr = nlohmann::json::array();
  for (auto& [e, g] : c.coeffs()) {
    long long lam_exp = (q > 1) ? (static_cast<long long>(e) * pinv) % q : 0;
    arr.push_back({rat_to_string(g.re), rat_to_string(g.im), lam_exp});
  }
  if (arr.size() == 1) return arr[0];
  return arr;
}

Cyclo coeff_from_json(const GeneratorSpec& spec, const nlohmann::json& v) {
  auto one_triple = [&](const nlohmann::json& t) -> Cyclo {
    if (!t.is_array() || t.size() != 3)
      throw ParseError("coefficient must be a [re, im, lambda_exp] triple");
    auto ratval = [](const nlohmann::json& x) -> Rat {
      if (x.is_string()) return rat_from_string(x.get<std::string>());
      if (x.is_number_integer()) return rat(x.get<long long>());
      throw ParseError("coefficient components must be rational strings or integers");
    };
    GaussRat g(ratval(t[0]), ratval(t[1]));
    long long k = t[2].get<long long>();
    Cyclo lam = spec.phase().exact() && spec.phase().q() > 1
                    ? spec.phase().lambda_pow(k)
                    : Cyclo::one();
    return lam.scaled(g);
  };
  if (v.is_array() && !v.empty() && v[0].is_array()) {
    Cyclo acc = Cyclo::zero();
    for (auto& t : v) acc += one_triple(t);
    return acc;
  }
  return one_triple(v);
}

}  // namespace

nlohmann::json poly_to_json(const TwistedPoly& p) {
  nlohmann::json obj = nlohmann::json::object();
  for (auto& [w, c] : p.terms())
    obj[word_key(p.spec(), w)] = coeff_to_json(p.spec().phase(), c);
  return obj;
}

TwistedPoly poly_from_json(const GeneratorSpec& spec, const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("serialized polynomial must be an object");
  TwistedPoly out(spec);
  for (auto& [key, val] : j.items()) {
    TwistedPoly mono = parse_poly(spec, key);
    if (mono.term_count() != 1)
      throw ParseError("serialized monomial key must be a single word: " + key);
    Word w = mono.terms().begin()->first;
    Cyclo base = mono.terms().begin()->second;  // phases from key normalization
    out.add_term(std::move(w), base * coeff_from_json(spec, val));
  }
  return out;
}

}  // namespace ncg
