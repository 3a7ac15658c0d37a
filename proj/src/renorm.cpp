#include "ncg/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <sstream>

namespace ncg {

// ---------------------------------------------------------------------------
// Tree

namespace {

// splits "(" g1 g2 ... ")" into the top-level balanced groups g1, g2, ...
std::vector<std::string> top_groups(const std::string& key) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 1; i + 1 < key.size(); ++i) {
    if (key[i] == '(') {
      if (depth == 0) start = i;
      ++depth;
    } else if (key[i] == ')') {
      --depth;
      if (depth == 0) out.push_back(key.substr(start, i - start + 1));
    }
  }
  return out;
}

Tree tree_from_key(const std::string& key);

Tree tree_from_key(const std::string& key) {
  std::vector<Tree> ch;
  for (const std::string& sub : top_groups(key)) ch.push_back(tree_from_key(sub));
  return ch.empty() ? Tree::leaf() : Tree::graft(std::move(ch));
}

}  // namespace

Tree Tree::leaf() {
  Tree t;
  t.parent_ = {-1};
  t.key_ = "()";
  return t;
}

Tree Tree::graft(std::vector<Tree> children) {
  std::sort(children.begin(), children.end());
  Tree t;
  t.parent_.push_back(-1);
  t.key_ = "(";
  for (const Tree& c : children) {
    int offset = static_cast<int>(t.parent_.size());
    t.parent_.push_back(0);  // child's root hangs off the new root
    for (std::size_t i = 1; i < c.parent_.size(); ++i)
      t.parent_.push_back(c.parent_[i] + offset);
    t.key_ += c.key_;
  }
  t.key_ += ")";
  return t;
}

Tree Tree::ladder(int n) {
  if (n < 1) throw ParameterError("ladder needs at least one node");
  Tree t = leaf();
  for (int i = 1; i < n; ++i) t = graft({t});
  return t;
}

std::vector<Tree> Tree::children() const {
  std::vector<Tree> out;
  for (const std::string& g : top_groups(key_)) out.push_back(tree_from_key(g));
  return out;
}

std::string Tree::to_string() const {
  std::vector<Tree> ch = children();
  if (ch.empty()) return "•";
  std::string s = "B+[";
  for (std::size_t i = 0; i < ch.size(); ++i) {
    if (i) s += " ";
    s += ch[i].to_string();
  }
  s += "]";
  return s;
}

namespace {

void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
}

Tree parse_tree(const std::string& s, std::size_t& i) {
  skip_ws(s, i);
  if (i >= s.size()) throw ParseError("unexpected end of tree expression");
  if (s[i] == '*') {
    ++i;
    return Tree::leaf();
  }
  if (s.compare(i, 3, "•") == 0) {
    i += 3;
    return Tree::leaf();
  }
  if (s.compare(i, 3, "B+[") == 0) {
    i += 3;
    std::vector<Tree> ch;
    skip_ws(s, i);
    while (i < s.size() && s[i] != ']') {
      ch.push_back(parse_tree(s, i));
      skip_ws(s, i);
    }
    if (i >= s.size()) throw ParseError("unterminated B+[ in tree expression");
    ++i;  // ']'
    if (ch.empty()) return Tree::leaf();  // B+[] grafts nothing: the leaf
    return Tree::graft(std::move(ch));
  }
  throw ParseError("unrecognized token in tree expression at position " +
                   std::to_string(i));
}

}  // namespace

Tree Tree::parse(const std::string& text) {
  std::size_t i = 0;
  Tree t = parse_tree(text, i);
  skip_ws(text, i);
  if (i != text.size())
    throw ParseError("trailing input after tree expression");
  return t;
}

std::vector<Tree> Tree::with_nodes(int n) {
  if (n < 1) throw ParameterError("tree needs at least one node");
  static std::map<int, std::vector<Tree>> cache;
  auto hit = cache.find(n);
  if (hit != cache.end()) return hit->second;
  std::vector<Tree> out;
  if (n == 1) {
    out.push_back(leaf());
  } else {
    std::vector<Tree> smaller = up_to_nodes(n - 1);
    // nondecreasing sequences of smaller trees with total size n-1
    std::vector<Tree> pick;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from,
                                                    int remaining) {
      if (remaining == 0) {
        out.push_back(graft(pick));
        return;
      }
      for (std::size_t i = from; i < smaller.size(); ++i) {
        if (smaller[i].size() > remaining) break;  // sorted by size
        pick.push_back(smaller[i]);
        rec(i, remaining - smaller[i].size());
        pick.pop_back();
      }
    };
    rec(0, n - 1);
    std::sort(out.begin(), out.end());
  }
  cache[n] = out;
  return out;
}

std::vector<Tree> Tree::up_to_nodes(int n) {
  std::vector<Tree> out;
  for (int k = 1; k <= n; ++k) {
    std::vector<Tree> level = with_nodes(k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Forest

Forest::Forest(std::vector<Tree> trees) : trees_(std::move(trees)) {
  std::sort(trees_.begin(), trees_.end());
}

Forest Forest::single(const Tree& t) { return Forest(std::vector<Tree>{t}); }

int Forest::nodes() const {
  int n = 0;
  for (const Tree& t : trees_) n += t.size();
  return n;
}

Forest Forest::merged(const Forest& o) const {
  std::vector<Tree> all = trees_;
  all.insert(all.end(), o.trees_.begin(), o.trees_.end());
  return Forest(std::move(all));
}

std::string Forest::key() const {
  std::string s;
  for (const Tree& t : trees_) s += t.key();
  return s;
}

std::string Forest::to_string() const {
  if (trees_.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < trees_.size(); ++i) {
    if (i) s += " ";
    s += trees_[i].to_string();
  }
  return s;
}

bool Forest::operator<(const Forest& o) const {
  if (nodes() != o.nodes()) return nodes() < o.nodes();
  return trees_ < o.trees_;
}

// ---------------------------------------------------------------------------
// cuts and coproduct

namespace {

// all admissible cuts including the empty one: (removed forest, root part)
std::vector<std::pair<Forest, Tree>> all_cuts(const Tree& t) {
  std::vector<Tree> ch = t.children();
  // start with the root alone
  std::vector<std::pair<std::vector<Tree>, std::vector<Tree>>> acc = {
      {{}, {}}};  // (removed trees, kept child subtrees)
  for (const Tree& c : ch) {
    std::vector<std::pair<std::vector<Tree>, std::vector<Tree>>> next;
    // option: cut the edge to c, the whole child subtree is removed
    for (const auto& [rem, kept] : acc) {
      auto r = rem;
      r.push_back(c);
      next.emplace_back(std::move(r), kept);
    }
    // option: keep the edge and cut inside the child
    for (const auto& [p, rsub] : all_cuts(c))
      for (const auto& [rem, kept] : acc) {
        auto r = rem;
        for (const Tree& x : p.trees()) r.push_back(x);
        auto k = kept;
        k.push_back(rsub);
        next.emplace_back(std::move(r), std::move(k));
      }
    acc = std::move(next);
  }
  std::vector<std::pair<Forest, Tree>> out;
  out.reserve(acc.size());
  for (auto& [rem, kept] : acc)
    out.emplace_back(Forest(std::move(rem)), Tree::graft(std::move(kept)));
  return out;
}

}  // namespace

std::vector<std::pair<Forest, Tree>> proper_cuts(const Tree& t) {
  std::vector<std::pair<Forest, Tree>> out;
  for (auto& [p, r] : all_cuts(t))
    if (!p.empty()) out.emplace_back(p, r);
  return out;
}

std::vector<std::pair<Forest, Forest>> coproduct(const Tree& t) {
  std::vector<std::pair<Forest, Forest>> out;
  out.emplace_back(Forest::single(t), Forest());
  out.emplace_back(Forest(), Forest::single(t));
  for (auto& [p, r] : proper_cuts(t)) out.emplace_back(p, Forest::single(r));
  return out;
}

std::vector<std::pair<Forest, Forest>> coproduct(const Forest& f) {
  std::vector<std::pair<Forest, Forest>> acc = {{Forest(), Forest()}};
  for (const Tree& t : f.trees()) {
    std::vector<std::pair<Forest, Forest>> next;
    for (const auto& [tl, tr] : coproduct(t))
      for (const auto& [al, ar] : acc)
        next.emplace_back(al.merged(tl), ar.merged(tr));
    acc = std::move(next);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// forest sums and the antipode

ForestSum fs_scale(const ForestSum& a, const Rat& c) {
  ForestSum out;
  if (c == 0) return out;
  for (const auto& [f, x] : a) out[f] = x * c;
  return out;
}

ForestSum fs_add(const ForestSum& a, const ForestSum& b) {
  ForestSum out = a;
  for (const auto& [f, x] : b) {
    Rat v = out[f] + x;
    if (v == 0)
      out.erase(f);
    else
      out[f] = v;
  }
  return out;
}

ForestSum fs_mul(const ForestSum& a, const ForestSum& b) {
  ForestSum out;
  for (const auto& [fa, xa] : a)
    for (const auto& [fb, xb] : b) {
      Forest m = fa.merged(fb);
      Rat v = out[m] + xa * xb;
      if (v == 0)
        out.erase(m);
      else
        out[m] = v;
    }
  return out;
}

namespace {

ForestSum antipode_rec(const Tree& t, std::map<Tree, ForestSum>& memo) {
  auto hit = memo.find(t);
  if (hit != memo.end()) return hit->second;
  ForestSum s;
  s[Forest::single(t)] = Rat(-1);
  for (auto& [p, r] : proper_cuts(t)) {
    ForestSum sp;
    sp[Forest()] = Rat(1);
    for (const Tree& pt : p.trees()) sp = fs_mul(sp, antipode_rec(pt, memo));
    ForestSum rr;
    rr[Forest::single(r)] = Rat(-1);  // minus in front of the cut sum
    s = fs_add(s, fs_mul(sp, rr));
  }
  memo[t] = s;
  return s;
}

}  // namespace

ForestSum antipode(const Tree& t) {
  std::map<Tree, ForestSum> memo;
  return antipode_rec(t, memo);
}

ForestSum antipode(const Forest& f) {
  std::map<Tree, ForestSum> memo;
  ForestSum s;
  s[Forest()] = Rat(1);
  for (const Tree& t : f.trees()) s = fs_mul(s, antipode_rec(t, memo));
  return s;
}

// ---------------------------------------------------------------------------
// LPoly

LPoly::LPoly(Rat constant) {
  if (constant != 0) c_.push_back(std::move(constant));
}

LPoly LPoly::symbol() { return monomial(1, Rat(1)); }

LPoly LPoly::monomial(int k, Rat c) {
  LPoly p;
  if (c == 0) return p;
  p.c_.assign(static_cast<std::size_t>(k) + 1, Rat(0));
  p.c_[static_cast<std::size_t>(k)] = std::move(c);
  return p;
}

Rat LPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Rat(0);
  return c_[static_cast<std::size_t>(k)];
}

void LPoly::prune() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

LPoly LPoly::operator+(const LPoly& o) const {
  LPoly out;
  out.c_.resize(std::max(c_.size(), o.c_.size()), Rat(0));
  for (std::size_t i = 0; i < out.c_.size(); ++i) {
    if (i < c_.size()) out.c_[i] += c_[i];
    if (i < o.c_.size()) out.c_[i] += o.c_[i];
  }
  out.prune();
  return out;
}

LPoly LPoly::operator-(const LPoly& o) const { return *this + (-o); }

LPoly LPoly::operator-() const {
  LPoly out = *this;
  for (Rat& c : out.c_) c = -c;
  return out;
}

LPoly LPoly::operator*(const LPoly& o) const {
  LPoly out;
  if (c_.empty() || o.c_.empty()) return out;
  out.c_.assign(c_.size() + o.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      out.c_[i + j] += c_[i] * o.c_[j];
  out.prune();
  return out;
}

LPoly LPoly::shifted(const Rat& shift) const {
  // L^k -> (L + shift)^k expanded
  LPoly out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    Rat binom(1);
    Rat spow(1);
    // term j: C(k, k-j) shift^{k-j} L^j accumulated from j = k down to 0
    std::vector<Rat> row(k + 1, Rat(0));
    for (int j = static_cast<int>(k); j >= 0; --j) {
      row[static_cast<std::size_t>(j)] = c_[k] * binom * spow;
      if (j > 0) {
        binom = binom * Rat(j) / Rat(static_cast<int>(k) - j + 1);
        spow = spow * shift;
      }
    }
    LPoly term;
    term.c_ = std::move(row);
    term.prune();
    out = out + term;
  }
  return out;
}

double LPoly::eval(double Lval) const {
  double acc = 0;
  for (std::size_t k = c_.size(); k-- > 0;)
    acc = acc * Lval + c_[k].convert_to<double>();
  return acc;
}

std::string LPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[k] << ")";
    if (k == 1) os << "*L";
    if (k > 1) os << "*L^" << k;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Laurent

Laurent::Laurent(int trunc_order) : K_(trunc_order) {}

Laurent Laurent::one(int K) { return monomial(K, 0, LPoly(Rat(1))); }

Laurent Laurent::monomial(int K, int pow, LPoly coeff) {
  Laurent s(K);
  if (!coeff.is_zero() && pow <= K) s.c_[pow] = std::move(coeff);
  return s;
}

Laurent Laurent::exp_eps(int K, const LPoly& a) {
  Laurent s(K);
  LPoly term{Rat(1)};
  for (int k = 0; k <= K; ++k) {
    if (k > 0) term = term * a * LPoly(Rat(1, k));
    if (!term.is_zero()) s.c_[k] = term;
  }
  return s;
}

LPoly Laurent::coeff(int pow) const {
  auto it = c_.find(pow);
  return it == c_.end() ? LPoly() : it->second;
}

Laurent Laurent::operator+(const Laurent& o) const {
  Laurent out(std::min(K_, o.K_));
  for (const auto& [p, v] : c_)
    if (p <= out.K_) out.c_[p] = v;
  for (const auto& [p, v] : o.c_) {
    if (p > out.K_) continue;
    LPoly s = out.coeff(p) + v;
    if (s.is_zero())
      out.c_.erase(p);
    else
      out.c_[p] = s;
  }
  return out;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator-() const {
  Laurent out = *this;
  for (auto& [p, v] : out.c_) v = -v;
  return out;
}

Laurent Laurent::operator*(const Laurent& o) const {
  // the product is exact only as far as each factor's truncation reaches
  // past the other's lowest exponent
  int K = std::min(K_ + o.lowest(), o.K_ + lowest());
  Laurent out(K);
  for (const auto& [pa, va] : c_)
    for (const auto& [pb, vb] : o.c_) {
      int p = pa + pb;
      if (p > K) continue;
      LPoly s = out.coeff(p) + va * vb;
      if (s.is_zero())
        out.c_.erase(p);
      else
        out.c_[p] = s;
    }
  return out;
}

Laurent Laurent::scaled(const Rat& c) const {
  Laurent out(K_);
  if (c == 0) return out;
  for (const auto& [p, v] : c_) out.c_[p] = v * LPoly(c);
  return out;
}

bool Laurent::operator==(const Laurent& o) const {
  int m = std::min(K_, o.K_);
  for (const auto& [p, v] : c_)
    if (p <= m && o.coeff(p) != v) return false;
  for (const auto& [p, v] : o.c_)
    if (p <= m && coeff(p) != v) return false;
  return true;
}

Laurent Laurent::pole_part() const {
  Laurent out(K_);
  for (const auto& [p, v] : c_)
    if (p < 0) out.c_[p] = v;
  return out;
}

Laurent Laurent::finite_part() const {
  Laurent out(K_);
  for (const auto& [p, v] : c_)
    if (p >= 0) out.c_[p] = v;
  return out;
}

bool Laurent::has_pole() const {
  return !c_.empty() && c_.begin()->first < 0;
}

std::string Laurent::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, v] : c_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << v.to_string() << "]";
    if (p != 0) os << "*eps^" << p;
  }
  os << " + O(eps^" << (K_ + 1) << ")";
  return os.str();
}

Laurent pole_part(const Laurent& s) { return s.pole_part(); }

// ---------------------------------------------------------------------------
// HopfCharacter

HopfCharacter::HopfCharacter(int trunc_order,
                             std::function<Laurent(const Tree&)> rule)
    : K_(trunc_order),
      rule_(std::move(rule)),
      memo_(std::make_shared<std::map<Tree, Laurent>>()) {}

HopfCharacter HopfCharacter::from_table(int trunc_order,
                                        std::map<Tree, Laurent> table) {
  auto tab = std::make_shared<std::map<Tree, Laurent>>(std::move(table));
  return HopfCharacter(trunc_order, [tab](const Tree& t) {
    auto it = tab->find(t);
    if (it == tab->end())
      throw IncompleteDataError("character table has no value for " +
                                t.to_string());
    return it->second;
  });
}

namespace {

Laurent ladder_rule(int K, const Tree& t, std::map<Tree, Laurent>& memo) {
  auto hit = memo.find(t);
  if (hit != memo.end()) return hit->second;
  Laurent v = Laurent::one(K);
  for (const Tree& c : t.children()) v = v * ladder_rule(K, c, memo);
  v = v * Laurent::exp_eps(K, LPoly::symbol());
  v = v * Laurent::monomial(K, -1, LPoly(Rat(1, t.size())));
  memo.emplace(t, v);
  return v;
}

}  // namespace

HopfCharacter HopfCharacter::ladder_toy(int trunc_order) {
  auto memo = std::make_shared<std::map<Tree, Laurent>>();
  return HopfCharacter(trunc_order, [trunc_order, memo](const Tree& t) {
    return ladder_rule(trunc_order, t, *memo);
  });
}

HopfCharacter HopfCharacter::counit(int trunc_order) {
  return HopfCharacter(trunc_order,
                       [trunc_order](const Tree&) { return Laurent(trunc_order); });
}

Laurent HopfCharacter::value(const Tree& t) const {
  auto hit = memo_->find(t);
  if (hit != memo_->end()) return hit->second;
  Laurent v = rule_(t);
  memo_->emplace(t, v);
  return v;
}

Laurent HopfCharacter::value(const Forest& f) const {
  Laurent v = Laurent::one(K_);
  for (const Tree& t : f.trees()) v = v * value(t);
  return v;
}

Laurent convolve_at(const Forest& x, const ForestFunctional& f,
                    const ForestFunctional& g, int trunc_order) {
  Laurent acc(trunc_order);
  for (const auto& [left, right] : coproduct(x)) acc = acc + f(left) * g(right);
  return acc;
}

// ---------------------------------------------------------------------------
// Birkhoff

Birkhoff::Birkhoff(const HopfCharacter& gamma) : gamma_(&gamma) {}

Laurent Birkhoff::rbar(const Tree& t) {
  auto hit = memo_.find(t);
  if (hit != memo_.end()) return hit->second.rbar;
  Laurent r = gamma_->value(t);
  for (auto& [p, rest] : proper_cuts(t)) {
    Laurent cp = Laurent::one(trunc());
    for (const Tree& pt : p.trees()) cp = cp * counterterm(pt);
    r = r + cp * gamma_->value(rest);
  }
  BogoliubovValues v{r, -r.pole_part(), r.finite_part()};
  // R = rbar + C keeps exactly the nonnegative part of rbar
  memo_.emplace(t, v);
  return r;
}

Laurent Birkhoff::counterterm(const Tree& t) {
  rbar(t);
  return memo_.at(t).counterterm;
}

Laurent Birkhoff::renormalized(const Tree& t) {
  rbar(t);
  const Laurent& r = memo_.at(t).renormalized;
  if (r.trunc() < 0)
    throw ParameterError(
        "truncation order too small to expose the finite part of " +
        t.to_string());
  return r;
}

Laurent Birkhoff::gamma_minus(const Forest& f) {
  Laurent v = Laurent::one(trunc());
  for (const Tree& t : f.trees()) v = v * counterterm(t);
  return v;
}

Laurent Birkhoff::gamma_plus(const Forest& f) {
  Laurent v = Laurent::one(trunc());
  for (const Tree& t : f.trees()) v = v * renormalized(t);
  return v;
}

Rat Birkhoff::residue(const Tree& t) {
  LPoly c = counterterm(t).coeff(-1);
  if (!c.is_constant())
    throw ParameterError("residue of " + t.to_string() +
                         " carries the log scale; character is not local");
  return -c.constant();
}

Rat Birkhoff::beta(const Tree& t) { return Rat(t.size()) * residue(t); }

BogoliubovValues bogoliubov(const HopfCharacter& gamma, const Tree& t) {
  Birkhoff bk(gamma);
  bk.rbar(t);
  BogoliubovValues out{bk.rbar(t), bk.counterterm(t), bk.renormalized(t)};
  return out;
}

HopfCharacter theta_action(const Rat& t_param, const HopfCharacter& gamma) {
  int K = gamma.trunc();
  return HopfCharacter(K, [g = gamma, t_param, K](const Tree& t) {
    return g.value(t) *
           Laurent::exp_eps(K, LPoly(Rat(t.size()) * t_param));
  });
}

// ---------------------------------------------------------------------------
// scattering product

namespace {

void ec_add_into(ExpComb& a, const ExpComb& b) {
  for (const auto& [m, x] : b) {
    Rat v = a[m] + x;
    if (v == 0)
      a.erase(m);
    else
      a[m] = v;
  }
}

ExpComb ec_mul(const ExpComb& a, const ExpComb& b) {
  ExpComb out;
  for (const auto& [ma, xa] : a)
    for (const auto& [mb, xb] : b) {
      Rat v = out[ma + mb] + xa * xb;
      if (v == 0)
        out.erase(ma + mb);
      else
        out[ma + mb] = v;
    }
  return out;
}

ScatterValue sv_mul(const ScatterValue& a, const ScatterValue& b) {
  ScatterValue out;
  for (const auto& [pa, ca] : a)
    for (const auto& [pb, cb] : b) {
      ExpComb prod = ec_mul(ca, cb);
      ec_add_into(out[pa + pb], prod);
      if (out[pa + pb].empty()) out.erase(pa + pb);
    }
  return out;
}

void sv_add_into(ScatterValue& a, const ScatterValue& b) {
  for (const auto& [p, c] : b) {
    ec_add_into(a[p], c);
    if (a[p].empty()) a.erase(p);
  }
}

// multiply by coeff e^{-s m} eps^{-1}
ScatterValue sv_push(const ScatterValue& a, int m, const Rat& coeff) {
  ScatterValue out;
  if (coeff == 0) return out;
  for (const auto& [p, c] : a) {
    ExpComb shifted;
    for (const auto& [ma, xa] : c) shifted[ma + m] = xa * coeff;
    out[p - 1] = std::move(shifted);
  }
  return out;
}

}  // namespace

std::map<Tree, ScatterValue> scattering_product(Birkhoff& bk, int n_max) {
  std::map<Tree, ScatterValue> F;
  for (const Tree& t : Tree::up_to_nodes(n_max)) {
    // integrand in the flow variable: the direct term plus the cut terms
    ScatterValue integrand;
    Rat bt = bk.beta(t);
    if (bt != 0) {
      ExpComb direct;
      direct[t.size()] = bt;
      integrand[-1] = std::move(direct);
    }
    for (auto& [p, r] : proper_cuts(t)) {
      Rat br = bk.beta(r);
      if (br == 0) continue;
      ScatterValue prod;
      prod[0] = ExpComb{{0, Rat(1)}};
      for (const Tree& pt : p.trees()) prod = sv_mul(prod, F.at(pt));
      ScatterValue term = sv_push(prod, r.size(), br);
      sv_add_into(integrand, term);
    }
    // value = -int_0^t integrand ds; every exponent is >= 1 so the
    // antiderivative needs no polynomial terms
    ScatterValue val;
    for (const auto& [p, comb] : integrand)
      for (const auto& [m, c] : comb) {
        if (m <= 0)
          throw RegimeError("flow integrand lost its exponential damping");
        Rat w = c / Rat(m);
        ExpComb& slot = val[p];
        Rat v0 = slot[0] - w;
        if (v0 == 0)
          slot.erase(0);
        else
          slot[0] = v0;
        Rat vm = slot[m] + w;
        if (vm == 0)
          slot.erase(m);
        else
          slot[m] = vm;
        if (slot.empty()) val.erase(p);
      }
    F.emplace(t, std::move(val));
  }
  return F;
}

double scattering_distance(Birkhoff& bk, double t_large, int n_max) {
  std::map<Tree, ScatterValue> F = scattering_product(bk, n_max);
  double dist = 0;
  for (const auto& [t, sv] : F) {
    Laurent cm = bk.counterterm(t);
    // union of exponents present on either side
    std::map<int, bool> pows;
    for (const auto& [p, v] : cm.coeffs()) pows[p] = true;
    for (const auto& [p, v] : sv) pows[p] = true;
    for (const auto& [p, unused] : pows) {
      LPoly target = cm.coeff(p);
      if (!target.is_constant())
        throw ParameterError(
            "scattering comparison needs a scale-free negative part");
      double want = target.constant().convert_to<double>();
      double got = 0;
      auto it = sv.find(p);
      if (it != sv.end())
        for (const auto& [m, c] : it->second)
          got += c.convert_to<double>() * std::exp(-t_large * m);
      dist += std::abs(want - got);
    }
  }
  return dist;
}

double scattering_check(const HopfCharacter& gamma, double t_large,
                        int n_max) {
  Birkhoff bk(gamma);
  double d0 = scattering_distance(bk, t_large / 4, n_max);
  double d1 = scattering_distance(bk, t_large / 2, n_max);
  double d2 = scattering_distance(bk, t_large, n_max);
  const double slack = 1e-12;
  if (d1 > d0 + slack || d2 > d1 + slack)
    throw RegimeError(
        "scattering distance increased along the doubling sequence");
  return d2;
}

// ---------------------------------------------------------------------------
// renormalization-group flow

std::map<Tree, Rat> rg_flow(Birkhoff& bk, const Rat& t_param, int n_max) {
  int K = bk.trunc();
  ForestFunctional gm = [&bk](const Forest& f) { return bk.gamma_minus(f); };
  ForestFunctional gminv_theta = [&bk, t_param, K](const Forest& f) {
    Laurent acc(K);
    for (const auto& [g, c] : antipode(f))
      acc = acc + bk.gamma_minus(g).scaled(c);
    return acc * Laurent::exp_eps(K, LPoly(Rat(f.nodes()) * t_param));
  };
  std::map<Tree, Rat> out;
  for (const Tree& t : Tree::up_to_nodes(n_max)) {
    Laurent v = convolve_at(Forest::single(t), gm, gminv_theta, K);
    if (v.trunc() < 0)
      throw ParameterError(
          "truncation order too small to evaluate the flow limit");
    if (v.has_pole())
      throw RegimeError("flow limit does not exist: poles fail to cancel at " +
                        t.to_string());
    LPoly z = v.at_zero();
    if (!z.is_constant())
      throw RegimeError("flow limit carries the log scale at " +
                        t.to_string());
    out[t] = z.constant();
  }
  return out;
}

}  // namespace ncg
