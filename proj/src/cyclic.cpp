#include "ncg/cyclic.hpp"

#include <algorithm>
#include <sstream>

namespace ncg {

namespace {

size_t pow_size(int d, int count) {
  size_t s = 1;
  for (int i = 0; i < count; ++i) s *= static_cast<size_t>(d);
  return s;
}

size_t flat_index(int d, const std::vector<int>& tuple) {
  size_t idx = 0;
  for (int i : tuple) idx = idx * static_cast<size_t>(d) + static_cast<size_t>(i);
  return idx;
}

std::vector<int> unflatten(int d, int count, size_t idx) {
  std::vector<int> t(count);
  for (int j = count - 1; j >= 0; --j) {
    t[j] = static_cast<int>(idx % d);
    idx /= d;
  }
  return t;
}

long long imod(long long a, long long m) { return ((a % m) + m) % m; }

}  // namespace

FinAlgebra::FinAlgebra(std::vector<std::string> labels,
                       std::vector<std::vector<Combo>> mult,
                       std::vector<Cyclo> unit)
    : d_(static_cast<int>(labels.size())),
      labels_(std::move(labels)),
      mult_(std::move(mult)),
      unit_(std::move(unit)) {
  if (d_ == 0) throw ParameterError("algebra needs at least one basis element");
  if (static_cast<int>(mult_.size()) != d_ || static_cast<int>(unit_.size()) != d_)
    throw ParameterError("structure constant table shape mismatch");
  verify();
}

FinAlgebra::Combo FinAlgebra::combo_product(const Combo& x, const Combo& y) const {
  std::map<int, Cyclo> acc;
  for (const auto& [i, cx] : x)
    for (const auto& [j, cy] : y)
      for (const auto& [k, ck] : mult_[i][j]) {
        auto it = acc.find(k);
        if (it == acc.end())
          acc.emplace(k, cx * cy * ck);
        else
          it->second = it->second + cx * cy * ck;
      }
  Combo out;
  for (auto& [k, c] : acc)
    if (!c.is_zero()) out.emplace_back(k, c);
  return out;
}

void FinAlgebra::verify() const {
  auto basis = [&](int i) { return Combo{{i, Cyclo::one()}}; };
  Combo unit_combo;
  for (int i = 0; i < d_; ++i)
    if (!unit_[i].is_zero()) unit_combo.emplace_back(i, unit_[i]);
  for (int i = 0; i < d_; ++i) {
    if (combo_product(unit_combo, basis(i)) != basis(i) ||
        combo_product(basis(i), unit_combo) != basis(i))
      throw ParameterError("unit law fails on basis element " + labels_[i]);
  }
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      for (int k = 0; k < d_; ++k) {
        Combo left = combo_product(combo_product(basis(i), basis(j)), basis(k));
        Combo right = combo_product(basis(i), combo_product(basis(j), basis(k)));
        if (left != right)
          throw ParameterError("associativity fails at (" + labels_[i] + ", " +
                               labels_[j] + ", " + labels_[k] + ")");
      }
}

FinAlgebra FinAlgebra::matrix_algebra(int n) {
  if (n < 1) throw ParameterError("matrix algebra needs n >= 1");
  int d = n * n;
  auto id = [n](int r, int c) { return r * n + c; };
  std::vector<std::string> labels(d);
  std::vector<std::vector<Combo>> mult(d, std::vector<Combo>(d));
  std::vector<Cyclo> unit(d, Cyclo::zero());
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      labels[id(r, c)] =
          "e" + std::to_string(r + 1) + std::to_string(c + 1);
      for (int r2 = 0; r2 < n; ++r2)
        for (int c2 = 0; c2 < n; ++c2)
          if (c == r2) mult[id(r, c)][id(r2, c2)] = {{id(r, c2), Cyclo::one()}};
    }
  for (int r = 0; r < n; ++r) unit[id(r, r)] = Cyclo::one();
  return FinAlgebra(std::move(labels), std::move(mult), std::move(unit));
}

FinAlgebra FinAlgebra::cyclic_group_algebra(int q) {
  if (q < 1) throw ParameterError("group order must be positive");
  std::vector<std::string> labels(q);
  std::vector<std::vector<Combo>> mult(q, std::vector<Combo>(q));
  std::vector<Cyclo> unit(q, Cyclo::zero());
  unit[0] = Cyclo::one();
  for (int a = 0; a < q; ++a) {
    labels[a] = "g^" + std::to_string(a);
    for (int b = 0; b < q; ++b) mult[a][b] = {{(a + b) % q, Cyclo::one()}};
  }
  return FinAlgebra(std::move(labels), std::move(mult), std::move(unit));
}

FinAlgebra FinAlgebra::functions_on_cyclic_group(int q) {
  if (q < 1) throw ParameterError("group order must be positive");
  std::vector<std::string> labels(q);
  std::vector<std::vector<Combo>> mult(q, std::vector<Combo>(q));
  std::vector<Cyclo> unit(q, Cyclo::one());
  for (int a = 0; a < q; ++a) {
    labels[a] = "d_" + std::to_string(a);
    for (int b = 0; b < q; ++b)
      if (a == b) mult[a][b] = {{a, Cyclo::one()}};
  }
  return FinAlgebra(std::move(labels), std::move(mult), std::move(unit));
}

FinAlgebra FinAlgebra::clock_shift_algebra(long long p, long long q) {
  if (q < 1) throw ParameterError("denominator must be positive");
  int d = static_cast<int>(q * q);
  auto id = [q](long long a, long long b) {
    return static_cast<int>(imod(a, q) * q + imod(b, q));
  };
  std::vector<std::string> labels(d);
  std::vector<std::vector<Combo>> mult(d, std::vector<Combo>(d));
  std::vector<Cyclo> unit(d, Cyclo::zero());
  unit[0] = Cyclo::one();
  for (long long a = 0; a < q; ++a)
    for (long long b = 0; b < q; ++b) {
      std::ostringstream os;
      os << "U^" << a << "V^" << b;
      labels[id(a, b)] = os.str();
      for (long long c = 0; c < q; ++c)
        for (long long e = 0; e < q; ++e)
          // (U^a V^b)(U^c V^e) = lambda^{bc} U^{a+c} V^{b+e}, lambda = zeta_q^p
          mult[id(a, b)][id(c, e)] = {
              {id(a + c, b + e),
               Cyclo::root_pow(static_cast<int>(q),
                               static_cast<long long>(imod(p * b * c, q)))}};
    }
  return FinAlgebra(std::move(labels), std::move(mult), std::move(unit));
}

Cochain::Cochain(const FinAlgebra& alg, int degree) : alg_(&alg), n_(degree) {
  if (degree < 0) throw ParameterError("cochain degree must be nonnegative");
  v_.assign(pow_size(alg.dim(), degree + 1), Cyclo::zero());
}

Cyclo& Cochain::at(const std::vector<int>& tuple) {
  if (static_cast<int>(tuple.size()) != n_ + 1)
    throw ParameterError("cochain arity mismatch");
  return v_[flat_index(alg_->dim(), tuple)];
}

const Cyclo& Cochain::at(const std::vector<int>& tuple) const {
  if (static_cast<int>(tuple.size()) != n_ + 1)
    throw ParameterError("cochain arity mismatch");
  return v_[flat_index(alg_->dim(), tuple)];
}

Cyclo Cochain::eval(const std::vector<FinAlgebra::Combo>& args) const {
  if (static_cast<int>(args.size()) != n_ + 1)
    throw ParameterError("cochain arity mismatch");
  Cyclo total = Cyclo::zero();
  std::vector<int> tuple(n_ + 1);
  std::function<void(int, const Cyclo&)> rec = [&](int slot, const Cyclo& coeff) {
    if (slot == n_ + 1) {
      total = total + coeff * v_[flat_index(alg_->dim(), tuple)];
      return;
    }
    for (const auto& [i, c] : args[slot]) {
      tuple[slot] = i;
      rec(slot + 1, coeff * c);
    }
  };
  rec(0, Cyclo::one());
  return total;
}

bool Cochain::is_zero() const {
  for (const auto& c : v_)
    if (!c.is_zero()) return false;
  return true;
}

Cochain Cochain::operator+(const Cochain& o) const {
  if (alg_ != o.alg_ || n_ != o.n_) throw ParameterError("cochain shape mismatch");
  Cochain r(*alg_, n_);
  for (size_t i = 0; i < v_.size(); ++i) r.v_[i] = v_[i] + o.v_[i];
  return r;
}

Cochain Cochain::operator-(const Cochain& o) const {
  if (alg_ != o.alg_ || n_ != o.n_) throw ParameterError("cochain shape mismatch");
  Cochain r(*alg_, n_);
  for (size_t i = 0; i < v_.size(); ++i) r.v_[i] = v_[i] - o.v_[i];
  return r;
}

Cochain Cochain::scaled(const Cyclo& c) const {
  Cochain r(*alg_, n_);
  for (size_t i = 0; i < v_.size(); ++i) r.v_[i] = v_[i] * c;
  return r;
}

bool Cochain::operator==(const Cochain& o) const {
  return alg_ == o.alg_ && n_ == o.n_ && v_ == o.v_;
}

Cochain Cochain::random(const FinAlgebra& alg, int degree, std::mt19937& rng) {
  Cochain r(alg, degree);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (auto& c : r.raw())
    c = Cyclo(GaussRat{Rat(coef(rng)), Rat(coef(rng))});
  return r;
}

Cochain Cochain::trace_cochain(const FinAlgebra& alg) {
  int n = 0;
  while (n * n < alg.dim()) ++n;
  if (n * n != alg.dim())
    throw ParameterError("trace cochain expects a matrix-unit basis");
  Cochain r(alg, 0);
  for (int i = 0; i < n; ++i) r.at({i * n + i}) = Cyclo::one();
  return r;
}

Cochain hochschild_b(const Cochain& phi) {
  const FinAlgebra& alg = phi.algebra();
  int n = phi.degree();
  int d = alg.dim();
  Cochain out(alg, n + 1);
  size_t total = out.entry_count();
  for (size_t idx = 0; idx < total; ++idx) {
    std::vector<int> t = unflatten(d, n + 2, idx);
    Cyclo acc = Cyclo::zero();
    std::vector<int> src(n + 1);
    for (int j = 0; j <= n; ++j) {
      for (int s = 0; s < j; ++s) src[s] = t[s];
      for (int s = j + 1; s <= n; ++s) src[s] = t[s + 1];
      for (const auto& [k, c] : alg.product(t[j], t[j + 1])) {
        src[j] = k;
        Cyclo term = c * phi.at(src);
        acc = (j % 2 == 0) ? acc + term : acc - term;
      }
    }
    for (int s = 1; s <= n; ++s) src[s] = t[s];
    for (const auto& [k, c] : alg.product(t[n + 1], t[0])) {
      src[0] = k;
      Cyclo term = c * phi.at(src);
      acc = ((n + 1) % 2 == 0) ? acc + term : acc - term;
    }
    out.raw()[idx] = acc;
  }
  return out;
}

Cochain cyclic_shift(const Cochain& phi) {
  const FinAlgebra& alg = phi.algebra();
  int n = phi.degree();
  int d = alg.dim();
  Cochain out(alg, n);
  size_t total = out.entry_count();
  for (size_t idx = 0; idx < total; ++idx) {
    std::vector<int> t = unflatten(d, n + 1, idx);
    std::vector<int> s(n + 1);
    s[0] = t[n];
    for (int j = 1; j <= n; ++j) s[j] = t[j - 1];
    Cyclo v = phi.at(s);
    out.raw()[idx] = (n % 2 == 0) ? v : Cyclo::zero() - v;
  }
  return out;
}

Cochain cyclic_symmetrizer(const Cochain& phi) {
  Cochain acc = phi;
  Cochain cur = phi;
  for (int j = 0; j < phi.degree(); ++j) {
    cur = cyclic_shift(cur);
    acc = acc + cur;
  }
  return acc;
}

Cochain connes_B(const Cochain& phi) {
  const FinAlgebra& alg = phi.algebra();
  int n = phi.degree();
  if (n == 0) throw ParameterError("no B on degree-0 cochains");
  int d = alg.dim();
  Cochain b0(alg, n - 1);
  FinAlgebra::Combo unit_combo;
  for (int i = 0; i < d; ++i)
    if (!alg.unit()[i].is_zero()) unit_combo.emplace_back(i, alg.unit()[i]);
  size_t total = b0.entry_count();
  for (size_t idx = 0; idx < total; ++idx) {
    std::vector<int> t = unflatten(d, n, idx);
    Cyclo acc = Cyclo::zero();
    std::vector<int> front(n + 1), back(n + 1);
    for (int j = 0; j < n; ++j) {
      front[j + 1] = t[j];
      back[j] = t[j];
    }
    for (const auto& [u, cu] : unit_combo) {
      front[0] = u;
      back[n] = u;
      Cyclo lead = cu * phi.at(front);
      Cyclo tail = cu * phi.at(back);
      acc = acc + lead;
      acc = (n % 2 == 0) ? acc - tail : acc + tail;
    }
    b0.raw()[idx] = acc;
  }
  return cyclic_symmetrizer(b0);
}

bool is_cyclic(const Cochain& phi) { return cyclic_shift(phi) == phi; }

AlgMatrix alg_identity(const FinAlgebra& alg, int k) {
  AlgMatrix m(k, std::vector<std::vector<Cyclo>>(
                     k, std::vector<Cyclo>(alg.dim(), Cyclo::zero())));
  for (int i = 0; i < k; ++i)
    for (int b = 0; b < alg.dim(); ++b) m[i][i][b] = alg.unit()[b];
  return m;
}

AlgMatrix alg_mat_mul(const FinAlgebra& alg, const AlgMatrix& x, const AlgMatrix& y) {
  int k = static_cast<int>(x.size());
  AlgMatrix r(k, std::vector<std::vector<Cyclo>>(
                     k, std::vector<Cyclo>(alg.dim(), Cyclo::zero())));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l) {
        FinAlgebra::Combo a, b;
        for (int s = 0; s < alg.dim(); ++s)
          if (!x[i][l][s].is_zero()) a.emplace_back(s, x[i][l][s]);
        for (int s = 0; s < alg.dim(); ++s)
          if (!y[l][j][s].is_zero()) b.emplace_back(s, y[l][j][s]);
        for (const auto& [s, c] : alg.combo_product(a, b))
          r[i][j][s] = r[i][j][s] + c;
      }
  return r;
}

bool alg_mat_equal(const AlgMatrix& x, const AlgMatrix& y) {
  if (x.size() != y.size()) return false;
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < x[i].size(); ++j)
      if (x[i][j] != y[i][j]) return false;
  return true;
}

Chain chern_character(const FinAlgebra& alg, const AlgMatrix& e, int n) {
  if (!alg_mat_equal(alg_mat_mul(alg, e, e), e))
    throw ParameterError("chern character needs an exact idempotent");
  int k = static_cast<int>(e.size());
  int slots = 2 * n + 1;
  AlgMatrix f = e;
  const GaussRat half{Rat(1, 2), Rat(0)};
  for (int i = 0; i < k; ++i)
    for (int b = 0; b < alg.dim(); ++b)
      f[i][i][b] = f[i][i][b] - alg.unit()[b].scaled(half);

  Chain chain{&alg, 2 * n, {}};
  std::vector<int> path(slots);
  std::vector<int> tuple(slots);
  std::function<void(int, const Cyclo&)> expand;
  auto slot_vector = [&](int s) -> const std::vector<Cyclo>& {
    int row = path[s];
    int col = path[(s + 1) % slots];
    return s == 0 ? f[row][col] : e[row][col];
  };
  expand = [&](int s, const Cyclo& coeff) {
    if (s == slots) {
      auto it = chain.terms.find(tuple);
      if (it == chain.terms.end())
        chain.terms.emplace(tuple, coeff);
      else
        it->second = it->second + coeff;
      return;
    }
    const auto& vec = slot_vector(s);
    for (int b = 0; b < alg.dim(); ++b)
      if (!vec[b].is_zero()) {
        tuple[s] = b;
        expand(s + 1, coeff * vec[b]);
      }
  };
  std::function<void(int)> paths = [&](int s) {
    if (s == slots) {
      expand(0, Cyclo::one());
      return;
    }
    for (int i = 0; i < k; ++i) {
      path[s] = i;
      paths(s + 1);
    }
  };
  paths(0);
  for (auto it = chain.terms.begin(); it != chain.terms.end();)
    it = it->second.is_zero() ? chain.terms.erase(it) : std::next(it);
  return chain;
}

Cyclo pair_cochain_chain(const Cochain& phi, const Chain& c) {
  if (&phi.algebra() != c.alg || phi.degree() != c.degree)
    throw ParameterError("pairing degree or algebra mismatch");
  Cyclo total = Cyclo::zero();
  for (const auto& [tuple, coeff] : c.terms) total = total + coeff * phi.at(tuple);
  return total;
}

Cochain torus_area_cocycle(const FinAlgebra& alg, long long p, long long q) {
  int qi = static_cast<int>(q);
  if (alg.dim() != qi * qi)
    throw ParameterError("area cocycle expects the q^2-dimensional algebra");
  // balanced representatives keep the flat-trace support symmetric
  auto rep = [qi](int a) { return 2 * a <= qi ? a : a - qi; };
  Cochain phi(alg, 2);
  std::vector<int> t(3);
  for (int i0 = 0; i0 < alg.dim(); ++i0)
    for (int i1 = 0; i1 < alg.dim(); ++i1)
      for (int i2 = 0; i2 < alg.dim(); ++i2) {
        int a0 = rep(i0 / qi), b0 = rep(i0 % qi);
        int a1 = rep(i1 / qi), b1 = rep(i1 % qi);
        int a2 = rep(i2 / qi), b2 = rep(i2 % qi);
        if (a0 + a1 + a2 != 0 || b0 + b1 + b2 != 0) continue;
        long long weight = static_cast<long long>(a1) * b2 -
                           static_cast<long long>(b1) * a2;
        if (weight == 0) continue;
        // phase of U^{a0}V^{b0} U^{a1}V^{b1} U^{a2}V^{b2} in the unwrapped
        // algebra: lambda^{b0 a1 + (b0 + b1) a2}
        long long ex = imod(p * (static_cast<long long>(b0) * a1 +
                                 (static_cast<long long>(b0) + b1) * a2),
                            q);
        t[0] = i0;
        t[1] = i1;
        t[2] = i2;
        phi.at(t) = Cyclo::root_pow(qi, ex).scaled(GaussRat{Rat(weight), Rat(0)});
      }
  return phi;
}

AlgMatrix clock_shift_averaging_idempotent(const FinAlgebra& alg, long long q) {
  AlgMatrix e(1, std::vector<std::vector<Cyclo>>(
                     1, std::vector<Cyclo>(alg.dim(), Cyclo::zero())));
  const GaussRat inv_q{Rat(1, q), Rat(0)};
  for (long long b = 0; b < q; ++b)
    e[0][0][static_cast<int>(b)] = Cyclo::one().scaled(inv_q);
  return e;
}

AlgMatrix clock_shift_rank_one_idempotent(const FinAlgebra& alg, long long p,
                                          long long q) {
  // E_jk = V^{k-j} (1/q) sum_a w^{-pka} U^a picks the rank-one slot (j,k) in
  // the clock-shift representation; e = (1/2)(E00 + E01 + E10 + E11).
  int qi = static_cast<int>(q);
  AlgMatrix e(1, std::vector<std::vector<Cyclo>>(
                     1, std::vector<Cyclo>(alg.dim(), Cyclo::zero())));
  auto add_E = [&](long long j, long long k, const Rat& scale) {
    // E_jk = V^{k-j} P_k with P_k = (1/q) sum_a w^{-pka} U^a; commuting the
    // shift through the clock powers collapses the phase to w^{-paj}
    long long vpow = imod(k - j, q);
    for (long long a = 0; a < q; ++a) {
      long long ex = imod(-p * j * a, q);
      int idx = static_cast<int>(a * q + vpow);
      e[0][0][idx] =
          e[0][0][idx] +
          Cyclo::root_pow(qi, ex).scaled(GaussRat{scale / q, Rat(0)});
    }
  };
  add_E(0, 0, Rat(1, 2));
  add_E(0, 1, Rat(1, 2));
  add_E(1, 0, Rat(1, 2));
  add_E(1, 1, Rat(1, 2));
  return e;
}

AlgMatrix clock_shift_band_projection(const FinAlgebra& alg, long long p,
                                      long long q) {
  int qi = static_cast<int>(q);
  AlgMatrix e(1, std::vector<std::vector<Cyclo>>(
                     1, std::vector<Cyclo>(alg.dim(), Cyclo::zero())));
  const GaussRat c{Rat(1, 2 * q), Rat(0)};
  // normal ordering V^b U = lambda^b U V^b puts a phase w^{pb} on the g(V)U row
  for (long long b = 0; b < q; ++b) {
    int up = static_cast<int>(1 * q + b);
    e[0][0][up] = e[0][0][up] + Cyclo::root_pow(qi, imod(p * b, q)).scaled(c);
    int down = static_cast<int>((q - 1) * q + b);
    e[0][0][down] = e[0][0][down] + Cyclo::one().scaled(c);
    int mid = static_cast<int>(0 * q + b);
    e[0][0][mid] = e[0][0][mid] + Cyclo::one().scaled(c) +
                   Cyclo::root_pow(qi, imod(p * b, q)).scaled(c);
  }
  return e;
}

GroupWindow::GroupWindow(int radius) : radius(radius) {
  if (radius < 0) throw ParameterError("window radius must be nonnegative");
  for (int x = -radius; x <= radius; ++x)
    for (int y = -radius; y <= radius; ++y)
      elems.push_back({x, y});
}

int GroupWindow::find(const std::array<int, 2>& g) const {
  if (std::abs(g[0]) > radius || std::abs(g[1]) > radius) return -1;
  int side = 2 * radius + 1;
  return (g[0] + radius) * side + (g[1] + radius);
}

GroupCochain::GroupCochain(const GroupWindow& win, int degree, GroupCocycle c)
    : win_(&win), n_(degree), c_(std::move(c)) {
  if (degree < 0) throw ParameterError("cochain degree must be nonnegative");
  // normalization: c vanishes whenever an argument is the identity
  if (degree > 0) {
    std::vector<std::array<int, 2>> args(degree, {0, 0});
    std::function<void(int)> scan = [&](int slot) {
      if (slot == degree) {
        bool has_id = false;
        for (const auto& g : args)
          if (g[0] == 0 && g[1] == 0) has_id = true;
        if (has_id && c_(args) != 0)
          throw ParameterError("group cochain requires a normalized cocycle");
        return;
      }
      for (const auto& g : win_->elems) {
        args[slot] = g;
        scan(slot + 1);
      }
    };
    scan(0);
  }
}

Rat GroupCochain::value_free(const std::vector<std::array<int, 2>>& gs) const {
  if (static_cast<int>(gs.size()) != n_ + 1)
    throw ParameterError("group cochain arity mismatch");
  int sx = 0, sy = 0;
  for (const auto& g : gs) {
    sx += g[0];
    sy += g[1];
  }
  if (sx != 0 || sy != 0) return Rat(0);
  std::vector<std::array<int, 2>> tail(gs.begin() + 1, gs.end());
  return c_(tail);
}

Rat GroupCochain::value(const std::vector<int>& tuple) const {
  std::vector<std::array<int, 2>> gs;
  gs.reserve(tuple.size());
  for (int i : tuple) gs.push_back(win_->elems[i]);
  return value_free(gs);
}

bool GroupCochain::is_cyclic_cochain() const {
  size_t m = win_->elems.size();
  std::vector<std::array<int, 2>> gs(n_ + 1);
  std::vector<size_t> idx(n_ + 1, 0);
  while (true) {
    for (int j = 0; j <= n_; ++j) gs[j] = win_->elems[idx[j]];
    std::vector<std::array<int, 2>> rot(n_ + 1);
    rot[0] = gs[n_];
    for (int j = 1; j <= n_; ++j) rot[j] = gs[j - 1];
    Rat lhs = value_free(rot);
    if (n_ % 2 == 1) lhs = -lhs;
    if (lhs != value_free(gs)) return false;
    int j = n_;
    while (j >= 0 && ++idx[j] == m) idx[j--] = 0;
    if (j < 0) break;
  }
  return true;
}

Rat GroupCochain::b_residual_max() const {
  size_t m = win_->elems.size();
  std::vector<std::array<int, 2>> gs(n_ + 2);
  std::vector<size_t> idx(n_ + 2, 0);
  Rat worst(0);
  while (true) {
    for (int j = 0; j <= n_ + 1; ++j) gs[j] = win_->elems[idx[j]];
    Rat acc(0);
    std::vector<std::array<int, 2>> src(n_ + 1);
    for (int j = 0; j <= n_; ++j) {
      for (int s = 0; s < j; ++s) src[s] = gs[s];
      src[j] = {gs[j][0] + gs[j + 1][0], gs[j][1] + gs[j + 1][1]};
      for (int s = j + 1; s <= n_; ++s) src[s] = gs[s + 1];
      Rat term = value_free(src);
      acc += (j % 2 == 0) ? term : -term;
    }
    src[0] = {gs[n_ + 1][0] + gs[0][0], gs[n_ + 1][1] + gs[0][1]};
    for (int s = 1; s <= n_; ++s) src[s] = gs[s];
    Rat wrap = value_free(src);
    acc += ((n_ + 1) % 2 == 0) ? wrap : -wrap;
    if (acc < 0) acc = -acc;
    if (acc > worst) worst = acc;
    int j = n_ + 1;
    while (j >= 0 && ++idx[j] == m) idx[j--] = 0;
    if (j < 0) break;
  }
  return worst;
}

Rat GroupCochain::b_windowed(const std::vector<int>& tuple) const {
  if (static_cast<int>(tuple.size()) != n_ + 2)
    throw ParameterError("windowed b arity mismatch");
  std::vector<std::array<int, 2>> gs;
  for (int i : tuple) gs.push_back(win_->elems[i]);
  Rat acc(0);
  std::vector<std::array<int, 2>> src(n_ + 1);
  auto merged = [&](const std::array<int, 2>& a,
                    const std::array<int, 2>& b) -> std::array<int, 2> {
    std::array<int, 2> s{a[0] + b[0], a[1] + b[1]};
    if (win_->find(s) < 0)
      throw IncompleteDataError("product leaves the working span");
    return s;
  };
  for (int j = 0; j <= n_; ++j) {
    for (int s = 0; s < j; ++s) src[s] = gs[s];
    src[j] = merged(gs[j], gs[j + 1]);
    for (int s = j + 1; s <= n_; ++s) src[s] = gs[s + 1];
    Rat term = value_free(src);
    acc += (j % 2 == 0) ? term : -term;
  }
  src[0] = merged(gs[n_ + 1], gs[0]);
  for (int s = 1; s <= n_; ++s) src[s] = gs[s];
  Rat wrap = value_free(src);
  acc += ((n_ + 1) % 2 == 0) ? wrap : -wrap;
  return acc;
}

}  // namespace ncg
