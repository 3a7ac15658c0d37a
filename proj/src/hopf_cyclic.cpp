#include "ncg/hopf_cyclic.hpp"

#include <algorithm>
#include <functional>

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

}  // namespace

HopfData::HopfData(std::vector<std::string> labels,
                   std::vector<std::vector<Combo>> mult,
                   std::vector<Cyclo> unit,
                   std::vector<std::vector<CoprodEntry>> coprod,
                   std::vector<Cyclo> counit, CycloMatrix antipode,
                   std::vector<Cyclo> sigma, std::vector<Cyclo> delta,
                   bool validate)
    : d_(static_cast<int>(labels.size())),
      labels_(std::move(labels)),
      mult_(std::move(mult)),
      unit_(std::move(unit)),
      coprod_(std::move(coprod)),
      counit_(std::move(counit)),
      S_(std::move(antipode)),
      sigma_(std::move(sigma)),
      delta_(std::move(delta)) {
  if (validate) verify();
}

HopfData::Combo HopfData::combo_product(const Combo& x, const Combo& y) const {
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

HopfData::Combo HopfData::apply_matrix(const CycloMatrix& m, const Combo& x) const {
  std::vector<Cyclo> out(d_, Cyclo::zero());
  for (const auto& [j, c] : x)
    for (int i = 0; i < d_; ++i) out[i] = out[i] + m[i][j] * c;
  Combo r;
  for (int i = 0; i < d_; ++i)
    if (!out[i].is_zero()) r.emplace_back(i, out[i]);
  return r;
}

CycloMatrix HopfData::twisted_antipode() const {
  CycloMatrix st(d_, std::vector<Cyclo>(d_, Cyclo::zero()));
  for (int i = 0; i < d_; ++i)
    for (const auto& [j, k, c] : coprod_[i]) {
      Cyclo w = c * delta_[j];
      for (int r = 0; r < d_; ++r) st[r][i] = st[r][i] + w * S_[r][k];
    }
  return st;
}

HopfData::Combo HopfData::sigma_inverse() const {
  Combo sig;
  for (int i = 0; i < d_; ++i)
    if (!sigma_[i].is_zero()) sig.emplace_back(i, sigma_[i]);
  Combo inv = apply_matrix(S_, sig);
  Combo unit_combo;
  for (int i = 0; i < d_; ++i)
    if (!unit_[i].is_zero()) unit_combo.emplace_back(i, unit_[i]);
  if (combo_product(sig, inv) != unit_combo || combo_product(inv, sig) != unit_combo)
    throw ParameterError("antipode of sigma is not its inverse");
  return inv;
}

bool HopfData::modular_involution_holds() const {
  CycloMatrix st = twisted_antipode();
  Combo inv = sigma_inverse();
  // T(y) = sigma^{-1} * St(y)
  CycloMatrix t(d_, std::vector<Cyclo>(d_, Cyclo::zero()));
  for (int col = 0; col < d_; ++col) {
    Combo sty;
    for (int r = 0; r < d_; ++r)
      if (!st[r][col].is_zero()) sty.emplace_back(r, st[r][col]);
    for (const auto& [k, c] : combo_product(inv, sty)) t[k][col] = c;
  }
  return cyclo_mat_equal(cyclo_mat_mul(t, t), cyclo_identity(d_));
}

std::map<std::vector<int>, Cyclo> HopfData::iterated_coproduct(const Combo& x,
                                                               int n) const {
  if (n < 1) throw ParameterError("coproduct slot count must be positive");
  std::map<std::vector<int>, Cyclo> cur;
  for (const auto& [i, c] : x) cur[{i}] = c;
  for (int s = 1; s < n; ++s) {
    std::map<std::vector<int>, Cyclo> next;
    for (const auto& [t, c] : cur) {
      int last = t.back();
      for (const auto& [j, k, e] : coprod_[last]) {
        std::vector<int> nt(t.begin(), t.end() - 1);
        nt.push_back(j);
        nt.push_back(k);
        auto it = next.find(nt);
        if (it == next.end())
          next.emplace(std::move(nt), c * e);
        else
          it->second = it->second + c * e;
      }
    }
    cur = std::move(next);
  }
  for (auto it = cur.begin(); it != cur.end();)
    it = it->second.is_zero() ? cur.erase(it) : std::next(it);
  return cur;
}

void HopfData::verify() const {
  if (static_cast<int>(mult_.size()) != d_ ||
      static_cast<int>(unit_.size()) != d_ ||
      static_cast<int>(coprod_.size()) != d_ ||
      static_cast<int>(counit_.size()) != d_ ||
      static_cast<int>(S_.size()) != d_ ||
      static_cast<int>(sigma_.size()) != d_ ||
      static_cast<int>(delta_.size()) != d_)
    throw ParameterError("structure tensor shape mismatch");

  auto basis = [&](int i) { return Combo{{i, Cyclo::one()}}; };
  Combo unit_combo;
  for (int i = 0; i < d_; ++i)
    if (!unit_[i].is_zero()) unit_combo.emplace_back(i, unit_[i]);

  for (int i = 0; i < d_; ++i)
    if (combo_product(unit_combo, basis(i)) != basis(i) ||
        combo_product(basis(i), unit_combo) != basis(i))
      throw ParameterError("unit law fails");
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      for (int k = 0; k < d_; ++k)
        if (combo_product(combo_product(basis(i), basis(j)), basis(k)) !=
            combo_product(basis(i), combo_product(basis(j), basis(k))))
          throw ParameterError("associativity fails");

  // coassociativity via both bracketings into three slots
  for (int i = 0; i < d_; ++i) {
    std::map<std::vector<int>, Cyclo> left, right;
    for (const auto& [j, k, c] : coprod_[i]) {
      for (const auto& [a, b, e] : coprod_[j]) {
        auto key = std::vector<int>{a, b, k};
        left[key] = left[key] + c * e;
      }
      for (const auto& [a, b, e] : coprod_[k]) {
        auto key = std::vector<int>{j, a, b};
        right[key] = right[key] + c * e;
      }
    }
    for (auto it = left.begin(); it != left.end();)
      it = it->second.is_zero() ? left.erase(it) : std::next(it);
    for (auto it = right.begin(); it != right.end();)
      it = it->second.is_zero() ? right.erase(it) : std::next(it);
    if (left != right) throw ParameterError("coassociativity fails");
  }

  // counit laws and counit/delta being characters
  for (int i = 0; i < d_; ++i) {
    std::vector<Cyclo> l(d_, Cyclo::zero()), r(d_, Cyclo::zero());
    for (const auto& [j, k, c] : coprod_[i]) {
      l[k] = l[k] + counit_[j] * c;
      r[j] = r[j] + counit_[k] * c;
    }
    for (int s = 0; s < d_; ++s) {
      Cyclo want = s == i ? Cyclo::one() : Cyclo::zero();
      if (l[s] != want || r[s] != want) throw ParameterError("counit law fails");
    }
  }
  auto char_check = [&](const std::vector<Cyclo>& chi, const char* name) {
    Cyclo on_unit = Cyclo::zero();
    for (int i = 0; i < d_; ++i) on_unit = on_unit + chi[i] * unit_[i];
    if (!(on_unit == Cyclo::one()))
      throw ParameterError(std::string(name) + " does not send 1 to 1");
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) {
        Cyclo prod = Cyclo::zero();
        for (const auto& [k, c] : mult_[i][j]) prod = prod + chi[k] * c;
        if (!(prod == chi[i] * chi[j]))
          throw ParameterError(std::string(name) + " is not a character");
      }
  };
  char_check(counit_, "counit");
  char_check(delta_, "delta");

  // antipode convolution identity
  for (int i = 0; i < d_; ++i) {
    std::vector<Cyclo> l(d_, Cyclo::zero()), r(d_, Cyclo::zero());
    for (const auto& [j, k, c] : coprod_[i]) {
      Combo sj, sk;
      for (int s = 0; s < d_; ++s) {
        if (!S_[s][j].is_zero()) sj.emplace_back(s, S_[s][j]);
        if (!S_[s][k].is_zero()) sk.emplace_back(s, S_[s][k]);
      }
      for (const auto& [s, e] : combo_product(sj, Combo{{k, Cyclo::one()}}))
        l[s] = l[s] + c * e;
      for (const auto& [s, e] : combo_product(Combo{{j, Cyclo::one()}}, sk))
        r[s] = r[s] + c * e;
    }
    for (int s = 0; s < d_; ++s) {
      Cyclo want = counit_[i] * unit_[s];
      if (l[s] != want || r[s] != want)
        throw ParameterError("antipode identity fails at " + labels_[i]);
    }
  }

  // sigma group-like with delta(sigma) = 1
  std::map<std::vector<int>, Cyclo> ds;
  Cyclo eps_sigma = Cyclo::zero(), delta_sigma = Cyclo::zero();
  for (int i = 0; i < d_; ++i) {
    if (sigma_[i].is_zero()) continue;
    eps_sigma = eps_sigma + counit_[i] * sigma_[i];
    delta_sigma = delta_sigma + delta_[i] * sigma_[i];
    for (const auto& [j, k, c] : coprod_[i]) {
      auto key = std::vector<int>{j, k};
      ds[key] = ds[key] + c * sigma_[i];
    }
  }
  for (int j = 0; j < d_; ++j)
    for (int k = 0; k < d_; ++k) {
      auto it = ds.find({j, k});
      Cyclo got = it == ds.end() ? Cyclo::zero() : it->second;
      if (!(got == sigma_[j] * sigma_[k]))
        throw ParameterError("sigma is not group-like");
    }
  if (!(eps_sigma == Cyclo::one()))
    throw ParameterError("counit of sigma must be 1");
  if (!(delta_sigma == Cyclo::one()))
    throw ParameterError("modular pair needs delta(sigma) = 1");
  sigma_inverse();
}

HopfData HopfData::cyclic_group(int q, int sigma_power, int delta_root) {
  if (q < 1) throw ParameterError("group order must be positive");
  std::vector<std::string> labels(q);
  std::vector<std::vector<Combo>> mult(q, std::vector<Combo>(q));
  std::vector<Cyclo> unit(q, Cyclo::zero());
  std::vector<std::vector<CoprodEntry>> coprod(q);
  std::vector<Cyclo> counit(q, Cyclo::one());
  CycloMatrix s(q, std::vector<Cyclo>(q, Cyclo::zero()));
  std::vector<Cyclo> sigma(q, Cyclo::zero());
  std::vector<Cyclo> delta(q);
  unit[0] = Cyclo::one();
  sigma[((sigma_power % q) + q) % q] = Cyclo::one();
  for (int a = 0; a < q; ++a) {
    labels[a] = "g^" + std::to_string(a);
    for (int b = 0; b < q; ++b) mult[a][b] = {{(a + b) % q, Cyclo::one()}};
    coprod[a] = {{a, a, Cyclo::one()}};
    s[(q - a) % q][a] = Cyclo::one();
    delta[a] = Cyclo::root_pow(
        q, ((static_cast<long long>(delta_root) * a) % q + q) % q);
  }
  return HopfData(std::move(labels), std::move(mult), std::move(unit),
                  std::move(coprod), std::move(counit), std::move(s),
                  std::move(sigma), std::move(delta));
}

CycloMatrix cyclo_mat_mul(const CycloMatrix& a, const CycloMatrix& b) {
  size_t n = a.size(), m = b[0].size(), k = b.size();
  CycloMatrix r(n, std::vector<Cyclo>(m, Cyclo::zero()));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (size_t j = 0; j < m; ++j)
        r[i][j] = r[i][j] + a[i][l] * b[l][j];
    }
  return r;
}

CycloMatrix cyclo_identity(size_t n) {
  CycloMatrix r(n, std::vector<Cyclo>(n, Cyclo::zero()));
  for (size_t i = 0; i < n; ++i) r[i][i] = Cyclo::one();
  return r;
}

bool cyclo_mat_equal(const CycloMatrix& a, const CycloMatrix& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

CycloMatrix hopf_face(const HopfData& h, int n, int i) {
  if (n < 1 || i < 0 || i > n) throw ParameterError("face index out of range");
  int d = h.dim();
  CycloMatrix m(pow_size(d, n), std::vector<Cyclo>(pow_size(d, n - 1), Cyclo::zero()));
  size_t cols = pow_size(d, n - 1);
  for (size_t col = 0; col < cols; ++col) {
    std::vector<int> t = unflatten(d, n - 1, col);
    std::vector<int> out(n);
    if (i == 0) {
      for (int s = 0; s < n - 1; ++s) out[s + 1] = t[s];
      for (int u = 0; u < d; ++u)
        if (!h.unit()[u].is_zero()) {
          out[0] = u;
          m[flat_index(d, out)][col] = h.unit()[u];
        }
    } else if (i == n) {
      for (int s = 0; s < n - 1; ++s) out[s] = t[s];
      for (int u = 0; u < d; ++u)
        if (!h.sigma()[u].is_zero()) {
          out[n - 1] = u;
          m[flat_index(d, out)][col] = h.sigma()[u];
        }
    } else {
      // coproduct applied to slot i of h^1 (x) ... (x) h^{n-1}
      for (int s = 0; s < i - 1; ++s) out[s] = t[s];
      for (int s = i; s < n - 1; ++s) out[s + 1] = t[s];
      for (const auto& [a, b, c] : h.coprod()[t[i - 1]]) {
        out[i - 1] = a;
        out[i] = b;
        auto row = flat_index(d, out);
        m[row][col] = m[row][col] + c;
      }
    }
  }
  return m;
}

CycloMatrix hopf_degeneracy(const HopfData& h, int n, int i) {
  if (n < 1 || i < 0 || i > n) throw ParameterError("degeneracy index out of range");
  int d = h.dim();
  CycloMatrix m(pow_size(d, n), std::vector<Cyclo>(pow_size(d, n + 1), Cyclo::zero()));
  size_t cols = pow_size(d, n + 1);
  for (size_t col = 0; col < cols; ++col) {
    std::vector<int> t = unflatten(d, n + 1, col);
    std::vector<int> out(n);
    for (int s = 0; s < i; ++s) out[s] = t[s];
    for (int s = i + 1; s <= n; ++s) out[s - 1] = t[s];
    auto row = flat_index(d, out);
    m[row][col] = m[row][col] + h.counit(t[i]);
  }
  return m;
}

CycloMatrix hopf_tau(const HopfData& h, int n) {
  if (n < 1) throw ParameterError("cyclic operator needs n >= 1");
  if (!h.modular_involution_holds())
    throw ParameterError("modular pair is not in involution");
  int d = h.dim();
  CycloMatrix st = h.twisted_antipode();
  CycloMatrix m(pow_size(d, n), std::vector<Cyclo>(pow_size(d, n), Cyclo::zero()));
  size_t cols = pow_size(d, n);
  for (size_t col = 0; col < cols; ++col) {
    std::vector<int> t = unflatten(d, n, col);
    HopfData::Combo first;
    for (int r = 0; r < d; ++r)
      if (!st[r][t[0]].is_zero()) first.emplace_back(r, st[r][t[0]]);
    // shifted remainder h^2 (x) ... (x) h^n (x) sigma
    std::vector<HopfData::Combo> tail(n);
    for (int s = 0; s < n - 1; ++s) tail[s] = {{t[s + 1], Cyclo::one()}};
    for (int u = 0; u < d; ++u)
      if (!h.sigma()[u].is_zero()) tail[n - 1].emplace_back(u, h.sigma()[u]);
    for (const auto& [spread, c] : h.iterated_coproduct(first, n)) {
      std::vector<HopfData::Combo> slots(n);
      for (int s = 0; s < n; ++s)
        slots[s] = h.combo_product({{spread[s], Cyclo::one()}}, tail[s]);
      std::vector<int> out(n);
      std::function<void(int, const Cyclo&)> rec = [&](int s, const Cyclo& coeff) {
        if (s == n) {
          auto row = flat_index(d, out);
          m[row][col] = m[row][col] + coeff;
          return;
        }
        for (const auto& [b, e] : slots[s]) {
          out[s] = b;
          rec(s + 1, coeff * e);
        }
      };
      rec(0, c);
    }
  }
  return m;
}

CycloMatrix hopf_boundary(const HopfData& h, int n) {
  CycloMatrix b = hopf_face(h, n, 0);
  for (int i = 1; i <= n; ++i) {
    CycloMatrix f = hopf_face(h, n, i);
    for (size_t r = 0; r < b.size(); ++r)
      for (size_t c = 0; c < b[r].size(); ++c)
        b[r][c] = (i % 2 == 0) ? b[r][c] + f[r][c] : b[r][c] - f[r][c];
  }
  return b;
}

HopfAction::HopfAction(const HopfData& hopf_in, const FinAlgebra& alg_in,
                       std::vector<CycloMatrix> act_in,
                       std::vector<Cyclo> trace_in)
    : hopf(&hopf_in), alg(&alg_in), act(std::move(act_in)), trace(std::move(trace_in)) {
  int dh = hopf->dim(), da = alg->dim();
  if (static_cast<int>(act.size()) != dh || static_cast<int>(trace.size()) != da)
    throw ParameterError("action tensor shape mismatch");

  auto apply_basis = [&](int h, int x) {
    FinAlgebra::Combo out;
    for (int r = 0; r < da; ++r)
      if (!act[h][r][x].is_zero()) out.emplace_back(r, act[h][r][x]);
    return out;
  };

  // unit of H acts as the identity
  for (int x = 0; x < da; ++x) {
    FinAlgebra::Combo got;
    std::map<int, Cyclo> acc;
    for (int h = 0; h < dh; ++h) {
      if (hopf->unit()[h].is_zero()) continue;
      for (const auto& [r, c] : apply_basis(h, x))
        acc[r] = acc[r] + c * hopf->unit()[h];
    }
    for (auto& [r, c] : acc)
      if (!c.is_zero()) got.emplace_back(r, c);
    if (got != FinAlgebra::Combo{{x, Cyclo::one()}})
      throw ParameterError("unit of H must act as identity");
  }

  // algebra action: (hk)(x) = h(k(x))
  for (int h = 0; h < dh; ++h)
    for (int k = 0; k < dh; ++k)
      for (int x = 0; x < da; ++x) {
        std::map<int, Cyclo> lhs;
        for (const auto& [hk, c] : hopf->combo_product({{h, Cyclo::one()}},
                                                       {{k, Cyclo::one()}}))
          for (const auto& [r, e] : apply_basis(hk, x)) lhs[r] = lhs[r] + c * e;
        std::map<int, Cyclo> rhs;
        for (const auto& [m, c] : apply_basis(k, x))
          for (const auto& [r, e] : apply_basis(h, m)) rhs[r] = rhs[r] + c * e;
        for (int r = 0; r < da; ++r) {
          Cyclo a = lhs.count(r) ? lhs[r] : Cyclo::zero();
          Cyclo b = rhs.count(r) ? rhs[r] : Cyclo::zero();
          if (!(a == b)) throw ParameterError("action is not multiplicative in H");
        }
      }

  // module-algebra law h(xy) = sum h_(1)(x) h_(2)(y), and h(1) = counit(h) 1
  for (int h = 0; h < dh; ++h) {
    for (int x = 0; x < da; ++x)
      for (int y = 0; y < da; ++y) {
        FinAlgebra::Combo xy = alg->product(x, y);
        std::map<int, Cyclo> lhs;
        for (const auto& [m, c] : xy)
          for (const auto& [r, e] : apply_basis(h, m)) lhs[r] = lhs[r] + c * e;
        std::map<int, Cyclo> rhs;
        for (const auto& [h1, h2, c] : hopf->coprod()[h]) {
          FinAlgebra::Combo l = apply_basis(h1, x);
          FinAlgebra::Combo r2 = apply_basis(h2, y);
          for (const auto& [r, e] : alg->combo_product(l, r2))
            rhs[r] = rhs[r] + c * e;
        }
        for (int r = 0; r < da; ++r) {
          Cyclo a = lhs.count(r) ? lhs[r] : Cyclo::zero();
          Cyclo b = rhs.count(r) ? rhs[r] : Cyclo::zero();
          if (!(a == b)) throw ParameterError("module-algebra law fails");
        }
      }
    FinAlgebra::Combo unit_combo;
    for (int i = 0; i < da; ++i)
      if (!alg->unit()[i].is_zero()) unit_combo.emplace_back(i, alg->unit()[i]);
    std::map<int, Cyclo> on_unit;
    for (const auto& [m, c] : unit_combo)
      for (const auto& [r, e] : apply_basis(h, m)) on_unit[r] = on_unit[r] + c * e;
    for (int r = 0; r < da; ++r) {
      Cyclo a = on_unit.count(r) ? on_unit[r] : Cyclo::zero();
      if (!(a == hopf->counit(h) * alg->unit()[r]))
        throw ParameterError("action on the unit must be the counit");
    }
  }
}

FinAlgebra::Combo HopfAction::apply(const HopfData::Combo& h,
                                    const FinAlgebra::Combo& x) const {
  std::map<int, Cyclo> acc;
  for (const auto& [hi, ch] : h)
    for (const auto& [xi, cx] : x)
      for (int r = 0; r < alg->dim(); ++r) {
        const Cyclo& m = act[hi][r][xi];
        if (!m.is_zero()) acc[r] = acc[r] + ch * cx * m;
      }
  FinAlgebra::Combo out;
  for (auto& [r, c] : acc)
    if (!c.is_zero()) out.emplace_back(r, c);
  return out;
}

Cyclo HopfAction::trace_of(const FinAlgebra::Combo& x) const {
  Cyclo t = Cyclo::zero();
  for (const auto& [i, c] : x) t = t + trace[i] * c;
  return t;
}

void verify_sigma_trace(const HopfAction& a) {
  int da = a.alg->dim();
  HopfData::Combo sig;
  for (int i = 0; i < a.hopf->dim(); ++i)
    if (!a.hopf->sigma()[i].is_zero()) sig.emplace_back(i, a.hopf->sigma()[i]);
  for (int x = 0; x < da; ++x)
    for (int y = 0; y < da; ++y) {
      Cyclo lhs = a.trace_of(a.alg->product(x, y));
      FinAlgebra::Combo sx = a.apply(sig, {{x, Cyclo::one()}});
      Cyclo rhs = a.trace_of(
          a.alg->combo_product({{y, Cyclo::one()}}, sx));
      if (!(lhs == rhs))
        throw ParameterError("sigma-trace condition fails at (" +
                             a.alg->label(x) + ", " + a.alg->label(y) + ")");
    }
}

void verify_delta_invariance(const HopfAction& a) {
  int da = a.alg->dim(), dh = a.hopf->dim();
  CycloMatrix st = a.hopf->twisted_antipode();
  for (int h = 0; h < dh; ++h) {
    HopfData::Combo sth;
    for (int r = 0; r < dh; ++r)
      if (!st[r][h].is_zero()) sth.emplace_back(r, st[r][h]);
    for (int x = 0; x < da; ++x) {
      FinAlgebra::Combo hx = a.apply({{h, Cyclo::one()}}, {{x, Cyclo::one()}});
      for (int y = 0; y < da; ++y) {
        Cyclo lhs = a.trace_of(
            a.alg->combo_product(hx, {{y, Cyclo::one()}}));
        FinAlgebra::Combo sty = a.apply(sth, {{y, Cyclo::one()}});
        Cyclo rhs = a.trace_of(
            a.alg->combo_product({{x, Cyclo::one()}}, sty));
        if (!(lhs == rhs))
          throw ParameterError("delta-invariance fails at (" +
                               a.hopf->label(h) + ", " + a.alg->label(x) +
                               ", " + a.alg->label(y) + ")");
      }
    }
  }
}

Cochain characteristic_map(const HopfAction& a,
                           const std::map<std::vector<int>, Cyclo>& tensor,
                           int n) {
  if (n < 1) throw ParameterError("characteristic map needs degree >= 1");
  verify_sigma_trace(a);
  verify_delta_invariance(a);
  const FinAlgebra& alg = *a.alg;
  int da = alg.dim();
  Cochain out(alg, n);
  size_t total = out.entry_count();
  for (size_t idx = 0; idx < total; ++idx) {
    std::vector<int> t = unflatten(da, n + 1, idx);
    Cyclo acc = Cyclo::zero();
    for (const auto& [hs, c] : tensor) {
      if (static_cast<int>(hs.size()) != n)
        throw ParameterError("tensor arity mismatch");
      FinAlgebra::Combo prod = {{t[0], Cyclo::one()}};
      for (int s = 1; s <= n; ++s) {
        FinAlgebra::Combo acted =
            a.apply({{hs[s - 1], Cyclo::one()}}, {{t[s], Cyclo::one()}});
        prod = alg.combo_product(prod, acted);
      }
      acc = acc + c * a.trace_of(prod);
    }
    out.raw()[idx] = acc;
  }
  return out;
}

std::vector<std::vector<GaussRat>> gauss_kernel(
    std::vector<std::vector<GaussRat>> m) {
  if (m.empty()) return {};
  size_t rows = m.size(), cols = m[0].size();
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(m[r], m[sel]);
    GaussRat inv = m[r][c].inv();
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      GaussRat f = m[i][c];
      for (size_t j = c; j < cols; ++j)
        m[i][j] = m[i][j] - f * m[r][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<GaussRat>> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<GaussRat> v(cols, GaussRat{});
    v[free] = GaussRat(Rat(1));
    for (size_t p = 0; p < pivot_col.size(); ++p)
      v[pivot_col[p]] = -m[p][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace ncg
