#include "ncg/cyclic_category.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ncg {

namespace {

// evaluate the quasi-periodic extension at any integer
int extend(const std::vector<int>& window, int m, int n, long long i) {
  long long period = m + 1;
  long long q = i >= 0 ? i / period : -((-i + period - 1) / period);
  long long r = i - q * period;
  return window[static_cast<size_t>(r)] + static_cast<int>(q) * (n + 1);
}

}  // namespace

LambdaMorphism::LambdaMorphism(int source, int target, std::vector<int> window)
    : m_(source), n_(target), f_(std::move(window)) {
  if (m_ < 0 || n_ < 0) throw ParameterError("object degrees must be nonnegative");
  if (static_cast<int>(f_.size()) != m_ + 1)
    throw ParameterError("window size must be source degree + 1");
  for (int i = 0; i < m_; ++i)
    if (f_[i] > f_[i + 1]) throw ParameterError("window must be nondecreasing");
  if (f_[m_] > f_[0] + n_ + 1)
    throw ParameterError("window exceeds one fundamental period");
  // translate so that 0 <= F(0) <= n
  int shift = f_[0] >= 0 ? f_[0] / (n_ + 1) : -((-f_[0] + n_) / (n_ + 1));
  for (auto& v : f_) v -= shift * (n_ + 1);
}

LambdaMorphism LambdaMorphism::identity(int n) {
  std::vector<int> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = i;
  return LambdaMorphism(n, n, std::move(w));
}

LambdaMorphism LambdaMorphism::face(int n, int i) {
  if (n < 1 || i < 0 || i > n) throw ParameterError("face index out of range");
  std::vector<int> w(n);
  for (int j = 0; j < n; ++j) w[j] = j < i ? j : j + 1;
  return LambdaMorphism(n - 1, n, std::move(w));
}

LambdaMorphism LambdaMorphism::degeneracy(int n, int j) {
  if (n < 0 || j < 0 || j > n) throw ParameterError("degeneracy index out of range");
  std::vector<int> w(n + 2);
  for (int i = 0; i <= n + 1; ++i) w[i] = i <= j ? i : i - 1;
  return LambdaMorphism(n + 1, n, std::move(w));
}

LambdaMorphism LambdaMorphism::cyclic(int n) {
  std::vector<int> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = i - 1;
  return LambdaMorphism(n, n, std::move(w));
}

LambdaMorphism LambdaMorphism::compose(const LambdaMorphism& g,
                                       const LambdaMorphism& f) {
  if (f.n_ != g.m_)
    throw ParameterError("composition type mismatch: target " +
                         std::to_string(f.n_) + " vs source " +
                         std::to_string(g.m_));
  std::vector<int> w(f.m_ + 1);
  for (int i = 0; i <= f.m_; ++i) w[i] = extend(g.f_, g.m_, g.n_, f.f_[i]);
  return LambdaMorphism(f.m_, g.n_, std::move(w));
}

LambdaMorphism LambdaMorphism::pow(int k) const {
  if (m_ != n_) throw ParameterError("powers need an endomorphism");
  if (k < 0) throw ParameterError("negative power");
  LambdaMorphism acc = identity(n_);
  for (int i = 0; i < k; ++i) acc = compose(*this, acc);
  return acc;
}

bool LambdaMorphism::operator==(const LambdaMorphism& o) const {
  return m_ == o.m_ && n_ == o.n_ && f_ == o.f_;
}

bool LambdaMorphism::is_simplicial() const { return f_[m_] <= n_; }

LambdaMorphism::NormalForm LambdaMorphism::normal_form() const {
  // peel the cyclic power on the source: exactly one k makes the remainder
  // land inside a single period
  int k_found = -1;
  LambdaMorphism simp = *this;
  for (int k = 0; k <= m_; ++k) {
    LambdaMorphism tau_inv = cyclic(m_).pow((m_ + 1 - k) % (m_ + 1));
    LambdaMorphism cand = compose(*this, tau_inv);
    if (cand.is_simplicial()) {
      if (k_found >= 0)
        throw std::logic_error("cyclic power in normal form is not unique");
      k_found = k;
      simp = cand;
    }
  }
  if (k_found < 0)
    throw std::logic_error("no simplicial representative found");

  NormalForm nf;
  nf.cyclic_power = k_found;
  std::vector<bool> hit(n_ + 1, false);
  for (int i = 0; i <= m_; ++i) hit[simp.f_[i]] = true;
  for (int v = n_; v >= 0; --v)
    if (!hit[v]) nf.faces.push_back(v);
  for (int i = 0; i < m_; ++i)
    if (simp.f_[i] == simp.f_[i + 1]) nf.degens.push_back(i);

  LambdaMorphism rebuilt = reconstruct(m_, n_, nf);
  if (!(rebuilt == *this))
    throw std::logic_error("normal form reconstruction mismatch");
  return nf;
}

LambdaMorphism reconstruct(int m, int n, const LambdaMorphism::NormalForm& nf) {
  LambdaMorphism cur = LambdaMorphism::cyclic(m).pow(nf.cyclic_power);
  for (auto it = nf.degens.rbegin(); it != nf.degens.rend(); ++it)
    cur = LambdaMorphism::compose(
        LambdaMorphism::degeneracy(cur.target() - 1, *it), cur);
  for (auto it = nf.faces.rbegin(); it != nf.faces.rend(); ++it)
    cur = LambdaMorphism::compose(LambdaMorphism::face(cur.target() + 1, *it),
                                  cur);
  if (cur.target() != n) throw std::logic_error("normal form degree mismatch");
  return cur;
}

std::vector<LambdaMorphism> LambdaMorphism::all_morphisms(int m, int n) {
  std::vector<LambdaMorphism> out;
  std::vector<int> w(m + 1);
  std::function<void(int)> rec = [&](int i) {
    if (i == m + 1) {
      if (w[m] <= w[0] + n + 1) out.emplace_back(m, n, w);
      return;
    }
    int lo = i == 0 ? 0 : w[i - 1];
    int hi = i == 0 ? n : w[0] + n + 1;
    for (int v = lo; v <= hi; ++v) {
      w[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::string LambdaMorphism::to_string() const {
  std::ostringstream os;
  os << "[" << m_ << "]->[" << n_ << "]:(";
  for (int i = 0; i <= m_; ++i) os << (i ? "," : "") << f_[i];
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

Expansion op_expansion(const FinAlgebra& alg, const LambdaOp& op,
                       const std::vector<int>& tuple) {
  int n = op.target_deg;
  if (static_cast<int>(tuple.size()) != n + 1)
    throw ParameterError("expansion tuple arity mismatch");
  Expansion out;
  auto add = [&out](const std::vector<int>& src, const Cyclo& c) {
    auto it = out.find(src);
    if (it == out.end())
      out.emplace(src, c);
    else
      it->second = it->second + c;
  };
  switch (op.kind) {
    case LambdaOp::FACE: {
      int i = op.index;
      std::vector<int> src(n);
      if (i < n) {
        for (int s = 0; s < i; ++s) src[s] = tuple[s];
        for (int s = i + 1; s < n; ++s) src[s] = tuple[s + 1];
        for (const auto& [k, c] : alg.product(tuple[i], tuple[i + 1])) {
          src[i] = k;
          add(src, c);
        }
      } else {
        for (int s = 1; s < n; ++s) src[s] = tuple[s];
        for (const auto& [k, c] : alg.product(tuple[n], tuple[0])) {
          src[0] = k;
          add(src, c);
        }
      }
      break;
    }
    case LambdaOp::DEGEN: {
      int j = op.index;
      std::vector<int> src(n + 2);
      for (int s = 0; s <= j; ++s) src[s] = tuple[s];
      for (int s = j + 1; s <= n; ++s) src[s + 1] = tuple[s];
      for (int u = 0; u < alg.dim(); ++u)
        if (!alg.unit()[u].is_zero()) {
          src[j + 1] = u;
          add(src, alg.unit()[u]);
        }
      break;
    }
    case LambdaOp::TAU: {
      std::vector<int> src(n + 1);
      src[0] = tuple[n];
      for (int s = 1; s <= n; ++s) src[s] = tuple[s - 1];
      add(src, Cyclo::one());
      break;
    }
    case LambdaOp::TAU_NO_WRAP: {
      // corrupted cyclic operator: pushes the unit in front and drops the
      // last argument instead of wrapping it around
      std::vector<int> src(n + 1);
      for (int s = 1; s <= n; ++s) src[s] = tuple[s - 1];
      for (int u = 0; u < alg.dim(); ++u)
        if (!alg.unit()[u].is_zero()) {
          src[0] = u;
          add(src, alg.unit()[u]);
        }
      break;
    }
  }
  return out;
}

Expansion word_expansion(const FinAlgebra& alg, const std::vector<LambdaOp>& word,
                         const std::vector<int>& tuple) {
  Expansion cur;
  cur.emplace(tuple, Cyclo::one());
  // word[0] is the outermost operator; pull the functional back through it
  for (const auto& op : word) {
    Expansion next;
    for (const auto& [t, c] : cur) {
      for (const auto& [s, e] : op_expansion(alg, op, t)) {
        auto it = next.find(s);
        if (it == next.end())
          next.emplace(s, c * e);
        else
          it->second = it->second + c * e;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

bool words_agree(const FinAlgebra& alg, const std::vector<LambdaOp>& lhs,
                 const std::vector<LambdaOp>& rhs, int out_degree) {
  int d = alg.dim();
  size_t total = 1;
  for (int i = 0; i <= out_degree; ++i) total *= static_cast<size_t>(d);
  std::vector<int> tuple(out_degree + 1);
  for (size_t idx = 0; idx < total; ++idx) {
    size_t rem = idx;
    for (int j = out_degree; j >= 0; --j) {
      tuple[j] = static_cast<int>(rem % d);
      rem /= d;
    }
    Expansion a = word_expansion(alg, lhs, tuple);
    Expansion b = word_expansion(alg, rhs, tuple);
    for (auto it = a.begin(); it != a.end();)
      it = it->second.is_zero() ? a.erase(it) : std::next(it);
    for (auto it = b.begin(); it != b.end();)
      it = it->second.is_zero() ? b.erase(it) : std::next(it);
    if (a != b) return false;
  }
  return true;
}

Cochain apply_lambda_op(const LambdaOp& op, const Cochain& phi) {
  const FinAlgebra& alg = phi.algebra();
  int n = op.target_deg;
  int expected_src = 0;
  switch (op.kind) {
    case LambdaOp::FACE: expected_src = n - 1; break;
    case LambdaOp::DEGEN: expected_src = n + 1; break;
    default: expected_src = n; break;
  }
  if (phi.degree() != expected_src)
    throw ParameterError("operator degree mismatch");
  Cochain out(alg, n);
  int d = alg.dim();
  size_t total = out.entry_count();
  std::vector<int> tuple(n + 1);
  for (size_t idx = 0; idx < total; ++idx) {
    size_t rem = idx;
    for (int j = n; j >= 0; --j) {
      tuple[j] = static_cast<int>(rem % d);
      rem /= d;
    }
    Cyclo acc = Cyclo::zero();
    for (const auto& [s, c] : op_expansion(alg, op, tuple))
      acc = acc + c * phi.at(s);
    out.raw()[idx] = acc;
  }
  return out;
}

std::vector<RelationReport> lambda_module_check(const FinAlgebra& alg, int n_max,
                                                bool corrupt_tau) {
  if (n_max < 1 || n_max > 4)
    throw ParameterError("degree cap must be between 1 and 4");
  std::vector<RelationReport> reports;
  auto tau_kind = corrupt_tau ? LambdaOp::TAU_NO_WRAP : LambdaOp::TAU;

  auto run = [&](const std::string& name, auto&& gen) {
    RelationReport rep{name, true, ""};
    gen(rep);
    reports.push_back(rep);
  };
  auto check = [&](RelationReport& rep, const std::vector<LambdaOp>& lhs,
                   const std::vector<LambdaOp>& rhs, int deg,
                   const std::string& label) {
    if (!rep.pass) return;
    if (!words_agree(alg, lhs, rhs, deg)) {
      rep.pass = false;
      rep.witness = label;
    }
  };

  run("faces: d_j d_i = d_i d_{j-1} (i<j)", [&](RelationReport& rep) {
    for (int n = 1; n + 1 <= n_max; ++n)
      for (int j = 1; j <= n + 1; ++j)
        for (int i = 0; i < j && i <= n; ++i)
          check(rep,
                {{LambdaOp::FACE, j, n + 1}, {LambdaOp::FACE, i, n}},
                {{LambdaOp::FACE, i, n + 1}, {LambdaOp::FACE, j - 1, n}}, n + 1,
                "n=" + std::to_string(n) + " i=" + std::to_string(i) +
                    " j=" + std::to_string(j));
  });

  run("degeneracies: s_j s_i = s_i s_{j+1} (i<=j)", [&](RelationReport& rep) {
    for (int n = 0; n + 2 <= n_max; ++n)
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= j; ++i)
          check(rep,
                {{LambdaOp::DEGEN, j, n}, {LambdaOp::DEGEN, i, n + 1}},
                {{LambdaOp::DEGEN, i, n}, {LambdaOp::DEGEN, j + 1, n + 1}}, n,
                "n=" + std::to_string(n) + " i=" + std::to_string(i) +
                    " j=" + std::to_string(j));
  });

  run("mixed: s_j d_i cases", [&](RelationReport& rep) {
    for (int n = 0; n + 1 <= n_max; ++n)
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n + 1; ++i) {
          std::vector<LambdaOp> lhs = {{LambdaOp::DEGEN, j, n},
                                       {LambdaOp::FACE, i, n + 1}};
          std::string label = "n=" + std::to_string(n) +
                              " i=" + std::to_string(i) +
                              " j=" + std::to_string(j);
          if (i < j)
            check(rep, lhs,
                  {{LambdaOp::FACE, i, n}, {LambdaOp::DEGEN, j - 1, n - 1}}, n,
                  label);
          else if (i == j || i == j + 1)
            check(rep, lhs, {}, n, label);
          else if (n >= 1)
            check(rep, lhs,
                  {{LambdaOp::FACE, i - 1, n}, {LambdaOp::DEGEN, j, n - 1}}, n,
                  label);
        }
  });

  run("cyclic-face: t_n d_i = d_{i-1} t_{n-1}, t_n d_0 = d_n",
      [&](RelationReport& rep) {
        for (int n = 1; n <= n_max; ++n) {
          check(rep, {{tau_kind, 0, n}, {LambdaOp::FACE, 0, n}},
                {{LambdaOp::FACE, n, n}}, n, "n=" + std::to_string(n) + " i=0");
          for (int i = 1; i <= n; ++i)
            check(rep, {{tau_kind, 0, n}, {LambdaOp::FACE, i, n}},
                  {{LambdaOp::FACE, i - 1, n}, {tau_kind, 0, n - 1}}, n,
                  "n=" + std::to_string(n) + " i=" + std::to_string(i));
        }
      });

  run("cyclic-degeneracy: t_n s_i = s_{i-1} t_{n+1}, t_n s_0 = s_n t_{n+1}^2",
      [&](RelationReport& rep) {
        for (int n = 0; n + 1 <= n_max; ++n) {
          check(rep, {{tau_kind, 0, n}, {LambdaOp::DEGEN, 0, n}},
                {{LambdaOp::DEGEN, n, n},
                 {tau_kind, 0, n + 1},
                 {tau_kind, 0, n + 1}},
                n, "n=" + std::to_string(n) + " i=0");
          for (int i = 1; i <= n; ++i)
            check(rep, {{tau_kind, 0, n}, {LambdaOp::DEGEN, i, n}},
                  {{LambdaOp::DEGEN, i - 1, n}, {tau_kind, 0, n + 1}}, n,
                  "n=" + std::to_string(n) + " i=" + std::to_string(i));
        }
      });

  run("cyclic power: t_n^{n+1} = 1", [&](RelationReport& rep) {
    for (int n = 0; n <= n_max; ++n) {
      std::vector<LambdaOp> lhs(n + 1, {tau_kind, 0, n});
      check(rep, lhs, {}, n, "n=" + std::to_string(n));
    }
  });

  return reports;
}

}  // namespace ncg
