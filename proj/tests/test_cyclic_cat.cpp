#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncg/cyclic_category.hpp"
#include "ncg/hopf_cyclic.hpp"

using namespace ncg;

namespace {

std::vector<std::vector<GaussRat>> to_scalar_matrix(const CycloMatrix& m) {
  std::vector<std::vector<GaussRat>> r(m.size());
  for (size_t i = 0; i < m.size(); ++i)
    for (const auto& c : m[i]) r[i].push_back(c.as_scalar());
  return r;
}

HopfData corrupted_z3() {
  // C[Z/3] with the antipode replaced by the identity map and a nontrivial
  // delta: passes no validation, used as a negative control
  int q = 3;
  std::vector<std::string> labels = {"g^0", "g^1", "g^2"};
  std::vector<std::vector<HopfData::Combo>> mult(q, std::vector<HopfData::Combo>(q));
  std::vector<Cyclo> unit(q, Cyclo::zero());
  std::vector<std::vector<HopfData::CoprodEntry>> coprod(q);
  std::vector<Cyclo> counit(q, Cyclo::one());
  CycloMatrix s(q, std::vector<Cyclo>(q, Cyclo::zero()));
  std::vector<Cyclo> sigma(q, Cyclo::zero());
  std::vector<Cyclo> delta(q);
  unit[0] = Cyclo::one();
  sigma[0] = Cyclo::one();
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) mult[a][b] = {{(a + b) % q, Cyclo::one()}};
    coprod[a] = {{a, a, Cyclo::one()}};
    s[a][a] = Cyclo::one();
    delta[a] = Cyclo::root_pow(q, a);
  }
  return HopfData(std::move(labels), std::move(mult), std::move(unit),
                  std::move(coprod), std::move(counit), std::move(s),
                  std::move(sigma), std::move(delta), /*validate=*/false);
}

}  // namespace

TEST_CASE("cyclic category arithmetic") {
  LambdaMorphism tau = LambdaMorphism::cyclic(1);
  CHECK(LambdaMorphism::compose(tau, tau) == LambdaMorphism::identity(1));

  // d1 d0 = d0 d0 out of the lowest object
  LambdaMorphism d0_low = LambdaMorphism::face(1, 0);
  LambdaMorphism lhs = LambdaMorphism::compose(LambdaMorphism::face(2, 1), d0_low);
  LambdaMorphism rhs = LambdaMorphism::compose(LambdaMorphism::face(2, 0), d0_low);
  CHECK(lhs == rhs);

  CHECK_THROWS_AS(
      LambdaMorphism::compose(LambdaMorphism::face(2, 0), LambdaMorphism::face(2, 0)),
      ParameterError);

  auto all11 = LambdaMorphism::all_morphisms(1, 1);
  CHECK(all11.size() == 6);
  int simplicial = 0;
  for (const auto& f : all11)
    if (f.is_simplicial()) ++simplicial;
  CHECK(simplicial == 3);
}

TEST_CASE("normal form is unique and reconstructs") {
  // every morphism up to degree 3 round-trips through its normal form
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n)
      for (const auto& f : LambdaMorphism::all_morphisms(m, n)) {
        auto nf = f.normal_form();
        CHECK(reconstruct(m, n, nf) == f);
        CHECK(nf.cyclic_power >= 0);
        CHECK(nf.cyclic_power <= m);
        for (size_t i = 1; i < nf.faces.size(); ++i)
          CHECK(nf.faces[i - 1] > nf.faces[i]);
        for (size_t i = 1; i < nf.degens.size(); ++i)
          CHECK(nf.degens[i - 1] < nf.degens[i]);
      }

  // tau itself: no faces, no degeneracies, one cyclic step
  auto nf = LambdaMorphism::cyclic(2).normal_form();
  CHECK(nf.faces.empty());
  CHECK(nf.degens.empty());
  CHECK(nf.cyclic_power == 1);
}

TEST_CASE("lambda module relations on cochains") {
  FinAlgebra m2 = FinAlgebra::matrix_algebra(2);
  auto reports = lambda_module_check(m2, 2);
  for (const auto& r : reports) {
    INFO(r.relation, " witness: ", r.witness);
    CHECK(r.pass);
  }

  FinAlgebra triv = FinAlgebra::cyclic_group_algebra(1);
  for (const auto& r : lambda_module_check(triv, 4)) {
    INFO(r.relation, " witness: ", r.witness);
    CHECK(r.pass);
  }

  CHECK_THROWS_AS(lambda_module_check(m2, 5), ParameterError);

  // wrap-free cyclic operator breaks t_n^{n+1} = 1
  auto broken = lambda_module_check(m2, 2, /*corrupt_tau=*/true);
  bool power_fails = false;
  for (const auto& r : broken)
    if (r.relation.rfind("cyclic power", 0) == 0 && !r.pass &&
        !r.witness.empty())
      power_fails = true;
  CHECK(power_fails);
}

TEST_CASE("hopf data validation") {
  HopfData h2 = HopfData::cyclic_group(2);
  CHECK(h2.dim() == 2);
  CHECK(h2.modular_involution_holds());

  // delta(sigma) != 1 is rejected at construction
  CHECK_THROWS_AS(HopfData::cyclic_group(3, 1, 1), ParameterError);

  // sigma = g^2 with delta(g) = -1 on C[Z/4] is a valid nontrivial pair
  HopfData h4 = HopfData::cyclic_group(4, 2, 2);
  CHECK(h4.modular_involution_holds());
  CHECK(h4.delta(1) == -Cyclo::one());

  HopfData bad = corrupted_z3();
  CHECK_FALSE(bad.modular_involution_holds());
  CHECK_THROWS_AS(hopf_tau(bad, 1), ParameterError);
}

TEST_CASE("twisted antipode") {
  HopfData h2 = HopfData::cyclic_group(2);
  // with delta = counit the twist is the plain antipode, the inverse map
  CycloMatrix st = h2.twisted_antipode();
  CHECK(cyclo_mat_equal(st, h2.antipode()));
  CHECK(st[1][1] == Cyclo::one());
  CHECK(st[0][0] == Cyclo::one());
  CHECK(st[0][1] == Cyclo::zero());

  // nontrivial delta scales the columns by the character
  HopfData h4 = HopfData::cyclic_group(4, 2, 2);
  CycloMatrix st4 = h4.twisted_antipode();
  for (int k = 0; k < 4; ++k) {
    Cyclo want = (k % 2 == 0) ? Cyclo::one() : -Cyclo::one();
    CHECK(st4[(4 - k) % 4][k] == want);
  }
}

TEST_CASE("hopf cyclic operators") {
  HopfData h2 = HopfData::cyclic_group(2);

  // tau_1 = twisted antipode times sigma; here it is the identity
  CycloMatrix t1 = hopf_tau(h2, 1);
  CHECK(t1[1][1] == Cyclo::one());
  CHECK(cyclo_mat_equal(cyclo_mat_mul(t1, t1), cyclo_identity(2)));

  // face 0 prepends the unit: H -> H tensor H
  CycloMatrix f0 = hopf_face(h2, 2, 0);
  for (int k = 0; k < 2; ++k)
    for (int r = 0; r < 4; ++r)
      CHECK(f0[r][k] == (r == k ? Cyclo::one() : Cyclo::zero()));

  // degeneracy 0 hits the first slot with the counit
  CycloMatrix s0 = hopf_degeneracy(h2, 1, 0);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      CHECK(s0[k][2 * j + k] == Cyclo::one());

  // tau_n^{n+1} = 1 for the involutive pairs, n <= 3
  for (int n = 1; n <= 3; ++n) {
    for (const HopfData& h : {HopfData::cyclic_group(2),
                              HopfData::cyclic_group(2, 1, 0),
                              HopfData::cyclic_group(3),
                              HopfData::cyclic_group(4, 2, 2)}) {
      CycloMatrix t = hopf_tau(h, n);
      CycloMatrix acc = t;
      for (int k = 0; k < n; ++k) acc = cyclo_mat_mul(acc, t);
      INFO("dim ", h.dim(), " n ", n);
      CHECK(cyclo_mat_equal(acc, cyclo_identity(acc.size())));
    }
  }
}

TEST_CASE("hopf boundary kernels") {
  HopfData h2 = HopfData::cyclic_group(2);

  // degree 1: b(x) = 1 (x) x - coproduct(x) + x (x) sigma has trivial kernel
  auto b1 = to_scalar_matrix(hopf_boundary(h2, 2));
  CHECK(gauss_kernel(b1).empty());

  // degree 2 kernel is spanned by 1 (x) 1 and 1 (x) g + g (x) 1 - g (x) g
  auto b2 = to_scalar_matrix(hopf_boundary(h2, 3));
  auto kernel = gauss_kernel(b2);
  CHECK(kernel.size() == 2);
  auto apply = [&](const std::vector<GaussRat>& v) {
    for (const auto& row : b2) {
      GaussRat acc{};
      for (size_t j = 0; j < v.size(); ++j) acc += row[j] * v[j];
      CHECK(acc.is_zero());
    }
  };
  for (const auto& v : kernel) apply(v);
  // the two named vectors really are cycles
  apply({GaussRat(Rat(1)), GaussRat{}, GaussRat{}, GaussRat{}});
  apply({GaussRat{}, GaussRat(Rat(1)), GaussRat(Rat(1)), -GaussRat(Rat(1))});

  // with sigma = g the degree-1 kernel is spanned by 1 - g
  HopfData h2s = HopfData::cyclic_group(2, 1, 0);
  auto b1s = to_scalar_matrix(hopf_boundary(h2s, 2));
  auto k1 = gauss_kernel(b1s);
  REQUIRE(k1.size() == 1);
  CHECK(k1[0][0] == -k1[0][1]);
  CHECK(!k1[0][0].is_zero());
}

TEST_CASE("translation action and characteristic map") {
  HopfData h2 = HopfData::cyclic_group(2);
  FinAlgebra fun = FinAlgebra::functions_on_cyclic_group(2);

  // g moves the point mass to the translated point
  std::vector<CycloMatrix> act(2, cyclo_identity(2));
  act[1] = {{Cyclo::zero(), Cyclo::one()}, {Cyclo::one(), Cyclo::zero()}};
  std::vector<Cyclo> tau = {Cyclo::one(), Cyclo::one()};
  HopfAction action(h2, fun, act, tau);

  verify_sigma_trace(action);
  verify_delta_invariance(action);

  // gamma(g)(x0, x1) = sum_u x0(u) x1(u g)
  std::map<std::vector<int>, Cyclo> hg = {{{1}, Cyclo::one()}};
  Cochain gamma_g = characteristic_map(action, hg, 1);
  CHECK(gamma_g.at({0, 1}) == Cyclo::one());
  CHECK(gamma_g.at({1, 0}) == Cyclo::one());
  CHECK(gamma_g.at({0, 0}) == Cyclo::zero());

  // gamma(1)(x0, x1) = tau(x0 x1)
  std::map<std::vector<int>, Cyclo> h1 = {{{0}, Cyclo::one()}};
  Cochain gamma_1 = characteristic_map(action, h1, 1);
  CHECK(gamma_1.at({0, 0}) == Cyclo::one());
  CHECK(gamma_1.at({0, 1}) == Cyclo::zero());

  // a lopsided weight breaks the invariance and is reported with its triple
  std::vector<Cyclo> lopsided = {Cyclo::one(),
                                 Cyclo::one() + Cyclo::one()};
  HopfAction skewed(h2, fun, act, lopsided);
  CHECK_THROWS_WITH_AS(verify_delta_invariance(skewed),
                       doctest::Contains("delta-invariance fails"),
                       ParameterError);
  CHECK_THROWS_AS(characteristic_map(skewed, hg, 1), ParameterError);

  // sum trace does not satisfy the sigma-twist when sigma = g
  HopfData h2s = HopfData::cyclic_group(2, 1, 0);
  HopfAction twisted(h2s, fun, act, tau);
  CHECK_THROWS_WITH_AS(verify_sigma_trace(twisted),
                       doctest::Contains("sigma-trace condition fails"),
                       ParameterError);
}

TEST_CASE("characteristic map sends cocycles to cyclic cocycles") {
  // sigma = g on C[Z/2], acting on M2 by conjugation by diag(1, -1), with
  // the twisted trace x -> Tr(u x)
  HopfData h2s = HopfData::cyclic_group(2, 1, 0);
  FinAlgebra m2 = FinAlgebra::matrix_algebra(2);

  std::vector<CycloMatrix> act(2, cyclo_identity(4));
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      if ((r + c) % 2 == 1) act[1][r * 2 + c][r * 2 + c] = -Cyclo::one();
  std::vector<Cyclo> tau = {Cyclo::one(), Cyclo::zero(), Cyclo::zero(),
                            -Cyclo::one()};
  HopfAction action(h2s, m2, act, tau);

  verify_sigma_trace(action);
  verify_delta_invariance(action);

  auto kernel = gauss_kernel(to_scalar_matrix(hopf_boundary(h2s, 2)));
  REQUIRE(kernel.size() == 1);
  std::map<std::vector<int>, Cyclo> tensor;
  for (int i = 0; i < 2; ++i)
    if (!kernel[0][i].is_zero()) tensor[{i}] = Cyclo(kernel[0][i]);

  Cochain gamma = characteristic_map(action, tensor, 1);
  CHECK_FALSE(gamma.is_zero());
  CHECK(hochschild_b(gamma).is_zero());
  CHECK(is_cyclic(gamma));
}
