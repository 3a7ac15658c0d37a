#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncg/torus_element.hpp"
#include "ncg/twisted_poly.hpp"

#include <Eigen/Dense>

#include <random>

using namespace ncg;

namespace {

// Independent oracle: the q-dimensional clock-and-shift representation.
// U -> cyclic shift, V -> diag(lambda^j) satisfies V U = lambda U V, and two
// torus elements with exponents confined to one period agree iff their
// images agree, so it decides every finite phase identity used below.
Eigen::MatrixXcd rep_matrix(const TorusElement& x) {
  long long q = x.phase().q();
  Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(q, q);
  Eigen::MatrixXcd clock = Eigen::MatrixXcd::Zero(q, q);
  for (long long j = 0; j < q; ++j) {
    shift((j + 1) % q, j) = 1.0;
    clock(j, j) = x.phase().lambda_pow_f(j);
  }
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(q, q);
  auto mat_pow = [&](const Eigen::MatrixXcd& m, long long e) {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(q, q);
    Eigen::MatrixXcd base = e < 0 ? m.inverse().eval() : m;
    for (long long k = 0; k < (e < 0 ? -e : e); ++k) r = r * base;
    return r;
  };
  for (auto& [nm, c] : x.coeffs())
    acc += c.to_complex() * (mat_pow(shift, nm.first) * mat_pow(clock, nm.second));
  return acc;
}

bool rep_equal(const TorusElement& a, const TorusElement& b) {
  if (a.pi_power() != b.pi_power() && !a.is_zero() && !b.is_zero()) return false;
  return (rep_matrix(a) - rep_matrix(b)).cwiseAbs().maxCoeff() < 1e-10;
}

TorusElement mono(const Phase& ph, long long n, long long m) {
  return TorusElement::monomial(ph, n, m, Cyclo::one());
}

TorusElement random_element(const Phase& ph, std::mt19937& rng, int terms = 4) {
  std::uniform_int_distribution<long long> exp_dist(-3, 3);
  std::uniform_int_distribution<long long> coef_dist(-5, 5);
  TorusElement x(ph);
  for (int t = 0; t < terms; ++t) {
    GaussRat c(rat(coef_dist(rng)), rat(coef_dist(rng)));
    x = x + TorusElement::monomial(ph, exp_dist(rng), exp_dist(rng), Cyclo(c));
  }
  return x;
}

Word random_word(const GeneratorSpec& spec, std::mt19937& rng, int max_len = 8) {
  std::uniform_int_distribution<int> len_dist(0, max_len);
  std::uniform_int_distribution<int> gen_dist(0, spec.generator_count() - 1);
  Word w(len_dist(rng));
  for (int& g : w) g = gen_dist(rng);
  return w;
}

}  // namespace

TEST_CASE("cyclotomic ring canonical forms") {
  // zeta_4^2 = -1
  CHECK(Cyclo::root_pow(4, 2) == Cyclo(GaussRat(rat(-1))));
  // 1 + zeta_3 + zeta_3^2 = 0
  Cyclo s3 = Cyclo::root_pow(3, 0) + Cyclo::root_pow(3, 1) + Cyclo::root_pow(3, 2);
  CHECK(s3.is_zero());
  // full root sum vanishes for q = 7
  Cyclo s7 = Cyclo::zero(7);
  for (int k = 0; k < 7; ++k) s7 += Cyclo::root_pow(7, k);
  CHECK(s7.is_zero());
  // conjugation inverts the root
  CHECK(Cyclo::root_pow(5, 2).conj() == Cyclo::root_pow(5, 3));
  // mixed orders: zeta_2 = -1 also inside the order-6 ring
  CHECK(Cyclo::root_pow(2, 1) * Cyclo::root_pow(6, 1) == -Cyclo::root_pow(6, 1));
  // numerical embedding
  auto z = Cyclo::root_pow(8, 1).to_complex();
  CHECK(std::abs(z - std::polar(1.0, 3.14159265358979323846 / 4)) < 1e-14);
  // non-scalar elements refuse as_scalar
  CHECK_THROWS_AS((void)Cyclo::root_pow(8, 1).as_scalar(), std::domain_error);
}

TEST_CASE("rational literal round trip") {
  CHECK(rat_from_string("-7/21") == rat(-1, 3));
  CHECK(rat_to_string(rat(10, 4)) == "5/2");
  CHECK(rat_to_string(rat(-3)) == "-3");
  CHECK_THROWS_AS(rat_from_string("x/2"), std::invalid_argument);
}

TEST_CASE("torus multiplication phases") {
  Phase ph = Phase::rational(1, 5);
  TorusElement U = mono(ph, 1, 0), V = mono(ph, 0, 1);

  CHECK((V * U).coeff(1, 1) == ph.lambda_pow(1));
  CHECK((V * U) == (U * V).scaled(ph.lambda_pow(1)));

  // (U V)(U V) = lambda U^2 V^2
  TorusElement UV = U * V;
  CHECK((UV * UV) == TorusElement::monomial(ph, 2, 2, ph.lambda_pow(1)));

  // general exponents against the matrix oracle
  std::mt19937 rng(11);
  std::uniform_int_distribution<long long> d(-4, 4);
  for (int trial = 0; trial < 25; ++trial) {
    long long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    TorusElement lhs = mono(ph, a, b) * mono(ph, c, e);
    TorusElement rhs = TorusElement::monomial(ph, a + c, b + e, ph.lambda_pow(b * c));
    CHECK(lhs == rhs);
    CHECK(rep_equal(lhs, rhs));
  }

  // mismatched deformation parameters refuse to combine
  Phase other = Phase::rational(2, 5);
  CHECK_THROWS_AS((void)(U * mono(other, 1, 0)), ParameterError);
  CHECK_THROWS_AS((void)(U + mono(other, 1, 0)), ParameterError);
}

TEST_CASE("torus multiplication is associative") {
  Phase ph = Phase::rational(2, 7);
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    TorusElement x = random_element(ph, rng), y = random_element(ph, rng),
                 z = random_element(ph, rng);
    CHECK(((x * y) * z) == (x * (y * z)));
  }
}

TEST_CASE("torus star") {
  Phase ph = Phase::rational(1, 5);
  TorusElement U = mono(ph, 1, 0), V = mono(ph, 0, 1);

  // (U V)* = lambda U^{-1} V^{-1}
  CHECK((U * V).star() == TorusElement::monomial(ph, -1, -1, ph.lambda_pow(1)));

  std::mt19937 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    TorusElement x = random_element(ph, rng), y = random_element(ph, rng);
    CHECK(x.star().star() == x);              // involutive
    CHECK((x * y).star() == y.star() * x.star());  // anti-multiplicative
    // conjugate linearity
    Cyclo c = Cyclo(GaussRat(rat(2), rat(3)));
    CHECK(x.scaled(c).star() == x.star().scaled(c.conj()));
  }
}

TEST_CASE("torus trace") {
  Phase ph = Phase::rational(3, 7);
  TorusElement x = mono(ph, 0, 0).scaled(Cyclo(GaussRat(rat(5)))) + mono(ph, 2, 1);
  CHECK(torus_trace(x) == Cyclo(GaussRat(rat(5))));

  // tracial: tau(x y) = tau(y x)
  std::mt19937 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    TorusElement a = random_element(ph, rng), b = random_element(ph, rng);
    CHECK(torus_trace(a * b) == torus_trace(b * a));
  }

  // positivity on x* x: the constant coefficient is a nonnegative rational
  TorusElement a = random_element(ph, rng);
  GaussRat g = torus_trace(a.star() * a).as_scalar();
  CHECK(g.im == 0);
  CHECK(g.re >= 0);
}

TEST_CASE("derivations satisfy the product rule and raise the 2*pi*i tag") {
  Phase ph = Phase::rational(1, 4);
  TorusElement U = mono(ph, 1, 0);
  TorusElement dU = U.derive(1);
  CHECK(dU.pi_power() == 1);
  CHECK(dU.coeff(1, 0) == Cyclo::one());
  CHECK(U.derive(2).is_zero());

  std::mt19937 rng(53);
  for (int dir : {1, 2}) {
    for (int trial = 0; trial < 8; ++trial) {
      TorusElement x = random_element(ph, rng), y = random_element(ph, rng);
      CHECK((x * y).derive(dir) == x.derive(dir) * y + x * y.derive(dir));
      CHECK(x.derive(dir).star() == x.star().derive(dir));
    }
  }

  // mixing different 2*pi*i powers in a sum is rejected
  CHECK_THROWS_AS((void)(U + U.derive(1)), ParameterError);
  CHECK(U.derive(1).derive(2).pi_power() == 2);
}

TEST_CASE("normal form of twisted words") {
  GeneratorSpec sp = sphere_presentation(Phase::rational(1, 5));

  // b a -> lambda^{-1} a b
  TwistedPoly ba = poly_normal_form(sp, "b a");
  CHECK(ba == parse_poly(sp, "l^-1 a b"));

  // the center passes through: t a -> a t
  Word w{sp.find("t"), sp.find("a")};
  auto [nf, k] = sp.normal_order(w);
  CHECK(nf == Word{sp.find("a"), sp.find("t")});
  CHECK(k == 0);

  // b a b -> lambda^{-1} a b^2
  CHECK(poly_normal_form(sp, "b a b") == parse_poly(sp, "l^-1 a b^2"));

  // idempotent: normalizing a normal word changes nothing
  auto [nf2, k2] = sp.normal_order(nf);
  CHECK(nf2 == nf);
  CHECK(k2 == 0);

  CHECK_THROWS_AS(poly_normal_form(sp, "b c"), ParseError);
  CHECK_THROWS_AS(parse_poly(sp, ""), ParseError);
}

TEST_CASE("polynomial reduction modulo the radius relation") {
  GeneratorSpec sp = sphere_presentation(Phase::rational(1, 5));

  CHECK(poly_reduce(parse_poly(sp, "a a* + b b* + t^2 - t")).is_zero());
  CHECK(poly_reduce(parse_poly(sp, "a a* b - b a a*")).is_zero());

  // reduction is idempotent
  TwistedPoly p = poly_reduce(parse_poly(sp, "t^4 b a"));
  CHECK(poly_reduce(p) == p);

  // an exhausted step budget raises the dedicated error
  CHECK_THROWS_AS((void)parse_poly(sp, "t^16").reduced(nullptr, 3), ReductionBudgetError);
}

TEST_CASE("reduction reaches one normal form under randomized rule order") {
  GeneratorSpec sp = sphere_presentation(Phase::rational(2, 7));
  std::mt19937 word_rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    TwistedPoly p = TwistedPoly::monomial(sp, random_word(sp, word_rng));
    TwistedPoly base = p.reduced();
    for (unsigned seed : {1u, 2u, 3u}) {
      std::mt19937 rng(seed * 1000 + trial);
      CHECK(p.reduced(&rng) == base);
    }
  }
}

TEST_CASE("non-confluent relations are rejected at construction") {
  GeneratorSpec sp(Phase::rational(0, 1));
  int x = sp.add_generator("x");
  int y = sp.add_generator("y");
  sp.add_relation({x, x}, {{{y}, Cyclo::one()}});
  sp.add_relation({x, y}, {{{x}, Cyclo::one()}});
  // x x y reduces to y^2 one way and to y the other
  CHECK_THROWS_AS(sp.finalize(), ConfluenceError);
}

TEST_CASE("lambda = 1 degenerates to the commutative algebra") {
  Phase ph = Phase::rational(0, 1);
  std::mt19937 rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    TorusElement x = random_element(ph, rng), y = random_element(ph, rng);
    CHECK(x * y == y * x);
  }
  GeneratorSpec sp = sphere_presentation(ph);
  for (int trial = 0; trial < 10; ++trial) {
    TwistedPoly p = TwistedPoly::monomial(sp, random_word(sp, rng, 5));
    TwistedPoly q = TwistedPoly::monomial(sp, random_word(sp, rng, 5));
    CHECK((p * q).reduced() == (q * p).reduced());
  }
}

TEST_CASE("phase arithmetic is exact modulo q") {
  Phase ph = Phase::rational(3, 8);
  CHECK(ph.lambda_pow(8) == Cyclo::one());
  CHECK(ph.lambda_pow(5) * ph.lambda_pow(6) == ph.lambda_pow(11));
  CHECK(ph.lambda_pow(-1) == ph.lambda_pow(7));
  // theta reduction: 6/10 is stored as 3/5
  Phase r = Phase::rational(6, 10);
  CHECK(r.p() == 3);
  CHECK(r.q() == 5);
  CHECK_THROWS_AS(Phase::rational(1, 0), std::invalid_argument);
}

TEST_CASE("expression parsing and serialization round trip") {
  GeneratorSpec sp = sphere_presentation(Phase::rational(1, 5));
  TwistedPoly p = parse_poly(sp, "a b* t^2 - (1/2) b a + 3 i t");

  nlohmann::json j = poly_to_json(p);
  // the b a term was normalized, so its key is the ordered word
  CHECK(j.contains("a b"));
  TwistedPoly q = poly_from_json(sp, j);
  CHECK(p == q);

  // coefficients serialize exactly
  TwistedPoly third = parse_poly(sp, "1/3 t");
  nlohmann::json j3 = poly_to_json(third);
  CHECK(j3["t"][0].get<std::string>() == "1/3");
  CHECK(poly_from_json(sp, j3) == third);

  CHECK_THROWS_AS(poly_from_json(sp, nlohmann::json::array()), ParseError);
}

TEST_CASE("float backend for irrational deformation") {
  Phase ph = Phase::irrational(0.7071067811865476);
  TorusElementF U = TorusElementF::monomial(ph, 1, 0, {1.0, 0.0});
  TorusElementF V = TorusElementF::monomial(ph, 0, 1, {1.0, 0.0});

  auto lam = ph.lambda_pow_f(1);
  auto vu = (V * U).coeff(1, 1);
  CHECK(std::abs(vu - lam) < 1e-15);

  // star is involutive
  TorusElementF x = U * V + V.scaled({0.25, -1.0});
  auto back = x.star().star();
  for (auto& [k, c] : x.coeffs())
    CHECK(std::abs(back.coeff(k.first, k.second) - c) < 1e-12);
}

TEST_CASE("reversed generator order yields the same closed evaluations") {
  Phase ph = Phase::rational(1, 5);
  GeneratorSpec fwd = sphere_presentation(ph);
  GeneratorSpec rev = sphere_presentation_reversed(ph);

  // star and product identities hold in both presentations
  for (const char* expr : {"a a* + b b* + t^2 - t", "a b - l b a", "a* b* - l b* a*",
                           "a b* - l^-1 b* a", "a* b - l^-1 b a*"}) {
    CHECK(poly_reduce(parse_poly(fwd, expr)).is_zero());
    CHECK(poly_reduce(parse_poly(rev, expr)).is_zero());
  }
}
