#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ptosc/operator_algebra.hpp"

using namespace ptosc;
using ptosc_test::GaussPoly;

namespace {

CRat ci(long long re_n, long long re_d, long long im_n, long long im_d) {
  return {Rational(re_n, re_d), Rational(im_n, im_d)};
}

OperatorSum random_sum(std::mt19937_64& gen) {
  OperatorSum s;
  const int terms = 1 + static_cast<int>(gen() % 4);
  for (int t = 0; t < terms; ++t) {
    const TermKind kind = gen() % 2 ? TermKind::XPow : TermKind::PXPowP;
    const int power = static_cast<int>(gen() % 6);
    const CRat c = ci(static_cast<long long>(gen() % 9) - 4, 1 + gen() % 3,
                      static_cast<long long>(gen() % 9) - 4, 1 + gen() % 3);
    s.add_term(kind, power, c);
  }
  return s;
}

}  // namespace

TEST_CASE("Rational normalization and arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-1, -2) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(1, 2).den() == 2);

  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK(Rational(1, 2) / Rational(3, 4) == Rational(2, 3));
  CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
  CHECK(Rational(7, 3).str() == "7/3");

  CHECK_THROWS_AS(Rational(1, 0), DivisionByZeroJet);
  CHECK_THROWS_AS(Rational(1) / Rational(0), DivisionByZeroJet);
  CHECK_THROWS_AS(Rational(1LL << 62) * Rational(1LL << 62), OverflowError);
}

TEST_CASE("CRat complex multiplication") {
  const CRat i = CRat::imag(Rational(1));
  CHECK(i * i == CRat::real(Rational(-1)));
  const CRat z = ci(1, 2, -3, 4);
  CHECK(z * CRat::real(Rational(2)) == ci(1, 1, -3, 2));
  CHECK(std::abs(z.to_complex() - Complex(0.5, -0.75)) < 1e-16);
}

TEST_CASE("OperatorSum normal form") {
  OperatorSum s;
  s.add_term(TermKind::XPow, 3, ci(1, 1, 0, 1));
  s.add_term(TermKind::XPow, 3, ci(-1, 1, 0, 1));
  CHECK(s.empty());

  s.add_term(TermKind::PXPowP, 2, ci(0, 1, 1, 1));
  s.add_term(TermKind::XPow, 0, ci(1, 2, 0, 1));
  s.add_term(TermKind::XPow, 5, ci(1, 3, 0, 1));
  const auto terms = s.terms();
  REQUIRE(terms.size() == 3);
  // Canonical order: x powers ascending, then p x^a p ascending.
  CHECK(terms[0].kind == TermKind::XPow);
  CHECK(terms[0].power == 0);
  CHECK(terms[1].kind == TermKind::XPow);
  CHECK(terms[1].power == 5);
  CHECK(terms[2].kind == TermKind::PXPowP);
  CHECK(terms[2].power == 2);
}

TEST_CASE("commute_F on single terms") {
  // [F, x^0] = 0
  CHECK(commute_F(OperatorSum::x_pow(0, ci(1, 1, 0, 1))).empty());

  // [F, p x^0 p] = 8i p x p
  const OperatorSum pp = commute_F(OperatorSum::p_x_pow_p(0, ci(1, 1, 0, 1)));
  const auto pp_terms = pp.terms();
  REQUIRE(pp_terms.size() == 1);
  CHECK(pp_terms[0].kind == TermKind::PXPowP);
  CHECK(pp_terms[0].power == 1);
  CHECK(pp_terms[0].coeff == ci(0, 1, 8, 1));

  // [F, x^2] = -4i x^3
  const OperatorSum x2 = commute_F(OperatorSum::x_pow(2, ci(1, 1, 0, 1)));
  const auto x2_terms = x2.terms();
  REQUIRE(x2_terms.size() == 1);
  CHECK(x2_terms[0].kind == TermKind::XPow);
  CHECK(x2_terms[0].power == 3);
  CHECK(x2_terms[0].coeff == ci(0, 1, -4, 1));

  // [F, p x^2 p] = 4i p x^3 p - 4i x
  const OperatorSum px2p = commute_F(OperatorSum::p_x_pow_p(2, ci(1, 1, 0, 1)));
  const auto mixed = px2p.terms();
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0].kind == TermKind::XPow);
  CHECK(mixed[0].power == 1);
  CHECK(mixed[0].coeff == ci(0, 1, -4, 1));
  CHECK(mixed[1].kind == TermKind::PXPowP);
  CHECK(mixed[1].power == 3);
  CHECK(mixed[1].coeff == ci(0, 1, 4, 1));
}

TEST_CASE("commute_F closure and linearity on random sums") {
  std::mt19937_64 gen(41);
  for (int i = 0; i < 500; ++i) {
    const OperatorSum a = random_sum(gen);
    const OperatorSum b = random_sum(gen);
    const OperatorSum joint = commute_F(a + b);
    const OperatorSum split = commute_F(a) + commute_F(b);
    CHECK(joint == split);
    for (const auto& t : joint.terms()) {
      CHECK(t.power >= 0);
      CHECK(!t.coeff.is_zero());
    }
  }
}

TEST_CASE("bch_series low orders") {
  const EpsSeries s0 = bch_series(0);
  CHECK(s0.grade(0) == OperatorSum::harmonic());

  // C_1 = [F, h] = 4i p x p - 2i x^3.
  const EpsSeries s1 = bch_series(1);
  OperatorSum c1;
  c1.add_term(TermKind::PXPowP, 1, ci(0, 1, 4, 1));
  c1.add_term(TermKind::XPow, 3, ci(0, 1, -2, 1));
  CHECK(s1.grade(1) == c1);

  CHECK_THROWS_AS(bch_series(17), IndexTooLarge);
}

TEST_CASE("target_expansion blocks") {
  const EpsSeries t = target_expansion(8);
  CHECK(t.grade(0) == OperatorSum::harmonic());

  // p-sandwich block 1/2 p (1 + 2i eps x)^4 p: coefficients
  // 1/2 {1, 8i, -24, -32i, 16} on p x^j p.
  const CRat expected_p[5] = {ci(1, 2, 0, 1), ci(0, 1, 4, 1), ci(-12, 1, 0, 1),
                              ci(0, 1, -16, 1), ci(8, 1, 0, 1)};
  for (int j = 0; j <= 4; ++j) {
    CRat found{};
    for (const auto& term : t.grade(j).terms()) {
      if (term.kind == TermKind::PXPowP && term.power == j) found = term.coeff;
    }
    CHECK(found == expected_p[j]);
  }

  // Order-eps term of x^2/2s^2 is -2i x^3.
  CRat x3{};
  for (const auto& term : t.grade(1).terms()) {
    if (term.kind == TermKind::XPow && term.power == 3) x3 = term.coeff;
  }
  CHECK(x3 == ci(0, 1, -2, 1));

  CHECK_THROWS_AS(target_expansion(33), IndexTooLarge);
}

TEST_CASE("bch_series equals target_expansion order by order") {
  const int order = 12;
  const EpsSeries bch = bch_series(order);
  const EpsSeries target = target_expansion(order);
  for (int k = 0; k <= order; ++k) CHECK(bch.grade(k) == target.grade(k));
}

TEST_CASE("operator dump golden") {
  CHECK(OperatorSum().dump() == "0\n");
  const std::string expected =
      "eps^0:\n"
      "  (1/2 + 0/1 i) * x^2\n"
      "  (1/2 + 0/1 i) * p x^0 p\n"
      "eps^1:\n"
      "  (0/1 + -2/1 i) * x^3\n"
      "  (0/1 + 4/1 i) * p x^1 p\n";
  CHECK(bch_series(1).dump() == expected);
}

TEST_CASE("commutator rules agree with the analytic differentiation oracle") {
  std::mt19937_64 gen(43);
  for (int family = 0; family < 2; ++family) {
    for (int n = 0; n <= 4; ++n) {
      const OperatorSum term = family == 0
                                   ? OperatorSum::x_pow(n, ci(1, 1, 0, 1))
                                   : OperatorSum::p_x_pow_p(n, ci(1, 1, 0, 1));
      const OperatorSum rhs = commute_F(term);
      for (int j = 0; j <= 4; ++j) {
        const GaussPoly g{j == 0 ? PolyC::constant(Complex(1))
                                 : PolyC::identity().times_x(j - 1)};
        // LHS [F, T] g = F(T g) - T(F g), all in closed form.
        const GaussPoly lhs_fn =
            GaussPoly{ptosc_test::apply_F(ptosc_test::apply_opsum(term, g)).poly -
                      ptosc_test::apply_opsum(term, ptosc_test::apply_F(g)).poly};
        double max_diff = 0.0, max_mag = 0.0;
        for (int p = 0; p < 10; ++p) {
          const Complex x(ptosc_test::uniform(gen, -3, 3), 0);
          const Complex lhs = lhs_fn(x);
          const Complex rhs_val = apply_sum(rhs, ptosc_test::gauss_poly_jet(g, x), x);
          max_diff = std::max(max_diff, std::abs(lhs - rhs_val));
          max_mag = std::max(max_mag, std::abs(lhs));
        }
        CHECK(max_diff <= 1e-10 * std::max(max_mag, 1.0));
      }
    }
  }
}

TEST_CASE("apply_term p x^a p on a cubic") {
  // f = x^3 at x = 1.5: p x^2 p f = -(2x f' + x^2 f'') = -40.5.
  const Complex x(1.5);
  const Jet2C f{x * x * x, 3.0 * x * x, 6.0 * x};
  CHECK(std::abs(apply_term(TermKind::PXPowP, 2, f, x) - Complex(-40.5)) < 1e-13);
  // x^2 f just scales the value.
  CHECK(std::abs(apply_term(TermKind::XPow, 2, f, x) - x * x * f.v) < 1e-13);
  // a = 0: p^2 f = -f''.
  CHECK(std::abs(apply_term(TermKind::PXPowP, 0, f, x) + f.d2) < 1e-15);
}

TEST_CASE("lemma series matches closed form") {
  {
    // U = 1: series sums to 1/s.
    const PTSystem sys{0.05};
    const PolyC U = PolyC::constant(Complex(1));
    const Complex sum = lemma_series_sum(U, sys, Complex(1), 40);
    CHECK(std::abs(sum - 1.0 / Complex(1.0, 0.1)) < 1e-10);
  }
  {
    // U = x: series sums to x/s^2; frozen from explicit complex division.
    const PTSystem sys{0.05};
    const Complex sum = lemma_series_sum(PolyC::identity(), sys, Complex(1), 40);
    CHECK(std::abs(sum - Complex(0.97049308891285169, -0.19605920988138420)) < 1e-9);
    CHECK(std::abs(sum - lemma_closed_form(PolyC::identity(), sys, Complex(1))) < 1e-10);
  }
  {
    // eps = 0: one term, every higher f_k vanishes.
    const PTSystem sys{0.0};
    const LemmaSeries series = build_lemma_series(PolyC::identity(), sys, 10);
    for (int k = 1; k <= 10; ++k) CHECK(series.terms[k].is_zero());
    CHECK(std::abs(lemma_series_sum(PolyC::identity(), sys, Complex(0.3), 10) - 0.3) <
          1e-16);
  }
}

TEST_CASE("lemma_closed_form examples") {
  const PTSystem sys{0.1};
  const Complex s(1.0, 0.2);
  const PolyC U({Complex(0), Complex(0), Complex(1)});  // x^2
  CHECK(std::abs(lemma_closed_form(U, sys, Complex(1)) - 1.0 / (s * s * s)) < 1e-15);
  CHECK(std::abs(lemma_closed_form(U, PTSystem{0.0}, Complex(1.3)) - Complex(1.69)) <
        1e-15);
  CHECK_THROWS_AS(lemma_closed_form(U, sys, Complex(0, 5)), PoleError);
}

TEST_CASE("lemma series degree law") {
  const PTSystem sys{0.1};
  const PolyC U({Complex(1), Complex(0), Complex(0), Complex(2)});
  const LemmaSeries series = build_lemma_series(U, sys, 50);
  for (int k = 0; k <= 50; ++k) CHECK(series.terms[k].degree() == 3 + k);
}

TEST_CASE("lemma series geometric convergence with fitted constant") {
  // Fit |err_N| ~ C r^N over N = 10..40 at the edge of the sampling
  // domain r = |2 eps x| = 0.5.
  const PTSystem sys{0.25};
  const Complex x(1);
  for (const PolyC& U : {PolyC::constant(Complex(1)), PolyC::identity()}) {
    const Complex closed = lemma_closed_form(U, sys, x);
    double sn = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int N = 10; N <= 40; ++N) {
      const double err = std::abs(lemma_series_sum(U, sys, x, N) - closed);
      const double lx = static_cast<double>(N);
      const double ly = std::log(err);
      sn += 1;
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double slope = (sn * sxy - sx * sy) / (sn * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / sn;
    const double rate = std::exp(slope);
    const double fitted_C = std::exp(intercept);
    CHECK(rate == doctest::Approx(0.5).epsilon(0.12));
    CHECK(fitted_C < 10.0);
  }
}

TEST_CASE("lemma series tail at the convergence-domain edge") {
  // At |2 eps x| = 0.5 the cubic seed carries a binomial prefactor
  // C(N+3,3), so 40 terms stall near 1e-8; 60 terms restore full accuracy.
  const PTSystem sys{0.25};
  const PolyC U({Complex(1), Complex(0), Complex(0), Complex(2)});
  const Complex closed = lemma_closed_form(U, sys, Complex(1));
  const double err40 = std::abs(lemma_series_sum(U, sys, Complex(1), 40) - closed);
  const double err60 = std::abs(lemma_series_sum(U, sys, Complex(1), 60) - closed);
  CHECK(err40 > 1e-12);
  CHECK(err40 < 1e-7);
  CHECK(err60 < 1e-10);
}

TEST_CASE("lemma guards") {
  const PolyC U = PolyC::identity();
  CHECK_THROWS_AS(lemma_series_sum(U, PTSystem{0.25}, Complex(2), 40),
                  ConvergenceDomainError);
  CHECK_THROWS_AS(lemma_series_sum(U, PTSystem{0.25}, Complex(2.5), 40),
                  ConvergenceDomainError);
  CHECK_THROWS_AS(build_lemma_series(U, PTSystem{0.1}, 201), IndexTooLarge);
  CHECK_NOTHROW(build_lemma_series(U, PTSystem{0.1}, 200));
}
