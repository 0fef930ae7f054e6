#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lfz/errors.hpp"
#include "lfz/lfunction.hpp"

#include <boost/math/special_functions/binomial.hpp>

#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <random>

using namespace lfz;
using std::numbers::pi;

namespace {

const LFunctionEvaluator& evaluator(int k, std::size_t n = 20000) {
  static std::map<std::pair<int, std::size_t>, std::unique_ptr<LFunctionEvaluator>> cache;
  auto& slot = cache[{k, n}];
  if (!slot) slot = std::make_unique<LFunctionEvaluator>(std::make_shared<CoefficientTable>(build_eigenform(EigenformSpec(k), n)));
  return *slot;
}

template <class F>
cplx cauchy_derivative(F f, cplx s, int r, double rho, int n) {
  cplx acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const cplx e = std::polar(1.0, 2 * pi * j / n);
    acc += f(s + rho * e) * std::pow(e, -r);
  }
  return acc / static_cast<double>(n) * std::tgamma(r + 1.0) / std::pow(rho, r);
}

double binom(int n, int k) { return boost::math::binomial_coefficient<double>(n, k); }

// right side of the differentiated functional equation, with L^(r)(1-s) from the completed regime
cplx fe_rhs(const LFunctionEvaluator& ev, cplx s, int m) {
  const auto rj = ev.eval_jet_in_regime(1.0 - s, m, Regime::completed);
  const auto chi = chi_jet(ev.table().spec(), s, m);
  cplx v = 0.0;
  for (int r = 0; r <= m; ++r) v += binom(m, r) * (r % 2 ? -1.0 : 1.0) * chi.values[m - r] * rj[r].value;
  return v;
}

}  // namespace

TEST_CASE("dirichlet_eval") {
  const auto& ev = evaluator(12, 100000);
  CHECK(std::abs(ev.dirichlet_eval(40.0, 0).value - 1.0) < 1e-12);
  CHECK_THROWS_AS(ev.dirichlet_eval(1.2, 0), RegimeError);
  CHECK(ev.dirichlet_eval(cplx(3.0, 7.0), 0).regime == Regime::series);

  // m = 1 at s = 3 against a direct partial sum to n = 10^6
  const auto delta = build_delta(1000000);
  long double acc = 0.0L;
  for (std::size_t n = 2; n <= 1000000; ++n) {
    const long double tau = delta[n].convert_to<long double>();
    acc -= tau * std::log(static_cast<long double>(n)) / std::pow(static_cast<long double>(n), 8.5L);
  }
  const auto r = ev.dirichlet_eval(3.0, 1);
  CHECK(std::abs(r.value - static_cast<double>(acc)) <= r.error_estimate);
  CHECK(r.error_estimate < 1e-6);

  // against the Euler product
  const auto e3 = ev.euler_product_eval(3.0, 100000);
  CHECK(std::abs(ev.dirichlet_eval(3.0, 0).value - e3.value) < 1e-8);
}

TEST_CASE("euler_product_eval") {
  const auto& ev = evaluator(12, 100000);
  CHECK(std::abs(ev.euler_product_eval(60.0, 1000).value - 1.0) < 1e-15);
  const cplx s(2.2, 1.5);
  const double l2 = ev.table().lambda(2);
  const cplx expect = 1.0 / (1.0 - l2 * std::pow(2.0, -s) + std::pow(2.0, -2.0 * s));
  CHECK(std::abs(ev.euler_product_eval(s, 2).value - expect) < 1e-15);
  const auto e = ev.euler_product_eval(2.5, 100000);
  const auto d = ev.eval(2.5, 0);
  CHECK(std::abs(e.value - d.value) < 1e-7);
  CHECK(std::abs(e.value - d.value) <= e.error_estimate + d.error_estimate);
  CHECK_THROWS_AS(ev.euler_product_eval(1.4, 1000), RegimeError);
  CHECK_THROWS_AS(ev.euler_product_eval(2.0, 200000), ContractError);
}

TEST_CASE("chi jets") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(-12.0, 12.0), im(-60.0, 60.0);
  for (int k : EigenformSpec::admissible_weights()) {
    const EigenformSpec spec(k);
    for (int i = 0; i < 100; ++i) {
      const cplx s(re(rng), im(rng));
      const cplx a = chi_jet(spec, s, 0).values[0];
      const cplx b = chi_jet(spec, 1.0 - s, 0).values[0];
      CHECK(std::abs(a * b - 1.0) <= 1e-9);
    }
    for (double t : {0.0, 3.0, 14.1, 59.0}) CHECK(std::abs(std::abs(chi_jet(spec, cplx(0.5, t), 0).values[0]) - 1.0) < 1e-12);
  }
  const EigenformSpec spec(12);
  const cplx s(2.0, 3.0);
  const auto chi0 = [&](cplx z) { return chi_jet(spec, z, 0).values[0]; };
  const double h = 1e-4;
  const cplx fd = (chi0(s + h) - chi0(s - h)) / (2 * h);
  const auto j = chi_jet(spec, s, 4);
  CHECK(std::abs(j.values[1] / j.values[0] - fd / chi0(s)) <= 1e-7);
  // every order against Cauchy-disc differentiation, in all three chi formulas
  for (cplx z : {cplx(2.0, 3.0), cplx(-7.3, 1.2), cplx(8.2, -4.0), cplx(0.5, 40.0), cplx(-20.0, 0.4)}) {
    const auto jz = chi_jet(spec, z, 4);
    for (int r = 0; r <= 4; ++r) {
      const cplx ref = cauchy_derivative(chi0, z, r, 0.25, 64);
      CHECK(std::abs(jz.values[r] - ref) <= 1e-6 * std::max(std::abs(ref), std::abs(jz.values[0])));
    }
  }
  // trivial zeros of chi and its poles
  CHECK(std::abs(chi_jet(spec, -5.5, 1).values[0]) < 1e-300);
  CHECK(std::abs(chi_jet(spec, -5.5, 1).values[1]) > 0.0);
  CHECK_THROWS_AS(chi_jet(spec, 6.5, 0), DomainError);
}

TEST_CASE("completed function") {
  for (int k : {18, 22, 26}) {
    const auto& ev = evaluator(k);
    CHECK(std::abs(ev.completed_derivative_incomplete_gamma(0.5, 0).value) < 1e-15);
    CHECK(std::abs(ev.completed_derivative(0.5, 0).value) < 1e-15);
  }
  const auto& ev = evaluator(12, 100000);
  const double c = 5.5;
  const cplx expect = std::pow(2 * pi, -3.0 - c) * std::tgamma(3.0 + c) * ev.dirichlet_eval(3.0, 0).value;
  CHECK(std::abs(ev.completed_derivative_incomplete_gamma(3.0, 0).value - expect) <= 1e-9 * std::abs(expect));
  CHECK(std::abs(ev.completed_derivative(3.0, 0).value - expect) <= 1e-9 * std::abs(expect));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(-2.0, 3.0), im(-6.0, 6.0), imw(-80.0, 80.0);
  for (int k : EigenformSpec::admissible_weights()) {
    const auto& e = evaluator(k);
    const double eps = e.sign();
    for (int i = 0; i < 20; ++i) {
      const int m = i % 5;
      const double sg = (m % 2 == 0 ? 1.0 : -1.0) * eps;
      // incomplete-gamma route, small heights
      const cplx s(re(rng), im(rng));
      const auto a = e.completed_derivative_incomplete_gamma(s, m).value;
      const auto b = e.completed_derivative_incomplete_gamma(1.0 - s, m).value;
      CHECK(std::abs(a - sg * b) <= 1e-10 * std::max(std::abs(a), 1e-30));
      // the two routes agree
      const auto rot = e.completed_derivative(s, m);
      CHECK(std::abs(rot.value - a) <= 1e-10 * std::abs(a));
      // rotated route at large heights
      const cplx z(re(rng), imw(rng));
      const auto p = e.completed_derivative(z, m);
      const auto q = e.completed_derivative(1.0 - z, m);
      CHECK(std::abs(p.value - sg * q.value) <= 1e-10 * std::abs(p.value) + p.error_estimate + q.error_estimate);
    }
  }
}

TEST_CASE("dispatch and regime cross-checks") {
  const auto& ev = evaluator(12, 100000);
  CHECK(ev.eval(5.0, 0).regime == Regime::series);
  CHECK(ev.eval(cplx(0.5, 14.0), 0).regime == Regime::completed);
  CHECK(ev.eval(-3.0, 1).regime == Regime::reflected);

  const cplx s(0.5, 14.0);
  CHECK(std::abs(ev.eval_in_regime(s, 0, Regime::completed).value - ev.eval_in_regime(s, 0, Regime::reflected).value) <= 1e-8);

  // real on the real axis
  const auto neg = ev.eval(-3.5, 0);
  CHECK(std::abs(neg.value.imag()) <= 1e-10 * std::max(1.0, std::abs(neg.value)));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const int m = i % 4;
    // series vs completed, both bands
    const cplx a(1.25 + 0.25 * U(rng), -100 + 200 * U(rng));
    const auto sa = ev.eval_in_regime(a, m, Regime::series), ca = ev.eval_in_regime(a, m, Regime::completed);
    CHECK(std::abs(sa.value - ca.value) <= sa.error_estimate + ca.error_estimate);
    const cplx b(4.5 + 0.5 * U(rng), -100 + 200 * U(rng));
    const auto sb = ev.eval_in_regime(b, m, Regime::series), cb = ev.eval_in_regime(b, m, Regime::completed);
    CHECK(std::abs(sb.value - cb.value) <= sb.error_estimate + cb.error_estimate);
    CHECK(sb.error_estimate + cb.error_estimate < 1e-10);
    // completed vs reflected
    const cplx c(-0.5 + 0.5 * U(rng), -100 + 200 * U(rng));
    const auto cc = ev.eval_in_regime(c, m, Regime::completed), rc = ev.eval_in_regime(c, m, Regime::reflected);
    CHECK(std::abs(cc.value - rc.value) <= cc.error_estimate + rc.error_estimate);
  }
}

TEST_CASE("functional equation residual and conjugate symmetry") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> re(-2.0, 3.0), im(-50.0, 50.0);
  for (int k : EigenformSpec::admissible_weights()) {
    const auto& ev = evaluator(k);
    for (int i = 0; i < 40; ++i) {
      const cplx s(re(rng), im(rng));
      const int m = i % 4;
      const cplx lhs = ev.eval_in_regime(s, m, Regime::completed).value;
      const cplx rhs = fe_rhs(ev, s, m);
      CHECK(std::abs(lhs - rhs) <= 1e-7 * std::max(std::abs(lhs), std::abs(rhs)));
      for (Regime r : {Regime::completed, Regime::reflected}) {
        const cplx up = ev.eval_in_regime(s, m, r).value;
        const cplx down = ev.eval_in_regime(std::conj(s), m, r).value;
        CHECK(std::abs(down - std::conj(up)) <= 1e-15 * std::abs(up));
      }
    }
    const cplx z(6.0, 21.0);
    CHECK(ev.eval(std::conj(z), 2).value == std::conj(ev.eval(z, 2).value));
  }
}

TEST_CASE("derivatives match Cauchy-disc differentiation of eval(., 0)") {
  const auto& ev = evaluator(12, 100000);
  const auto L = [&](cplx z) { return ev.eval(z, 0).value; };
  for (cplx s : {cplx(0.5, 14.0), cplx(-1.5, 30.0), cplx(2.0, 5.0), cplx(6.0, 0.0), cplx(0.1, 47.0), cplx(4.4, 80.0)}) {
    for (int m = 1; m <= 3; ++m) {
      const cplx ref = cauchy_derivative(L, s, m, 0.25, 64);
      CHECK(std::abs(ev.eval(s, m).value - ref) <= 1e-7 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("normalized F") {
  const auto& ev = evaluator(12, 100000);
  // F - 1 at Re s = 20 is dominated by the n = 3 term, ~2.4e-4; the 1e-6 level is reached near Re s = 40
  const auto& t = ev.table();
  double majorant = 0.0, direct = 0.0;
  for (std::size_t n = 3; n <= 1000; ++n) {
    const double term = t.lambda(n) * std::log(n) / std::log(2.0) * std::pow(2.0 / n, 20.0) / t.lambda(2);
    majorant += std::abs(term);
    direct += term;
  }
  const cplx f20 = ev.normalized_F(20.0, 1);
  CHECK(std::abs(f20 - 1.0) <= majorant);
  CHECK(std::abs(f20 - 1.0 - direct) <= 1e-12);
  CHECK(std::abs(ev.normalized_F(40.0, 1) - 1.0) <= 1e-6);
  CHECK(std::abs(ev.normalized_F(cplx(40.0, 3.0), 2) - 1.0) <= 1e-5);
  const cplx s(0.7, 9.0);
  CHECK(ev.normalized_F(s, 0) == ev.eval(s, 0).value);
  const cplx f = ev.normalized_F(s, 1);
  CHECK(std::abs(f - ev.eval(s, 1).value * std::pow(2.0, s) / (ev.table().lambda(2) * -std::log(2.0))) <= 1e-14 * std::abs(f));
  CHECK_THROWS_AS(ev.eval(s, 9), ContractError);
}

TEST_CASE("extended precision agrees with standard") {
  auto table = std::make_shared<CoefficientTable>(build_eigenform(EigenformSpec(16), 20000));
  EvaluatorOptions opt;
  opt.precision = Precision::extended;
  LFunctionEvaluator ext(table, opt);
  LFunctionEvaluator std_ev(table);
  for (cplx s : {cplx(0.5, 70.0), cplx(5.0, 2.0), cplx(-1.0, 10.0)}) {
    const auto a = ext.eval(s, 2), b = std_ev.eval(s, 2);
    CHECK(std::abs(a.value - b.value) <= a.error_estimate + b.error_estimate);
  }
}
