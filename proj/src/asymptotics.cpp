#include "lfz/asymptotics.hpp"

#include "lfz/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lfz {

namespace {

constexpr double pi = std::numbers::pi;

double factorial(int n) { return boost::math::factorial<double>(static_cast<unsigned>(n)); }

}  // namespace

double main_term_formula(double T, int m, std::size_t n_f) {
  double v = (T / pi) * std::log(T / (2 * pi * std::numbers::e));
  if (m >= 1) v -= (T / (2 * pi)) * std::log(static_cast<double>(n_f));
  return v;
}

double main_term_count(double T, int m, std::size_t n_f) {
  // the formula is meaningless below 2 pi e; allow a rounding hair at the boundary
  if (T < 2 * pi * std::numbers::e * (1 - 1e-14)) throw DomainError("main_term_count: T must be >= 2 pi e");
  if (m < 0) throw ContractError("main_term_count: m must be >= 0");
  if (m >= 1 && n_f < 2) throw ContractError("main_term_count: n_f must be >= 2");
  return main_term_formula(T, m, n_f);
}

double power_sum_leading(double sigma, int m, std::size_t n_f, double C) {
  const double nf = static_cast<double>(n_f);
  return factorial(2 * m) * nf * C / std::pow(nf, 2 * sigma) / std::pow(2 * sigma - 1, 2 * m + 1);
}

PowerSum coefficient_power_sum(double sigma, int m, const CoefficientTable& table) {
  if (!(sigma > 0.5)) throw DomainError("coefficient_power_sum: diverges for sigma <= 1/2");
  if (m < 0) throw ContractError("coefficient_power_sum: m must be >= 0");
  const std::size_t N = table.length();
  if (N < 100) throw ContractError("coefficient_power_sum: table too short");
  PowerSum out;
  out.terms = N;
  double acc = 0.0;
  for (std::size_t n = 2; n <= N; ++n) {
    const double l = table.lambda(n);
    if (l == 0.0) continue;
    const double ln = std::log(static_cast<double>(n));
    acc += l * l * std::pow(ln, 2 * m) * std::exp(-2 * sigma * ln);
  }
  if (m == 0) acc += 1.0;
  out.finite_part = acc;

  // sum_{n>N} a_n g(n) = -A(N) g(N) - int_N^inf A g', with A(u) ~ C u
  const double Nd = static_cast<double>(N);
  const double C = table.rankin_partial(N) / Nd;
  const double L = std::log(Nd);
  const double a = 2 * sigma;
  const double gN = std::pow(L, 2 * m) * std::pow(Nd, -a);
  out.tail_estimate = C * log_power_tail(Nd, a, 2 * m) + (C * Nd - table.rankin_partial(N)) * gN;

  // |A(u) - C u| <= K u^{3/5}, K read off the upper half of the table
  double K = 0.0;
  for (std::size_t x = N / 2; x <= N; ++x)
    K = std::max(K, std::abs(table.rankin_partial(x) - C * static_cast<double>(x)) / std::pow(static_cast<double>(x), 0.6));
  double g_var = 2 * sigma * log_power_tail(Nd, a + 0.4, 2 * m);
  if (m > 0) g_var += 2 * m * log_power_tail(Nd, a + 0.4, 2 * m - 1);
  out.tail_bound = K * (std::pow(Nd, 0.6) * gN + g_var);
  out.value = out.finite_part + out.tail_estimate;
  return out;
}

RankinFit rankin_fit(const CoefficientTable& table, double x_lo) {
  const std::size_t N = table.length();
  if (N < 10000) throw ContractError("rankin_fit: table length must be >= 10^4");
  RankinFit fit;
  fit.C_hat = table.rankin_partial(N) / static_cast<double>(N);
  fit.x_lo = x_lo;
  fit.x_hi = static_cast<double>(N);
  // dyadic blocks [X, 2X)
  for (double X = x_lo; X < fit.x_hi; X *= 2) {
    const std::size_t a = static_cast<std::size_t>(X);
    const std::size_t b = std::min<std::size_t>(N, static_cast<std::size_t>(2 * X));
    double d = 0.0;
    for (std::size_t x = a; x < b; ++x)
      d = std::max(d, std::abs(table.rankin_partial(x) - fit.C_hat * static_cast<double>(x)));
    fit.block_x.push_back(std::sqrt(static_cast<double>(a) * static_cast<double>(b)));
    fit.block_drift.push_back(d);
    fit.max_drift = std::max(fit.max_drift, d);
  }
  // least squares slope of log drift against log x
  const double tiny = 1e-9 * std::max(1.0, fit.C_hat) * fit.x_hi;
  if (fit.max_drift <= tiny || fit.block_x.size() < 2) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(fit.block_x.size());
  for (std::size_t i = 0; i < fit.block_x.size(); ++i) {
    const double x = std::log(fit.block_x[i]);
    const double y = std::log(std::max(fit.block_drift[i], tiny));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.drift_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

double mean_square_error_order(double sigma, double T, int m) {
  const double L = std::log(T);
  if (sigma > 1.0) return 1.0;
  if (sigma == 1.0) return std::pow(L, 2 * m + 2);
  return std::pow(T, 2 * (1 - sigma)) * std::pow(L, 2 * m);
}

std::vector<MeanSquareReport> mean_square_numeric(const LFunctionEvaluator& ev, double sigma,
                                                  const std::vector<double>& Ts, int m) {
  if (!(sigma > 0.5)) throw DomainError("mean_square_numeric: sigma must exceed 1/2");
  std::vector<double> heights(Ts);
  for (double T : heights)
    if (!(T >= 1.0) || T > 100.0) throw ContractError("mean_square_numeric: T must lie in [1, 100]");
  std::sort(heights.begin(), heights.end());
  heights.erase(std::unique(heights.begin(), heights.end()), heights.end());

  const PowerSum ps = coefficient_power_sum(sigma, m, ev.table());
  std::size_t evals = 0;
  const auto f = [&](double t) {
    ++evals;
    return std::norm(ev.eval({sigma, t}, m).value);
  };
  constexpr double tol = 1e-7;
  constexpr unsigned max_depth = 18;
  double acc = 0.0, err_acc = 0.0;
  bool exhausted = false;
  double prev = 1.0;
  std::vector<MeanSquareReport> out;
  for (double T : heights) {
    // unit pieces keep the adaptive bisection from under-resolving the oscillation
    for (double a = prev; a < T; a += 1.0) {
      const double b = std::min(T, a + 1.0);
      double err = 0.0, l1 = 0.0;
      const double v =
          boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, tol, &err, &l1);
      acc += v;
      err_acc += err;
      if (err > 10 * tol * l1) exhausted = true;
    }
    prev = T;
    MeanSquareReport r;
    r.m = m;
    r.sigma = sigma;
    r.T = T;
    r.numeric_integral = acc;
    r.quadrature_error = err_acc;
    r.reference_main = (T - 1.0) * ps.value;
    r.difference = r.numeric_integral - r.reference_main;
    r.predicted_error_order = mean_square_error_order(sigma, T, m);
    r.normalized_difference = r.difference / r.predicted_error_order;
    r.budget_exhausted = exhausted;
    r.evaluations = evals;
    out.push_back(r);
  }
  std::vector<MeanSquareReport> ordered;
  for (double T : Ts)
    for (const auto& r : out)
      if (r.T == T) ordered.push_back(r);
  return ordered;
}

MeanSquareReport mean_square_numeric(const LFunctionEvaluator& ev, double sigma, double T, int m) {
  return mean_square_numeric(ev, sigma, std::vector<double>{T}, m).front();
}

DensityConstants density_constants(const CoefficientTable& table, int m, double C_f) {
  DensityConstants c;
  c.C_f = C_f;
  if (m == 0) {
    // L itself is its own normalization: leading term 1 at n = 1
    c.n_f = 1;
    c.lambda_nf = 1.0;
  } else {
    c.n_f = table.n_f();
    c.lambda_nf = table.lambda(c.n_f);
  }
  return c;
}

DensityReport density_envelope(double sigma, double T, int m, const DensityConstants& c, int empirical_count) {
  if (!(sigma > 0.5)) throw DomainError("density_envelope: sigma must exceed 1/2");
  if (!(T > 1.0)) throw DomainError("density_envelope: T must exceed 1");
  DensityReport r;
  r.m = m;
  r.sigma = sigma;
  r.T = T;
  r.empirical_count = empirical_count;
  const double x = sigma - 0.5;
  const double nf = static_cast<double>(c.n_f);
  const double log_nf_pow = (m == 0) ? 1.0 : std::pow(std::log(nf), 2 * m);
  const double K = factorial(2 * m) * nf * c.C_f / (c.lambda_nf * c.lambda_nf * log_nf_pow);
  const double scale = T / (2 * pi * x);
  r.envelope_zd2 = (2 * m + 1) * scale * std::log(1 / x) + scale * std::log(K);
  r.slack = c.slack_logT * std::log(T);
  const double u = 2 * sigma - 1;
  double inner;
  const double L = std::log(T);
  if (sigma < 1.0)
    inner = std::pow(u, 2 * m + 1) * std::pow(L, 2 * m) / std::pow(T, u);
  else if (sigma == 1.0)
    inner = std::pow(u, 2 * m + 1) * std::pow(L, 2 * m + 2) / T;
  else
    inner = std::pow(u, 2 * m + 1) / T;
  r.correction = scale * std::log1p(c.inner_constant * inner);
  r.explicit_bound_zd1 = r.envelope_zd2 + r.slack + r.correction;
  r.pass = empirical_count <= r.explicit_bound_zd1;
  return r;
}

}  // namespace lfz
