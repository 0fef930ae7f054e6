#include "lfz/special.hpp"

#include "lfz/errors.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace lfz {

namespace {

constexpr double kShift = 12.0;
constexpr int kStirlingTerms = 12;

const std::array<double, 31>& bernoulli_even() {
  // B_0, B_2, ..., B_60
  static const std::array<double, 31> b = [] {
    std::array<double, 31> v{};
    for (int j = 0; j < 31; ++j) v[j] = boost::math::bernoulli_b2n<double>(j);
    return v;
  }();
  return b;
}

void require_not_pole(cplx s, const char* what) {
  if (s.real() <= 0.5) {
    const double n = std::round(s.real());
    if (n <= 0.0 && std::abs(s - cplx(n, 0.0)) < 1e-13) throw DomainError(std::string(what) + ": pole of Gamma");
  }
}

double factorial(int n) { return boost::math::factorial<double>(static_cast<unsigned>(n)); }

}  // namespace

cplx log_gamma(cplx s) {
  require_not_pole(s, "log_gamma");
  cplx z = s;
  cplx shift_sum = 0.0;
  while (z.real() < kShift) {
    shift_sum += std::log(z);
    z += 1.0;
  }
  const auto& b = bernoulli_even();
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx p = inv;
  for (int j = 1; j <= kStirlingTerms; ++j) {
    const cplx term = b[j] / (2.0 * j * (2.0 * j - 1.0)) * p;
    series += term;
    if (std::abs(term) < 1e-18 * std::abs(series)) break;
    p *= inv2;
  }
  const cplx lg = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
  return lg - shift_sum;
}

cplx polygamma(int n, cplx s) {
  if (n < 0) throw ContractError("polygamma order must be >= 0");
  require_not_pole(s, "polygamma");
  // the asymptotic series needs |z| comfortably above the order
  const double threshold = kShift + 1.5 * n;
  cplx z = s;
  cplx shift_sum = 0.0;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double nfact = factorial(n);
  while (z.real() < threshold) {
    shift_sum += sign * nfact / std::pow(z, n + 1);
    z += 1.0;
  }
  const auto& b = bernoulli_even();
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx value;
  if (n == 0) {
    value = std::log(z) - 0.5 * inv;
    cplx p = inv2;
    for (int k = 1; k < 30; ++k) {
      const cplx term = b[k] / (2.0 * k) * p;
      value -= term;
      if (std::abs(term) < 1e-18 * std::abs(value)) break;
      p *= inv2;
    }
  } else {
    const cplx zn = std::pow(inv, n);
    cplx acc = factorial(n - 1) * zn + 0.5 * nfact * zn * inv;
    cplx p = zn * inv2;
    // B_2k (2k+n-1)! / (2k)! built up incrementally
    double ratio = factorial(n + 1) / 2.0;  // k = 1: (n+1)!/2!
    for (int k = 1; k < 30; ++k) {
      const cplx term = b[k] * ratio * p;
      acc += term;
      if (std::abs(term) < 1e-18 * std::abs(acc)) break;
      ratio *= (2.0 * k + n) * (2.0 * k + n + 1) / ((2.0 * k + 1) * (2.0 * k + 2));
      p *= inv2;
    }
    value = (n % 2 == 1 ? 1.0 : -1.0) * acc;
  }
  return value - shift_sum;
}

DerivativeJet polygamma_jet(cplx s, int r, double delta) {
  if (r < 0) throw ContractError("polygamma_jet order must be >= 0");
  if (std::abs(std::arg(s)) > std::numbers::pi - delta)
    throw DomainError("polygamma_jet: argument within delta of the negative real axis");
  DerivativeJet jet{s, std::vector<cplx>(static_cast<std::size_t>(r) + 1)};
  jet.values[0] = log_gamma(s);
  for (int j = 1; j <= r; ++j) jet.values[j] = polygamma(j - 1, s);
  return jet;
}

std::vector<cplx> bell_polynomials(const DerivativeJet& jet, int r) {
  if (r < 0 || jet.values.size() < static_cast<std::size_t>(r) + 1)
    throw ContractError("bell_polynomials: jet shorter than requested order");
  std::vector<cplx> b(static_cast<std::size_t>(r) + 1);
  b[0] = 1.0;
  for (int n = 0; n < r; ++n) {
    cplx acc = 0.0;
    for (int i = 0; i <= n; ++i)
      acc += boost::math::binomial_coefficient<double>(n, i) * b[n - i] * jet.values[i + 1];
    b[n + 1] = acc;
  }
  return b;
}

cplx bell_ratio(const DerivativeJet& jet, int r) { return bell_polynomials(jet, r).back(); }

DerivativeJet exp_jet(const DerivativeJet& log_jet) {
  const int r = static_cast<int>(log_jet.order());
  auto b = bell_polynomials(log_jet, r);
  const cplx e = std::exp(log_jet.values[0]);
  for (auto& v : b) v *= e;
  return {log_jet.center, std::move(b)};
}

DerivativeJet product_jet(const DerivativeJet& a, const DerivativeJet& b) {
  const std::size_t r = std::min(a.order(), b.order());
  DerivativeJet out{a.center, std::vector<cplx>(r + 1)};
  for (std::size_t n = 0; n <= r; ++n) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j <= n; ++j)
      acc += boost::math::binomial_coefficient<double>(static_cast<unsigned>(n), static_cast<unsigned>(j)) *
             a.values[j] * b.values[n - j];
    out.values[n] = acc;
  }
  return out;
}

QuadratureResult integrate_decaying(const std::function<cplx(double)>& integrand, double lower,
                                    const DecayingQuadratureOptions& opt) {
  if (!(opt.decay_rate > 0.0)) throw DomainError("integrate_decaying: decay rate must be positive");
  constexpr double half_pi = std::numbers::pi / 2;
  // u = exp(pi/2 sinh t) runs from ~e^-70 to ~1000 over [-4.5, 2.2]
  constexpr double t_lo = -4.5;
  constexpr double t_hi = 2.2;
  constexpr int max_level = 10;

  QuadratureResult res;
  const auto contribution = [&](double t) -> cplx {
    const double u = std::exp(half_pi * std::sinh(t));
    const double weight = half_pi * std::cosh(t) * u / opt.decay_rate;
    const cplx f = integrand(lower + u / opt.decay_rate);
    ++res.evaluations;
    if (!std::isfinite(f.real()) || !std::isfinite(f.imag())) throw Error("integrate_decaying: non-finite integrand");
    return f * weight;
  };

  // level 0, step 1/2, trimmed to where the contributions matter
  double h = 0.5;
  std::vector<std::pair<double, cplx>> base;
  double max_abs = 0.0;
  double abs_sum = 0.0;
  for (double t = t_lo; t <= t_hi + 1e-12; t += h) {
    if (res.evaluations >= opt.budget) break;
    const cplx c = contribution(t);
    base.emplace_back(t, c);
    max_abs = std::max(max_abs, std::abs(c));
    abs_sum += std::abs(c);
  }
  cplx sum = 0.0;
  for (const auto& [t, c] : base) sum += c;
  cplx estimate = sum * h;
  const bool level0_complete = base.size() == static_cast<std::size_t>(std::floor((t_hi - t_lo) / h + 1e-9)) + 1;
  if (!level0_complete) {
    res.value = estimate;
    res.error_estimate = std::max(abs_sum * h, std::abs(estimate)) + std::numeric_limits<double>::min();
    res.converged = false;
    return res;
  }
  std::size_t first = 0, last = base.size() - 1;
  const double cut = 1e-20 * max_abs;
  while (first + 1 < base.size() && std::abs(base[first].second) < cut) ++first;
  while (last > first && std::abs(base[last].second) < cut) --last;
  first = first > 0 ? first - 1 : 0;
  last = std::min(last + 1, base.size() - 1);
  const double a = base[first].first;
  const double b = base[last].first;
  sum = 0.0;
  double mass = 0.0;  // sum of |contributions|, sets the rounding floor
  for (std::size_t i = first; i <= last; ++i) {
    sum += base[i].second;
    mass += std::abs(base[i].second);
  }
  estimate = sum * h;

  double diff = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= max_level; ++level) {
    const double hn = h / 2;
    cplx add = 0.0;
    bool exhausted = false;
    for (double t = a + hn; t < b; t += h) {
      if (res.evaluations >= opt.budget) {
        exhausted = true;
        break;
      }
      const cplx c = contribution(t);
      add += c;
      mass += std::abs(c);
    }
    if (exhausted) {
      res.value = estimate;
      res.error_estimate = std::isfinite(diff) ? diff : std::max(abs_sum * 0.5, std::abs(estimate));
      res.converged = false;
      return res;
    }
    sum += add;
    h = hn;
    const cplx next = sum * h;
    diff = std::abs(next - estimate);
    estimate = next;
    const double tol = std::max({opt.abs_tolerance, opt.rel_tolerance * std::abs(estimate),
                                 16 * std::numeric_limits<double>::epsilon() * mass * h});
    // the nested trapezoid error roughly squares per level; two agreeing levels are required
    if (level >= 3 && diff <= tol) {
      res.value = estimate;
      res.error_estimate = diff;
      res.converged = true;
      return res;
    }
  }
  res.value = estimate;
  res.error_estimate = diff;
  res.converged = false;
  return res;
}

cplx log_weighted_incomplete(cplx w, double x, int m) {
  if (!(x > 0.0)) throw DomainError("log_weighted_incomplete: x must be positive");
  if (m < 0) throw ContractError("log_weighted_incomplete: m must be >= 0");
  // y = 1 + u/x; the factor e^{-x}/x is pulled out
  const cplx wm1 = w - 1.0;
  const auto g = [&](double v) -> cplx {
    const double u = v - 1.0;
    const double ly = std::log1p(u / x);
    if (u == 0.0) return m == 0 ? cplx(1.0) : cplx(0.0);
    return std::pow(ly, m) * std::exp(wm1 * ly - u);
  };
  DecayingQuadratureOptions opt;
  opt.rel_tolerance = 4e-16;
  opt.abs_tolerance = 1e-300;
  opt.decay_rate = 1.0;
  opt.budget = 60000;
  const auto r = integrate_decaying(g, 1.0, opt);
  // the last nested level agrees to rounding; a miss here means an integrand too oscillatory for doubles
  if (!r.converged && r.error_estimate > 1e-13 * std::abs(r.value))
    throw Error("log_weighted_incomplete: quadrature did not converge");
  return r.value * std::exp(-x) / x;
}

}  // namespace lfz
