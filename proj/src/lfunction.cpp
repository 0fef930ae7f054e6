#include "lfz/lfunction.hpp"

#include "lfz/errors.hpp"

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lfz {

namespace {

using std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
const double kLog2Pi = std::log(2 * pi);

// completed-regime grids serve this strip of Re s and moments up to this order
constexpr double kSigmaLo = -3.5;
constexpr double kSigmaHi = 6.5;
constexpr int kMomentMax = 8;

double binom(int n, int k) { return boost::math::binomial_coefficient<double>(n, k); }


DerivativeJet conj_jet(DerivativeJet j) {
  j.center = std::conj(j.center);
  for (auto& v : j.values) v = std::conj(v);
  return j;
}

DerivativeJet reciprocal_jet(const DerivativeJet& a) {
  const std::size_t r = a.order();
  DerivativeJet b{a.center, std::vector<cplx>(r + 1)};
  b.values[0] = 1.0 / a.values[0];
  for (std::size_t n = 1; n <= r; ++n) {
    cplx acc = 0.0;
    for (std::size_t j = 1; j <= n; ++j)
      acc += binom(static_cast<int>(n), static_cast<int>(j)) * a.values[j] * b.values[n - j];
    b.values[n] = -b.values[0] * acc;
  }
  return b;
}

// add sign^i * (log Gamma)^{(i)}(z) to the jet (z = a + sign*s)
void add_log_gamma(DerivativeJet& jet, cplx z, double sign, double factor) {
  const int r = static_cast<int>(jet.order());
  const auto pg = polygamma_jet(z, r);
  double sg = 1.0;
  for (int i = 0; i <= r; ++i) {
    jet.values[i] += factor * sg * pg.values[i];
    sg *= sign;
  }
}

template <class T>
struct Acc {
  std::complex<T> v{};
  void add(cplx x) { v += std::complex<T>(x.real(), x.imag()); }
  cplx get() const { return {static_cast<double>(v.real()), static_cast<double>(v.imag())}; }
};

}  // namespace

// int_N^inf (log u)^j u^{-sigma} du, sigma > 1
double log_power_tail(double N, double sigma, int j) {
  const double L = std::log(N);
  double acc = 0.0;
  for (int i = 0; i <= j; ++i)
    acc += boost::math::factorial<double>(j) / boost::math::factorial<double>(i) * std::pow(L, i) /
           std::pow(sigma - 1.0, j - i + 1);
  return std::pow(N, 1.0 - sigma) * acc;
}

// sum_{n>N} d(n) (log n)^m n^{-sigma}, from D(x) <= x (log x + 1) by partial summation.
// Valid once (log u)^m u^{-sigma} decreases on [N, inf).
double divisor_tail_bound(double N, double sigma, int m) {
  const double L = std::log(N);
  const double g = std::pow(L, m) * std::pow(N, -sigma);
  return N * (L + 1.0) * g + log_power_tail(N, sigma, m + 1) + 2.0 * log_power_tail(N, sigma, m);
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::series: return "series";
    case Regime::completed: return "completed";
    case Regime::reflected: return "reflected";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// chi jets

DerivativeJet chi_jet(const EigenformSpec& spec, cplx s, int r) {
  if (r < 0) throw ContractError("chi_jet order must be >= 0");
  const double c = spec.shift();
  if (s.imag() < 0) {
    auto j = conj_jet(chi_jet(spec, std::conj(s), r));
    j.center = s;
    return j;
  }
  if (s.real() > c + 0.5) {
    // poles at s = 1 + c + j
    const double j = std::round(s.real() - 1.0 - c);
    if (j >= 0 && std::abs(s - cplx(1.0 + c + j, 0.0)) < 1e-6) throw DomainError("chi_jet: pole of chi");
    auto refl = chi_jet(spec, 1.0 - s, r);
    for (int i = 1; i <= r; i += 2) refl.values[i] = -refl.values[i];
    auto out = reciprocal_jet(refl);
    out.center = s;
    return out;
  }
  DerivativeJet lj{s, std::vector<cplx>(static_cast<std::size_t>(r) + 1, 0.0)};
  lj.values[0] = (2.0 * s - 1.0) * kLog2Pi;
  if (r >= 1) lj.values[1] = 2.0 * kLog2Pi;
  add_log_gamma(lj, 1.0 - s + c, -1.0, 1.0);
  const double eps = spec.sign();
  if (s.real() + c >= 0.5) {
    add_log_gamma(lj, s + c, 1.0, -1.0);
    auto out = exp_jet(lj);
    for (auto& v : out.values) v *= eps;
    return out;
  }
  // 1/Gamma(s+c) = Gamma(1-s-c) sin(pi(s+c)) / pi, with sin(pi z) = e^{-i pi z} (e^{2 pi i z} - 1) / (2i)
  add_log_gamma(lj, 1.0 - s - c, -1.0, 1.0);
  const cplx z = s + c;
  const cplx I(0.0, 1.0);
  lj.values[0] += -std::log(pi) - I * pi * z;
  if (r >= 1) lj.values[1] += -I * pi;
  DerivativeJet sj{s, std::vector<cplx>(static_cast<std::size_t>(r) + 1)};
  const cplx e2 = std::exp(2.0 * pi * I * z);
  sj.values[0] = (e2 - 1.0) / (2.0 * I);
  cplx p = 1.0;
  for (int i = 1; i <= r; ++i) {
    p *= 2.0 * pi * I;
    sj.values[i] = p * e2 / (2.0 * I);
  }
  auto out = product_jet(exp_jet(lj), sj);
  for (auto& v : out.values) v *= eps;
  return out;
}

// ---------------------------------------------------------------------------
// rotated-ray grids
//
// With y = e^{x + i phi}, phi = pi/2 - theta and w = s + c,
//   e^{-i phi w} Lambda(s) = int_R g(x) e^{w x} dx,  g(x) = f(i e^{x + i phi}),
// and g(-x) = eps e^{k x} e^{-i k phi} conj(g(x)) from the modular relation.
// Rotating by phi cancels the e^{-pi |t| / 2} decay of the gamma factor, which would
// otherwise be produced by cancellation in the integral.

struct LFunctionEvaluator::Grid {
  double theta = 0.0;
  double phi = 0.0;
  double h = 0.0;
  long j_min = 0;
  std::vector<cplx> G;  // g(x_j), x_j = (j_min + i) h
  std::vector<double> x;
};

namespace {

double level_theta(int level) { return (pi / 2) * std::pow(2.0, -0.5 * level); }

}  // namespace

const LFunctionEvaluator::Grid& LFunctionEvaluator::grid_for(int level) const {
  std::call_once(grid_once_[level], [&] {
    auto grid = std::make_unique<Grid>();
    const int k = weight();
    const double c = shift();
    const double theta = level_theta(level);
    const double phi = pi / 2 - theta;
    const double h = pi * theta / (45.0 + k * (0.25 + 0.5 * std::log(2.0 / theta)));
    grid->theta = theta;
    grid->phi = phi;
    grid->h = h;
    const cplx rot = std::polar(1.0, phi);
    const std::size_t n_avail = table_->length();
    // growth exponent covering both halves and every sigma in [kSigmaLo, kSigmaHi]
    const double alpha = std::max(kSigmaHi + c, k - kSigmaLo - c);

    const auto g_pos = [&](double x) -> cplx {
      const cplx ell = -2.0 * pi * std::exp(x) * rot;  // log of z = q-parameter
      const double decay = -ell.real();
      const double n_peak = c / decay;
      cplx sum = 0.0;
      double mass = 0.0;
      cplx zn = 1.0;
      const cplx z = std::exp(ell);
      for (std::size_t n = 1;; ++n) {
        if (n > n_avail) throw ContractError("coefficient table too short for the completed regime");
        zn = (n % 32 == 0) ? std::exp(static_cast<double>(n) * ell) : zn * z;
        const cplx term = table_->a_double(n) * zn;
        sum += term;
        mass += std::abs(term);
        if (static_cast<double>(n) > n_peak && std::abs(term) < 1e-20 * mass) break;
      }
      return sum;
    };

    std::vector<cplx> pos;
    double peak = 0.0;
    for (long j = 0;; ++j) {
      const double x = j * h;
      const cplx G = g_pos(x);
      pos.push_back(G);
      const double size = std::abs(G) * std::exp(alpha * x) * std::pow(1.0 + x, kMomentMax);
      peak = std::max(peak, size);
      if (2 * pi * std::exp(x) * std::sin(theta) > alpha + kMomentMax && size < 1e-24 * peak) break;
    }
    const long J = static_cast<long>(pos.size()) - 1;
    grid->j_min = -J;
    grid->G.resize(2 * J + 1);
    grid->x.resize(2 * J + 1);
    const double eps = sign();
    const cplx phase = std::polar(1.0, -k * phi);
    for (long j = -J; j <= J; ++j) {
      const double x = j * h;
      grid->x[j + J] = x;
      if (j >= 0)
        grid->G[j + J] = pos[j];
      else
        grid->G[j + J] = eps * std::exp(-k * x) * phase * std::conj(pos[-j]);
    }
    grids_[level] = std::move(grid);
  });
  return *grids_[level];
}

// ---------------------------------------------------------------------------

namespace {

// h sum G_j x_j^r e^{w x_j}, r = 0..m, with an error estimate from the even-node (2h) subsum
std::pair<std::vector<cplx>, std::vector<double>> trapezoid_moments(const LFunctionEvaluator::Grid& grid, cplx w,
                                                                    int m, bool ext) {
  const std::size_t nn = grid.G.size();
  std::vector<cplx> full(m + 1, 0.0), even(m + 1, 0.0);
  std::vector<Acc<long double>> full_ext(ext ? m + 1 : 0);
  std::vector<double> mass(m + 1, 0.0);
  const cplx step = std::exp(w * grid.h);
  cplx ew = 0.0;
  for (std::size_t i = 0; i < nn; ++i) {
    const double x = grid.x[i];
    ew = (i % 64 == 0) ? std::exp(w * x) : ew * step;
    cplx term = grid.G[i] * ew;
    const bool is_even = ((grid.j_min + static_cast<long>(i)) % 2) == 0;
    double a = std::abs(term);
    for (int j = 0; j <= m; ++j) {
      if (ext)
        full_ext[j].add(term);
      else
        full[j] += term;
      if (is_even) even[j] += term;
      mass[j] += a;
      term *= x;
      a *= std::abs(x);
    }
  }
  std::vector<cplx> A(m + 1);
  std::vector<double> errA(m + 1);
  for (int j = 0; j <= m; ++j) {
    A[j] = grid.h * (ext ? full_ext[j].get() : full[j]);
    const cplx coarse = 2 * grid.h * even[j];
    const double M = std::max(grid.h * mass[j], std::numeric_limits<double>::min());
    const double d = std::abs(A[j] - coarse);
    // trapezoid error squares when h halves: err(h) ~ err(2h)^2 / scale
    errA[j] = d * d / M + 8 * kEps * M;
  }
  return {A, errA};
}

// level whose angle is nearest (sigma + c) / t; that choice keeps the integrand within a
// modest factor of the result
int level_for(cplx s, double c, int levels) {
  const double t = s.imag();
  const double target = t > 0 ? std::min(pi / 2, (std::max(s.real(), 0.5) + c) / t) : pi / 2;
  return std::clamp(static_cast<int>(std::lround(2.0 * std::log2((pi / 2) / target))), 0, levels - 1);
}

}  // namespace

LFunctionEvaluator::LFunctionEvaluator(std::shared_ptr<const CoefficientTable> table, EvaluatorOptions options)
    : table_(std::move(table)), options_(options) {
  if (!table_) throw ContractError("evaluator needs a coefficient table");
  const std::size_t n = table_->length();
  log_n_.resize(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) log_n_[i] = std::log(static_cast<double>(i));
  std::vector<bool> composite(n + 1, false);
  for (std::size_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    primes_.push_back(p);
    for (std::size_t q = p * p; q <= n; q += p) composite[q] = true;
  }
}

LFunctionEvaluator::~LFunctionEvaluator() = default;

std::array<std::uint64_t, 3> LFunctionEvaluator::regime_counts() const {
  return {regime_calls_[0].load(), regime_calls_[1].load(), regime_calls_[2].load()};
}

void LFunctionEvaluator::reset_regime_counts() const {
  for (auto& c : regime_calls_) c.store(0);
}

void LFunctionEvaluator::check_m(int m) const {
  if (m < 0 || m > options_.max_m + 1)
    throw ContractError("derivative order " + std::to_string(m) + " outside [0, " +
                        std::to_string(options_.max_m + 1) + "]");
}

// ---------------------------------------------------------------------------
// series regime

std::size_t LFunctionEvaluator::series_length(double sigma, int m) const {
  const std::size_t len = table_->length();
  const double lead = (m == 0) ? 1.0
                               : std::max(1e-300, std::abs(table_->lambda(std::max<std::size_t>(table_->n_f(), 2))) *
                                                      std::pow(std::log(std::max<std::size_t>(table_->n_f(), 2)), m) *
                                                      std::pow(static_cast<double>(std::max<std::size_t>(table_->n_f(), 2)), -sigma));
  const double tol = options_.series_rel_tolerance * lead;
  // the tail bound needs (log u)^m u^{-sigma} decreasing past N
  const double n_min = std::max(8.0, std::exp(static_cast<double>(m) / sigma) + 1.0);
  const auto ok = [&](double N) { return divisor_tail_bound(N, sigma, m) <= tol; };
  double lo = n_min;
  if (ok(lo)) return static_cast<std::size_t>(lo);
  double hi = lo;
  while (!ok(hi)) {
    hi *= 2;
    if (hi >= static_cast<double>(len)) return len;
  }
  lo = hi / 2;
  while (hi - lo > 1.0) {
    const double mid = std::floor(0.5 * (lo + hi));
    (ok(mid) ? hi : lo) = mid;
  }
  return static_cast<std::size_t>(hi);
}

std::vector<EvalResult> LFunctionEvaluator::series_jet(cplx s, int m) const {
  const double sigma = s.real();
  if (sigma < 1.0 + options_.series_margin)
    throw RegimeError("series regime needs Re s >= " + std::to_string(1.0 + options_.series_margin));
  const std::size_t N = series_length(sigma, m);
  const bool ext = options_.precision == Precision::extended;
  std::vector<Acc<long double>> acc_ext(ext ? m + 1 : 0);
  std::vector<cplx> acc(m + 1, 0.0);
  std::vector<double> mass(m + 1, 0.0);
  for (std::size_t n = 1; n <= N; ++n) {
    const double lam = table_->lambda(n);
    if (lam == 0.0) continue;
    const double ln = log_n_[n];
    const double size = std::abs(lam) * std::exp(-sigma * ln);
    cplx term = lam * std::polar(std::exp(-sigma * ln), -s.imag() * ln);
    double a = size;
    for (int j = 0; j <= m; ++j) {
      if (ext)
        acc_ext[j].add(term);
      else
        acc[j] += term;
      mass[j] += a;
      term *= -ln;
      a *= ln;
    }
  }
  std::vector<EvalResult> out(m + 1);
  const double Nd = static_cast<double>(N);
  for (int j = 0; j <= m; ++j) {
    out[j].value = ext ? acc_ext[j].get() : acc[j];
    const double tail = divisor_tail_bound(Nd, sigma, j);
    out[j].error_estimate = tail + 8 * kEps * mass[j];
    out[j].regime = Regime::series;
  }
  return out;
}

EvalResult LFunctionEvaluator::dirichlet_eval(cplx s, int m) const {
  check_m(m);
  return series_jet(s, m).back();
}

EvalResult LFunctionEvaluator::euler_product_eval(cplx s, std::size_t P) const {
  const double sigma = s.real();
  if (sigma < 1.5) throw RegimeError("euler_product_eval needs Re s >= 1.5");
  if (P > table_->length()) throw ContractError("euler_product_eval: prime bound beyond the table");
  cplx prod = 1.0;
  for (std::size_t p : primes_) {
    if (p > P) break;
    const cplx ps = std::exp(-s * log_n_[p]);
    prod *= 1.0 - table_->lambda(p) * ps + ps * ps;
  }
  EvalResult r;
  r.value = 1.0 / prod;
  // |log factor| <= 2 p^-sigma / (1 - p^-sigma); summed over all integers above P
  const double Pd = static_cast<double>(std::max<std::size_t>(P, 2));
  const double tail = 2.0 * std::pow(Pd, 1.0 - sigma) / (sigma - 1.0) / (1.0 - std::pow(Pd, -sigma));
  r.error_estimate = std::abs(r.value) * std::expm1(tail) + 16 * kEps * std::abs(r.value);
  r.regime = Regime::series;
  return r;
}

// ---------------------------------------------------------------------------
// completed regime

EvalResult LFunctionEvaluator::completed_derivative_incomplete_gamma(cplx s, int m) const {
  check_m(m);
  const double c = shift();
  const double eps = sign();
  const double sg = (m % 2 == 0) ? 1.0 : -1.0;
  cplx sum = 0.0;
  double last = 0.0;
  std::size_t n = 1;
  const std::size_t n_cap = std::min<std::size_t>(table_->length(), 80);
  for (; n <= n_cap; ++n) {
    const double x = 2 * pi * static_cast<double>(n);
    const cplx term =
        table_->a_double(n) * (log_weighted_incomplete(s + c, x, m) + sg * eps * log_weighted_incomplete(c + 1.0 - s, x, m));
    sum += term;
    last = std::abs(term);
    if (n >= 3 && last < 1e-17 * std::abs(sum)) break;
    if (n >= 3 && last == 0.0) break;
  }
  if (n > n_cap && last >= 1e-17 * std::abs(sum)) throw ContractError("coefficient table too short for Lambda");
  EvalResult r;
  r.value = sum;
  r.error_estimate = last + 1e-14 * std::abs(sum);
  r.regime = Regime::completed;
  return r;
}

std::vector<EvalResult> LFunctionEvaluator::completed_jet(cplx s_in, int m) const {
  check_m(m);
  if (s_in.real() < kSigmaLo || s_in.real() > kSigmaHi)
    throw RegimeError("completed regime serves " + std::to_string(kSigmaLo) + " <= Re s <= " + std::to_string(kSigmaHi));
  const bool flip = s_in.imag() < 0;
  const cplx s = flip ? std::conj(s_in) : s_in;
  const double c = shift();
  const cplx w = s + c;
  const Grid& grid = grid_for(level_for(s, c, kLevels));

  const auto [A, errA] = trapezoid_moments(grid, w, m, options_.precision == Precision::extended);
  // Lambda^(j) = sum_i binom(j,i) (i phi)^{j-i} e^{i phi w} A^(i)
  const cplx I(0.0, 1.0);
  const cplx rot = std::exp(I * grid.phi * w);
  const double arot = std::abs(rot);
  std::vector<EvalResult> out(m + 1);
  for (int j = 0; j <= m; ++j) {
    cplx v = 0.0;
    double e = 0.0;
    for (int i = 0; i <= j; ++i) {
      const double b = binom(j, i) * std::pow(grid.phi, j - i);
      v += b * std::pow(I, j - i) * A[i];
      e += b * errA[i];
    }
    out[j].value = rot * v;
    out[j].error_estimate = arot * e;
    if (flip) out[j].value = std::conj(out[j].value);
    out[j].regime = Regime::completed;
  }
  return out;
}

EvalResult LFunctionEvaluator::completed_derivative(cplx s, int m) const { return completed_jet(s, m).back(); }

std::vector<EvalResult> LFunctionEvaluator::completed_L_jet(cplx s_in, int m) const {
  check_m(m);
  if (s_in.real() < kSigmaLo || s_in.real() > kSigmaHi)
    throw RegimeError("completed regime serves " + std::to_string(kSigmaLo) + " <= Re s <= " + std::to_string(kSigmaHi));
  const bool flip = s_in.imag() < 0;
  const cplx s = flip ? std::conj(s_in) : s_in;
  const double c = shift();
  const cplx w = s + c;
  const Grid& grid = grid_for(level_for(s, c, kLevels));

  const auto [A, errA] = trapezoid_moments(grid, w, m, options_.precision == Precision::extended);
  // E = exp(i phi w + w log 2 pi - log Gamma(w)); L^(j) = sum_i binom(j,i) A^(i) E^(j-i)
  const cplx I(0.0, 1.0);
  const auto pg = polygamma_jet(w, m);
  DerivativeJet lj{s, std::vector<cplx>(m + 1)};
  for (int j = 0; j <= m; ++j) lj.values[j] = -pg.values[j];
  lj.values[0] += (I * grid.phi + kLog2Pi) * w;
  if (m >= 1) lj.values[1] += I * grid.phi + kLog2Pi;
  const auto E = exp_jet(lj);
  const double e_rel = 8 * kEps * (std::abs(lj.values[0]) + std::abs(pg.values[0]) + 1.0);

  std::vector<EvalResult> out(m + 1);
  for (int j = 0; j <= m; ++j) {
    cplx v = 0.0;
    double e = 0.0;
    double scale = 0.0;
    for (int i = 0; i <= j; ++i) {
      const double b = binom(j, i);
      const cplx term = b * A[i] * E.values[j - i];
      v += term;
      scale += std::abs(term);
      e += b * errA[i] * std::abs(E.values[j - i]);
    }
    out[j].value = flip ? std::conj(v) : v;
    // E = exp(log E): rounding in log E is a common relative factor on every E^(i), hence on the
    // sum; the rest is rounding in the Leibniz sum itself
    out[j].error_estimate = e + e_rel * std::abs(v) + 16 * kEps * scale;
    out[j].regime = Regime::completed;
  }
  return out;
}

// ---------------------------------------------------------------------------
// reflected regime

std::vector<EvalResult> LFunctionEvaluator::reflected_jet(cplx s, int m) const {
  check_m(m);
  const cplx u = 1.0 - s;
  const auto rhs = (regime_for(u, m) == Regime::series) ? series_jet(u, m) : completed_L_jet(u, m);
  const auto chi = chi_jet(table_->spec(), s, m);
  // chi is exp of a sum of log Gamma values of size ~ |s + c| log |s + c|
  const double a = std::abs(s) + shift() + 1.0;
  const double chi_rel = 16 * kEps * a * std::log(a + 2.0);
  std::vector<EvalResult> out(m + 1);
  for (int j = 0; j <= m; ++j) {
    cplx v = 0.0;
    double e = 0.0, scale = 0.0;
    for (int r = 0; r <= j; ++r) {
      const double b = binom(j, r) * ((r % 2 == 0) ? 1.0 : -1.0);
      const cplx term = b * chi.values[j - r] * rhs[r].value;
      v += term;
      scale += std::abs(term);
      e += std::abs(b) * std::abs(chi.values[j - r]) * rhs[r].error_estimate;
    }
    out[j].value = v;
    out[j].error_estimate = e + chi_rel * scale;
    out[j].regime = Regime::reflected;
  }
  return out;
}

// ---------------------------------------------------------------------------
// dispatch

Regime LFunctionEvaluator::regime_for(cplx s, int m) const {
  if (s.real() >= options_.series_threshold) {
    if (s.real() >= completed_sigma_max() || series_length(s.real(), m) <= options_.series_max_terms)
      return Regime::series;
    return Regime::completed;
  }
  if (s.real() <= options_.sigma_left) return Regime::reflected;
  return Regime::completed;
}

double LFunctionEvaluator::completed_sigma_max() { return kSigmaHi - 0.5; }

std::vector<EvalResult> LFunctionEvaluator::eval_jet_in_regime(cplx s, int m, Regime regime) const {
  check_m(m);
  regime_calls_[static_cast<int>(regime)].fetch_add(1, std::memory_order_relaxed);
  switch (regime) {
    case Regime::series: return series_jet(s, m);
    case Regime::completed: return completed_L_jet(s, m);
    case Regime::reflected: return reflected_jet(s, m);
  }
  throw ContractError("unknown regime");
}

std::vector<EvalResult> LFunctionEvaluator::eval_jet(cplx s, int m) const {
  return eval_jet_in_regime(s, m, regime_for(s, m));
}

EvalResult LFunctionEvaluator::eval_in_regime(cplx s, int m, Regime regime) const {
  return eval_jet_in_regime(s, m, regime).back();
}

EvalResult LFunctionEvaluator::eval(cplx s, int m) const { return eval_jet(s, m).back(); }

cplx LFunctionEvaluator::normalization(cplx s, int m) const {
  if (m == 0) return 1.0;
  const std::size_t nf = table_->n_f();
  if (nf == 0) throw ContractError("normalized_F: table has no n_f");
  const double ln = std::log(static_cast<double>(nf));
  return std::exp(s * ln) / (table_->lambda(nf) * std::pow(-ln, m));
}

EvalResult LFunctionEvaluator::normalized_F_result(cplx s, int m) const {
  auto r = eval(s, m);
  const cplx f = normalization(s, m);
  r.value *= f;
  r.error_estimate *= std::abs(f);
  return r;
}

cplx LFunctionEvaluator::normalized_F(cplx s, int m) const { return normalized_F_result(s, m).value; }

}  // namespace lfz
