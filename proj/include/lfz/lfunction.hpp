#pragma once

// L_f^(m)(s) = sum lambda(n) (-log n)^m n^{-s} and its completed / reflected forms.
//
// Three regimes:
//   series     Re s >= series_threshold     truncated Dirichlet series with a d(n) tail bound
//   completed  in between                   trapezoid rule for the Mellin integral of f on a rotated ray
//   reflected  Re s <= sigma_left           L^(m)(s) = sum_r binom(m,r) (-1)^r chi^(m-r)(s) L^(r)(1-s)

#include "lfz/coefficients.hpp"
#include "lfz/special.hpp"

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace lfz {

enum class Regime { series, completed, reflected };

std::string regime_name(Regime r);

struct EvalResult {
  cplx value{};
  double error_estimate = 0.0;
  Regime regime = Regime::series;
};

enum class Precision { standard, extended };

struct EvaluatorOptions {
  double series_threshold = 4.5;  // series regime for Re s >= this
  double sigma_left = 0.0;        // reflected regime for Re s <= this
  double series_margin = 0.25;    // dirichlet_eval refuses Re s < 1 + margin
  double series_rel_tolerance = 1e-13;
  std::size_t series_max_terms = 4096;
  int max_m = 4;
  Precision precision = Precision::standard;
};

class LFunctionEvaluator {
 public:
  explicit LFunctionEvaluator(std::shared_ptr<const CoefficientTable> table, EvaluatorOptions options = {});
  ~LFunctionEvaluator();
  LFunctionEvaluator(const LFunctionEvaluator&) = delete;
  LFunctionEvaluator& operator=(const LFunctionEvaluator&) = delete;

  const CoefficientTable& table() const { return *table_; }
  const EvaluatorOptions& options() const { return options_; }
  int weight() const { return table_->spec().weight(); }
  double shift() const { return table_->spec().shift(); }
  int sign() const { return table_->spec().sign(); }

  // Truncated Dirichlet series; RegimeError below 1 + margin.
  EvalResult dirichlet_eval(cplx s, int m) const;
  // Truncation length the series regime would use at (Re s, m), capped by the table.
  std::size_t series_length(double sigma, int m) const;

  // Euler product over p <= P (P <= table length); an oracle only.
  EvalResult euler_product_eval(cplx s, std::size_t prime_bound) const;

  // Lambda^(m)(s) from incomplete-gamma integrals; practical for |Im s| up to about 8.
  EvalResult completed_derivative_incomplete_gamma(cplx s, int m) const;
  // Lambda^(j)(s), j = 0..m, by the rotated-ray trapezoid rule. error_estimate covers the worst entry.
  std::vector<EvalResult> completed_jet(cplx s, int m) const;
  EvalResult completed_derivative(cplx s, int m) const;

  // Dispatching evaluation of L^(m)(s).
  EvalResult eval(cplx s, int m) const;
  // L^(j)(s) for j = 0..m from a single regime.
  std::vector<EvalResult> eval_jet(cplx s, int m) const;
  EvalResult eval_in_regime(cplx s, int m, Regime regime) const;
  std::vector<EvalResult> eval_jet_in_regime(cplx s, int m, Regime regime) const;
  // Series from series_threshold on, unless its truncation would exceed series_max_terms while the
  // completed grid still covers Re s.
  Regime regime_for(cplx s, int m = 0) const;

  // F(s) = L^(m)(s) n_f^s / (lambda(n_f) (-log n_f)^m); F = L for m = 0.
  cplx normalized_F(cplx s, int m) const;
  EvalResult normalized_F_result(cplx s, int m) const;
  // the factor F / L^(m)
  cplx normalization(cplx s, int m) const;

  // evaluations per regime (series, completed, reflected) since construction or the last reset
  std::array<std::uint64_t, 3> regime_counts() const;
  void reset_regime_counts() const;

  struct Grid;

 private:
  const Grid& grid_for(int level) const;
  static double completed_sigma_max();
  std::vector<EvalResult> series_jet(cplx s, int m) const;
  std::vector<EvalResult> completed_L_jet(cplx s, int m) const;
  std::vector<EvalResult> reflected_jet(cplx s, int m) const;
  void check_m(int m) const;

  std::shared_ptr<const CoefficientTable> table_;
  EvaluatorOptions options_;
  std::vector<double> log_n_;
  std::vector<std::size_t> primes_;

  static constexpr int kLevels = 16;
  mutable std::array<std::once_flag, kLevels> grid_once_;
  mutable std::array<std::unique_ptr<Grid>, kLevels> grids_;
  mutable std::array<std::atomic<std::uint64_t>, 3> regime_calls_{};
};

// int_N^inf (log u)^j u^{-sigma} du, sigma > 1
double log_power_tail(double N, double sigma, int j);
// Upper bound for sum_{n>N} d(n) (log n)^m n^{-sigma}; sigma > 1 and N past the peak of (log u)^m u^{-sigma}.
double divisor_tail_bound(double N, double sigma, int m);

// chi_f and its derivatives: L(s) = chi(s) L(1-s), chi(s) = eps (2 pi)^{2s-1} Gamma(1-s+c) / Gamma(s+c).
DerivativeJet chi_jet(const EigenformSpec& spec, cplx s, int r);

}  // namespace lfz
