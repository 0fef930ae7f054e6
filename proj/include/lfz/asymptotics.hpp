#pragma once

// Reference quantities for zero counts, zero density and mean squares, plus the numerics to confront them.

#include "lfz/coefficients.hpp"
#include "lfz/lfunction.hpp"

#include <cstddef>
#include <vector>

namespace lfz {

// (T/pi) log(T/(2 pi e)) - [m >= 1] (T/(2 pi)) log n_f, no domain check.
double main_term_formula(double T, int m, std::size_t n_f);
// Same, DomainError for T < 2 pi e.
double main_term_count(double T, int m, std::size_t n_f);

struct PowerSum {
  double value = 0.0;          // finite part + tail estimate
  double finite_part = 0.0;    // n <= N
  double tail_estimate = 0.0;  // partial summation against C_hat x
  double tail_bound = 0.0;     // uncertainty of the tail estimate
  std::size_t terms = 0;
};

// sum |lambda(n)|^2 (log n)^{2m} n^{-2 sigma}
PowerSum coefficient_power_sum(double sigma, int m, const CoefficientTable& table);
// (2m)! n_f C / (n_f^{2 sigma} (2 sigma - 1)^{2m+1})
double power_sum_leading(double sigma, int m, std::size_t n_f, double C);

struct RankinFit {
  double C_hat = 0.0;           // sum_{n<=N} |lambda|^2 / N at the table end
  double drift_exponent = 0.0;  // slope of log max|A(x) - C_hat x| per dyadic block against log x; 0 without drift
  double max_drift = 0.0;       // max over the fit range of |A(x) - C_hat x|
  double x_lo = 0.0;
  double x_hi = 0.0;
  std::vector<double> block_x;
  std::vector<double> block_drift;
};

// Needs length >= 10^4. Fit range [x_lo, table end].
RankinFit rankin_fit(const CoefficientTable& table, double x_lo = 1e4);

struct MeanSquareReport {
  int m = 0;
  double sigma = 0.0;
  double T = 0.0;
  double numeric_integral = 0.0;
  double quadrature_error = 0.0;
  double reference_main = 0.0;
  double difference = 0.0;
  double predicted_error_order = 1.0;
  double normalized_difference = 0.0;  // difference / predicted_error_order
  bool budget_exhausted = false;
  std::size_t evaluations = 0;
};

// Error order attached to the mean square: 1 (sigma > 1), (log T)^{2m+2} (sigma = 1),
// T^{2(1-sigma)} (log T)^{2m} (1/2 < sigma < 1).
double mean_square_error_order(double sigma, double T, int m);

MeanSquareReport mean_square_numeric(const LFunctionEvaluator& ev, double sigma, double T, int m);
// Reports for several T from one pass over [1, max T].
std::vector<MeanSquareReport> mean_square_numeric(const LFunctionEvaluator& ev, double sigma,
                                                  const std::vector<double>& Ts, int m);

struct DensityConstants {
  double C_f = 0.0;
  std::size_t n_f = 2;
  double lambda_nf = 1.0;
  double slack_logT = 5.0;    // O(log T) replaced by slack_logT * log T
  double inner_constant = 1.0;  // the O(...) inside log(1 + O(...))
};

DensityConstants density_constants(const CoefficientTable& table, int m, double C_f);

struct DensityReport {
  int m = 0;
  double sigma = 0.0;
  double T = 0.0;
  int empirical_count = 0;
  double envelope_zd2 = 0.0;        // the two leading terms
  double explicit_bound_zd1 = 0.0;  // leading terms + slack + log(1 + ...) correction
  double slack = 0.0;
  double correction = 0.0;
  bool pass = false;
};

DensityReport density_envelope(double sigma, double T, int m, const DensityConstants& c, int empirical_count = 0);

}  // namespace lfz
