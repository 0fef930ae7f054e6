#pragma once

// Complex gamma-family functions, derivative jets and quadrature on [a, inf).

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace lfz {

using cplx = std::complex<double>;

// G(s), G'(s), ..., G^(r)(s) for a holomorphic G.
struct DerivativeJet {
  cplx center;
  std::vector<cplx> values;

  std::size_t order() const { return values.empty() ? 0 : values.size() - 1; }
};

// Principal branch of log Gamma, continuous on C \ (-inf, 0].
// Upward recurrence to Re s >= 12, then the Stirling series.
cplx log_gamma(cplx s);

// Jet of log Gamma at s: values[0] = log Gamma(s), values[j] = psi^{(j-1)}(s), j = 1..r.
// Requires |arg s| <= pi - delta; throws DomainError otherwise or at a pole.
DerivativeJet polygamma_jet(cplx s, int r, double delta = 0.1);

// psi^{(n)}(s) for any s off the poles (no sector restriction).
cplx polygamma(int n, cplx s);

// Complete Bell polynomials B_0 .. B_r in (G', ..., G^(r)) from jet.values[1..r].
// B_r = F^(r)/F for F = exp(G).
std::vector<cplx> bell_polynomials(const DerivativeJet& jet, int r);
cplx bell_ratio(const DerivativeJet& jet, int r);

// Jet of exp(G) given the jet of G (values[0] must hold G itself).
DerivativeJet exp_jet(const DerivativeJet& log_jet);

// Jet of the product of two holomorphic functions (Leibniz rule); orders truncated to the shorter.
DerivativeJet product_jet(const DerivativeJet& a, const DerivativeJet& b);

struct QuadratureResult {
  cplx value{};
  double error_estimate = 0.0;
  int evaluations = 0;
  bool converged = false;
};

struct DecayingQuadratureOptions {
  int budget = 20000;          // maximal integrand evaluations
  double abs_tolerance = 0.0;  // accept when error <= max(abs, rel * |value|)
  double rel_tolerance = 1e-14;
  double decay_rate = 1.0;  // integrand ~ exp(-decay_rate * y); used to scale the map
};

// Integral over [lower, inf) by the exp-sinh substitution y = lower + exp(pi/2 sinh t)/rate
// with nested trapezoid levels. A budget hit is reported through converged = false.
QuadratureResult integrate_decaying(const std::function<cplx(double)>& integrand, double lower,
                                    const DecayingQuadratureOptions& options = {});

// I_m(w, x) = int_1^inf (log y)^m y^{w-1} e^{-x y} dy, x > 0.
cplx log_weighted_incomplete(cplx w, double x, int m);

}  // namespace lfz
