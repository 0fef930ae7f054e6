#pragma once

// Zeros of L^(m), traced on the normalized F (same zero set, tamer dynamic range).

#include "lfz/lfunction.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace lfz {

struct Rectangle {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;

  void validate() const;
  double width() const { return sigma_max - sigma_min; }
  double height() const { return t_max - t_min; }
  cplx center() const { return {0.5 * (sigma_min + sigma_max), 0.5 * (t_min + t_max)}; }
  bool contains(cplx z) const {
    return z.real() > sigma_min && z.real() < sigma_max && z.imag() > t_min && z.imag() < t_max;
  }
};

enum class ZeroMethod { newton, subdivision };
std::string method_name(ZeroMethod m);

struct ZeroRecord {
  cplx location{};
  int m = 0;
  double residual = 0.0;          // |L^(m)(location)|
  double isolation_radius = 0.0;  // disc around location holding no other zero
  ZeroMethod method = ZeroMethod::newton;
  int multiplicity = 1;
  bool flagged = false;  // Newton failed, location from subdivision only
};

// One line per record: "m Re Im residual method"
std::string format_zero_list(const std::vector<ZeroRecord>& zeros);

struct WindingResult {
  int count = 0;
  double total_phase = 0.0;  // radians, counterclockwise
  double rounding_gap = 0.0;  // |total/2pi - count|
  double t_shift = 0.0;       // upward perturbation applied after a boundary-zero suspicion
  std::size_t evaluations = 0;
};

struct CountReport {
  int m = 0;
  double T = 0.0;
  std::optional<double> sigma;
  int computed_count = 0;
  double main_term = 0.0;
  double deviation = 0.0;
  double deviation_over_logT = 0.0;
  double t_shift = 0.0;
  double rounding_gap = 0.0;
  std::size_t evaluations = 0;
};

struct ZeroFreeReport {
  int m = 0;
  double sigma_right = 0.0;    // no zero with Re s >= sigma_right
  double majorant_sum = 0.0;   // certificate value at sigma_right (needs <= 1/2 of the lead)
  double lead = 0.0;           // |lambda(n_f)|, or 1 for m = 0
  std::size_t tabulated = 0;   // terms taken from the table, Deligne tail beyond
  double alpha_left = 0.0;     // left edge of the counting strip
  double delta = 0.0;          // bottom edge of the counting strip
  std::string method = "majorant sum, step 0.05";
  // grid scan of F on Re s = sigma_right, t in [0, 100] step 0.5
  double min_re_F = 0.0;
  double max_abs_F_minus_1 = 0.0;
};

struct LittlewoodReport {
  double sigma = 0.0;
  double sigma_right = 0.0;
  double t_min = 1.0;
  double T = 0.0;
  int m = 0;
  double lhs = 0.0;  // 2 pi sum (Re rho - sigma)
  double rhs = 0.0;  // boundary integrals
  double discrepancy = 0.0;
  double quadrature_error = 0.0;
  std::size_t zeros_used = 0;
  double t_shift = 0.0;
};

struct ZeroOptions {
  double initial_step = 0.25;   // first sampling step along an edge
  double min_segment = 1e-9;    // below this a boundary zero is suspected
  double newton_cell = 1.0;     // Newton is tried once a one-zero cell is this small
  double residual_tolerance = 1e-9;
  double strip_delta = 0.05;    // counting starts at Im s = delta
  double alpha_offset = 1.25;   // alpha = -c - offset
  double max_height = 100.0;
  int jobs = 1;
};

class ZeroFinder {
 public:
  explicit ZeroFinder(const LFunctionEvaluator& ev, ZeroOptions opt = {});

  const LFunctionEvaluator& evaluator() const { return ev_; }
  const ZeroOptions& options() const { return opt_; }

  // Phase increment of F along the segment a -> b.
  double trace_phase(cplx a, cplx b, int m, std::size_t* evaluations = nullptr, double refine = 1.0) const;

  WindingResult winding(const Rectangle& rect, int m) const;
  int winding_count(const Rectangle& rect, int m) const { return winding(rect, m).count; }

  std::vector<ZeroRecord> isolate_zeros(const Rectangle& rect, int m) const;

  ZeroFreeReport zero_free_certify(int m) const;
  // sum_{n>n_f} |lambda(n)| (log n / log n_f)^m (n_f/n)^sigma with the Deligne tail; n_f = 1 for m = 0
  double majorant_sum(double sigma, int m) const;

  // The counting strip [alpha, sigma_right] x [delta, T].
  Rectangle strip(double T, int m) const;
  CountReport count_to_height(double T, int m) const;
  // Several heights sharing slabs.
  std::vector<CountReport> count_to_heights(const std::vector<double>& Ts, int m) const;
  CountReport count_right_of(double sigma, double T, int m) const;

  std::vector<double> real_zero_scan(double a, double b, int m, double step = 0.01) const;

  LittlewoodReport littlewood_check(double sigma, double T, int m, double t_min = 1.0) const;

 private:
  cplx F(cplx s, int m, double* err = nullptr) const;
  double sigma_right(int m) const;

  const LFunctionEvaluator& ev_;
  ZeroOptions opt_;
  mutable std::mutex certify_mu_;
  mutable std::map<int, ZeroFreeReport> certified_;
};


}  // namespace lfz
