#pragma once

// Fourier coefficients of the level-1 eigenforms whose cusp space is one-dimensional.

#include "lfz/series.hpp"

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lfz {

// Weight-k normalized eigenform on SL_2(Z), k in {12,16,18,20,22,26}.
class EigenformSpec {
 public:
  explicit EigenformSpec(int weight);

  int weight() const { return weight_; }
  const std::string& label() const { return label_; }
  // (-1)^{k/2}: the root number of the completed L-function.
  int sign() const { return sign_; }
  // (k-1)/2, the shift in the gamma factor.
  double shift() const { return 0.5 * (weight_ - 1); }

  static const std::vector<int>& admissible_weights();

  friend bool operator==(const EigenformSpec&, const EigenformSpec&) = default;

 private:
  int weight_;
  std::string label_;
  int sign_;
};

IntegerSeries build_delta(std::size_t n_max);
// Second, independent route to Delta: (E_4^3 - E_6^2) / 1728.
IntegerSeries build_delta_from_eisenstein(std::size_t n_max);
IntegerSeries build_eisenstein(int weight, std::size_t n_max);

// Exact a_f(1..N) plus normalized lambda_f(n) = a_f(n) / n^{(k-1)/2}. Immutable once built.
class CoefficientTable {
 public:
  CoefficientTable(EigenformSpec spec, std::vector<BigInt> a);

  const EigenformSpec& spec() const { return spec_; }
  std::size_t length() const { return a_.size() - 1; }
  const BigInt& a(std::size_t n) const { return a_[n]; }
  double lambda(std::size_t n) const { return lambda_[n]; }
  const std::vector<double>& lambdas() const { return lambda_; }
  std::size_t n_f() const { return n_f_; }
  // sum_{n <= x} |lambda(n)|^2
  double rankin_partial(std::size_t x) const { return rankin_partial_[x]; }
  // a_f(n) as a double (may be huge, but finite for every tabulated n)
  double a_double(std::size_t n) const { return a_dbl_[n]; }

  // Builds a table from arbitrary real normalized values; used for synthetic tests.
  static CoefficientTable synthetic(EigenformSpec spec, std::vector<double> lambda);

 private:
  CoefficientTable() = default;
  void finish();

  EigenformSpec spec_{12};
  std::vector<BigInt> a_;  // index 0 unused
  std::vector<double> lambda_;
  std::vector<double> a_dbl_;
  std::vector<double> rankin_partial_;
  std::size_t n_f_ = 0;
};

// Delta * E_4^a * E_6^b with 4a + 6b = k - 12; verifies multiplicativity of the result.
CoefficientTable build_eigenform(const EigenformSpec& spec, std::size_t n_max);

// Roots of X^2 - lambda(p) X + 1.
std::pair<std::complex<double>, std::complex<double>> satake(const CoefficientTable& table, std::size_t p);

struct DeligneReport {
  std::size_t checked = 0;
  double max_ratio = 0.0;  // max |lambda(n)| / d(n)
  std::size_t argmax = 1;
};

// Throws DataIntegrityError when |lambda(n)| > d(n) for some tabulated n.
DeligneReport deligne_check(const CoefficientTable& table);

struct RankinEstimate {
  double value = 0.0;  // sum_{n<=x} |lambda|^2 / x
  bool low_confidence = false;
};

RankinEstimate rankin_constant(const CoefficientTable& table, std::size_t x);

std::size_t detect_nf(const CoefficientTable& table);

// d(1..n_max), index 0 unused.
std::vector<std::uint32_t> divisor_counts(std::size_t n_max);
// sigma_r(n) exactly.
BigInt divisor_power_sum(std::size_t n, unsigned r);

// Exact identity checks used by tests and the verify command.
struct HeckeReport {
  std::size_t multiplicative_pairs = 0;
  std::size_t recurrence_checks = 0;
  bool ok = true;
  std::string first_failure;
};

HeckeReport check_hecke_relations(const CoefficientTable& table, std::size_t n_max);

// ---- coefficient cache file ----
//
// Text format:
//   # lfz coefficient cache v1
//   weight <k>
//   label <label>
//   length <N>
//   checksum <crc32 of the record lines, hex>
//   <n> <a_f(n)>            one record per n = 1..N
void save_table(const CoefficientTable& table, const std::filesystem::path& path);

// Returns nothing when the file is absent, malformed, for another form, too short,
// or fails its checksum.
std::optional<CoefficientTable> load_table(const std::filesystem::path& path, const EigenformSpec& spec,
                                           std::size_t min_length, std::string* why = nullptr);

// Loads from the cache when valid, otherwise builds and rewrites it. `log` receives one
// line per event (rebuild reason, write).
CoefficientTable load_or_build(const EigenformSpec& spec, std::size_t n_max, const std::filesystem::path& cache,
                               std::vector<std::string>* log = nullptr);

}  // namespace lfz
