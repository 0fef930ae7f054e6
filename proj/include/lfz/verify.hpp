#pragma once

// The checkable content as a batch suite: one check per criterion, observed numbers kept.

#include "lfz/lfunction.hpp"
#include "lfz/zeros.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace lfz {

struct SuiteConfig {
  int weight = 12;  // form used for the zero-side checks (6 to 10)
  std::vector<int> orders{0, 1, 2};
  std::vector<double> heights{20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::vector<double> sigmas{0.55, 0.65, 0.75, 0.85, 0.95};
  std::size_t table_length = 100000;
  Precision precision = Precision::standard;
  int jobs = 1;
  std::filesystem::path cache_dir;  // empty: nothing is cached
  std::uint64_t seed = 1729;

  // ContractError on empty grids, orders outside 0..4, an inadmissible weight or heights outside (0, 100].
  void validate() const;
};

struct CheckResult {
  int criterion = 0;
  std::string id;
  std::string description;
  bool pass = true;
  std::vector<std::pair<std::string, double>> observed;
  std::vector<std::string> failures;  // every failing item, one line each

  void observe(std::string name, double value) { observed.emplace_back(std::move(name), value); }
  void fail(std::string what) {
    pass = false;
    failures.push_back(std::move(what));
  }
  // last value recorded under name; ContractError if absent
  double value(const std::string& name) const;
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  nlohmann::ordered_json provenance;
  bool all_pass() const;
};

using SuiteLog = std::function<void(const std::string&)>;

std::filesystem::path cache_file(const std::filesystem::path& dir, int weight);

// Tables, evaluators and the zero finder are built on first use and shared by the checks.
class Suite {
 public:
  explicit Suite(SuiteConfig config, SuiteLog log = {});
  ~Suite();

  const SuiteConfig& config() const { return config_; }
  std::shared_ptr<const CoefficientTable> table(int weight);
  const LFunctionEvaluator& evaluator(int weight);
  const ZeroFinder& finder();

  CheckResult coefficients();         // 1
  CheckResult deligne_rankin();       // 2
  CheckResult functional_equation();  // 3
  CheckResult regime_overlap();       // 4
  CheckResult bell_engine();          // 5
  CheckResult zero_free_and_real();   // 6
  CheckResult zero_counts();          // 7
  CheckResult littlewood();           // 8
  CheckResult mean_squares();         // 9
  CheckResult density();              // 10

  SuiteReport run_all();

  // Heights used by the mean-square and density checks, cut to the configured T grid.
  std::vector<double> mean_square_heights() const;
  std::vector<double> density_heights() const;

 private:
  void say(const std::string& s) const;

  SuiteConfig config_;
  SuiteLog log_;
  std::map<int, std::shared_ptr<const CoefficientTable>> tables_;
  std::map<int, std::unique_ptr<LFunctionEvaluator>> evaluators_;
  std::unique_ptr<ZeroFinder> finder_;
};

nlohmann::ordered_json to_json(const CheckResult& c);
nlohmann::ordered_json to_json(const SuiteReport& r);

}  // namespace lfz
