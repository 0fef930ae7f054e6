// Acceptance run: one PASS/FAIL line per criterion, thresholds fixed below.
// Exit status is 0 when every criterion passes or fails only where a known, documented gap exists.

#include "lfz/coefficients.hpp"
#include "lfz/verify.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using lfz::BigInt;
using lfz::CheckResult;

namespace {

// pinned thresholds
constexpr std::size_t kExactTo = 10000;
constexpr std::size_t kCongruenceTo = 100;
constexpr double kDeligneSlack = 1e-12;  // |lambda| <= d(n) up to rounding of n^{(k-1)/2}
constexpr double kDriftExponent = 0.6 + 0.1;
constexpr double kFunctionalEquation = 1e-7;
constexpr double kOverlapRatio = 1.0;  // |difference| <= summed error estimates
constexpr double kChiProduct = 1e-9;
constexpr double kBell = 1e-6;
constexpr double kZeroFreeF = 0.5;
constexpr double kCountDeviation = 3.0;
constexpr double kRoundingGap = 0.01;
constexpr double kLittlewood = 1e-5;
constexpr double kMeanSquareSigma2 = 2.0;
constexpr double kLimitRatio = 0.1;

// the one statement that is false as written: for weight 12, m = 2 the real zero near -30 sits just
// right of -30, leaving (-31, -30) empty; see README
bool known_gap(int criterion, const std::string& failure) {
  return criterion == 6 && failure.rfind("m = 2: ", 0) == 0 && failure.find("real zeros in (-31, -30)") != std::string::npos;
}

struct Line {
  int criterion;
  std::string title;
  bool pass = true;
  int unexplained = 0;
  std::vector<std::string> notes, failures;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
      if (!known_gap(criterion, what)) ++unexplained;
    }
  }
  void note(const std::string& k, double v) {
    std::ostringstream o;
    o.precision(6);
    o << k << "=" << v;
    notes.push_back(o.str());
  }
};

std::string num(double x) {
  std::ostringstream o;
  o.precision(10);
  o << x;
  return o.str();
}

void absorb(Line& l, const CheckResult& c) {
  for (const auto& f : c.failures) l.check(false, f);
}

// ---- independent coefficient oracles ----

using i128 = __int128;
using u128 = unsigned __int128;

// Euler: prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2} over all integers k. Delta = q * (that)^24.
// Arithmetic wraps mod 2^128; |tau(n)| < 2^127 for n <= 10^4 so the result is exact.
std::vector<u128> delta_by_pentagonal(std::size_t N) {
  std::vector<std::pair<std::size_t, u128>> euler;  // sparse
  for (long k = 0;; ++k) {
    bool any = false;
    for (long kk : {k, -k - 1}) {
      const auto e = static_cast<std::size_t>(kk * (3 * kk - 1) / 2);
      if (e < N) {
        euler.emplace_back(e, static_cast<u128>(static_cast<i128>(kk % 2 ? -1 : 1)));
        any = true;
      }
    }
    if (!any) break;
  }
  auto times_euler = [&](const std::vector<u128>& a) {
    std::vector<u128> r(N, 0);
    for (const auto& [e, c] : euler)
      for (std::size_t i = 0; i + e < N; ++i) r[i + e] += c * a[i];
    return r;
  };
  auto square = [N](const std::vector<u128>& a) {
    std::vector<u128> r(N, 0);
    for (std::size_t i = 0; i < N; ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; i + j < N; ++j) r[i + j] += a[i] * a[j];
    }
    return r;
  };
  std::vector<u128> one(N, 0);
  one[0] = 1;
  const auto p24 = square(square(square(times_euler(times_euler(times_euler(one))))));
  std::vector<u128> d(N + 1, 0);
  for (std::size_t n = 1; n <= N; ++n) d[n] = p24[n - 1];
  return d;
}

BigInt to_big(u128 v) {
  const i128 s = static_cast<i128>(v);
  const bool neg = s < 0;
  u128 mag = neg ? static_cast<u128>(-s) : v;
  BigInt b = static_cast<std::uint64_t>(mag >> 64);
  b <<= 64;
  b += static_cast<std::uint64_t>(mag);
  return neg ? BigInt(-b) : b;
}

std::vector<std::uint32_t> smallest_prime_factor(std::size_t N) {
  std::vector<std::uint32_t> spf(N + 1, 0);
  for (std::size_t i = 2; i <= N; ++i)
    if (!spf[i])
      for (std::size_t j = i; j <= N; j += i)
        if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
  return spf;
}

std::vector<std::uint32_t> divisor_count_sieve(std::size_t N) {
  std::vector<std::uint32_t> d(N + 1, 0);
  for (std::size_t i = 1; i <= N; ++i)
    for (std::size_t j = i; j <= N; j += i) ++d[j];
  return d;
}

// ---- criteria ----

Line c1(lfz::Suite& suite) {
  Line l{1, "coefficient exactness"};
  const auto c = suite.coefficients();
  absorb(l, c);
  l.check(c.value("delta_mismatches") == 0, "suite: two Delta constructions disagree");
  l.check(c.value("ramanujan_691_failures") == 0, "suite: congruence mod 691 fails");

  // Delta from the pentagonal-number product against the library's construction
  const auto mine = delta_by_pentagonal(kExactTo);
  const auto lib = lfz::build_delta(kExactTo);
  std::size_t bad = 0;
  for (std::size_t n = 1; n <= kExactTo; ++n)
    if (to_big(mine[n]) != lib[n]) ++bad;
  l.note("pentagonal_mismatches", static_cast<double>(bad));
  l.check(bad == 0, std::to_string(bad) + " coefficients differ from the pentagonal-product Delta");
  l.check(to_big(mine[2]) == -24 && to_big(mine[3]) == 252, "pentagonal-product Delta has wrong leading terms");

  // multiplicativity on every coprime pair and the prime-power recurrence, all weights
  const auto spf = smallest_prime_factor(kExactTo);
  std::size_t pairs = 0, recs = 0;
  for (int k : lfz::EigenformSpec::admissible_weights()) {
    const auto t = suite.table(k);
    std::size_t fails = 0;
    for (std::size_t a = 2; a <= kExactTo; ++a)
      for (std::size_t b = a + 1; a * b <= kExactTo; ++b) {
        if (std::gcd(a, b) != 1) continue;
        ++pairs;
        if (t->a(a * b) != t->a(a) * t->a(b)) ++fails;
      }
    for (std::size_t p = 2; p <= kExactTo; ++p) {
      if (spf[p] != p) continue;
      const BigInt pk = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(k - 1));
      BigInt prev = 1;
      for (std::size_t q = p; q * p <= kExactTo; q *= p) {
        ++recs;
        if (t->a(q * p) != t->a(p) * t->a(q) - pk * prev) ++fails;
        prev = t->a(q);
      }
    }
    l.check(fails == 0, "weight " + std::to_string(k) + ": " + std::to_string(fails) + " Hecke relation failures");
  }
  l.note("coprime_pairs", static_cast<double>(pairs));
  l.note("recurrence_checks", static_cast<double>(recs));

  // tau(n) = sigma_11(n) mod 691
  const auto t12 = suite.table(12);
  for (std::size_t n = 1; n <= kCongruenceTo; ++n) {
    BigInt s = 0;
    for (std::size_t d = 1; d <= n; ++d)
      if (n % d == 0) s += boost::multiprecision::pow(BigInt(d), 11);
    const BigInt r = (t12->a(n) - s) % 691;
    l.check(r == 0, "tau(" + std::to_string(n) + ") not congruent to sigma_11 mod 691");
  }
  return l;
}

Line c2(lfz::Suite& suite) {
  Line l{2, "Deligne bound and Rankin constant"};
  const auto c = suite.deligne_rankin();
  absorb(l, c);
  const std::size_t N = suite.config().table_length;
  const auto d = divisor_count_sieve(N);
  for (int k : lfz::EigenformSpec::admissible_weights()) {
    const auto t = suite.table(k);
    const std::string ks = "_k" + std::to_string(k);
    l.check(t->length() >= N, "weight " + std::to_string(k) + ": table shorter than " + std::to_string(N));
    double worst = 0, sum = 0;
    for (std::size_t n = 1; n <= N; ++n) {
      worst = std::max(worst, std::abs(t->lambda(n)) / d[n]);
      sum += t->lambda(n) * t->lambda(n);
    }
    l.check(worst <= 1 + kDeligneSlack, "weight " + std::to_string(k) + ": |lambda(n)| / d(n) reaches " + num(worst));
    const double drift = c.value("drift_exponent" + ks);
    l.check(drift <= kDriftExponent, "weight " + std::to_string(k) + ": drift exponent " + num(drift));
    const double C = c.value("C_hat" + ks);
    l.check(std::abs(sum / N - C) <= 1e-10 * C, "weight " + std::to_string(k) + ": C_hat disagrees with direct sum");
    if (k == 12) {
      l.note("max_ratio_k12", worst);
      l.note("C_hat_k12", C);
      l.note("drift_exponent_k12", drift);
    }
  }
  return l;
}

Line c3(lfz::Suite& suite) {
  Line l{3, "functional equation"};
  const auto c = suite.functional_equation();
  absorb(l, c);
  const double r = c.value("max_relative_residual");
  l.note("max_relative_residual", r);
  l.check(r <= kFunctionalEquation, "residual " + num(r));
  return l;
}

Line c4(lfz::Suite& suite) {
  Line l{4, "regime cross-validation"};
  const auto c = suite.regime_overlap();
  absorb(l, c);
  for (const char* band : {"series_completed_low", "series_completed_high", "completed_reflected"}) {
    const double r = c.value(std::string(band) + "_max_diff_over_error");
    l.note(std::string(band) + "_diff_over_error", r);
    l.check(r <= kOverlapRatio, std::string(band) + ": difference exceeds error estimates by " + num(r));
  }
  const double chi = c.value("chi_product_max_deviation");
  l.note("chi_product", chi);
  l.check(chi <= kChiProduct, "chi(s) chi(1-s) deviates by " + num(chi));
  return l;
}

Line c5(lfz::Suite& suite) {
  Line l{5, "Bell-polynomial derivative engine"};
  const auto c = suite.bell_engine();
  absorb(l, c);
  for (const char* k : {"max_relative_error_finite_difference", "max_relative_error_cauchy"}) {
    const double v = c.value(k);
    l.note(k, v);
    l.check(v <= kBell, std::string(k) + " = " + num(v));
  }
  return l;
}

Line c6(lfz::Suite& suite) {
  Line l{6, "zero-free half-plane and real zeros"};
  const auto c = suite.zero_free_and_real();
  absorb(l, c);
  for (int m = 0; m <= 2; ++m) {
    const std::string ms = "_m" + std::to_string(m);
    const double sr = c.value("sigma_right" + ms);
    const double f = c.value("grid_max_abs_F_minus_1" + ms);
    l.note("sigma_right" + ms, sr);
    l.note("empirical_alpha" + ms, c.value("empirical_alpha" + ms));
    l.check(std::isfinite(sr), "m = " + std::to_string(m) + ": no certified abscissa");
    l.check(f <= kZeroFreeF, "m = " + std::to_string(m) + ": |F - 1| = " + num(f));
    // the per-interval failures come through absorb()
    if (c.value("intervals_not_one" + ms) == 0) continue;
  }
  return l;
}

Line c7(lfz::Suite& suite) {
  Line l{7, "zero counts against the main term"};
  const auto c = suite.zero_counts();
  absorb(l, c);
  for (int m : {1, 2}) {
    const std::string ms = "_m" + std::to_string(m);
    for (int T = 20; T <= 100; T += 10) (void)c.value("N" + ms + "_T" + std::to_string(T));  // every height was counted
    const double dev = c.value("max_deviation_over_logT" + ms), diff = c.value("max_difference_deviation_over_logT" + ms);
    l.note("max_dev_over_logT" + ms, dev);
    l.note("max_diff_dev_over_logT" + ms, diff);
    l.check(dev <= kCountDeviation, "m = " + std::to_string(m) + ": deviation / log T = " + num(dev));
    l.check(diff <= kCountDeviation, "m = " + std::to_string(m) + ": difference deviation / log T = " + num(diff));
  }
  const double gap = c.value("max_rounding_gap");
  l.note("max_rounding_gap", gap);
  l.check(gap <= kRoundingGap, "winding totals " + num(gap) + " from integers");
  return l;
}

Line c8(lfz::Suite& suite) {
  Line l{8, "Littlewood identity"};
  const auto c = suite.littlewood();
  absorb(l, c);
  bool zero_free = false;
  for (int i = 1; i <= 5; ++i) {
    const std::string p = "rect" + std::to_string(i);
    const double s = c.value(p + "_scaled_discrepancy");
    l.check(s <= kLittlewood, p + ": scaled discrepancy " + num(s));
    if (c.value(p + "_zeros") == 0) zero_free = true;
  }
  l.check(zero_free, "no zero-free rectangle among the five");
  l.note("max_scaled_discrepancy", c.value("max_scaled_discrepancy"));
  return l;
}

Line c9(lfz::Suite& suite) {
  Line l{9, "mean squares"};
  const auto c = suite.mean_squares();
  absorb(l, c);
  for (int m = 0; m <= 2; ++m) {
    const std::string ms = "_m" + std::to_string(m);
    const double d2 = c.value("sigma2_max_abs_difference" + ms);
    l.check(d2 <= kMeanSquareSigma2, "m = " + std::to_string(m) + ": sigma = 2 difference " + num(d2));
    for (const char* s : {"0.75", "1"}) {
      const std::string b = std::string("sigma") + s;
      const double first = c.value(b + "_first_abs_normalized" + ms), worst = c.value(b + "_max_abs_normalized" + ms);
      l.check(worst <= 1.5 * first + 1, "m = " + std::to_string(m) + ", sigma = " + s + ": normalized difference grows");
    }
    const double r = c.value("limit_ratio_sigma0.51" + ms);
    l.note("limit_ratio" + ms, r);
    l.check(std::abs(r - 1) <= kLimitRatio, "m = " + std::to_string(m) + ": limit ratio " + num(r));
  }
  l.note("sigma0.75_max_abs_normalized_m2", c.value("sigma0.75_max_abs_normalized_m2"));
  return l;
}

Line c10(lfz::Suite& suite) {
  Line l{10, "zero density against the explicit bound"};
  const auto c = suite.density();
  absorb(l, c);
  double tightest = 1e300;
  for (int m : {0, 1})
    for (int T : {40, 80})
      for (const char* s : {"0.55", "0.65", "0.75", "0.85", "0.95"}) {
        const std::string p = std::string("sigma") + s + "_m" + std::to_string(m) + "_T" + std::to_string(T);
        const double n = c.value(p + "_count"), b = c.value(p + "_bound");
        l.check(n <= b, p + ": " + num(n) + " zeros against bound " + num(b));
        tightest = std::min(tightest, b - n);
      }
  l.note("least_margin", tightest);
  l.note("slack_logT", c.value("slack_logT"));
  return l;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int shell(const std::string& cmd) {
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

Line c11(const fs::path& cache) {
  Line l{11, "deterministic verify reports"};
  const fs::path work = fs::path(LFZ_ACCEPT_DIR) / "determinism";
  fs::remove_all(work);
  int codes[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path out = work / ("run" + std::to_string(i));
    const std::string cmd = std::string("'") + LFZ_BIN + "' verify --cache '" + cache.string() + "' --out '" + out.string() +
                            "' > '" + (work / ("stdout" + std::to_string(i))).string() + "' 2>&1";
    fs::create_directories(work);
    codes[i] = shell(cmd);
  }
  l.check(codes[0] == codes[1], "exit codes differ");
  l.check(codes[0] == 0 || codes[0] == 1, "verify exited with " + std::to_string(codes[0]));
  for (const char* f : {"verify.json", "verify.csv"}) {
    const auto a = slurp(work / "run0" / f), b = slurp(work / "run1" / f);
    l.check(!a.empty(), std::string(f) + " missing");
    l.check(a == b, std::string(f) + " differs between runs");
  }
  l.note("verify_exit_code", codes[0]);
  return l;
}

}  // namespace

// no arguments: every criterion; otherwise only the numbers given
int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > 11) {
      std::cerr << "usage: acceptance [criterion 1..11 ...]\n";
      return 2;
    }
    only.insert(n);
  }
  using clock = std::chrono::steady_clock;
  const fs::path cache = fs::path(LFZ_ACCEPT_DIR) / "cache";
  lfz::SuiteConfig cfg;
  cfg.cache_dir = cache;
  lfz::Suite suite(cfg, [](const std::string& s) { std::cerr << "[acceptance] " << s << "\n"; });

  std::vector<Line> lines;
  int next = 0;
  auto run = [&](auto&& fn) {
    if (++next, !only.empty() && !only.count(next)) return;
    const auto t0 = clock::now();
    Line l = fn();
    l.note("seconds", std::chrono::duration<double>(clock::now() - t0).count());
    lines.push_back(std::move(l));
    const auto& x = lines.back();
    std::cout << "criterion " << x.criterion << " (" << x.title << "): " << (x.pass ? "PASS" : "FAIL");
    for (const auto& n : x.notes) std::cout << " " << n;
    std::cout << "\n";
    for (const auto& f : x.failures) std::cout << "    " << f << "\n";
    std::cout.flush();
  };
  run([&] { return c1(suite); });
  run([&] { return c2(suite); });
  run([&] { return c3(suite); });
  run([&] { return c4(suite); });
  run([&] { return c5(suite); });
  run([&] { return c6(suite); });
  run([&] { return c7(suite); });
  run([&] { return c8(suite); });
  run([&] { return c9(suite); });
  run([&] { return c10(suite); });
  run([&] { return c11(cache); });

  int unexpected = 0, passed = 0;
  for (const auto& l : lines) {
    if (l.pass) ++passed;
    else if (l.unexplained) ++unexpected;
  }
  std::cout << passed << "/" << lines.size() << (lines.size() == 1 ? " criterion passes" : " criteria pass");
  if (passed != static_cast<int>(lines.size()))
    std::cout << "; " << (unexpected ? "unexpected failures" : "remaining failures are the documented gaps");
  std::cout << "\n";
  return unexpected ? 1 : 0;
}
