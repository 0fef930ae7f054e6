#include "lfz/coefficients.hpp"

#include "lfz/errors.hpp"
#include "lfz/io.hpp"

#include <boost/crc.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace lfz {

namespace {

using u128 = unsigned __int128;

std::string label_for(int k) {
  switch (k) {
    case 12: return "Delta";
    case 16: return "Delta*E4";
    case 18: return "Delta*E6";
    case 20: return "Delta*E4^2";
    case 22: return "Delta*E4*E6";
    case 26: return "Delta*E4^2*E6";
    default: return {};
  }
}

BigInt from_u128(u128 v) {
  BigInt r = static_cast<std::uint64_t>(v >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(v);
  return r;
}

// sigma_r(n) for n <= n_max; exact while sigma_r(n_max) < 2^128 (r <= 5, n_max <= 10^6 is fine).
std::vector<u128> sigma_table(std::size_t n_max, unsigned r) {
  std::vector<u128> s(n_max + 1, 0);
  for (std::size_t d = 1; d <= n_max; ++d) {
    u128 dp = 1;
    for (unsigned i = 0; i < r; ++i) dp *= d;
    for (std::size_t m = d; m <= n_max; m += d) s[m] += dp;
  }
  return s;
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

EigenformSpec::EigenformSpec(int weight) : weight_(weight), label_(label_for(weight)) {
  const auto& ok = admissible_weights();
  if (std::find(ok.begin(), ok.end(), weight) == ok.end())
    throw DomainError("weight " + std::to_string(weight) + " is not one of 12,16,18,20,22,26");
  sign_ = (weight % 4 == 0) ? 1 : -1;
}

const std::vector<int>& EigenformSpec::admissible_weights() {
  static const std::vector<int> w{12, 16, 18, 20, 22, 26};
  return w;
}

// ---------------------------------------------------------------------------

IntegerSeries build_delta(std::size_t n_max) {
  if (n_max < 1) throw DomainError("build_delta needs N >= 1");
  // prod (1-q^n)^3 = sum_j (-1)^j (2j+1) q^{j(j+1)/2}; Delta = q * (that)^8.
  const std::size_t order = n_max - 1;
  IntegerSeries cube(order);
  for (std::size_t j = 0; j * (j + 1) / 2 <= order; ++j)
    cube[j * (j + 1) / 2] = BigInt((j % 2 == 0) ? 1 : -1) * BigInt(2 * j + 1);
  IntegerSeries p = cube;
  for (int i = 0; i < 3; ++i) p = multiply(p, p, order);
  IntegerSeries delta(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) delta[n] = p[n - 1];
  return delta;
}

IntegerSeries build_eisenstein(int weight, std::size_t n_max) {
  if (weight != 4 && weight != 6) throw DomainError("Eisenstein series only for weight 4 or 6");
  const unsigned r = static_cast<unsigned>(weight - 1);
  const BigInt c = weight == 4 ? BigInt(240) : BigInt(-504);
  const auto sig = sigma_table(n_max, r);
  IntegerSeries e(n_max);
  e[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) e[n] = c * from_u128(sig[n]);
  return e;
}

IntegerSeries build_delta_from_eisenstein(std::size_t n_max) {
  const IntegerSeries e4 = build_eisenstein(4, n_max);
  const IntegerSeries e6 = build_eisenstein(6, n_max);
  return (e4.pow(3) - multiply(e6, e6, n_max)).divided_exactly(1728);
}

std::vector<std::uint32_t> divisor_counts(std::size_t n_max) {
  std::vector<std::uint32_t> d(n_max + 1, 0);
  for (std::size_t i = 1; i <= n_max; ++i)
    for (std::size_t m = i; m <= n_max; m += i) ++d[m];
  return d;
}

BigInt divisor_power_sum(std::size_t n, unsigned r) {
  BigInt s = 0;
  for (std::size_t d = 1; d <= n; ++d)
    if (n % d == 0) s += boost::multiprecision::pow(BigInt(d), r);
  return s;
}

// ---------------------------------------------------------------------------

CoefficientTable::CoefficientTable(EigenformSpec spec, std::vector<BigInt> a) : spec_(std::move(spec)) {
  if (a.size() < 2) throw ContractError("coefficient table needs at least a_f(1)");
  a_ = std::move(a);
  a_[0] = 0;
  if (a_[1] != 1) throw DataIntegrityError("eigenform is not normalized: a_f(1) != 1");
  const std::size_t n_max = length();
  lambda_.assign(n_max + 1, 0.0);
  a_dbl_.assign(n_max + 1, 0.0);
  const int half = (spec_.weight() - 2) / 2;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const long double an = a_[n].convert_to<long double>();
    const long double scale = std::pow(static_cast<long double>(n), half) * std::sqrt(static_cast<long double>(n));
    a_dbl_[n] = static_cast<double>(an);
    lambda_[n] = static_cast<double>(an / scale);
  }
  finish();
}

CoefficientTable CoefficientTable::synthetic(EigenformSpec spec, std::vector<double> lambda) {
  if (lambda.size() < 2) throw ContractError("synthetic table needs lambda(1)");
  CoefficientTable t;
  t.spec_ = std::move(spec);
  t.lambda_ = std::move(lambda);
  t.lambda_[0] = 0.0;
  const std::size_t n_max = t.lambda_.size() - 1;
  t.a_.assign(n_max + 1, BigInt(0));
  t.a_dbl_.assign(n_max + 1, 0.0);
  for (std::size_t n = 1; n <= n_max; ++n)
    t.a_dbl_[n] = t.lambda_[n] * std::pow(static_cast<double>(n), t.spec_.shift());
  t.finish();
  return t;
}

void CoefficientTable::finish() {
  const std::size_t n_max = lambda_.size() - 1;
  rankin_partial_.assign(n_max + 1, 0.0);
  long double acc = 0.0L;
  for (std::size_t n = 1; n <= n_max; ++n) {
    acc += static_cast<long double>(lambda_[n]) * lambda_[n];
    rankin_partial_[n] = static_cast<double>(acc);
  }
  n_f_ = 0;
  for (std::size_t n = 2; n <= n_max; ++n) {
    if (lambda_[n] != 0.0) {
      n_f_ = n;
      break;
    }
  }
}

std::size_t detect_nf(const CoefficientTable& table) {
  if (table.length() < 2 || table.n_f() == 0)
    throw ContractError("table too short: no nonzero coefficient beyond n = 1");
  return table.n_f();
}

CoefficientTable build_eigenform(const EigenformSpec& spec, std::size_t n_max) {
  if (n_max < 2) throw DomainError("build_eigenform needs N >= 2");
  IntegerSeries f = build_delta(n_max);
  const int extra = spec.weight() - 12;
  int a4 = 0, b6 = 0;
  for (b6 = 0; b6 * 6 <= extra; ++b6) {
    if ((extra - 6 * b6) % 4 == 0) {
      a4 = (extra - 6 * b6) / 4;
      break;
    }
  }
  if (a4 > 0) f = multiply(f, build_eisenstein(4, n_max).pow(static_cast<unsigned>(a4)), n_max);
  if (b6 > 0) f = multiply(f, build_eisenstein(6, n_max).pow(static_cast<unsigned>(b6)), n_max);
  CoefficientTable table(spec, f.coefficients());
  // cheap structural check; the exhaustive one is check_hecke_relations
  const auto report = check_hecke_relations(table, std::min<std::size_t>(n_max, 500));
  if (!report.ok) throw DataIntegrityError("constructed series is not a Hecke eigenform: " + report.first_failure);
  detect_nf(table);
  return table;
}

std::pair<std::complex<double>, std::complex<double>> satake(const CoefficientTable& table, std::size_t p) {
  if (p > table.length() || !is_prime(p)) throw ContractError("satake needs a prime within table range");
  const double l = table.lambda(p);
  const double disc = l * l - 4.0;
  if (disc <= 0.0) {
    const double im = 0.5 * std::sqrt(-disc);
    return {{0.5 * l, im}, {0.5 * l, -im}};
  }
  // real pair; pick the stable root first
  const double big = 0.5 * (l + std::copysign(std::sqrt(disc), l));
  return {{big, 0.0}, {1.0 / big, 0.0}};
}

DeligneReport deligne_check(const CoefficientTable& table) {
  const auto d = divisor_counts(table.length());
  DeligneReport r;
  for (std::size_t n = 1; n <= table.length(); ++n) {
    const double ratio = std::abs(table.lambda(n)) / d[n];
    if (ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.argmax = n;
    }
    if (ratio > 1.0 + 1e-12)
      throw DataIntegrityError("Deligne bound violated at n = " + std::to_string(n));
  }
  r.checked = table.length();
  return r;
}

RankinEstimate rankin_constant(const CoefficientTable& table, std::size_t x) {
  if (x < 1 || x > table.length()) throw ContractError("rankin_constant: x outside table");
  return {table.rankin_partial(x) / static_cast<double>(x), x < 100};
}

HeckeReport check_hecke_relations(const CoefficientTable& table, std::size_t n_max) {
  n_max = std::min(n_max, table.length());
  HeckeReport r;
  auto fail = [&r](std::string msg) {
    if (r.ok) r.first_failure = std::move(msg);
    r.ok = false;
  };
  for (std::size_t m = 2; m * m <= n_max; ++m) {
    for (std::size_t n = m + 1; m * n <= n_max; ++n) {
      if (std::gcd(m, n) != 1) continue;
      ++r.multiplicative_pairs;
      if (table.a(m * n) != table.a(m) * table.a(n))
        fail("a(" + std::to_string(m * n) + ") != a(" + std::to_string(m) + ")a(" + std::to_string(n) + ")");
    }
  }
  const BigInt one = 1;
  for (std::size_t p = 2; p * p <= n_max; ++p) {
    if (!is_prime(p)) continue;
    const BigInt pk = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(table.spec().weight() - 1));
    std::size_t prev = 1, cur = p;
    while (cur * p <= n_max) {
      ++r.recurrence_checks;
      if (table.a(cur * p) != table.a(p) * table.a(cur) - pk * table.a(prev))
        fail("Hecke recurrence fails at " + std::to_string(cur * p));
      prev = cur;
      cur *= p;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::string record_block(const CoefficientTable& table) {
  std::ostringstream os;
  for (std::size_t n = 1; n <= table.length(); ++n) os << n << ' ' << table.a(n) << '\n';
  return os.str();
}

std::string crc_hex(std::string_view data) {
  boost::crc_32_type crc;
  crc.process_bytes(data.data(), data.size());
  std::ostringstream os;
  os << std::hex << crc.checksum();
  return os.str();
}

}  // namespace

void save_table(const CoefficientTable& table, const std::filesystem::path& path) {
  const std::string records = record_block(table);
  std::ostringstream os;
  os << "# lfz coefficient cache v1\n"
     << "weight " << table.spec().weight() << '\n'
     << "label " << table.spec().label() << '\n'
     << "length " << table.length() << '\n'
     << "checksum " << crc_hex(records) << '\n'
     << records;
  write_atomically(path, os.str());
}

std::optional<CoefficientTable> load_table(const std::filesystem::path& path, const EigenformSpec& spec,
                                           std::size_t min_length, std::string* why) {
  auto reject = [why](std::string reason) -> std::optional<CoefficientTable> {
    if (why) *why = std::move(reason);
    return std::nullopt;
  };
  std::ifstream in(path, std::ios::binary);
  if (!in) return reject("cache file absent");
  std::string magic;
  std::getline(in, magic);
  if (magic != "# lfz coefficient cache v1") return reject("bad header");
  std::string key, label, checksum;
  int weight = 0;
  std::size_t length = 0;
  in >> key >> weight;
  if (key != "weight") return reject("bad header");
  in >> key >> label;
  if (key != "label") return reject("bad header");
  in >> key >> length;
  if (key != "length") return reject("bad header");
  in >> key >> checksum;
  if (key != "checksum") return reject("bad header");
  in.ignore(1);
  if (weight != spec.weight()) return reject("cache is for weight " + std::to_string(weight));
  if (length < min_length) return reject("cache too short");
  std::string records((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (crc_hex(records) != checksum) return reject("checksum mismatch");
  std::istringstream rs(records);
  std::vector<BigInt> a(length + 1, BigInt(0));
  for (std::size_t n = 1; n <= length; ++n) {
    std::size_t idx = 0;
    std::string value;
    if (!(rs >> idx >> value) || idx != n) return reject("malformed record " + std::to_string(n));
    a[n] = BigInt(value);
  }
  a.resize(min_length + 1);
  try {
    return CoefficientTable(spec, std::move(a));
  } catch (const Error& e) {
    return reject(e.what());
  }
}

CoefficientTable load_or_build(const EigenformSpec& spec, std::size_t n_max, const std::filesystem::path& cache,
                               std::vector<std::string>* log) {
  std::string why;
  if (!cache.empty()) {
    if (auto t = load_table(cache, spec, n_max, &why)) {
      if (t->length() == n_max) return std::move(*t);
      // longer file: results must not depend on what happens to be cached
      std::vector<BigInt> a(n_max + 1);
      for (std::size_t n = 1; n <= n_max; ++n) a[n] = t->a(n);
      return CoefficientTable(spec, std::move(a));
    }
    if (log) log->push_back("rebuilding " + spec.label() + " coefficients: " + why);
  }
  CoefficientTable t = build_eigenform(spec, n_max);
  if (!cache.empty()) {
    save_table(t, cache);
    if (log) log->push_back("wrote " + cache.string());
  }
  return t;
}

}  // namespace lfz
