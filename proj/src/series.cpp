#include "lfz/series.hpp"

#include "lfz/errors.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <utility>

namespace lfz {

IntegerSeries::IntegerSeries(std::size_t order) : coeffs_(order + 1, BigInt(0)) {}

IntegerSeries::IntegerSeries(std::vector<BigInt> coeffs, std::size_t order)
    : coeffs_(std::move(coeffs)) {
  coeffs_.resize(order + 1, BigInt(0));
}

std::size_t IntegerSeries::support() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c != 0; }));
}

IntegerSeries IntegerSeries::truncated(std::size_t order) const {
  std::vector<BigInt> c(coeffs_.begin(),
                        coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min(order, this->order()) + 1));
  return IntegerSeries(std::move(c), order);
}

IntegerSeries operator+(const IntegerSeries& a, const IntegerSeries& b) {
  const std::size_t order = std::min(a.order(), b.order());
  IntegerSeries r(order);
  for (std::size_t n = 0; n <= order; ++n) r[n] = a[n] + b[n];
  return r;
}

IntegerSeries operator-(const IntegerSeries& a, const IntegerSeries& b) {
  const std::size_t order = std::min(a.order(), b.order());
  IntegerSeries r(order);
  for (std::size_t n = 0; n <= order; ++n) r[n] = a[n] - b[n];
  return r;
}

IntegerSeries operator*(const IntegerSeries& a, const IntegerSeries& b) {
  return multiply(a, b, std::min(a.order(), b.order()));
}

IntegerSeries operator*(const BigInt& c, const IntegerSeries& a) {
  IntegerSeries r(a.order());
  for (std::size_t n = 0; n <= a.order(); ++n) r[n] = c * a[n];
  return r;
}

bool operator==(const IntegerSeries& a, const IntegerSeries& b) { return a.coeffs_ == b.coeffs_; }

IntegerSeries IntegerSeries::divided_exactly(const BigInt& d) const {
  IntegerSeries r(order());
  for (std::size_t n = 0; n <= order(); ++n) {
    BigInt q, rem;
    boost::multiprecision::divide_qr(coeffs_[n], d, q, rem);
    if (rem != 0) throw DataIntegrityError("series coefficient not divisible at q^" + std::to_string(n));
    r[n] = std::move(q);
  }
  return r;
}

IntegerSeries IntegerSeries::pow(unsigned e) const {
  IntegerSeries result(order());
  result[0] = 1;
  IntegerSeries base = *this;
  while (e > 0) {
    if (e & 1U) result = multiply(result, base, order());
    e >>= 1U;
    if (e > 0) base = multiply(base, base, order());
  }
  return result;
}

IntegerSeries multiply_schoolbook(const IntegerSeries& a, const IntegerSeries& b, std::size_t order) {
  const bool a_sparser = a.support() <= b.support();
  const IntegerSeries& sparse = a_sparser ? a : b;
  const IntegerSeries& dense = a_sparser ? b : a;
  IntegerSeries r(order);
  for (std::size_t i = 0; i <= std::min(order, sparse.order()); ++i) {
    if (sparse[i] == 0) continue;
    const std::size_t jmax = std::min(order - i, dense.order());
    for (std::size_t j = 0; j <= jmax; ++j) {
      if (dense[j] != 0) r[i + j] += sparse[i] * dense[j];
    }
  }
  return r;
}

namespace {

// ---- modular arithmetic for NTT primes p = c*2^21 + 1 < 2^31 ----

constexpr unsigned kTwoAdicity = 21;

std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1U) r = r * b % p;
    b = b * b % p;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(r);
}

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct NttPrime {
  std::uint32_t p;
  std::uint32_t root;  // generator of the full multiplicative group
};

std::uint32_t primitive_root(std::uint32_t p) {
  std::vector<std::uint32_t> factors;
  std::uint32_t m = p - 1;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= m; ++d) {
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) factors.push_back(m);
  for (std::uint32_t g = 2;; ++g) {
    bool ok = true;
    for (auto q : factors) {
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

const std::vector<NttPrime>& ntt_primes() {
  static const std::vector<NttPrime> primes = [] {
    std::vector<NttPrime> out;
    for (std::uint32_t c = 1023; c >= 512; --c) {
      const std::uint32_t p = (c << kTwoAdicity) + 1;
      if (is_prime_u32(p)) out.push_back({p, primitive_root(p)});
    }
    return out;
  }();
  return primes;
}

void ntt(std::vector<std::uint32_t>& a, const NttPrime& pr, bool invert) {
  const std::size_t n = a.size();
  const std::uint32_t p = pr.p;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1U;
    for (; j & bit; bit >>= 1U) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1U) {
    std::uint32_t w = pow_mod(pr.root, (p - 1) / len, p);
    if (invert) w = pow_mod(w, p - 2, p);
    std::vector<std::uint32_t> tw(len / 2);
    tw[0] = 1;
    for (std::size_t k = 1; k < len / 2; ++k) tw[k] = static_cast<std::uint32_t>(std::uint64_t(tw[k - 1]) * w % p);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::uint32_t u = a[i + k];
        const std::uint32_t v = static_cast<std::uint32_t>(std::uint64_t(a[i + k + len / 2]) * tw[k] % p);
        a[i + k] = u + v >= p ? u + v - p : u + v;
        a[i + k + len / 2] = u >= v ? u - v : u + p - v;
      }
    }
  }
  if (invert) {
    const std::uint32_t inv_n = pow_mod(n, p - 2, p);
    for (auto& x : a) x = static_cast<std::uint32_t>(std::uint64_t(x) * inv_n % p);
  }
}

std::uint32_t residue(const BigInt& x, std::uint32_t p) {
  if (x == 0) return 0;
  if (boost::multiprecision::msb(abs(x)) < 62) {
    const auto v = x.convert_to<std::int64_t>() % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(v < 0 ? v + p : v);
  }
  const BigInt r = abs(x) % p;
  auto v = r.convert_to<std::uint32_t>();
  if (x < 0 && v != 0) v = p - v;
  return v;
}

std::size_t max_bits(const IntegerSeries& s) {
  std::size_t bits = 0;
  for (const auto& c : s.coefficients())
    if (c != 0) bits = std::max<std::size_t>(bits, boost::multiprecision::msb(abs(c)) + 1);
  return bits;
}

}  // namespace

IntegerSeries multiply_multimodular(const IntegerSeries& a, const IntegerSeries& b, std::size_t order) {
  const std::size_t la = std::min(a.order(), order) + 1;
  const std::size_t lb = std::min(b.order(), order) + 1;
  // |c_n| <= min(la, lb) * max|a| * max|b|; one extra bit for the sign.
  const std::size_t bound_bits =
      max_bits(a) + max_bits(b) + static_cast<std::size_t>(std::bit_width(std::min(la, lb))) + 2;
  const auto& primes = ntt_primes();
  std::size_t k = 0;
  std::size_t modulus_bits = 0;
  while (modulus_bits <= bound_bits) {
    if (k == primes.size()) throw ContractError("series coefficients too large for the NTT prime pool");
    modulus_bits += 30;  // every prime exceeds 2^30
    ++k;
  }
  const std::size_t size = std::bit_ceil(la + lb - 1);
  if (size > (std::size_t{1} << kTwoAdicity)) throw ContractError("series order too large for NTT");

  std::vector<std::vector<std::uint32_t>> residues(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& pr = primes[i];
    std::vector<std::uint32_t> fa(size, 0), fb(size, 0);
    for (std::size_t n = 0; n < la; ++n) fa[n] = residue(a[n], pr.p);
    for (std::size_t n = 0; n < lb; ++n) fb[n] = residue(b[n], pr.p);
    ntt(fa, pr, false);
    ntt(fb, pr, false);
    for (std::size_t n = 0; n < size; ++n) fa[n] = static_cast<std::uint32_t>(std::uint64_t(fa[n]) * fb[n] % pr.p);
    ntt(fa, pr, true);
    fa.resize(order + 1 < size ? order + 1 : size);
    residues[i] = std::move(fa);
  }

  // Garner mixed-radix reconstruction into the symmetric range.
  std::vector<std::vector<std::uint32_t>> inv(k, std::vector<std::uint32_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j) inv[j][i] = pow_mod(primes[j].p % primes[i].p, primes[i].p - 2, primes[i].p);
  BigInt modulus = 1;
  for (std::size_t i = 0; i < k; ++i) modulus *= primes[i].p;
  const BigInt half = modulus / 2;

  IntegerSeries r(order);
  std::vector<std::uint32_t> digits(k);
  const std::size_t produced = residues[0].size();
  for (std::size_t n = 0; n <= order && n < produced; ++n) {
    for (std::size_t i = 0; i < k; ++i) {
      const std::uint32_t p = primes[i].p;
      std::uint64_t x = residues[i][n];
      for (std::size_t j = 0; j < i; ++j) {
        const std::uint64_t vj = digits[j] % p;
        x = (x + p - vj) % p * inv[j][i] % p;
      }
      digits[i] = static_cast<std::uint32_t>(x);
    }
    BigInt acc = digits[k - 1];
    for (std::size_t i = k - 1; i-- > 0;) {
      acc *= primes[i].p;
      acc += digits[i];
    }
    if (acc > half) acc -= modulus;
    r[n] = std::move(acc);
  }
  return r;
}

IntegerSeries multiply(const IntegerSeries& a, const IntegerSeries& b, std::size_t order) {
  const std::size_t sparse = std::min(a.support(), b.support());
  if (sparse * (order + 1) <= 4'000'000 || order < 64) return multiply_schoolbook(a, b, order);
  return multiply_multimodular(a, b, order);
}

}  // namespace lfz
