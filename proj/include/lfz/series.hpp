#pragma once

// Exact truncated q-expansions with arbitrary-size integer coefficients.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lfz {

using BigInt = boost::multiprecision::cpp_int;

// Coefficients c_0 .. c_order of sum c_n q^n, everything beyond q^order dropped.
class IntegerSeries {
 public:
  IntegerSeries() = default;
  explicit IntegerSeries(std::size_t order);
  IntegerSeries(std::vector<BigInt> coeffs, std::size_t order);

  std::size_t order() const { return coeffs_.size() - 1; }
  const BigInt& operator[](std::size_t n) const { return coeffs_[n]; }
  BigInt& operator[](std::size_t n) { return coeffs_[n]; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }

  // Number of nonzero coefficients.
  std::size_t support() const;

  IntegerSeries truncated(std::size_t order) const;

  friend IntegerSeries operator+(const IntegerSeries& a, const IntegerSeries& b);
  friend IntegerSeries operator-(const IntegerSeries& a, const IntegerSeries& b);
  friend IntegerSeries operator*(const IntegerSeries& a, const IntegerSeries& b);
  friend IntegerSeries operator*(const BigInt& c, const IntegerSeries& a);
  friend bool operator==(const IntegerSeries& a, const IntegerSeries& b);

  // Exact division of every coefficient; throws DataIntegrityError on a remainder.
  IntegerSeries divided_exactly(const BigInt& d) const;

  IntegerSeries pow(unsigned e) const;

 private:
  std::vector<BigInt> coeffs_{BigInt(0)};
};

// Schoolbook product, skipping zero coefficients of the sparser factor.
IntegerSeries multiply_schoolbook(const IntegerSeries& a, const IntegerSeries& b,
                                  std::size_t order);

// Multimodular NTT product with CRT reconstruction. The number of primes is
// chosen from a coefficient-size bound of the result, so the product is exact.
IntegerSeries multiply_multimodular(const IntegerSeries& a, const IntegerSeries& b,
                                    std::size_t order);

// Dispatching product used by operator*.
IntegerSeries multiply(const IntegerSeries& a, const IntegerSeries& b, std::size_t order);

}  // namespace lfz
