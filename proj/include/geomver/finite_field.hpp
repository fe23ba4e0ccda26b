#pragma once

// Table-based arithmetic for small finite fields GF(q), q a prime power.
// Non-prime orders use a fixed primitive polynomial per order so that
// coordinates (and hence geometry indices) are reproducible across runs.

#include <cstdint>
#include <vector>

#include "geomver/coxeter.hpp"  // Error

namespace geomver {

class FiniteField {
 public:
  explicit FiniteField(int q);

  int q() const { return q_; }
  int p() const { return p_; }
  int k() const { return k_; }

  int add(int a, int b) const { return add_[a][b]; }
  int sub(int a, int b) const { return add_[a][neg_[b]]; }
  int mul(int a, int b) const { return mul_[a][b]; }
  int neg(int a) const { return neg_[a]; }
  int inv(int a) const;
  int frobenius(int a) const { return frob_[a]; }  // x -> x^p
  int pow(int a, int e) const;

  static bool is_prime_power(int q, int* p_out = nullptr, int* k_out = nullptr);

 private:
  int q_, p_, k_;
  std::vector<std::vector<int>> add_, mul_;
  std::vector<int> neg_, inv_, frob_;
};

}  // namespace geomver
