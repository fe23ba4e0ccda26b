#include "geomver/finite_field.hpp"

namespace geomver {

namespace {

// Primitive (irreducible) polynomials, coefficients of x^0..x^{k-1} with the
// leading coefficient 1 implicit: x^k = -(c_0 + c_1 x + ...).
// q=4:  x^2 + x + 1      q=8:  x^3 + x + 1      q=9:  x^2 + x + 2
// q=16: x^4 + x + 1      q=25: x^2 + x + 2      q=27: x^3 + 2x + 1
struct PolyEntry {
  int q;
  int coeffs[4];
};
constexpr PolyEntry kPolys[] = {
    {4, {1, 1, 0, 0}},  {8, {1, 1, 0, 0}},  {9, {2, 1, 0, 0}},
    {16, {1, 1, 0, 0}}, {25, {2, 1, 0, 0}}, {27, {1, 2, 0, 0}},
};

}  // namespace

bool FiniteField::is_prime_power(int q, int* p_out, int* k_out) {
  if (q < 2) return false;
  int p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (p * p > q) p = q;  // q prime
  int k = 0, m = q;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  if (m != 1) return false;
  if (p_out) *p_out = p;
  if (k_out) *k_out = k;
  return true;
}

FiniteField::FiniteField(int q) : q_(q) {
  if (!is_prime_power(q, &p_, &k_))
    throw Error("NotPrimePower", "field order must be a prime power");

  // Elements are 0..q-1 read as base-p coefficient vectors.
  auto digits = [&](int a) {
    std::vector<int> d(k_);
    for (int i = 0; i < k_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  };
  auto pack = [&](const std::vector<int>& d) {
    int a = 0;
    for (int i = k_ - 1; i >= 0; --i) a = a * p_ + d[i];
    return a;
  };

  const int* poly = nullptr;
  if (k_ > 1) {
    for (const auto& e : kPolys)
      if (e.q == q) poly = e.coeffs;
    if (!poly) throw Error("NotPrimePower", "no primitive polynomial table for this order");
  }

  add_.assign(q, std::vector<int>(q));
  mul_.assign(q, std::vector<int>(q));
  neg_.resize(q);
  for (int a = 0; a < q; ++a) {
    auto da = digits(a);
    for (int b = 0; b < q; ++b) {
      auto db = digits(b);
      std::vector<int> ds(k_);
      for (int i = 0; i < k_; ++i) ds[i] = (da[i] + db[i]) % p_;
      add_[a][b] = pack(ds);
      // Polynomial product reduced mod the defining polynomial.
      std::vector<int> prod(2 * k_ - 1, 0);
      for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      for (int d = 2 * k_ - 2; d >= k_; --d) {
        int c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < k_; ++i)
          prod[d - k_ + i] = ((prod[d - k_ + i] - c * poly[i]) % p_ + p_ * p_) % p_;
      }
      std::vector<int> dm(prod.begin(), prod.begin() + k_);
      mul_[a][b] = pack(dm);
    }
    std::vector<int> dn(k_);
    for (int i = 0; i < k_; ++i) dn[i] = (p_ - da[i]) % p_;
    neg_[a] = pack(dn);
  }

  inv_.assign(q, -1);
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (mul_[a][b] == 1) inv_[a] = b;

  frob_.resize(q);
  for (int a = 0; a < q; ++a) frob_[a] = pow(a, p_);
}

int FiniteField::inv(int a) const {
  if (a == 0) throw Error("DivisionByZero", "no inverse of 0");
  return inv_[a];
}

int FiniteField::pow(int a, int e) const {
  int r = 1;
  for (int i = 0; i < e; ++i) r = mul_[r][a];
  return r;
}

}  // namespace geomver
