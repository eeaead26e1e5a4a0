#pragma once

#include <complex>
#include <vector>

namespace wpa {

using Complex = std::complex<double>;

inline Complex ipow(Complex z, int k) {
  Complex r{1.0, 0.0};
  while (k > 0) {
    if (k & 1) r *= z;
    z *= z;
    k >>= 1;
  }
  return r;
}

class ComplexPolynomial {
 public:
  ComplexPolynomial() = default;
  // Trailing zero coefficients are dropped.
  explicit ComplexPolynomial(std::vector<Complex> coeffs);
  static ComplexPolynomial constant(Complex c);
  static ComplexPolynomial monomial(int k, Complex c = 1.0);

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const;
  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  int valuation() const;

  Complex operator()(Complex z) const;
  // S_j(P)(z) for j = 0..degree.
  std::vector<Complex> partial_sums(Complex z) const;

  ComplexPolynomial operator+(const ComplexPolynomial& o) const;
  ComplexPolynomial operator-(const ComplexPolynomial& o) const;
  ComplexPolynomial operator*(Complex s) const;
  ComplexPolynomial shifted(int k) const;  // z^k P(z)
  bool operator==(const ComplexPolynomial& o) const { return coeffs_ == o.coeffs_; }

 private:
  std::vector<Complex> coeffs_;
};

std::vector<Complex> partial_sums_at(const ComplexPolynomial& p, Complex z);

// Cumulative sums a_0 z^0 + ... + a_j z^j for any ring-like coefficient type;
// exact for integer types.
template <class T>
std::vector<T> partial_sums_exact(const std::vector<T>& coeffs, const T& z) {
  std::vector<T> out;
  out.reserve(coeffs.size());
  T acc = T(0);
  T power = T(1);
  for (const T& a : coeffs) {
    acc += a * power;
    out.push_back(acc);
    power *= z;
  }
  return out;
}

}  // namespace wpa
