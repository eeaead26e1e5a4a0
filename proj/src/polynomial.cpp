#include "wpa/polynomial.hpp"

#include <algorithm>

namespace wpa {

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

ComplexPolynomial ComplexPolynomial::constant(Complex c) { return ComplexPolynomial({c}); }

ComplexPolynomial ComplexPolynomial::monomial(int k, Complex c) {
  std::vector<Complex> v(static_cast<std::size_t>(k) + 1);
  v.back() = c;
  return ComplexPolynomial(std::move(v));
}

Complex ComplexPolynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

int ComplexPolynomial::valuation() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != Complex{}) return static_cast<int>(k);
  return -1;
}

Complex ComplexPolynomial::operator()(Complex z) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<Complex> ComplexPolynomial::partial_sums(Complex z) const {
  return partial_sums_exact(coeffs_, z);
}

ComplexPolynomial ComplexPolynomial::operator+(const ComplexPolynomial& o) const {
  std::vector<Complex> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) v[k] += coeffs_[k];
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) v[k] += o.coeffs_[k];
  return ComplexPolynomial(std::move(v));
}

ComplexPolynomial ComplexPolynomial::operator-(const ComplexPolynomial& o) const {
  return *this + o * Complex{-1.0, 0.0};
}

ComplexPolynomial ComplexPolynomial::operator*(Complex s) const {
  std::vector<Complex> v = coeffs_;
  for (auto& c : v) c *= s;
  return ComplexPolynomial(std::move(v));
}

ComplexPolynomial ComplexPolynomial::shifted(int k) const {
  if (is_zero()) return {};
  std::vector<Complex> v(static_cast<std::size_t>(k), Complex{});
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return ComplexPolynomial(std::move(v));
}

std::vector<Complex> partial_sums_at(const ComplexPolynomial& p, Complex z) {
  return p.partial_sums(z);
}

}  // namespace wpa
