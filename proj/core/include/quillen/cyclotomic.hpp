#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace quillen {

/// Integer polynomial coefficients, constant term first.
using Poly = std::vector<mpz_class>;

/// The n-th cyclotomic polynomial.
const Poly& cyclotomic_polynomial(std::uint32_t n);

/// An element of Q(zeta_n), stored reduced modulo Phi_n in the power basis.
class Cyclotomic {
 public:
  explicit Cyclotomic(std::uint32_t n = 1);
  static Cyclotomic rational(std::uint32_t n, const mpq_class& c);
  /// zeta_n^k
  static Cyclotomic root_power(std::uint32_t n, std::int64_t k);

  std::uint32_t conductor() const noexcept { return n_; }
  const std::vector<mpq_class>& coefficients() const noexcept { return c_; }

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  /// Complex conjugation, zeta -> zeta^-1.
  Cyclotomic conjugate() const;
  bool is_zero() const;
  bool is_one() const;
  /// z * conj(z) == 1, decided exactly.
  bool has_unit_modulus() const;

  std::complex<long double> to_complex() const;
  long double magnitude() const;
  std::string to_string(const std::string& var = "z") const;

 private:
  void reduce(std::vector<mpq_class> raw);

  std::uint32_t n_;
  std::vector<mpq_class> c_;  // length phi(n)
};

}  // namespace quillen
