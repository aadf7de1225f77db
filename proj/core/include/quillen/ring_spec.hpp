#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace quillen {

/// Coefficient ring: Z, Z/p, or Z with a finite set of primes inverted.
class RingSpec {
 public:
  enum class Kind { Integers, ModP, Localized };

  RingSpec() = default;
  static RingSpec integers() { return {}; }
  static RingSpec mod_p(std::uint32_t p);
  static RingSpec localized(std::vector<std::uint32_t> primes);
  /// Accepts "Z", "Z/5", "Z[1/2,1/3]".
  static RingSpec parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  std::uint32_t prime() const noexcept { return p_; }
  const std::vector<std::uint32_t>& inverted() const noexcept { return primes_; }
  bool is_field() const noexcept { return kind_ == Kind::ModP; }
  std::string to_string() const;

  /// Brings a coefficient into canonical form (residue in [0, p) for Z/p).
  /// Throws InvalidInput if the value does not lie in the ring.
  void normalize(mpq_class& x) const;
  bool contains(const mpq_class& x) const;

  /// The factor an integer invariant factor contributes over this ring:
  /// |d| over Z, d stripped of inverted primes over Z[S^-1]. Not meaningful over Z/p.
  mpz_class local_factor(const mpz_class& d) const;
  /// True if d is a unit of the ring.
  bool is_unit(const mpz_class& d) const;

  friend bool operator==(const RingSpec& a, const RingSpec& b) = default;

 private:
  Kind kind_ = Kind::Integers;
  std::uint32_t p_ = 0;
  std::vector<std::uint32_t> primes_;
};

bool is_prime(std::uint64_t n);
/// Distinct prime divisors in increasing order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

}  // namespace quillen
