#include "quillen/ring_spec.hpp"

#include <algorithm>
#include <regex>

#include "quillen/errors.hpp"

namespace quillen {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

RingSpec RingSpec::mod_p(std::uint32_t p) {
  if (!is_prime(p)) throw InvalidInput("Z/" + std::to_string(p) + ": modulus is not prime");
  RingSpec r;
  r.kind_ = Kind::ModP;
  r.p_ = p;
  return r;
}

RingSpec RingSpec::localized(std::vector<std::uint32_t> primes) {
  if (primes.empty()) throw InvalidInput("localization needs at least one inverted prime");
  std::sort(primes.begin(), primes.end());
  if (std::adjacent_find(primes.begin(), primes.end()) != primes.end())
    throw InvalidInput("repeated inverted prime");
  for (auto p : primes)
    if (!is_prime(p)) throw InvalidInput("inverted element " + std::to_string(p) + " is not prime");
  RingSpec r;
  r.kind_ = Kind::Localized;
  r.primes_ = std::move(primes);
  return r;
}

RingSpec RingSpec::parse(const std::string& text) {
  static const std::regex mod_re(R"(\s*Z/(\d+)\s*)");
  static const std::regex loc_re(R"(\s*Z\[\s*1/\d+\s*(,\s*1/\d+\s*)*\]\s*)");
  static const std::regex num_re(R"(1/(\d+))");
  std::smatch m;
  if (std::regex_match(text, std::regex(R"(\s*Z\s*)"))) return integers();
  if (std::regex_match(text, m, mod_re)) return mod_p(static_cast<std::uint32_t>(std::stoul(m[1])));
  if (std::regex_match(text, loc_re)) {
    std::vector<std::uint32_t> ps;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), num_re); it != std::sregex_iterator(); ++it)
      ps.push_back(static_cast<std::uint32_t>(std::stoul((*it)[1])));
    return localized(std::move(ps));
  }
  throw InvalidInput("unrecognized ring '" + text + "' (expected Z, Z/p or Z[1/p,...])");
}

std::string RingSpec::to_string() const {
  switch (kind_) {
    case Kind::Integers:
      return "Z";
    case Kind::ModP:
      return "Z/" + std::to_string(p_);
    case Kind::Localized: {
      std::string s = "Z[";
      for (std::size_t i = 0; i < primes_.size(); ++i) s += (i ? ",1/" : "1/") + std::to_string(primes_[i]);
      return s + "]";
    }
  }
  return "?";
}

bool RingSpec::contains(const mpq_class& x) const {
  switch (kind_) {
    case Kind::Integers:
    case Kind::ModP:
      return x.get_den() == 1;
    case Kind::Localized:
      return local_factor(x.get_den()) == 1;
  }
  return false;
}

void RingSpec::normalize(mpq_class& x) const {
  if (kind_ == Kind::ModP) {
    // Denominators prime to p are units of Z/p.
    mpz_class num = x.get_num(), den = x.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), p_)) throw InvalidInput("coefficient not defined in " + to_string());
    mpz_class pz = p_, inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
    mpz_class r = num * inv;
    mpz_fdiv_r_ui(r.get_mpz_t(), r.get_mpz_t(), p_);
    x = r;
    return;
  }
  if (!contains(x)) throw InvalidInput("coefficient " + x.get_str() + " not in " + to_string());
}

mpz_class RingSpec::local_factor(const mpz_class& d) const {
  mpz_class r = abs(d);
  if (kind_ == Kind::Localized && r != 0)
    for (auto p : primes_)
      while (mpz_divisible_ui_p(r.get_mpz_t(), p)) mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
  return r;
}

bool RingSpec::is_unit(const mpz_class& d) const {
  if (kind_ == Kind::ModP) return !mpz_divisible_ui_p(d.get_mpz_t(), p_);
  return local_factor(d) == 1;
}

}  // namespace quillen
