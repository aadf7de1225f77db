#include "quillen/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "quillen/errors.hpp"

namespace quillen {

namespace {

Poly poly_exact_div(Poly num, const Poly& den) {
  // den is monic
  if (num.size() < den.size()) return {};
  Poly q(num.size() - den.size() + 1);
  for (std::size_t i = q.size(); i-- > 0;) {
    q[i] = num[i + den.size() - 1];
    if (q[i] == 0) continue;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= q[i] * den[j];
  }
  return q;
}

}  // namespace

const Poly& cyclotomic_polynomial(std::uint32_t n) {
  if (n == 0) throw InvalidInput("cyclotomic polynomial of index 0");
  static std::mutex mu;
  static std::map<std::uint32_t, Poly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  Poly p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (std::uint32_t d = 1; d < n; ++d)
    if (n % d == 0) p = poly_exact_div(p, cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(p)).first->second;
}

Cyclotomic::Cyclotomic(std::uint32_t n) : n_(n) {
  c_.assign(cyclotomic_polynomial(n).size() - 1, mpq_class(0));
}

Cyclotomic Cyclotomic::rational(std::uint32_t n, const mpq_class& c) {
  Cyclotomic z(n);
  z.c_[0] = c;
  return z;
}

Cyclotomic Cyclotomic::root_power(std::uint32_t n, std::int64_t k) {
  std::int64_t e = k % static_cast<std::int64_t>(n);
  if (e < 0) e += n;
  std::vector<mpq_class> raw(static_cast<std::size_t>(e) + 1, mpq_class(0));
  raw[static_cast<std::size_t>(e)] = 1;
  Cyclotomic z(n);
  z.reduce(std::move(raw));
  return z;
}

void Cyclotomic::reduce(std::vector<mpq_class> raw) {
  const Poly& phi = cyclotomic_polynomial(n_);
  const std::size_t d = phi.size() - 1;
  for (std::size_t i = raw.size(); i-- > d;) {
    if (raw[i] == 0) continue;
    mpq_class q = raw[i];
    for (std::size_t j = 0; j <= d; ++j) raw[i - d + j] -= q * phi[j];
  }
  raw.resize(d, mpq_class(0));
  c_ = std::move(raw);
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  if (o.n_ != n_) throw InvalidInput("cyclotomic conductors differ");
  Cyclotomic z = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) z.c_[i] += o.c_[i];
  return z;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
  if (o.n_ != n_) throw InvalidInput("cyclotomic conductors differ");
  Cyclotomic z = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) z.c_[i] -= o.c_[i];
  return z;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  if (o.n_ != n_) throw InvalidInput("cyclotomic conductors differ");
  std::vector<mpq_class> raw(c_.size() + o.c_.size(), mpq_class(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      if (o.c_[j] != 0) raw[i + j] += c_[i] * o.c_[j];
  }
  Cyclotomic z(n_);
  z.reduce(std::move(raw));
  return z;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

Cyclotomic Cyclotomic::conjugate() const {
  std::vector<mpq_class> raw(n_, mpq_class(0));
  for (std::size_t i = 0; i < c_.size(); ++i) raw[(n_ - i) % n_] += c_[i];
  Cyclotomic z(n_);
  z.reduce(std::move(raw));
  return z;
}

bool Cyclotomic::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclotomic::is_one() const { return *this == rational(n_, 1); }

bool Cyclotomic::has_unit_modulus() const { return (*this * conjugate()).is_one(); }

std::complex<long double> Cyclotomic::to_complex() const {
  std::complex<long double> z = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    long double a = 2 * std::numbers::pi_v<long double> * static_cast<long double>(i) / n_;
    z += static_cast<long double>(c_[i].get_d()) * std::polar(1.0L, a);
  }
  return z;
}

long double Cyclotomic::magnitude() const {
  // |z|^2 is exact in the real subfield; evaluate it, then take the root.
  Cyclotomic sq = *this * conjugate();
  return std::sqrt(std::max(0.0L, sq.to_complex().real()));
}

std::string Cyclotomic::to_string(const std::string& var) const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    mpq_class a = c_[i];
    bool neg = a < 0;
    if (neg) a = -a;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (mono.empty())
      out += a.get_str();
    else if (a == 1)
      out += mono;
    else
      out += a.get_str() + "*" + mono;
  }
  return out.empty() ? "0" : out;
}

}  // namespace quillen
