#include "quillen/group_ring.hpp"

#include <cctype>
#include <numeric>

#include "quillen/errors.hpp"
#include "quillen/words.hpp"

namespace quillen {

// ---------------------------------------------------------------- elements

GroupRingElement::GroupRingElement(GroupPtr group, RingSpec ring) : group_(std::move(group)), ring_(std::move(ring)) {
  if (!group_) throw InvalidInput("group ring element without a group");
}

GroupRingElement GroupRingElement::zero(GroupPtr group, RingSpec ring) { return {std::move(group), std::move(ring)}; }

GroupRingElement GroupRingElement::one(GroupPtr group, RingSpec ring) { return basis(std::move(group), 0, std::move(ring)); }

GroupRingElement GroupRingElement::basis(GroupPtr group, Element g, RingSpec ring, Coefficient c) {
  GroupRingElement e(std::move(group), std::move(ring));
  if (g >= e.group_->order()) throw InvalidInput("group element index out of range");
  e.add_term(g, c);
  return e;
}

Coefficient GroupRingElement::coefficient(Element g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? Coefficient(0) : it->second;
}

void GroupRingElement::add_term(Element g, const Coefficient& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(g, c);
  if (!fresh) it->second += c;
  ring_.normalize(it->second);
  if (it->second == 0) terms_.erase(it);
}

bool GroupRingElement::is_integral() const {
  for (const auto& [g, c] : terms_)
    if (c.get_den() != 1) return false;
  return true;
}

std::optional<std::pair<int, Element>> GroupRingElement::as_signed_element() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [g, c] = *terms_.begin();
  if (c == 1) return std::make_pair(1, g);
  if (c == -1 || (ring_.kind() == RingSpec::Kind::ModP && c == ring_.prime() - 1)) return std::make_pair(-1, g);
  return std::nullopt;
}

void GroupRingElement::check_compatible(const GroupRingElement& o) const {
  if (!(ring_ == o.ring_)) throw MixedRings("group ring elements over different rings");
  if (!same_group(group_, o.group_)) throw MixedGroups("group ring elements over different groups");
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  check_compatible(o);
  GroupRingElement r = *this;
  for (const auto& [g, c] : o.terms_) r.add_term(g, c);
  return r;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
  check_compatible(o);
  GroupRingElement r = *this;
  for (const auto& [g, c] : o.terms_) r.add_term(g, -c);
  return r;
}

GroupRingElement GroupRingElement::operator-() const { return scaled(-1); }

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  check_compatible(o);
  GroupRingElement r(group_, ring_);
  for (const auto& [g, a] : terms_)
    for (const auto& [h, b] : o.terms_) r.add_term(group_->mul(g, h), a * b);
  return r;
}

GroupRingElement GroupRingElement::scaled(const Coefficient& c) const {
  GroupRingElement r(group_, ring_);
  for (const auto& [g, a] : terms_) r.add_term(g, a * c);
  return r;
}

bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
  return a.ring_ == b.ring_ && same_group(a.group_, b.group_) && a.terms_ == b.terms_;
}

Coefficient GroupRingElement::augmentation() const {
  Coefficient s = 0;
  for (const auto& [g, c] : terms_) s += c;
  ring_.normalize(s);
  return s;
}

GroupRingElement GroupRingElement::involution() const {
  GroupRingElement r(group_, ring_);
  for (const auto& [g, c] : terms_) r.add_term(group_->inv(g), c);
  return r;
}

GroupRingElement GroupRingElement::mapped(const GroupPtr& target, const std::vector<Element>& map) const {
  GroupRingElement r(target, ring_);
  for (const auto& [g, c] : terms_) r.add_term(map.at(g), c);
  return r;
}

IntVector GroupRingElement::dense() const {
  IntVector v(group_->order());
  for (const auto& [g, c] : terms_) {
    if (c.get_den() != 1) throw InvalidInput("non-integral coefficient where an integer was required");
    v[g] = c.get_num();
  }
  return v;
}

GroupRingElement GroupRingElement::from_dense(GroupPtr group, std::span<const Integer> coeffs, RingSpec ring) {
  GroupRingElement r(std::move(group), std::move(ring));
  for (Element g = 0; g < coeffs.size(); ++g)
    if (coeffs[g] != 0) r.add_term(g, Coefficient(coeffs[g]));
  return r;
}

// ---------------------------------------------------------------- matrices

GroupRingMatrix::GroupRingMatrix(GroupPtr group, RingSpec ring, std::size_t rows, std::size_t cols)
    : group_(std::move(group)), ring_(std::move(ring)), rows_(rows), cols_(cols) {
  if (!group_) throw InvalidInput("group ring matrix without a group");
  data_.assign(rows * cols, GroupRingElement(group_, ring_));
}

GroupRingMatrix GroupRingMatrix::identity(GroupPtr group, std::size_t n, RingSpec ring) {
  GroupRingMatrix m(group, ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = GroupRingElement::one(group, ring);
  return m;
}

GroupRingMatrix GroupRingMatrix::from_integers(GroupPtr group, const IntMatrix& a, RingSpec ring) {
  GroupRingMatrix m(group, ring, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) m(i, j).add_term(0, Coefficient(a(i, j)));
  return m;
}

GroupRingMatrix GroupRingMatrix::operator*(const GroupRingMatrix& o) const {
  if (cols_ != o.rows_) throw InvalidInput("group ring matrix product dimension mismatch");
  if (!(ring_ == o.ring_)) throw MixedRings("matrices over different rings");
  if (!same_group(group_, o.group_)) throw MixedGroups("matrices over different groups");
  GroupRingMatrix r(group_, ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const auto& b = o(k, j);
        if (b.is_zero()) continue;
        auto& t = r(i, j);
        for (const auto& [g, x] : a.terms())
          for (const auto& [h, y] : b.terms()) t.add_term(group_->mul(g, h), x * y);
      }
    }
  return r;
}

GroupRingMatrix GroupRingMatrix::operator+(const GroupRingMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("group ring matrix sum dimension mismatch");
  GroupRingMatrix r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
  return r;
}

GroupRingMatrix GroupRingMatrix::operator-(const GroupRingMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("group ring matrix difference dimension mismatch");
  GroupRingMatrix r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
  return r;
}

bool operator==(const GroupRingMatrix& a, const GroupRingMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool GroupRingMatrix::is_zero() const {
  for (const auto& e : data_)
    if (!e.is_zero()) return false;
  return true;
}

bool GroupRingMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto& e = (*this)(i, j);
      if (i == j ? !(e.terms().size() == 1 && e.coefficient(0) == 1) : !e.is_zero()) return false;
    }
  return true;
}

GroupRingMatrix GroupRingMatrix::transpose() const {
  GroupRingMatrix t(group_, ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

GroupRingMatrix GroupRingMatrix::conjugate_transpose() const {
  GroupRingMatrix t(group_, ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j).involution();
  return t;
}

GroupRingMatrix GroupRingMatrix::row_block(std::size_t first, std::size_t count) const {
  GroupRingMatrix b(group_, ring_, count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) b(i, j) = (*this)(first + i, j);
  return b;
}

GroupRingMatrix GroupRingMatrix::col_block(std::size_t first, std::size_t count) const {
  GroupRingMatrix b(group_, ring_, rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) b(i, j) = (*this)(i, first + j);
  return b;
}

GroupRingMatrix GroupRingMatrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  GroupRingMatrix b(group_, ring_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) b(i, j) = (*this)(rows[i], cols[j]);
  return b;
}

GroupRingMatrix GroupRingMatrix::stacked(const GroupRingMatrix& below) const {
  if (below.cols_ != cols_) throw InvalidInput("stacking matrices with different widths");
  GroupRingMatrix s(group_, ring_, rows_ + below.rows_, cols_);
  std::copy(data_.begin(), data_.end(), s.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(), s.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return s;
}

GroupRingMatrix GroupRingMatrix::beside(const GroupRingMatrix& right) const {
  if (right.rows_ != rows_) throw InvalidInput("joining matrices with different heights");
  GroupRingMatrix s(group_, ring_, rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) s(i, cols_ + j) = right(i, j);
  }
  return s;
}

IntMatrix GroupRingMatrix::augmented() const {
  IntMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      Coefficient a = (*this)(i, j).augmentation();
      if (a.get_den() != 1) throw InvalidInput("non-integral augmentation");
      m(i, j) = a.get_num();
    }
  return m;
}

GroupRingMatrix GroupRingMatrix::mapped(const GroupPtr& target, const std::vector<Element>& map) const {
  GroupRingMatrix m(target, ring_, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k].mapped(target, map);
  return m;
}

GroupRingMatrix block_diagonal(const GroupRingMatrix& a, const GroupRingMatrix& b) {
  if (!same_group(a.group(), b.group())) throw MixedGroups("block sum over different groups");
  if (!(a.ring() == b.ring())) throw MixedRings("block sum over different rings");
  GroupRingMatrix m(a.group(), a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

IntMatrix regular_representation(const GroupRingMatrix& m) {
  const auto& g = *m.group();
  const std::size_t n = g.order();
  IntMatrix r(m.rows() * n, m.cols() * n);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (const auto& [h, c] : m(i, j).terms()) {
        if (c.get_den() != 1) throw InvalidInput("regular representation needs integral coefficients");
        for (Element x = 0; x < n; ++x) r(i * n + x, j * n + g.mul(x, h)) += c.get_num();
      }
  return r;
}

std::optional<GroupRingMatrix> from_regular_representation(const GroupPtr& g, const IntMatrix& r,
                                                           std::size_t rows, std::size_t cols) {
  const std::size_t n = g->order();
  if (r.rows() != rows * n || r.cols() != cols * n) throw InvalidInput("regular representation has the wrong shape");
  GroupRingMatrix m(g, {}, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      for (Element h = 0; h < n; ++h)
        if (r(i * n, j * n + h) != 0) m(i, j).add_term(h, Coefficient(r(i * n, j * n + h)));
      for (Element x = 1; x < n; ++x)
        for (Element k = 0; k < n; ++k)
          if (r(i * n + x, j * n + k) != r(i * n, j * n + g->mul(g->inv(x), k))) return std::nullopt;
    }
  return m;
}

std::optional<GroupRingMatrix> inverse(const GroupRingMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("inverse of a non-square matrix");
  if (m.ring().kind() != RingSpec::Kind::Integers) throw InvalidInput("inverse is implemented over Z[G]");
  if (m.rows() == 0) return m;
  auto inv = unimodular_inverse(regular_representation(m));
  if (!inv) return std::nullopt;
  return from_regular_representation(m.group(), *inv, m.rows(), m.cols());
}

// ---------------------------------------------------------------- characters

bool Character::is_trivial() const {
  for (auto k : exponents)
    if (k != 0) return false;
  return true;
}

Character Character::conjugate() const {
  Character c = *this;
  for (auto& k : c.exponents) k = (conductor - k) % conductor;
  return c;
}

std::vector<Character> linear_characters(const GroupPtr& g) {
  auto gens = g->generating_set();
  const std::size_t k = gens.size();
  std::vector<Character> out;
  if (k == 0) {
    out.push_back({g, 1, std::vector<std::uint32_t>(g->order(), 0)});
    return out;
  }
  auto pres = schreier_presentation(*g, gens, {});
  IntMatrix rel(pres.relators.size(), k);
  for (std::size_t i = 0; i < pres.relators.size(); ++i) {
    auto s = pres.relators[i].exponent_sums(k);
    for (std::size_t j = 0; j < k; ++j) rel(i, j) = s[j];
  }
  auto snf = smith_normal_form(rel);
  std::vector<unsigned long> d(k);
  mpz_class e = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (i >= snf.rank) throw Error("abelianization of a finite group is infinite");
    d[i] = snf.diagonal(i, i).get_ui();
    mpz_lcm(e.get_mpz_t(), e.get_mpz_t(), snf.diagonal(i, i).get_mpz_t());
  }
  const std::uint32_t conductor = static_cast<std::uint32_t>(e.get_ui());
  // exponent-sum vector of the tree word of every element
  auto tree = g->spanning_tree(gens);
  std::vector<std::vector<long>> vec(g->order(), std::vector<long>(k, 0));
  for (Element x : tree.order)
    if (x != 0) {
      vec[x] = vec[static_cast<Element>(tree.parent[x])];
      vec[x][tree.edge[x].generator] += tree.edge[x].exponent;
    }
  std::vector<unsigned long> j(k, 0);
  for (;;) {
    std::vector<mpz_class> x(k, 0);
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t i = 0; i < k; ++i) x[c] += snf.right(c, i) * static_cast<long>((e.get_ui() / d[i]) * j[i]);
    Character chi{g, conductor, std::vector<std::uint32_t>(g->order())};
    for (Element el = 0; el < g->order(); ++el) {
      mpz_class s = 0;
      for (std::size_t c = 0; c < k; ++c) s += x[c] * vec[el][c];
      chi.exponents[el] = static_cast<std::uint32_t>(mpz_fdiv_ui(s.get_mpz_t(), conductor));
    }
    out.push_back(std::move(chi));
    std::size_t pos = k;
    while (pos-- > 0) {
      if (++j[pos] < d[pos]) break;
      j[pos] = 0;
    }
    if (pos == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

CharacterValue character_eval(const GroupRingElement& e, const Character& chi) {
  if (!e.group()->is_abelian()) throw NonAbelianGroup("character evaluation needs an abelian group");
  if (!same_group(e.group(), chi.group)) throw MixedGroups("character of a different group");
  Cyclotomic z(chi.conductor);
  for (const auto& [g, c] : e.terms()) z += Cyclotomic::rational(chi.conductor, c) * chi.value(g);
  return {z, z.magnitude()};
}

// ---------------------------------------------------------------- text

namespace {

class ElementParser {
 public:
  ElementParser(const std::string& s, const GroupPtr& g, const RingSpec& r) : s_(s), g_(g), ring_(r) {}

  GroupRingElement parse() {
    GroupRingElement out(g_, ring_);
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      skip();
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [c, el] = monomial();
      out.add_term(el, c * sign);
      skip();
    }
    return out;
  }

 private:
  std::pair<Coefficient, Element> monomial() {
    Coefficient c = 1;
    Element el = 0;
    bool any = false;
    for (;;) {
      skip();
      char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        c *= number();
      } else if (ch == '[') {
        el = g_->mul(el, bracket());
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        Element base = name();
        skip();
        long e = 1;
        if (peek() == '^') {
          ++pos_;
          skip();
          e = integer();
        }
        el = g_->mul(el, g_->power(base, e));
      } else if (ch == '(') {
        ++pos_;
        std::size_t close = s_.find(')', pos_);
        if (close == std::string::npos) fail("unbalanced '('");
        Word w = parse_word(s_.substr(pos_, close - pos_), names());
        pos_ = close + 1;
        el = g_->mul(el, g_->evaluate(w, images()));
      } else {
        if (!any) fail("expected a term");
        return {c, el};
      }
      any = true;
      skip();
      if (peek() == '*') ++pos_;
    }
  }

  Coefficient number() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '/' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    Coefficient c(s_.substr(start, pos_ - start));
    c.canonicalize();
    return c;
  }

  long integer() {
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) fail("expected an exponent");
    return std::stol(s_.substr(start, pos_ - start));
  }

  Element name() {
    std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    std::string n = s_.substr(start, pos_ - start);
    if (auto e = g_->lookup(n)) return *e;
    fail("unknown group element '" + n + "'");
  }

  Element bracket() {
    ++pos_;
    std::size_t close = s_.find(']', pos_);
    if (close == std::string::npos) fail("unbalanced '['");
    std::string inner = s_.substr(pos_, close - pos_);
    pos_ = close + 1;
    std::string t;
    for (char ch : inner)
      if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    std::string digits = (!t.empty() && t[0] == 'g') ? t.substr(1) : t;
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      unsigned long v = std::stoul(digits);
      if (v >= g_->order()) fail("element index " + digits + " out of range");
      return static_cast<Element>(v);
    }
    return g_->evaluate(parse_word(inner, names()), images());
  }

  std::vector<std::string> names() const {
    std::vector<std::string> n;
    for (const auto& [name, e] : g_->symbols()) n.push_back(name);
    return n;
  }
  std::vector<Element> images() const {
    std::vector<Element> v;
    for (const auto& [name, e] : g_->symbols()) v.push_back(e);
    return v;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidInput("group ring element \"" + s_ + "\" at position " + std::to_string(pos_) + ": " + why);
  }

  const std::string& s_;
  const GroupPtr& g_;
  const RingSpec& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupRingElement parse_group_ring_element(const std::string& text, const GroupPtr& g, RingSpec ring) {
  return ElementParser(text, g, ring).parse();
}

std::string format_group_ring_element(const GroupRingElement& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [g, c] : e.terms()) {
    Coefficient a = c;
    bool neg = a < 0;
    if (neg) a = -a;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string name = e.group()->element_name(g);
    if (name.size() > 1 && name[0] == 'g' && std::isdigit(static_cast<unsigned char>(name[1]))) name = "[" + name + "]";
    if (g == 0)
      out += a.get_str();
    else if (a == 1)
      out += name;
    else
      out += a.get_str() + "*" + name;
  }
  return out;
}

}  // namespace quillen
