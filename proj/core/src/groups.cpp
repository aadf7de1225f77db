#include "quillen/groups.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "quillen/errors.hpp"
#include "quillen/words.hpp"

namespace quillen {

// ---------------------------------------------------------------- words

Word Word::generator(std::uint32_t g, int power) { return Word({{g, 1}}).power(power); }

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l.exponent = -l.exponent;
  return Word(std::move(out));
}

Word Word::reduced() const {
  std::vector<Letter> out;
  for (const auto& l : letters_) {
    if (!out.empty() && out.back().generator == l.generator && out.back().exponent == -l.exponent)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(std::move(out));
}

Word Word::power(int k) const {
  const Word base = k < 0 ? inverse() : *this;
  std::vector<Letter> out;
  for (int i = 0; i < std::abs(k); ++i) out.insert(out.end(), base.letters_.begin(), base.letters_.end());
  return Word(std::move(out));
}

std::vector<long> Word::exponent_sums(std::size_t generator_count) const {
  std::vector<long> s(generator_count, 0);
  for (const auto& l : letters_) s.at(l.generator) += l.exponent;
  return s;
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> out = a.letters_;
  out.insert(out.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(out));
}

Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

void FinitePresentation::validate() const {
  for (const auto& r : relators)
    for (const auto& l : r.letters())
      if (l.generator >= generator_count || (l.exponent != 1 && l.exponent != -1))
        throw InvalidInput("relator letter outside the presentation's generators");
  if (!generator_names.empty() && generator_names.size() != generator_count)
    throw InvalidInput("generator name count does not match generator count");
}

std::string FinitePresentation::name(std::uint32_t g) const {
  return g < generator_names.size() ? generator_names[g] : "x" + std::to_string(g);
}

// ---------------------------------------------------------------- finite groups

FiniteGroup::FiniteGroup(std::vector<std::vector<Element>> table, std::vector<std::string> element_names)
    : table_(std::move(table)), names_(std::move(element_names)) {
  const std::size_t n = table_.size();
  if (n == 0) throw InvalidInput("a group needs at least one element");
  for (const auto& row : table_) {
    if (row.size() != n) throw InvalidInput("multiplication table is not square");
    for (auto x : row)
      if (x >= n) throw InvalidInput("multiplication table entry out of range");
  }
  if (!names_.empty() && names_.size() != n) throw InvalidInput("element name count mismatch");
  inverse_.assign(n, static_cast<Element>(n));
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (table_[a][b] == 0) {
        inverse_[a] = b;
        break;
      }
}

GroupPtr FiniteGroup::trivial() { return std::make_shared<const FiniteGroup>(std::vector<std::vector<Element>>{{0}}); }

GroupPtr FiniteGroup::cyclic(std::uint32_t n, const std::string& generator) {
  if (n == 0) throw InvalidInput("cyclic group of order 0");
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (Element i = 0; i < n; ++i)
    for (Element j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  std::vector<std::string> names{"1"};
  for (Element k = 1; k < n; ++k) names.push_back(k == 1 ? generator : generator + "^" + std::to_string(k));
  auto g = std::make_shared<FiniteGroup>(std::move(t), std::move(names));
  if (n > 1) g->add_symbol(generator, 1);
  return g;
}

GroupPtr FiniteGroup::from_permutations(const std::vector<std::vector<std::uint32_t>>& generators,
                                        const std::vector<std::string>& generator_names,
                                        std::size_t max_order) {
  using Perm = std::vector<std::uint32_t>;
  std::size_t degree = generators.empty() ? 0 : generators[0].size();
  for (const auto& p : generators) {
    if (p.size() != degree) throw InvalidInput("permutations of different degrees");
    std::vector<bool> seen(degree, false);
    for (auto x : p) {
      if (x >= degree || seen[x]) throw InvalidInput("not a permutation");
      seen[x] = true;
    }
  }
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::map<Perm, Element> index;
  std::vector<Perm> elems;
  auto add = [&](const Perm& p) {
    auto [it, fresh] = index.emplace(p, static_cast<Element>(elems.size()));
    if (fresh) {
      elems.push_back(p);
      if (elems.size() > max_order) throw OrderTooLarge("permutation group exceeds order bound");
    }
    return it->second;
  };
  add(id);
  for (const auto& g : generators) add(g);
  const std::size_t k = generators.size();
  // right[x][s] = x * generator s, filled in visiting order
  std::vector<std::vector<Element>> right;
  std::vector<std::int64_t> parent{-1};
  std::vector<std::size_t> via{0};
  parent.resize(elems.size(), -2);
  via.resize(elems.size(), 0);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    right.emplace_back(k);
    for (std::size_t s = 0; s < k; ++s) {
      Perm prod(degree);
      for (std::size_t pt = 0; pt < degree; ++pt) prod[pt] = generators[s][elems[i][pt]];
      std::size_t before = elems.size();
      Element e = add(prod);
      right[i][s] = e;
      if (elems.size() > before) {
        parent.push_back(static_cast<std::int64_t>(i));
        via.push_back(s);
      } else if (parent[e] == -2) {
        parent[e] = static_cast<std::int64_t>(i);
        via[e] = s;
      }
    }
  }
  const std::size_t n = elems.size();
  // a * b = (a * parent(b)) * s, walking b in an order where parents come first.
  std::vector<Element> order;
  std::vector<std::vector<Element>> kids(n);
  for (Element e = 1; e < n; ++e) kids[static_cast<std::size_t>(parent[e])].push_back(e);
  std::deque<Element> q{0};
  while (!q.empty()) {
    Element e = q.front();
    q.pop_front();
    order.push_back(e);
    for (auto c : kids[e]) q.push_back(c);
  }
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (Element a = 0; a < n; ++a) {
    table[a][0] = a;
    for (std::size_t oi = 1; oi < n; ++oi) {
      Element b = order[oi];
      table[a][b] = right[table[a][static_cast<std::size_t>(parent[b])]][via[b]];
    }
  }
  auto g = std::make_shared<FiniteGroup>(std::move(table));
  for (std::size_t s = 0; s < k && s < generator_names.size(); ++s) g->add_symbol(generator_names[s], index[generators[s]]);
  return g;
}

GroupPtr FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t m = g.order(), n = h.order();
  std::vector<std::vector<Element>> t(m * n, std::vector<Element>(m * n));
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < m; ++c)
        for (Element d = 0; d < n; ++d)
          t[a * n + b][c * n + d] = static_cast<Element>(g.mul(a, c) * n + h.mul(b, d));
  auto p = std::make_shared<FiniteGroup>(std::move(t));
  std::set<std::string> clash;
  for (const auto& [name, e] : g.symbols())
    if (h.lookup(name)) clash.insert(name);
  for (const auto& [name, e] : g.symbols())
    p->add_symbol(clash.count(name) ? name + "1" : name, static_cast<Element>(e * n));
  for (const auto& [name, e] : h.symbols()) p->add_symbol(clash.count(name) ? name + "2" : name, e);
  return p;
}

Element FiniteGroup::power(Element g, long k) const {
  if (k < 0) {
    g = inv(g);
    k = -k;
  }
  Element r = 0;
  Element b = g;
  while (k > 0) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

std::size_t FiniteGroup::element_order(Element g) const {
  std::size_t k = 1;
  for (Element x = g; x != 0; x = mul(x, g)) {
    ++k;
    if (k > order()) throw InvalidInput("element of infinite order in a finite table");
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order(); ++a)
    for (Element b = a + 1; b < order(); ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::string FiniteGroup::element_name(Element g) const {
  if (!names_.empty()) return names_.at(g);
  for (const auto& [name, e] : symbols_)
    if (e == g) return name;
  return "g" + std::to_string(g);
}

void FiniteGroup::add_symbol(const std::string& name, Element g) {
  if (g >= order()) throw InvalidInput("symbol '" + name + "' names an element out of range");
  for (auto& s : symbols_)
    if (s.first == name) {
      s.second = g;
      return;
    }
  symbols_.emplace_back(name, g);
}

std::optional<Element> FiniteGroup::lookup(const std::string& name) const {
  for (const auto& [n, e] : symbols_)
    if (n == name) return e;
  return std::nullopt;
}

Element FiniteGroup::evaluate(const Word& w, const std::vector<Element>& images) const {
  Element x = 0;
  for (const auto& l : w.letters()) {
    if (l.generator >= images.size()) throw InvalidInput("word mentions a generator without an image");
    Element y = images[l.generator];
    x = mul(x, l.exponent > 0 ? y : inv(y));
  }
  return x;
}

namespace {

std::vector<bool> right_closure(const FiniteGroup& g, const std::vector<Element>& gens) {
  std::vector<bool> seen(g.order(), false);
  std::deque<Element> q{0};
  seen[0] = true;
  while (!q.empty()) {
    Element x = q.front();
    q.pop_front();
    for (auto s : gens) {
      Element y = g.mul(x, s);
      if (!seen[y]) {
        seen[y] = true;
        q.push_back(y);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<Element> FiniteGroup::generating_set() const {
  std::vector<Element> gens;
  for (const auto& [name, e] : symbols_)
    if (e != 0 && std::find(gens.begin(), gens.end(), e) == gens.end()) gens.push_back(e);
  auto seen = right_closure(*this, gens);
  for (Element e = 1; e < order(); ++e) {
    if (seen[e]) continue;
    gens.push_back(e);
    seen = right_closure(*this, gens);
  }
  return gens;
}

FiniteGroup::SpanningTree FiniteGroup::spanning_tree(const std::vector<Element>& gens) const {
  SpanningTree t;
  t.parent.assign(order(), -1);
  t.edge.assign(order(), Letter{});
  std::vector<bool> seen(order(), false);
  std::deque<Element> q{0};
  seen[0] = true;
  while (!q.empty()) {
    Element x = q.front();
    q.pop_front();
    t.order.push_back(x);
    for (std::uint32_t s = 0; s < gens.size(); ++s)
      for (int e : {1, -1}) {
        Element y = mul(x, e > 0 ? gens[s] : inv(gens[s]));
        if (seen[y]) continue;
        seen[y] = true;
        t.parent[y] = x;
        t.edge[y] = {s, e};
        q.push_back(y);
      }
  }
  if (t.order.size() != order()) throw InvalidInput("elements do not generate the group");
  return t;
}

std::vector<Word> FiniteGroup::tree_words(const std::vector<Element>& gens) const {
  auto t = spanning_tree(gens);
  std::vector<Word> w(order());
  for (Element x : t.order)
    if (x != 0) w[x] = w[static_cast<Element>(t.parent[x])] * Word({t.edge[x]});
  return w;
}

bool same_group(const GroupPtr& a, const GroupPtr& b) { return a == b || (a && b && *a == *b); }

bool validate_realization(const FiniteGroup& g, const Config& config) {
  const std::size_t n = g.order();
  if (n > config.exhaustive_check_bound)
    throw OrderTooLarge("order " + std::to_string(n) + " exceeds the exhaustive check bound " +
                        std::to_string(config.exhaustive_check_bound));
  for (Element a = 0; a < n; ++a) {
    if (g.mul(0, a) != a || g.mul(a, 0) != a) return false;
    Element b = g.inv(a);
    if (b >= n || g.mul(b, a) != 0) return false;
  }
  // Light's test: the elements a with (xa)y = x(ay) for all x, y form a closed set.
  std::vector<Element> gens;
  auto seen = right_closure(g, gens);
  for (Element e = 1; e < n; ++e)
    if (!seen[e]) {
      gens.push_back(e);
      seen = right_closure(g, gens);
    }
  for (auto a : gens)
    for (Element x = 0; x < n; ++x) {
      const Element xa = g.mul(x, a);
      for (Element y = 0; y < n; ++y)
        if (g.mul(xa, y) != g.mul(x, g.mul(a, y))) return false;
    }
  return true;
}

// ---------------------------------------------------------------- homomorphisms

GroupHom::GroupHom(FinitePresentation source, GroupPtr target, std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  source_.validate();
  if (!target_) throw InvalidInput("homomorphism without a target group");
  if (images_.size() != source_.generator_count)
    throw InvalidInput("homomorphism needs one image per generator (got " + std::to_string(images_.size()) +
                       ", expected " + std::to_string(source_.generator_count) + ")");
  for (auto x : images_)
    if (x >= target_->order()) throw InvalidInput("generator image out of range");
  for (std::size_t i = 0; i < source_.relators.size(); ++i)
    if (apply(source_.relators[i]) != 0)
      throw InvalidInput("relator " + format_word(source_.relators[i], source_.generator_names) +
                         " does not map to the identity");
}

bool GroupHom::is_surjective() const { return subgroup_generated(target_, images_).is_whole(); }

FiniteGroupHom::FiniteGroupHom(GroupPtr src, GroupPtr tgt, std::vector<Element> m)
    : source(std::move(src)), target(std::move(tgt)), map(std::move(m)) {
  if (!source || !target) throw InvalidInput("homomorphism without groups");
  if (map.size() != source->order()) throw InvalidInput("homomorphism needs one image per element");
  for (auto x : map)
    if (x >= target->order()) throw InvalidInput("image out of range");
  for (Element a = 0; a < source->order(); ++a)
    for (Element b = 0; b < source->order(); ++b)
      if (map[source->mul(a, b)] != target->mul(map[a], map[b]))
        throw InvalidInput("map is not a homomorphism");
}

FiniteGroupHom FiniteGroupHom::from_generators(GroupPtr src, GroupPtr tgt, const std::vector<Element>& gens,
                                               const std::vector<Element>& images) {
  if (gens.size() != images.size()) throw InvalidInput("generator and image counts differ");
  auto tree = src->spanning_tree(gens);
  std::vector<Element> m(src->order(), 0);
  for (Element x : tree.order)
    if (x != 0) {
      const auto& e = tree.edge[x];
      Element img = images.at(e.generator);
      m[x] = tgt->mul(m[static_cast<Element>(tree.parent[x])], e.exponent > 0 ? img : tgt->inv(img));
    }
  return FiniteGroupHom(std::move(src), std::move(tgt), std::move(m));
}

FiniteGroupHom FiniteGroupHom::identity(const GroupPtr& g) {
  std::vector<Element> m(g->order());
  std::iota(m.begin(), m.end(), 0);
  return FiniteGroupHom(g, g, std::move(m));
}

FiniteGroupHom FiniteGroupHom::then(const FiniteGroupHom& next) const {
  if (!same_group(target, next.source)) throw MixedGroups("homomorphisms do not compose");
  std::vector<Element> m(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) m[i] = next.map[map[i]];
  return FiniteGroupHom(source, next.target, std::move(m));
}

bool FiniteGroupHom::is_surjective() const {
  std::vector<bool> hit(target->order(), false);
  for (auto x : map) hit[x] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

// ---------------------------------------------------------------- subgroups

bool Subgroup::contains(Element g) const { return std::binary_search(members.begin(), members.end(), g); }

namespace {

Subgroup from_mask(const GroupPtr& g, const std::vector<bool>& mask) {
  Subgroup s{g, {}};
  for (Element e = 0; e < mask.size(); ++e)
    if (mask[e]) s.members.push_back(e);
  return s;
}

}  // namespace

Subgroup whole_group(const GroupPtr& g) { return from_mask(g, std::vector<bool>(g->order(), true)); }

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup{g, {0}}; }

Subgroup subgroup_generated(const GroupPtr& g, const std::vector<Element>& gens) {
  for (auto e : gens)
    if (e >= g->order()) throw InvalidInput("element index out of range");
  return from_mask(g, right_closure(*g, gens));
}

Subgroup normal_closure(const GroupPtr& g, const std::vector<Element>& seeds) {
  std::vector<bool> have(g->order(), false);
  std::vector<Element> gens;
  for (auto s : seeds) {
    if (s >= g->order()) throw InvalidInput("element index out of range");
    for (Element x = 0; x < g->order(); ++x) {
      Element c = g->conj(x, s);
      if (c != 0 && !have[c]) {
        have[c] = true;
        gens.push_back(c);
      }
    }
  }
  return subgroup_generated(g, gens);
}

Subgroup commutator_subgroup_with(const GroupPtr& g, const Subgroup& a, const Subgroup& b) {
  std::vector<bool> have(g->order(), false);
  std::vector<Element> gens;
  for (auto x : a.members)
    for (auto y : b.members) {
      Element c = g->mul(g->mul(x, y), g->mul(g->inv(x), g->inv(y)));
      if (c != 0 && !have[c]) {
        have[c] = true;
        gens.push_back(c);
      }
    }
  return subgroup_generated(g, gens);
}

bool is_normal(const Subgroup& s) {
  const auto& g = *s.ambient;
  for (auto x : g.generating_set())
    for (auto m : s.members)
      if (!s.contains(g.conj(x, m))) return false;
  return true;
}

bool is_perfect(const Subgroup& s) { return commutator_subgroup_with(s.ambient, s, s) == s; }

bool is_relatively_perfect(const GroupPtr& g, const Subgroup& n) {
  if (!is_normal(n)) throw NotNormal("subgroup is not normal");
  return commutator_subgroup_with(g, whole_group(g), n) == n;
}

std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<bool> done(g.order(), false);
  std::vector<std::vector<Element>> classes;
  for (Element e = 0; e < g.order(); ++e) {
    if (done[e]) continue;
    std::set<Element> cls;
    for (Element x = 0; x < g.order(); ++x) cls.insert(g.conj(x, e));
    for (auto c : cls) done[c] = true;
    classes.emplace_back(cls.begin(), cls.end());
  }
  return classes;
}

std::optional<Element> weight_le_one(const GroupPtr& g) {
  if (g->order() == 1) return Element{0};
  for (const auto& cls : conjugacy_classes(*g)) {
    if (cls[0] == 0) continue;
    if (normal_closure(g, {cls[0]}).is_whole()) return cls[0];
  }
  return std::nullopt;
}

std::vector<Subgroup> enumerate_normal_subgroups(const GroupPtr& g, const Config& config) {
  if (g->order() > config.enumeration_bound)
    throw OrderTooLarge("order " + std::to_string(g->order()) + " exceeds the enumeration bound " +
                        std::to_string(config.enumeration_bound));
  auto classes = conjugacy_classes(*g);
  std::vector<Subgroup> found{trivial_subgroup(g)};
  for (std::size_t i = 0; i < found.size(); ++i)
    for (const auto& cls : classes) {
      if (found[i].contains(cls[0])) continue;
      std::vector<Element> seeds = found[i].members;
      seeds.push_back(cls[0]);
      Subgroup n = normal_closure(g, seeds);
      if (std::find(found.begin(), found.end(), n) == found.end()) found.push_back(n);
    }
  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.order() != b.order() ? a.order() < b.order() : a.members < b.members;
  });
  return found;
}

std::vector<Subgroup> enumerate_perfect_normal_subgroups(const GroupPtr& g, const Config& config) {
  std::vector<Subgroup> out;
  for (auto& n : enumerate_normal_subgroups(g, config))
    if (is_perfect(n)) out.push_back(std::move(n));
  return out;
}

Quotient quotient(const GroupPtr& g, const Subgroup& n) {
  if (!is_normal(n)) throw NotNormal("quotient by a subgroup that is not normal");
  const std::size_t order = g->order();
  std::vector<std::int64_t> coset(order, -1);
  std::vector<Element> reps;
  for (Element e = 0; e < order; ++e) {
    if (coset[e] >= 0) continue;
    for (auto m : n.members) coset[g->mul(e, m)] = static_cast<std::int64_t>(reps.size());
    reps.push_back(e);
  }
  const std::size_t q = reps.size();
  std::vector<std::vector<Element>> t(q, std::vector<Element>(q));
  for (Element i = 0; i < q; ++i)
    for (Element j = 0; j < q; ++j) t[i][j] = static_cast<Element>(coset[g->mul(reps[i], reps[j])]);
  std::vector<std::string> names;
  for (Element r : reps) names.push_back(g->element_name(r));
  auto qg = std::make_shared<FiniteGroup>(std::move(t), std::move(names));
  Quotient out;
  out.projection.resize(order);
  for (Element e = 0; e < order; ++e) out.projection[e] = static_cast<Element>(coset[e]);
  for (const auto& [name, e] : g->symbols())
    if (out.projection[e] != 0) qg->add_symbol(name, out.projection[e]);
  out.group = std::move(qg);
  return out;
}

Subgroup normalizer(const Subgroup& s) {
  const auto& g = *s.ambient;
  std::vector<bool> mask(g.order(), false);
  for (Element x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (auto m : s.members)
      if (!s.contains(g.conj(x, m))) {
        ok = false;
        break;
      }
    mask[x] = ok;
  }
  return from_mask(s.ambient, mask);
}

Subgroup sylow_subgroup(const GroupPtr& g, std::uint64_t p) {
  std::size_t target = 1;
  for (std::size_t n = g->order(); n % p == 0; n /= p) target *= p;
  Subgroup s = trivial_subgroup(g);
  while (s.order() < target) {
    Subgroup nz = normalizer(s);
    bool grown = false;
    for (auto x : nz.members) {
      if (s.contains(x)) continue;
      // order of xS in N(S)/S
      std::size_t m = 1;
      Element y = x;
      while (!s.contains(y)) {
        y = g->mul(y, x);
        ++m;
      }
      std::size_t k = m;
      while (k % p == 0) k /= p;
      if (k != 1) continue;
      Element h = g->power(x, static_cast<long>(m / p));
      std::vector<Element> gens = s.members;
      gens.push_back(h);
      s = subgroup_generated(g, gens);
      grown = true;
      break;
    }
    if (!grown) throw Error("Sylow subgroup search stalled");
  }
  return s;
}

Realized realize_subgroup(const Subgroup& s) {
  const auto& g = *s.ambient;
  std::vector<std::int64_t> local(g.order(), -1);
  for (std::size_t i = 0; i < s.members.size(); ++i) local[s.members[i]] = static_cast<std::int64_t>(i);
  const std::size_t n = s.members.size();
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto v = local[g.mul(s.members[i], s.members[j])];
      if (v < 0) throw InvalidInput("member set is not closed under multiplication");
      t[i][j] = static_cast<Element>(v);
    }
  return {std::make_shared<const FiniteGroup>(std::move(t)), s.members};
}

// ---------------------------------------------------------------- abelianization

namespace {

IntVector factors_with_free(const IntMatrix& rel, std::size_t gens) {
  IntVector inv = invariant_factors(rel);
  IntVector out;
  for (const auto& d : inv)
    if (d != 1) out.push_back(d);
  for (std::size_t i = inv.size(); i < gens; ++i) out.emplace_back(0);
  return out;
}

}  // namespace

IntVector abelianization(const FinitePresentation& p) {
  p.validate();
  IntMatrix rel(p.relators.size(), p.generator_count);
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    auto s = p.relators[i].exponent_sums(p.generator_count);
    for (std::size_t j = 0; j < s.size(); ++j) rel(i, j) = s[j];
  }
  return factors_with_free(rel, p.generator_count);
}

IntVector abelianization(const FiniteGroup& g) {
  auto gens = g.generating_set();
  auto pres = schreier_presentation(g, gens, {});
  return abelianization(pres);
}

FinitePresentation schreier_presentation(const FiniteGroup& g, const std::vector<Element>& gens,
                                         const std::vector<std::string>& names) {
  FinitePresentation p;
  p.generator_count = gens.size();
  p.generator_names = names;
  if (p.generator_names.empty())
    for (std::size_t i = 0; i < gens.size(); ++i) p.generator_names.push_back("s" + std::to_string(i));
  auto words = g.tree_words(gens);
  std::set<std::vector<std::pair<std::uint32_t, int>>> seen;
  for (Element x = 0; x < g.order(); ++x)
    for (std::uint32_t s = 0; s < gens.size(); ++s) {
      Word r = (words[x] * Word::generator(s) * words[g.mul(x, gens[s])].inverse()).reduced();
      if (r.empty()) continue;
      std::vector<std::pair<std::uint32_t, int>> key;
      for (const auto& l : r.letters()) key.emplace_back(l.generator, l.exponent);
      if (seen.insert(key).second) p.relators.push_back(std::move(r));
    }
  return p;
}

// ---------------------------------------------------------------- coset enumeration

namespace {

class CosetTable {
 public:
  CosetTable(std::size_t generators, std::size_t limit) : cols_(2 * generators), limit_(limit) { add(); }

  static constexpr std::int64_t undefined = -1;

  bool overflow() const noexcept { return overflow_; }
  std::size_t size() const noexcept { return parent_.size(); }
  bool alive(std::size_t c) const { return parent_[c] == c; }
  std::int64_t at(std::size_t c, std::size_t col) const { return table_[c * cols_ + col]; }

  bool define(std::size_t c, std::size_t col) {
    if (size() >= limit_) {
      overflow_ = true;
      return false;
    }
    std::size_t d = add();
    set(c, col, d);
    set(d, col ^ 1, c);
    return true;
  }

  // Scan a relator from coset c, defining cosets as needed.
  void scan_and_fill(std::size_t c, const std::vector<std::size_t>& w) {
    if (w.empty()) return;
    std::size_t f = c, b = c;
    std::size_t i = 0, j = w.size();
    while (true) {
      while (i < j && at(f, w[i]) != undefined) f = static_cast<std::size_t>(at(f, w[i++]));
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && at(b, w[j - 1] ^ 1) != undefined) b = static_cast<std::size_t>(at(b, w[--j] ^ 1));
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        set(f, w[i], b);
        set(b, w[i] ^ 1, f);
        return;
      }
      if (!define(f, w[i])) return;
    }
  }

  std::size_t rep(std::size_t c) {
    std::size_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      std::size_t n = parent_[c];
      parent_[c] = r;
      c = n;
    }
    return r;
  }

 private:
  std::size_t add() {
    parent_.push_back(parent_.size());
    table_.resize(table_.size() + cols_, undefined);
    return parent_.size() - 1;
  }
  void set(std::size_t c, std::size_t col, std::size_t d) { table_[c * cols_ + col] = static_cast<std::int64_t>(d); }
  void unset(std::size_t c, std::size_t col) { table_[c * cols_ + col] = undefined; }

  void merge(std::size_t a, std::size_t b, std::deque<std::size_t>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    queue.push_back(b);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::deque<std::size_t> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      std::size_t g = queue.front();
      queue.pop_front();
      for (std::size_t col = 0; col < cols_; ++col) {
        std::int64_t d = at(g, col);
        if (d == undefined) continue;
        unset(static_cast<std::size_t>(d), col ^ 1);
        std::size_t mu = rep(g), nu = rep(static_cast<std::size_t>(d));
        if (at(mu, col) != undefined) {
          merge(nu, static_cast<std::size_t>(at(mu, col)), queue);
        } else if (at(nu, col ^ 1) != undefined) {
          merge(mu, static_cast<std::size_t>(at(nu, col ^ 1)), queue);
        } else {
          set(mu, col, nu);
          set(nu, col ^ 1, mu);
        }
      }
    }
  }

  std::size_t cols_;
  std::size_t limit_;
  bool overflow_ = false;
  std::vector<std::size_t> parent_;
  std::vector<std::int64_t> table_;
};

}  // namespace

std::optional<GroupHom> enumerate_presentation(const FinitePresentation& p, std::size_t coset_limit) {
  p.validate();
  const std::size_t cols = 2 * p.generator_count;
  std::vector<std::vector<std::size_t>> rels;
  for (const auto& r : p.relators) {
    std::vector<std::size_t> w;
    for (const auto& l : r.letters())
      for (int k = 0; k < std::abs(l.exponent); ++k) w.push_back(2 * l.generator + (l.exponent < 0 ? 1 : 0));
    rels.push_back(std::move(w));
  }
  CosetTable t(p.generator_count, coset_limit);
  for (std::size_t c = 0; c < t.size(); ++c) {
    for (const auto& w : rels) {
      if (!t.alive(c)) break;
      t.scan_and_fill(c, w);
      if (t.overflow()) return std::nullopt;
    }
    for (std::size_t col = 0; col < cols && t.alive(c); ++col)
      if (t.at(c, col) == CosetTable::undefined && !t.define(c, col)) return std::nullopt;
  }
  // Compact the live cosets; coset 0 stays first.
  std::vector<std::int64_t> index(t.size(), -1);
  std::vector<std::size_t> live;
  for (std::size_t c = 0; c < t.size(); ++c)
    if (t.alive(c)) {
      index[c] = static_cast<std::int64_t>(live.size());
      live.push_back(c);
    }
  const std::size_t n = live.size();
  auto act = [&](std::size_t c, std::size_t col) {
    return static_cast<Element>(index[t.rep(static_cast<std::size_t>(t.at(live[c], col)))]);
  };
  // Regular action: coset c is the element reached from 0; c * d follows the path of d from c.
  std::vector<std::int64_t> parent(n, -1);
  std::vector<std::size_t> edge(n, 0), order{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t col = 0; col < cols; ++col) {
      Element d = act(order[i], col);
      if (!seen[d]) {
        seen[d] = true;
        parent[d] = static_cast<std::int64_t>(order[i]);
        edge[d] = col;
        order.push_back(d);
      }
    }
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t c = 0; c < n; ++c) {
    table[c][0] = static_cast<Element>(c);
    for (std::size_t k = 1; k < order.size(); ++k) {
      std::size_t d = order[k];
      table[c][d] = act(table[c][static_cast<std::size_t>(parent[d])], edge[d]);
    }
  }
  auto g = std::make_shared<FiniteGroup>(std::move(table));
  std::vector<Element> images;
  for (std::uint32_t s = 0; s < p.generator_count; ++s) images.push_back(act(0, 2 * s));
  for (std::uint32_t s = 0; s < p.generator_count; ++s)
    if (images[s] != 0 && std::count(images.begin(), images.end(), images[s]) == 1) g->add_symbol(p.name(s), images[s]);
  return GroupHom(p, std::move(g), std::move(images));
}

// ---------------------------------------------------------------- builtins

namespace {

struct BuiltinSpec {
  std::vector<std::string> generators;
  std::vector<std::string> relators;
  GroupPtr group;
  std::vector<Element> images;
};

std::vector<std::uint32_t> perm(std::uint32_t n, std::initializer_list<std::initializer_list<std::uint32_t>> cycles) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (const auto& c : cycles) {
    std::vector<std::uint32_t> v(c);
    for (std::size_t i = 0; i < v.size(); ++i) p[v[i]] = v[(i + 1) % v.size()];
  }
  return p;
}

BuiltinSpec permutation_builtin(std::vector<std::string> gens, std::vector<std::string> rels,
                                std::vector<std::vector<std::uint32_t>> perms) {
  auto g = FiniteGroup::from_permutations(perms, gens);
  std::vector<Element> images;
  for (const auto& n : gens) images.push_back(*g->lookup(n));
  return {std::move(gens), std::move(rels), std::move(g), std::move(images)};
}

GroupPtr quaternion_group() {
  // units +-1, +-i, +-j, +-k as (sign, unit) with unit 0..3 = 1, i, j, k
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_mul[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  auto idx = [](int sign, int unit) { return static_cast<std::uint32_t>(unit * 2 + (sign < 0 ? 1 : 0)); };
  std::vector<std::vector<std::uint32_t>> perms;
  for (int gen : {1, 2}) {
    std::vector<std::uint32_t> p(8);
    for (int u = 0; u < 4; ++u)
      for (int s : {1, -1}) p[idx(s, u)] = idx(s * sign_mul[u][gen], unit_mul[u][gen]);
    perms.push_back(p);
  }
  return FiniteGroup::from_permutations(perms, {"i", "j"});
}

BuiltinSpec builtin_spec(const std::string& raw) {
  std::string name;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) name += c;
  if (name == "trivial" || name == "1") return {{}, {}, FiniteGroup::trivial(), {}};
  if (name.size() > 2 && name.rfind("Z/", 0) == 0 && name.find('x') == std::string::npos) {
    unsigned long n = 0;
    try {
      n = std::stoul(name.substr(2));
    } catch (const std::exception&) {
      throw InvalidInput("bad cyclic group '" + raw + "'");
    }
    if (n == 0 || n > 100000) throw InvalidInput("cyclic order out of range in '" + raw + "'");
    auto g = FiniteGroup::cyclic(static_cast<std::uint32_t>(n));
    if (n == 1) return {{"t"}, {"t"}, g, {0}};
    return {{"t"}, {"t^" + std::to_string(n)}, g, {1}};
  }
  if (auto x = name.find('x'); x != std::string::npos) {
    BuiltinSpec a = builtin_spec(name.substr(0, x));
    BuiltinSpec b = builtin_spec(name.substr(x + 1));
    auto g = FiniteGroup::direct_product(*a.group, *b.group);
    std::set<std::string> clash;
    for (const auto& n : a.generators)
      if (std::find(b.generators.begin(), b.generators.end(), n) != b.generators.end()) clash.insert(n);
    BuiltinSpec out{{}, {}, g, {}};
    std::vector<std::string> an = a.generators, bn = b.generators;
    for (auto& n : an)
      if (clash.count(n)) n += "1";
    for (auto& n : bn)
      if (clash.count(n)) n += "2";
    auto rename = [](const std::string& rel, const std::vector<std::string>& from, const std::vector<std::string>& to) {
      return format_word(parse_word(rel, from), to);
    };
    const std::size_t bo = b.group->order();
    for (std::size_t i = 0; i < an.size(); ++i) {
      out.generators.push_back(an[i]);
      out.images.push_back(static_cast<Element>(a.images[i] * bo));
    }
    for (std::size_t i = 0; i < bn.size(); ++i) {
      out.generators.push_back(bn[i]);
      out.images.push_back(b.images[i]);
    }
    for (const auto& r : a.relators) out.relators.push_back(rename(r, a.generators, an));
    for (const auto& r : b.relators) out.relators.push_back(rename(r, b.generators, bn));
    for (const auto& u : an)
      for (const auto& v : bn) out.relators.push_back("[" + u + "," + v + "]");
    return out;
  }
  if (name == "S3") return permutation_builtin({"s", "r"}, {"s^2", "r^3", "(s r)^2"}, {perm(3, {{0, 1}}), perm(3, {{0, 1, 2}})});
  if (name == "D4") return permutation_builtin({"r", "s"}, {"r^4", "s^2", "(s r)^2"}, {perm(4, {{0, 1, 2, 3}}), perm(4, {{1, 3}})});
  if (name == "A4") return permutation_builtin({"a", "b"}, {"a^2", "b^3", "(a b)^3"}, {perm(4, {{0, 1}, {2, 3}}), perm(4, {{0, 1, 2}})});
  if (name == "S4") return permutation_builtin({"s", "r"}, {"s^2", "r^4", "(s r)^3"}, {perm(4, {{0, 1}}), perm(4, {{0, 1, 2, 3}})});
  if (name == "A5") return permutation_builtin({"a", "b"}, {"a^2", "b^3", "(a b)^5"}, {perm(5, {{0, 1}, {2, 3}}), perm(5, {{0, 2, 4}})});
  if (name == "Q8") {
    auto g = quaternion_group();
    return {{"i", "j"}, {"i^4", "i^2 j^-2", "j^-1 i j i"}, g, {*g->lookup("i"), *g->lookup("j")}};
  }
  throw InvalidInput("unknown builtin group '" + raw + "'");
}

}  // namespace

GroupPtr builtin_group(const std::string& name) { return builtin_spec(name).group; }

GroupHom builtin_presentation(const std::string& name) {
  BuiltinSpec s = builtin_spec(name);
  auto p = parse_presentation(s.generators, s.relators);
  // The cyclic group of order one keeps a generator mapped to the identity.
  return GroupHom(std::move(p), s.group, s.images);
}

}  // namespace quillen
