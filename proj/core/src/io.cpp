#include "quillen/io.hpp"

#include <cstdio>

#include "quillen/words.hpp"

namespace quillen {

std::string format_decimal(long double x, int precision) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.*Lf", precision, x);
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

Json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw InvalidInput("expected an integer, got " + j.dump());
}

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::string> strings(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw InvalidInput(std::string(what) + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- groups

GroupPtr group_from_json(const Json& j, const Config& config) {
  if (j.is_string()) return builtin_group(j.get<std::string>());
  if (!j.is_object()) throw InvalidInput("group must be a name or an object");
  GroupPtr g;
  if (j.contains("builtin")) return builtin_group(require(j, "builtin").get<std::string>());
  if (j.contains("permutations")) {
    auto names = j.contains("generators") ? strings(j.at("generators"), "generators") : std::vector<std::string>{};
    std::vector<std::vector<std::uint32_t>> perms;
    for (const auto& p : j.at("permutations")) {
      std::vector<std::uint32_t> v;
      for (const auto& x : p) {
        if (!x.is_number_unsigned()) throw InvalidInput("permutation entries must be non-negative integers");
        v.push_back(x.get<std::uint32_t>());
      }
      perms.push_back(std::move(v));
    }
    g = FiniteGroup::from_permutations(perms, names, config.exhaustive_check_bound * 20);
  } else if (j.contains("table")) {
    std::vector<std::vector<Element>> table;
    for (const auto& row : j.at("table")) {
      std::vector<Element> r;
      for (const auto& x : row) {
        if (!x.is_number_unsigned()) throw InvalidInput("table entries must be non-negative integers");
        r.push_back(x.get<Element>());
      }
      table.push_back(std::move(r));
    }
    auto names = j.contains("names") ? strings(j.at("names"), "names") : std::vector<std::string>{};
    auto fg = std::make_shared<FiniteGroup>(std::move(table), names);
    if (j.contains("symbols"))
      for (const auto& [name, e] : j.at("symbols").items()) fg->add_symbol(name, e.get<Element>());
    g = fg;
  } else {
    throw InvalidInput("group object needs 'builtin', 'permutations' or 'table'");
  }
  if (!validate_realization(*g, config)) throw InvalidInput("multiplication table does not define a group");
  return g;
}

Json group_to_json(const FiniteGroup& g) {
  Json j;
  j["order"] = g.order();
  Json symbols = Json::object();
  for (const auto& [name, e] : g.symbols()) symbols[name] = e;
  j["symbols"] = symbols;
  std::vector<std::string> names;
  for (Element e = 0; e < g.order(); ++e) names.push_back(g.element_name(e));
  j["names"] = names;
  j["table"] = g.table();
  return j;
}

FinitePresentation presentation_from_json(const Json& j) {
  auto p = parse_presentation(strings(require(j, "generators"), "generators"),
                              j.contains("relators") ? strings(j.at("relators"), "relators") : std::vector<std::string>{});
  p.validate();
  return p;
}

Json presentation_to_json(const FinitePresentation& p) {
  Json j;
  std::vector<std::string> gens, rels;
  for (std::uint32_t i = 0; i < p.generator_count; ++i) gens.push_back(p.name(i));
  for (const auto& r : p.relators) rels.push_back(format_word(r, gens));
  j["generators"] = gens;
  j["relators"] = rels;
  return j;
}

Element element_from_json(const GroupPtr& g, const Json& j) {
  if (j.is_number_unsigned()) {
    auto e = j.get<std::uint64_t>();
    if (e >= g->order()) throw InvalidInput("element index out of range");
    return static_cast<Element>(e);
  }
  if (!j.is_string()) throw InvalidInput("element must be an index or a word");
  const auto text = j.get<std::string>();
  if (auto e = g->lookup(text)) return *e;
  std::vector<std::string> names;
  std::vector<Element> images;
  for (const auto& [name, e] : g->symbols()) {
    names.push_back(name);
    images.push_back(e);
  }
  return g->evaluate(parse_word(text, names), images);
}

GroupHom hom_from_json(const FinitePresentation& p, const Json& j, const Config& config) {
  GroupPtr g = group_from_json(require(j, "target"), config);
  const Json& imgs = require(j, "images");
  if (!imgs.is_array() || imgs.size() != p.generator_count)
    throw InvalidInput("hom needs one image per generator");
  std::vector<Element> images;
  for (const auto& x : imgs) images.push_back(element_from_json(g, x));
  return GroupHom(p, g, images);
}

Json hom_to_json(const GroupHom& h) {
  Json j;
  j["target"] = group_to_json(*h.target());
  j["images"] = h.images();
  return j;
}

// ---------------------------------------------------------------- matrices and complexes

GroupRingMatrix matrix_from_json(const Json& j, const GroupPtr& g, const RingSpec& ring) {
  if (!j.is_array()) throw InvalidInput("matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
  GroupRingMatrix m(g, ring, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw InvalidInput("matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      const Json& e = j[r][c];
      if (e.is_number_integer())
        m(r, c) = GroupRingElement::basis(g, 0, ring, Coefficient(std::to_string(e.get<std::int64_t>())));
      else if (e.is_string())
        m(r, c) = parse_group_ring_element(e.get<std::string>(), g, ring);
      else
        throw InvalidInput("matrix entries must be strings or integers");
    }
  }
  return m;
}

Json matrix_to_json(const GroupRingMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(format_group_ring_element(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

BasedChainComplex complex_from_json(const Json& j, const Config& config) {
  if (j.contains("presentation")) {
    auto p = presentation_from_json(j.at("presentation"));
    if (!j.contains("hom")) return build_presentation_complex(GroupHom(p, FiniteGroup::trivial(), std::vector<Element>(p.generator_count, 0))).complex;
    return build_presentation_complex(hom_from_json(p, j.at("hom"), config)).complex;
  }
  GroupPtr g = j.contains("group") ? group_from_json(j.at("group"), config) : FiniteGroup::trivial();
  RingSpec ring = j.contains("ring") ? RingSpec::parse(j.at("ring").get<std::string>()) : RingSpec{};
  const int bottom = j.value("bottom", 0);
  const Json& bs = require(j, "boundaries");
  if (!bs.is_array()) throw InvalidInput("boundaries must be an array");
  std::size_t bottom_rank = 0;
  if (j.contains("bottom_rank")) {
    bottom_rank = j.at("bottom_rank").get<std::size_t>();
  } else if (!bs.empty() && !bs.at(0).empty()) {
    bottom_rank = bs.at(0).at(0).size();
  } else {
    throw InvalidInput("bottom_rank is required when the first boundary has no rows");
  }
  std::vector<GroupRingMatrix> b{GroupRingMatrix(g, ring, bottom_rank, 0)};
  for (const auto& m : bs) {
    GroupRingMatrix x = matrix_from_json(m, g, ring);
    if (x.rows() == 0) x = GroupRingMatrix(g, ring, 0, b.back().rows());
    b.push_back(std::move(x));
  }
  std::vector<std::vector<std::string>> labels;
  if (j.contains("labels"))
    for (const auto& l : j.at("labels")) labels.push_back(strings(l, "labels"));
  return BasedChainComplex(g, ring, bottom, std::move(b), std::move(labels));
}

Json complex_to_json(const BasedChainComplex& c) {
  Json j;
  j["group"] = group_to_json(*c.group());
  j["ring"] = c.ring().to_string();
  j["bottom"] = c.bottom();
  j["bottom_rank"] = c.rank(c.bottom());
  Json bs = Json::array(), labels = Json::array();
  for (int d = c.bottom() + 1; d <= c.top(); ++d) bs.push_back(matrix_to_json(c.boundary(d)));
  for (int d = c.bottom(); d <= c.top(); ++d) {
    Json l = Json::array();
    for (std::size_t i = 0; i < c.rank(d); ++i) l.push_back(c.label(d, i));
    labels.push_back(l);
  }
  j["boundaries"] = bs;
  j["labels"] = labels;
  return j;
}

Json presentation_complex_to_json(const PresentationComplex& pc) {
  Json j;
  j["presentation"] = presentation_to_json(pc.presentation());
  j["hom"] = hom_to_json(pc.hom);
  j["complex"] = complex_to_json(pc.complex);
  return j;
}

// ---------------------------------------------------------------- reports

Json homology_to_json(const HomologyReport& h) {
  Json j;
  j["ring"] = h.ring.to_string();
  j["coefficients"] = to_string(h.mode);
  Json groups = Json::array();
  for (std::size_t i = 0; i < h.groups.size(); ++i) {
    Json g;
    g["degree"] = h.bottom + static_cast<int>(i);
    g["group"] = h.groups[i].to_string(h.ring);
    Json f = Json::array();
    for (const auto& x : h.groups[i].factors) f.push_back(integer_to_json(x));
    g["factors"] = f;
    groups.push_back(g);
  }
  j["groups"] = groups;
  return j;
}

Json obstruction_to_json(const ObstructionData& d) {
  Json j;
  j["kind"] = d.kind;
  j["description"] = d.description;
  Json vs = Json::array();
  for (const auto& v : d.vectors) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(integer_to_json(x));
    vs.push_back(row);
  }
  j["vectors"] = vs;
  Json ms = Json::array();
  for (const auto& x : d.moduli) ms.push_back(integer_to_json(x));
  j["moduli"] = ms;
  return j;
}

Json torsion_class_to_json(const TorsionClass& t) {
  Json j;
  j["size"] = t.size();
  j["parity"] = t.parity();
  j["representative"] = matrix_to_json(t.representative());
  return j;
}

Json torsion_invariant_to_json(const TorsionInvariant& inv, int precision) {
  Json j;
  j["regular_det"] = integer_to_json(inv.regular_det);
  j["aug_det"] = integer_to_json(inv.aug_det);
  j["abelianized_det"] = format_group_ring_element(inv.abelianized_det);
  Json cs = Json::array();
  for (std::size_t i = 0; i < inv.characters.size(); ++i) {
    const auto& c = inv.characters[i];
    Json x;
    x["index"] = i;
    x["trivial"] = c.character.is_trivial();
    x["value"] = c.value.to_string();
    x["norm"] = c.norm.to_string();
    x["magnitude"] = format_decimal(c.magnitude, precision);
    x["log_magnitude"] = format_decimal(c.log_magnitude, precision);
    x["unit_modulus"] = c.unit_modulus;
    cs.push_back(x);
  }
  j["characters"] = cs;
  return j;
}

// ---------------------------------------------------------------- models

namespace {

Json map_to_json(const ChainMap& f, int lo, int hi) {
  Json j = Json::array();
  for (int d = lo; d <= hi; ++d) j.push_back(matrix_to_json(f.at(d)));
  return j;
}

ChainMap map_from_json(const Json& j, const BasedChainComplex& s, const BasedChainComplex& t) {
  std::vector<GroupRingMatrix> maps;
  int d = 0;
  for (const auto& m : j) {
    GroupRingMatrix x = matrix_from_json(m, t.group());
    if (x.rows() == 0) x = GroupRingMatrix(t.group(), {}, 0, t.rank(d));
    if (x.cols() == 0) x = GroupRingMatrix(t.group(), {}, s.rank(d), t.rank(d));
    maps.push_back(std::move(x));
    ++d;
  }
  return ChainMap(s, t, 0, std::move(maps));
}

BasedChainComplex complex_over(const Json& j, const GroupPtr& g) {
  std::vector<GroupRingMatrix> b{GroupRingMatrix(g, {}, j.at("bottom_rank").get<std::size_t>(), 0)};
  for (const auto& m : j.at("boundaries")) {
    GroupRingMatrix x = matrix_from_json(m, g);
    if (x.rows() == 0) x = GroupRingMatrix(g, {}, 0, b.back().rows());
    if (x.cols() == 0 && b.back().rows() > 0) x = GroupRingMatrix(g, {}, x.rows(), b.back().rows());
    b.push_back(std::move(x));
  }
  std::vector<std::vector<std::string>> labels;
  if (j.contains("labels"))
    for (const auto& l : j.at("labels")) labels.push_back(strings(l, "labels"));
  return BasedChainComplex(g, {}, j.value("bottom", 0), std::move(b), std::move(labels));
}

}  // namespace

Json model_to_json(const ChainCobordismModel& m) {
  Json j;
  j["presentation"] = presentation_to_json(m.alpha_m.source());
  j["hom"] = hom_to_json(m.alpha_m);
  std::vector<std::string> seeds;
  for (const auto& s : m.seeds) seeds.push_back(format_word(s, m.alpha_m.source().generator_names));
  j["P_seeds"] = seeds;
  j["parity"] = m.parity;
  j["M"] = complex_to_json(m.m);
  j["W"] = complex_to_json(m.w);
  j["N"] = complex_to_json(m.n);
  j["incl_M"] = map_to_json(m.incl_m, 0, m.m.top());
  j["incl_N"] = map_to_json(m.incl_n, 0, m.n.top());
  return j;
}

ChainCobordismModel model_from_json(const Json& j, const Config& config) {
  auto p = presentation_from_json(require(j, "presentation"));
  GroupHom alpha = hom_from_json(p, require(j, "hom"), config);
  const GroupPtr& g = alpha.target();
  std::vector<Word> seeds;
  if (j.contains("P_seeds"))
    for (const auto& s : strings(j.at("P_seeds"), "P_seeds")) seeds.push_back(parse_word(s, p.generator_names));
  BasedChainComplex m = complex_over(require(j, "M"), g), w = complex_over(require(j, "W"), g),
                    n = complex_over(require(j, "N"), g);
  ChainMap incl_m = map_from_json(require(j, "incl_M"), m, w);
  ChainMap incl_n = map_from_json(require(j, "incl_N"), n, w);
  return {m, w, n, incl_m, incl_n, alpha, seeds, j.value("parity", 0)};
}

// ---------------------------------------------------------------- config

Config config_from_json(const Json& j, Config c) {
  if (!j.is_object()) throw InvalidInput("config must be an object");
  for (const auto& [key, v] : j.items()) {
    if (key == "exhaustive_check_bound") c.exhaustive_check_bound = v.get<std::size_t>();
    else if (key == "enumeration_bound") c.enumeration_bound = v.get<std::size_t>();
    else if (key == "coset_limit") c.coset_limit = v.get<std::size_t>();
    else if (key == "bar_column_budget") c.bar_column_budget = v.get<std::size_t>();
    else if (key == "dense_snf_entry_budget") c.dense_snf_entry_budget = v.get<std::size_t>();
    else if (key == "sylow_snf_entry_budget") c.sylow_snf_entry_budget = v.get<std::size_t>();
    else if (key == "bit_bound") c.bit_bound = v.get<std::size_t>();
    else if (key == "search_node_budget") c.search_node_budget = v.get<std::size_t>();
    else if (key == "search_beam_width") c.search_beam_width = v.get<std::size_t>();
    else if (key == "stabilization_cap") c.stabilization_cap = v.get<std::size_t>();
    else if (key == "float_precision") c.float_precision = v.get<int>();
    else throw InvalidInput("unknown config key '" + key + "'");
  }
  return c;
}

Json config_to_json(const Config& c) {
  Json j;
  j["exhaustive_check_bound"] = c.exhaustive_check_bound;
  j["enumeration_bound"] = c.enumeration_bound;
  j["coset_limit"] = c.coset_limit;
  j["bar_column_budget"] = c.bar_column_budget;
  j["dense_snf_entry_budget"] = c.dense_snf_entry_budget;
  j["sylow_snf_entry_budget"] = c.sylow_snf_entry_budget;
  j["bit_bound"] = c.bit_bound;
  j["search_node_budget"] = c.search_node_budget;
  j["search_beam_width"] = c.search_beam_width;
  j["stabilization_cap"] = c.stabilization_cap;
  j["float_precision"] = c.float_precision;
  return j;
}

}  // namespace quillen
