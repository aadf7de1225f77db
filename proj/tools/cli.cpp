#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "quillen/cobordism.hpp"
#include "quillen/group_homology.hpp"
#include "quillen/io.hpp"
#include "quillen/plus_construction.hpp"
#include "quillen/torsion.hpp"
#include "quillen/words.hpp"

namespace quillen::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string format = "json";
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output;
  std::string ring = "Z";
  std::string group;
  std::string input;
  std::string coefficients = "trivial";
  int parity = 0;
  bool parity_given = false;
  bool conjugate = false;
  bool with_invariant = false;
};

struct Outcome {
  ExitCode code = kOk;
  Json result;
  Json obstruction;
};

std::string read_file(const std::string& path) {
  if (path.empty()) throw InvalidInput("missing input file");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json(const std::string& path) { return Json::parse(read_file(path)); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

GroupPtr load_group(const std::string& spec, const Config& config) {
  if (spec.empty()) throw InvalidInput("--group is required");
  std::error_code ec;
  if (fs::is_regular_file(spec, ec)) return group_from_json(read_json(spec), config);
  return group_from_json(Json(spec), config);
}

Config load_config(const Options& o) {
  Config c;
  if (!o.config_path.empty()) c = config_from_json(read_json(o.config_path), c);
  for (const auto& kv : o.overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidInput("--set expects key=value, got '" + kv + "'");
    Json j;
    j[kv.substr(0, eq)] = Json::parse(kv.substr(eq + 1));
    c = config_from_json(j, c);
  }
  return c;
}

std::vector<Word> words_from_json(const Json& j, const FinitePresentation& p) {
  std::vector<Word> out;
  if (!j.is_array()) throw InvalidInput("expected a list of words");
  for (const auto& w : j) out.push_back(parse_word(w.get<std::string>(), p.generator_names));
  return out;
}

GroupHom hom_of_job(const Json& job, const Config& config) {
  FinitePresentation p = presentation_from_json(field(job, "presentation"));
  return hom_from_json(p, field(job, "hom"), config);
}

// JSON rows, or one row per line with entries separated by commas.
GroupRingMatrix load_matrix(const std::string& path, const GroupPtr& g) {
  const std::string text = read_file(path);
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    j = Json::array();
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      Json row = Json::array();
      std::istringstream entries(line);
      std::string e;
      while (std::getline(entries, e, ',')) row.push_back(e);
      j.push_back(row);
    }
  }
  return matrix_from_json(j, g);
}

Json h2_to_json(const H2Result& h) {
  Json j;
  j["ring"] = h.ring.to_string();
  j["group"] = h.group.to_string(h.ring);
  Json f = Json::array();
  for (const auto& x : h.group.factors) f.push_back(integer_to_json(x));
  j["factors"] = f;
  j["betti"] = h.group.betti;
  j["partial"] = h.partial;
  j["method"] = h.method;
  j["notes"] = h.notes;
  return j;
}

Json subgroup_to_json(const Subgroup& s) {
  Json j;
  j["order"] = s.order();
  j["members"] = s.members;
  return j;
}

Json records_to_json(const std::vector<AttachmentRecord>& cells) {
  Json out = Json::array();
  for (const auto& r : cells) {
    Json c;
    c["dimension"] = r.dimension;
    c["label"] = r.label;
    Json row = Json::array();
    for (const auto& e : r.boundary_row) row.push_back(format_group_ring_element(e));
    c["boundary_row"] = row;
    out.push_back(c);
  }
  return out;
}

Json triviality_to_json(const TrivialityReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["nodes"] = r.nodes;
  j["stabilization"] = r.stabilization;
  j["reason"] = r.reason;
  return j;
}

Outcome failed(Outcome o, const ObstructionData& d) {
  o.code = kObstruction;
  o.obstruction = obstruction_to_json(d);
  return o;
}

ObstructionData group_obstruction(std::string kind, std::string description, const IntVector& factors) {
  return {std::move(kind), std::move(description), {}, factors};
}

// ---------------------------------------------------------------- commands

Outcome cmd_homology(const Options& o, const Config& config) {
  BasedChainComplex c = complex_from_json(read_json(o.input), config);
  if (o.coefficients != "trivial" && o.coefficients != "regular")
    throw InvalidInput("--coefficients must be trivial or regular");
  const auto mode = o.coefficients == "regular" ? Coefficients::Regular : Coefficients::Trivial;
  Outcome out;
  Json ranks = Json::array();
  for (int d = c.bottom(); d <= c.top(); ++d) ranks.push_back(c.rank(d));
  out.result["group_order"] = c.group()->order();
  out.result["ranks"] = ranks;
  out.result["homology"] = homology_to_json(homology(c, RingSpec::parse(o.ring), mode, config));
  return out;
}

Outcome cmd_schur(const Options& o, const Config& config) {
  GroupPtr g = load_group(o.group.empty() ? o.input : o.group, config);
  Outcome out;
  out.result["order"] = g->order();
  out.result["h2"] = h2_to_json(h2_group(g, RingSpec::parse(o.ring), config));
  return out;
}

Outcome cmd_moore(const Options& o, const Config& config) {
  GroupPtr g = load_group(o.group.empty() ? o.input : o.group, config);
  H2Result h2 = h2_group(g, {}, config);
  Outcome out;
  out.result["order"] = g->order();
  out.result["h2"] = h2_to_json(h2);
  out.result["moore_space_exists"] = h2.group.is_zero();
  if (!h2.group.is_zero())
    return failed(out, group_obstruction("h2_nonzero", "H_2(G; Z) = " + h2.group.to_string({}), h2.group.factors));
  return out;
}

Outcome cmd_sphere(const Options& o, const Config& config) {
  GroupPtr g = load_group(o.group.empty() ? o.input : o.group, config);
  IntVector h1 = abelianization(*g);
  Outcome out;
  out.result["order"] = g->order();
  Json f = Json::array();
  for (const auto& x : h1) f.push_back(integer_to_json(x));
  out.result["h1"] = f;
  if (!h1.empty()) return failed(out, group_obstruction("h1_nonzero", "G is not perfect", h1));
  H2Result h2 = h2_group(g, {}, config);
  out.result["h2"] = h2_to_json(h2);
  if (!h2.group.is_zero())
    return failed(out, group_obstruction("h2_nonzero", "H_2(G; Z) = " + h2.group.to_string({}), h2.group.factors));
  out.result["superperfect"] = true;
  return out;
}

Outcome cmd_knot(const Options& o, const Config& config) {
  Json job = read_json(o.input);
  FinitePresentation p = presentation_from_json(field(job, "presentation"));
  std::optional<Word> witness;
  if (job.contains("witness")) witness = parse_word(job.at("witness").get<std::string>(), p.generator_names);
  std::vector<GroupHom> probes;
  if (job.contains("probes"))
    for (const auto& h : job.at("probes")) probes.push_back(hom_from_json(p, h, config));
  KnotReport r = knot_group_criterion(p, witness, probes, config);
  Outcome out;
  out.result["verdict"] = to_string(r.verdict);
  Json f = Json::array();
  for (const auto& x : r.h1) f.push_back(integer_to_json(x));
  out.result["h1"] = f;
  out.result["reasons"] = r.reasons;
  if (r.verdict == KnotVerdict::Refuted) {
    std::string why = r.reasons.empty() ? "refuted" : r.reasons.front();
    return failed(out, group_obstruction("knot_refuted", why, r.h1));
  }
  return out;
}

Outcome cmd_target(const Options& o, const Config& config) {
  Json job = read_json(o.input);
  GroupHom alpha = hom_of_job(job, config);
  RingSpec ring = RingSpec::parse(job.contains("ring") ? job.at("ring").get<std::string>() : o.ring);
  HomologyTargetResult r = homology_equivalence_target(alpha, ring, config);
  Outcome out;
  out.result["w_presentation"] = presentation_to_json(r.w_hom.source());
  out.result["x"] = complex_to_json(r.x);
  out.result["y"] = complex_to_json(r.y);
  out.result["added_cells"] = records_to_json(r.added_cells);
  Json rep;
  rep["ring"] = r.report.ring.to_string();
  rep["x_homology"] = homology_to_json(r.report.x_homology);
  rep["y_homology"] = homology_to_json(r.report.y_homology);
  rep["relative_homology"] = homology_to_json(r.report.relative_homology);
  rep["relative_vanishes"] = r.report.relative_vanishes;
  rep["im_b_zero"] = r.report.im_b_zero;
  rep["higher_homology_matches"] = r.report.higher_homology_matches;
  rep["w_equals_x"] = r.report.w_equals_x;
  rep["notes"] = r.report.notes;
  out.result["report"] = rep;
  return out;
}

GroupRingMatrix job_torsion(const Json& job, const GroupPtr& g) {
  if (!job.contains("torsion_matrix")) return GroupRingMatrix::identity(g, 1);
  return matrix_from_json(job.at("torsion_matrix"), g);
}

Outcome cmd_plus(const Options& o, const Config& config) {
  Json job = read_json(o.input);
  GroupHom alpha = hom_of_job(job, config);
  if (job.contains("ring") && RingSpec::parse(job.at("ring").get<std::string>()) != RingSpec::integers())
    throw InvalidInput("the plus construction with torsion is carried out over Z");
  std::vector<Word> seeds = job.contains("P_seeds") ? words_from_json(job.at("P_seeds"), alpha.source()) : std::vector<Word>{};
  PlusResult r = plus_with_torsion(alpha, seeds, job_torsion(job, alpha.target()), config);
  Outcome out;
  out.result["x"] = complex_to_json(r.x);
  out.result["x_plus"] = complex_to_json(r.x_plus);
  out.result["relative"] = complex_to_json(r.relative);
  out.result["added_cells"] = records_to_json(r.added_cells);
  out.result["torsion"] = torsion_class_to_json(r.torsion);
  out.result["invariant"] = torsion_invariant_to_json(invariant(r.torsion, config), config.float_precision);
  out.result["checks"] = r.checks;
  return out;
}

Outcome cmd_torsion(const Options& o, const Config& config) {
  GroupPtr g = load_group(o.group, config);
  TorsionClass t(load_matrix(o.input, g), o.parity);
  if (o.conjugate) t = conjugate(t);
  Outcome out;
  out.result["torsion"] = torsion_class_to_json(t);
  out.result["inverse"] = matrix_to_json(t.inverse());
  if (o.with_invariant) {
    out.result["invariant"] = torsion_invariant_to_json(invariant(t, config), config.float_precision);
    out.result["triviality"] = triviality_to_json(is_trivial_candidate(t, config));
  }
  return out;
}

Outcome cmd_classify(const Options& o, const Config& config) {
  ChainCobordismModel model = model_from_json(read_json(o.input), config);
  VerifyReport v = verify_one_sided_h(model, config);
  if (!v.ok) {
    ObstructionData d{"not_one_sided_h", "model fails verification", {}, {}};
    for (const auto& s : v.diagnostics) d.description += "; " + s;
    Outcome out;
    out.result["diagnostics"] = v.diagnostics;
    return failed(out, d);
  }
  CobordismClass c = classify(model, config);
  Outcome out;
  out.result["diagnostics"] = v.diagnostics;
  std::vector<std::string> seeds;
  for (const auto& s : c.seeds) seeds.push_back(format_word(s, model.alpha_m.source().generator_names));
  out.result["P_seeds"] = seeds;
  out.result["P"] = c.p ? subgroup_to_json(*c.p) : Json();
  out.result["tau"] = torsion_class_to_json(c.tau);
  out.result["invariant"] = torsion_invariant_to_json(invariant(c.tau, config), config.float_precision);
  out.result["triviality"] = triviality_to_json(is_trivial_candidate(c.tau, config));
  return out;
}

Outcome cmd_realize(const Options& o, const Config& config) {
  Json job = read_json(o.input);
  GroupHom alpha = hom_of_job(job, config);
  std::vector<Word> seeds = job.contains("P_seeds") ? words_from_json(job.at("P_seeds"), alpha.source()) : std::vector<Word>{};
  int parity = o.parity_given ? o.parity : job.value("parity", 0);
  TorsionClass tau(job_torsion(job, alpha.target()), parity);
  ChainCobordismModel model = realize(alpha, seeds, tau, config);
  VerifyReport v = verify_one_sided_h(model, config);
  Outcome out;
  out.result["model"] = model_to_json(model);
  out.result["verified"] = v.ok;
  out.result["diagnostics"] = v.diagnostics;
  return out;
}

Outcome cmd_enumerate(const Options& o, const Config& config) {
  GroupPtr g = load_group(o.group.empty() ? o.input : o.group, config);
  Outcome out;
  out.result["order"] = g->order();
  Json classes = Json::array();
  for (const auto& c : enumerate_classes(g, config)) {
    Json j;
    j["P"] = subgroup_to_json(c.p);
    j["quotient_order"] = c.quotient->order();
    j["nontrivial_characters"] = c.nontrivial_characters;
    j["wh_rank"] = c.wh_rank ? Json(*c.wh_rank) : Json();
    j["description"] = c.description;
    classes.push_back(j);
  }
  out.result["classes"] = classes;
  return out;
}

Outcome cmd_framing(const Options& o, const Config&) {
  Json job = read_json(o.input);
  FramingProblem fp;
  const Json& a = field(job, "a");
  const Json& w = field(job, "w");
  const std::size_t rows = a.size(), cols = rows ? a.at(0).size() : 0;
  fp.a_mod2 = IntMatrix(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (a.at(i).size() != cols) throw InvalidInput("ragged matrix 'a'");
    for (std::size_t j = 0; j < cols; ++j) fp.a_mod2(i, j) = a.at(i).at(j).get<long>();
  }
  for (const auto& x : w) fp.w.push_back(Integer(x.get<long>()));
  fp.summand_certificate = job.value("summand_certificate", false);
  Outcome out;
  Json eps = Json::array();
  for (const auto& x : framing_correction(fp)) eps.push_back(integer_to_json(x));
  out.result["epsilon"] = eps;
  return out;
}

// ---------------------------------------------------------------- output

void render_text(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [&](const Json& v) {
    if (!v.is_array()) return false;
    return std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); });
  };
  auto inline_array = [&](const Json& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar(v[i]);
    return s + "]";
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_primitive()) out << pad << k << ": " << scalar(v) << "\n";
      else if (flat(v)) out << pad << k << ": " << inline_array(v) << "\n";
      else {
        out << pad << k << ":\n";
        render_text(v, out, indent + 1);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_primitive()) out << pad << "- " << scalar(v) << "\n";
      else if (flat(v)) out << pad << "- " << inline_array(v) << "\n";
      else {
        out << pad << "-\n";
        render_text(v, out, indent + 1);
      }
    }
  } else {
    out << pad << scalar(j) << "\n";
  }
}

std::string status_name(ExitCode c) {
  switch (c) {
    case kOk: return "ok";
    case kObstruction: return "obstruction";
    case kInvalidInput: return "invalid_input";
    case kBudgetExceeded: return "budget_exceeded";
  }
  return "unknown";
}

void emit(const Options& o, const std::string& command, ExitCode code, const Json& result, const Json& obstruction,
          const std::string& error, std::ostream& out, std::ostream& err) {
  Json report;
  report["tool"] = "quillen";
  report["version"] = QUILLEN_VERSION;
  report["command"] = command;
  report["status"] = status_name(code);
  if (!result.is_null()) report["result"] = result;
  if (!obstruction.is_null()) report["obstruction"] = obstruction;
  if (!error.empty()) report["error"] = error;

  std::string text;
  if (o.format == "text") {
    std::ostringstream s;
    render_text(report, s, 0);
    text = s.str();
  } else {
    text = report.dump(2) + "\n";
  }
  out << text;

  std::string path = o.output;
  const char* dir = std::getenv("QUILLEN_OUTPUT_DIR");
  if (dir && *dir) {
    if (path.empty()) path = command + (o.format == "text" ? ".txt" : ".json");
    if (fs::path(path).is_relative()) path = (fs::path(dir) / path).string();
  }
  if (!path.empty()) {
    std::ofstream f(path, std::ios::binary);
    if (!f) err << "quillen: cannot write report to '" << path << "'\n";
    f << text;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Plus constructions, group homology and Whitehead torsion on chain models", "quillen"};
  app.set_version_flag("--version", std::string(QUILLEN_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--config", o.config_path, "JSON file of budget overrides");
  app.add_option("--set", o.overrides, "Budget override key=value (repeatable)");
  app.add_option("-o,--output", o.output, "Also write the report to this file");

  using Handler = Outcome (*)(const Options&, const Config&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.emplace_back(sub, h);
    return sub;
  };

  auto* homology_cmd = add("homology", "Homology of a based chain complex", cmd_homology);
  homology_cmd->add_option("input", o.input, "Complex JSON")->required();
  homology_cmd->add_option("--ring", o.ring, "Coefficient ring: Z, Z/p or Z[1/p,...]");
  homology_cmd->add_option("--coefficients", o.coefficients, "trivial or regular");

  for (auto [name, help, h] : {std::tuple{"schur", "Schur multiplier H_2(G)", cmd_schur},
                               std::tuple{"moore", "Moore space criterion H_2(G) = 0", cmd_moore},
                               std::tuple{"sphere-criterion", "Superperfection test", cmd_sphere},
                               std::tuple{"enumerate", "Perfect normal subgroups and their torsion groups", cmd_enumerate}}) {
    auto* sub = add(name, help, h);
    sub->add_option("input", o.input, "Group JSON file or builtin name");
    sub->add_option("--group", o.group, "Group JSON file or builtin name");
    if (std::string(name) == "schur") sub->add_option("--ring", o.ring, "Coefficient ring");
  }

  auto* knot_cmd = add("knot-criterion", "Necessary conditions for a knot group", cmd_knot);
  knot_cmd->add_option("input", o.input, "Job JSON")->required();

  auto* target_cmd = add("target", "Homology equivalence onto a prescribed fundamental group", cmd_target);
  target_cmd->add_option("input", o.input, "Job JSON")->required();
  target_cmd->add_option("--ring", o.ring, "Coefficient ring");

  auto* plus_cmd = add("plus", "Plus construction with prescribed torsion", cmd_plus);
  plus_cmd->add_option("input", o.input, "Job JSON")->required();

  auto* torsion_cmd = add("torsion", "Whitehead torsion of an invertible matrix", cmd_torsion);
  torsion_cmd->add_option("input", o.input, "Matrix file (JSON rows or comma-separated lines)")->required();
  torsion_cmd->add_option("--group", o.group, "Group JSON file or builtin name")->required();
  torsion_cmd->add_option("--parity", o.parity, "Ambient dimension mod 2")->check(CLI::Range(0, 1));
  torsion_cmd->add_flag("--conjugate", o.conjugate, "Replace the class by its conjugate");
  torsion_cmd->add_flag("--invariant", o.with_invariant, "Compute invariants and run the triviality search");

  auto* classify_cmd = add("classify", "Class (P, tau) of a cobordism model", cmd_classify);
  classify_cmd->add_option("input", o.input, "Model JSON")->required();

  auto* realize_cmd = add("realize", "Cobordism model realizing (P, tau)", cmd_realize);
  realize_cmd->add_option("input", o.input, "Job JSON")->required();
  realize_cmd->add_option("--parity", o.parity, "Ambient dimension mod 2")->check(CLI::Range(0, 1));

  auto* framing_cmd = add("framing", "Framing correction over F_2", cmd_framing);
  framing_cmd->add_option("input", o.input, "Job JSON")->required();

  std::string command;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    o.parity_given = realize_cmd->count("--parity") > 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  Handler handler = nullptr;
  for (auto& [sub, h] : commands)
    if (sub->parsed()) {
      command = sub->get_name();
      handler = h;
    }

  ExitCode code = kOk;
  Json result, obstruction;
  std::string error;
  try {
    Config config = load_config(o);
    Outcome r = handler(o, config);
    code = r.code;
    result = std::move(r.result);
    obstruction = std::move(r.obstruction);
  } catch (const Obstruction& e) {
    code = kObstruction;
    obstruction = obstruction_to_json(e.data());
    error = e.what();
  } catch (const BudgetExceeded& e) {
    code = kBudgetExceeded;
    error = e.what();
  } catch (const InvalidInput& e) {
    code = kInvalidInput;
    error = e.what();
  } catch (const Json::exception& e) {
    code = kInvalidInput;
    error = e.what();
  } catch (const Error& e) {
    code = kInvalidInput;
    error = e.what();
  }
  if (!error.empty()) err << "quillen " << command << ": " << error << "\n";
  emit(o, command, code, result, obstruction, error, out, err);
  return code;
}

}  // namespace quillen::cli
