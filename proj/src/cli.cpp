#include "masa/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "masa/blocks.hpp"
#include "masa/error.hpp"
#include "masa/numeric.hpp"
#include "masa/reflexivity.hpp"
#include "masa/support.hpp"
#include "masa/verify.hpp"

namespace masa::cli {

using Json = nlohmann::ordered_json;

namespace {

std::string join(const std::vector<std::size_t>& xs, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + std::to_string(xs[i]);
  return s;
}

std::string braces(const std::vector<std::size_t>& xs) { return "{" + join(xs) + "}"; }

std::string format_relation(const SupportRelation& r) {
  std::string s = "{";
  bool first = true;
  for (auto [g, h] : r.pairs()) {
    s += (first ? "(" : ",(") + std::to_string(g) + "," + std::to_string(h) + ")";
    first = false;
  }
  return s + "}";
}

Json relation_json(const SupportRelation& r) {
  Json pairs = Json::array();
  for (auto [g, h] : r.pairs()) pairs.push_back(Json::array({g, h}));
  return pairs;
}

Json classes_json(const std::vector<ElementSet>& classes) {
  Json out = Json::array();
  for (const auto& c : classes) out.push_back(c);
  return out;
}

std::string classes_text(const std::vector<ElementSet>& classes) {
  std::string s;
  for (std::size_t i = 0; i < classes.size(); ++i) s += (i ? " " : "") + braces(classes[i]);
  return s;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

SupportRelation load_relation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open relation file '" + path + "'");
  try {
    return read_relation(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct Options {
  std::vector<std::string> groups;
  std::vector<std::string> subsets;
  std::string relation_file;
  std::string format = "text";
  std::string suite;
  std::uint64_t seed = 7;
  double tolerance = kRankTolerance;
  std::size_t max_order = 6;
  std::size_t gamma = 6;
  std::size_t trials = 100;
};

void emit(std::ostream& out, const Options& opt, const Json& json, const std::string& text) {
  if (opt.format == "json") {
    out << json.dump(2) << '\n';
  } else {
    out << text;
  }
}

FiniteGroup require_group(const Options& opt, std::size_t i = 0) {
  if (opt.groups.empty()) throw InputError("--group is required");
  return build_group(opt.groups.at(std::min(i, opt.groups.size() - 1)));
}

// Ω from --relation-file, or E^⋆ from --group/--subset.
SupportRelation require_relation(const Options& opt, std::string& source) {
  if (!opt.relation_file.empty()) {
    source = "relation file " + opt.relation_file;
    return load_relation(opt.relation_file);
  }
  if (opt.groups.empty() || opt.subsets.empty()) {
    throw InputError("give --relation-file, or --group together with --subset");
  }
  const FiniteGroup g = require_group(opt);
  const ElementSet e = parse_subset(g, opt.subsets.front());
  source = "E^* for E=" + braces(e) + " in " + g.name();
  return e_star(g, e);
}

int cmd_analyze(const Options& opt, std::ostream& out) {
  if (opt.groups.size() != 1 || opt.subsets.size() != 1) {
    throw InputError("analyze takes exactly one --group and one --subset");
  }
  const FiniteGroup g = require_group(opt);
  const ElementSet e = parse_subset(g, opt.subsets.front());
  if (e.empty()) throw InputError("empty subset: closure analyses need a nonempty E");

  const ModuleReport report = module_properties(g, e);
  if (!report.sides_agree()) {
    throw std::logic_error("group-side and support-side predicates disagree");
  }
  const Subgroup& h = *report.generated_subgroup;
  const StarClosure closure = star_closure(e_star(g, e));

  std::ostringstream text;
  Json json;
  json["command"] = "analyze";
  json["group"] = {{"spec", g.name()}, {"order", g.order()}};
  json["subset"] = e;
  json["unital"] = report.unital;
  json["selfadjoint"] = report.selfadjoint;
  json["algebra"] = report.algebra;
  json["von_neumann"] = report.von_neumann;
  json["subgroup"] = report.von_neumann;
  json["generated_subgroup"] = {{"elements", h.elements()}, {"order", h.order()}, {"index", index(h)}};
  json["coset_classes"] = classes_json(report.coset_classes->classes);
  json["wstar_blocks"] = closure.blocks.block_dims();

  text << "group: " << g.name() << " (order " << g.order() << ")\n"
       << "subset E: " << braces(e) << "\n"
       << "unital: " << yes_no(report.unital) << "\n"
       << "selfadjoint: " << yes_no(report.selfadjoint) << "\n"
       << "algebra: " << yes_no(report.algebra) << "\n"
       << "von Neumann algebra: " << yes_no(report.von_neumann) << "\n"
       << "subgroup: " << yes_no(report.von_neumann) << "\n"
       << "generated subgroup: " << braces(h.elements()) << " (order " << h.order()
       << ", index " << index(h) << ")\n"
       << "left cosets: " << classes_text(report.coset_classes->classes) << "\n"
       << "w*-closure blocks: " << braces(closure.blocks.block_dims()) << "\n";

  if (report.unital) {
    const auto dims = envelope_report(e_star(g, e));
    const SubsetInvariants inv = subset_module_invariants(g, e);
    json["envelope_blocks"] = dims;
    json["invariants"] = {{"generated_order", inv.generated_order},
                          {"generated_index", inv.generated_index}};
    text << "envelope blocks: " << braces(dims) << "\n"
         << "invariants: order " << inv.generated_order << ", index " << inv.generated_index
         << "\n";
  } else {
    json["envelope_blocks"] = nullptr;
    json["invariants"] = nullptr;
    text << "envelope blocks: n/a (not unital)\n";
  }
  emit(out, opt, json, text.str());
  return kSuccess;
}

int cmd_classify(const Options& opt, std::ostream& out) {
  if (opt.groups.empty() || opt.groups.size() > 2 || opt.subsets.size() != 2) {
    throw InputError("classify takes one or two --group values and exactly two --subset values");
  }
  const FiniteGroup g1 = require_group(opt, 0);
  const FiniteGroup g2 = require_group(opt, 1);
  const auto make = [](const FiniteGroup& g, const ElementSet& e, int which) {
    try {
      return Subgroup(g, e);
    } catch (const InputError& ex) {
      throw InputError("classification requires subgroups: subset " + std::to_string(which) +
                       " " + braces(e) + " of " + g.name() + " is " + ex.what());
    }
  };
  const Subgroup h1 = make(g1, parse_subset(g1, opt.subsets[0]), 1);
  const Subgroup h2 = make(g2, parse_subset(g2, opt.subsets[1]), 2);

  const ClassificationVerdict v = module_iso_decide(h1, h2);
  std::optional<bool> groups_iso;
  if (h1.order() <= kMaxIsomorphismOrder && h2.order() <= kMaxIsomorphismOrder) {
    groups_iso = small_group_isomorphic(h1, h2);
  }

  Json json;
  json["command"] = "classify";
  json["groups"] = Json::array({{{"spec", g1.name()}, {"order", g1.order()}},
                                {{"spec", g2.name()}, {"order", g2.order()}}});
  json["subgroups"] = Json::array({h1.elements(), h2.elements()});
  json["subgroup_orders"] = {v.subgroup_orders.first, v.subgroup_orders.second};
  json["indices"] = {v.indices.first, v.indices.second};
  json["subgroups_isomorphic_as_groups"] = groups_iso ? Json(*groups_iso) : Json(nullptr);
  json["isomorphic"] = v.isomorphic;
  json["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);

  std::ostringstream text;
  text << "group 1: " << g1.name() << " (order " << g1.order() << "), H1 = "
       << braces(h1.elements()) << "\n"
       << "group 2: " << g2.name() << " (order " << g2.order() << "), H2 = "
       << braces(h2.elements()) << "\n"
       << "subgroup orders: " << v.subgroup_orders.first << " " << v.subgroup_orders.second << "\n"
       << "indices: " << v.indices.first << " " << v.indices.second << "\n"
       << "subgroups isomorphic as groups: "
       << (groups_iso ? yes_no(*groups_iso) : "unknown (order above search bound)") << "\n"
       << "modules *-isomorphic: " << yes_no(v.isomorphic) << "\n";
  if (v.witness) text << "witness permutation: " << join(*v.witness, " ") << "\n";
  emit(out, opt, json, text.str());
  return v.isomorphic ? kSuccess : kNegativeVerdict;
}

int cmd_decompose(const Options& opt, std::ostream& out) {
  std::string source;
  const SupportRelation omega = require_relation(opt, source);
  const auto certs = full_decomposition(omega);
  const std::size_t n = omega.ground();
  const bool selfadjoint = omega.is_symmetric();

  bool all_ok = intersect_csl_sums(certs, n) == omega;
  const bool sums_ok = all_ok;
  std::optional<bool> b_sums_ok;
  if (selfadjoint) {
    b_sums_ok = intersect_selfadjoint_sums(certs, n) == omega;
    all_ok = all_ok && *b_sums_ok;
  }

  Json json;
  json["command"] = "decompose";
  json["source"] = source;
  json["ground"] = n;
  json["relation"] = relation_json(omega);
  json["selfadjoint"] = selfadjoint;
  Json atoms = Json::array();
  std::ostringstream text;
  text << "source: " << source << "\n"
       << "ground: " << n << "\n"
       << "relation: " << format_relation(omega) << "\n"
       << "selfadjoint: " << yes_no(selfadjoint) << "\n";
  for (const auto& c : certs) {
    all_ok = all_ok && c.verified.all();
    Json a;
    a["atom"] = c.atom;
    a["q"] = members_of(c.q_set);
    a["x"] = relation_json(c.x_support);
    a["a1"] = relation_json(c.summand_a1);
    a["a2"] = relation_json(c.summand_a2);
    a["b"] = c.selfadjoint_summand_b ? relation_json(*c.selfadjoint_summand_b) : Json(nullptr);
    a["verified"] = {{"union_identity", c.verified.union_identity},
                     {"a1_algebra", c.verified.a1_algebra},
                     {"a2_algebra", c.verified.a2_algebra},
                     {"b_identity", c.verified.b_identity ? Json(*c.verified.b_identity) : Json(nullptr)},
                     {"b_algebra", c.verified.b_algebra ? Json(*c.verified.b_algebra) : Json(nullptr)}};
    atoms.push_back(std::move(a));

    text << "atom " << c.atom << ":\n"
         << "  Q: " << format_index_set(c.q_set) << "\n"
         << "  X: " << format_relation(c.x_support) << "\n"
         << "  A1: " << format_relation(c.summand_a1) << "\n"
         << "  A2: " << format_relation(c.summand_a2) << "\n";
    if (c.selfadjoint_summand_b) text << "  B: " << format_relation(*c.selfadjoint_summand_b) << "\n";
    text << "  X = A1 u A2: " << yes_no(c.verified.union_identity)
         << "; A1 algebra: " << yes_no(c.verified.a1_algebra)
         << "; A2 algebra: " << yes_no(c.verified.a2_algebra);
    if (c.verified.b_identity) {
      text << "; B u B^T = X n X^T: " << yes_no(*c.verified.b_identity)
           << "; B algebra: " << yes_no(c.verified.b_algebra.value_or(false));
    }
    text << "\n";
  }
  json["atoms"] = std::move(atoms);
  json["intersection_of_csl_sums_equals_relation"] = sums_ok;
  json["intersection_of_selfadjoint_sums_equals_relation"] =
      b_sums_ok ? Json(*b_sums_ok) : Json(nullptr);
  json["verified"] = all_ok;
  text << "intersection of (A1 u A2) over atoms equals relation: " << yes_no(sums_ok) << "\n";
  if (b_sums_ok) {
    text << "intersection of (B u B^T) over atoms equals relation: " << yes_no(*b_sums_ok) << "\n";
  }
  text << "verified: " << yes_no(all_ok) << "\n";
  emit(out, opt, json, text.str());
  return all_ok ? kSuccess : kNegativeVerdict;
}

int cmd_envelope(const Options& opt, std::ostream& out) {
  std::string source;
  const SupportRelation omega = require_relation(opt, source);
  const BlockStructure blocks = cstar_support(omega);
  const TipResult tip = trivial_intersection(omega);
  const auto dims = envelope_report(omega);

  Json json;
  json["command"] = "envelope";
  json["source"] = source;
  json["ground"] = omega.ground();
  json["classes"] = classes_json(blocks.classes);
  json["trivial_intersection"] = tip.holds;
  json["ideal_masks_checked"] = tip.masks_checked;
  json["envelope_blocks"] = dims;

  std::ostringstream text;
  text << "source: " << source << "\n"
       << "ground: " << omega.ground() << "\n"
       << "blocks: " << classes_text(blocks.classes) << "\n"
       << "trivial intersection property: " << yes_no(tip.holds) << " (" << tip.masks_checked
       << " ideals checked)\n"
       << "envelope blocks: " << braces(dims) << "\n";

  if (omega.ground() <= 8) {
    NumericConfig config;
    config.seed = opt.seed;
    config.rank_tolerance = opt.tolerance;
    const NumericTipResult numeric = numeric_tip_check(matrix_unit_space(omega), config);
    auto sorted = numeric.cstar.block_dims;
    std::sort(sorted.begin(), sorted.end());
    const bool agrees = numeric.holds == tip.holds && sorted == dims;
    json["numeric_cross_check"] = agrees;
    text << "numeric cross-check: " << (agrees ? "agrees" : "DISAGREES") << "\n";
    if (!agrees) throw std::logic_error("numeric and combinatorial envelope reports disagree");
  } else {
    json["numeric_cross_check"] = nullptr;
  }
  emit(out, opt, json, text.str());
  return kSuccess;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  if (!verify::is_suite(opt.suite)) {
    std::string names;
    for (auto n : verify::kSuiteNames) names += std::string(names.empty() ? "" : ", ") + std::string(n);
    throw InputError("unknown suite '" + opt.suite + "' (expected one of: " + names + ")");
  }
  verify::SuiteOptions so;
  so.max_order = opt.max_order;
  so.gamma = opt.gamma;
  so.trials = opt.trials;
  so.seed = opt.seed;
  so.tolerance = opt.tolerance;
  const verify::SuiteResult r = verify::run_suite(opt.suite, so);

  Json json;
  json["command"] = "verify";
  json["suite"] = r.name;
  json["cases"] = r.cases;
  json["failures"] = r.failures;
  json["passed"] = r.passed();
  json["first_counterexample"] = r.first_counterexample ? Json(*r.first_counterexample) : Json(nullptr);

  std::ostringstream text;
  text << "suite " << r.name << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.cases
       << " cases, " << r.failures << " failures)\n";
  if (r.first_counterexample) text << "first counterexample: " << *r.first_counterexample << "\n";
  emit(out, opt, json, text.str());
  return r.passed() ? kSuccess : kNegativeVerdict;
}

}  // namespace

ElementSet parse_subset(const FiniteGroup& group, std::string_view literal) {
  std::string_view body = trim(literal);
  bool generate = false;
  std::size_t offset = static_cast<std::size_t>(body.data() - literal.data());
  if (body.starts_with("gen:")) {
    generate = true;
    body.remove_prefix(4);
    offset += 4;
  }
  if (body.empty() || body == "{}") {
    if (generate) throw InputError("subset literal: gen: needs at least one generator");
    return {};
  }
  std::vector<Element> elements;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    if (comma == std::string_view::npos) comma = body.size();
    const std::string_view raw = body.substr(pos, comma - pos);
    const std::string_view tok = trim(raw);
    const std::size_t column = offset + pos + 1;
    if (tok.empty() || tok.size() > 9 ||
        !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw InputError("subset literal '" + std::string(literal) + "' column " +
                       std::to_string(column) + ": expected an element index");
    }
    const Element value = std::stoul(std::string(tok));
    if (!group.contains(value)) {
      throw InputError("subset literal '" + std::string(literal) + "' column " +
                       std::to_string(column) + ": element " + std::to_string(value) +
                       " outside group of order " + std::to_string(group.order()));
    }
    elements.push_back(value);
    pos = comma + 1;
  }
  if (generate) return generate_subgroup(group, elements).elements();
  return normalize_subset(group, std::move(elements));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Support calculus for diagonal-masa bimodules and group coset modules", "masa"};
  app.require_subcommand(1);
  Options opt;

  const auto add_group_flags = [&opt](CLI::App* sub) {
    sub->add_option("--group", opt.groups, "Group spec: cyclic:n, dihedral:n, symmetric:n, "
                                           "product:(A,B) or table:<path>");
    sub->add_option("--subset", opt.subsets, "Subset literal: 0,2 or gen:1 or {}");
  };
  const auto add_format = [&opt](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  const auto add_numeric = [&opt](CLI::App* sub) {
    sub->add_option("--seed", opt.seed, "Random seed");
    sub->add_option("--tolerance", opt.tolerance, "Rank and span-membership tolerance");
  };

  auto* analyze = app.add_subcommand("analyze", "Algebraic properties of M(E^*)");
  add_group_flags(analyze);
  add_format(analyze);

  auto* classify = app.add_subcommand("classify", "Decide *-isomorphism of M(H1^*) and M(H2^*)");
  add_group_flags(classify);
  add_format(classify);

  auto* decompose = app.add_subcommand("decompose", "Per-atom CSL decomposition of a unital support");
  add_group_flags(decompose);
  decompose->add_option("--relation-file", opt.relation_file, "Relation literal file");
  add_format(decompose);

  auto* envelope = app.add_subcommand("envelope", "Blocks of C*(M(Omega)) and its C*-envelope");
  add_group_flags(envelope);
  envelope->add_option("--relation-file", opt.relation_file, "Relation literal file");
  add_format(envelope);
  add_numeric(envelope);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", opt.suite, "prop43, cor44, decomp23, lemma21, tip, thm45, lemma42")
      ->required();
  verify->add_option("--max-order", opt.max_order, "Largest group order for group suites");
  verify->add_option("--gamma", opt.gamma, "Largest ground-set size for relation suites");
  verify->add_option("--trials", opt.trials, "Randomized trials");
  add_numeric(verify);
  add_format(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "masa: " << e.what() << "\n" << app.help();
    return kInputError;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(opt, out);
    if (classify->parsed()) return cmd_classify(opt, out);
    if (decompose->parsed()) return cmd_decompose(opt, out);
    if (envelope->parsed()) return cmd_envelope(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out);
  } catch (const InputError& e) {
    err << "masa: input error: " << e.what() << "\n";
    return kInputError;
  } catch (const UnsupportedSize& e) {
    err << "masa: unsupported size: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "masa: internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace masa::cli
