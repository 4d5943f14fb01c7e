// Command-line driver.  Every command builds one JSON report; the text
// format is a rendering of that same report.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cychom/chern.hpp"
#include "cychom/corpus.hpp"
#include "cychom/crossprod.hpp"
#include "cychom/cyclic.hpp"
#include "cychom/hochschild.hpp"
#include "cychom/periodic.hpp"
#include "cychom/spectrum.hpp"

using json = nlohmann::ordered_json;
using namespace cychom;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Flags {
  int max_degree = 3;
  bool normalized = false, unnormalized = false;
  std::optional<int> field_order;
  std::string format = "text";
  std::size_t budget = default_budget_dims();
  unsigned seed = 1;
  bool timing = false;

  ComplexKind kind() const {
    if (unnormalized) return ComplexKind::Unnormalized;
    if (normalized) return ComplexKind::Normalized;
    return ComplexKind::Reduced;
  }
  WedderburnOptions wedderburn() const {
    WedderburnOptions o;
    o.field_order = field_order;
    o.seed = seed;
    return o;
  }
};

int exit_code_for(const Error& e) {
  const std::string& k = e.kind();
  if (k == "SizeOverflow" || k == "ClosureOverflow" || k == "SplittingFieldTooLarge" || k == "OrderUnbounded") return 2;
  if (k == "NotStabilized") return 3;
  return 1;
}

std::string scalar_text(const Scalar& s) { return s.str(); }

json input_entry(const std::string& spec, const FDAlgebra& A) {
  return json{{"spec", spec},
              {"name", A.name()},
              {"dim", A.dim()},
              {"field_order", A.field_order()},
              {"unital", A.is_unital()},
              {"digest", digest(emit_algebra(A))}};
}

AlgebraPtr load(const std::string& spec, const Flags& f, json& inputs) {
  FDAlgebra A = resolve_algebra(spec);
  if (f.field_order && *f.field_order != A.field_order()) A = A.over_field(*f.field_order);
  inputs.push_back(input_entry(spec, A));
  return share(std::move(A));
}

json hp_json(const HPReport& r) {
  json j{{"algebra", r.algebra},  {"even", r.even_dim}, {"odd", r.odd_dim}, {"method", r.method},
         {"blocks", r.blocks},    {"agree", r.agree},   {"inconclusive", r.inconclusive}};
  if (r.stabilization) {
    const auto& s = *r.stabilization;
    j["stabilization"] = json{{"cutoff", s.cutoff},       {"rank_S", s.rank_S},         {"even_stable", s.even_stable},
                              {"odd_stable", s.odd_stable}, {"even_dim", s.even_dim}, {"odd_dim", s.odd_dim}};
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::vector<int> subspace_dims(const std::vector<Subspace<Scalar>>& v) {
  std::vector<int> d;
  for (const auto& s : v) d.push_back(s.dim());
  return d;
}

json relation_json(const PrimRelation& r) {
  json pairs = json::array();
  for (const auto& [a, b] : r.pairs) pairs.push_back({a, b});
  return json{{"pairs", pairs},           {"map", r.map},           {"is_function", r.is_function},
              {"bijective", r.bijective}, {"prim_source", r.prim_source}, {"prim_target", r.prim_target}};
}

KClassRep load_kclass(const std::string& spec, json& inputs) {
  std::error_code ec;
  KClassDescription d;
  if (std::filesystem::is_regular_file(spec, ec)) {
    d = parse_kclass(read_text_file(spec));
  } else if (spec == "E11_in_M2") {
    d = {"idempotent", "M2", 1, {{0, 0, 0, "1"}}};
  } else if (spec == "S3_block") {
    // (1/3)(2 - r - r^2), r the 3-cycles [1 2 0] and [2 0 1].
    d = {"idempotent", "group:S3", 1, {}};
    auto G = symmetric_group_3();
    for (int g = 0; g < G.order(); ++g) {
      if (g == G.identity()) d.entries.emplace_back(0, 0, g, "2/3");
      else if (G.element_order(g) == 3) d.entries.emplace_back(0, 0, g, "-1/3");
    }
  } else if (spec == "s_in_QZ2") {
    d = {"invertible", "group:Z2", 1, {{0, 0, 1, "1"}}};
  } else {
    throw InvalidArgument("unknown K-class '" + spec + "' (file, E11_in_M2, S3_block, s_in_QZ2)");
  }
  auto A = share(resolve_algebra(d.algebra));
  inputs.push_back(input_entry(d.algebra, *A));
  Element x = kclass_element(d, *A);
  return d.kind == "idempotent" ? make_idempotent(A, d.size, x) : make_invertible(A, d.size, x);
}

// ---------------------------------------------------------------------------
// Text rendering of a report.

void render(std::ostream& os, const json& j, int indent) {
  const std::string pad(indent, ' ');
  auto is_flat = [](const json& a) {
    for (const auto& x : a)
      if (x.is_structured() && !(x.is_array() && std::all_of(x.begin(), x.end(), [](const json& y) { return y.is_primitive(); })))
        return false;
    return true;
  };
  auto inline_value = [&](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : ", ") + (x.is_string() ? x.get<std::string>() : x.dump());
      return "[" + s + "]";
    }
    return v.dump();
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || (v.is_array() && !is_flat(v))) {
        os << pad << k << ":\n";
        render(os, v, indent + 2);
      } else {
        os << pad << k << ": " << inline_value(v) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object()) {
        std::ostringstream sub;
        render(sub, v, indent + 2);
        std::string s = sub.str();
        if (s.size() > static_cast<std::size_t>(indent)) s.replace(indent, 2, "- ");
        os << s;
      } else {
        os << pad << "- " << inline_value(v) << "\n";
      }
    }
  } else {
    os << pad << inline_value(j) << "\n";
  }
}

void emit(const json& report, const Flags& f) {
  if (f.format == "machine")
    std::cout << report.dump(2) << "\n";
  else
    render(std::cout, report, 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Hochschild, cyclic and periodic cyclic homology of finite-dimensional algebras"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Flags f;
  std::string target, ideal = "radical", hp_mode = "both";
  int cutoff = 5, degree = 0;
  std::optional<int> order_bound;
  bool corpus_check = false;

  auto common = [&](CLI::App* s) {
    s->add_option("--max-degree", f.max_degree, "largest homological degree")->check(CLI::Range(0, 64));
    auto* n = s->add_flag("--normalized", f.normalized, "normalized complex (frame {1})");
    auto* u = s->add_flag("--unnormalized", f.unnormalized, "unnormalized complex");
    n->excludes(u);
    s->add_option("--field-order", f.field_order, "cyclotomic order of the ground field")->check(CLI::PositiveNumber);
    s->add_option("--format", f.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
    s->add_option("--budget-dims", f.budget, "largest total chain dimension")->check(CLI::PositiveNumber);
    s->add_option("--seed", f.seed, "seed for randomized choices");
    s->add_flag("--timing", f.timing, "include elapsed time (reports are then not reproducible)");
  };
  auto sub = [&](const std::string& name, const std::string& help, const std::string& what) {
    auto* s = app.add_subcommand(name, help);
    if (!what.empty()) s->add_option(what, target, what)->required();
    common(s);
    return s;
  };
  sub("hh", "Hochschild homology dims", "algebra");
  sub("hc", "cyclic homology dims", "algebra");
  auto* hp_cmd = sub("hp", "periodic cyclic homology", "algebra");
  hp_cmd->add_option("--mode", hp_mode, "shortcut, stabilization or both")
      ->check(CLI::IsMember({"shortcut", "stabilization", "both"}));
  hp_cmd->add_option("--cutoff", cutoff, "S-stabilization cutoff (>= 4)");
  sub("sbi-check", "exactness of the SBI sequence", "algebra");
  auto* exc = sub("excision-check", "six-term exactness for an ideal", "algebra");
  exc->add_option("--ideal", ideal, "radical, strict_upper, first_factor or gens:i,j,...");
  sub("spectrum", "radical, Wedderburn blocks and primitive ideals", "algebra");
  sub("filtration", "standard filtration and the abelian check", "algebra");
  sub("ss-e1", "first page of the spectral sequence against HP", "algebra");
  sub("sp-check", "spectrum-preserving verdict for a named morphism", "morphism");
  sub("crossed", "crossed product decomposition for an action", "action");
  auto* ch = sub("chern", "Chern character of a K-class representative", "kclass");
  ch->add_option("--degree", degree, "q: HC_{2q} for idempotents, HC_{2q+1} for invertibles")->check(CLI::Range(0, 8));
  ch->add_option("--order-bound", order_bound, "n with u^n = 1 for invertibles");
  auto* corp = sub("corpus", "list the built-in corpus", "");
  corp->add_flag("--check", corpus_check, "parse, validate and compute hh --max-degree 3 for each entry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  json report;
  report["tool"] = "cychom";
  report["version"] = kVersion;
  report["format_version"] = kFormatVersion;
  json command{{"name", cmd}, {"target", target}};
  command["max_degree"] = f.max_degree;
  command["complex"] = to_string(f.kind());
  if (f.field_order) command["field_order"] = *f.field_order;
  report["command"] = command;
  json inputs = json::array();
  json result;
  int rc = 0;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (cmd == "hh" || cmd == "hc") {
      auto A = load(target, f, inputs);
      HochschildOptions opt;
      opt.kind = f.kind();
      opt.budget = f.budget;
      opt.representatives = false;
      auto r = cmd == "hh" ? hh(A, f.max_degree, opt) : hc(A, f.max_degree, opt);
      result = json{{"theory", r.theory}, {"kind", to_string(r.kind)}, {"dims", r.dims()}};
    } else if (cmd == "hp") {
      auto A = load(target, f, inputs);
      HPMode mode = hp_mode == "shortcut" ? HPMode::RadicalShortcut
                    : hp_mode == "stabilization" ? HPMode::Stabilization
                                                 : HPMode::Both;
      auto budget = std::min(f.budget, default_stabilization_budget());
      auto r = A->is_unital() ? hp(A, mode, cutoff, budget, f.kind()) : hp_nonunital(*A, mode, cutoff, budget);
      result = hp_json(r);
      if (r.inconclusive) rc = 3;
    } else if (cmd == "sbi-check") {
      auto A = load(target, f, inputs);
      auto r = sbi_check(A, f.max_degree, f.kind(), f.budget);
      json nodes = json::array();
      for (const auto& n : r.nodes)
        nodes.push_back(json{{"node", n.name},
                             {"dim", n.dim},
                             {"rank_in", n.rank_in},
                             {"rank_out", n.rank_out},
                             {"composite_rank", n.composite_rank},
                             {"exact", n.exact}});
      result = json{{"hh", r.hh}, {"hc", r.hc}, {"nodes", nodes}, {"verdict", r.exact ? "PASS" : "FAIL"}};
    } else if (cmd == "excision-check") {
      auto A = load(target, f, inputs);
      auto J = named_ideal(A, ideal);
      auto r = excision_check(J, HPMode::Both, cutoff, std::min(f.budget, default_stabilization_budget()));
      json nodes = json::array();
      for (const auto& n : r.nodes)
        nodes.push_back(json{{"node", n.name}, {"dim", n.dim}, {"rank_in", n.rank_in}, {"rank_out", n.rank_out},
                             {"exact", n.exact}});
      result = json{{"ideal", ideal},
                    {"ideal_dim", J.space.dim()},
                    {"hp_ideal", hp_json(r.ideal)},
                    {"hp_algebra", hp_json(r.algebra)},
                    {"hp_quotient", hp_json(r.quotient)},
                    {"rank_inclusion", r.rank_inclusion},
                    {"rank_projection", r.rank_projection},
                    {"rank_composite", r.rank_composite},
                    {"nodes", nodes},
                    {"verdict", r.exact ? "PASS" : "FAIL"}};
    } else if (cmd == "spectrum") {
      auto A = load(target, f, inputs);
      auto s = wedderburn_blocks(*A, f.wedderburn());
      json blocks = json::array();
      for (const auto& b : s.blocks) blocks.push_back(json{{"size", b.size}, {"dim", b.dim}});
      int sq = 0;
      for (const auto& b : s.blocks) sq += b.size * b.size;
      result = json{{"field_order", s.field_order},
                    {"radical_dim", s.radical.dim()},
                    {"blocks", blocks},
                    {"sizes", s.sizes()},
                    {"sum_of_squares_plus_radical", sq + s.radical.dim()},
                    {"center_dim", s.center.dim()},
                    {"prim_point_dims", subspace_dims(s.prim_points)},
                    {"central_character_dims", subspace_dims(s.central_characters)}};
    } else if (cmd == "filtration") {
      auto A = load(target, f, inputs);
      auto F = standard_filtration(*A, f.wedderburn());
      auto c = abelian_check(F);
      std::vector<int> semi(c.semiprimitive.begin(), c.semiprimitive.end());
      std::vector<int> nil(c.nilpotent_layers.begin(), c.nilpotent_layers.end());
      result = json{{"ideal_dims", subspace_dims(F.ideals)},
                    {"semiprimitive", semi},
                    {"layer_condition", nil},
                    {"last_is_radical", c.last_is_radical},
                    {"abelian", c.ok},
                    {"notes", c.notes}};
    } else if (cmd == "ss-e1") {
      auto A = load(target, f, inputs);
      auto c = compare_e1_with_hp(A, f.wedderburn());
      json terms = json::array();
      for (const auto& t : c.table.terms) terms.push_back(json{{"p", t.p}, {"points", t.points}});
      result = json{{"terms", terms},
                    {"even_total", c.table.even_total},
                    {"odd_total", c.table.odd_total},
                    {"hp", hp_json(c.hp)},
                    {"verdict", c.agree ? "PASS" : "FAIL"}};
    } else if (cmd == "sp-check") {
      auto phi = named_morphism(target);
      inputs.push_back(input_entry("source", *phi.source));
      inputs.push_back(input_entry("target", *phi.target));
      auto r = spectrum_preserving_check(phi, f.wedderburn());
      result = json{{"relation", relation_json(r.relation)}, {"spectrum_preserving", r.spectrum_preserving}};
      if (r.hp_source) result["hp_source"] = hp_json(*r.hp_source);
      if (r.hp_target) result["hp_target"] = hp_json(*r.hp_target);
      result["hp_agree"] = r.hp_agree;
    } else if (cmd == "crossed") {
      std::error_code ec;
      FiniteVarietyAction X = std::filesystem::is_regular_file(target, ec)
                                  ? action_from_description(parse_action(read_text_file(target)))
                                  : named_action(target);
      auto cp = variety_crossed_product(X);
      inputs.push_back(input_entry(target, *cp.product));
      auto dec = hh_decomposition(cp, f.max_degree, f.budget);
      json classes = json::array();
      for (const auto& c : dec.classes)
        classes.push_back(json{{"representative", c.label},
                               {"class_size", c.class_size},
                               {"centralizer_order", c.centralizer_order},
                               {"twisted_dims", c.twisted_dims},
                               {"invariant_dims", c.invariant_dims}});
      auto psi = psi_map(X);
      json phis = json::array();
      bool all_iso = true;
      for (std::size_t c = 0; c < X.meta.classes.size(); ++c) {
        auto p = phi_gamma(psi, X, static_cast<int>(c), 0);
        all_iso = all_iso && p.isomorphism && p.kills_other_classes;
        phis.push_back(json{{"class", p.label},
                            {"summand_dim", p.summand_dim},
                            {"invariant_dim", p.invariant_dim},
                            {"rank_on_summand", p.rank_on_summand},
                            {"kills_commutators", p.kills_commutators},
                            {"kills_other_classes", p.kills_other_classes},
                            {"isomorphism", p.isomorphism}});
      }
      bool psi_ok = true;
      for (const auto& c : psi.components)
        if (c.map) psi_ok = psi_ok && c.map->multiplicative && c.map->unital;
      result = json{{"points", X.points},
                    {"group", X.group.name()},
                    {"dim", cp.product->dim()},
                    {"block_sizes", wedderburn_blocks(*cp.product, f.wedderburn()).sizes()},
                    {"classes", classes},
                    {"hh_direct", dec.direct},
                    {"hh_sum", dec.sum},
                    {"decomposition", dec.ok ? "PASS" : "FAIL"},
                    {"psi_multiplicative", psi_ok},
                    {"phi", phis},
                    {"phi_isomorphisms", all_iso ? "PASS" : "FAIL"}};
    } else if (cmd == "chern") {
      auto rep = load_kclass(target, inputs);
      auto c = rep.kind == KClassRep::Kind::Idempotent ? chern_idempotent(rep, degree, f.budget)
                                                      : chern_invertible(rep, degree, order_bound, f.budget);
      json chain = json::array();
      const auto& cc = *c.complex;
      for (int k = 0; k < cc.blocks(c.degree); ++k) {
        const int deg = c.degree - 2 * k;
        for (const auto& [idx, x] : cc.component(c.degree, k, c.chain))
          chain.push_back(json{{"hochschild_degree", deg}, {"tensor", cc.bar().label(deg, idx)}, {"coefficient", scalar_text(x)}});
      }
      result = json{{"kind", to_string(rep.kind)}, {"size", rep.size},       {"degree", c.degree},
                    {"is_cycle", c.is_cycle},      {"zero_class", is_zero_class(c)}};
      if (chain.size() <= 64)
        result["chain"] = chain;
      else
        result["chain_terms"] = chain.size();
      if (c.degree % 2 == 0) {
        json pairings = json::array();
        for (const auto& tau : hh0_traces(*rep.algebra).basis()) pairings.push_back(scalar_text(pair_with_trace(c, tau)));
        result["trace_pairings"] = pairings;
      }
    } else if (cmd == "corpus") {
      json algs = json::array();
      HochschildOptions opt;
      opt.representatives = false;
      opt.budget = f.budget;
      bool all_ok = true;
      for (const auto& name : corpus_algebra_names()) {
        FDAlgebra A = named_algebra(name);
        json e = input_entry(name, A);
        if (corpus_check) {
          auto B = share(parse_algebra(emit_algebra(A)));
          bool round_trip = B->products() == A.products() && validate(*B).ok;
          e["round_trip"] = round_trip;
          e["hh"] = hh(B, 3, opt).dims();
          all_ok = all_ok && round_trip;
        }
        algs.push_back(e);
      }
      json pairs = json::array();
      for (const auto& p : corpus_excision_pairs()) pairs.push_back(json{{"algebra", p.algebra}, {"ideal", p.ideal}});
      result = json{{"algebras", algs},
                    {"actions", corpus_action_names()},
                    {"morphisms", corpus_morphism_names()},
                    {"excision_pairs", pairs},
                    {"kclasses", std::vector<std::string>{"E11_in_M2", "S3_block", "s_in_QZ2"}}};
      if (corpus_check) result["verdict"] = all_ok ? "PASS" : "FAIL";
    }
  } catch (const Error& e) {
    rc = exit_code_for(e);
    result = json{{"error", e.kind()}, {"message", e.what()}};
  } catch (const std::exception& e) {
    rc = 1;
    result = json{{"error", "InvalidInput"}, {"message", e.what()}};
  }
  report["inputs"] = inputs;
  report["result"] = result;
  report["budget"] = json{{"budget_dims", f.budget}};
  if (f.timing)
    report["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  report["exit_code"] = rc;
  emit(report, f);
  if (rc != 0 && f.format == "text") std::cerr << "cychom: " << result.value("message", std::string("inconclusive")) << "\n";
  return rc;
}
