#include "fragdec/decide.hpp"

#include <sstream>

#include <json.hpp>

#include "fragdec/enriched.hpp"
#include "fragdec/error.hpp"

namespace fragdec {

namespace {

using nlohmann::json;

std::string display_word(const std::string& w) { return w.empty() ? "1" : w; }

struct BaseAnalysis {
  Dfa minimal;
  std::shared_ptr<const SyntacticPresentation> m;
  StabilityRecord stab;
};

BaseAnalysis analyze_base(const Dfa& language, const Caps& caps) {
  BaseAnalysis b;
  b.minimal = minimize(language);
  b.m = std::make_shared<const SyntacticPresentation>(
      syntactic_morphism(b.minimal, caps.max_monoid));
  b.stab = stability_index(*b.m);
  return b;
}

void fill_common(EvidenceReport& r, const BaseAnalysis& b) {
  r.stability_index = b.stab.s;
  r.epsilon_in_language = b.minimal.accepts_empty();
  r.sizes["dfa_states"] = b.minimal.state_count;
  r.sizes["alphabet"] = b.minimal.alphabet.size();
  r.sizes["monoid"] = b.m->element_count();
  r.sizes["semigroup"] = static_cast<std::int64_t>(b.m->semigroup_part().count());
  r.sizes["stable_monoid"] = static_cast<std::int64_t>(b.stab.stable_monoid.count());
  r.sizes["stable_semigroup"] = static_cast<std::int64_t>(b.stab.stable_semigroup.count());
  r.sizes["idempotents"] = static_cast<std::int64_t>(idempotents(*b.m).count());
}

std::optional<bool> empty_context_separation(const SyntacticPresentation& m, int lhs, int rhs) {
  if (m.accepting().size() == 0) return std::nullopt;
  return m.accepting().test(lhs) != m.accepting().test(rhs);
}

WitnessInfo identity_witness_info(const SyntacticPresentation& m, const IdentitySet& v,
                                  const IdentityWitness& w) {
  WitnessInfo info;
  info.kind = "identity";
  info.equation = render_identity(v.equations[w.equation_index]);
  for (const auto& [var, elem] : w.assignment)
    info.assignment.emplace_back(var, display_word(m.element_word(elem)));
  info.lhs = display_word(m.element_word(w.lhs_value));
  info.rhs = display_word(m.element_word(w.rhs_value));
  info.separated_by_empty_context = empty_context_separation(m, w.lhs_value, w.rhs_value);
  return info;
}

WitnessInfo morphism_witness_info(const FiniteCategory& c, const PathEquation& eq,
                                  const MorphismWitness& w) {
  WitnessInfo info;
  info.kind = "path-equation";
  info.equation = eq.text;
  for (std::size_t v = 0; v < eq.graph.vertices.size(); ++v)
    info.vertex_objects.emplace_back(eq.graph.vertices[v],
                                     c.object_name(w.vertex_to_object[v]));
  for (std::size_t e = 0; e < eq.graph.edges.size(); ++e) {
    auto [src, value, dst] = w.edge_to_arrow[e];
    info.assignment.emplace_back(eq.graph.edges[e].name, c.value_name(value));
    if (auto via = c.arrow_via_word(src, value, dst))
      info.via_words.emplace_back(eq.graph.edges[e].name, via->empty() ? "1" : *via);
  }
  info.lhs = c.value_name(w.lhs_value);
  info.rhs = c.value_name(w.rhs_value);
  if (c.parent())
    info.separated_by_empty_context =
        empty_context_separation(*c.parent(), w.lhs_value, w.rhs_value);
  return info;
}

}  // namespace

const std::vector<FragmentEntry>& fragment_registry() {
  static const std::vector<FragmentEntry> entries = {
      {"FO[<,MOD]", Route::kStableMonoid, "A", false, false, false, 1,
       "first order with order and modular predicates"},
      {"FO[Reg]", Route::kStableMonoid, "A", false, false, false, 1,
       "first order with all regular predicates (successor is order-definable)"},
      {"FO2[<,MOD]", Route::kStableMonoid, "DA", false, false, false, 1,
       "two-variable first order with order and modular predicates"},
      {"FO1[MOD]", Route::kStableMonoid, "J1", false, false, false, 1,
       "one-variable first order with modular predicates"},
      {"FO2[Reg]", Route::kLocalOfStableSemigroup, "DA", false, false, false, 1,
       "two-variable first order with all regular predicates"},
      {"BS1[<,MOD]", Route::kDerivedCategory, "", true, false, false, 2,
       "boolean combinations of existential formulas with order and modular predicates"},
      {"FO[=,MOD]", Route::kDerivedCategory, "", false, true, false, 2,
       "first order with equality and modular predicates (equations supplied externally)"},
      {"FO2_k[<,MOD]", Route::kDerivedCategory, "", false, true, true, 2,
       "two-variable alternation level k with order and modular predicates"},
      {"BS1[Reg]", Route::kReduction, "", true, false, false, 1,
       "boolean combinations of existential formulas with all regular predicates"},
      {"FO[+1,MOD]", Route::kReduction, "FO[+1]", false, false, false, 1,
       "first order with successor and modular predicates"},
      {"FO2_k[Reg]", Route::kReduction, "", false, false, true, 1,
       "two-variable alternation level k with all regular predicates"},
      {"BS_k[Reg]", Route::kReduction, "", false, false, true, 1,
       "alternation level k with all regular predicates"},
  };
  return entries;
}

const FragmentEntry* find_fragment(std::string_view name) {
  for (const auto& e : fragment_registry())
    if (e.name == name) return &e;
  return nullptr;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kDefinable: return "definable";
    case Verdict::kNotDefinable: return "not_definable";
    case Verdict::kReducedInstanceEmitted: return "reduced_instance_emitted";
  }
  return "?";
}

int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::kDefinable: return 0;
    case Verdict::kNotDefinable: return 1;
    case Verdict::kReducedInstanceEmitted: return 2;
  }
  return 3;
}

EvidenceReport analyze(const Dfa& language, const Caps& caps) {
  BaseAnalysis b = analyze_base(language, caps);
  EvidenceReport r;
  r.fragment = "analyze";
  r.verdict = Verdict::kDefinable;
  fill_common(r, b);
  r.modulus = b.stab.s;
  IdentityCheckOptions opts{caps.max_assignments};
  for (const auto& name : builtin_identity_names()) {
    const IdentitySet& v = builtin_identities(name);
    try {
      r.syntactic_monoid_satisfies[name] = check_identity(*b.m, v, nullptr, opts).holds;
      r.stable_monoid_satisfies[name] =
          check_identity(*b.m, v, &b.stab.stable_monoid, opts).holds;
    } catch (const GuardError&) {
      r.notes.push_back("identity set " + name + " skipped: assignment cap exceeded");
    }
  }
  return r;
}

EvidenceReport decide_stable_monoid_in(const Dfa& language, const IdentitySet& v,
                                       const Caps& caps) {
  BaseAnalysis b = analyze_base(language, caps);
  EvidenceReport r;
  r.fragment = v.name;
  fill_common(r, b);
  r.modulus = b.stab.s;
  IdentityCheckOptions opts{caps.max_assignments};
  IdentityVerdict verdict = check_identity(*b.m, v, &b.stab.stable_monoid, opts);
  r.verdict = verdict.holds ? Verdict::kDefinable : Verdict::kNotDefinable;
  if (verdict.witness) r.witness = identity_witness_info(*b.m, v, *verdict.witness);
  return r;
}

EvidenceReport decide_local_of_stable_semigroup_in(const Dfa& language, const IdentitySet& v,
                                                   const Caps& caps) {
  BaseAnalysis b = analyze_base(language, caps);
  EvidenceReport r;
  r.fragment = v.name;
  fill_common(r, b);
  r.modulus = b.stab.s;
  IdentityCheckOptions opts{caps.max_assignments};
  r.verdict = Verdict::kDefinable;
  for (int e : set_bits(idempotents(*b.m, &b.stab.stable_semigroup))) {
    ElementSet lm = local_monoid(*b.m, e, &b.stab.stable_semigroup);
    IdentityVerdict verdict = check_identity(*b.m, v, &lm, opts);
    if (!verdict.holds) {
      r.verdict = Verdict::kNotDefinable;
      r.witness = identity_witness_info(*b.m, v, *verdict.witness);
      r.notes.push_back("fails in the local monoid at idempotent " +
                        display_word(b.m->element_word(e)));
      break;
    }
  }
  return r;
}

EvidenceReport decide_via_derived_category(const Dfa& language,
                                           const std::vector<PathEquation>& equations,
                                           int delay_multiplier, const Caps& caps,
                                           std::string fragment_name) {
  if (equations.empty()) throw Error("derived-category route needs at least one equation");
  if (delay_multiplier < 1) throw Error("delay multiplier must be positive");
  BaseAnalysis b = analyze_base(language, caps);
  EvidenceReport r;
  r.fragment = fragment_name.empty() ? "derived-category" : std::move(fragment_name);
  fill_common(r, b);
  r.modulus = delay_multiplier * b.stab.s;
  r.sizes["category_objects"] = r.modulus;
  FiniteCategory c = derived_category(b.m, r.modulus);
  PathCheckOptions opts{caps.max_morphisms};
  r.verdict = Verdict::kDefinable;
  for (const auto& eq : equations) {
    PathVerdict verdict = check_path_equation(c, eq, opts);
    if (!verdict.holds) {
      r.verdict = Verdict::kNotDefinable;
      r.witness = morphism_witness_info(c, eq, *verdict.witness);
      break;
    }
  }
  return r;
}

EvidenceReport decide_via_reduction(const Dfa& language, const FragmentEntry& fragment,
                                    const std::vector<PathEquation>* equations,
                                    const Caps& caps) {
  BaseAnalysis b = analyze_base(language, caps);
  EvidenceReport r;
  r.fragment = fragment.name;
  fill_common(r, b);
  r.modulus = b.stab.s;

  Dfa enriched_dfa = enrich(b.minimal, b.stab.s);
  r.sizes["enriched_dfa_states"] = enriched_dfa.state_count;
  auto t = std::make_shared<const SyntacticPresentation>(
      syntactic_morphism(enriched_dfa, caps.max_monoid));
  r.sizes["enriched_monoid"] = t->element_count();
  r.sizes["enriched_semigroup"] = static_cast<std::int64_t>(t->semigroup_part().count());

  if (!fragment.identity_set.empty()) {
    const IdentitySet& v = builtin_identities(fragment.identity_set);
    IdentityCheckOptions opts{caps.max_assignments};
    ElementSet sg = t->semigroup_part();
    IdentityVerdict verdict = check_identity(*t, v, &sg, opts);
    r.verdict = verdict.holds ? Verdict::kDefinable : Verdict::kNotDefinable;
    if (verdict.witness) r.witness = identity_witness_info(*t, v, *verdict.witness);
    r.notes.push_back("identity " + v.name + " checked on the syntactic semigroup of the enriched language");
    return r;
  }

  const std::vector<PathEquation>* eqs = nullptr;
  std::vector<PathEquation> knast{knast_equation()};
  if (fragment.builtin_knast)
    eqs = &knast;
  else if (equations && !equations->empty())
    eqs = equations;

  if (eqs) {
    ElementSet sg = t->semigroup_part();
    FiniteCategory se = idempotents_category(t, &sg);
    r.sizes["idempotents_category_objects"] = se.object_count();
    PathCheckOptions opts{caps.max_morphisms};
    r.verdict = Verdict::kDefinable;
    for (const auto& eq : *eqs) {
      PathVerdict verdict = check_path_equation(se, eq, opts);
      if (!verdict.holds) {
        r.verdict = Verdict::kNotDefinable;
        r.witness = morphism_witness_info(se, eq, *verdict.witness);
        break;
      }
    }
    r.notes.push_back(
        "path equations checked on the idempotents' category of the enriched language");
    return r;
  }

  r.verdict = Verdict::kReducedInstanceEmitted;
  r.reduced_dfa = to_dfa_text(enriched_dfa);
  r.notes.push_back("decide the emitted instance in the fragment without modular predicates");
  return r;
}

EvidenceReport decide_fragment(const Dfa& language, const FragmentEntry& fragment, int k,
                               const std::vector<PathEquation>* equations, const Caps& caps) {
  if (fragment.needs_k && k < 1)
    throw Error("fragment " + fragment.name + " needs --k N with N >= 1");
  switch (fragment.route) {
    case Route::kStableMonoid: {
      EvidenceReport r =
          decide_stable_monoid_in(language, builtin_identities(fragment.identity_set), caps);
      r.fragment = fragment.name;
      return r;
    }
    case Route::kLocalOfStableSemigroup: {
      EvidenceReport r = decide_local_of_stable_semigroup_in(
          language, builtin_identities(fragment.identity_set), caps);
      r.fragment = fragment.name;
      return r;
    }
    case Route::kDerivedCategory: {
      std::vector<PathEquation> eqs;
      if (fragment.builtin_knast)
        eqs.push_back(knast_equation());
      else if (equations && !equations->empty())
        eqs = *equations;
      else
        throw Error("fragment " + fragment.name + " needs --equations FILE");
      int delay = fragment.rank_factor * (fragment.needs_k ? k : 1);
      EvidenceReport r = decide_via_derived_category(language, eqs, delay, caps, fragment.name);
      if (fragment.needs_k) r.sizes["k"] = k;
      return r;
    }
    case Route::kReduction: {
      FragmentEntry entry = fragment;
      // Level 1 of the hierarchy has Knast's equations built in.
      if (fragment.needs_k && k == 1 && fragment.name == "BS_k[Reg]") entry.builtin_knast = true;
      EvidenceReport r = decide_via_reduction(language, entry, equations, caps);
      if (fragment.needs_k) r.sizes["k"] = k;
      return r;
    }
  }
  throw Error("unreachable route");
}

std::string report_to_text(const EvidenceReport& r) {
  std::ostringstream out;
  if (r.fragment == "analyze") {
    out << "language analysis\n";
  } else {
    out << "fragment: " << r.fragment << '\n';
    out << "verdict: " << verdict_name(r.verdict) << '\n';
  }
  out << "stability index: " << r.stability_index << '\n';
  if (r.fragment != "analyze") out << "modulus: " << r.modulus << '\n';
  out << "sizes:";
  for (const auto& [k, v] : r.sizes) out << ' ' << k << '=' << v;
  out << '\n';
  if (!r.syntactic_monoid_satisfies.empty()) {
    out << "syntactic monoid satisfies:";
    for (const auto& [k, v] : r.syntactic_monoid_satisfies) out << ' ' << k << '=' << (v ? "yes" : "no");
    out << '\n';
    out << "stable monoid satisfies:";
    for (const auto& [k, v] : r.stable_monoid_satisfies) out << ' ' << k << '=' << (v ? "yes" : "no");
    out << '\n';
  }
  if (r.witness) {
    const WitnessInfo& w = *r.witness;
    out << "witness (" << w.kind << "): " << w.equation << '\n';
    if (!w.vertex_objects.empty()) {
      out << "  vertices:";
      for (const auto& [v, o] : w.vertex_objects) out << ' ' << v << "->" << o;
      out << '\n';
    }
    for (const auto& [n, e] : w.assignment) {
      out << "  " << n << " = " << e;
      for (const auto& [vn, via] : w.via_words)
        if (vn == n) out << " (via " << via << ")";
      out << '\n';
    }
    out << "  lhs = " << w.lhs << ", rhs = " << w.rhs << '\n';
    if (w.separated_by_empty_context)
      out << "  separated by empty context: " << (*w.separated_by_empty_context ? "yes" : "no")
          << '\n';
  }
  out << "epsilon in language: " << (r.epsilon_in_language ? "yes" : "no") << '\n';
  for (const auto& n : r.notes) out << "note: " << n << '\n';
  if (r.reduced_dfa) out << "reduced instance:\n" << *r.reduced_dfa;
  return out.str();
}

std::string report_to_json(const EvidenceReport& r) {
  json j;
  j["schema_version"] = r.schema_version;
  j["kind"] = r.fragment == "analyze" ? "analysis" : "decision";
  if (r.fragment != "analyze") {
    j["verdict"] = verdict_name(r.verdict);
    j["modulus"] = r.modulus;
  }
  j["fragment"] = r.fragment;
  j["stability_index"] = r.stability_index;
  j["sizes"] = json::object();
  for (const auto& [k, v] : r.sizes) j["sizes"][k] = v;
  j["epsilon_in_language"] = r.epsilon_in_language;
  if (!r.syntactic_monoid_satisfies.empty()) {
    j["syntactic_monoid_satisfies"] = r.syntactic_monoid_satisfies;
    j["stable_monoid_satisfies"] = r.stable_monoid_satisfies;
  }
  if (r.witness) {
    const WitnessInfo& w = *r.witness;
    json jw;
    jw["kind"] = w.kind;
    jw["equation"] = w.equation;
    jw["assignment"] = json::object();
    for (const auto& [n, e] : w.assignment) jw["assignment"][n] = e;
    if (!w.vertex_objects.empty()) {
      jw["vertices"] = json::object();
      for (const auto& [v, o] : w.vertex_objects) jw["vertices"][v] = o;
    }
    if (!w.via_words.empty()) {
      jw["via"] = json::object();
      for (const auto& [n, via] : w.via_words) jw["via"][n] = via;
    }
    jw["lhs"] = w.lhs;
    jw["rhs"] = w.rhs;
    if (w.separated_by_empty_context)
      jw["separated_by_empty_context"] = *w.separated_by_empty_context;
    j["witness"] = jw;
  }
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (r.reduced_dfa) j["reduced_dfa"] = *r.reduced_dfa;
  return j.dump();
}

}  // namespace fragdec
