#include "fragdec/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fragdec/decide.hpp"
#include "fragdec/enriched.hpp"
#include "fragdec/error.hpp"
#include "fragdec/formula.hpp"
#include "fragdec/transform.hpp"

namespace fragdec {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct InputFlags {
  std::string regex;
  std::string dfa_file;
  std::string alphabet;
};

void add_input_flags(CLI::App* cmd, InputFlags& in) {
  auto* r = cmd->add_option("--regex", in.regex, "language as a regular expression");
  auto* d = cmd->add_option("--dfa", in.dfa_file, "language as a DFA description file");
  cmd->add_option("--alphabet", in.alphabet,
                  "explicit alphabet for --regex (letters juxtaposed, e.g. ab)");
  r->excludes(d);
}

Dfa load_language(const InputFlags& in) {
  if (!in.regex.empty() || in.dfa_file.empty()) {
    if (in.regex.empty()) throw Error("supply --regex or --dfa");
    if (!in.alphabet.empty()) {
      Alphabet a = Alphabet::plain(in.alphabet);
      return parse_language(in.regex, &a);
    }
    return parse_language(in.regex);
  }
  return minimize(parse_dfa_text(read_file(in.dfa_file)));
}

struct CapsFlags {
  Caps caps;
};

void add_caps_flags(CLI::App* cmd, CapsFlags& c) {
  cmd->add_option("--max-monoid", c.caps.max_monoid, "cap on monoid size");
  cmd->add_option("--max-assignments", c.caps.max_assignments,
                  "cap on identity-check assignment space");
  cmd->add_option("--max-morphisms", c.caps.max_morphisms,
                  "cap on path-equation morphism space");
}

void print_report(const EvidenceReport& r, const std::string& format) {
  if (format == "json")
    std::cout << report_to_json(r) << '\n';
  else
    std::cout << report_to_text(r);
}

ElementSet pick_within(const SyntacticPresentation& m, const StabilityRecord& stab,
                       const std::string& within) {
  if (within == "monoid") return m.all_elements();
  if (within == "semigroup") return m.semigroup_part();
  if (within == "stable-monoid") return stab.stable_monoid;
  if (within == "stable-semigroup") return stab.stable_semigroup;
  throw Error("unknown --within '" + within + "'");
}

int run_decide_one(const Dfa& language, const FragmentEntry& entry, int k,
                   const std::vector<PathEquation>* eqs, const Caps& caps,
                   const std::string& format) {
  EvidenceReport r = decide_fragment(language, entry, k, eqs, caps);
  print_report(r, format);
  return verdict_exit_code(r.verdict);
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"fragdec - definability of regular languages in first-order fragments "
               "with modular predicates"};
  app.require_subcommand(1);

  // --- analyze -------------------------------------------------------------
  auto* analyze_cmd = app.add_subcommand("analyze", "algebraic survey of a language");
  InputFlags analyze_in;
  CapsFlags analyze_caps;
  std::string analyze_format = "text";
  add_input_flags(analyze_cmd, analyze_in);
  add_caps_flags(analyze_cmd, analyze_caps);
  analyze_cmd->add_option("--format", analyze_format, "text|json");

  // --- decide --------------------------------------------------------------
  auto* decide_cmd = app.add_subcommand("decide", "decide membership in a fragment");
  InputFlags decide_in;
  CapsFlags decide_caps;
  std::string decide_format = "text", decide_fragment_name, decide_equations, decide_batch;
  int decide_k = 0;
  add_input_flags(decide_cmd, decide_in);
  add_caps_flags(decide_cmd, decide_caps);
  decide_cmd->add_option("--fragment", decide_fragment_name, "fragment name")->required();
  decide_cmd->add_option("--k", decide_k, "alternation level for _k fragments");
  decide_cmd->add_option("--equations", decide_equations, "path-equation file");
  decide_cmd->add_option("--format", decide_format, "text|json");
  decide_cmd->add_option("--batch", decide_batch,
                         "file with one regex per line; newline-delimited JSON output");

  // --- reduce --------------------------------------------------------------
  auto* reduce_cmd = app.add_subcommand(
      "reduce", "emit the enriched-alphabet instance L_d (default d = stability index)");
  InputFlags reduce_in;
  CapsFlags reduce_caps;
  int reduce_modulus = 0;
  std::string reduce_format = "text";
  add_input_flags(reduce_cmd, reduce_in);
  add_caps_flags(reduce_cmd, reduce_caps);
  reduce_cmd->add_option("--modulus", reduce_modulus, "congruence to enrich by");
  reduce_cmd->add_option("--format", reduce_format, "text|json");

  // --- formula -------------------------------------------------------------
  auto* formula_cmd = app.add_subcommand("formula", "formula utilities");
  formula_cmd->require_subcommand(1);

  auto* feval = formula_cmd->add_subcommand("eval", "evaluate a formula on a word");
  std::string feval_file, feval_text, feval_word;
  feval->add_option("--file", feval_file, "formula file");
  feval->add_option("--formula", feval_text, "formula text");
  feval->add_option("--word", feval_word, "input word")->required();

  auto* ftrans = formula_cmd->add_subcommand("transform", "apply a signature transformation");
  std::string ftrans_file, ftrans_text, ftrans_op, ftrans_alphabet;
  int ftrans_modulus = 0;
  ftrans->add_option("--file", ftrans_file, "formula file");
  ftrans->add_option("--formula", ftrans_text, "formula text");
  ftrans->add_option("--op", ftrans_op, "decompose|to-letters|to-mod|normalize")->required();
  ftrans->add_option("--modulus", ftrans_modulus, "congruence d");
  ftrans->add_option("--alphabet", ftrans_alphabet, "base alphabet for to-letters");

  auto* falt = formula_cmd->add_subcommand("alternation", "quantifier block count");
  std::string falt_file, falt_text;
  bool falt_two_variable = false;
  falt->add_option("--file", falt_file, "formula file");
  falt->add_option("--formula", falt_text, "formula text");
  falt->add_flag("--two-variable", falt_two_variable, "branch counting for FO2");

  // --- check ---------------------------------------------------------------
  auto* check_cmd = app.add_subcommand("check", "low-level algebraic checks");
  check_cmd->require_subcommand(1);

  auto* cident = check_cmd->add_subcommand("identity", "check an identity set");
  InputFlags cident_in;
  CapsFlags cident_caps;
  std::string cident_file, cident_variety, cident_within = "monoid", cident_format = "text";
  add_input_flags(cident, cident_in);
  add_caps_flags(cident, cident_caps);
  cident->add_option("--identities", cident_file, "identity file (lhs = rhs per line)");
  cident->add_option("--variety", cident_variety, "built-in set: A ACom Com DA J J1 FO[+1]");
  cident->add_option("--within", cident_within,
                     "monoid|semigroup|stable-monoid|stable-semigroup");
  cident->add_option("--format", cident_format, "text|json");

  auto* cpath = check_cmd->add_subcommand("path-equation",
                                          "check path equations on a derived category");
  InputFlags cpath_in;
  CapsFlags cpath_caps;
  std::string cpath_file, cpath_format = "text";
  bool cpath_knast = false;
  int cpath_modulus = 0;
  add_input_flags(cpath, cpath_in);
  add_caps_flags(cpath, cpath_caps);
  cpath->add_option("--equations", cpath_file, "path-equation file");
  cpath->add_flag("--knast", cpath_knast, "use Knast's built-in equation");
  cpath->add_option("--modulus", cpath_modulus,
                    "derived-category modulus (default: stability index)");
  cpath->add_option("--format", cpath_format, "text|json");

  // ---------------------------------------------------------------------------

  std::vector<char*> argv;
  std::string prog = "fragdec";
  argv.push_back(prog.data());
  std::vector<std::string> owned(args);
  for (auto& a : owned) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (*analyze_cmd) {
      EvidenceReport r = analyze(load_language(analyze_in), analyze_caps.caps);
      print_report(r, analyze_format);
      return 0;
    }

    if (*decide_cmd) {
      const FragmentEntry* entry = find_fragment(decide_fragment_name);
      if (!entry) {
        std::ostringstream names;
        for (const auto& e : fragment_registry()) names << ' ' << e.name;
        throw Error("unknown fragment '" + decide_fragment_name + "'; known:" + names.str());
      }
      std::vector<PathEquation> eqs;
      if (!decide_equations.empty())
        eqs = parse_path_equation_file(read_file(decide_equations));
      const std::vector<PathEquation>* eqp = eqs.empty() ? nullptr : &eqs;
      if (!decide_batch.empty()) {
        std::istringstream lines(read_file(decide_batch));
        std::string line;
        while (std::getline(lines, line)) {
          if (line.empty() || line[0] == '#') continue;
          EvidenceReport r = decide_fragment(parse_language(line), *entry, decide_k, eqp,
                                             decide_caps.caps);
          std::cout << report_to_json(r) << '\n';
        }
        return 0;
      }
      return run_decide_one(load_language(decide_in), *entry, decide_k, eqp,
                            decide_caps.caps, decide_format);
    }

    if (*reduce_cmd) {
      Dfa language = load_language(reduce_in);
      int d = reduce_modulus;
      if (d == 0) {
        SyntacticPresentation m = syntactic_morphism(language, reduce_caps.caps.max_monoid);
        d = stability_index(m).s;
      }
      Dfa out = enrich(minimize(language), d);
      if (reduce_format == "json") {
        json j;
        j["modulus"] = d;
        j["reduced_dfa"] = to_dfa_text(out);
        std::cout << j.dump() << '\n';
      } else {
        std::cout << "# modulus: " << d << '\n' << to_dfa_text(out);
      }
      return 0;
    }

    if (*feval) {
      if (feval_file.empty() == feval_text.empty())
        throw Error("supply exactly one of --file / --formula");
      FormulaPtr f =
          parse_formula(feval_file.empty() ? feval_text : read_file(feval_file));
      // The evaluation alphabet covers the formula letters and the word.
      std::set<std::string> letters = formula_letters(f);
      std::string word_text = feval_word;
      std::vector<std::string> names(letters.begin(), letters.end());
      bool enriched = false;
      for (const auto& n : names) enriched = enriched || n.find('@') != std::string::npos;
      if (!enriched)
        for (char ch : word_text)
          if (std::string(1, ch) != "@") {
            if (std::find(names.begin(), names.end(), std::string(1, ch)) == names.end())
              names.push_back(std::string(1, ch));
          }
      std::sort(names.begin(), names.end());
      if (names.empty()) names.push_back("a");
      Alphabet a = Alphabet::from_names(names);
      bool result = evaluate(f, a, a.parse_word(word_text));
      std::cout << (result ? "true" : "false") << '\n';
      return 0;
    }

    if (*ftrans) {
      if (ftrans_file.empty() == ftrans_text.empty())
        throw Error("supply exactly one of --file / --formula");
      FormulaPtr f =
          parse_formula(ftrans_file.empty() ? ftrans_text : read_file(ftrans_file));
      if (ftrans_op == "normalize") {
        auto [g, d] = normalize_moduli(f);
        std::cout << "# modulus: " << d << '\n' << render_formula(g) << '\n';
        return 0;
      }
      if (ftrans_modulus < 1) throw Error("--modulus D is required for this operation");
      if (ftrans_op == "decompose") {
        for (const auto& g : decompose_D(f, ftrans_modulus))
          std::cout << render_formula(g) << '\n';
        return 0;
      }
      if (ftrans_op == "to-letters") {
        std::string letters = ftrans_alphabet;
        if (letters.empty()) {
          for (const auto& l : formula_letters(f)) {
            if (l.find('@') != std::string::npos)
              throw Error("to-letters expects a plain-letter formula");
            letters += l;
          }
        }
        if (letters.empty()) throw Error("supply --alphabet for letter-free formulas");
        Alphabet base = Alphabet::plain(letters);
        std::cout << render_formula(mod_to_letters(f, ftrans_modulus, base)) << '\n';
        return 0;
      }
      if (ftrans_op == "to-mod") {
        std::cout << render_formula(letters_to_mod(f, ftrans_modulus)) << '\n';
        return 0;
      }
      throw Error("unknown --op '" + ftrans_op + "'");
    }

    if (*falt) {
      if (falt_file.empty() == falt_text.empty())
        throw Error("supply exactly one of --file / --formula");
      FormulaPtr f = parse_formula(falt_file.empty() ? falt_text : read_file(falt_file));
      std::cout << alternation_depth(f, falt_two_variable) << '\n';
      return 0;
    }

    if (*cident) {
      if (cident_file.empty() == cident_variety.empty())
        throw Error("supply exactly one of --identities / --variety");
      IdentitySet ids = cident_file.empty()
                            ? builtin_identities(cident_variety)
                            : parse_identity_file(read_file(cident_file), cident_file);
      Dfa language = load_language(cident_in);
      auto m = syntactic_morphism(minimize(language), cident_caps.caps.max_monoid);
      StabilityRecord stab = stability_index(m);
      ElementSet within = pick_within(m, stab, cident_within);
      IdentityVerdict v = check_identity(m, ids, &within,
                                         IdentityCheckOptions{cident_caps.caps.max_assignments});
      if (cident_format == "json") {
        json j;
        j["holds"] = v.holds;
        j["identities"] = ids.name;
        j["within"] = cident_within;
        if (v.witness) {
          json jw;
          jw["equation"] = render_identity(ids.equations[v.witness->equation_index]);
          jw["assignment"] = json::object();
          for (const auto& [var, elem] : v.witness->assignment) {
            const std::string& w = m.element_word(elem);
            jw["assignment"][var] = w.empty() ? "1" : w;
          }
          j["witness"] = jw;
        }
        std::cout << j.dump() << '\n';
      } else {
        std::cout << (v.holds ? "holds" : "fails") << '\n';
        if (v.witness) {
          std::cout << "equation: " << render_identity(ids.equations[v.witness->equation_index])
                    << '\n';
          for (const auto& [var, elem] : v.witness->assignment) {
            const std::string& w = m.element_word(elem);
            std::cout << "  " << var << " = " << (w.empty() ? "1" : w) << '\n';
          }
        }
      }
      return v.holds ? 0 : 1;
    }

    if (*cpath) {
      if (cpath_knast == !cpath_file.empty())
        throw Error("supply exactly one of --equations / --knast");
      std::vector<PathEquation> eqs;
      if (cpath_knast)
        eqs.push_back(knast_equation());
      else
        eqs = parse_path_equation_file(read_file(cpath_file));
      Dfa language = load_language(cpath_in);
      auto m = std::make_shared<const SyntacticPresentation>(
          syntactic_morphism(minimize(language), cpath_caps.caps.max_monoid));
      int d = cpath_modulus > 0 ? cpath_modulus : stability_index(*m).s;
      FiniteCategory c = derived_category(m, d);
      PathCheckOptions opts{cpath_caps.caps.max_morphisms};
      bool all_hold = true;
      json out;
      out["modulus"] = d;
      for (const auto& eq : eqs) {
        PathVerdict v = check_path_equation(c, eq, opts);
        if (!v.holds) {
          all_hold = false;
          if (cpath_format == "json") {
            json jw;
            jw["equation"] = eq.text;
            jw["vertices"] = json::object();
            for (std::size_t i = 0; i < eq.graph.vertices.size(); ++i)
              jw["vertices"][eq.graph.vertices[i]] =
                  c.object_name(v.witness->vertex_to_object[i]);
            jw["edges"] = json::object();
            for (std::size_t e = 0; e < eq.graph.edges.size(); ++e)
              jw["edges"][eq.graph.edges[e].name] =
                  c.value_name(std::get<1>(v.witness->edge_to_arrow[e]));
            jw["lhs"] = c.value_name(v.witness->lhs_value);
            jw["rhs"] = c.value_name(v.witness->rhs_value);
            out["witness"] = jw;
          } else {
            std::cout << "fails: " << eq.text << '\n';
            for (std::size_t e = 0; e < eq.graph.edges.size(); ++e)
              std::cout << "  " << eq.graph.edges[e].name << " = "
                        << c.value_name(std::get<1>(v.witness->edge_to_arrow[e])) << '\n';
            std::cout << "  lhs = " << c.value_name(v.witness->lhs_value)
                      << ", rhs = " << c.value_name(v.witness->rhs_value) << '\n';
          }
          break;
        }
      }
      out["holds"] = all_hold;
      if (cpath_format == "json")
        std::cout << out.dump() << '\n';
      else if (all_hold)
        std::cout << "holds (modulus " << d << ")\n";
      return all_hold ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace fragdec
