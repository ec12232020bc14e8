#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fragdec/dfa.hpp"
#include "fragdec/enriched.hpp"
#include "fragdec/error.hpp"
#include "fragdec/regex.hpp"
#include "helpers.hpp"

using namespace fragdec;
using namespace fragdec::testing;

TEST_CASE("regex parsing and compilation") {
  Dfa d = parse_language("(aa)*ab(bb)*");
  CHECK(d.state_count <= 6);  // minimal recognizer stays small
  // Cross-check membership against the position-set matcher on all short words.
  RegexPtr r = parse_regex("(aa)*ab(bb)*");
  for (const Word& w : words_upto(d.alphabet, 8))
    CHECK(d.accepts(w) == regex_matches(r, d.alphabet, w));

  Dfa u = parse_language("a*|b*");
  CHECK(u.accepts(u.alphabet.parse_word("aaa")));
  CHECK(u.accepts(u.alphabet.parse_word("bb")));
  CHECK_FALSE(u.accepts(u.alphabet.parse_word("ab")));

  Alphabet ab = Alphabet::plain("ab");
  Dfa eps = parse_language("()", &ab);
  CHECK(eps.accepts_empty());
  for (const Word& w : words_upto(ab, 3))
    CHECK(eps.accepts(w) == w.empty());
}

TEST_CASE("regex errors") {
  CHECK_THROWS_AS(parse_language("(ab"), ParseError);
  CHECK_THROWS_AS(parse_language("a**b)"), ParseError);
  CHECK_THROWS_AS(parse_language("*a"), ParseError);
  Alphabet just_a = Alphabet::plain("a");
  CHECK_THROWS_AS(parse_language("ab", &just_a), Error);  // unknown letter
  CHECK_THROWS_AS(parse_language(".*"), Error);           // no letters, no alphabet
}

TEST_CASE("minimize") {
  // Two duplicate accepting sinks collapse into one.
  Dfa d;
  d.alphabet = Alphabet::plain("a");
  d.state_count = 3;
  d.initial = 0;
  d.finals = {false, true, true};
  d.transitions = {1, 1, 2};  // q0-a->q1, q1-a->q1, q2-a->q2
  Dfa m = minimize(d);
  CHECK(m.state_count == 2);
  CHECK(same_language(m, d));

  // Idempotence, exactly (canonical numbering).
  Dfa mm = minimize(m);
  CHECK(mm.state_count == m.state_count);
  CHECK(mm.initial == m.initial);
  CHECK(mm.finals == m.finals);
  CHECK(mm.transitions == m.transitions);

  // 4-state recognizer of (aa)* collapses to the 2 length-parity classes.
  Dfa four;
  four.alphabet = Alphabet::plain("a");
  four.state_count = 4;
  four.initial = 0;
  four.finals = {true, false, true, false};
  four.transitions = {1, 2, 3, 0};
  Dfa two = minimize(four);
  CHECK(two.state_count == 2);
  CHECK(same_language(two, parse_language("(aa)*")));
}

TEST_CASE("minimize preserves membership on random inputs") {
  std::mt19937 rng(20240811);
  for (int i = 0; i < 40; ++i) {
    Dfa d = random_dfa(rng, 5, 2);
    Dfa m = minimize(d);
    for (const Word& w : words_upto(d.alphabet, 2 * m.state_count > 8 ? 8 : 2 * m.state_count))
      CHECK(d.accepts(w) == m.accepts(w));
  }
}

TEST_CASE("combine") {
  Dfa d = parse_language("(aa)*ab(bb)*");
  Dfa cc = combine(SetOp::kComplement, combine(SetOp::kComplement, d, nullptr), nullptr);
  CHECK(same_language(cc, d));

  Dfa all = parse_language("(a|b)*");
  CHECK(same_language(combine(SetOp::kIntersection, d, &all), d));

  Dfa only_a = parse_language("a*", &d.alphabet);
  Dfa only_b = parse_language("b*", &d.alphabet);
  Dfa u = combine(SetOp::kUnion, only_a, &only_b);
  CHECK(u.accepts(u.alphabet.parse_word("aaa")));
  CHECK(u.accepts(u.alphabet.parse_word("bb")));
  CHECK_FALSE(u.accepts(u.alphabet.parse_word("ab")));

  Dfa unary = parse_language("a*");
  CHECK_THROWS_AS(combine(SetOp::kUnion, d, &unary), Error);
}

TEST_CASE("encode_alpha") {
  Alphabet ab = Alphabet::plain("ab");
  auto [w, enriched] = encode_alpha(ab.parse_word("abba"), 0, 3, ab);
  CHECK(enriched.format_word(w) == "a@0b@1b@2a@0");

  auto [w2, e2] = encode_alpha(ab.parse_word("ab"), 2, 3, ab);
  CHECK(e2.format_word(w2) == "a@2b@0");

  auto [w3, e3] = encode_alpha({}, 0, 5, ab);
  CHECK(w3.empty());

  CHECK_THROWS_AS(encode_alpha(ab.parse_word("a"), 3, 3, ab), Error);
}

TEST_CASE("wellformed recognizers") {
  Alphabet a1 = Alphabet::plain("a");
  Dfa k2 = wellformed_recognizer(a1, 2, WellFormedKind::kWellFormed);
  CHECK(k2.accepts(k2.alphabet.parse_word("a@0a@1a@0")));
  CHECK_FALSE(k2.accepts(k2.alphabet.parse_word("a@1")));

  Dfa f2 = wellformed_recognizer(a1, 2, WellFormedKind::kFactors);
  CHECK(f2.accepts(f2.alphabet.parse_word("a@1a@0")));
  CHECK(f2.accepts(f2.alphabet.parse_word("a@0a@1")));
  CHECK_FALSE(f2.accepts(f2.alphabet.parse_word("a@0a@0")));

  Dfa seg = wellformed_recognizer(a1, 3, WellFormedKind::kSegment, 1, 2);
  CHECK(seg.accepts(seg.alphabet.parse_word("a@1a@2")));
  CHECK_FALSE(seg.accepts(seg.alphabet.parse_word("a@1a@2a@0")));
  CHECK_FALSE(seg.accepts({}));
}

TEST_CASE("enrich") {
  Dfa astar = parse_language("(a|b)*");
  Dfa l2 = enrich(astar, 2);
  Dfa k2 = wellformed_recognizer(astar.alphabet, 2, WellFormedKind::kWellFormed);
  CHECK(same_language(l2, k2));

  // Modulus 1 renames letters a -> a@0.
  Dfa d = parse_language("(aa)*ab(bb)*");
  Dfa l1 = enrich(d, 1);
  for (const Word& w : words_upto(d.alphabet, 6)) {
    Word lifted = encode_alpha(w, 0, 1, d.alphabet, l1.alphabet);
    CHECK(l1.accepts(lifted) == d.accepts(w));
  }

  // The enriched form of `a at an even position` holds exactly on
  // well-formed words containing the letter a@0.
  Dfa mod2a = parse_language("((a|b)(a|b))*a(a|b)*");
  Dfa l = enrich(mod2a, 2);
  auto a0 = l.alphabet.find("a@0");
  REQUIRE(a0.has_value());
  for (const Word& w : words_upto(l.alphabet, 6)) {
    bool wf = is_wellformed(l.alphabet, w);
    bool has_a0 = std::find(w.begin(), w.end(), *a0) != w.end();
    CHECK(l.accepts(w) == (wf && has_a0));
  }
}

TEST_CASE("project_letters") {
  Dfa empty = combine(SetOp::kDifference, parse_language("a*"), [] {
    Dfa d = parse_language("a*");
    return d;
  }());
  CHECK(is_empty_language(project_letters(enrich(empty, 2))));

  Alphabet ab = Alphabet::plain("ab");
  Dfa k2 = wellformed_recognizer(ab, 2, WellFormedKind::kWellFormed);
  Dfa proj = project_letters(k2);
  CHECK(same_language(proj, parse_language("(a|b)*")));
}

TEST_CASE("enrichment round-trips on random languages") {
  std::mt19937 rng(987);
  for (int i = 0; i < 25; ++i) {
    Dfa d = minimize(random_dfa(rng, 4, 2));
    for (int m = 1; m <= 3; ++m) {
      Dfa lifted = enrich(d, m);
      CHECK(same_language(project_letters(lifted), d));
      // L_d is contained in the well-formed words.
      Dfa kd = wellformed_recognizer(d.alphabet, m, WellFormedKind::kWellFormed);
      CHECK(is_empty_language(
          combine(SetOp::kDifference, lifted, &kd)));
      // alpha_d sends members to members.
      for (const Word& w : words_upto(d.alphabet, 5)) {
        Word lift = encode_alpha(w, 0, m, d.alphabet, lifted.alphabet);
        CHECK(kd.accepts(lift));
        CHECK(lifted.accepts(lift) == d.accepts(w));
        Word down;
        for (int sym : lift) down.push_back(lifted.alphabet.base_of(sym));
        CHECK(down == w);
      }
    }
  }
}

TEST_CASE("dfa text format") {
  std::string text =
      "alphabet: a b\n"
      "states: 2\n"
      "initial: 0\n"
      "finals: 1\n"
      "trans: 0 a 1\n"
      "trans: 1 a 1\n"
      "trans: 1 b 1\n";
  Dfa d = parse_dfa_text(text);
  CHECK(d.state_count == 3);  // implicit sink added for 0 --b-> ?
  CHECK(same_language(d, parse_language("a(a|b)*")));

  // Round trip through the serializer, exactly after minimization.
  Dfa m = minimize(d);
  Dfa re = parse_dfa_text(to_dfa_text(m));
  CHECK(re.state_count == m.state_count);
  CHECK(re.transitions == m.transitions);
  CHECK(re.finals == m.finals);

  CHECK_THROWS_AS(parse_dfa_text("states: 1\n"), ParseError);
  CHECK_THROWS_AS(parse_dfa_text("alphabet: a\nstates: 1\ninitial: 3\n"), ParseError);
  CHECK_THROWS_AS(parse_dfa_text("alphabet: a\nstates: 1\ninitial: 0\ntrans: 0 a 0\ntrans: 0 a 0\n"),
                  ParseError);

  // parse_language dispatches on the header line.
  Dfa via = parse_language(text);
  CHECK(same_language(via, d));
}

TEST_CASE("enriched alphabet detection in dfa files") {
  Dfa l2 = enrich(parse_language("ab"), 2);
  Dfa re = parse_dfa_text(to_dfa_text(l2));
  CHECK(re.alphabet.is_enriched());
  CHECK(re.alphabet.modulus() == 2);
  CHECK(same_language(re, l2));
}
