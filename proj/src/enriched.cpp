#include "fragdec/enriched.hpp"

#include "detail/nfa.hpp"
#include "fragdec/error.hpp"

namespace fragdec {

Word encode_alpha(const Word& u, int i, int d, const Alphabet& base,
                  const Alphabet& enriched) {
  if (d < 1) throw Error("modulus must be positive");
  if (i < 0 || i >= d) throw Error("start residue out of range");
  if (!enriched.is_enriched() || enriched.modulus() != d ||
      enriched.base_size() != base.size())
    throw Error("enriched alphabet does not match base and modulus");
  Word out;
  out.reserve(u.size());
  for (std::size_t p = 0; p < u.size(); ++p)
    out.push_back(enriched.pair(u[p], (i + static_cast<int>(p)) % d));
  return out;
}

std::pair<Word, Alphabet> encode_alpha(const Word& u, int i, int d, const Alphabet& base) {
  Alphabet enriched = Alphabet::enriched(base, d);
  return {encode_alpha(u, i, d, base, enriched), enriched};
}

bool is_wellformed(const Alphabet& enriched, const Word& w) {
  if (!enriched.is_enriched()) throw Error("alphabet is not enriched");
  int d = enriched.modulus();
  for (std::size_t p = 0; p < w.size(); ++p)
    if (enriched.residue_of(w[p]) != static_cast<int>(p % d)) return false;
  return true;
}

bool is_wellformed_factor(const Alphabet& enriched, const Word& w) {
  if (!enriched.is_enriched()) throw Error("alphabet is not enriched");
  int d = enriched.modulus();
  for (std::size_t p = 1; p < w.size(); ++p)
    if (enriched.residue_of(w[p]) != (enriched.residue_of(w[p - 1]) + 1) % d)
      return false;
  return true;
}

Dfa wellformed_recognizer(const Alphabet& base, int d, WellFormedKind kind, int i, int j) {
  if (d < 1) throw Error("modulus must be positive");
  Alphabet enriched = Alphabet::enriched(base, d);
  int k = enriched.size();

  Dfa out;
  out.alphabet = enriched;

  switch (kind) {
    case WellFormedKind::kWellFormed: {
      // States: expected next residue 0..d-1, plus dead state d.
      out.state_count = d + 1;
      out.initial = 0;
      out.finals.assign(out.state_count, true);
      out.finals[d] = false;
      out.transitions.assign(out.state_count * k, d);
      for (int e = 0; e < d; ++e)
        for (int sym = 0; sym < k; ++sym)
          if (enriched.residue_of(sym) == e)
            out.transitions[e * k + sym] = (e + 1) % d;
      break;
    }
    case WellFormedKind::kFactors: {
      // Start state accepts any first residue; afterwards residues chain.
      // States: 0 = start, 1..d = expecting residue (s-1), d+1 = dead.
      out.state_count = d + 2;
      out.initial = 0;
      out.finals.assign(out.state_count, true);
      out.finals[d + 1] = false;
      out.transitions.assign(out.state_count * k, d + 1);
      for (int sym = 0; sym < k; ++sym) {
        int r = enriched.residue_of(sym);
        out.transitions[0 * k + sym] = 1 + (r + 1) % d;
        for (int e = 0; e < d; ++e)
          if (r == e) out.transitions[(1 + e) * k + sym] = 1 + (e + 1) % d;
      }
      break;
    }
    case WellFormedKind::kSegment: {
      if (i < 0 || i >= d || j < 0 || j >= d)
        throw Error("segment residues out of range");
      // States: 0 = nothing read (expects residue i), 1..d = last residue
      // read was (s-1), d+1 = dead. Accepting iff last residue == j.
      out.state_count = d + 2;
      out.initial = 0;
      out.finals.assign(out.state_count, false);
      out.finals[1 + j] = true;
      out.transitions.assign(out.state_count * k, d + 1);
      for (int sym = 0; sym < k; ++sym) {
        int r = enriched.residue_of(sym);
        if (r == i) out.transitions[0 * k + sym] = 1 + r;
        for (int last = 0; last < d; ++last)
          if (r == (last + 1) % d) out.transitions[(1 + last) * k + sym] = 1 + r;
      }
      break;
    }
  }
  return minimize(out);
}

Dfa enrich(const Dfa& language, int d) {
  if (d < 1) throw Error("modulus must be positive");
  language.validate();
  if (language.alphabet.is_enriched())
    throw Error("enrich expects a plain-alphabet language");
  Alphabet enriched = Alphabet::enriched(language.alphabet, d);
  int k = enriched.size();
  int n = language.state_count;

  // States: (q, phase) flattened as q * d + phase, plus dead state n*d.
  Dfa out;
  out.alphabet = enriched;
  out.state_count = n * d + 1;
  out.initial = language.initial * d;
  int dead = n * d;
  out.finals.assign(out.state_count, false);
  for (int q = 0; q < n; ++q)
    if (language.finals[q])
      for (int p = 0; p < d; ++p) out.finals[q * d + p] = true;
  out.transitions.assign(out.state_count * k, dead);
  for (int q = 0; q < n; ++q)
    for (int p = 0; p < d; ++p)
      for (int sym = 0; sym < k; ++sym)
        if (enriched.residue_of(sym) == p)
          out.transitions[(q * d + p) * k + sym] =
              language.next(q, enriched.base_of(sym)) * d + (p + 1) % d;
  return minimize(out);
}

Dfa project_letters(const Dfa& d) {
  d.validate();
  if (!d.alphabet.is_enriched()) throw Error("project_letters expects an enriched alphabet");
  Alphabet base = d.alphabet.base_alphabet();

  detail::Nfa n;
  n.alphabet = base;
  for (int q = 0; q < d.state_count; ++q) n.add_state();
  n.initial = d.initial;
  for (int q = 0; q < d.state_count; ++q) {
    if (d.finals[q]) n.finals.insert(q);
    for (int sym = 0; sym < d.alphabet.size(); ++sym)
      n.add_edge(q, d.alphabet.base_of(sym), d.next(q, sym));
  }
  return detail::determinize(n);
}

}  // namespace fragdec
