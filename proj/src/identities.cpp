#include "fragdec/identities.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "detail/term_parser.hpp"
#include "fragdec/error.hpp"

namespace fragdec {

OmegaTerm OmegaTerm::variable(std::string name) {
  OmegaTerm t;
  t.kind = Kind::kVar;
  t.var = std::move(name);
  return t;
}

OmegaTerm OmegaTerm::concat(std::vector<OmegaTerm> parts) {
  OmegaTerm t;
  t.kind = Kind::kConcat;
  t.children = std::move(parts);
  return t;
}

OmegaTerm OmegaTerm::omega(OmegaTerm inner) {
  OmegaTerm t;
  t.kind = Kind::kOmega;
  t.children.push_back(std::move(inner));
  return t;
}

namespace {

OmegaTerm from_term_node(const detail::TermNode& n) {
  switch (n.kind) {
    case detail::TermNode::Kind::kName:
      return OmegaTerm::variable(n.name);
    case detail::TermNode::Kind::kOmega:
      return OmegaTerm::omega(from_term_node(n.children[0]));
    case detail::TermNode::Kind::kConcat: {
      std::vector<OmegaTerm> parts;
      for (const auto& c : n.children) parts.push_back(from_term_node(c));
      return OmegaTerm::concat(std::move(parts));
    }
  }
  throw Error("unreachable term node");
}

detail::TermNode to_term_node(const OmegaTerm& t) {
  detail::TermNode n;
  switch (t.kind) {
    case OmegaTerm::Kind::kVar:
      n.kind = detail::TermNode::Kind::kName;
      n.name = t.var;
      break;
    case OmegaTerm::Kind::kOmega:
      n.kind = detail::TermNode::Kind::kOmega;
      n.children.push_back(to_term_node(t.children[0]));
      break;
    case OmegaTerm::Kind::kConcat:
      n.kind = detail::TermNode::Kind::kConcat;
      for (const auto& c : t.children) n.children.push_back(to_term_node(c));
      break;
  }
  return n;
}

void collect_vars(const OmegaTerm& t, std::set<std::string>& out) {
  if (t.kind == OmegaTerm::Kind::kVar) out.insert(t.var);
  for (const auto& c : t.children) collect_vars(c, out);
}

// Flat postfix program for fast repeated evaluation.
struct Instr {
  enum class Op { kPush, kMul, kOmega };
  Op op;
  int var = 0;
};

void compile_term(const OmegaTerm& t, const std::map<std::string, int>& var_index,
                  std::vector<Instr>& out) {
  switch (t.kind) {
    case OmegaTerm::Kind::kVar:
      out.push_back({Instr::Op::kPush, var_index.at(t.var)});
      break;
    case OmegaTerm::Kind::kConcat:
      compile_term(t.children[0], var_index, out);
      for (std::size_t i = 1; i < t.children.size(); ++i) {
        compile_term(t.children[i], var_index, out);
        out.push_back({Instr::Op::kMul, 0});
      }
      break;
    case OmegaTerm::Kind::kOmega:
      compile_term(t.children[0], var_index, out);
      out.push_back({Instr::Op::kOmega, 0});
      break;
  }
}

int eval_program(const std::vector<Instr>& prog, const int* values,
                 const SyntacticPresentation& s, int* stack) {
  int sp = 0;
  for (const Instr& in : prog) {
    switch (in.op) {
      case Instr::Op::kPush:
        stack[sp++] = values[in.var];
        break;
      case Instr::Op::kMul:
        --sp;
        stack[sp - 1] = s.mult(stack[sp - 1], stack[sp]);
        break;
      case Instr::Op::kOmega:
        stack[sp - 1] = s.omega(stack[sp - 1]);
        break;
    }
  }
  return stack[0];
}

int program_stack_depth(const std::vector<Instr>& prog) {
  int depth = 0, max_depth = 0;
  for (const Instr& in : prog) {
    if (in.op == Instr::Op::kPush) ++depth;
    if (in.op == Instr::Op::kMul) --depth;
    max_depth = std::max(max_depth, depth);
  }
  return max_depth;
}

struct CompiledEquation {
  std::vector<Instr> lhs, rhs;
  int stack_depth;
};

// Decodes assignment index -> element values (most significant digit is the
// first variable in sorted order).
void decode_assignment(std::uint64_t idx, int vars, const std::vector<int>& domain,
                       int* values) {
  std::uint64_t n = domain.size();
  for (int v = vars - 1; v >= 0; --v) {
    values[v] = domain[idx % n];
    idx /= n;
  }
}

struct EquationScan {
  std::uint64_t total;
  std::vector<int> domain;
  std::vector<std::string> vars;
  CompiledEquation eq;
};

// Scans [lo, hi) in ascending order; returns the least failing index or
// UINT64_MAX. `abort_below` lets a caller stop the scan once an earlier
// failure is known.
std::uint64_t scan_range(const SyntacticPresentation& s, const EquationScan& scan,
                         std::uint64_t lo, std::uint64_t hi,
                         const std::atomic<std::uint64_t>* global_best) {
  int vars = static_cast<int>(scan.vars.size());
  std::vector<int> values(std::max(vars, 1));
  std::vector<int> stack(scan.eq.stack_depth + 1);
  std::uint64_t n = scan.domain.size();
  if (lo >= hi) return UINT64_MAX;
  decode_assignment(lo, vars, scan.domain, values.data());
  // Odometer positions (digit indices into domain) for cheap increments.
  std::vector<std::uint64_t> digits(vars);
  {
    std::uint64_t idx = lo;
    for (int v = vars - 1; v >= 0; --v) {
      digits[v] = idx % n;
      idx /= n;
    }
  }
  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    if (global_best && (idx & 1023) == 0 &&
        global_best->load(std::memory_order_relaxed) < lo)
      return UINT64_MAX;
    int l = eval_program(scan.eq.lhs, values.data(), s, stack.data());
    int r = eval_program(scan.eq.rhs, values.data(), s, stack.data());
    if (l != r) return idx;
    // Increment the odometer.
    for (int v = vars - 1; v >= 0; --v) {
      if (++digits[v] < n) {
        values[v] = scan.domain[digits[v]];
        break;
      }
      digits[v] = 0;
      values[v] = scan.domain[0];
    }
  }
  return UINT64_MAX;
}

IdentityVerdict run_check(const SyntacticPresentation& s, const IdentitySet& ids,
                          const ElementSet* within, const IdentityCheckOptions& opts,
                          bool parallel) {
  ElementSet dom = within ? *within : s.all_elements();
  std::vector<int> domain = set_bits(dom);
  if (domain.empty()) return {true, std::nullopt};

  for (std::size_t e = 0; e < ids.equations.size(); ++e) {
    const Identity& id = ids.equations[e];
    std::set<std::string> var_set;
    collect_vars(id.lhs, var_set);
    collect_vars(id.rhs, var_set);
    std::vector<std::string> vars(var_set.begin(), var_set.end());
    std::map<std::string, int> var_index;
    for (std::size_t i = 0; i < vars.size(); ++i) var_index[vars[i]] = static_cast<int>(i);

    CompiledEquation ce;
    compile_term(id.lhs, var_index, ce.lhs);
    compile_term(id.rhs, var_index, ce.rhs);
    ce.stack_depth = std::max(program_stack_depth(ce.lhs), program_stack_depth(ce.rhs));

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (total > opts.max_assignments / domain.size() + 1) {
        total = opts.max_assignments + 1;
        break;
      }
      total *= domain.size();
    }
    if (total > opts.max_assignments)
      throw GuardError("identity check assignment space exceeds cap (" +
                       std::to_string(opts.max_assignments) +
                       "); raise --max-assignments to proceed");

    EquationScan scan{total, domain, vars, std::move(ce)};
    std::uint64_t best = UINT64_MAX;

#ifdef _OPENMP
    if (parallel && total >= opts.parallel_threshold) {
      std::atomic<std::uint64_t> shared_best{UINT64_MAX};
#pragma omp parallel
      {
        int tid = omp_get_thread_num();
        int nthreads = omp_get_num_threads();
        std::uint64_t chunk = (total + nthreads - 1) / nthreads;
        std::uint64_t lo = std::min<std::uint64_t>(total, chunk * tid);
        std::uint64_t hi = std::min<std::uint64_t>(total, lo + chunk);
        std::uint64_t local = scan_range(s, scan, lo, hi, &shared_best);
        if (local != UINT64_MAX) {
          std::uint64_t cur = shared_best.load(std::memory_order_relaxed);
          while (local < cur &&
                 !shared_best.compare_exchange_weak(cur, local, std::memory_order_relaxed)) {
          }
        }
      }
      best = shared_best.load();
    } else
#endif
    {
      (void)parallel;
      best = scan_range(s, scan, 0, total, nullptr);
    }

    if (best != UINT64_MAX) {
      IdentityWitness w;
      w.equation_index = static_cast<int>(e);
      std::vector<int> values(std::max<std::size_t>(vars.size(), 1));
      decode_assignment(best, static_cast<int>(vars.size()), domain, values.data());
      for (std::size_t i = 0; i < vars.size(); ++i) w.assignment[vars[i]] = values[i];
      std::vector<int> stack(scan.eq.stack_depth + 1);
      w.lhs_value = eval_program(scan.eq.lhs, values.data(), s, stack.data());
      w.rhs_value = eval_program(scan.eq.rhs, values.data(), s, stack.data());
      return {false, w};
    }
  }
  return {true, std::nullopt};
}

}  // namespace

std::string render_omega_term(const OmegaTerm& t) {
  return detail::render_term(to_term_node(t));
}

std::string render_identity(const Identity& id) {
  return render_omega_term(id.lhs) + " = " + render_omega_term(id.rhs);
}

std::vector<std::string> IdentitySet::variables() const {
  std::set<std::string> vars;
  for (const auto& eq : equations) {
    collect_vars(eq.lhs, vars);
    collect_vars(eq.rhs, vars);
  }
  return {vars.begin(), vars.end()};
}

IdentitySet parse_identity_file(std::string_view text, std::string name) {
  IdentitySet out;
  out.name = std::move(name);
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto [lhs, rhs] = detail::parse_equation_text(line);
    out.equations.push_back({from_term_node(lhs), from_term_node(rhs)});
  }
  if (out.equations.empty()) throw ParseError("identity file contains no equations");
  return out;
}

const IdentitySet& builtin_identities(std::string_view name) {
  static const std::vector<IdentitySet> sets = [] {
    std::vector<IdentitySet> v;
    v.push_back(parse_identity_file("x^w = x^w x", "A"));
    v.push_back(parse_identity_file("x^w = x^w x\nx y = y x", "ACom"));
    v.push_back(parse_identity_file("x y = y x", "Com"));
    v.push_back(parse_identity_file("(x y)^w = (x y)^w x (x y)^w", "DA"));
    v.push_back(parse_identity_file("y (x y)^w = (x y)^w\n(x y)^w = (x y)^w x", "J"));
    v.push_back(parse_identity_file("x x = x\nx y = y x", "J1"));
    v.push_back(parse_identity_file(
        "x^w u y^w v x^w w y^w = x^w w y^w v x^w u y^w", "FO[+1]"));
    return v;
  }();
  for (const auto& s : sets)
    if (s.name == name) return s;
  throw Error("unknown built-in identity set '" + std::string(name) + "'");
}

std::vector<std::string> builtin_identity_names() {
  return {"A", "ACom", "Com", "DA", "J", "J1", "FO[+1]"};
}

IdentityVerdict check_identity(const SyntacticPresentation& s, const IdentitySet& ids,
                               const ElementSet* within, const IdentityCheckOptions& opts) {
  return run_check(s, ids, within, opts, true);
}

IdentityVerdict check_identity_serial(const SyntacticPresentation& s, const IdentitySet& ids,
                                      const ElementSet* within,
                                      const IdentityCheckOptions& opts) {
  return run_check(s, ids, within, opts, false);
}

IdentityVerdict check_identity_parallel(const SyntacticPresentation& s, const IdentitySet& ids,
                                        const ElementSet* within,
                                        const IdentityCheckOptions& opts) {
  return run_check(s, ids, within, opts, true);
}

}  // namespace fragdec
