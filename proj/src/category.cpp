#include "fragdec/category.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "detail/term_parser.hpp"
#include "fragdec/error.hpp"
#include "fragdec/stability.hpp"

namespace fragdec {

int GraphSpec::vertex_index(std::string_view name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return static_cast<int>(i);
  throw Error("unknown vertex '" + std::string(name) + "'");
}

int GraphSpec::edge_index(std::string_view name) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].name == name) return static_cast<int>(i);
  throw Error("unknown edge '" + std::string(name) + "'");
}

namespace {

PathTerm path_from_node(const detail::TermNode& n, const GraphSpec& g) {
  PathTerm t;
  switch (n.kind) {
    case detail::TermNode::Kind::kName: {
      t.kind = PathTerm::Kind::kEdge;
      t.edge = g.edge_index(n.name);
      t.src = g.edges[t.edge].src;
      t.dst = g.edges[t.edge].dst;
      return t;
    }
    case detail::TermNode::Kind::kConcat: {
      t.kind = PathTerm::Kind::kConcat;
      for (const auto& c : n.children) t.children.push_back(path_from_node(c, g));
      for (std::size_t i = 1; i < t.children.size(); ++i)
        if (t.children[i - 1].dst != t.children[i].src)
          throw Error("path term concatenates non-consecutive factors");
      t.src = t.children.front().src;
      t.dst = t.children.back().dst;
      return t;
    }
    case detail::TermNode::Kind::kOmega: {
      t.kind = PathTerm::Kind::kOmega;
      t.children.push_back(path_from_node(n.children[0], g));
      if (t.children[0].src != t.children[0].dst)
        throw Error("omega power applies only to loops");
      t.src = t.children[0].src;
      t.dst = t.children[0].dst;
      return t;
    }
  }
  throw Error("unreachable path term node");
}

OmegaTerm path_to_omega(const PathTerm& t, const GraphSpec& g) {
  switch (t.kind) {
    case PathTerm::Kind::kEdge:
      return OmegaTerm::variable(g.edges[t.edge].name);
    case PathTerm::Kind::kConcat: {
      std::vector<OmegaTerm> parts;
      for (const auto& c : t.children) parts.push_back(path_to_omega(c, g));
      return OmegaTerm::concat(std::move(parts));
    }
    case PathTerm::Kind::kOmega:
      return OmegaTerm::omega(path_to_omega(t.children[0], g));
  }
  throw Error("unreachable path term node");
}

PathEquation equation_from_line(const GraphSpec& g, std::string_view line) {
  auto [lhs_node, rhs_node] = detail::parse_equation_text(line);
  PathEquation eq;
  eq.graph = g;
  eq.lhs = path_from_node(lhs_node, g);
  eq.rhs = path_from_node(rhs_node, g);
  if (eq.lhs.src != eq.rhs.src || eq.lhs.dst != eq.rhs.dst)
    throw Error("path equation sides are not coterminal");
  eq.text = detail::render_term(lhs_node) + " = " + detail::render_term(rhs_node);
  return eq;
}

}  // namespace

std::vector<PathEquation> parse_path_equation_file(std::string_view text) {
  GraphSpec g;
  std::vector<std::string> equation_lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    if (key == "vertices:") {
      std::string v;
      while (ls >> v) g.vertices.push_back(v);
    } else if (key == "edge:") {
      std::string name, src, dst;
      if (!(ls >> name >> src >> dst)) throw ParseError("edge: expects `name src dst`");
      g.edges.push_back({name, g.vertex_index(src), g.vertex_index(dst)});
    } else if (key == "equation:") {
      std::string rest;
      std::getline(ls, rest);
      equation_lines.push_back(rest);
    } else {
      throw ParseError("unknown directive '" + key + "' in path-equation file");
    }
  }
  if (g.vertices.empty()) throw ParseError("path-equation file declares no vertices");
  if (equation_lines.empty()) throw ParseError("path-equation file declares no equations");
  {
    std::set<std::string> names;
    for (const auto& e : g.edges)
      if (!names.insert(e.name).second) throw ParseError("duplicate edge name '" + e.name + "'");
  }
  std::vector<PathEquation> out;
  for (const auto& l : equation_lines) out.push_back(equation_from_line(g, l));
  return out;
}

const PathEquation& knast_equation() {
  static const PathEquation eq = [] {
    GraphSpec g;
    g.vertices = {"p", "q"};
    g.edges = {{"m1", 0, 1}, {"m2", 1, 0}, {"m3", 0, 1}, {"m4", 1, 0}};
    return equation_from_line(g, "(m1 m2)^w (m3 m4)^w = (m1 m2)^w m1 m4 (m3 m4)^w");
  }();
  return eq;
}

Identity collapse_to_identity(const PathEquation& eq) {
  return {path_to_omega(eq.lhs, eq.graph), path_to_omega(eq.rhs, eq.graph)};
}

// ---------------------------------------------------------------------------
// FiniteCategory

int FiniteCategory::value_count() const {
  return parent_ ? parent_->element_count() : synthetic_values_;
}

int FiniteCategory::compose(int a, int b) const {
  if (parent_) return parent_->mult(a, b);
  int r = table_[a * synthetic_values_ + b];
  if (r < 0) throw Error("composition of non-consecutive arrow values");
  return r;
}

int FiniteCategory::omega_value(int v) const {
  if (parent_) return parent_->omega(v);
  std::vector<char> seen(synthetic_values_, 0);
  std::vector<int> order;
  int cur = v;
  while (!seen[cur]) {
    seen[cur] = 1;
    order.push_back(cur);
    cur = compose(cur, v);
  }
  auto cycle_start = std::find(order.begin(), order.end(), cur);
  for (auto it = cycle_start; it != order.end(); ++it)
    if (compose(*it, *it) == *it) return *it;
  throw Error("no idempotent power in value cycle");
}

std::string FiniteCategory::value_name(int v) const {
  if (parent_) {
    const std::string& w = parent_->element_word(v);
    return w.empty() ? "1" : w;
  }
  return value_names_[v];
}

std::string FiniteCategory::object_name(int obj) const { return object_names_[obj]; }

std::optional<std::string> FiniteCategory::arrow_via_word(int src, int value, int dst) const {
  if (via_modulus_ == 0) return std::nullopt;
  int d = via_modulus_;
  int r = ((dst - src) % d + d) % d;
  if (via_prev_elem_[value * d + r] == -2) return std::nullopt;  // unreachable
  std::string word;
  int x = value, res = r;
  while (!(via_prev_elem_[x * d + res] == -1 && via_prev_sym_[x * d + res] == -1)) {
    int sym = via_prev_sym_[x * d + res];
    word += parent_->alphabet().name(sym);
    int px = via_prev_elem_[x * d + res];
    x = px;
    res = (res + d - 1) % d;
  }
  std::reverse(word.begin(), word.end());
  return word;
}

std::vector<std::tuple<int, int, int>> FiniteCategory::arrows() const {
  std::vector<std::tuple<int, int, int>> out;
  for (int i = 0; i < objects_; ++i)
    for (int j = 0; j < objects_; ++j)
      for (int v : set_bits(hom(i, j))) out.emplace_back(i, v, j);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::make_tuple(std::get<0>(a), std::get<2>(a), std::get<1>(a)) <
           std::make_tuple(std::get<0>(b), std::get<2>(b), std::get<1>(b));
  });
  return out;
}

void FiniteCategory::check_closure_and_identities() const {
  for (int i = 0; i < objects_; ++i) {
    if (!hom(i, i).test(identity_[i])) throw Error("identity arrow missing from hom(i,i)");
    for (int j = 0; j < objects_; ++j)
      for (int v : set_bits(hom(i, j))) {
        if (compose(identity_[i], v) != v || compose(v, identity_[j]) != v)
          throw Error("identity arrow is not neutral");
      }
  }
  for (int i = 0; i < objects_; ++i)
    for (int j = 0; j < objects_; ++j)
      for (int k = 0; k < objects_; ++k)
        for (int v : set_bits(hom(i, j)))
          for (int u : set_bits(hom(j, k)))
            if (!hom(i, k).test(compose(v, u)))
              throw Error("hom sets are not closed under composition");
}

FiniteCategory derived_category(std::shared_ptr<const SyntacticPresentation> m, int d) {
  if (d < 1) throw Error("modulus must be positive");
  if (!m->identity()) throw Error("derived category needs a monoid presentation");
  FiniteCategory c;
  c.objects_ = d;
  c.parent_ = m;
  c.translation_invariant_ = true;
  std::vector<ElementSet> classes = length_residue_images(*m, d);
  c.hom_.reserve(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c.hom_.push_back(classes[((j - i) % d + d) % d]);
  c.identity_.assign(d, *m->identity());
  for (int i = 0; i < d; ++i) c.object_names_.push_back(std::to_string(i));

  // Breadth-first parents over (element, residue) for witnessing words.
  c.via_modulus_ = d;
  int n = m->element_count();
  c.via_prev_elem_.assign(static_cast<std::size_t>(n) * d, -2);
  c.via_prev_sym_.assign(static_cast<std::size_t>(n) * d, -2);
  int start = *m->identity();
  c.via_prev_elem_[start * d + 0] = -1;
  c.via_prev_sym_[start * d + 0] = -1;
  std::deque<std::pair<int, int>> queue{{start, 0}};
  while (!queue.empty()) {
    auto [x, r] = queue.front();
    queue.pop_front();
    for (int sym = 0; sym < static_cast<int>(m->letter_image().size()); ++sym) {
      int y = m->mult(x, m->letter_image()[sym]);
      int r2 = (r + 1) % d;
      if (c.via_prev_elem_[y * d + r2] == -2) {
        c.via_prev_elem_[y * d + r2] = x;
        c.via_prev_sym_[y * d + r2] = sym;
        queue.emplace_back(y, r2);
      }
    }
  }
  return c;
}

FiniteCategory idempotents_category(std::shared_ptr<const SyntacticPresentation> m,
                                    const ElementSet* within) {
  ElementSet dom = within ? *within : m->all_elements();
  // The considered set must be a subsemigroup.
  for (int x : set_bits(dom))
    for (int y : set_bits(dom))
      if (!dom.test(m->mult(x, y)))
        throw Error("idempotents_category: considered set is not closed under multiplication");
  std::vector<int> ids = set_bits(idempotents(*m, &dom));
  if (ids.empty()) throw Error("idempotents_category: no idempotents in the considered set");
  FiniteCategory c;
  c.objects_ = static_cast<int>(ids.size());
  c.parent_ = m;
  c.hom_.assign(static_cast<std::size_t>(c.objects_) * c.objects_,
                ElementSet(m->element_count()));
  for (int a = 0; a < c.objects_; ++a)
    for (int b = 0; b < c.objects_; ++b) {
      ElementSet& h = c.hom_[a * c.objects_ + b];
      for (int x : set_bits(dom)) h.set(m->mult(m->mult(ids[a], x), ids[b]));
    }
  for (int a = 0; a < c.objects_; ++a) {
    c.identity_.push_back(ids[a]);
    const std::string& w = m->element_word(ids[a]);
    c.object_names_.push_back(w.empty() ? "1" : w);
  }
  c.check_closure_and_identities();
  return c;
}

FiniteCategory one_object_category(std::shared_ptr<const SyntacticPresentation> m,
                                   const ElementSet* within) {
  ElementSet dom = within ? *within : m->all_elements();
  if (!m->identity() || !dom.test(*m->identity()))
    throw Error("one_object_category needs the identity in the considered set");
  FiniteCategory c;
  c.objects_ = 1;
  c.parent_ = m;
  c.hom_.push_back(dom);
  c.identity_.push_back(*m->identity());
  c.object_names_.push_back("*");
  c.check_closure_and_identities();
  return c;
}

FiniteCategory synthetic_category(int objects, std::vector<std::vector<std::vector<int>>> hom,
                                  std::vector<std::vector<int>> table,
                                  std::vector<int> identities,
                                  std::vector<std::string> value_names) {
  FiniteCategory c;
  c.objects_ = objects;
  c.synthetic_values_ = static_cast<int>(table.size());
  c.table_.reserve(static_cast<std::size_t>(c.synthetic_values_) * c.synthetic_values_);
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != c.synthetic_values_)
      throw Error("synthetic category: composition table is not square");
    for (int v : row) {
      if (v >= c.synthetic_values_) throw Error("synthetic category: table entry out of range");
      c.table_.push_back(v);
    }
  }
  if (static_cast<int>(hom.size()) != objects) throw Error("synthetic category: hom rows mismatch");
  std::vector<int> owner(c.synthetic_values_, -1);
  for (int i = 0; i < objects; ++i) {
    if (static_cast<int>(hom[i].size()) != objects)
      throw Error("synthetic category: hom columns mismatch");
    for (int j = 0; j < objects; ++j) {
      ElementSet h(c.synthetic_values_);
      for (int v : hom[i][j]) {
        if (v < 0 || v >= c.synthetic_values_)
          throw Error("synthetic category: hom value out of range");
        if (owner[v] != -1)
          throw Error("synthetic category: a value may appear in only one hom set");
        owner[v] = i * objects + j;
        h.set(v);
      }
      c.hom_.push_back(std::move(h));
    }
  }
  c.identity_ = std::move(identities);
  if (static_cast<int>(c.identity_.size()) != objects)
    throw Error("synthetic category: one identity per object required");
  if (value_names.empty())
    for (int v = 0; v < c.synthetic_values_; ++v) value_names.push_back("v" + std::to_string(v));
  c.value_names_ = std::move(value_names);
  for (int i = 0; i < objects; ++i) c.object_names_.push_back(std::to_string(i));
  c.check_closure_and_identities();
  // Associativity over consecutive triples.
  for (int i = 0; i < objects; ++i)
    for (int j = 0; j < objects; ++j)
      for (int k = 0; k < objects; ++k)
        for (int l = 0; l < objects; ++l)
          for (int a : set_bits(c.hom(i, j)))
            for (int b : set_bits(c.hom(j, k)))
              for (int e : set_bits(c.hom(k, l)))
                if (c.compose(c.compose(a, b), e) != c.compose(a, c.compose(b, e)))
                  throw Error("synthetic category: composition is not associative");
  return c;
}

SyntacticPresentation local_monoid_at(const FiniteCategory& c, int object) {
  std::vector<int> values = set_bits(c.hom(object, object));
  int n = static_cast<int>(values.size());
  std::vector<int> pos(c.value_count(), -1);
  for (int i = 0; i < n; ++i) pos[values[i]] = i;
  std::vector<int> mult(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int r = pos[c.compose(values[a], values[b])];
      if (r < 0) throw Error("local monoid is not closed under composition");
      mult[a * n + b] = r;
    }
  std::vector<std::string> names;
  for (int v : values) names.push_back(c.value_name(v));
  return SyntacticPresentation::from_table(std::move(mult), n, std::move(names));
}

SyntacticPresentation consolidate(const FiniteCategory& c, int max_arrows) {
  std::vector<std::tuple<int, int, int>> arrows = c.arrows();
  if (static_cast<int>(arrows.size()) > max_arrows)
    throw GuardError("consolidate: arrow count " + std::to_string(arrows.size()) +
                     " exceeds cap " + std::to_string(max_arrows));
  int n = static_cast<int>(arrows.size()) + 1;
  int zero = n - 1;
  std::map<std::tuple<int, int, int>, int> index;
  for (std::size_t i = 0; i < arrows.size(); ++i) index[arrows[i]] = static_cast<int>(i);
  std::vector<int> mult(static_cast<std::size_t>(n) * n, zero);
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    auto [i, v, j] = arrows[a];
    for (std::size_t b = 0; b < arrows.size(); ++b) {
      auto [j2, u, k] = arrows[b];
      if (j == j2) mult[a * n + b] = index.at({i, c.compose(v, u), k});
    }
  }
  std::vector<std::string> names;
  for (auto [i, v, j] : arrows)
    names.push_back(c.object_name(i) + "->" + c.object_name(j) + ":" + c.value_name(v));
  names.push_back("0");
  return SyntacticPresentation::from_table(std::move(mult), n, std::move(names));
}

// ---------------------------------------------------------------------------
// Division

bool division_check(const DivisionWitness& w, const FiniteCategory& c,
                    const FiniteCategory& d, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (static_cast<int>(w.object_map.size()) != c.object_count())
    return fail("object map does not cover the source objects");
  for (int o : w.object_map)
    if (o < 0 || o >= d.object_count()) return fail("object map target out of range");

  auto image_of = [&](int i, int v, int j) -> const std::vector<int>* {
    auto it = w.images.find({i, v, j});
    return it == w.images.end() ? nullptr : &it->second;
  };

  std::vector<std::tuple<int, int, int>> arrows = c.arrows();
  // Axiom (2): every arrow has a non-empty image, landing in the right hom set.
  for (auto [i, v, j] : arrows) {
    const auto* img = image_of(i, v, j);
    if (!img || img->empty())
      return fail("empty image for arrow " + std::to_string(i) + "->" + std::to_string(j));
    for (int a : *img)
      if (!d.hom(w.object_map[i], w.object_map[j]).test(a))
        return fail("image value is not an arrow of the target category");
  }
  // Axiom (3): the target identity lies in the image of each identity arrow.
  for (int i = 0; i < c.object_count(); ++i) {
    const auto* img = image_of(i, c.identity_at(i), i);
    if (!img) return fail("identity arrow has no image");
    if (std::find(img->begin(), img->end(), d.identity_at(w.object_map[i])) == img->end())
      return fail("identity image misses the target identity");
  }
  // Axiom (1): tau(x) tau(y) is contained in tau(xy) for consecutive arrows.
  for (int i = 0; i < c.object_count(); ++i)
    for (int j = 0; j < c.object_count(); ++j)
      for (int k = 0; k < c.object_count(); ++k)
        for (int v : set_bits(c.hom(i, j)))
          for (int u : set_bits(c.hom(j, k))) {
            int vu = c.compose(v, u);
            const auto* img_vu = image_of(i, vu, k);
            if (!img_vu) return fail("composite arrow has no image");
            const auto* img_v = image_of(i, v, j);
            const auto* img_u = image_of(j, u, k);
            for (int a : *img_v)
              for (int b : *img_u)
                if (std::find(img_vu->begin(), img_vu->end(), d.compose(a, b)) ==
                    img_vu->end())
                  return fail("image product escapes the image of the composite");
          }
  // Axiom (4): distinct coterminal arrows have disjoint images.
  for (int i = 0; i < c.object_count(); ++i)
    for (int j = 0; j < c.object_count(); ++j) {
      std::vector<int> vs = set_bits(c.hom(i, j));
      for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
          const auto* ia = image_of(i, vs[a], j);
          const auto* ib = image_of(i, vs[b], j);
          for (int x : *ia)
            if (std::find(ib->begin(), ib->end(), x) != ib->end())
              return fail("coterminal arrows have overlapping images");
        }
    }
  return true;
}

DivisionWitness prop15_division(std::shared_ptr<const SyntacticPresentation> m, int d,
                                int d2) {
  if (d < 1 || d2 < 1 || d2 % d != 0)
    throw Error("prop15_division requires d to divide d2");
  std::vector<ElementSet> classes = length_residue_images(*m, d2);
  DivisionWitness w;
  w.object_map.resize(d2);
  for (int x = 0; x < d2; ++x) w.object_map[x] = x % d;
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j)
      for (int v : set_bits(classes[((j - i) % d2 + d2) % d2]))
        w.images[{i, v, j}] = {v};
  return w;
}

// ---------------------------------------------------------------------------
// Path-equation checking

namespace {

struct PathInstr {
  enum class Op { kPushEdge, kMul, kOmega };
  Op op;
  int edge = 0;
};

void compile_path(const PathTerm& t, std::vector<PathInstr>& out) {
  switch (t.kind) {
    case PathTerm::Kind::kEdge:
      out.push_back({PathInstr::Op::kPushEdge, t.edge});
      break;
    case PathTerm::Kind::kConcat:
      compile_path(t.children[0], out);
      for (std::size_t i = 1; i < t.children.size(); ++i) {
        compile_path(t.children[i], out);
        out.push_back({PathInstr::Op::kMul, 0});
      }
      break;
    case PathTerm::Kind::kOmega:
      compile_path(t.children[0], out);
      out.push_back({PathInstr::Op::kOmega, 0});
      break;
  }
}

int eval_path(const std::vector<PathInstr>& prog, const int* edge_values,
              const FiniteCategory& c, int* stack) {
  int sp = 0;
  for (const PathInstr& in : prog) {
    switch (in.op) {
      case PathInstr::Op::kPushEdge:
        stack[sp++] = edge_values[in.edge];
        break;
      case PathInstr::Op::kMul:
        --sp;
        stack[sp - 1] = c.compose(stack[sp - 1], stack[sp]);
        break;
      case PathInstr::Op::kOmega:
        stack[sp - 1] = c.omega_value(stack[sp - 1]);
        break;
    }
  }
  return stack[0];
}

int path_stack_depth(const std::vector<PathInstr>& prog) {
  int depth = 0, max_depth = 0;
  for (const auto& in : prog) {
    if (in.op == PathInstr::Op::kPushEdge) ++depth;
    if (in.op == PathInstr::Op::kMul) --depth;
    max_depth = std::max(max_depth, depth);
  }
  return max_depth;
}

struct PathCheckContext {
  const FiniteCategory* cat;
  const PathEquation* eq;
  std::vector<PathInstr> lhs, rhs;
  int stack_depth;
  int vert_count, edge_count;
  bool pin_first_vertex;
  std::uint64_t obj_total;  // object assignments enumerated

  void decode_objects(std::uint64_t idx, std::vector<int>& objs) const {
    int n = cat->object_count();
    objs.assign(vert_count, 0);
    int lowest = pin_first_vertex ? 1 : 0;
    for (int v = vert_count - 1; v >= lowest; --v) {
      objs[v] = static_cast<int>(idx % n);
      idx /= n;
    }
  }

  // Candidate arrow values per edge, ascending. False when some hom is empty.
  bool candidates_for(const std::vector<int>& objs,
                      std::vector<std::vector<int>>& cand) const {
    cand.assign(edge_count, {});
    for (int e = 0; e < edge_count; ++e) {
      const auto& edge = eq->graph.edges[e];
      cand[e] = set_bits(cat->hom(objs[edge.src], objs[edge.dst]));
      if (cand[e].empty()) return false;
    }
    return true;
  }
};

// Scans the edge assignments of one object assignment in canonical order.
// Returns the least failing edge-assignment index, or UINT64_MAX.
std::uint64_t scan_edges(const PathCheckContext& ctx,
                         const std::vector<std::vector<int>>& cand) {
  const FiniteCategory& c = *ctx.cat;
  int e_count = ctx.edge_count;
  std::vector<std::uint64_t> digit(e_count, 0);
  std::vector<int> values(e_count);
  for (int e = 0; e < e_count; ++e) values[e] = cand[e][0];
  std::vector<int> stack(ctx.stack_depth + 1);
  std::uint64_t idx = 0;
  for (;;) {
    int l = eval_path(ctx.lhs, values.data(), c, stack.data());
    int r = eval_path(ctx.rhs, values.data(), c, stack.data());
    if (l != r) return idx;
    // Odometer over edges, last edge fastest.
    int e = e_count - 1;
    for (; e >= 0; --e) {
      if (++digit[e] < cand[e].size()) {
        values[e] = cand[e][digit[e]];
        break;
      }
      digit[e] = 0;
      values[e] = cand[e][0];
    }
    if (e < 0) return UINT64_MAX;
    ++idx;
  }
}

PathVerdict run_path_check(const FiniteCategory& c, const PathEquation& eq,
                           const PathCheckOptions& opts, bool parallel) {
  PathCheckContext ctx;
  ctx.cat = &c;
  ctx.eq = &eq;
  compile_path(eq.lhs, ctx.lhs);
  compile_path(eq.rhs, ctx.rhs);
  ctx.stack_depth = std::max(path_stack_depth(ctx.lhs), path_stack_depth(ctx.rhs));
  ctx.vert_count = static_cast<int>(eq.graph.vertices.size());
  ctx.edge_count = static_cast<int>(eq.graph.edges.size());
  ctx.pin_first_vertex = c.translation_invariant() && ctx.vert_count > 0;

  int n = c.object_count();
  std::uint64_t obj_total = 1;
  int free_vertices = ctx.vert_count - (ctx.pin_first_vertex ? 1 : 0);
  for (int i = 0; i < free_vertices; ++i) {
    if (obj_total > opts.max_morphisms / std::max(n, 1)) {
      throw GuardError("path-equation object assignment space exceeds cap (" +
                       std::to_string(opts.max_morphisms) +
                       "); raise --max-morphisms to proceed");
    }
    obj_total *= n;
  }
  ctx.obj_total = obj_total;

  // Guard: total enumerated morphisms across all object assignments.
  {
    std::uint64_t total = 0;
    std::vector<int> objs;
    for (std::uint64_t oi = 0; oi < obj_total; ++oi) {
      ctx.decode_objects(oi, objs);
      std::uint64_t prod = 1;
      for (int e = 0; e < ctx.edge_count && prod > 0; ++e) {
        const auto& edge = eq.graph.edges[e];
        std::uint64_t h = c.hom(objs[edge.src], objs[edge.dst]).count();
        if (h == 0 || prod > (opts.max_morphisms + 1) / h)
          prod = (h == 0) ? 0 : opts.max_morphisms + 1;
        else
          prod *= h;
      }
      total += prod;
      if (total > opts.max_morphisms)
        throw GuardError("path-equation morphism space exceeds cap (" +
                         std::to_string(opts.max_morphisms) +
                         "); raise --max-morphisms to proceed");
    }
  }

  std::uint64_t best_obj = UINT64_MAX, best_edge = UINT64_MAX;

#ifdef _OPENMP
  if (parallel && obj_total >= opts.parallel_threshold) {
    std::atomic<std::uint64_t> shared_best_obj{UINT64_MAX};
    std::uint64_t shared_best_edge = UINT64_MAX;
#pragma omp parallel
    {
      std::vector<int> objs;
      std::vector<std::vector<int>> cand;
#pragma omp for schedule(dynamic)
      for (std::int64_t oi = 0; oi < static_cast<std::int64_t>(obj_total); ++oi) {
        if (shared_best_obj.load(std::memory_order_relaxed) < static_cast<std::uint64_t>(oi))
          continue;
        ctx.decode_objects(oi, objs);
        if (!ctx.candidates_for(objs, cand)) continue;
        std::uint64_t ei = scan_edges(ctx, cand);
        if (ei != UINT64_MAX) {
#pragma omp critical(fragdec_path_best)
          {
            std::uint64_t cur = shared_best_obj.load(std::memory_order_relaxed);
            if (static_cast<std::uint64_t>(oi) < cur ||
                (static_cast<std::uint64_t>(oi) == cur && ei < shared_best_edge)) {
              shared_best_obj.store(oi, std::memory_order_relaxed);
              shared_best_edge = ei;
            }
          }
        }
      }
    }
    best_obj = shared_best_obj.load();
    best_edge = shared_best_edge;
  } else
#endif
  {
    (void)parallel;
    std::vector<int> objs;
    std::vector<std::vector<int>> cand;
    for (std::uint64_t oi = 0; oi < obj_total && best_obj == UINT64_MAX; ++oi) {
      ctx.decode_objects(oi, objs);
      if (!ctx.candidates_for(objs, cand)) continue;
      std::uint64_t ei = scan_edges(ctx, cand);
      if (ei != UINT64_MAX) {
        best_obj = oi;
        best_edge = ei;
      }
    }
  }

  if (best_obj == UINT64_MAX) return {true, std::nullopt};

  // Decode the canonical witness.
  MorphismWitness w;
  std::vector<int> objs;
  std::vector<std::vector<int>> cand;
  ctx.decode_objects(best_obj, objs);
  ctx.candidates_for(objs, cand);
  w.vertex_to_object = objs;
  std::vector<std::uint64_t> radices(ctx.edge_count);
  for (int e = 0; e < ctx.edge_count; ++e) radices[e] = cand[e].size();
  std::vector<int> values(ctx.edge_count);
  {
    std::uint64_t idx = best_edge;
    for (int e = ctx.edge_count - 1; e >= 0; --e) {
      values[e] = cand[e][idx % radices[e]];
      idx /= radices[e];
    }
  }
  for (int e = 0; e < ctx.edge_count; ++e) {
    const auto& edge = eq.graph.edges[e];
    w.edge_to_arrow.emplace_back(objs[edge.src], values[e], objs[edge.dst]);
  }
  std::vector<int> stack(ctx.stack_depth + 1);
  w.lhs_value = eval_path(ctx.lhs, values.data(), c, stack.data());
  w.rhs_value = eval_path(ctx.rhs, values.data(), c, stack.data());
  return {false, w};
}

}  // namespace

PathVerdict check_path_equation(const FiniteCategory& c, const PathEquation& eq,
                                const PathCheckOptions& opts) {
  return run_path_check(c, eq, opts, true);
}

PathVerdict check_path_equation_serial(const FiniteCategory& c, const PathEquation& eq,
                                       const PathCheckOptions& opts) {
  return run_path_check(c, eq, opts, false);
}

PathVerdict check_path_equation_parallel(const FiniteCategory& c, const PathEquation& eq,
                                         const PathCheckOptions& opts) {
  return run_path_check(c, eq, opts, true);
}

}  // namespace fragdec
