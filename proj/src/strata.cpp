#include "moduli/strata.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace moduli {

Mark swapped(Mark m) {
  switch (m) {
    case Mark::A: return Mark::B;
    case Mark::B: return Mark::A;
    case Mark::AA: return Mark::BB;
    case Mark::BB: return Mark::AA;
    case Mark::AB: return Mark::AB;
  }
  return m;
}

const char* mark_str(Mark m) {
  switch (m) {
    case Mark::A: return "A";
    case Mark::B: return "B";
    case Mark::AA: return "AA";
    case Mark::BB: return "BB";
    case Mark::AB: return "AB";
  }
  return "?";
}

int MarkedTree::mark_count(Mark k) const {
  int c = 0;
  for (const auto& comp : components) c += static_cast<int>(std::count(comp.marks.begin(), comp.marks.end(), k));
  return c;
}

int MarkedTree::total_marks() const {
  int c = 0;
  for (const auto& comp : components) c += static_cast<int>(comp.marks.size());
  return c;
}

int MarkedTree::edge_count() const {
  int c = 0;
  for (const auto& comp : components) c += static_cast<int>(comp.edges.size());
  return c / 2;
}

namespace {

constexpr int kMaxLeaves = 8;

bool plain(Mark m) { return m == Mark::A || m == Mark::B; }

// edge label -> the two component indices
std::map<int, std::array<int, 2>> edge_ends(const MarkedTree& t) {
  std::map<int, std::vector<int>> seen;
  for (std::size_t c = 0; c < t.components.size(); ++c)
    for (int e : t.components[c].edges) seen[e].push_back(static_cast<int>(c));
  std::map<int, std::array<int, 2>> out;
  for (const auto& [label, comps] : seen) {
    if (comps.size() != 2 || comps[0] == comps[1])
      throw std::invalid_argument("edge -" + std::to_string(label) + " must join two distinct components");
    out[label] = {comps[0], comps[1]};
  }
  return out;
}

void validate(const MarkedTree& t) {
  if (t.components.empty()) throw std::invalid_argument("empty tree");
  auto ends = edge_ends(t);
  if (ends.size() + 1 != t.components.size()) throw std::invalid_argument("dual graph is not a tree");
  std::vector<int> parent(t.components.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); };
  for (const auto& [label, e] : ends) {
    int a = find(e[0]), b = find(e[1]);
    if (a == b) throw std::invalid_argument("dual graph is not a tree");
    parent[static_cast<std::size_t>(a)] = b;
  }
  for (const auto& c : t.components)
    if (c.marks.size() + c.edges.size() < 3) throw std::invalid_argument("unstable component in tree");
}

// Marks labeled 0..k-1 in component order; blocks are leaf masks.
struct Labeled {
  int k = 0;
  std::uint32_t full = 0;
  std::vector<Mark> kind;
  std::vector<int> leaf_comp;
  std::vector<int> labels;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::uint32_t> side;  // leaves on the edges[e][1] side
  std::vector<std::vector<std::uint32_t>> blocks;  // per component, sorted
  std::set<std::uint32_t> splits;
  std::set<std::vector<std::uint32_t>> vertex_set;

  std::uint32_t canon(std::uint32_t m) const { return (m >> (k - 1)) & 1u ? full ^ m : m; }
};

std::uint32_t map_mask(const std::vector<int>& p, std::uint32_t m) {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (m & (1u << i)) out |= 1u << p[i];
  return out;
}

Labeled label(const MarkedTree& t) {
  validate(t);
  Labeled L;
  for (std::size_t c = 0; c < t.components.size(); ++c)
    for (Mark m : t.components[c].marks) {
      L.kind.push_back(m);
      L.leaf_comp.push_back(static_cast<int>(c));
    }
  L.k = static_cast<int>(L.kind.size());
  if (L.k < 3 || L.k > kMaxLeaves) throw std::invalid_argument("tree must carry between 3 and 8 marks");
  L.full = (1u << L.k) - 1;
  auto ends = edge_ends(t);
  std::vector<std::vector<std::pair<int, int>>> adj(t.components.size());  // (neighbor, edge index)
  for (const auto& [lab, e] : ends) {
    int idx = static_cast<int>(L.edges.size());
    L.labels.push_back(lab);
    L.edges.push_back(e);
    adj[static_cast<std::size_t>(e[0])].push_back({e[1], idx});
    adj[static_cast<std::size_t>(e[1])].push_back({e[0], idx});
  }
  std::vector<std::uint32_t> own(t.components.size(), 0);
  for (int i = 0; i < L.k; ++i) own[static_cast<std::size_t>(L.leaf_comp[static_cast<std::size_t>(i)])] |= 1u << i;
  std::function<std::uint32_t(int, int)> collect = [&](int c, int from) {
    std::uint32_t m = own[static_cast<std::size_t>(c)];
    for (auto [nb, e] : adj[static_cast<std::size_t>(c)])
      if (e != from) m |= collect(nb, e);
    return m;
  };
  for (std::size_t e = 0; e < L.edges.size(); ++e) L.side.push_back(collect(L.edges[e][1], static_cast<int>(e)));
  for (std::size_t c = 0; c < t.components.size(); ++c) {
    std::vector<std::uint32_t> b;
    for (int i = 0; i < L.k; ++i)
      if (own[c] & (1u << i)) b.push_back(1u << i);
    for (auto [nb, e] : adj[c]) {
      auto eu = static_cast<std::size_t>(e);
      b.push_back(L.edges[eu][0] == static_cast<int>(c) ? L.side[eu] : L.full ^ L.side[eu]);
    }
    std::sort(b.begin(), b.end());
    L.blocks.push_back(b);
    L.vertex_set.insert(b);
  }
  for (auto s : L.side) L.splits.insert(L.canon(s));
  return L;
}

bool realizable(const std::vector<int>& perm) {
  std::size_t k = perm.size();
  bool ident = true;
  for (std::size_t j = 0; j < k; ++j) ident = ident && perm[j] == static_cast<int>(j);
  if (ident || k <= 3) return true;
  if (k == 4) {
    for (std::size_t j = 0; j < k; ++j)
      if (perm[j] == static_cast<int>(j) || perm[static_cast<std::size_t>(perm[j])] != static_cast<int>(j)) return false;
    return true;
  }
  return false;
}

bool acts_trivially(const Labeled& L, const std::vector<int>& p) {
  for (auto s : L.splits)
    if (!L.splits.count(L.canon(map_mask(p, s)))) return false;
  for (const auto& v : L.blocks) {
    std::vector<std::uint32_t> img;
    for (auto b : v) img.push_back(map_mask(p, b));
    std::vector<std::uint32_t> sorted = img;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != v) {
      if (!L.vertex_set.count(sorted) || v.size() > 3) return false;
      continue;
    }
    std::vector<int> perm;
    for (auto b : img) perm.push_back(static_cast<int>(std::lower_bound(v.begin(), v.end(), b) - v.begin()));
    if (!realizable(perm)) return false;
  }
  return true;
}

template <class F>
void for_each_perm(int k, F&& f) {
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  do {
    f(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

bool kind_ok(const Labeled& L, const std::vector<int>& p, bool swap) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    Mark want = swap ? swapped(L.kind[i]) : L.kind[i];
    if (L.kind[static_cast<std::size_t>(p[i])] != want) return false;
  }
  return true;
}

std::string rooted(const MarkedTree& t, const std::map<int, std::array<int, 2>>& ends, int c, int parent_edge) {
  const auto& comp = t.components[static_cast<std::size_t>(c)];
  std::vector<std::string> marks;
  for (Mark m : comp.marks) marks.push_back(mark_str(m));
  std::sort(marks.begin(), marks.end());
  std::vector<std::string> kids;
  for (int e : comp.edges) {
    if (e == parent_edge) continue;
    const auto& en = ends.at(e);
    kids.push_back(rooted(t, ends, en[0] == c ? en[1] : en[0], e));
  }
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (std::size_t i = 0; i < marks.size(); ++i) s += (i ? " " : "") + marks[i];
  for (const auto& k : kids) s += k;
  return s + ")";
}

}  // namespace

MarkedTree parse_tree(const std::string& text) {
  MarkedTree t;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) { throw std::invalid_argument("bad tree '" + text + "': " + why); };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) { ++i; continue; }
    if (text[i] != '(') fail("expected '('");
    auto close = text.find(')', i);
    if (close == std::string::npos) fail("unbalanced parentheses");
    std::istringstream is(text.substr(i + 1, close - i - 1));
    MarkedTree::Component comp;
    std::string tok;
    while (is >> tok) {
      if (tok == "A") comp.marks.push_back(Mark::A);
      else if (tok == "B") comp.marks.push_back(Mark::B);
      else if (tok == "AA") comp.marks.push_back(Mark::AA);
      else if (tok == "BB") comp.marks.push_back(Mark::BB);
      else if (tok == "AB") comp.marks.push_back(Mark::AB);
      else if (tok.size() > 1 && tok[0] == '-' && std::all_of(tok.begin() + 1, tok.end(), ::isdigit)) {
        int lab = std::stoi(tok.substr(1));
        if (lab <= 0) fail("edge labels must be negative integers");
        comp.edges.push_back(lab);
      } else {
        fail("unknown token '" + tok + "'");
      }
    }
    t.components.push_back(std::move(comp));
    i = close + 1;
  }
  validate(t);
  return t;
}

std::string tree_str(const MarkedTree& t) {
  std::string s;
  for (const auto& c : t.components) {
    s += "(";
    bool first = true;
    for (Mark m : c.marks) {
      s += (first ? "" : " ") + std::string(mark_str(m));
      first = false;
    }
    for (int e : c.edges) {
      s += (first ? "-" : " -") + std::to_string(e);
      first = false;
    }
    s += ")";
  }
  return s;
}

std::string canonical_tree(const MarkedTree& t) {
  auto ends = edge_ends(t);
  std::string best;
  for (std::size_t c = 0; c < t.components.size(); ++c) {
    std::string s = rooted(t, ends, static_cast<int>(c), 0);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

MarkedTree uncolored(const MarkedTree& t) {
  MarkedTree u = t;
  for (auto& c : u.components)
    for (auto& m : c.marks) {
      if (!plain(m)) throw std::invalid_argument("uncolored: contracted marks present");
      m = Mark::A;
    }
  return u;
}

MarkedTree tree_from_divisors(int n, const std::vector<BoundaryIndex>& divisors, std::uint32_t a_mask) {
  std::vector<std::uint32_t> splits;
  for (const auto& d : divisors) {
    if (d.n != n) throw std::invalid_argument("divisor on the wrong number of points");
    if (std::find(splits.begin(), splits.end(), d.mask) != splits.end())
      throw std::invalid_argument("repeated divisor does not cut out a stratum");
    splits.push_back(d.mask);
  }
  for (std::size_t a = 0; a < splits.size(); ++a)
    for (std::size_t b = a + 1; b < splits.size(); ++b) {
      auto x = splits[a], y = splits[b];
      bool ok = (x & y) == x || (x & y) == y || (x & y) == 0;
      if (!ok) throw std::invalid_argument("incompatible divisors do not meet");
    }
  const std::uint32_t full = (1u << n) - 1;
  // vertex 0 is the side containing n; vertex j+1 belongs to splits[j]
  auto parent_of = [&](std::uint32_t s) {
    int best = 0;
    std::uint32_t best_mask = full;
    for (std::size_t j = 0; j < splits.size(); ++j) {
      auto t = splits[j];
      if (t != s && (s & t) == s && std::popcount(t) < std::popcount(best_mask)) {
        best = static_cast<int>(j) + 1;
        best_mask = t;
      }
    }
    return best;
  };
  MarkedTree t;
  t.components.resize(splits.size() + 1);
  std::vector<std::uint32_t> covered(splits.size() + 1, 0);
  for (std::size_t j = 0; j < splits.size(); ++j) {
    int p = parent_of(splits[j]);
    int lab = static_cast<int>(j) + 1;
    t.components[j + 1].edges.push_back(lab);
    t.components[static_cast<std::size_t>(p)].edges.push_back(lab);
    covered[static_cast<std::size_t>(p)] |= splits[j];
  }
  std::vector<std::uint32_t> own(splits.size() + 1);
  own[0] = full & ~covered[0];
  for (std::size_t j = 0; j < splits.size(); ++j) own[j + 1] = splits[j] & ~covered[j + 1];
  for (std::size_t v = 0; v < own.size(); ++v)
    for (int i = 0; i < n; ++i)
      if (own[v] & (1u << i)) t.components[v].marks.push_back(a_mask & (1u << i) ? Mark::A : Mark::B);
  validate(t);
  return t;
}

StrataSpace strata_space(const std::string& tag) {
  if (tag == "R2") return {"R2", StructureKind::Prym, 2, 4, false};
  if (tag == "S2plus") return {"S2plus", StructureKind::Spin, 3, 3, true};
  if (tag == "S2minus") return {"S2minus", StructureKind::Spin, 1, 5, false};
  if (tag == "M2") return {"M2", StructureKind::Plain, 6, 0, false};
  throw std::invalid_argument("unknown space tag '" + tag + "'");
}

std::size_t count_marked_automorphisms(const MarkedTree& t, bool allow_set_swap) {
  Labeled L = label(t);
  std::size_t count = 0;
  for_each_perm(L.k, [&](const std::vector<int>& p) {
    if ((kind_ok(L, p, false) || (allow_set_swap && kind_ok(L, p, true))) && acts_trivially(L, p)) ++count;
  });
  return count;
}

int CoverGraph::arithmetic_genus() const {
  int g = 0;
  for (const auto& v : vertices) g += v.genus;
  return g + static_cast<int>(edges.size()) - static_cast<int>(vertices.size()) + 1;
}

bool is_extremity(const MarkedTree::Component& c) {
  return c.edges.size() == 1 && c.marks.size() == 2 && plain(c.marks[0]) && plain(c.marks[1]);
}

CoverGraph double_cover_graph(const MarkedTree& t) {
  for (const auto& c : t.components)
    for (Mark m : c.marks)
      if (!plain(m)) throw std::invalid_argument("cover graph needs an uncontracted tree");
  Labeled L = label(t);
  if (L.k % 2) throw std::invalid_argument("double cover needs an even number of marks");
  CoverGraph g;
  std::vector<std::vector<int>> sheets(t.components.size());
  for (std::size_t c = 0; c < t.components.size(); ++c) {
    // marks plus branched nodes
    int b = 0;
    for (auto blk : L.blocks[c]) b += std::popcount(blk) % 2;
    bool ex = is_extremity(t.components[c]);
    if (b == 0) {
      for (int s = 0; s < 2; ++s) {
        sheets[c].push_back(static_cast<int>(g.vertices.size()));
        g.vertices.push_back({static_cast<int>(c), s, 0, ex});
      }
    } else {
      if (b % 2) throw std::logic_error("odd number of branch points on a component");
      sheets[c].push_back(static_cast<int>(g.vertices.size()));
      g.vertices.push_back({static_cast<int>(c), 0, b / 2 - 1, ex});
    }
  }
  for (std::size_t e = 0; e < L.edges.size(); ++e) {
    const auto& a = sheets[static_cast<std::size_t>(L.edges[e][0])];
    const auto& b = sheets[static_cast<std::size_t>(L.edges[e][1])];
    if (std::popcount(L.side[e]) % 2) {
      g.edges.push_back({a.front(), b.front(), L.labels[e]});
    } else {
      g.edges.push_back({a.front(), b.front(), L.labels[e]});
      g.edges.push_back({a.back(), b.back(), L.labels[e]});
    }
  }
  return g;
}

MarkedTree contract_extremities(const MarkedTree& t) {
  validate(t);
  auto ends = edge_ends(t);
  MarkedTree out;
  std::vector<int> new_index(t.components.size(), -1);
  for (std::size_t c = 0; c < t.components.size(); ++c)
    if (!is_extremity(t.components[c])) {
      new_index[c] = static_cast<int>(out.components.size());
      out.components.push_back(t.components[c]);
    }
  for (std::size_t c = 0; c < t.components.size(); ++c) {
    const auto& comp = t.components[c];
    if (!is_extremity(comp)) continue;
    int lab = comp.edges[0];
    const auto& en = ends.at(lab);
    int nb = en[0] == static_cast<int>(c) ? en[1] : en[0];
    if (new_index[static_cast<std::size_t>(nb)] < 0) throw std::invalid_argument("adjacent extremities cannot be contracted");
    auto& target = out.components[static_cast<std::size_t>(new_index[static_cast<std::size_t>(nb)])];
    target.edges.erase(std::find(target.edges.begin(), target.edges.end(), lab));
    Mark a = comp.marks[0], b = comp.marks[1];
    target.marks.push_back(a != b ? Mark::AB : (a == Mark::A ? Mark::AA : Mark::BB));
  }
  return out;
}

std::set<int> default_blowups(const MarkedTree& t, StructureKind kind) {
  std::set<int> out;
  if (kind == StructureKind::Plain) return out;
  for (const auto& c : t.components)
    if (is_extremity(c) && c.marks[0] != c.marks[1]) out.insert(c.edges[0]);
  if (kind == StructureKind::Spin) {
    Labeled L = label(t);
    for (std::size_t e = 0; e < L.edges.size(); ++e)
      if (std::popcount(L.side[e]) % 2) out.insert(L.labels[e]);
  }
  return out;
}

AutBreakdown prym_aut_number(const StratumDescriptor& d, const StrataSpace& space) {
  const MarkedTree& t = d.tree;
  validate(t);
  if (t.mark_count(Mark::A) != space.a_marks || t.mark_count(Mark::B) != space.b_marks ||
      t.total_marks() != space.a_marks + space.b_marks)
    throw std::invalid_argument("tree marks do not match space " + space.tag);
  auto ends = edge_ends(t);
  for (int b : d.blowups)
    if (!ends.count(b)) throw std::invalid_argument("blow-up refers to unknown edge -" + std::to_string(b));

  AutBreakdown out;
  out.s = static_cast<int>(t.components.size());
  for (const auto& c : t.components)
    if (is_extremity(c)) {
      ++out.r;
      if (c.marks[0] == c.marks[1]) ++out.r_prime;
    }
  out.m = count_marked_automorphisms(t, space.allow_swap);
  out.h = count_marked_automorphisms(contract_extremities(t), space.allow_swap);
  out.m_consistent = out.m == (std::size_t{1} << out.r_prime) * out.h;

  CoverGraph g = double_cover_graph(t);
  out.cover_genus = g.arithmetic_genus();
  if (space.kind == StructureKind::Plain) {
    if (!d.blowups.empty()) throw std::invalid_argument("inconsistent blowup set: plain curves have no blow-ups");
    out.u = 1;
  } else {
    // stable model: contract exceptional vertices into edges
    std::vector<CoverEdge> edges;
    std::map<int, std::vector<int>> through;  // exceptional vertex -> far endpoints
    std::map<int, int> through_label;
    for (const auto& e : g.edges) {
      bool xa = g.vertices[static_cast<std::size_t>(e.from)].exceptional;
      bool xb = g.vertices[static_cast<std::size_t>(e.to)].exceptional;
      if (xa && xb) throw std::invalid_argument("adjacent exceptional components");
      if (xa) { through[e.from].push_back(e.to); through_label[e.from] = e.label; }
      else if (xb) { through[e.to].push_back(e.from); through_label[e.to] = e.label; }
      else edges.push_back(e);
    }
    for (const auto& [v, far] : through) {
      if (far.size() != 2) throw std::logic_error("exceptional component must meet the rest twice");
      edges.push_back({far[0], far[1], through_label[v]});
    }
    std::map<int, int> branches;
    for (const auto& e : edges) {
      bool blown = d.blowups.count(e.label) != 0;
      bool counted = space.kind == StructureKind::Prym ? blown : !blown;
      if (counted) {
        ++branches[e.from];
        ++branches[e.to];
      }
    }
    for (const auto& [v, c] : branches)
      if (c % 2) throw std::invalid_argument("inconsistent blowup set for " + (d.name.empty() ? tree_str(t) : d.name) + ": parity fails on a component");
    std::vector<int> parent(g.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); };
    for (const auto& e : edges)
      if (!d.blowups.count(e.label)) parent[static_cast<std::size_t>(find(e.from))] = find(e.to);
    std::set<int> roots;
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      if (!g.vertices[v].exceptional) roots.insert(find(static_cast<int>(v)));
    out.u = static_cast<int>(roots.size());
  }
  out.i = std::size_t{1} << (out.u - 1);
  out.n = (std::size_t{1} << (out.s - out.r)) * out.i * out.h;
  return out;
}

PushforwardCoeff stratum_pushforward_coeff(const StratumDescriptor& d, const StrataSpace& space) {
  PushforwardCoeff out;
  out.source_aut = prym_aut_number(d, space).n;
  MarkedTree u = uncolored(d.tree);
  StrataSpace plain_space{"M2", StructureKind::Plain, u.total_marks(), 0, false};
  out.image_aut = prym_aut_number({"", u, {}}, plain_space).n;
  out.image_tree = canonical_tree(u);

  Labeled L = label(u);
  std::vector<std::vector<int>> inertia;
  for_each_perm(L.k, [&](const std::vector<int>& p) {
    if (acts_trivially(L, p)) inertia.push_back(p);
  });
  const std::string target = canonical_tree(d.tree);
  std::set<std::uint32_t> matching;
  for (std::uint32_t a = 0; a <= L.full; ++a) {
    if (std::popcount(a) != space.a_marks) continue;
    MarkedTree colored = u;
    int leaf = 0;
    for (auto& c : colored.components)
      for (auto& m : c.marks) m = (a >> leaf++) & 1u ? Mark::A : Mark::B;
    if (canonical_tree(colored) == target) matching.insert(a);
  }
  std::set<std::uint32_t> seen;
  for (auto a : matching) {
    if (seen.count(a)) continue;
    ++out.structures;
    for (const auto& p : inertia) {
      std::uint32_t b = map_mask(p, a);
      seen.insert(b);
      if (space.allow_swap) seen.insert(L.full ^ b);
    }
  }
  out.coeff = Rational(static_cast<long>(out.structures * out.image_aut), static_cast<unsigned long>(out.source_aut));
  out.coeff.canonicalize();
  return out;
}

}  // namespace moduli
