#pragma once

#include "moduli/keel.hpp"
#include "moduli/rational.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace moduli {

// Mark kinds. AA, BB, AB stand for contracted extremities (circled symbols).
enum class Mark : int { A = 0, B = 1, AA = 2, BB = 3, AB = 4 };

Mark swapped(Mark m);
const char* mark_str(Mark m);

// Dual tree of a stable genus-0 curve with unlabeled partitioned marks.
struct MarkedTree {
  struct Component {
    std::vector<Mark> marks;
    std::vector<int> edges;  // positive edge labels, each shared by exactly two components
  };
  std::vector<Component> components;

  int mark_count(Mark k) const;
  int total_marks() const;
  int edge_count() const;
};

// "(A A -1)(B B B B -1)"; also accepts AA, BB, AB tokens. Validates tree shape and stability;
// throws std::invalid_argument otherwise.
MarkedTree parse_tree(const std::string& text);
std::string tree_str(const MarkedTree& t);
// Canonical text independent of component order and edge labels.
std::string canonical_tree(const MarkedTree& t);
// Forget the A/B distinction (all marks become A).
MarkedTree uncolored(const MarkedTree& t);

// Tree of the boundary stratum cut out by a compatible set of Keel divisors; marks in a_mask are A.
MarkedTree tree_from_divisors(int n, const std::vector<BoundaryIndex>& divisors, std::uint32_t a_mask);

enum class StructureKind { Prym, Spin, Plain };

struct StrataSpace {
  std::string tag;
  StructureKind kind = StructureKind::Plain;
  int a_marks = 6;
  int b_marks = 0;
  bool allow_swap = false;
};

// R2, S2plus, S2minus, M2; throws std::invalid_argument otherwise.
StrataSpace strata_space(const std::string& tag);

struct StratumDescriptor {
  std::string name;
  MarkedTree tree;
  std::set<int> blowups;  // edge labels of the tree
};

// Automorphisms at a generic point: mark permutations preserving kinds (or swapping A and B
// kinds when allowed) that are induced by an automorphism of the generic curve.
std::size_t count_marked_automorphisms(const MarkedTree& t, bool allow_set_swap);

struct CoverVertex {
  int component = 0;  // tree component below
  int sheet = 0;      // 0, or 1 for the second sheet of an unbranched component
  int genus = 0;
  bool exceptional = false;
};

struct CoverEdge {
  int from = 0;
  int to = 0;
  int label = 0;  // tree edge label below
};

struct CoverGraph {
  std::vector<CoverVertex> vertices;
  std::vector<CoverEdge> edges;

  int arithmetic_genus() const;
};

// Throws std::invalid_argument for an odd number of marks.
CoverGraph double_cover_graph(const MarkedTree& t);

bool is_extremity(const MarkedTree::Component& c);
// The contracted tree with extremities replaced by AA/BB/AB marks.
MarkedTree contract_extremities(const MarkedTree& t);
// Blow-up set forced by the structure kind: mixed extremity nodes, plus branched nodes for spin.
std::set<int> default_blowups(const MarkedTree& t, StructureKind kind);

struct AutBreakdown {
  int s = 0;         // components
  int r = 0;         // extremities
  int r_prime = 0;   // extremities with both marks in one set
  std::size_t m = 0;
  std::size_t h = 0;
  int u = 0;         // components of the non-exceptional subcurve
  std::size_t i = 1;
  std::size_t n = 0;
  bool m_consistent = true;  // m == 2^{r'} h
  int cover_genus = 0;
};

// n = 2^{s-r} i h. Throws std::invalid_argument when the blow-up set fails the parity test.
AutBreakdown prym_aut_number(const StratumDescriptor& d, const StrataSpace& space);

struct PushforwardCoeff {
  std::size_t structures = 0;  // colorings over a general image point
  std::size_t image_aut = 0;
  std::size_t source_aut = 0;
  Rational coeff;
  std::string image_tree;  // canonical uncolored tree
};

PushforwardCoeff stratum_pushforward_coeff(const StratumDescriptor& d, const StrataSpace& space);

}  // namespace moduli
