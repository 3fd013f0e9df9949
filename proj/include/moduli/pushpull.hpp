#pragma once

#include "moduli/space.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace moduli {

enum class Verdict { Pass, Fail, Erratum, Info };
const char* verdict_str(Verdict v);

// One reproduced tabled value.
struct Check {
  std::string id;
  std::string expected;
  std::string computed;
  Verdict verdict = Verdict::Info;
  std::string cite;
  std::string note;
};

// Rescale to coprime integers; the first term of `order` present in p gets a positive sign.
Polynomial normalize_relation(const Polynomial& p, const std::vector<std::string>& order = {});
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& rules);

// ---- quotient maps f: M0,6 -> space --------------------------------------------------------

struct FPush {
  RingElement value;               // invariant element, Q-class model
  std::optional<Polynomial> table; // from the behaviour list (degree-1 inputs)
  std::optional<Polynomial> named; // value expressed in the space's class names
  bool consistent = true;          // table agrees with the ring
};

// Map names: fR, fplus, fminus, fM2. Input polynomial in Keel divisors "[i,j,...]".
std::string f_map_space(const std::string& map);
FPush push_f(Workspace& ws, const std::string& tag, const Polynomial& keel);

// ---- forgetful maps pi: space -> M2 --------------------------------------------------------

struct PiPush {
  RingElement value;                // on M2
  std::optional<Polynomial> named;  // in M2 class names
};
PiPush push_pi(Workspace& ws, const std::string& tag, const Polynomial& cls);

// Tabled pushforward coefficient versus the ring, the combinatorial count, and (codimension 2)
// the projection formula applied to the intersection-table row.
std::vector<Check> pi_pushforward_checks(Workspace& ws, const std::string& tag);
std::vector<Check> automorphism_checks(Workspace& ws, const std::string& tag);
std::vector<Check> pullback_delta_checks(Workspace& ws, const std::string& tag);
std::vector<Check> projection_formula_checks(Workspace& ws, const std::string& tag);

// ---- maps from M0,5 onto codimension-1 strata ----------------------------------------------

struct HMapEntry {
  std::vector<int> divisor;  // labels 0..4
  int multiplicity = 1;
  std::string stratum;       // alias in the target space
  std::string cite;
};

struct M05Relation {
  std::string id;
  std::array<int, 4> points{};
  int difference = 1;
  std::map<std::string, std::string> rewrite;
  std::vector<std::string> order;
  std::string expected;
  std::string cite;
  std::string note;
};

struct HMap {
  std::string name;
  std::string title;
  std::string space;
  int degree = 0;
  std::vector<int> extremity;
  std::vector<HMapEntry> entries;
  std::vector<M05Relation> relations;
  std::string cite;
};

HMap load_hmap(Workspace& ws, const std::string& name);  // "h0p", "h0alpha", or a file
// Table pushforward of a polynomial in M0,5 divisors "[i,j]" (labels 0..4), as plain classes.
Polynomial push_h(Workspace& ws, const HMap& h, const Polynomial& m05);
std::vector<Check> hmap_entry_checks(Workspace& ws, const HMap& h);

struct DerivedRelation {
  std::string id;
  std::string space;
  Polynomial raw;
  Polynomial rewritten;
  Polynomial normalized;
  Polynomial expected;
  bool matches = false;
  bool vanishes = false;  // in the invariant ring
  std::string cite;
  std::string note;
};

std::vector<DerivedRelation> derive_m05_relations(Workspace& ws);
std::vector<Check> transversality_checks(Workspace& ws);

// ---- linear relations among boundary divisors -----------------------------------------------

struct LinearRelation {
  std::string space;
  Polynomial quoted_quadruple;  // normalized push of the quoted four-point relation
  Polynomial span;             // normalized generator of the span of all pushed relations (0 if none)
  std::size_t span_rank = 0;
  Polynomial expected;
  bool matches = false;
  bool vanishes = false;
  std::optional<bool> in_table_kernel;
  std::string cite;
};
LinearRelation derive_linear_relation(Workspace& ws, const std::string& tag);

// ---- intersection numbers ---------------------------------------------------------------------

struct IntersectionTable {
  std::string space;
  std::vector<std::string> rows;
  std::vector<std::string> columns;
  QMatrix computed;
  QMatrix tabled;
  std::size_t rank = 0;
  std::size_t expected_rank = 0;
  std::vector<QVector> kernel;  // primitive integer vectors
  QVector expected_kernel;
  bool entries_match = false;
  bool kernel_matches = false;
  std::string cite;
};
IntersectionTable intersection_table(Workspace& ws, const std::string& tag);

std::vector<Check> mumford_base_numbers(Workspace& ws);

struct RelationVerdict {
  std::string expr;
  bool holds = false;
  std::string residue;  // nonzero intersection data when it fails
  std::string cite;
};
std::vector<RelationVerdict> m2_relation_verdicts(Workspace& ws);
std::vector<Check> m2_triple_numbers(Workspace& ws);

// ---- lambda classes -----------------------------------------------------------------------

struct ChainResult {
  std::string id;
  std::string space;
  std::string lhs;
  std::string rhs;
  std::string replay;       // factor * pushforward of the expanded source
  bool replay_matches = false;
  bool ring_holds = false;  // lhs == rhs in the invariant ring
  bool source_vanishes = false;  // relation chains: the source is zero by the facts
  bool relation_chain = false;
  std::string error;        // untabled class, unknown symbol
  std::string cite;
  std::string note;
};

struct LambdaReport {
  std::vector<ChainResult> chains;
  std::vector<Check> vanishing;
  std::vector<Check> formulas;  // lambda classes in boundary classes
};
// tag empty: all spaces
LambdaReport verify_lambda_identities(Workspace& ws, const std::string& tag = "");

}  // namespace moduli
