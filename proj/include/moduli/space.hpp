#pragma once

#include "moduli/expr.hpp"
#include "moduli/keel.hpp"
#include "moduli/strata.hpp"
#include "moduli/symmetry.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace moduli {

struct BoundaryEntry {
  std::string name;
  std::string alias;
  BoundaryIndex rep;
  int degree = 0;  // mapping degree of the quotient map on the divisor
  int aut = 0;
  std::string cite;
  // computed at load
  std::size_t orbit_size = 0;
  std::size_t inertia = 0;
};

struct StratumEntry {
  std::string name;
  std::string alias;
  std::vector<BoundaryIndex> rep;
  int aut = 0;
  Rational pushforward;   // multiple of the image stratum Q-class on M2
  std::string image;      // M2 stratum alias
  std::string cite;
  std::vector<std::string> ambiguous_with;
  std::size_t orbit_size = 0;
  std::size_t inertia = 0;
  int codim() const { return static_cast<int>(rep.size()); }
};

struct StratumPreset {
  std::string name;  // alias of the matching dictionary entry
  MarkedTree tree;
  std::set<int> blowups;
  int expected_aut = 0;
  Rational expected_pushforward;
  std::string image;
  std::string cite;
  std::string note;
};

struct IntersectionTableSpec {
  std::vector<std::string> columns;  // boundary aliases
  std::vector<std::pair<std::string, QVector>> rows;  // stratum alias, tabled values
  std::size_t rank = 0;
  QVector kernel;  // empty when the kernel is trivial
  std::string cite;
};

struct LinearRelationSpec {
  std::array<int, 4> points{};
  int difference = 1;  // which of the two four-point differences
  std::string expected;  // "0" when no relation
  std::string cite;
};

struct RelationCheckSpec {
  std::string expr;
  std::string cite;
};

struct NumberSpec {
  std::string expr;
  Rational value;
  std::string cite;
};

struct AuditFinding {
  std::string severity;  // error, mismatch, flag, note
  std::string subject;
  std::string message;
};

struct SpaceDescriptor {
  std::string tag;
  std::string title;
  std::string cite;
  std::unique_ptr<PermGroup> group;
  std::uint32_t a_mask = 0;
  StrataSpace strata_space;
  int generic_aut = 2;
  std::vector<BoundaryEntry> boundary;
  std::vector<StratumEntry> strata;
  std::vector<StratumPreset> stratum_presets;
  std::string lambda_alias;
  std::string pullback_delta0;
  std::string pullback_delta1;
  std::string pullback_cite;
  std::optional<IntersectionTableSpec> intersection_table;
  std::optional<LinearRelationSpec> linear_relation;
  std::vector<RelationCheckSpec> relation_checks;
  std::vector<NumberSpec> numbers;
  std::optional<NumberSpec> calibration;
  std::vector<AuditFinding> audit;

  const BoundaryEntry* find_boundary(const std::string& name_or_alias) const;
  const StratumEntry* find_stratum(const std::string& name_or_alias) const;
};

// Owns the Keel ring of M_{0,6}, loaded spaces, and the calibrated pairing.
class Workspace {
 public:
  // Empty dir: MODULI_PRESETS, then the compiled-in default.
  explicit Workspace(std::string presets_dir = "");

  const std::string& presets_dir() const { return presets_dir_; }
  const KeelRing& ring() const { return ring_; }

  // Throws std::invalid_argument for unknown tags, std::runtime_error when the audit fails.
  const SpaceDescriptor& space(const std::string& tag);
  const InvariantBasis& invariants(const std::string& tag);
  std::vector<std::string> tags() const { return {"R2", "S2plus", "S2minus", "M2"}; }

  // Boundary or stratum Q-class, lambda class, "pt", or "1". Throws std::invalid_argument.
  RingElement named_class(const std::string& tag, const std::string& name);
  // Variables resolve through named_class; bracket atoms are Keel divisors of M_{0,6}.
  RingElement evaluate(const std::string& tag, const Polynomial& p);
  RingElement evaluate(const std::string& tag, const std::string& expr);
  // Polynomial in Keel bracket atoms only.
  RingElement evaluate_keel(const Polynomial& p);

  // Intersection number, normalized by kappa, of a top-degree invariant element.
  Rational number(const std::string& tag, const RingElement& top);
  // Frozen constant kappa with number = kappa * integral / |G|.
  Rational kappa();
  std::string calibration_summary();

  // plain class = aut * Q-class
  Rational qclass_factor(const std::string& tag, const std::string& name);
  std::pair<RingElement, RingElement> pullback_delta(const std::string& tag);

  // orbit sum and inertia of a compatible set of divisors
  RingElement orbit_sum(const std::string& tag, const std::vector<BoundaryIndex>& rep, std::size_t* orbit_size = nullptr);
  std::size_t inertia(const std::string& tag, const std::vector<BoundaryIndex>& rep);
  // boundary name whose orbit contains the divisor
  const BoundaryEntry& boundary_owner(const std::string& tag, const BoundaryIndex& b);

  // Express an element as a combination of the given class names (unique when they are independent).
  std::optional<Polynomial> express(const std::string& tag, const RingElement& x, const std::vector<std::string>& names);

 private:
  void load(const std::string& tag);
  void audit(SpaceDescriptor& d);
  RingElement q_class(const SpaceDescriptor& d, const std::vector<BoundaryIndex>& rep, int aut, std::size_t inertia);

  std::string presets_dir_;
  KeelRing ring_;
  std::map<std::string, std::unique_ptr<SpaceDescriptor>> spaces_;
  std::map<std::string, InvariantBasis> invariants_;
  std::map<std::string, RingElement> class_cache_;
  std::optional<Rational> kappa_;
};

std::string resolve_presets_dir(const std::string& requested);
// Accepts a path, a path without .json, or a name relative to the presets dir.
std::string resolve_preset_file(const std::string& presets_dir, const std::string& name);

}  // namespace moduli
