#pragma once

#include "moduli/space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace moduli {

// Graded quotient Q[variables]/(generators), every variable of degree 1.
struct Presentation {
  std::string name;
  std::vector<std::string> variables;
  std::vector<Polynomial> generators;
  int max_degree = 6;
  std::string cite;
};

// Throws std::invalid_argument on non-homogeneous generators or unknown variables.
Presentation make_presentation(const std::string& name, const std::vector<std::string>& variables,
                               const std::vector<std::string>& generators, int max_degree = 6);
// {"name", "variables", "generators", "max_degree", "cite"}; name may be I, K.json, presets/J ...
Presentation load_presentation(const std::string& presets_dir, const std::string& file);

// Graded lex in the listed variable order.
std::vector<Polynomial::Monomial> monomials(const std::vector<std::string>& variables, int degree);

std::vector<std::size_t> hilbert_function(const Presentation& p);
// Membership of a homogeneous polynomial in the degree-truncated ideal.
bool ideal_contains(const Presentation& p, const Polynomial& f);
bool independence_check(const Presentation& p);
// generators lying in the ideal of the others
std::vector<std::size_t> redundant_generators(const Presentation& p);

struct RelationCheck {
  bool holds = false;
  std::string residue;  // coordinates in the invariant basis, or a class combination
};
RelationCheck check_relation(Workspace& ws, const std::string& tag, const Polynomial& f);
RelationCheck check_relation(Workspace& ws, const std::string& tag, const std::string& expr);

struct PresentationReport {
  std::string space;
  std::string presentation;
  std::vector<std::pair<std::string, bool>> generators;  // generator vanishes in the ring
  std::vector<std::size_t> surjective_rank;              // rank of the substitution map per degree
  std::vector<std::size_t> hilbert;
  std::vector<std::size_t> invariant_dims;                // padded with zeros to max_degree
  std::optional<int> mismatch_degree;
  bool generators_vanish = false;
  bool surjective = false;
  bool dims_match = false;
  bool independent = false;
  std::vector<std::size_t> redundant;
  std::vector<Polynomial> degree1_kernel;  // primitive integer relations among the variables
  bool kernel_matches_linear_relation = false;
  bool isomorphic = false;
  std::string verdict;  // "isomorphic" or the first failure
};

// Throws std::invalid_argument when the variables are not the space's boundary aliases.
PresentationReport verify_presentation(Workspace& ws, const std::string& tag, const Presentation& p);

// Pullbacks of the M2 relations under delta0, delta1 -> pulled-back boundary combinations.
struct PulledRelation {
  std::string relation;
  Polynomial pulled;
  bool in_ideal = false;
  bool vanishes = false;
};
std::vector<PulledRelation> pulled_m2_relations(Workspace& ws, const std::string& tag, const Presentation& p);

// R2 -> I, S2plus -> J, S2minus -> K
std::string default_presentation(const std::string& tag);

}  // namespace moduli
