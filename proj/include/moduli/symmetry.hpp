#pragma once

#include "moduli/keel.hpp"

#include <string>
#include <vector>

namespace moduli {

// img[i-1] = image of i.
struct Perm {
  std::vector<int> img;

  int n() const { return static_cast<int>(img.size()); }
  int operator()(int i) const { return img[static_cast<std::size_t>(i - 1)]; }
  bool is_identity() const;
  Perm inverse() const;
  std::uint32_t apply_mask(std::uint32_t mask) const;
  std::string cycles() const;  // "(1 2)(3 4)", "()" for identity
  bool operator==(const Perm& o) const { return img == o.img; }
  bool operator<(const Perm& o) const { return img < o.img; }
};

Perm identity_perm(int n);
Perm compose(const Perm& f, const Perm& g);  // f after g
// Cycle notation, e.g. "(1 2)(3 4)"; throws std::invalid_argument when malformed.
Perm parse_cycles(const std::string& text, int n);

class PermGroup {
 public:
  PermGroup(int n, std::vector<Perm> generators);

  int n() const { return n_; }
  const std::vector<Perm>& generators() const { return generators_; }
  // sorted, identity first
  const std::vector<Perm>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }

 private:
  int n_;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;
};

// R2, S2plus, S2minus, M2; throws std::invalid_argument otherwise.
PermGroup standard_group(const std::string& tag);
// Comma or semicolon separated generator list in cycle notation.
PermGroup custom_group(const std::string& generators, int n);

RingElement act(const KeelRing& ring, const Perm& g, const RingElement& x);
RingElement reynolds(const KeelRing& ring, const PermGroup& group, const RingElement& x);
// Sum of g.x over all group elements (no averaging).
RingElement group_sum(const KeelRing& ring, const PermGroup& group, const RingElement& x);

struct InvariantBasis {
  // per degree: echelonized invariant vectors in Keel basis coordinates
  std::vector<std::vector<RingElement>> degrees;
  std::vector<std::size_t> dims() const;
};

std::vector<std::size_t> invariant_dims(const KeelRing& ring, const PermGroup& group);
InvariantBasis invariant_basis(const KeelRing& ring, const PermGroup& group);
// Coordinates of an invariant element in the invariant basis; throws std::invalid_argument
// when the element is not in the span.
QVector invariant_coordinates(const InvariantBasis& basis, const RingElement& x);
bool is_invariant(const KeelRing& ring, const PermGroup& group, const RingElement& x);

}  // namespace moduli
