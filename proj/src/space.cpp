#include "moduli/space.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#ifndef MODULI_DEFAULT_PRESETS
#define MODULI_DEFAULT_PRESETS "presets"
#endif

namespace moduli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string resolve_presets_dir(const std::string& requested) {
  if (!requested.empty()) return requested;
  if (const char* env = std::getenv("MODULI_PRESETS"); env && *env) return env;
  return MODULI_DEFAULT_PRESETS;
}

std::string resolve_preset_file(const std::string& presets_dir, const std::string& name) {
  std::vector<fs::path> candidates = {name, name + ".json"};
  fs::path rel(name);
  candidates.push_back(fs::path(presets_dir) / rel);
  candidates.push_back(fs::path(presets_dir) / (name + ".json"));
  // "presets/K" relative to some other working directory
  if (auto it = rel.begin(); it != rel.end() && *it == "presets") {
    fs::path rest;
    for (++it; it != rel.end(); ++it) rest /= *it;
    candidates.push_back(fs::path(presets_dir) / rest);
    candidates.push_back(fs::path(presets_dir) / (rest.string() + ".json"));
  }
  for (const auto& c : candidates) {
    std::error_code ec;
    if (fs::is_regular_file(c, ec)) return c.string();
  }
  throw std::invalid_argument("preset not found: " + name);
}

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

Rational rat(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

std::string str_or(const json& j, const char* key, const std::string& dflt = "") {
  auto it = j.find(key);
  return it == j.end() ? dflt : it->get<std::string>();
}

BoundaryIndex boundary_from(const json& j) { return canonicalize(j.get<std::vector<int>>(), 6); }

StructureKind kind_from(const std::string& s) {
  if (s == "prym") return StructureKind::Prym;
  if (s == "spin") return StructureKind::Spin;
  if (s == "plain") return StructureKind::Plain;
  throw std::invalid_argument("unknown structure '" + s + "'");
}

std::string rep_str(const std::vector<BoundaryIndex>& rep) {
  if (rep.empty()) return "1";
  std::string s;
  for (const auto& b : rep) s += b.str();
  return s;
}

// sorted divisor indices of a monomial
std::vector<int> index_key(const KeelRing& ring, const std::vector<BoundaryIndex>& rep) {
  std::vector<int> k;
  for (const auto& b : rep) k.push_back(ring.divisor_index(b));
  std::sort(k.begin(), k.end());
  return k;
}

std::set<std::vector<int>> monomial_orbit(const KeelRing& ring, const PermGroup& g, const std::vector<BoundaryIndex>& rep) {
  std::set<std::vector<int>> out;
  auto base = index_key(ring, rep);
  for (const auto& p : g.elements()) {
    auto img = ring.permute_divisors(p.img);
    std::vector<int> k;
    for (int i : base) k.push_back(img[static_cast<std::size_t>(i)]);
    std::sort(k.begin(), k.end());
    out.insert(k);
  }
  return out;
}

}  // namespace

const BoundaryEntry* SpaceDescriptor::find_boundary(const std::string& key) const {
  for (const auto& b : boundary)
    if (b.name == key || b.alias == key) return &b;
  return nullptr;
}

const StratumEntry* SpaceDescriptor::find_stratum(const std::string& key) const {
  for (const auto& s : strata)
    if (s.name == key || s.alias == key) return &s;
  return nullptr;
}

Workspace::Workspace(std::string presets_dir) : presets_dir_(resolve_presets_dir(presets_dir)), ring_(6) {}

const SpaceDescriptor& Workspace::space(const std::string& tag) {
  auto it = spaces_.find(tag);
  if (it == spaces_.end()) {
    load(tag);
    it = spaces_.find(tag);
  }
  return *it->second;
}

const InvariantBasis& Workspace::invariants(const std::string& tag) {
  auto it = invariants_.find(tag);
  if (it != invariants_.end()) return it->second;
  return invariants_.emplace(tag, invariant_basis(ring_, *space(tag).group)).first->second;
}

void Workspace::load(const std::string& tag) {
  auto known = tags();
  if (std::find(known.begin(), known.end(), tag) == known.end())
    throw std::invalid_argument("unknown space tag '" + tag + "'");
  const json j = read_json((fs::path(presets_dir_) / "spaces" / (tag + ".json")).string());
  auto d = std::make_unique<SpaceDescriptor>();
  try {
    d->tag = j.at("space").get<std::string>();
    if (d->tag != tag) throw std::invalid_argument("preset declares space " + d->tag);
    d->title = str_or(j, "title");
    d->cite = str_or(j, "cite");

    const auto& g = j.at("group");
    std::vector<Perm> gens;
    for (const auto& s : g.at("generators")) gens.push_back(parse_cycles(s.get<std::string>(), 6));
    d->group = std::make_unique<PermGroup>(6, std::move(gens));
    if (g.contains("order") && d->group->order() != g.at("order").get<std::size_t>())
      throw std::runtime_error(tag + ": group order " + std::to_string(d->group->order()) + " differs from preset " +
                               g.at("order").dump());

    d->strata_space.tag = tag;
    d->strata_space.kind = kind_from(j.at("structure").get<std::string>());
    for (int a : j.at("a_marks").get<std::vector<int>>()) d->a_mask |= 1u << (a - 1);
    d->strata_space.a_marks = std::popcount(d->a_mask);
    d->strata_space.b_marks = 6 - d->strata_space.a_marks;
    d->strata_space.allow_swap = j.value("allow_swap", false);
    d->generic_aut = j.value("generic_aut", 2);

    for (const auto& b : j.at("boundary")) {
      BoundaryEntry e;
      e.name = b.at("name").get<std::string>();
      e.alias = b.at("alias").get<std::string>();
      e.rep = boundary_from(b.at("rep"));
      e.degree = b.at("degree").get<int>();
      e.aut = b.at("aut").get<int>();
      e.cite = str_or(b, "cite");
      d->boundary.push_back(e);
      StratumEntry s;
      s.name = e.name;
      s.alias = e.alias;
      s.rep = {e.rep};
      s.aut = e.aut;
      s.pushforward = rat(b.at("pushforward_coeff"));
      s.image = b.at("image").get<std::string>();
      s.cite = e.cite;
      d->strata.push_back(s);
    }
    for (const auto& s : j.value("strata", json::array())) {
      StratumEntry e;
      e.name = s.at("name").get<std::string>();
      e.alias = s.at("alias").get<std::string>();
      for (const auto& b : s.at("rep_monomial")) e.rep.push_back(boundary_from(b));
      e.aut = s.at("aut").get<int>();
      e.pushforward = rat(s.at("pushforward_coeff"));
      e.image = s.at("image").get<std::string>();
      e.cite = str_or(s, "cite");
      e.ambiguous_with = s.value("ambiguous_with", std::vector<std::string>{});
      d->strata.push_back(e);
    }
    std::stable_sort(d->strata.begin(), d->strata.end(),
                     [](const StratumEntry& a, const StratumEntry& b) { return a.codim() < b.codim(); });

    const auto& lam = j.at("lambda");
    d->lambda_alias = lam.at("alias").get<std::string>();
    const auto& pb = j.at("pullback");
    d->pullback_delta0 = pb.at("delta0").get<std::string>();
    d->pullback_delta1 = pb.at("delta1").get<std::string>();
    d->pullback_cite = str_or(pb, "cite");

    if (j.contains("calibration")) {
      const auto& c = j.at("calibration");
      d->calibration = NumberSpec{c.at("expr").get<std::string>(), rat(c.at("value")), str_or(c, "cite")};
    }
    if (j.contains("intersection_table")) {
      const auto& t = j.at("intersection_table");
      IntersectionTableSpec spec;
      spec.columns = t.at("columns").get<std::vector<std::string>>();
      for (const auto& r : t.at("rows")) {
        QVector v;
        for (const auto& x : r.at("values")) v.push_back(rat(x));
        if (v.size() != spec.columns.size()) throw std::invalid_argument("intersection row width mismatch");
        spec.rows.emplace_back(r.at("stratum").get<std::string>(), v);
      }
      spec.rank = t.at("rank").get<std::size_t>();
      for (const auto& x : t.value("kernel", json::array())) spec.kernel.push_back(rat(x));
      spec.cite = str_or(t, "cite");
      d->intersection_table = spec;
    }
    if (j.contains("linear_relation")) {
      const auto& r = j.at("linear_relation");
      LinearRelationSpec spec;
      auto pts = r.at("points").get<std::vector<int>>();
      if (pts.size() != 4) throw std::invalid_argument("linear_relation needs four points");
      std::copy(pts.begin(), pts.end(), spec.points.begin());
      spec.difference = r.value("difference", 1);
      spec.expected = r.at("expected").get<std::string>();
      spec.cite = str_or(r, "cite");
      d->linear_relation = spec;
    }
    for (const auto& r : j.value("relation_checks", json::array()))
      d->relation_checks.push_back({r.at("expr").get<std::string>(), str_or(r, "cite")});
    for (const auto& r : j.value("numbers", json::array()))
      d->numbers.push_back({r.at("expr").get<std::string>(), rat(r.at("value")), str_or(r, "cite")});

    const fs::path strata_file = fs::path(presets_dir_) / "strata" / (tag + ".json");
    if (fs::exists(strata_file)) {
      const json sj = read_json(strata_file.string());
      for (const auto& s : sj.at("strata")) {
        StratumPreset p;
        p.name = s.at("name").get<std::string>();
        p.tree = parse_tree(s.at("tree").get<std::string>());
        for (int b : s.value("blowups", std::vector<int>{})) p.blowups.insert(b);
        p.expected_aut = s.at("expected_aut").get<int>();
        p.expected_pushforward = rat(s.at("expected_pushforward"));
        p.image = s.at("image").get<std::string>();
        p.cite = str_or(s, "cite");
        p.note = str_or(s, "note");
        d->stratum_presets.push_back(p);
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(tag + " preset: " + e.what());
  }
  audit(*d);
  spaces_[tag] = std::move(d);
}

std::size_t Workspace::inertia(const std::string& tag, const std::vector<BoundaryIndex>& rep) {
  const auto& d = space(tag);
  return count_marked_automorphisms(tree_from_divisors(6, rep, d.a_mask), d.strata_space.allow_swap);
}

void Workspace::audit(SpaceDescriptor& d) {
  const auto& G = *d.group;
  auto fail = [&](const std::string& msg) { throw std::runtime_error(d.tag + " audit: " + msg); };

  // boundary orbits partition the 25 divisors
  std::vector<int> owner(ring_.divisors().size(), -1);
  for (std::size_t k = 0; k < d.boundary.size(); ++k) {
    auto& e = d.boundary[k];
    auto orbit = monomial_orbit(ring_, G, {e.rep});
    for (const auto& m : orbit) {
      int& o = owner[static_cast<std::size_t>(m[0])];
      if (o != -1) fail(e.name + " shares its orbit with " + d.boundary[static_cast<std::size_t>(o)].name);
      o = static_cast<int>(k);
    }
    e.orbit_size = orbit.size();
    e.inertia = count_marked_automorphisms(tree_from_divisors(6, {e.rep}, d.a_mask), d.strata_space.allow_swap);
    if (e.orbit_size * static_cast<std::size_t>(e.degree) * e.inertia != G.order())
      fail(e.name + ": orbit " + std::to_string(e.orbit_size) + " x degree " + std::to_string(e.degree) + " x inertia " +
           std::to_string(e.inertia) + " != |G| " + std::to_string(G.order()));
    if (e.aut <= 0) fail(e.name + ": automorphism number must be positive");
  }
  for (std::size_t i = 0; i < owner.size(); ++i)
    if (owner[i] == -1) fail("divisor " + ring_.divisors()[i].str() + " is not covered by any boundary name");

  // strata: compatible, pairwise inequivalent within a codimension
  std::map<std::vector<int>, std::string> seen;
  for (auto& s : d.strata) {
    auto key = index_key(ring_, s.rep);
    if (!ring_.compatible(key)) fail(s.name + ": representative " + rep_str(s.rep) + " is not a stratum");
    auto orbit = monomial_orbit(ring_, G, s.rep);
    for (const auto& m : orbit) {
      auto [it, fresh] = seen.emplace(m, s.name);
      if (!fresh && it->second != s.name) fail(s.name + " and " + it->second + " share a representative orbit");
    }
    s.orbit_size = orbit.size();
    s.inertia = count_marked_automorphisms(tree_from_divisors(6, s.rep, d.a_mask), d.strata_space.allow_swap);
    if (s.aut <= 0) fail(s.name + ": automorphism number must be positive");
    if (!s.ambiguous_with.empty()) {
      std::string others;
      for (const auto& o : s.ambiguous_with) others += (others.empty() ? "" : ", ") + o;
      d.audit.push_back({"flag", s.alias,
                         "representative not pinned by the tree alone; indistinguishable from " + others +
                             " at the level of marked trees"});
    }
  }

  // stratum presets against the dictionary and the automorphism formulas
  for (const auto& p : d.stratum_presets) {
    const StratumEntry* s = d.find_stratum(p.name);
    if (!s) fail("stratum preset " + p.name + " has no dictionary entry");
    const MarkedTree from_rep = tree_from_divisors(6, s->rep, d.a_mask);
    if (canonical_tree(from_rep) != canonical_tree(p.tree))
      fail(p.name + ": preset tree " + tree_str(p.tree) + " does not match representative " + rep_str(s->rep) + " (" +
           tree_str(from_rep) + ")");
    StratumDescriptor desc{p.name, p.tree, p.blowups};
    AutBreakdown a;
    try {
      a = prym_aut_number(desc, d.strata_space);
    } catch (const std::invalid_argument& e) {
      fail(p.name + ": " + e.what());
    }
    if (p.expected_aut != s->aut)
      fail(p.name + ": stratum preset aut " + std::to_string(p.expected_aut) + " differs from dictionary " +
           std::to_string(s->aut));
    if (p.expected_pushforward != s->pushforward || p.image != s->image)
      fail(p.name + ": stratum preset pushforward differs from dictionary");
    if (a.n != static_cast<std::size_t>(p.expected_aut))
      d.audit.push_back({"mismatch", p.name,
                         "automorphism number computed " + std::to_string(a.n) + ", tabled " +
                             std::to_string(p.expected_aut)});
    if (!a.m_consistent)
      d.audit.push_back({"note", p.name,
                         "m = " + std::to_string(a.m) + " differs from 2^r' h = " +
                             std::to_string((std::size_t{1} << a.r_prime) * a.h) +
                             " (h counted on the contracted tree)"});
    if (d.tag != "M2") {
      PushforwardCoeff c = stratum_pushforward_coeff(desc, d.strata_space);
      if (c.coeff != p.expected_pushforward)
        d.audit.push_back({"mismatch", p.name,
                           "pushforward coefficient computed " + to_string(c.coeff) + ", tabled " +
                               to_string(p.expected_pushforward)});
    }
  }
}

RingElement Workspace::orbit_sum(const std::string& tag, const std::vector<BoundaryIndex>& rep, std::size_t* orbit_size) {
  const auto& d = space(tag);
  auto orbit = monomial_orbit(ring_, *d.group, rep);
  if (orbit_size) *orbit_size = orbit.size();
  RingElement sum = ring_.zero(static_cast<int>(rep.size()));
  for (const auto& m : orbit) sum += ring_.reduce(m);
  return sum;
}

const BoundaryEntry& Workspace::boundary_owner(const std::string& tag, const BoundaryIndex& b) {
  const auto& d = space(tag);
  for (const auto& e : d.boundary)
    for (const auto& g : d.group->elements())
      if (canonicalize_mask(g.apply_mask(e.rep.mask), 6) == b) return e;
  throw std::invalid_argument("divisor " + b.str() + " has no boundary name on " + tag);
}

RingElement Workspace::q_class(const SpaceDescriptor& d, const std::vector<BoundaryIndex>& rep, int aut,
                               std::size_t inert) {
  RingElement s = orbit_sum(d.tag, rep);
  return make_rational(static_cast<long>(d.generic_aut) * static_cast<long>(inert), aut) * s;
}

RingElement Workspace::named_class(const std::string& tag, const std::string& name) {
  const std::string key = tag + "\n" + name;
  if (auto it = class_cache_.find(key); it != class_cache_.end()) return it->second;
  const auto& d = space(tag);
  RingElement v;
  if (name == "1") {
    v = ring_.unit();
  } else if (const StratumEntry* s = d.find_stratum(name)) {
    v = q_class(d, s->rep, s->aut, s->inertia);
  } else if (name == d.lambda_alias) {
    v = Rational(1, 10) * evaluate(tag, "(" + d.pullback_delta0 + ") + 2*(" + d.pullback_delta1 + ")");
  } else if (name == "pt") {
    const RingElement& top = invariants(tag).degrees.back().front();
    v = (1 / number(tag, top)) * top;
  } else {
    throw std::invalid_argument("unknown class '" + name + "' on " + tag);
  }
  class_cache_[key] = v;
  return v;
}

RingElement Workspace::evaluate_keel(const Polynomial& p) {
  if (p.is_zero()) return ring_.zero(0);
  RingElement out;
  bool first = true;
  for (const auto& [mono, c] : p.terms()) {
    std::vector<BoundaryIndex> factors;
    for (const auto& [var, e] : mono) {
      if (var.empty() || var.front() != '[') throw std::invalid_argument("not a Keel divisor: " + var);
      BoundaryIndex b = parse_boundary(var, 6);
      for (int k = 0; k < e; ++k) factors.push_back(b);
    }
    RingElement t = c * ring_.product(factors);
    if (first) {
      out = t;
      first = false;
    } else {
      if (t.degree != out.degree) throw std::invalid_argument("inhomogeneous expression");
      out += t;
    }
  }
  return out;
}

RingElement Workspace::evaluate(const std::string& tag, const Polynomial& p) {
  // class degrees come from the ring, not from the variable count
  std::optional<RingElement> out;
  for (const auto& [mono, c] : p.terms()) {
    std::vector<RingElement> factors;
    int deg = 0;
    for (const auto& [var, e] : mono) {
      RingElement f = (!var.empty() && var.front() == '[') ? ring_.divisor(parse_boundary(var, 6)) : named_class(tag, var);
      for (int k = 0; k < e; ++k) factors.push_back(f), deg += f.degree;
    }
    if (out && out->degree != deg) throw std::invalid_argument("inhomogeneous expression: " + p.str());
    if (deg > ring_.top_degree()) {
      out = RingElement{ring_.n(), deg, {}};  // beyond the top degree everything vanishes
      continue;
    }
    if (!out) out = ring_.zero(deg);
    RingElement t = ring_.unit();
    for (const auto& f : factors) t = ring_.multiply(t, f);
    *out += c * t;
  }
  return out ? *out : ring_.zero(0);
}

RingElement Workspace::evaluate(const std::string& tag, const std::string& expr) {
  return evaluate(tag, parse_polynomial(expr));
}

Rational Workspace::kappa() {
  if (kappa_) return *kappa_;
  const auto& d = space("R2");
  if (!d.calibration) throw std::runtime_error("R2 preset lacks the calibration anchor");
  const RingElement x = evaluate("R2", d.calibration->expr);
  const Rational raw = ring_.integrate(x) / Rational(static_cast<long>(d.group->order()));
  if (raw == 0) throw std::runtime_error("calibration anchor integrates to zero");
  kappa_ = d.calibration->value / raw;
  return *kappa_;
}

std::string Workspace::calibration_summary() {
  const auto& d = space("R2");
  std::ostringstream os;
  os << d.calibration->expr << " = " << to_string(d.calibration->value) << " fixes kappa = " << to_string(kappa());
  return os.str();
}

Rational Workspace::number(const std::string& tag, const RingElement& top) {
  if (top.degree != ring_.top_degree()) throw std::invalid_argument("intersection number needs a top-degree class");
  return kappa() * ring_.integrate(top) / Rational(static_cast<long>(space(tag).group->order()));
}

Rational Workspace::qclass_factor(const std::string& tag, const std::string& name) {
  const auto& d = space(tag);
  if (name == "1" || name == "top") return d.generic_aut;
  if (const StratumEntry* s = d.find_stratum(name)) return s->aut;
  throw std::invalid_argument("no automorphism number for '" + name + "' on " + tag);
}

std::pair<RingElement, RingElement> Workspace::pullback_delta(const std::string& tag) {
  if (tag == "M2") throw std::invalid_argument("pullback_delta is defined for the covers of M2 only");
  const auto& d = space(tag);
  return {evaluate(tag, d.pullback_delta0), evaluate(tag, d.pullback_delta1)};
}

std::optional<Polynomial> Workspace::express(const std::string& tag, const RingElement& x,
                                             const std::vector<std::string>& names) {
  if (x.is_zero()) return Polynomial();
  std::vector<RingElement> cols;
  std::vector<std::string> used;
  for (const auto& n : names) {
    RingElement v = evaluate(tag, n);
    if (v.degree != x.degree) continue;
    // single multiple first, so the common case reads naturally
    cols.push_back(v);
    used.push_back(n);
  }
  for (std::size_t k = 0; k < cols.size(); ++k) {
    QMatrix a(x.coeffs.size(), 1);
    for (std::size_t r = 0; r < x.coeffs.size(); ++r) a.at(r, 0) = cols[k].coeffs[r];
    if (auto s = solve(a, x.coeffs)) return Polynomial::constant((*s)[0]) * parse_polynomial(used[k]);
  }
  if (cols.empty()) return std::nullopt;
  QMatrix a(x.coeffs.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < x.coeffs.size(); ++r) a.at(r, c) = cols[c].coeffs[r];
  auto s = solve(a, x.coeffs);
  if (!s) return std::nullopt;
  Polynomial out;
  for (std::size_t c = 0; c < cols.size(); ++c)
    if ((*s)[c] != 0) out += Polynomial::constant((*s)[c]) * parse_polynomial(used[c]);
  return out;
}

}  // namespace moduli
