#include "moduli/presentations.hpp"

#include "moduli/pushpull.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

namespace moduli {

using nlohmann::json;

Presentation make_presentation(const std::string& name, const std::vector<std::string>& variables,
                               const std::vector<std::string>& generators, int max_degree) {
  if (variables.empty()) throw std::invalid_argument(name + ": no variables");
  if (max_degree < 1) throw std::invalid_argument(name + ": max_degree must be positive");
  std::set<std::string> vars(variables.begin(), variables.end());
  if (vars.size() != variables.size()) throw std::invalid_argument(name + ": repeated variable");
  Presentation p;
  p.name = name;
  p.variables = variables;
  p.max_degree = max_degree;
  for (const auto& g : generators) {
    Polynomial f = parse_polynomial(g);
    if (f.is_zero() || !f.homogeneous() || f.degree() < 1)
      throw std::invalid_argument(name + ": generator is not a nonzero homogeneous form: " + g);
    for (const auto& v : f.variables())
      if (!vars.count(v)) throw std::invalid_argument(name + ": unknown variable " + v + " in " + g);
    p.generators.push_back(f);
  }
  return p;
}

Presentation load_presentation(const std::string& presets_dir, const std::string& file) {
  const std::string path = resolve_preset_file(presets_dir, file);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open presentation " + file);
  try {
    json j = json::parse(in);
    Presentation p = make_presentation(j.value("name", file), j.at("variables").get<std::vector<std::string>>(),
                                       j.at("generators").get<std::vector<std::string>>(), j.value("max_degree", 6));
    p.cite = j.value("cite", "");
    return p;
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::vector<Polynomial::Monomial> monomials(const std::vector<std::string>& variables, int degree) {
  std::vector<Polynomial::Monomial> out;
  std::vector<int> exps(variables.size(), 0);
  // exponent vectors in lex order (first variable highest)
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == variables.size()) {
      exps[i] = left;
      Polynomial::Monomial m;
      for (std::size_t k = 0; k < variables.size(); ++k)
        if (exps[k]) m.emplace_back(variables[k], exps[k]);
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      exps[i] = e;
      self(self, i + 1, left - e);
    }
  };
  if (degree >= 0 && !variables.empty()) rec(rec, 0, degree);
  return out;
}

namespace {

Polynomial::Monomial mono_key(Polynomial::Monomial m) {
  std::sort(m.begin(), m.end());
  return m;
}

class DegreePiece {
 public:
  DegreePiece(const Presentation& p, int degree) {
    for (const auto& m : monomials(p.variables, degree)) index_[mono_key(m)] = static_cast<int>(index_.size());
  }
  std::size_t size() const { return index_.size(); }

  SparseRow row(const Polynomial& f) const {
    std::map<int, Rational> acc;
    for (const auto& [m, c] : f.terms()) {
      auto it = index_.find(mono_key(m));
      if (it == index_.end()) throw std::invalid_argument("monomial outside the presentation: " + f.str());
      acc[it->second] += c;
    }
    SparseRow r;
    for (const auto& [k, c] : acc)
      if (c != 0) r.emplace_back(k, c);
    return r;
  }

 private:
  std::map<Polynomial::Monomial, int> index_;
};

// ideal generated by gens (skipping `skip`) in degree d
SparseEchelon ideal_piece(const Presentation& p, int degree, std::optional<std::size_t> skip = std::nullopt) {
  DegreePiece piece(p, degree);
  SparseEchelon e(static_cast<int>(piece.size()));
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    if (skip && *skip == g) continue;
    const Polynomial& f = p.generators[g];
    const int rest = degree - f.degree();
    if (rest < 0) continue;
    for (const auto& m : monomials(p.variables, rest)) {
      Polynomial mm = Polynomial::constant(1);
      for (const auto& [v, k] : m) mm = mm * Polynomial::variable(v).pow(k);
      e.add_row(piece.row(f * mm));
    }
  }
  return e;
}

bool in_piece(const Presentation& p, const Polynomial& f, std::optional<std::size_t> skip) {
  if (f.is_zero()) return true;
  if (!f.homogeneous()) throw std::invalid_argument("not homogeneous: " + f.str());
  const int d = f.degree();
  if (d > p.max_degree) throw std::invalid_argument("degree above the truncation of " + p.name);
  SparseEchelon e = ideal_piece(p, d, skip);
  return e.reduce(DegreePiece(p, d).row(f)).empty();
}

}  // namespace

std::vector<std::size_t> hilbert_function(const Presentation& p) {
  std::vector<std::size_t> h;
  for (int d = 0; d <= p.max_degree; ++d) {
    SparseEchelon e = ideal_piece(p, d);
    h.push_back(DegreePiece(p, d).size() - e.rank());
  }
  return h;
}

bool ideal_contains(const Presentation& p, const Polynomial& f) { return in_piece(p, f, std::nullopt); }

std::vector<std::size_t> redundant_generators(const Presentation& p) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < p.generators.size(); ++g)
    if (in_piece(p, p.generators[g], g)) out.push_back(g);
  return out;
}

bool independence_check(const Presentation& p) { return redundant_generators(p).empty(); }

RelationCheck check_relation(Workspace& ws, const std::string& tag, const Polynomial& f) {
  RingElement x = ws.evaluate(tag, f);
  RelationCheck r;
  r.holds = x.is_zero();
  if (!r.holds) {
    const auto& basis = ws.invariants(tag);
    std::string s;
    if (static_cast<std::size_t>(x.degree) < basis.degrees.size()) {
      QVector c = invariant_coordinates(basis, x);
      s = "(";
      for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + to_string(c[i]);
      s += ") in the degree-" + std::to_string(x.degree) + " invariant basis";
    }
    if (x.degree == ws.ring().top_degree()) s = to_string(ws.number(tag, x)) + " pt";
    r.residue = s;
  }
  return r;
}

RelationCheck check_relation(Workspace& ws, const std::string& tag, const std::string& expr) {
  return check_relation(ws, tag, parse_polynomial(expr));
}

std::string default_presentation(const std::string& tag) {
  if (tag == "R2") return "I";
  if (tag == "S2plus") return "J";
  if (tag == "S2minus") return "K";
  throw std::invalid_argument("no presentation for " + tag);
}

PresentationReport verify_presentation(Workspace& ws, const std::string& tag, const Presentation& p) {
  const auto& d = ws.space(tag);
  std::set<std::string> aliases;
  for (const auto& b : d.boundary) aliases.insert(b.alias);
  if (std::set<std::string>(p.variables.begin(), p.variables.end()) != aliases) {
    std::string want;
    for (const auto& a : aliases) want += (want.empty() ? "" : ", ") + a;
    throw std::invalid_argument("variables of " + p.name + " do not match the boundary classes of " + tag + " (" + want + ")");
  }

  PresentationReport r;
  r.space = tag;
  r.presentation = p.name;
  r.generators_vanish = true;
  for (const auto& g : p.generators) {
    const bool z = ws.evaluate(tag, g).is_zero();
    r.generators.emplace_back(g.str(), z);
    r.generators_vanish = r.generators_vanish && z;
  }

  const auto dims = ws.invariants(tag).dims();
  r.invariant_dims.assign(static_cast<std::size_t>(p.max_degree) + 1, 0);
  for (std::size_t i = 0; i < dims.size() && i < r.invariant_dims.size(); ++i) r.invariant_dims[i] = dims[i];

  const auto& ring = ws.ring();
  r.surjective = true;
  for (int deg = 0; deg <= p.max_degree; ++deg) {
    std::size_t rk = 0;
    if (deg <= ring.top_degree()) {
      QMatrix m(0, ring.dims()[static_cast<std::size_t>(deg)]);
      for (const auto& mono : monomials(p.variables, deg)) {
        Polynomial x = Polynomial::constant(1);
        for (const auto& [v, k] : mono) x = x * Polynomial::variable(v).pow(k);
        m.append_row(ws.evaluate(tag, x).coeffs);
      }
      rk = rank(m);
    }
    r.surjective_rank.push_back(rk);
    if (rk != r.invariant_dims[static_cast<std::size_t>(deg)]) r.surjective = false;
  }

  r.hilbert = hilbert_function(p);
  r.dims_match = r.hilbert == r.invariant_dims;
  for (std::size_t i = 0; i < r.hilbert.size() && !r.mismatch_degree; ++i)
    if (r.hilbert[i] != r.invariant_dims[i]) r.mismatch_degree = static_cast<int>(i);
  r.redundant = redundant_generators(p);
  r.independent = r.redundant.empty();

  // degree-1 kernel of the substitution map
  QMatrix lin(0, ring.dims()[1]);
  for (const auto& v : p.variables) lin.append_row(ws.named_class(tag, v).coeffs);
  for (const auto& k : kernel_basis(lin.transpose())) {
    Polynomial rel;
    for (std::size_t i = 0; i < k.size(); ++i) rel += Polynomial::variable(p.variables[i]) * k[i];
    r.degree1_kernel.push_back(normalize_relation(rel, p.variables));
  }
  LinearRelation lr = derive_linear_relation(ws, tag);
  if (lr.span.is_zero())
    r.kernel_matches_linear_relation = r.degree1_kernel.empty();
  else
    r.kernel_matches_linear_relation =
        r.degree1_kernel.size() == 1 && r.degree1_kernel[0] == normalize_relation(lr.span, p.variables);

  r.isomorphic = r.generators_vanish && r.surjective && r.dims_match;
  if (r.isomorphic) {
    r.verdict = "isomorphic";
  } else if (!r.generators_vanish) {
    r.verdict = "not isomorphic: a generator does not vanish";
  } else if (!r.surjective) {
    r.verdict = "not isomorphic: boundary classes do not span";
  } else {
    r.verdict = "not isomorphic: dimension mismatch in degree " + std::to_string(*r.mismatch_degree);
  }
  return r;
}

std::vector<PulledRelation> pulled_m2_relations(Workspace& ws, const std::string& tag, const Presentation& p) {
  const auto& d = ws.space(tag);
  const auto& m2 = ws.space("M2");
  std::map<std::string, Polynomial> rules{{"delta0", parse_polynomial(d.pullback_delta0)},
                                         {"delta1", parse_polynomial(d.pullback_delta1)}};
  std::vector<PulledRelation> out;
  for (const auto& rc : m2.relation_checks) {
    PulledRelation r;
    r.relation = rc.expr;
    r.pulled = substitute(parse_polynomial(rc.expr), rules);
    r.in_ideal = ideal_contains(p, r.pulled);
    r.vanishes = ws.evaluate(tag, r.pulled).is_zero();
    out.push_back(r);
  }
  return out;
}

}  // namespace moduli
