#include "moduli/pushpull.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <regex>
#include <set>
#include <stdexcept>

namespace moduli {

using nlohmann::json;

const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Erratum: return "ERRATUM";
    case Verdict::Info: return "INFO";
  }
  return "?";
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

Rational rat(const std::string& s) { return parse_rational(s); }

Polynomial::Monomial single_monomial(const std::string& text) {
  Polynomial p = parse_polynomial(text);
  if (p.terms().size() != 1) throw std::invalid_argument("expected a single monomial: " + text);
  return p.terms().begin()->first;
}

// coefficient c with x = c * y, if any
std::optional<Rational> ratio(const RingElement& x, const RingElement& y) {
  if (x.degree != y.degree) return std::nullopt;
  std::optional<Rational> c;
  for (std::size_t i = 0; i < y.coeffs.size(); ++i) {
    if (y.coeffs[i] == 0) {
      if (x.coeffs[i] != 0) return std::nullopt;
      continue;
    }
    Rational q = x.coeffs[i] / y.coeffs[i];
    if (c && *c != q) return std::nullopt;
    c = q;
  }
  if (!c) return x.is_zero() ? std::optional<Rational>(0) : std::nullopt;
  return c;
}

const PermGroup& s6(Workspace& ws) { return *ws.space("M2").group; }

std::vector<std::string> m2_names(int degree) {
  switch (degree) {
    case 0: return {"1"};
    case 1: return {"delta0", "delta1"};
    case 2: return {"D00", "D01"};
    default: return {"pt"};
  }
}

std::string hmap_path(Workspace& ws, const std::string& name) {
  if (name.find('/') == std::string::npos && name.find(".json") == std::string::npos)
    return resolve_preset_file(ws.presets_dir(), "maps/" + name);
  return resolve_preset_file(ws.presets_dir(), name);
}

// labels 0..4 of an M0,5 divisor, as the two-element side
std::vector<int> m05_pair(std::vector<int> labels) {
  std::sort(labels.begin(), labels.end());
  if (labels.size() == 3) {
    std::vector<int> c;
    for (int i = 0; i < 5; ++i)
      if (!std::binary_search(labels.begin(), labels.end(), i)) c.push_back(i);
    return c;
  }
  if (labels.size() != 2) throw std::invalid_argument("not a divisor of M0,5");
  return labels;
}

std::vector<int> parse_labels(const std::string& var) {
  if (var.size() < 2 || var.front() != '[' || var.back() != ']') throw std::invalid_argument("not a divisor: " + var);
  std::vector<int> out;
  std::string cur;
  for (char c : var.substr(1, var.size() - 2) + ",") {
    if (c == ',') {
      if (cur.empty()) throw std::invalid_argument("malformed divisor: " + var);
      out.push_back(std::stoi(cur));
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  return out;
}

std::string bracket(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

Polynomial m05_four_point(int i, int j, int k, int l, int difference) {
  auto rel = four_point_relation(5, i + 1, j + 1, k + 1, l + 1);
  const DivisorSum& s = difference == 1 ? rel.first : rel.second;
  Polynomial p;
  for (const auto& [b, c] : s) {
    std::vector<int> labels;
    for (int m : b.members()) labels.push_back(m - 1);
    p += Polynomial::variable(bracket(m05_pair(labels))) * c;
  }
  return p;
}

QVector coefficient_vector(const Polynomial& p, const std::vector<std::string>& columns) {
  QVector v(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    auto it = p.terms().find({{columns[c], 1}});
    if (it != p.terms().end()) v[c] = it->second;
  }
  return v;
}

QVector primitive(QVector v) {
  mpz_class l = 1, g = 0;
  for (const auto& x : v) l = lcm(l, mpz_class(x.get_den()));
  for (auto& x : v) {
    x *= l;
    g = gcd(g, mpz_class(x.get_num()));
  }
  if (g != 0)
    for (auto& x : v) x /= g;
  for (const auto& x : v)
    if (x != 0) {
      if (x < 0)
        for (auto& y : v) y = -y;
      break;
    }
  return v;
}

}  // namespace

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& rules) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    Polynomial t = Polynomial::constant(c);
    for (const auto& [v, e] : m) {
      auto it = rules.find(v);
      t = t * (it == rules.end() ? Polynomial::variable(v) : it->second).pow(e);
    }
    out += t;
  }
  return out;
}

Polynomial normalize_relation(const Polynomial& p, const std::vector<std::string>& order) {
  if (p.is_zero()) return p;
  mpz_class l = 1, g = 0;
  for (const auto& [m, c] : p.terms()) l = lcm(l, mpz_class(c.get_den()));
  for (const auto& [m, c] : p.terms()) g = gcd(g, mpz_class(Rational(c * l).get_num()));
  Polynomial q = p * Rational(mpq_class(l) / mpq_class(g));
  std::optional<Rational> lead;
  for (const auto& o : order) {
    auto it = q.terms().find(single_monomial(o));
    if (it != q.terms().end()) {
      lead = it->second;
      break;
    }
  }
  if (!lead) lead = q.terms().begin()->second;
  return *lead < 0 ? q * Rational(-1) : q;
}

// ---- f maps ----------------------------------------------------------------------------------

std::string f_map_space(const std::string& map) {
  if (map == "fR" || map == "f_R") return "R2";
  if (map == "fplus" || map == "f+") return "S2plus";
  if (map == "fminus" || map == "f-") return "S2minus";
  if (map == "fM2" || map == "b") return "M2";
  throw std::invalid_argument("unknown quotient map '" + map + "'");
}

FPush push_f(Workspace& ws, const std::string& tag, const Polynomial& keel) {
  const auto& d = ws.space(tag);
  FPush out;
  RingElement z = ws.evaluate_keel(keel);
  out.value = Rational(d.generic_aut) * group_sum(ws.ring(), *d.group, z);
  bool linear = !keel.is_zero();
  for (const auto& [m, c] : keel.terms()) linear = linear && monomial_degree(m) == 1;
  if (linear) {
    Polynomial t;
    for (const auto& [m, c] : keel.terms()) {
      const BoundaryEntry& e = ws.boundary_owner(tag, parse_boundary(m.front().first, 6));
      t += Polynomial::variable(e.alias) * (c * e.degree * e.aut);
    }
    out.table = t;
    out.consistent = ws.evaluate(tag, t) == out.value;
    out.named = t;
  } else {
    std::vector<std::string> names;
    for (const auto& s : d.strata)
      if (s.codim() == out.value.degree) names.push_back(s.alias);
    out.named = ws.express(tag, out.value, names);
  }
  return out;
}

// ---- pi maps ---------------------------------------------------------------------------------

PiPush push_pi(Workspace& ws, const std::string& tag, const Polynomial& cls) {
  const auto& d = ws.space(tag);
  RingElement y = ws.evaluate(tag, cls);
  PiPush out;
  out.value = Rational(1, static_cast<long>(d.group->order())) * group_sum(ws.ring(), s6(ws), y);
  out.named = ws.express("M2", out.value, m2_names(out.value.degree));
  return out;
}

std::vector<Check> pi_pushforward_checks(Workspace& ws, const std::string& tag) {
  const auto& d = ws.space(tag);
  const auto& m2 = ws.space("M2");
  std::vector<Check> out;
  for (const auto& s : d.strata) {
    Check c;
    c.id = tag + " " + s.name;
    c.expected = to_string(s.pushforward) + " " + s.image;
    c.cite = s.cite;
    RingElement x = push_pi(ws, tag, Polynomial::variable(s.alias)).value;
    auto ring_c = ratio(x, ws.named_class("M2", s.image));
    c.computed = ring_c ? to_string(*ring_c) + " " + s.image : "not a multiple of " + s.image;

    std::optional<Rational> comb;
    for (const auto& p : d.stratum_presets)
      if (p.name == s.alias) comb = stratum_pushforward_coeff({p.name, p.tree, p.blowups}, d.strata_space).coeff;

    std::optional<Rational> from_row;
    if (d.intersection_table) {
      for (const auto& [row, vals] : d.intersection_table->rows) {
        if (row != s.alias) continue;
        std::optional<Rational> agreed;
        bool consistent = true;
        for (int i = 0; i < 2; ++i) {
          const auto pull = parse_polynomial(i == 0 ? d.pullback_delta0 : d.pullback_delta1);
          QVector w = coefficient_vector(pull, d.intersection_table->columns);
          Rational n = 0;
          for (std::size_t k = 0; k < w.size(); ++k) n += w[k] * vals[k];
          const std::string key = std::string(i == 0 ? "delta0*" : "delta1*") + s.image;
          for (const auto& num : m2.numbers)
            if (num.expr == key && num.value != 0) {
              Rational ci = n / num.value;
              if (agreed && *agreed != ci) consistent = false;
              agreed = ci;
            }
        }
        if (consistent) from_row = agreed;
      }
    }

    std::string note;
    if (comb) note += "structure count " + to_string(*comb);
    if (from_row) note += std::string(note.empty() ? "" : "; ") + "projection formula on the intersection row " + to_string(*from_row);
    c.note = note;

    const bool ring_ok = ring_c && *ring_c == s.pushforward;
    const bool comb_ok = !comb || *comb == s.pushforward;
    const bool row_ok = !from_row || *from_row == s.pushforward;
    if (ring_ok && comb_ok && row_ok) {
      c.verdict = Verdict::Pass;
    } else {
      // the rest of the table agrees with the computation: a misprint in the column
      const bool corroborated = ring_c && from_row && *from_row == *ring_c && (!comb || *comb == *ring_c);
      c.verdict = corroborated ? Verdict::Erratum : Verdict::Fail;
    }
    out.push_back(c);
  }
  return out;
}

std::vector<Check> automorphism_checks(Workspace& ws, const std::string& tag) {
  const auto& d = ws.space(tag);
  std::vector<Check> out;
  for (const auto& p : d.stratum_presets) {
    Check c;
    const StratumEntry* s = d.find_stratum(p.name);
    c.id = tag + " " + (s ? s->name : p.name);
    c.expected = std::to_string(p.expected_aut);
    c.cite = p.cite;
    AutBreakdown a = prym_aut_number({p.name, p.tree, p.blowups}, d.strata_space);
    c.computed = std::to_string(a.n);
    c.note = "s=" + std::to_string(a.s) + " r=" + std::to_string(a.r) + " r'=" + std::to_string(a.r_prime) +
             " m=" + std::to_string(a.m) + " h=" + std::to_string(a.h) + " u=" + std::to_string(a.u) +
             " i=" + std::to_string(a.i) + " cover genus " + std::to_string(a.cover_genus);
    if (!a.m_consistent) c.note += "; m differs from 2^r' h";
    c.verdict = a.n == static_cast<std::size_t>(p.expected_aut) && a.cover_genus == 2 ? Verdict::Pass : Verdict::Fail;
    out.push_back(c);
  }
  return out;
}

std::vector<Check> pullback_delta_checks(Workspace& ws, const std::string& tag) {
  const auto& d = ws.space(tag);
  std::vector<Check> out;
  auto [p0, p1] = ws.pullback_delta(tag);
  const std::pair<std::string, RingElement> rows[] = {{"delta0", p0}, {"delta1", p1}};
  for (const auto& [name, v] : rows) {
    Check c;
    c.id = tag + " pullback of " + name;
    c.expected = name == "delta0" ? d.pullback_delta0 : d.pullback_delta1;
    const bool ok = v == ws.named_class("M2", name) && is_invariant(ws.ring(), *d.group, v);
    c.computed = ok ? "S6-orbit sum of " + name + " in the Keel ring" : "differs from the pulled-back orbit sum";
    c.verdict = ok ? Verdict::Pass : Verdict::Fail;
    c.cite = d.pullback_cite;
    out.push_back(c);
  }
  Check l;
  l.id = tag + " lambda class";
  l.expected = "pullback of lambda = (delta0 + 2 delta1)/10";
  const bool ok = ws.named_class(tag, d.lambda_alias) == ws.named_class("M2", "lambda");
  l.computed = ok ? "equal" : "differs";
  l.verdict = ok ? Verdict::Pass : Verdict::Fail;
  out.push_back(l);
  return out;
}

std::vector<Check> projection_formula_checks(Workspace& ws, const std::string& tag) {
  const auto& d = ws.space(tag);
  const auto& ring = ws.ring();
  const Rational e = d.generic_aut;
  std::size_t total = 0, good = 0;
  // f_*(z f^*b) = f_*z . b for boundary divisors z of M0,6 and boundary classes b
  for (const auto& z : ring.divisors()) {
    RingElement zz = ring.divisor(z);
    RingElement fz = e * group_sum(ring, *d.group, zz);
    for (const auto& b : d.boundary) {
      RingElement fb = ws.named_class(tag, b.alias);
      ++total;
      if (e * group_sum(ring, *d.group, ring.multiply(zz, fb)) == ring.multiply(fz, fb)) ++good;
    }
  }
  Check f{tag + " projection formula for f", std::to_string(total) + " samples", std::to_string(good) + " hold",
          good == total ? Verdict::Pass : Verdict::Fail, "f_*(a f^*b) = f_*a . b", ""};
  std::vector<Check> out{f};
  if (tag == "M2") return out;
  total = good = 0;
  auto [p0, p1] = ws.pullback_delta(tag);
  const RingElement pulls[] = {p0, p1};
  const RingElement deltas[] = {ws.named_class("M2", "delta0"), ws.named_class("M2", "delta1")};
  const Rational inv = Rational(1, static_cast<long>(d.group->order()));
  for (const auto& s : d.strata) {
    if (s.codim() > 2) continue;
    RingElement y = ws.named_class(tag, s.alias);
    RingElement py = inv * group_sum(ring, s6(ws), y);
    for (int i = 0; i < 2; ++i) {
      ++total;
      if (inv * group_sum(ring, s6(ws), ring.multiply(y, pulls[i])) == ring.multiply(py, deltas[i])) ++good;
    }
  }
  out.push_back({tag + " projection formula for pi", std::to_string(total) + " samples", std::to_string(good) + " hold",
                 good == total ? Verdict::Pass : Verdict::Fail, "pi_*(y pi^*delta) = pi_*y . delta", ""});
  return out;
}

// ---- h maps ----------------------------------------------------------------------------------

HMap load_hmap(Workspace& ws, const std::string& name) {
  const json j = read_json(hmap_path(ws, name));
  HMap h;
  try {
    h.name = j.at("name").get<std::string>();
    h.title = j.value("title", "");
    h.space = j.at("space").get<std::string>();
    h.degree = j.at("degree").get<int>();
    h.extremity = j.at("extremity").get<std::vector<int>>();
    h.cite = j.value("cite", "");
    std::set<std::vector<int>> seen;
    for (const auto& e : j.at("entries")) {
      HMapEntry x;
      x.divisor = m05_pair(e.at("divisor").get<std::vector<int>>());
      x.multiplicity = e.at("multiplicity").get<int>();
      x.stratum = e.at("stratum").get<std::string>();
      x.cite = e.value("cite", "");
      if (!seen.insert(x.divisor).second) throw std::invalid_argument("duplicate entry " + bracket(x.divisor));
      h.entries.push_back(x);
    }
    if (h.entries.size() != 10) throw std::invalid_argument(h.name + ": all 10 divisors of M0,5 need an entry");
    for (const auto& r : j.value("relations", json::array())) {
      M05Relation m;
      m.id = r.at("id").get<std::string>();
      auto pts = r.at("points").get<std::vector<int>>();
      if (pts.size() != 4) throw std::invalid_argument("relation needs four points");
      std::copy(pts.begin(), pts.end(), m.points.begin());
      m.difference = r.value("difference", 1);
      m.rewrite = r.value("rewrite", std::map<std::string, std::string>{});
      m.order = r.value("order", std::vector<std::string>{});
      m.expected = r.at("expected").get<std::string>();
      m.cite = r.value("cite", "");
      m.note = r.value("note", "");
      h.relations.push_back(m);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(name + ": " + e.what());
  }
  const auto& d = ws.space(h.space);
  for (const auto& e : h.entries)
    if (!d.find_stratum(e.stratum)) throw std::invalid_argument(h.name + ": unknown stratum " + e.stratum);
  return h;
}

Polynomial push_h(Workspace& ws, const HMap& h, const Polynomial& m05) {
  const auto& d = ws.space(h.space);
  Polynomial out;
  for (const auto& [m, c] : m05.terms()) {
    if (monomial_degree(m) != 1) throw std::invalid_argument("push_h takes linear combinations of divisors");
    auto pair = m05_pair(parse_labels(m.front().first));
    auto it = std::find_if(h.entries.begin(), h.entries.end(), [&](const HMapEntry& e) { return e.divisor == pair; });
    if (it == h.entries.end()) throw std::invalid_argument("untabled divisor " + bracket(pair));
    out += Polynomial::variable(it->stratum) * (c * it->multiplicity * d.find_stratum(it->stratum)->aut);
  }
  return out;
}

std::vector<Check> hmap_entry_checks(Workspace& ws, const HMap& h) {
  const auto& d = ws.space(h.space);
  const auto& ring = ws.ring();
  const BoundaryIndex ext = canonicalize(h.extremity, 6);
  std::vector<int> rest;
  for (int i = 1; i <= 6; ++i)
    if (std::find(h.extremity.begin(), h.extremity.end(), i) == h.extremity.end()) rest.push_back(i);
  std::vector<Check> out;
  for (const auto& e : h.entries) {
    // label 0 is the attaching point; labels 1..4 are the remaining marks in order
    std::vector<int> lift;
    for (int l : e.divisor) {
      if (l == 0)
        lift.insert(lift.end(), h.extremity.begin(), h.extremity.end());
      else
        lift.push_back(rest[static_cast<std::size_t>(l - 1)]);
    }
    RingElement up = ring.product({ext, canonicalize(lift, 6)});
    RingElement lhs = Rational(d.generic_aut) * group_sum(ring, *d.group, up);
    RingElement rhs = Rational(e.multiplicity * d.find_stratum(e.stratum)->aut) * ws.named_class(h.space, e.stratum);
    Check c;
    c.id = h.name + " " + bracket(e.divisor);
    c.expected = std::to_string(e.multiplicity) + ":1 onto " + e.stratum;
    auto r = ratio(lhs, ws.named_class(h.space, e.stratum));
    c.computed = r ? to_string(*r / d.find_stratum(e.stratum)->aut) + ":1 onto " + e.stratum : "image is not " + e.stratum;
    c.verdict = lhs == rhs ? Verdict::Pass : Verdict::Fail;
    c.cite = e.cite;
    out.push_back(c);
  }
  return out;
}

std::vector<DerivedRelation> derive_m05_relations(Workspace& ws) {
  std::vector<DerivedRelation> out;
  for (const char* name : {"h0p", "h0alpha"}) {
    HMap h = load_hmap(ws, name);
    for (const auto& r : h.relations) {
      DerivedRelation d;
      d.id = r.id;
      d.space = h.space;
      d.cite = r.cite;
      d.note = r.note;
      const auto& p = r.points;
      d.raw = push_h(ws, h, m05_four_point(p[0], p[1], p[2], p[3], r.difference));
      std::map<std::string, Polynomial> rules;
      for (const auto& [k, v] : r.rewrite) rules[k] = parse_polynomial(v);
      d.rewritten = substitute(d.raw, rules);
      d.normalized = normalize_relation(d.rewritten, r.order);
      d.expected = normalize_relation(parse_polynomial(r.expected), r.order);
      d.matches = d.normalized == d.expected && !d.normalized.is_zero();
      d.vanishes = ws.evaluate(h.space, d.normalized).is_zero() && ws.evaluate(h.space, d.raw).is_zero();
      out.push_back(d);
    }
  }
  return out;
}

std::vector<Check> transversality_checks(Workspace& ws) {
  std::vector<Check> out;
  std::set<std::string> done;
  for (const char* name : {"h0p", "h0alpha"}) {
    HMap h = load_hmap(ws, name);
    const json j = read_json(hmap_path(ws, name));
    std::vector<std::tuple<std::string, std::string, std::string>> rules;
    for (const auto& r : h.relations)
      for (const auto& [k, v] : r.rewrite) rules.emplace_back(k, v, r.cite);
    for (const auto& t : j.value("transversal", json::array()))
      rules.emplace_back(t.at("lhs").get<std::string>(), t.at("rhs").get<std::string>(), t.value("cite", ""));
    for (const auto& [lhs, rhs, cite] : rules) {
      if (!done.insert(h.space + lhs + "=" + rhs).second) continue;
      Check c;
      c.id = h.space + " " + lhs + " = " + rhs;
      c.expected = "equal Q-classes";
      const bool ok = ws.evaluate(h.space, lhs) == ws.evaluate(h.space, rhs);
      c.computed = ok ? "equal" : "differ";
      c.verdict = ok ? Verdict::Pass : Verdict::Fail;
      c.cite = cite;
      out.push_back(c);
    }
  }
  return out;
}

// ---- linear relations ------------------------------------------------------------------------

LinearRelation derive_linear_relation(Workspace& ws, const std::string& tag) {
  if (tag == "M2") throw std::invalid_argument("derive_linear_relation applies to R2, S2plus, S2minus");
  const auto& d = ws.space(tag);
  std::vector<std::string> aliases;
  for (const auto& b : d.boundary) aliases.push_back(b.alias);
  auto push = [&](const DivisorSum& s) {
    QVector v(aliases.size());
    for (const auto& [b, c] : s) {
      const BoundaryEntry& e = ws.boundary_owner(tag, b);
      auto k = static_cast<std::size_t>(std::find(aliases.begin(), aliases.end(), e.alias) - aliases.begin());
      v[k] += c * e.degree * e.aut;
    }
    return v;
  };
  auto as_poly = [&](const QVector& v) {
    Polynomial p;
    for (std::size_t k = 0; k < v.size(); ++k) p += Polynomial::variable(aliases[k]) * v[k];
    return normalize_relation(p, aliases);
  };

  LinearRelation out;
  out.space = tag;
  QMatrix all(0, aliases.size());
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j)
      for (int k = j + 1; k <= 6; ++k)
        for (int l = k + 1; l <= 6; ++l) {
          auto [a, b] = four_point_relation(6, i, j, k, l);
          all.append_row(push(a));
          all.append_row(push(b));
        }
  RrefResult r = rref(all);
  out.span_rank = r.pivots.size();
  if (out.span_rank >= 1) out.span = as_poly(r.matrix.row(0));
  if (out.span_rank > 1) out.span = Polynomial();

  const LinearRelationSpec spec = d.linear_relation.value_or(LinearRelationSpec{{1, 2, 3, 4}, 1, "0", ""});
  auto [a, b] = four_point_relation(6, spec.points[0], spec.points[1], spec.points[2], spec.points[3]);
  out.quoted_quadruple = as_poly(push(spec.difference == 1 ? a : b));
  out.expected = normalize_relation(parse_polynomial(spec.expected), aliases);
  out.cite = spec.cite;
  out.matches = out.span_rank <= 1 && out.span == out.expected && out.quoted_quadruple == out.expected;
  out.vanishes = ws.evaluate(tag, out.span).is_zero();
  if (d.intersection_table) {
    IntersectionTable t = intersection_table(ws, tag);
    QVector v = coefficient_vector(out.span, t.columns);
    out.in_table_kernel = is_zero(mat_vec(t.computed, v));
  }
  return out;
}

// ---- intersection numbers --------------------------------------------------------------------

IntersectionTable intersection_table(Workspace& ws, const std::string& tag) {
  const auto& d = ws.space(tag);
  if (!d.intersection_table) throw std::invalid_argument("no intersection table for " + tag);
  const auto& spec = *d.intersection_table;
  IntersectionTable t;
  t.space = tag;
  t.columns = spec.columns;
  t.cite = spec.cite;
  t.computed = QMatrix(spec.rows.size(), spec.columns.size());
  t.tabled = QMatrix(spec.rows.size(), spec.columns.size());
  t.entries_match = true;
  for (std::size_t r = 0; r < spec.rows.size(); ++r) {
    const auto& [name, vals] = spec.rows[r];
    if (!d.find_stratum(name)) throw std::invalid_argument("missing stratum representative for " + name);
    t.rows.push_back(name);
    for (std::size_t c = 0; c < spec.columns.size(); ++c) {
      t.computed.at(r, c) = ws.number(tag, ws.evaluate(tag, spec.columns[c] + "*" + name));
      t.tabled.at(r, c) = vals[c];
      if (t.computed.at(r, c) != vals[c]) t.entries_match = false;
    }
  }
  t.rank = rank(t.computed);
  t.expected_rank = spec.rank;
  for (auto& k : kernel_basis(t.computed)) t.kernel.push_back(primitive(k));
  t.expected_kernel = spec.kernel.empty() ? QVector{} : primitive(spec.kernel);
  t.kernel_matches = spec.kernel.empty() ? t.kernel.empty() : (t.kernel.size() == 1 && t.kernel[0] == t.expected_kernel);
  return t;
}

std::vector<Check> mumford_base_numbers(Workspace& ws) {
  std::vector<Check> out;
  for (const auto& n : ws.space("M2").numbers) {
    Rational v = ws.number("M2", ws.evaluate("M2", n.expr));
    out.push_back({n.expr, to_string(n.value), to_string(v), v == n.value ? Verdict::Pass : Verdict::Fail, n.cite, ""});
  }
  return out;
}

std::vector<RelationVerdict> m2_relation_verdicts(Workspace& ws) {
  std::vector<RelationVerdict> out;
  for (const auto& r : ws.space("M2").relation_checks) {
    RelationVerdict v;
    v.expr = r.expr;
    v.cite = r.cite;
    RingElement x = ws.evaluate("M2", r.expr);
    v.holds = x.is_zero();
    if (!v.holds) {
      auto e = ws.express("M2", x, m2_names(x.degree));
      v.residue = e ? e->str() : "nonzero";
    }
    out.push_back(v);
  }
  return out;
}

std::vector<Check> m2_triple_numbers(Workspace& ws) {
  std::vector<Check> out;
  for (const char* e : {"delta0^3", "delta0^2*delta1", "delta0*delta1^2", "delta1^3", "lambda^3", "lambda*delta0*delta1"}) {
    Rational v = ws.number("M2", ws.evaluate("M2", e));
    out.push_back({e, "", to_string(v), Verdict::Info, "", ""});
  }
  return out;
}

// ---- lambda chains ---------------------------------------------------------------------------

namespace {

using Combo = std::map<std::string, Rational>;  // "A (x) B", "A" or "1"

struct FactBook {
  std::map<std::string, Polynomial> facts;

  Combo expand_symbol(const std::string& s) const {
    auto it = facts.find(s);
    if (s == "1" || it == facts.end()) return {{s, 1}};
    Combo out;
    for (const auto& [m, c] : it->second.terms()) {
      if (m.empty()) out["1"] += c;
      else if (m.size() == 1 && m[0].second == 1) out[m[0].first] += c;
      else throw std::invalid_argument("fact for " + s + " is not linear");
    }
    return out;
  }

  // Expand until every key is tabled (or, with full, until nothing expands).
  Combo expand(const Combo& in, const std::map<std::string, std::string>& table, bool full, int depth = 0) const {
    if (depth > 16) throw std::invalid_argument("fact expansion does not terminate");
    Combo out;
    bool changed = false;
    for (const auto& [key, c] : in) {
      if (!full && table.count(key)) {
        out[key] += c;
        continue;
      }
      auto sep = key.find(" (x) ");
      Combo step;
      if (sep == std::string::npos) {
        step = expand_symbol(key);
      } else {
        Combo l = expand_symbol(key.substr(0, sep)), r = expand_symbol(key.substr(sep + 5));
        for (const auto& [a, x] : l)
          for (const auto& [b, y] : r) step[a + " (x) " + b] += x * y;
      }
      if (!(step.size() == 1 && step.begin()->first == key)) changed = true;
      for (const auto& [k, x] : step) out[k] += c * x;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return changed ? expand(out, table, full, depth + 1) : out;
  }
};

Combo parse_source(const std::string& text) {
  // tensors become single identifiers for the polynomial parser
  static const std::regex tensor(R"(([A-Za-z0-9_']+)\s*\(x\)\s*([A-Za-z0-9_']+))");
  std::string s = std::regex_replace(text, tensor, "T__$1__$2");
  Polynomial p = parse_polynomial(s);
  Combo out;
  for (const auto& [m, c] : p.terms()) {
    if (m.empty()) {
      out["1"] += c;
      continue;
    }
    if (m.size() != 1 || m[0].second != 1) throw std::invalid_argument("source must be linear: " + text);
    std::string v = m[0].first;
    if (v.rfind("T__", 0) == 0) {
      auto mid = v.find("__", 3);
      v = v.substr(3, mid - 3) + " (x) " + v.substr(mid + 2);
    }
    out[v] += c;
  }
  return out;
}

}  // namespace

LambdaReport verify_lambda_identities(Workspace& ws, const std::string& tag) {
  const json j = read_json(resolve_preset_file(ws.presets_dir(), "lambda/chains"));
  FactBook book;
  for (const auto& f : j.at("facts")) book.facts[f.at("symbol").get<std::string>()] = parse_polynomial(f.at("value").get<std::string>());

  LambdaReport rep;
  const json& morphisms = j.at("morphisms");
  for (const auto& c : j.at("chains")) {
    ChainResult r;
    r.id = c.at("id").get<std::string>();
    r.space = c.at("space").get<std::string>();
    if (!tag.empty() && r.space != tag) continue;
    r.lhs = c.at("lhs").get<std::string>();
    r.rhs = c.at("rhs").get<std::string>();
    r.cite = c.value("cite", "");
    r.note = c.value("note", "");
    r.relation_chain = r.rhs == "0";
    const std::string mname = c.at("morphism").get<std::string>();
    try {
      if (!morphisms.contains(mname)) throw std::invalid_argument("unknown morphism " + mname);
      const auto& m = morphisms.at(mname);
      if (m.at("space").get<std::string>() != r.space) throw std::invalid_argument(mname + " maps to another space");
      const auto table = m.at("pushforward").get<std::map<std::string, std::string>>();
      if (!r.note.empty() && m.contains("note")) r.note += "; ";
      r.note += m.value("note", "");

      const Combo source = parse_source(c.at("source").get<std::string>());
      const Combo expanded = book.expand(source, table, false);
      Polynomial replay;
      for (const auto& [key, x] : expanded) {
        auto it = table.find(key);
        if (it == table.end()) throw std::invalid_argument("no pushforward recorded for " + key + " under " + mname);
        replay += parse_polynomial(it->second) * x;
      }
      replay = replay * rat(c.at("factor").get<std::string>());
      r.replay = replay.str();
      const RingElement lhs = ws.evaluate(r.space, r.lhs);
      const RingElement rhs = ws.evaluate(r.space, r.rhs);
      const RingElement rp = ws.evaluate(r.space, replay);
      if (r.relation_chain) {
        r.source_vanishes = book.expand(source, table, true).empty();
        r.replay_matches = rp == lhs;
        r.ring_holds = lhs.is_zero();
      } else {
        r.source_vanishes = true;
        r.replay_matches = rp == rhs;
        r.ring_holds = lhs == rhs;
      }
    } catch (const std::invalid_argument& e) {
      r.error = e.what();
    }
    rep.chains.push_back(r);
  }
  const std::string vcite = j.value("vanishing_cite", "");
  for (const auto& v : j.at("vanishing")) {
    const std::string sp = v.at("space").get<std::string>();
    if (!tag.empty() && sp != tag) continue;
    const std::string e = v.at("expr").get<std::string>();
    const bool zero = ws.evaluate(sp, e).is_zero();
    rep.vanishing.push_back({sp + " " + e, "0", zero ? "0" : "nonzero", zero ? Verdict::Pass : Verdict::Fail, vcite, ""});
  }
  for (const auto& sp : ws.tags()) {
    if (sp == "M2" || (!tag.empty() && sp != tag)) continue;
    const auto& d = ws.space(sp);
    Polynomial l = (parse_polynomial(d.pullback_delta0) + parse_polynomial(d.pullback_delta1) * Rational(2)) * Rational(1, 10);
    const bool ok = ws.named_class(sp, d.lambda_alias) == ws.named_class("M2", "lambda");
    rep.formulas.push_back({sp + " " + d.lambda_alias, "pullback of (delta0 + 2 delta1)/10", l.str(),
                            ok ? Verdict::Pass : Verdict::Fail, d.pullback_cite, ""});
  }
  return rep;
}

}  // namespace moduli
