#include "moduli/report.hpp"

#include "moduli/presentations.hpp"
#include "moduli/pushpull.hpp"
#include "moduli/theta.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace moduli {

namespace {

std::string dims_str(const std::vector<std::size_t>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? " " : "") + std::to_string(d[i]);
  return s;
}

std::string yes(bool b) { return b ? "yes" : "no"; }
std::string pf(bool b) { return b ? "PASS" : "FAIL"; }

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string vec_str(const QVector& v) {
  std::vector<std::string> parts;
  for (const auto& x : v) parts.push_back(to_string(x));
  return "(" + join(parts, ", ") + ")";
}

ReportSection check_section(const std::string& title, const std::vector<Check>& checks, const std::string& cite = "") {
  ReportSection s{title, cite, {"item", "expected", "computed", "verdict", "note"}, {}, {}};
  for (const auto& c : checks) s.rows.push_back({{c.id, c.expected, c.computed, verdict_str(c.verdict), c.note}, verdict_str(c.verdict), c.cite});
  return s;
}

void append(Report& into, const Report& from) {
  for (const auto& s : from.sections) into.sections.push_back(s);
}

std::string space_cite(Workspace& ws, const std::string& tag) { return ws.space(tag).cite; }

std::string md_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '|') o += "\\|";
    else if (c == '\n') o += ' ';
    else o += c;
  }
  return o;
}

}  // namespace

std::size_t Report::count(const std::string& verdict) const {
  std::size_t n = 0;
  for (const auto& s : sections)
    for (const auto& r : s.rows) n += r.verdict == verdict;
  return n;
}

int Report::exit_code() const { return count("FAIL") ? 1 : 0; }

std::string Report::markdown() const {
  std::ostringstream o;
  o << "# " << title << "\n";
  for (const auto& s : sections) {
    o << "\n## " << s.title << "\n\n";
    if (!s.cite.empty()) o << "Source: " << s.cite << "\n\n";
    if (!s.rows.empty()) {
      o << "|";
      for (const auto& h : s.header) o << " " << h << " |";
      o << " source |\n|";
      for (std::size_t i = 0; i <= s.header.size(); ++i) o << "---|";
      o << "\n";
      for (const auto& r : s.rows) {
        o << "|";
        for (const auto& c : r.cells) o << " " << md_escape(c) << " |";
        o << " " << md_escape(r.cite.empty() ? s.cite : r.cite) << " |\n";
      }
    }
    for (const auto& n : s.notes) o << "\n" << n << "\n";
  }
  o << "\nSummary: " << count("PASS") << " pass, " << count("FAIL") << " fail, " << count("ERRATUM") << " erratum, "
    << count("INFO") << " info\n";
  return o.str();
}

std::string Report::json() const {
  nlohmann::ordered_json j;
  j["title"] = title;
  j["sections"] = nlohmann::ordered_json::array();
  for (const auto& s : sections) {
    nlohmann::ordered_json js;
    js["title"] = s.title;
    js["cite"] = s.cite;
    js["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : s.rows) {
      nlohmann::ordered_json jr;
      for (std::size_t i = 0; i < r.cells.size(); ++i) jr[i < s.header.size() ? s.header[i] : "col" + std::to_string(i)] = r.cells[i];
      if (!r.verdict.empty()) jr["verdict"] = r.verdict;
      jr["cite"] = r.cite.empty() ? s.cite : r.cite;
      js["rows"].push_back(jr);
    }
    js["notes"] = s.notes;
    j["sections"].push_back(js);
  }
  j["summary"] = {{"pass", count("PASS")}, {"fail", count("FAIL")}, {"erratum", count("ERRATUM")}, {"info", count("INFO")}};
  return j.dump(2) + "\n";
}

// ---- keel / invariants -----------------------------------------------------------------------

Report keel_report(int n, bool relations) {
  KeelRing ring(n);
  Report r{"Keel ring of M0," + std::to_string(n), {}};
  ReportSection s{"Graded dimensions", "Keel presentation by boundary divisors", {"degree", "dimension", "monomials", "relation rank"}, {}, {}};
  for (int d = 0; d <= ring.top_degree(); ++d)
    s.rows.push_back({{std::to_string(d), std::to_string(ring.dim(d)), std::to_string(ring.monomials(d).size()),
                       std::to_string(ring.relation_rank(d))}, "", ""});
  s.notes.push_back("dims: " + dims_str(ring.dims()));
  r.sections.push_back(s);
  if (relations) {
    ReportSection rel{"Four-point relations", "linear relations of the Keel presentation", {"points", "relation"}, {}, {}};
    auto str = [](const DivisorSum& sum) {
      Polynomial p;
      for (const auto& [b, c] : sum) p += Polynomial::variable(b.str()) * c;
      return p.str();
    };
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k)
          for (int l = k + 1; l <= n; ++l) {
            auto [a, b] = four_point_relation(n, i, j, k, l);
            const std::string pts = std::to_string(i) + std::to_string(j) + std::to_string(k) + std::to_string(l);
            rel.rows.push_back({{pts, str(a) + " = 0"}, "", ""});
            rel.rows.push_back({{pts, str(b) + " = 0"}, "", ""});
          }
    r.sections.push_back(rel);
  }
  return r;
}

Report invariants_report(Workspace& ws, const std::string& tag) {
  const auto& d = ws.space(tag);
  auto dims = ws.invariants(tag).dims();
  Report r{"Invariant subring for " + d.title, {}};
  ReportSection s{"Graded dimensions", space_cite(ws, tag), {"degree", "dimension"}, {}, {}};
  for (std::size_t i = 0; i < dims.size(); ++i) s.rows.push_back({{std::to_string(i), std::to_string(dims[i])}, "", ""});
  s.notes.push_back("dims: " + dims_str(dims));
  s.notes.push_back("group order " + std::to_string(d.group->order()) + ", generated by " + join([&] {
                      std::vector<std::string> g;
                      for (const auto& p : d.group->generators()) g.push_back(p.cycles());
                      return g;
                    }(), ", "));
  r.sections.push_back(s);
  ReportSection b{"Boundary classes", d.cite, {"name", "alias", "representative", "orbit", "degree", "aut", "inertia"}, {}, {}};
  for (const auto& e : d.boundary)
    b.rows.push_back({{e.name, e.alias, e.rep.str(), std::to_string(e.orbit_size), std::to_string(e.degree), std::to_string(e.aut),
                       std::to_string(e.inertia)}, "", e.cite});
  r.sections.push_back(b);
  if (!d.audit.empty()) {
    ReportSection a{"Preset audit", "consistency audit of the class dictionary", {"severity", "subject", "message"}, {}, {}};
    for (const auto& f : d.audit) a.rows.push_back({{f.severity, f.subject, f.message}, "", ""});
    r.sections.push_back(a);
  }
  return r;
}

// ---- presentations -----------------------------------------------------------------------------

Report verify_report(Workspace& ws, const std::string& tag, const std::string& presentation) {
  Presentation p = load_presentation(ws.presets_dir(), presentation);
  PresentationReport v = verify_presentation(ws, tag, p);
  Report r{"Presentation " + p.name + " of " + ws.space(tag).title, {}};
  const std::string cite = p.cite.empty() ? ws.space(tag).cite : p.cite;

  ReportSection g{"Generators", cite, {"generator", "vanishes", "redundant"}, {}, {}};
  for (std::size_t i = 0; i < v.generators.size(); ++i) {
    const bool red = std::find(v.redundant.begin(), v.redundant.end(), i) != v.redundant.end();
    g.rows.push_back({{v.generators[i].first, yes(v.generators[i].second), yes(red)}, pf(v.generators[i].second), ""});
  }
  r.sections.push_back(g);

  ReportSection h{"Dimensions", cite, {"degree", "quotient", "invariant ring", "image rank"}, {}, {}};
  for (std::size_t d = 0; d < v.hilbert.size(); ++d)
    h.rows.push_back({{std::to_string(d), std::to_string(v.hilbert[d]), std::to_string(v.invariant_dims[d]),
                       std::to_string(v.surjective_rank[d])},
                      pf(v.hilbert[d] == v.invariant_dims[d] && v.surjective_rank[d] == v.invariant_dims[d]), ""});
  h.notes.push_back("hilbert: " + dims_str(v.hilbert));
  r.sections.push_back(h);

  ReportSection k{"Checks", cite, {"check", "result"}, {}, {}};
  k.rows.push_back({{"generators vanish in the invariant ring", yes(v.generators_vanish)}, pf(v.generators_vanish), ""});
  k.rows.push_back({{"boundary classes span every degree", yes(v.surjective)}, pf(v.surjective), ""});
  k.rows.push_back({{"Hilbert function equals invariant dimensions", yes(v.dims_match)}, pf(v.dims_match), ""});
  std::vector<std::string> kern;
  for (const auto& x : v.degree1_kernel) kern.push_back(x.str());
  k.rows.push_back({{"degree-1 kernel is the derived linear relation", kern.empty() ? "trivial kernel" : join(kern, "; ")},
                    pf(v.kernel_matches_linear_relation), ""});
  if (v.independent) {
    k.rows.push_back({{"generators independent", "yes"}, "PASS", ""});
  } else {
    std::vector<std::string> red;
    for (auto i : v.redundant) red.push_back(v.generators[i].first);
    // degree-2 count: linear multiples and quadrics against the quotient dimension
    std::size_t lin = 0, quad = 0;
    for (const auto& gen : p.generators) (gen.degree() == 1 ? lin : quad) += gen.degree() <= 2;
    const std::size_t n = p.variables.size();
    const std::size_t ideal2 = n * (n + 1) / 2 - (v.hilbert.size() > 2 ? v.hilbert[2] : 0);
    const bool forced = lin * n + quad > ideal2;
    k.rows.push_back({{"generators independent", "lie in the ideal of the others: " + join(red, "; ")},
                      forced ? "ERRATUM" : "FAIL",
                      forced ? "degree 2 holds " + std::to_string(lin * n + quad) + " spanning forms for a " +
                                   std::to_string(ideal2) + "-dimensional ideal piece"
                             : ""});
  }
  k.rows.push_back({{"verdict", v.verdict}, pf(v.isomorphic), ""});
  r.sections.push_back(k);

  ReportSection m{"Pulled-back M2 relations", "relations on M2 pulled back along the forgetful map", {"relation", "pullback", "in ideal", "vanishes"}, {}, {}};
  for (const auto& q : pulled_m2_relations(ws, tag, p))
    m.rows.push_back({{q.relation, q.pulled.str(), yes(q.in_ideal), yes(q.vanishes)},
                      q.in_ideal == q.vanishes ? "INFO" : "FAIL", ""});
  m.notes.push_back("verdict: " + v.verdict);
  r.sections.push_back(m);
  return r;
}

// ---- pushforwards ----------------------------------------------------------------------------

Report push_report(Workspace& ws, const std::string& map, const std::string& expr) {
  Report r{"Pushforward of " + expr + " under " + map, {}};
  ReportSection s{"Result", "", {"quantity", "value"}, {}, {}};
  Polynomial x = parse_polynomial(expr);
  auto coords = [&](const std::string& tag, const RingElement& v) {
    try {
      return vec_str(invariant_coordinates(ws.invariants(tag), v));
    } catch (const std::invalid_argument&) {
      return std::string("not invariant");
    }
  };
  if (map == "h0p" || map == "h0alpha") {
    HMap h = load_hmap(ws, map);
    s.cite = h.cite;
    Polynomial img = push_h(ws, h, x);
    s.rows.push_back({{"target", h.space}, "", ""});
    s.rows.push_back({{"image", img.str()}, "", ""});
    s.rows.push_back({{"image in the ring", ws.evaluate(h.space, img).is_zero() ? "zero" : "nonzero"}, "", ""});
  } else if (map == "piR" || map == "piplus" || map == "piminus") {
    const std::string tag = map == "piR" ? "R2" : map == "piplus" ? "S2plus" : "S2minus";
    PiPush p = push_pi(ws, tag, x);
    s.cite = ws.space(tag).pullback_cite;
    s.rows.push_back({{"source", tag}, "", ""});
    s.rows.push_back({{"image", p.named ? p.named->str() : "not expressible"}, "", ""});
    s.rows.push_back({{"invariant coordinates", coords("M2", p.value)}, "", ""});
    if (p.value.degree == ws.ring().top_degree()) s.rows.push_back({{"degree", to_string(ws.number("M2", p.value))}, "", ""});
  } else {
    const std::string tag = f_map_space(map);
    FPush f = push_f(ws, tag, x);
    s.cite = ws.space(tag).cite;
    s.rows.push_back({{"target", tag}, "", ""});
    if (f.table) s.rows.push_back({{"table value", f.table->str()}, f.consistent ? "PASS" : "FAIL", ""});
    s.rows.push_back({{"image", f.named ? f.named->str() : "not expressible in named strata"}, "", ""});
    s.rows.push_back({{"invariant coordinates", coords(tag, f.value)}, "", ""});
    if (f.value.degree == ws.ring().top_degree()) s.rows.push_back({{"degree", to_string(ws.number(tag, f.value))}, "", ""});
  }
  r.sections.push_back(s);
  return r;
}

// ---- intersections ---------------------------------------------------------------------------

Report intersections_report(Workspace& ws, const std::string& tag) {
  const auto& d = ws.space(tag);
  Report r{"Intersection numbers on " + d.title, {}};
  ReportSection cal{"Calibration", "single normalization of the degree map", {"quantity", "value"}, {}, {}};
  cal.rows.push_back({{"kappa", to_string(ws.kappa())}, "INFO", ""});
  cal.notes.push_back(ws.calibration_summary());
  r.sections.push_back(cal);

  if (tag == "M2") {
    r.sections.push_back(check_section("Base numbers", mumford_base_numbers(ws)));
    ReportSection v{"Relations on M2", "", {"relation", "holds", "residue"}, {}, {}};
    for (const auto& x : m2_relation_verdicts(ws)) v.rows.push_back({{x.expr + " = 0", yes(x.holds), x.residue}, "INFO", x.cite});
    r.sections.push_back(v);
    r.sections.push_back(check_section("Triple intersection numbers", m2_triple_numbers(ws), "computed, no tabulated value"));
    return r;
  }

  IntersectionTable t = intersection_table(ws, tag);
  ReportSection s{"Table", t.cite, {"stratum"}, {}, {}};
  for (const auto& c : t.columns) s.header.push_back(c);
  s.header.push_back("matches");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    ReportRow row{{t.rows[i]}, "", ""};
    bool ok = true;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      row.cells.push_back(to_string(t.computed.at(i, c)));
      ok = ok && t.computed.at(i, c) == t.tabled.at(i, c);
    }
    row.cells.push_back(yes(ok));
    row.verdict = pf(ok);
    s.rows.push_back(row);
  }
  r.sections.push_back(s);

  ReportSection k{"Rank and kernel", t.cite, {"quantity", "expected", "computed"}, {}, {}};
  k.rows.push_back({{"rank", std::to_string(t.expected_rank), std::to_string(t.rank)}, pf(t.rank == t.expected_rank), ""});
  std::vector<std::string> ks;
  for (const auto& v : t.kernel) ks.push_back(vec_str(v));
  k.rows.push_back({{"kernel", t.expected_kernel.empty() ? "trivial" : vec_str(t.expected_kernel), ks.empty() ? "trivial" : join(ks, "; ")},
                    pf(t.kernel_matches), ""});
  r.sections.push_back(k);

  LinearRelation l = derive_linear_relation(ws, tag);
  ReportSection lr{"Linear relation", l.cite, {"quantity", "value"}, {}, {}};
  lr.rows.push_back({{"span of pushed four-point relations", l.span.is_zero() ? "no relation" : l.span.str() + " = 0"}, pf(l.matches), ""});
  lr.rows.push_back({{"rank of the span", std::to_string(l.span_rank)}, "", ""});
  lr.rows.push_back({{"quoted quadruple", l.quoted_quadruple.is_zero() ? "0" : l.quoted_quadruple.str()}, "", ""});
  lr.rows.push_back({{"vanishes in the ring", yes(l.vanishes)}, pf(l.vanishes), ""});
  if (l.in_table_kernel) lr.rows.push_back({{"annihilated by the table", yes(*l.in_table_kernel)}, pf(*l.in_table_kernel), ""});
  r.sections.push_back(lr);
  return r;
}

// ---- lambda --------------------------------------------------------------------------------

Report lambda_report(Workspace& ws, const std::string& tag) {
  LambdaReport l = verify_lambda_identities(ws, tag == "all" ? "" : tag);
  Report r{"Lambda identities" + (tag.empty() || tag == "all" ? std::string() : " on " + ws.space(tag).title), {}};
  ReportSection c{"Pushforward chains", "", {"chain", "claim", "replayed", "replay", "ring", "source vanishes"}, {}, {}};
  for (const auto& x : l.chains) {
    const bool ok = x.error.empty() && x.replay_matches && x.ring_holds && x.source_vanishes;
    c.rows.push_back({{x.id, x.lhs + " = " + x.rhs, x.error.empty() ? x.replay : x.error, yes(x.replay_matches), yes(x.ring_holds),
                       yes(x.source_vanishes)},
                      pf(ok), x.cite});
    if (!x.note.empty()) c.notes.push_back(x.id + ": " + x.note);
  }
  r.sections.push_back(c);
  r.sections.push_back(check_section("Vanishing products", l.vanishing));
  r.sections.push_back(check_section("Lambda in boundary classes", l.formulas));
  return r;
}

// ---- strata --------------------------------------------------------------------------------

Report strata_report(Workspace& ws, const std::string& tag, const std::optional<std::string>& tree) {
  const auto& d = ws.space(tag);
  Report r{"Strata of " + d.title, {}};
  if (tree) {
    MarkedTree t = parse_tree(*tree);
    StratumDescriptor sd{"query", t, default_blowups(t, d.strata_space.kind)};
    AutBreakdown a = prym_aut_number(sd, d.strata_space);
    ReportSection s{"Stratum " + tree_str(t), "automorphism count of the dual graph with its cover", {"quantity", "value"}, {}, {}};
    s.rows.push_back({{"s, r, r'", std::to_string(a.s) + ", " + std::to_string(a.r) + ", " + std::to_string(a.r_prime)}, "", ""});
    s.rows.push_back({{"m, h, u, i", std::to_string(a.m) + ", " + std::to_string(a.h) + ", " + std::to_string(a.u) + ", " + std::to_string(a.i)}, "", ""});
    s.rows.push_back({{"automorphisms", std::to_string(a.n)}, "", ""});
    s.rows.push_back({{"cover genus", std::to_string(a.cover_genus)}, "", ""});
    if (tag != "M2") {
      PushforwardCoeff p = stratum_pushforward_coeff(sd, d.strata_space);
      s.rows.push_back({{"pushforward coefficient", to_string(p.coeff) + " onto " + p.image_tree}, "", ""});
    }
    r.sections.push_back(s);
    return r;
  }
  ReportSection list{"Dictionary", d.cite, {"name", "alias", "codim", "orbit", "aut", "inertia", "image"}, {}, {}};
  for (const auto& s : d.strata)
    list.rows.push_back({{s.name, s.alias, std::to_string(s.codim()), std::to_string(s.orbit_size), std::to_string(s.aut),
                          std::to_string(s.inertia), s.image.empty() ? "" : to_string(s.pushforward) + " " + s.image},
                         "", s.cite});
  for (const auto& f : d.audit)
    if (f.severity == "flag") list.notes.push_back(f.subject + ": " + f.message);
  r.sections.push_back(list);
  r.sections.push_back(check_section("Automorphism numbers", automorphism_checks(ws, tag)));
  if (tag != "M2") {
    r.sections.push_back(check_section("Pushforward coefficients", pi_pushforward_checks(ws, tag)));
    r.sections.push_back(check_section("Pullbacks of boundary classes", pullback_delta_checks(ws, tag)));
  }
  r.sections.push_back(check_section("Projection formula", projection_formula_checks(ws, tag)));
  return r;
}

// ---- theta ---------------------------------------------------------------------------------

Report theta_report(int g) {
  ThetaReport t = verify_bijections(g);
  Report r{"Theta characteristics and 2-torsion in genus " + std::to_string(g), {}};
  ReportSection s{"Partition classes", "Weierstrass partitions of a hyperelliptic curve", {"n", "classes", "Prym", "spin parity"}, {}, {}};
  for (const auto& row : t.rows)
    s.rows.push_back({{std::to_string(row.n), std::to_string(row.classes), yes(row.prym), row.spin ? parity_str(row.parity) : "-"}, "", ""});
  r.sections.push_back(s);
  ReportSection c{"Census", "F2 model of 2-torsion with its quadratic refinements", {"check", "expected", "computed"}, {}, {}};
  c.rows.push_back({{"Prym classes", std::to_string(t.nonzero_torsion), std::to_string(t.prym_total)}, pf(t.prym_total == t.nonzero_torsion), ""});
  c.rows.push_back({{"phi_R injective", "yes", yes(t.phi_injective)}, pf(t.phi_injective), ""});
  c.rows.push_back({{"phi_R onto nonzero points", "yes", yes(t.phi_surjective)}, pf(t.phi_surjective), ""});
  c.rows.push_back({{"even characteristics", std::to_string(t.arf_even), std::to_string(t.spin_even)}, pf(t.arf_even == t.spin_even), ""});
  c.rows.push_back({{"odd characteristics", std::to_string(t.arf_odd), std::to_string(t.spin_odd)}, pf(t.arf_odd == t.spin_odd), ""});
  c.rows.push_back({{"pairing nondegenerate", "yes", yes(t.nondegenerate)}, pf(t.nondegenerate), ""});
  r.sections.push_back(c);
  return r;
}

// ---- everything ----------------------------------------------------------------------------

Report full_report(Workspace& ws) {
  Report r{"Chow rings of genus-2 Prym and spin moduli spaces: reproduction report", {}};
  ReportSection k{"Keel rings", "Keel presentation by boundary divisors", {"n", "dims"}, {}, {}};
  for (int n = 4; n <= 6; ++n) k.rows.push_back({{std::to_string(n), dims_str(KeelRing(n).dims())}, "INFO", ""});
  r.sections.push_back(k);

  ReportSection inv{"Invariant rings", "Betti numbers of the quotient spaces", {"space", "dims", "group order"}, {}, {}};
  for (const auto& tag : ws.tags())
    inv.rows.push_back({{tag, dims_str(ws.invariants(tag).dims()), std::to_string(ws.space(tag).group->order())}, "INFO", space_cite(ws, tag)});
  r.sections.push_back(inv);

  ReportSection audit{"Dictionary audit", "consistency audit of the class dictionaries", {"space", "severity", "subject", "message"}, {}, {}};
  for (const auto& tag : ws.tags())
    for (const auto& f : ws.space(tag).audit) audit.rows.push_back({{tag, f.severity, f.subject, f.message}, "", ""});
  r.sections.push_back(audit);

  for (const auto& tag : ws.tags()) {
    Report x = intersections_report(ws, tag);
    for (auto& s : x.sections) s.title = tag + ": " + s.title;
    if (tag != "R2") x.sections.erase(x.sections.begin());  // calibration once
    append(r, x);
  }
  for (const auto& tag : {"R2", "S2plus", "S2minus"}) {
    Report x = verify_report(ws, tag, default_presentation(tag));
    for (auto& s : x.sections) s.title = std::string(tag) + " presentation: " + s.title;
    append(r, x);
  }

  ReportSection m05{"Relations pushed from M0,5", "pushforward of four-point relations along the extremity maps", {"relation", "space", "derived", "expected", "vanishes"}, {}, {}};
  for (const auto& d : derive_m05_relations(ws)) {
    m05.rows.push_back({{d.id, d.space, d.normalized.str() + " = 0", d.expected.str() + " = 0", yes(d.vanishes)}, pf(d.matches && d.vanishes), d.cite});
    if (!d.note.empty()) m05.notes.push_back(d.id + ": " + d.note);
  }
  r.sections.push_back(m05);
  for (const char* h : {"h0p", "h0alpha"}) {
    HMap map = load_hmap(ws, h);
    r.sections.push_back(check_section("Extremity map " + map.name + " onto " + map.space, hmap_entry_checks(ws, map), map.cite));
  }
  r.sections.push_back(check_section("Transversal intersections", transversality_checks(ws)));

  Report l = lambda_report(ws, "all");
  append(r, l);

  for (const auto& tag : ws.tags()) {
    Report x = strata_report(ws, tag, std::nullopt);
    for (auto& s : x.sections) s.title = tag + " strata: " + s.title;
    append(r, x);
  }
  for (int g = 1; g <= 6; ++g) {
    Report x = theta_report(g);
    for (auto& s : x.sections) s.title = "genus " + std::to_string(g) + ": " + s.title;
    append(r, x);
  }
  return r;
}

}  // namespace moduli
