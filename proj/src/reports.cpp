#include "bft/reports.hpp"

#include <map>
#include <set>

#include "bft/combinatorics.hpp"
#include "bft/errors.hpp"
#include "bft/io.hpp"

namespace bft {
namespace {

using nlohmann::json;

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int t = 2; t <= k; ++t) f *= static_cast<std::uint64_t>(t);
  return f;
}

json perm_json(const Perm& p) {
  json out = json::array();
  for (int v : p) out.push_back(v + 1);
  return out;
}

/// Enumerated |C_a ∩ C_b| values grouped by disposition case.
std::map<int, std::set<std::size_t>> enumerate_counts(const ApartmentModel& m) {
  std::map<int, std::set<std::size_t>> out;
  const auto pairs = all_pairs(m.n());
  std::vector<ChamberSet> comp;
  for (const IndexPair& p : pairs) comp.push_back(complement_set(m, p));
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (a != b) out[disposition_of(pairs[a], pairs[b])].insert((comp[a] & comp[b]).count());
  return out;
}

json values_json(const std::set<std::size_t>& vals) {
  if (vals.size() == 1) return *vals.begin();
  return json(std::vector<std::size_t>(vals.begin(), vals.end()));
}

void check_counts(RunReport& r, const ApartmentModel& m, std::optional<int> only) {
  const auto counts = enumerate_counts(m);
  for (int c = 1; c <= 6; ++c) {
    if (only && *only != c) continue;
    const std::string name = "n" + std::to_string(c);
    const auto it = counts.find(c);
    std::uint64_t expected = 0;
    try {
      expected = closed_form(m.n(), c);
    } catch (const UndefinedValueError& e) {
      r.add_check(name, "undefined", it == counts.end() ? json("undefined") : values_json(it->second),
                  it == counts.end());
      r.extra["notes"].push_back(e.what());
      continue;
    }
    const bool ok = it != counts.end() && it->second == std::set<std::size_t>{expected};
    r.add_check(name, expected, it == counts.end() ? json(nullptr) : values_json(it->second), ok);
    // The published n6 overcounts by 2(n-1)!: A^k_i and A^j_m miss R_km too.
    if (c == 6 && !ok && it != counts.end() && it->second == std::set<std::size_t>{factorial(m.n() + 1) / 4})
      r.extra["notes"].push_back("enumerated n6 equals (n+1)!/4 = closed form - 2(n-1)!");
  }
}

void check_equalities(RunReport& r, const ApartmentModel& m) {
  auto counts = enumerate_counts(m);
  r.add_check("n2 = n3", values_json(counts[2]), values_json(counts[3]), counts[2] == counts[3]);
  r.add_check("n4 = n5", values_json(counts[4]), values_json(counts[5]), counts[4] == counts[5]);
}

void check_distinctness(RunReport& r, const ApartmentModel& m) {
  auto counts = enumerate_counts(m);
  auto single = [&](int c) -> std::optional<std::int64_t> {
    if (counts[c].size() != 1) return std::nullopt;
    return static_cast<std::int64_t>(*counts[c].begin());
  };
  const auto n2 = single(2);
  std::vector<int> others{1, 4};
  if (m.n() >= 3) others.push_back(6);
  for (int c : others) {
    const auto v = single(c);
    r.add_check("n2 != n" + std::to_string(c), "distinct",
                json{{"n2", n2 ? json(*n2) : json(nullptr)}, {"n" + std::to_string(c), v ? json(*v) : json(nullptr)}},
                n2 && v && *n2 != *v);
  }
  if (m.n() >= 5) {
    const std::int64_t n = m.n();
    const std::int64_t expected = static_cast<std::int64_t>(factorial(m.n() - 1)) * (n * n + n - 24) / 12;
    const auto n6 = single(6);
    const bool ok = n2 && n6 && *n2 - *n6 == expected;
    r.add_check("n2 - n6 = (n-1)!(n^2+n-24)/12", expected, n2 && n6 ? json(*n2 - *n6) : json(nullptr), ok);
  }
}

void check_decomposition(RunReport& r, const ApartmentModel& m) {
  std::size_t good = 0;
  const auto pairs = all_pairs(m.n());
  for (const IndexPair& p : pairs) {
    const ChamberSet head = point_family(m, p.i) | hyperplane_family(m, p.j);
    const ChamberSet res = residual(m, p);
    if (complement_set(m, p) == (head | res) && (head & res).none()) ++good;
  }
  r.add_check("C_ij = (A_i u A^j) disjoint-union R_ij", pairs.size(), good, good == pairs.size());
}

void check_residual(RunReport& r, const ApartmentModel& m) {
  const int n = m.n();
  if (n == 2) {
    std::size_t total = 0;
    for (const IndexPair& p : all_pairs(n)) total += residual(m, p).count();
    r.add_check("R_ij empty at n = 2", 0, total, total == 0);
    return;
  }
  const std::uint64_t mixed = factorial(n - 1) / 2;
  const std::uint64_t single = static_cast<std::uint64_t>(n - 2) * factorial(n - 1) / 2;
  std::set<std::size_t> mixed_vals, point_vals, hyper_vals;
  for (const IndexPair& p : all_pairs(n)) {
    const ChamberSet res = residual(m, p);
    for (int k = 1; k <= n + 1; ++k) {
      if (k == p.i || k == p.j) continue;
      point_vals.insert((point_family(m, k) & res).count());
      hyper_vals.insert((hyperplane_family(m, k) & res).count());
      for (int mm = 1; mm <= n + 1; ++mm) {
        if (mm == p.i || mm == p.j || mm == k) continue;
        mixed_vals.insert((subfamily(m, {FamilyLabel::Kind::Mixed, mm, k}) & res).count());
      }
    }
  }
  r.add_check("|A^k_m n R_ij| = (n-1)!/2", mixed, values_json(mixed_vals), mixed_vals == std::set<std::size_t>{mixed});
  r.add_check("|A_k n R_ij| = (n-2)(n-1)!/2", single, values_json(point_vals),
              point_vals == std::set<std::size_t>{single});
  r.add_check("|A^k n R_ij| = (n-2)(n-1)!/2", single, values_json(hyper_vals),
              hyper_vals == std::set<std::size_t>{single});
}

void check_complement(RunReport& r, const ApartmentModel& m) {
  const auto pairs = all_pairs(m.n());
  std::size_t good = 0;
  for (const IndexPair& p : pairs) {
    const IndexPair q{p.j, p.i};
    if (complement_image(m, complement_set(m, p)) == complement_set(m, q) &&
        complement_image(m, residual(m, p)) == residual(m, q))
      ++good;
  }
  r.add_check("(C_ij)^c = C_ji and (R_ij)^c = R_ji", pairs.size(), good, good == pairs.size());
  int fam = 0;
  for (int i = 1; i <= m.n() + 1; ++i)
    if (complement_image(m, point_family(m, i)) == hyperplane_family(m, i)) ++fam;
  r.add_check("(A_i)^c = A^i", m.n() + 1, fam, fam == m.n() + 1);
}

void check_stars(RunReport& r, const ApartmentModel& m) {
  int good = 0;
  for (int i = 1; i <= m.n() + 1; ++i) {
    const auto st = star_intersections(m, i);
    if (st.rows == point_family(m, i) && st.columns == hyperplane_family(m, i)) ++good;
  }
  r.add_check("intersections of C_ij and C_ji over j are A_i and A^i", m.n() + 1, good, good == m.n() + 1);
}

void check_adjacent_families(RunReport& r, const ApartmentModel& m) {
  const int n = m.n();
  const auto pairs = all_pairs(n);
  std::size_t families = 0, classified = 0;
  std::vector<IndexPair> pick;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (pick.size() == static_cast<std::size_t>(n)) {
      ++families;
      try {
        classify_adjacent_family(n, pick);
        ++classified;
      } catch (const ViolationError&) {
      }
      return;
    }
    for (std::size_t k = from; k < pairs.size(); ++k) {
      bool ok = true;
      for (const IndexPair& q : pick) ok = ok && complement_adjacent(q, pairs[k]);
      if (!ok) continue;
      pick.push_back(pairs[k]);
      self(self, k + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  r.add_check("mutually adjacent n-families", 2 * (n + 1), families, families == static_cast<std::size_t>(2 * (n + 1)));
  r.add_check("families of row or column type", families, classified, classified == families);
}

void check_maximal_inexact(RunReport& r, const ApartmentModel& m, const Building* b) {
  const auto pairs = all_pairs(m.n());
  std::set<ChamberSet> xs;
  for (const IndexPair& p : pairs) xs.insert(max_inexact(m, p));
  r.add_check("distinct X_ij", pairs.size(), xs.size(), xs.size() == pairs.size());

  std::size_t maximal = 0;
  for (const ChamberSet& x : xs) {
    bool ok = !is_exact_by_trace(m, x);
    for (std::size_t c = 0; c < m.size() && ok; ++c) {
      if (x[c]) continue;
      ChamberSet y = x;
      y.set(c);
      ok = is_exact_by_trace(m, y);
    }
    if (ok) ++maximal;
  }
  r.add_check("X_ij maximal inexact", xs.size(), maximal, maximal == xs.size());

  if (m.n() > 2) return;
  // exhaustive over all 2^6 subsets of a plane apartment
  const std::size_t total = std::size_t{1} << m.size();
  std::size_t agree = 0, contained = 0;
  std::set<ChamberSet> found;
  auto set_of = [&](std::size_t code) {
    ChamberSet s(m.size());
    for (std::size_t c = 0; c < m.size(); ++c) s[c] = (code >> c) & 1;
    return s;
  };
  for (std::size_t code = 0; code < total; ++code) {
    const ChamberSet s = set_of(code);
    const bool inexact = !is_exact_by_trace(m, s);
    bool inside = false;
    for (const ChamberSet& x : xs) inside = inside || s.is_subset_of(x);
    if (inexact == inside) ++contained;
    if (b && inexact == !is_exact_by_apartments(*b, m, s)) ++agree;
    if (!inexact) continue;
    bool max = true;
    for (std::size_t c = 0; c < m.size() && max; ++c)
      if (!s[c]) max = is_exact_by_trace(m, set_of(code | (std::size_t{1} << c)));
    if (max) found.insert(s);
  }
  r.add_check("inexact iff inside some X_ij", total, contained, contained == total);
  r.add_check("maximal inexact subsets are the X_ij", xs.size(), found.size(), found == xs);
  if (b) r.add_check("trace and apartment exactness deciders agree", total, agree, agree == total);
}

}  // namespace

void RunReport::add_check(const std::string& name, const json& expected, const json& actual, bool ok) {
  checks.push_back(json{{"name", name}, {"expected", expected}, {"actual", actual}, {"pass", ok}});
  pass = pass && ok;
}

json RunReport::to_json() const {
  json out{{"command", command}, {"parameters", parameters}, {"checks", checks}, {"pass", pass}};
  for (auto it = extra.begin(); it != extra.end(); ++it) out[it.key()] = it.value();
  return out;
}

RunReport space_report(int n, int q) {
  const ProjSpace s(n, q);
  RunReport r;
  r.command = "space";
  r.parameters = {{"n", n}, {"q", q}};
  json subspaces = json::array();
  for (int k = 0; k < n; ++k) subspaces.push_back(subspace_count(s, k));
  const std::string& poly = s.field().polynomial();
  r.extra["field"] = {
      {"q", q}, {"characteristic", s.field().characteristic()}, {"polynomial", poly.empty() ? json() : json(poly)}};
  r.extra["counts"] = {{"points", subspace_count(s, 0)},
                       {"lines", subspace_count(s, 1)},
                       {"hyperplanes", subspace_count(s, n - 1)},
                       {"subspaces_by_dimension", subspaces},
                       {"chambers", chamber_count(s)},
                       {"apartments", base_count(s)},
                       {"chambers_per_apartment", factorial(n + 1)}};
  return r;
}

RunReport apartment_report(int n, int q, const std::string& base_literal) {
  const ProjSpace s(n, q);
  if (n > 6) throw UnsupportedError("apartment listing supports n <= 6");
  const BasePoints base = base_literal.empty() ? BasePoints::standard(s) : BasePoints(s, parse_points(base_literal, s));
  const Apartment ap(s, base);
  RunReport r;
  r.command = "apartment";
  r.parameters = {{"n", n}, {"q", q}, {"base", format_rows([&] {
                                                 std::vector<Vec> rows;
                                                 for (const Point& p : base.points()) rows.push_back(p.coords());
                                                 return rows;
                                               }())}};
  json chambers = json::array();
  for (std::size_t k = 0; k < ap.chambers().size(); ++k)
    chambers.push_back(json{{"perm", perm_json(ap.perms()[k])}, {"chamber", to_json(ap.chambers()[k])}});
  r.extra["base"] = to_json(base);
  r.extra["dual_base"] = to_json(dual_base(s, base));
  r.extra["chambers"] = std::move(chambers);
  const auto trace = trace_of(ap.chambers());
  r.add_check("chambers", factorial(n + 1), ap.chambers().size(), ap.chambers().size() == factorial(n + 1));
  const std::size_t expected_trace = (std::size_t{1} << (n + 1)) - 2;
  r.add_check("trace size", expected_trace, trace.size(), trace.size() == expected_trace);
  return r;
}

RunReport lemma_report(int n, int q, const LemmaSelection& sel, bool force) {
  const ProjSpace s(n, q);
  if (n > 5 && !force) throw UnsupportedError("lemma sweeps are capped at n <= 5; use --force to override");
  static const std::set<std::string> known{"all",          "counts",   "equalities", "distinctness",
                                           "decomposition", "residual", "complement", "stars",
                                           "adjacent-families", "maximal-inexact"};
  if (!known.contains(sel.lemma)) throw InputError("unknown lemma selector '" + sel.lemma + "'");
  if (sel.case_id && (*sel.case_id < 1 || *sel.case_id > 6)) throw InputError("case must be in 1..6");

  RunReport r;
  r.command = "lemmas";
  r.parameters = {{"n", n}, {"q", q}, {"lemma", sel.lemma}};
  if (sel.case_id) r.parameters["case"] = *sel.case_id;
  r.extra["notes"] = json::array();

  const Apartment ap(s, BasePoints::standard(s));
  const ApartmentModel m(ap);
  std::optional<Building> building;
  if (n == 2 && within_base_cap(s)) building.emplace(s);

  const bool all = sel.lemma == "all";
  if (sel.case_id) {
    check_counts(r, m, sel.case_id);
    return r;
  }
  if (all || sel.lemma == "counts") check_counts(r, m, std::nullopt);
  if (all || sel.lemma == "equalities") check_equalities(r, m);
  if (all || sel.lemma == "distinctness") check_distinctness(r, m);
  if (all || sel.lemma == "decomposition") check_decomposition(r, m);
  if (all || sel.lemma == "residual") check_residual(r, m);
  if (all || sel.lemma == "complement") check_complement(r, m);
  if (all || sel.lemma == "stars") check_stars(r, m);
  if (all || sel.lemma == "adjacent-families") check_adjacent_families(r, m);
  if (all || sel.lemma == "maximal-inexact") check_maximal_inexact(r, m, building ? &*building : nullptr);
  return r;
}

RunReport analysis_report(const ChamberMap& f, const PreservationMode& mode, const std::vector<BasePoints>& bases) {
  RunReport r;
  r.command = "map analyze";
  r.parameters = {{"mode", mode.kind == PreservationMode::Kind::Exhaustive ? "exhaustive" : "sample"}};
  if (mode.kind == PreservationMode::Kind::Sample) {
    r.parameters["k"] = mode.samples;
    r.parameters["seed"] = mode.seed;
  }
  r.extra["source"] = {{"n", f.source().space().dim()}, {"q", f.source().space().q()}};
  r.extra["target"] = {{"n", f.target().dim()}, {"q", f.target().q()}};

  const ClassifyResult c = classify(f, mode, bases);
  r.extra["classification"] = to_string(c.classification);
  json pres{{"pass", c.preservation.pass}, {"tested", c.preservation.tested}, {"total", c.preservation.total}};
  if (c.preservation.witness) {
    json img = json::array();
    for (const Chamber& ch : c.preservation.witness->image) img.push_back(to_json(ch));
    pres["witness"] = {{"base", to_json(c.preservation.witness->base)}, {"image", std::move(img)}};
  }
  r.extra["preservation"] = std::move(pres);
  r.add_check("apartments preserved", true, c.preservation.pass, c.preservation.pass);

  if (c.classification == Classification::NotApartmentPreserving) {
    r.extra["reason"] = c.reason;
    json wit = json::array();
    for (const Chamber& ch : c.witness_chambers) wit.push_back(to_json(ch));
    r.extra["witness_chambers"] = std::move(wit);
    r.pass = false;
    return r;
  }

  const Decomposition& d = *c.decomposition;
  json g = json::array(), h = json::array();
  for (std::size_t k = 0; k < d.g.size(); ++k)
    g.push_back(json::array({to_json(f.source().points()[k]), to_json(d.g[k])}));
  for (std::size_t k = 0; k < d.h.size(); ++k)
    h.push_back(json::array({to_json(f.source().points()[k]), to_json(d.h[k])}));
  json sig = json::array();
  for (const auto& [base, res] : d.sigma_by_apartment)
    sig.push_back(json{{"base", to_json(base)},
                       {"target_base", to_json(res.target_base)},
                       {"sigma", perm_json(res.sigma)},
                       {"case", res.lemma_case}});
  r.extra["decomposition"] = {{"kind", d.kind == EmbeddingKind::Direct ? "direct" : "dual"},
                              {"g", std::move(g)},
                              {"h", std::move(h)},
                              {"sigma_by_apartment", std::move(sig)}};
  r.extra["image_points"] = c.image_points;
  r.extra["target_points"] = c.target_points;
  r.add_check("g is a strong embedding", true, true, true);
  return r;
}

}  // namespace bft
