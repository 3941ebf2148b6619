#include "bft/flag_map.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>

#include "bft/combinatorics.hpp"
#include "parallel.hpp"

namespace bft {
namespace {

std::string describe(const Point& p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.coords().size(); ++k) {
    if (k) s += ",";
    s += std::to_string(p.coords()[k]);
  }
  return s + ")";
}

std::string describe(const BasePoints& b) {
  std::string s = "{";
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (k) s += " ";
    s += describe(b[k]);
  }
  return s + "}";
}

/// Source points lying in a subspace.
std::vector<std::size_t> points_in(const Building& b, const PSubspace& sub) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < b.points().size(); ++k)
    if (sub.contains(b.points()[k])) out.push_back(k);
  return out;
}

PSubspace span_of_images(const ProjSpace& target, const std::vector<Point>& g, const std::vector<std::size_t>& idx) {
  std::vector<Point> pts;
  pts.reserve(idx.size());
  for (std::size_t k : idx) pts.push_back(g[k]);
  return span_points(target, pts);
}

std::optional<ApartmentWitness> check_base(const ChamberMap& f, const BasePoints& base) {
  const ProjSpace& s = f.source().space();
  std::vector<Chamber> image;
  for (const Perm& p : all_perms(s.dim())) image.push_back(f.image(chamber_of_perm(s, base, p)));
  if (apartment_base_of(f.target(), image)) return std::nullopt;
  return ApartmentWitness{base, std::move(image), "image of the apartment of " + describe(base) + " is not an apartment"};
}

std::vector<BasePoints> sample_bases(const Building& b, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, b.points().size() - 1);
  const ProjSpace& s = b.space();
  const std::uint64_t total = base_count(s);
  std::set<std::vector<Point>> seen;
  std::vector<BasePoints> out;
  std::size_t attempts = 0;
  while (out.size() < k && seen.size() < total && attempts < 100 * k + 1000) {
    ++attempts;
    std::vector<Point> pts;
    PSubspace span = PSubspace::empty(s);
    while (pts.size() < s.ambient()) {
      const Point& p = b.points()[pick(rng)];
      if (span.contains(p)) continue;
      pts.push_back(p);
      span = join(span, PSubspace::of(s.field(), p));
    }
    std::sort(pts.begin(), pts.end());
    if (seen.insert(pts).second) out.emplace_back(s, std::move(pts));
  }
  return out;
}

}  // namespace

ChamberMap::ChamberMap(std::shared_ptr<const Building> source, ProjSpace target, std::vector<Chamber> images,
                       bool dual_hint)
    : source_(std::move(source)), target_(target), images_(std::move(images)), dual_hint_(dual_hint) {
  if (!source_) throw InputError("chamber map without a source");
  if (target_.dim() != source_->space().dim())
    throw InputError("source and target must have the same projective dimension");
  if (images_.size() != source_->chambers().size())
    throw InputError("chamber map covers " + std::to_string(images_.size()) + " of " +
                     std::to_string(source_->chambers().size()) + " source chambers");
  for (const Chamber& c : images_) validate_chamber(target_, c);
}

const Chamber& ChamberMap::image(const Chamber& c) const {
  auto idx = source_->index_of(c);
  if (!idx) throw InputError("not a chamber of the source space");
  return images_[*idx];
}

ChamberMap induce(std::shared_ptr<const Building> source, const SemilinearMap& map, bool dual) {
  const ProjSpace& s = source->space();
  if (map.source_ambient() != s.ambient() || map.target_ambient() != s.ambient())
    throw InputError("the matrix must be " + std::to_string(s.ambient()) + " x " + std::to_string(s.ambient()));
  if (map.hom().source().order() != s.q()) throw InputError("field homomorphism does not start at GF(q)");
  const ProjSpace target(s.dim(), map.hom().target().order());
  std::vector<Chamber> images;
  images.reserve(source->chambers().size());
  for (const Chamber& c : source->chambers()) {
    Chamber out;
    const int n = s.dim();
    for (int k = 0; k < n; ++k) {
      if (!dual)
        out.chain.push_back(map.apply(c.chain[k]));
      else
        out.chain.push_back(dual_subspace(target, map.apply(c.chain[n - 1 - k])));
    }
    images.push_back(std::move(out));
  }
  return ChamberMap(std::move(source), target, std::move(images), dual);
}

std::optional<BasePoints> apartment_base_of(const ProjSpace& target, std::span<const Chamber> image) {
  std::set<Point> pts;
  for (const Chamber& c : image) pts.insert(c.point().as_point());
  if (pts.size() != target.ambient()) return std::nullopt;
  std::vector<Point> sorted(pts.begin(), pts.end());
  if (!is_independent(target, sorted)) return std::nullopt;
  BasePoints base(target, std::move(sorted));
  const Apartment ap(target, base);
  const std::set<Chamber> got(image.begin(), image.end());
  if (got.size() != image.size() || got.size() != ap.chambers().size()) return std::nullopt;
  for (const Chamber& c : ap.chambers())
    if (!got.contains(c)) return std::nullopt;
  return base;
}

PreservationVerdict preserves_apartments(const ChamberMap& f, const PreservationMode& mode) {
  PreservationVerdict v;
  std::vector<BasePoints> sampled;
  const std::vector<BasePoints>* bases = nullptr;
  if (mode.kind == PreservationMode::Kind::Exhaustive) {
    bases = &f.source().bases(mode.force);
    v.total = bases->size();
  } else {
    sampled = sample_bases(f.source(), mode.samples, mode.seed);
    bases = &sampled;
    v.total = base_count(f.source().space());
  }
  v.tested = bases->size();

  std::vector<std::optional<ApartmentWitness>> results(bases->size());
  detail::parallel_for(bases->size(), [&](std::size_t k) { results[k] = check_base(f, (*bases)[k]); });
  for (auto& r : results) {
    if (r) {
      v.pass = false;
      v.witness = std::move(r);
      break;
    }
  }
  return v;
}

MainLemmaResult main_lemma_decompose(const ChamberMap& f, const BasePoints& base) {
  const ProjSpace& s = f.source().space();
  const int n = s.dim();
  const Apartment ap(s, base);
  const ApartmentModel model(ap);

  std::vector<Chamber> image;
  for (const Chamber& c : ap.chambers()) image.push_back(f.image(c));
  auto target_base = apartment_base_of(f.target(), image);
  if (!target_base) throw ViolationError("image of the apartment of " + describe(base) + " is not an apartment");
  // same point set: keep the caller's labels so σ reads as a permutation of them
  if (f.target() == s && *target_base == base) target_base = base;
  const Apartment ap2(f.target(), *target_base);
  const ApartmentModel model2(ap2);

  std::vector<std::size_t> to_target(model.size());
  for (std::size_t c = 0; c < model.size(); ++c) to_target[c] = *ap2.index_of(image[c]);
  auto push = [&](const ChamberSet& set) {
    ChamberSet out = model2.none();
    for (auto c = set.find_first(); c != ChamberSet::npos; c = set.find_next(c)) out.set(to_target[c]);
    return out;
  };

  std::map<ChamberSet, IndexPair> target_complements;
  for (const IndexPair& p : all_pairs(n)) target_complements.emplace(complement_set(model2, p), p);

  std::map<IndexPair, IndexPair> pair_image;
  for (const IndexPair& p : all_pairs(n)) {
    auto it = target_complements.find(push(complement_set(model, p)));
    if (it == target_complements.end())
      throw ViolationError("f(C_" + std::to_string(p.i) + std::to_string(p.j) + ") is not a complement set");
    pair_image.emplace(p, it->second);
  }

  MainLemmaResult out{Perm(n + 1, -1), 0, *target_base};
  for (int i = 1; i <= n + 1; ++i) {
    std::vector<IndexPair> family;
    for (int j = 1; j <= n + 1; ++j)
      if (j != i) family.push_back(pair_image.at({i, j}));
    AdjacentFamilyType type{};
    try {
      type = classify_adjacent_family(n, family);
    } catch (const InputError& e) {
      throw ViolationError(std::string("images of adjacent complement sets: ") + e.what());
    }
    const bool row = type.orientation == AdjacentFamilyType::Orientation::Row;
    const ChamberSet expected = row ? point_family(model2, type.i) : hyperplane_family(model2, type.i);
    if (push(point_family(model, i)) != expected) throw ViolationError("star intersection does not match f(A_i)");
    const int kase = row ? 1 : 2;
    if (out.lemma_case == 0) out.lemma_case = kase;
    if (out.lemma_case != kase) throw ViolationError("mixed cases: some A_i go to point families, some to hyperplane families");
    out.sigma[i - 1] = type.i - 1;
  }
  std::vector<int> sorted = out.sigma;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k <= n; ++k)
    if (sorted[k] != k) throw ViolationError("σ_f is not a permutation");
  for (int i = 1; i <= n + 1; ++i) {
    const int t = out.sigma[i - 1] + 1;
    const ChamberSet expected = out.lemma_case == 1 ? hyperplane_family(model2, t) : point_family(model2, t);
    if (push(hyperplane_family(model, i)) != expected) throw ViolationError("f(A^i) does not match σ_f");
  }
  return out;
}

Decomposition reconstruct(const ChamberMap& f, std::span<const BasePoints> bases) {
  const Building& b = f.source();
  const ProjSpace& s = b.space();
  const ProjSpace& t = f.target();
  const int n = s.dim();
  const std::size_t np = b.points().size();

  std::vector<std::vector<std::size_t>> point_star(np), hyper_star(np);
  for (std::size_t c = 0; c < b.chambers().size(); ++c) {
    const Chamber& ch = b.chambers()[c];
    point_star[*b.point_index(ch.point().as_point())].push_back(c);
    hyper_star[*b.point_index(dual_point(s, ch.hyperplane()))].push_back(c);
  }

  // common image component over a star: 0 = point, n-1 = hyperplane
  auto common = [&](const std::vector<std::size_t>& star, int slot) {
    const PSubspace& first = f.image(star.front()).chain[slot];
    for (std::size_t c : star)
      if (f.image(c).chain[slot] != first) return false;
    return true;
  };
  auto star_witness = [&](const std::vector<std::size_t>& star) {
    const Chamber& f0 = f.image(star.front());
    std::optional<std::size_t> only_point, only_hyper;
    for (std::size_t c : star) {
      const bool sp = f.image(c).point() == f0.point();
      const bool sh = f.image(c).hyperplane() == f0.hyperplane();
      if (!sp && !sh) return std::vector<Chamber>{b.chambers()[star.front()], b.chambers()[c]};
      if (sp && !sh && !only_point) only_point = c;
      if (sh && !sp && !only_hyper) only_hyper = c;
    }
    if (only_point && only_hyper) return std::vector<Chamber>{b.chambers()[*only_point], b.chambers()[*only_hyper]};
    const std::size_t other = only_point ? *only_point : only_hyper ? *only_hyper : star.front();
    return std::vector<Chamber>{b.chambers()[star.front()], b.chambers()[other]};
  };

  Decomposition d{EmbeddingKind::Direct, {}, {}, {}};
  std::optional<EmbeddingKind> kind;
  std::size_t kind_source = 0;
  for (std::size_t p = 0; p < np; ++p) {
    const bool cp = common(point_star[p], 0);
    const bool ch = common(point_star[p], n - 1);
    if (!cp && !ch)
      throw ReconstructionError("images of the flags through " + describe(b.points()[p]) +
                                    " share neither a point nor a hyperplane",
                                star_witness(point_star[p]));
    if (cp && ch)
      throw ReconstructionError("images of the flags through " + describe(b.points()[p]) +
                                    " share both a point and a hyperplane; f is not injective",
                                {b.chambers()[point_star[p][0]], b.chambers()[point_star[p][1]]});
    const EmbeddingKind k = cp ? EmbeddingKind::Direct : EmbeddingKind::Dual;
    if (kind && *kind != k)
      throw ReconstructionError("points " + describe(b.points()[kind_source]) + " and " + describe(b.points()[p]) +
                                    " fall into different cases (direct and dual)",
                                {b.chambers()[point_star[kind_source].front()], b.chambers()[point_star[p].front()]});
    if (!kind) {
      kind = k;
      kind_source = p;
    }
    const Chamber& img = f.image(point_star[p].front());
    d.g.push_back(k == EmbeddingKind::Direct ? img.point().as_point() : dual_point(t, img.hyperplane()));
  }
  d.kind = *kind;

  const int h_slot = d.kind == EmbeddingKind::Direct ? n - 1 : 0;
  for (std::size_t hidx = 0; hidx < np; ++hidx) {
    const auto& star = hyper_star[hidx];
    if (!common(star, h_slot))
      throw ReconstructionError("images of the flags in hyperplane " + describe(b.points()[hidx]) +
                                    "* do not share the expected component",
                                star_witness(star));
    const Chamber& img = f.image(star.front());
    d.h.push_back(d.kind == EmbeddingKind::Direct ? dual_point(t, img.hyperplane()) : img.point().as_point());
  }

  // incidence of g(p) and h(H) for p in H, and h = g*
  for (std::size_t hidx = 0; hidx < np; ++hidx) {
    const auto in_h = points_in(b, b.hyperplanes()[hidx]);
    for (std::size_t p : in_h)
      if (dot(t.field(), d.g[p].coords(), d.h[hidx].coords()) != 0)
        throw ReconstructionError("g(p) and h(H) are not incident for p = " + describe(b.points()[p]),
                                  {b.chambers()[point_star[p].front()], b.chambers()[hyper_star[hidx].front()]});
    const PSubspace g_span = span_of_images(t, d.g, in_h);
    if (g_span.pdim() != n - 1 || dual_point(t, g_span) != d.h[hidx])
      throw ReconstructionError("h differs from g* at hyperplane " + describe(b.points()[hidx]) + "*",
                                {b.chambers()[hyper_star[hidx].front()]});
  }

  // every image flag is the flag induced by g
  for (std::size_t c = 0; c < b.chambers().size(); ++c) {
    const Chamber& src = b.chambers()[c];
    for (int k = 0; k < n; ++k) {
      const int from = d.kind == EmbeddingKind::Direct ? k : n - 1 - k;
      PSubspace expect = span_of_images(t, d.g, points_in(b, src.chain[from]));
      if (d.kind == EmbeddingKind::Dual) expect = dual_subspace(t, expect);
      if (expect != f.image(c).chain[k])
        throw ReconstructionError("f(F) is not the flag induced by g", {src});
    }
  }

  std::vector<BasePoints> chosen(bases.begin(), bases.end());
  if (chosen.empty()) chosen.push_back(extend_to_base(s, {}));
  for (const BasePoints& base : chosen) d.sigma_by_apartment.emplace_back(base, main_lemma_decompose(f, base));
  return d;
}

EmbeddingVerdict verify_strong_embedding(const Building& source, const ProjSpace& target, std::span<const Point> g,
                                         bool force) {
  const ProjSpace& s = source.space();
  const auto& pts = source.points();
  if (g.size() != pts.size()) return {false, "point map is not total"};
  for (const Point& p : g)
    if (p.ambient() != target.ambient()) return {false, "image point outside the target space"};
  if (std::set<Point>(g.begin(), g.end()).size() != g.size()) return {false, "not injective"};

  std::set<PSubspace> lines;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t c = a + 1; c < pts.size(); ++c) {
      const Point two[] = {pts[a], pts[c]};
      lines.insert(span_points(s, two));
    }
  std::set<PSubspace> target_lines;
  for (const PSubspace& line : lines) {
    std::vector<Point> img;
    for (std::size_t k : points_in(source, line)) img.push_back(g[k]);
    const PSubspace span = span_points(target, img);
    if (span.pdim() != 1) return {false, "a line is not mapped into a line"};
    if (!target_lines.insert(span).second) return {false, "two lines are mapped into the same line"};
  }

  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      for (std::size_t c = b + 1; c < pts.size(); ++c) {
        const Point src[] = {pts[a], pts[b], pts[c]};
        if (!is_independent(s, src)) continue;
        const Point img[] = {g[a], g[b], g[c]};
        if (!is_independent(target, img)) return {false, "a non-collinear triple becomes collinear"};
      }

  // beyond the enumeration cap a fixed-seed sample stands in for the full sweep
  const bool sweep = force || within_base_cap(s);
  const std::vector<BasePoints> sampled = sweep ? std::vector<BasePoints>{} : sample_bases(source, 4096, 0);
  for (const BasePoints& base : sweep ? source.bases(force) : sampled) {
    std::vector<Point> img;
    for (const Point& p : base.points()) img.push_back(g[*source.point_index(p)]);
    if (!is_independent(target, img)) return {false, "the base " + describe(base) + " is not mapped to a base"};
  }
  return {};
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::CollineationDirect:
      return "collineation-direct";
    case Classification::CollineationDual:
      return "collineation-dual";
    case Classification::StrongEmbeddingDirect:
      return "strong-embedding-direct";
    case Classification::StrongEmbeddingDual:
      return "strong-embedding-dual";
    case Classification::NotApartmentPreserving:
      return "not-apartment-preserving";
  }
  return "unknown";
}

ClassifyResult classify(const ChamberMap& f, const PreservationMode& mode, std::span<const BasePoints> bases) {
  ClassifyResult r;
  const Building& b = f.source();
  const ProjSpace& s = b.space();
  r.target_points = subspace_count(f.target(), 0);

  std::map<Chamber, std::size_t> seen;
  for (std::size_t c = 0; c < f.images().size(); ++c) {
    auto [it, fresh] = seen.emplace(f.image(c), c);
    if (fresh) continue;
    const Chamber& c1 = b.chambers()[it->second];
    const Chamber& c2 = b.chambers()[c];
    BasePoints base = common_apartment(s, c1, c2);
    r.preservation.pass = false;
    r.preservation.tested = 1;
    r.preservation.total = base_count(s);
    r.preservation.witness = check_base(f, base);
    r.reason = "f is not injective: two chambers share an image, so the apartment of " + describe(base) +
               " is not mapped onto an apartment";
    r.witness_chambers = {c1, c2};
    return r;
  }

  r.preservation = preserves_apartments(f, mode);
  if (!r.preservation.pass) {
    r.reason = r.preservation.witness->reason;
    return r;
  }

  try {
    r.decomposition = reconstruct(f, bases);
  } catch (const ReconstructionError& e) {
    r.reason = e.what();
    r.witness_chambers = e.witness();
    return r;
  } catch (const ViolationError& e) {
    r.reason = e.what();
    return r;
  }

  const Decomposition& d = *r.decomposition;
  if (auto v = verify_strong_embedding(b, f.target(), d.g, mode.force); !v.pass) {
    r.reason = "reconstructed point map is not a strong embedding: " + v.failure;
    r.decomposition.reset();
    return r;
  }
  r.image_points = std::set<Point>(d.g.begin(), d.g.end()).size();
  const bool onto = r.image_points == r.target_points;
  const bool direct = d.kind == EmbeddingKind::Direct;
  if (onto)
    r.classification = direct ? Classification::CollineationDirect : Classification::CollineationDual;
  else
    r.classification = direct ? Classification::StrongEmbeddingDirect : Classification::StrongEmbeddingDual;
  return r;
}

ChamberMap restrict_to_residue(const ChamberMap& f, const Point& p) {
  const ProjSpace& s = f.source().space();
  const Residue here(s, p);

  std::optional<Point> image_point;
  for (const Chamber& c : f.source().chambers()) {
    if (!c.point().contains(p)) continue;
    const Point q = f.image(c).point().as_point();
    if (image_point && *image_point != q)
      throw ViolationError("images of the flags through " + describe(p) + " do not share a point");
    image_point = q;
  }
  const Residue there(f.target(), *image_point);

  auto quotient = std::make_shared<const Building>(here.quotient());
  std::vector<Chamber> images;
  for (const Chamber& qc : quotient->chambers()) {
    Chamber lifted{{PSubspace::of(s.field(), p)}};
    for (const PSubspace& sub : qc.chain) lifted.chain.push_back(here.lift(sub));
    const Chamber& img = f.image(lifted);
    Chamber projected;
    for (std::size_t k = 1; k < img.chain.size(); ++k) projected.chain.push_back(there.project(img.chain[k]));
    images.push_back(std::move(projected));
  }
  return ChamberMap(std::move(quotient), there.quotient(), std::move(images), f.dual_hint());
}

}  // namespace bft
