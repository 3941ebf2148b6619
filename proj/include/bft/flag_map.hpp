#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bft/errors.hpp"
#include "bft/flags.hpp"

namespace bft {

/// A total map from the chambers of a source space to chambers of a target
/// space of the same dimension (the target field may be larger).
class ChamberMap {
 public:
  /// images[k] is the image of source->chambers()[k]. Throws InputError if
  /// the table is not total, dimensions differ, or an image is not a chamber
  /// of the target.
  ChamberMap(std::shared_ptr<const Building> source, ProjSpace target, std::vector<Chamber> images,
             bool dual_hint = false);

  const Building& source() const { return *source_; }
  std::shared_ptr<const Building> source_ptr() const { return source_; }
  const ProjSpace& target() const { return target_; }
  const std::vector<Chamber>& images() const { return images_; }
  const Chamber& image(std::size_t k) const { return images_.at(k); }
  /// Throws InputError if c is not a source chamber.
  const Chamber& image(const Chamber& c) const;
  /// Whether the map was produced as a correlation; informational only,
  /// analysis never consults it.
  bool dual_hint() const { return dual_hint_; }

 private:
  std::shared_ptr<const Building> source_;
  ProjSpace target_;
  std::vector<Chamber> images_;
  bool dual_hint_;
};

/// Chamber map of a strong embedding P -> P' (dual = false) or P -> P'*
/// (dual = true, the flag is read back in P' through annihilators).
ChamberMap induce(std::shared_ptr<const Building> source, const SemilinearMap& map, bool dual);

struct PreservationMode {
  enum class Kind { Exhaustive, Sample };
  Kind kind = Kind::Exhaustive;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool force = false;

  static PreservationMode exhaustive(bool force = false) { return {Kind::Exhaustive, 0, 0, force}; }
  static PreservationMode sample(std::size_t k, std::uint64_t seed) { return {Kind::Sample, k, seed, false}; }
};

struct ApartmentWitness {
  BasePoints base;
  std::vector<Chamber> image;
  std::string reason;
};

struct PreservationVerdict {
  bool pass = true;
  std::size_t tested = 0;
  std::uint64_t total = 0;
  std::optional<ApartmentWitness> witness;
};

/// Base of the target apartment whose chamber set is exactly `image`, if any.
std::optional<BasePoints> apartment_base_of(const ProjSpace& target, std::span<const Chamber> image);

/// Checks f(apartment(B)) is an apartment for every tested source base B.
/// The reported witness is the first failing base in enumeration order.
PreservationVerdict preserves_apartments(const ChamberMap& f, const PreservationMode& mode);

struct MainLemmaResult {
  Perm sigma;           // 0-based labels: f(A_i) = A'_{sigma[i]} or A'^{sigma[i]}
  int lemma_case = 1;   // 1: points to points, 2: points to hyperplanes
  /// Base of the image apartment: the source labels when it has the same
  /// points as the source base, else sorted.
  BasePoints target_base;
};

/// Recovers σ_f on one apartment by mapping complement sets, grouping them
/// into mutually adjacent families and intersecting stars. Throws
/// ViolationError when any step contradicts apartment preservation.
MainLemmaResult main_lemma_decompose(const ChamberMap& f, const BasePoints& base);

enum class EmbeddingKind { Direct, Dual };

/// g and h as point tables. Direct: g(p) in P', h(H) in P'* (coordinates of
/// the image hyperplane). Dual: g(p) in P'* and h(H) in P'.
struct Decomposition {
  EmbeddingKind kind;
  std::vector<Point> g;  // indexed like Building::points()
  std::vector<Point> h;  // indexed like Building::hyperplanes()
  std::vector<std::pair<BasePoints, MainLemmaResult>> sigma_by_apartment;
};

/// Raised when reconstruction finds a point or hyperplane star without a
/// common image component, or a mix of direct and dual behaviour.
class ReconstructionError : public ViolationError {
 public:
  ReconstructionError(const std::string& what, std::vector<Chamber> witness)
      : ViolationError(what), witness_(std::move(witness)) {}
  const std::vector<Chamber>& witness() const { return witness_; }

 private:
  std::vector<Chamber> witness_;
};

/// Reads g from the stars F(p) and h from the stars F(H), then checks
/// incidence of g(p) and h(H) for p in H, h = g*, and that every f(F) is
/// the flag induced by g. `bases` are the apartments for which σ_f is
/// recorded; when empty the lexicographically first base is used.
Decomposition reconstruct(const ChamberMap& f, std::span<const BasePoints> bases = {});

struct EmbeddingVerdict {
  bool pass = true;
  std::string failure;
};

/// Injective, collinearity preserving, at most one source line into each
/// target line, non-collinear triples stay non-collinear, bases go to bases.
/// Past the base enumeration cap (and without force) the last check runs on
/// 4096 bases drawn with a fixed seed.
EmbeddingVerdict verify_strong_embedding(const Building& source, const ProjSpace& target, std::span<const Point> g,
                                         bool force = false);

enum class Classification {
  CollineationDirect,
  CollineationDual,
  StrongEmbeddingDirect,
  StrongEmbeddingDual,
  NotApartmentPreserving,
};
const char* to_string(Classification c);

struct ClassifyResult {
  Classification classification = Classification::NotApartmentPreserving;
  PreservationVerdict preservation;
  std::optional<Decomposition> decomposition;
  std::string reason;                     // empty unless not apartment preserving
  std::vector<Chamber> witness_chambers;  // flags behind the failure, if any
  std::size_t image_points = 0;           // |g(P)|
  std::uint64_t target_points = 0;
};

ClassifyResult classify(const ChamberMap& f, const PreservationMode& mode, std::span<const BasePoints> bases = {});

/// f restricted to the chambers through p, read in the residues at p and
/// at the common point q' of their images. Throws ViolationError if the
/// images do not share a point.
ChamberMap restrict_to_residue(const ChamberMap& f, const Point& p);

}  // namespace bft
