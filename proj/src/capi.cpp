#include "bft/bft.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "bft/errors.hpp"
#include "bft/io.hpp"
#include "bft/reports.hpp"

struct bft_space {
  bft::ProjSpace space;
};

struct bft_chamber_map {
  bft::ChamberMap map;
};

namespace {

thread_local std::string last_error;

template <class F>
bft_status guarded(F&& fn) {
  last_error.clear();
  try {
    return fn();
  } catch (const bft::InputError& e) {
    last_error = e.what();
    return BFT_ERR_INPUT;
  } catch (const bft::UndefinedValueError& e) {
    last_error = e.what();
    return BFT_ERR_INPUT;
  } catch (const bft::ViolationError& e) {
    last_error = e.what();
    return BFT_ERR_VIOLATION;
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("invalid JSON: ") + e.what();
    return BFT_ERR_INPUT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BFT_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return BFT_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bft_status emit(const bft::RunReport& r, char** out) {
  *out = dup(r.to_json().dump(2));
  if (!r.pass) {
    last_error = r.command + ": a check failed";
    return BFT_ERR_VIOLATION;
  }
  return BFT_OK;
}

void require(const void* p, const char* what) {
  if (!p) throw bft::InputError(std::string(what) + " must not be null");
}

}  // namespace

extern "C" {

const char* bft_version(void) { return "1.0.0"; }

const char* bft_last_error(void) { return last_error.c_str(); }

void bft_free_string(char* s) { std::free(s); }

bft_status bft_space_create(int n, int q, bft_space** out) {
  return guarded([&] {
    require(out, "out");
    *out = new bft_space{bft::ProjSpace(n, q)};
    return BFT_OK;
  });
}

void bft_space_free(bft_space* s) { delete s; }

int bft_space_dim(const bft_space* s) { return s ? s->space.dim() : -1; }

int bft_space_order(const bft_space* s) { return s ? s->space.q() : -1; }

bft_status bft_space_info_json(const bft_space* s, char** out) {
  return guarded([&] {
    require(s, "space");
    require(out, "out");
    return emit(bft::space_report(s->space.dim(), s->space.q()), out);
  });
}

bft_status bft_apartment_json(const bft_space* s, const char* base, char** out) {
  return guarded([&] {
    require(s, "space");
    require(out, "out");
    return emit(bft::apartment_report(s->space.dim(), s->space.q(), base ? base : ""), out);
  });
}

bft_status bft_lemmas_json(const bft_space* s, const char* lemma, int case_id, int force, char** out) {
  return guarded([&] {
    require(s, "space");
    require(out, "out");
    bft::LemmaSelection sel;
    if (lemma) sel.lemma = lemma;
    if (case_id != 0) sel.case_id = case_id;
    return emit(bft::lemma_report(s->space.dim(), s->space.q(), sel, force != 0), out);
  });
}

bft_status bft_map_induce(const bft_space* s, const char* matrix, int target_q, int frobenius, int dual,
                          bft_chamber_map** out) {
  return guarded([&] {
    require(s, "space");
    require(matrix, "matrix");
    require(out, "out");
    const bft::ProjSpace target(s->space.dim(), target_q);
    const bft::FieldHom hom(s->space.field(), target.field(), frobenius);
    auto rows = bft::parse_rows(matrix, target.field());
    if (rows.size() != s->space.ambient() || rows.front().size() != target.ambient())
      throw bft::InputError("matrix must be " + std::to_string(s->space.ambient()) + " x " +
                            std::to_string(target.ambient()));
    const bft::SemilinearMap m(hom, std::move(rows));
    *out = new bft_chamber_map{bft::induce(std::make_shared<const bft::Building>(s->space), m, dual != 0)};
    return BFT_OK;
  });
}

bft_status bft_map_from_json(const char* text, bft_chamber_map** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new bft_chamber_map{bft::map_from_json(nlohmann::json::parse(text))};
    return BFT_OK;
  });
}

bft_status bft_map_to_json(const bft_chamber_map* m, char** out) {
  return guarded([&] {
    require(m, "map");
    require(out, "out");
    *out = dup(bft::map_to_json(m->map).dump());
    return BFT_OK;
  });
}

void bft_map_free(bft_chamber_map* m) { delete m; }

bft_status bft_map_analyze_json(const bft_chamber_map* m, const bft_analyze_options* opts, char** out) {
  return guarded([&] {
    require(m, "map");
    require(out, "out");
    const bft_analyze_options defaults{};
    const bft_analyze_options& o = opts ? *opts : defaults;
    const bft::PreservationMode mode = o.sample ? bft::PreservationMode::sample(o.k, o.seed)
                                                : bft::PreservationMode::exhaustive(o.force != 0);
    std::vector<bft::BasePoints> bases;
    if (o.base && *o.base) {
      const bft::ProjSpace& src = m->map.source().space();
      bases.emplace_back(src, bft::parse_points(o.base, src));
    }
    return emit(bft::analysis_report(m->map, mode, bases), out);
  });
}

}  // extern "C"
