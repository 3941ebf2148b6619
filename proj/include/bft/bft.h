/* C interface to the building library. Every function returns a bft_status;
 * on failure bft_last_error() describes the problem. Strings handed out by
 * the library are released with bft_free_string. */
#ifndef BFT_BFT_H
#define BFT_BFT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BFT_API __declspec(dllexport)
#else
#define BFT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bft_status {
  BFT_OK = 0,
  BFT_ERR_VIOLATION = 1, /* a mathematical check failed; reports are still produced */
  BFT_ERR_INPUT = 2,     /* malformed or unsupported input */
  BFT_ERR_INTERNAL = 3
} bft_status;

typedef struct bft_space bft_space;
typedef struct bft_chamber_map bft_chamber_map;

BFT_API const char* bft_version(void);
/* Message of the last failure on the calling thread, "" if none. */
BFT_API const char* bft_last_error(void);
BFT_API void bft_free_string(char* s);

BFT_API bft_status bft_space_create(int n, int q, bft_space** out);
BFT_API void bft_space_free(bft_space* s);
BFT_API int bft_space_dim(const bft_space* s);
BFT_API int bft_space_order(const bft_space* s);

/* The report functions below return BFT_ERR_VIOLATION together with the
 * report when a check inside it fails. */
BFT_API bft_status bft_space_info_json(const bft_space* s, char** out);
/* base: "1,0,0;0,1,0;0,0,1" or NULL for the standard base */
BFT_API bft_status bft_apartment_json(const bft_space* s, const char* base, char** out);
/* lemma: selector name or NULL for all; case_id 0 for every case */
BFT_API bft_status bft_lemmas_json(const bft_space* s, const char* lemma, int case_id, int force, char** out);

/* Chamber map induced by x -> frob^k(x) . M into PG(n, target_q), or into
 * its dual when dual is nonzero. A singular M is a violation. */
BFT_API bft_status bft_map_induce(const bft_space* s, const char* matrix, int target_q, int frobenius, int dual,
                                  bft_chamber_map** out);
BFT_API bft_status bft_map_from_json(const char* text, bft_chamber_map** out);
BFT_API bft_status bft_map_to_json(const bft_chamber_map* m, char** out);
BFT_API void bft_map_free(bft_chamber_map* m);

typedef struct bft_analyze_options {
  int sample;      /* 0 exhaustive, 1 seeded sample of k bases */
  size_t k;
  uint64_t seed;
  int force;       /* lift the exhaustive cap */
  const char* base; /* base whose sigma is reported, NULL for the first one */
} bft_analyze_options;

BFT_API bft_status bft_map_analyze_json(const bft_chamber_map* m, const bft_analyze_options* opts, char** out);

#ifdef __cplusplus
}
#endif

#endif
