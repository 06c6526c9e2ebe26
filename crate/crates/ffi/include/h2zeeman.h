#ifndef H2ZEEMAN_H
#define H2ZEEMAN_H

/* Generated with cbindgen:0.27.0 */

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stdint.h>

/*
 Result code of every fallible call.
 */
typedef enum H2zStatus {
  H2Z_STATUS_OK = 0,
  H2Z_STATUS_NULL_POINTER = 1,
  H2Z_STATUS_INVALID_ARGUMENT = 2,
  H2Z_STATUS_QUANTUM_NUMBER = 3,
  H2Z_STATUS_DOMAIN = 4,
  H2Z_STATUS_VALIDATION = 5,
  H2Z_STATUS_DATA_MISSING = 6,
  H2Z_STATUS_MISSING_MIXING = 7,
  H2Z_STATUS_INVERSION = 8,
  H2Z_STATUS_FORBIDDEN = 9,
  H2Z_STATUS_PARSE = 10,
  H2Z_STATUS_IO = 11,
  H2Z_STATUS_PANIC = 12,
} H2zStatus;

/*
 Opaque model: constants, orbital data and mixing coefficients.
 */
typedef struct H2zModel H2zModel;

/*
 g-factor breakdown of one level.
 */
typedef struct H2zGFactor {
  double g1;
  double g2;
  double g3;
  double total;
  bool mixed;
} H2zGFactor;

/*
 A model with the bundled constants and data. Never returns null.
 */
struct H2zModel *h2z_model_new_default(void);

/*
 Builds a model from files; any path may be null to use the bundled data.

 # Safety
 Non-null paths must be NUL-terminated strings; `out` must be writable.
 */
enum H2zStatus h2z_model_load(const char *constants_path,
                              const char *orbital_path,
                              const char *mixing_path,
                              bool allow_extended,
                              struct H2zModel **out);

/*
 Releases a model; null is ignored.

 # Safety
 `model` must come from this library and not be used afterwards.
 */
void h2z_model_free(struct H2zModel *model);

/*
 Static description of a status code (an `H2zStatus` value).
 Unknown codes give "unknown status".
 */
const char *h2z_status_message(int32_t code);

/*
 Detailed message of the last failed call on this thread ("" after success).
 Valid until the next call into the library from the same thread.
 */
const char *h2z_last_error_message(void);

/*
 `{j1 j2 j3; j4 j5 j6}` from doubled arguments; 0 for inadmissible triads.

 # Safety
 `out` must be writable.
 */
enum H2zStatus h2z_wigner_6j(uint32_t tj1,
                             uint32_t tj2,
                             uint32_t tj3,
                             uint32_t tj4,
                             uint32_t tj5,
                             uint32_t tj6,
                             double *out);

/*
 `(j1 j2 j3; m1 m2 m3)` from doubled arguments.

 # Safety
 `out` must be writable.
 */
enum H2zStatus h2z_wigner_3j(uint32_t tj1,
                             uint32_t tj2,
                             uint32_t tj3,
                             int32_t tm1,
                             int32_t tm2,
                             int32_t tm3,
                             double *out);

/*
 `⟨j1 m1 j2 m2 | J M⟩` from doubled arguments.

 # Safety
 `out` must be writable.
 */
enum H2zStatus h2z_clebsch_gordan(uint32_t tj1,
                                  int32_t tm1,
                                  uint32_t tj2,
                                  int32_t tm2,
                                  uint32_t tj,
                                  int32_t tm,
                                  double *out);

/*
 g-factor of level `(v, L, F, J)`; `F` is `F~` for mixed levels and 1/2 for even `L`.

 # Safety
 `model` must be a live handle and `out` writable.
 */
enum H2zStatus h2z_g_factor(const struct H2zModel *model,
                            uint32_t v,
                            uint32_t l,
                            uint32_t twice_f,
                            uint32_t twice_j,
                            struct H2zGFactor *out);

/*
 Rotational g-factor of `(v, L)`.

 # Safety
 `model` must be a live handle and `out` writable.
 */
enum H2zStatus h2z_g_rot(const struct H2zModel *model, uint32_t v, uint32_t l, double *out);

/*
 σ⁺ line-center shift (Hz) of the homologous line `v_lower → v_upper`.
 Returns `Forbidden` for `J = 1/2`.

 # Safety
 `model` must be a live handle and `out` writable.
 */
enum H2zStatus h2z_sigma_shift(const struct H2zModel *model,
                               uint32_t v_lower,
                               uint32_t v_upper,
                               uint32_t l,
                               uint32_t twice_f,
                               uint32_t twice_j,
                               double field_tesla,
                               double *out);

/*
 Signed π splitting (Hz) of the homologous line `v_lower → v_upper`.

 # Safety
 `model` must be a live handle and `out` writable.
 */
enum H2zStatus h2z_pi_splitting(const struct H2zModel *model,
                                uint32_t v_lower,
                                uint32_t v_upper,
                                uint32_t l,
                                uint32_t twice_f,
                                uint32_t twice_j,
                                double field_tesla,
                                double *out);

#endif  /* H2ZEEMAN_H */
