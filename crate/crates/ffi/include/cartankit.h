#ifndef CARTANKIT_H
#define CARTANKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every `ck_*` call.
typedef enum CkStatus {
  CK_STATUS_OK = 0,
  CK_STATUS_NULL_POINTER = 1,
  CK_STATUS_INVALID_UTF8 = 2,
  CK_STATUS_PARSE = 3,
  CK_STATUS_SHAPE = 4,
  CK_STATUS_CONTRACT = 5,
  CK_STATUS_NOT_CLOSED = 6,
  CK_STATUS_DEPENDENT_BASIS = 7,
  CK_STATUS_CLOSURE_CAP_EXCEEDED = 8,
  CK_STATUS_PANIC = 9,
} CkStatus;

// Opaque Cartan data. Create with [`ck_cartan_data_from_json`] or
// [`ck_space_form`], release with [`ck_cartan_data_free`].
typedef struct CkCartanData CkCartanData;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses Cartan data from a NUL-terminated JSON document.
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a writable pointer.
enum CkStatus ck_cartan_data_from_json(const char *json, struct CkCartanData **out);

// Builds the space form of dimension `n` and curvature `kappa`, a decimal
// rational such as `"-3/2"`. Pass `p = q = 0` for the Riemannian case,
// otherwise `p + q` must equal `n` and `p` counts the negative directions.
//
// # Safety
// `kappa` must be a valid NUL-terminated string and `out` a writable pointer.
enum CkStatus ck_space_form(uintptr_t n,
                            const char *kappa,
                            uintptr_t p,
                            uintptr_t q,
                            struct CkCartanData **out);

// Serializes the handle back to JSON. Free the result with [`ck_string_free`].
//
// # Safety
// `h` must be a live handle and `out` a writable pointer.
enum CkStatus ck_cartan_data_to_json(const struct CkCartanData *h, char **out);

// Writes `n` and `dim 𝔤` of the data.
//
// # Safety
// `h` must be a live handle; `n` and `g_dim` writable pointers.
enum CkStatus ck_cartan_data_dims(const struct CkCartanData *h, uintptr_t *n, uintptr_t *g_dim);

// Runs the validator. `valid` receives the verdict; if `report_json` is
// non-null it receives the full report, to be freed with [`ck_string_free`].
// Identity violations are not errors: the call still returns `CK_STATUS_OK`.
//
// # Safety
// `h` must be a live handle; `valid` writable; `report_json` null or writable.
enum CkStatus ck_validate(const struct CkCartanData *h, bool *valid, char **report_json);

// Checks both Bianchi identities. Same output convention as [`ck_validate`].
// Fails with `CK_STATUS_CONTRACT` when the data does not validate.
//
// # Safety
// `h` must be a live handle; `valid` writable; `report_json` null or writable.
enum CkStatus ck_check_bianchi(const struct CkCartanData *h, bool *valid, char **report_json);

// Writes whether the data is locally symmetric (zero torsion and anchor).
//
// # Safety
// `h` must be a live handle and `out` a writable pointer.
enum CkStatus ck_is_locally_symmetric(const struct CkCartanData *h, bool *out);

// Message of the last failed call on this thread, or null. The pointer is
// valid until the next `ck_*` call on the same thread.
const char *ck_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void ck_string_free(char *s);

// Releases a handle. Null is ignored.
//
// # Safety
// `h` must come from this library and not have been freed.
void ck_cartan_data_free(struct CkCartanData *h);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CARTANKIT_H */
