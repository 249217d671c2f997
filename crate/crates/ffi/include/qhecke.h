#ifndef QHECKE_H
#define QHECKE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes: zero is success, anything else a failure.
typedef enum QhStatus {
  QH_STATUS_OK = 0,
  // A required pointer argument was null.
  QH_STATUS_NULL_POINTER = 1,
  // An argument is out of range or malformed.
  QH_STATUS_INVALID_ARGUMENT = 2,
  // The requested tensor space exceeds the size limit.
  QH_STATUS_LIMIT_EXCEEDED = 3,
  // Operands live in Hecke algebras of different rank.
  QH_STATUS_RANK_MISMATCH = 4,
  // A string argument failed to parse.
  QH_STATUS_PARSE = 5,
  // The value does not fit the output type.
  QH_STATUS_OVERFLOW = 6,
  // An internal invariant failed; the library state is still usable.
  QH_STATUS_PANIC = 7,
} QhStatus;

// An element of the Hecke algebra `H_n` over `Q[q, q^-1]`.
typedef struct QhHeckeElement QhHeckeElement;

// Message for the most recent failure on this thread; empty if none.
// The pointer stays valid until the next failing call on the same thread.
const char *qh_last_error(void);

// Library version as a static NUL-terminated string.
const char *qh_version(void);

// Releases a string returned by this library. Null is a no-op.
//
// # Safety
// `s` is null or came from this library and has not been freed.
void qh_string_free(char *s);

// Stirling number of the second kind `S(r, k)`.
//
// # Safety
// `out` is valid for writes.
enum QhStatus qh_stirling2(uintptr_t r, uintptr_t k, uint64_t *out);

// Bell number `B(m)`.
//
// # Safety
// `out` is valid for writes.
enum QhStatus qh_bell(uintptr_t m, uint64_t *out);

// Dimension of the q-partition algebra `P_r(n)`, or of `P_{r+1/2}(n)` when
// `half` is set.
//
// # Safety
// `out` is valid for writes.
enum QhStatus qh_qpartition_dim(uintptr_t n, uintptr_t r, bool half, uint64_t *out);

// Dimension of the commutant of `H_n` on `(C^n)^{⊗r}` at `q = q_num / q_den`,
// by exact linear algebra. Refuses `n^r > limit`.
//
// # Safety
// `out` is valid for writes.
enum QhStatus qh_commutant_dim(uintptr_t n,
                               uintptr_t r,
                               int64_t q_num,
                               int64_t q_den,
                               uint64_t limit,
                               uintptr_t *out);

// `T_w` for the permutation with one-line images `images[0..len]`.
//
// # Safety
// `images` is valid for `len` reads and `out` for writes.
enum QhStatus qh_hecke_t_w(const uintptr_t *images, uintptr_t len, struct QhHeckeElement **out);

// The generator `T_i` of `H_n`.
//
// # Safety
// `out` is valid for writes.
enum QhStatus qh_hecke_generator(uintptr_t n, uintptr_t i, struct QhHeckeElement **out);

// `x_λ = Σ_{w ∈ S_λ} T_w` for the composition `parts[0..len]`.
//
// # Safety
// `parts` is valid for `len` reads and `out` for writes.
enum QhStatus qh_hecke_x_lambda(const uintptr_t *parts, uintptr_t len, struct QhHeckeElement **out);

// `a * b`.
//
// # Safety
// `a`, `b` are live handles and `out` is valid for writes.
enum QhStatus qh_hecke_mul(const struct QhHeckeElement *a,
                           const struct QhHeckeElement *b,
                           struct QhHeckeElement **out);

// `a + b`.
//
// # Safety
// `a`, `b` are live handles and `out` is valid for writes.
enum QhStatus qh_hecke_add(const struct QhHeckeElement *a,
                           const struct QhHeckeElement *b,
                           struct QhHeckeElement **out);

// Whether `a == b`.
//
// # Safety
// `a`, `b` are live handles and `out` is valid for writes.
enum QhStatus qh_hecke_equal(const struct QhHeckeElement *a,
                             const struct QhHeckeElement *b,
                             bool *out);

// Number of `T_w` with a nonzero coefficient.
//
// # Safety
// `h` is a live handle and `out` is valid for writes.
enum QhStatus qh_hecke_support_size(const struct QhHeckeElement *h, uintptr_t *out);

// JSON array of `{"perm": [...], "coeff": [[exp, num, den], ...]}` terms.
// Free the string with `qh_string_free`.
//
// # Safety
// `h` is a live handle and `out` is valid for writes.
enum QhStatus qh_hecke_to_json(const struct QhHeckeElement *h, char **out);

// Inverse of `qh_hecke_to_json`; `n` fixes the rank of the zero element.
//
// # Safety
// `json` is a NUL-terminated string and `out` is valid for writes.
enum QhStatus qh_hecke_from_json(uintptr_t n, const char *json, struct QhHeckeElement **out);

// Releases an element. Null is a no-op.
//
// # Safety
// `h` is null or a live handle that is not used afterwards.
void qh_hecke_free(struct QhHeckeElement *h);

// `T_i e_j` for the multi-index `index` (e.g. `"1,2,1"`) in `(C^n)^{⊗r}`,
// as a JSON array of `{"index": [...], "coeff": ...}` terms.
//
// # Safety
// `index` is a NUL-terminated string and `out` is valid for writes.
enum QhStatus qh_tensor_act_gen(uintptr_t n, uintptr_t i, const char *index, char **out);

// `Σ_k S(r,k) [G : P_{(n-k,1^k)}]` as JSON `[[exp, num, den], ...]`.
//
// # Safety
// `out` is valid for writes.
enum QhStatus qh_tq_dimension_json(uintptr_t n, uintptr_t r, char **out);

// Evaluates `tq_dimension(n, r)` at `q` given as a string such as `"7/5"`,
// writing the decimal numerator and denominator as a string `"num/den"`.
//
// # Safety
// `q` is a NUL-terminated string and `out` is valid for writes.
enum QhStatus qh_tq_dimension_at(uintptr_t n, uintptr_t r, const char *q, char **out);

#endif  /* QHECKE_H */
