#ifndef QDIST_H
#define QDIST_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum QdStatus {
  QD_STATUS_OK = 0,
  QD_STATUS_NULL_POINTER = 1,
  QD_STATUS_INVALID_ARGUMENT = 2,
  QD_STATUS_NUMERICAL = 3,
  QD_STATUS_BUFFER_TOO_SMALL = 4,
  QD_STATUS_PANIC = 5,
} QdStatus;

typedef enum QdField {
  QD_FIELD_REAL = 0,
  QD_FIELD_COMPLEX = 1,
} QdField;

typedef enum QdMetric {
  QD_METRIC_TRACE = 0,
  QD_METRIC_HILBERT_SCHMIDT = 1,
  QD_METRIC_OPERATOR = 2,
  QD_METRIC_TRANSMISSION = 3,
  QD_METRIC_BURES = 4,
  QD_METRIC_ENTROPIC = 5,
  QD_METRIC_HELLINGER = 6,
  // `S(a || b)`, may be `+inf`.
  QD_METRIC_RELATIVE_ENTROPY = 7,
  QD_METRIC_CHERNOFF = 8,
  QD_METRIC_ROOT_FIDELITY = 9,
} QdMetric;

typedef enum QdLawKind {
  // Marchenko-Pastur with ratio `c`.
  QD_LAW_KIND_MARCHENKO_PASTUR = 0,
  // Law of `K (rho - sigma)` for independent induced states, `c = K/N`.
  QD_LAW_KIND_SYMMETRIZED_MP = 1,
  // Shifted semicircle centered at `c`, radius `2 sqrt(c)`.
  QD_LAW_KIND_SHIFTED_SEMICIRCLE = 2,
  // Fuss-Catalan of order 2; `c` is ignored.
  QD_LAW_KIND_FUSS_CATALAN2 = 3,
} QdLawKind;

// A limiting spectral law.
typedef struct QdLaw QdLaw;

// A density matrix, optionally with a bipartite split.
typedef struct QdState QdState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *qd_version(void);

// Length in bytes of the last error message on this thread, without the
// terminator; 0 when there is none.
size_t qd_last_error_length(void);

// Copies the last error message, NUL-terminated, into `buf`.
//
// # Safety
// `buf` must be valid for `cap` bytes.
enum QdStatus qd_last_error_message(char *buf, size_t cap);

// Draws an `n x n` state from the induced measure with environment `k`.
// The pair `(seed, stream)` fixes the draw.
//
// # Safety
// `out` must be a valid pointer.
enum QdStatus qd_state_sample_induced(size_t n,
                                      size_t k,
                                      enum QdField field,
                                      uint64_t seed,
                                      uint64_t stream,
                                      struct QdState **out);

// Builds a state from column-major real and imaginary parts of length
// `n * n`. `im` may be null for a real matrix. The input is validated.
//
// # Safety
// `re` (and `im` when non-null) must be valid for `n * n` reads.
enum QdStatus qd_state_from_matrix(size_t n,
                                   const double *re,
                                   const double *im,
                                   struct QdState **out);

// Diagonal state with probabilities `p[0..n]`.
//
// # Safety
// `p` must be valid for `n` reads.
enum QdStatus qd_state_from_diagonal(const double *p, size_t n, struct QdState **out);

// Frees a state; null is a no-op.
//
// # Safety
// `state` must come from this library and not be used afterwards.
void qd_state_free(struct QdState *state);

// Declares the state bipartite as `na x nb`.
//
// # Safety
// `state` must be a live handle.
enum QdStatus qd_state_set_split(struct QdState *state, size_t na, size_t nb);

// # Safety
// `state` must be a live handle and `out` valid.
enum QdStatus qd_state_dim(const struct QdState *state, size_t *out);

// Writes the ascending eigenvalues into `out[0..dim]`.
//
// # Safety
// `out` must be valid for `cap` writes.
enum QdStatus qd_state_spectrum(const struct QdState *state, double *out, size_t cap);

// `Tr rho^2`.
//
// # Safety
// `state` must be a live handle and `out` valid.
enum QdStatus qd_state_purity(const struct QdState *state, double *out);

// `Tr |rho^Gamma| - 1`; needs a split.
//
// # Safety
// `state` must be a live handle and `out` valid.
enum QdStatus qd_state_negativity(const struct QdState *state, double *out);

// Relative entropy of coherence in the computational basis (nats).
//
// # Safety
// `state` must be a live handle and `out` valid.
enum QdStatus qd_state_rel_ent_coherence(const struct QdState *state, double *out);

// `sum_{i != j} |rho_ij|`.
//
// # Safety
// `state` must be a live handle and `out` valid.
enum QdStatus qd_state_l1_coherence(const struct QdState *state, double *out);

// Distance or similarity between two states of equal dimension.
//
// # Safety
// `a`, `b` must be live handles and `out` valid.
enum QdStatus qd_distance(const struct QdState *a,
                          const struct QdState *b,
                          enum QdMetric metric,
                          double *out);

// # Safety
// `out` must be a valid pointer.
enum QdStatus qd_law_new(enum QdLawKind kind, double c, struct QdLaw **out);

// Frees a law; null is a no-op.
//
// # Safety
// `law` must come from this library and not be used afterwards.
void qd_law_free(struct QdLaw *law);

// Density of the continuous part at `x`.
//
// # Safety
// `law` must be a live handle and `out` valid.
enum QdStatus qd_law_pdf(const struct QdLaw *law, double x, double *out);

// Distribution function including the atom at zero.
//
// # Safety
// `law` must be a live handle and `out` valid.
enum QdStatus qd_law_cdf(const struct QdLaw *law, double x, double *out);

// `int x^k dmu`.
//
// # Safety
// `law` must be a live handle and `out` valid.
enum QdStatus qd_law_moment(const struct QdLaw *law, int k, double *out);

// Mass of the atom at zero.
//
// # Safety
// `law` must be a live handle and `out` valid.
enum QdStatus qd_law_atom0(const struct QdLaw *law, double *out);

// Hull `[lo, hi]` of the support.
//
// # Safety
// `law` must be a live handle; `lo` and `hi` valid.
enum QdStatus qd_law_support(const struct QdLaw *law, double *lo, double *hi);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QDIST_H */
