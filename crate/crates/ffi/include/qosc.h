#ifndef QOSC_H
#define QOSC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every call.
typedef enum QoscStatus {
  QOSC_STATUS_OK = 0,
  QOSC_STATUS_NULL_POINTER = 1,
  QOSC_STATUS_INVALID_ARGUMENT = 2,
  QOSC_STATUS_INVALID_PARAMETER = 3,
  QOSC_STATUS_ROOT_OF_UNITY = 4,
  QOSC_STATUS_DOMAIN = 5,
  QOSC_STATUS_HARMONIC_UNDEFINED = 6,
  QOSC_STATUS_NO_REAL_ROOTS = 7,
  QOSC_STATUS_QUADRATURE = 8,
  QOSC_STATUS_IMAGINARY_RESIDUE = 9,
  QOSC_STATUS_PANIC = 10,
} QoscStatus;

typedef enum QoscRegime {
  // q = e^w with w real
  QOSC_REGIME_REAL = 0,
  // q = e^{iw} with 0 < |w| < π
  QOSC_REGIME_UNIT_CIRCLE = 1,
} QoscRegime;

typedef enum QoscCasimir {
  QOSC_CASIMIR_CQ = 0,
  QOSC_CASIMIR_CQ_PRIME = 1,
} QoscCasimir;

typedef enum QoscBranch {
  QOSC_BRANCH_PLUS = 0,
  QOSC_BRANCH_MINUS = 1,
} QoscBranch;

// Deformed spherical harmonic.
typedef struct QoscHarmonic QoscHarmonic;

// Deformation parameter.
typedef struct QoscParam QoscParam;

// Sorted list of levels.
typedef struct QoscSpectrum QoscSpectrum;

// One entry of a spectrum.
typedef struct QoscLevel {
  uint32_t n;
  uint32_t l;
  enum QoscCasimir casimir;
  enum QoscBranch branch;
  double alpha;
  double energy;
} QoscLevel;

// Quadrupole moment of an l = 0 state split into its factors.
typedef struct QoscQuadrupole {
  double radial;
  double angular;
  double value;
} QoscQuadrupole;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL after a success.
// The pointer stays valid until the next call on the same thread.
const char *qosc_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *qosc_version(void);

// Creates a parameter. Unit-circle angles at a root of unity are rejected.
//
// # Safety
// `out` must be valid for writes.
enum QoscStatus qosc_param_new(enum QoscRegime regime, double w, struct QoscParam **out);

// # Safety
// `p` must come from [`qosc_param_new`] or be NULL.
void qosc_param_free(struct QoscParam *p);

// q-number `[x]_q`.
//
// # Safety
// `p` must be a live handle and `out` valid for writes.
enum QoscStatus qosc_bracket(const struct QoscParam *p, double x, double *out);

// Eigenvalue of the chosen Casimir on angular momentum `l`.
//
// # Safety
// `p` must be a live handle and `out` valid for writes.
enum QoscStatus qosc_casimir(const struct QoscParam *p,
                             uint32_t l,
                             enum QoscCasimir casimir,
                             double *out);

// Closed-form energy of level `(n, l)` on the given branch.
//
// # Safety
// `p` must be a live handle and `out` valid for writes.
enum QoscStatus qosc_energy(const struct QoscParam *p,
                            uint32_t n,
                            uint32_t l,
                            enum QoscCasimir casimir,
                            enum QoscBranch branch,
                            double *out);

// All admissible levels with `n ≤ n_max`, `l ≤ l_max`, sorted by energy.
//
// # Safety
// `p` must be a live handle and `out` valid for writes.
enum QoscStatus qosc_spectrum_new(const struct QoscParam *p,
                                  uint32_t n_max,
                                  uint32_t l_max,
                                  enum QoscCasimir casimir,
                                  struct QoscSpectrum **out);

// Number of levels, 0 for NULL.
//
// # Safety
// `s` must be a live handle or NULL.
size_t qosc_spectrum_len(const struct QoscSpectrum *s);

// # Safety
// `s` must be a live handle and `out` valid for writes.
enum QoscStatus qosc_spectrum_get(const struct QoscSpectrum *s,
                                  size_t index,
                                  struct QoscLevel *out);

// # Safety
// `s` must come from [`qosc_spectrum_new`] or be NULL.
void qosc_spectrum_free(struct QoscSpectrum *s);

// Normalized radial function `S(r)` of level `(n, l)`.
//
// # Safety
// `p` must be a live handle and `out` valid for writes.
enum QoscStatus qosc_radial(const struct QoscParam *p,
                            uint32_t n,
                            uint32_t l,
                            enum QoscCasimir casimir,
                            enum QoscBranch branch,
                            double r,
                            double *out);

// Builds the normalized harmonic `Y_lm`.
//
// # Safety
// `p` must be a live handle and `out` valid for writes.
enum QoscStatus qosc_harmonic_new(const struct QoscParam *p,
                                  uint32_t l,
                                  int32_t m,
                                  struct QoscHarmonic **out);

// Evaluates a harmonic at `(theta, phi)`.
//
// # Safety
// `h` must be a live handle; `re` and `im` must be valid for writes.
enum QoscStatus qosc_harmonic_eval(const struct QoscHarmonic *h,
                                   double theta,
                                   double phi,
                                   double *re,
                                   double *im);

// # Safety
// `h` must come from [`qosc_harmonic_new`] or be NULL.
void qosc_harmonic_free(struct QoscHarmonic *h);

// Quadrupole moment of the l = 0 state `n` on the given branch.
//
// # Safety
// `p` must be a live handle and `out` valid for writes.
enum QoscStatus qosc_quadrupole(const struct QoscParam *p,
                                uint32_t n,
                                enum QoscCasimir casimir,
                                enum QoscBranch branch,
                                struct QoscQuadrupole *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QOSC_H */
