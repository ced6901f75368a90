/* C interface to the quatfact library. All handles are opaque; every
 * function returns a qf_status and writes results through out-pointers.
 * Strings returned through char** are owned by the caller and released with
 * qf_string_free. On failure qf_last_error() describes the error (per thread).
 */
#ifndef QUATFACT_H
#define QUATFACT_H

#include <stddef.h>

#if defined(_WIN32)
#define QF_API __declspec(dllexport)
#else
#define QF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct qf_poly qf_poly;
typedef struct qf_factorization qf_factorization;

typedef enum qf_status {
  QF_OK = 0,
  QF_ZERO_DIVISOR,
  QF_DID_NOT_CONVERGE,
  QF_ODD_REAL_ROOT,
  QF_NON_MONIC_DIVISOR,
  QF_NOT_RANK_ONE,
  QF_NON_REAL_RESIDUE,
  QF_DIVISIBLE_BY_M,
  QF_ZERO_REMAINDER,
  QF_CONJUGATE_PAIR,
  QF_NFC_VIOLATED,
  QF_DEGENERATE_REMAINDER,
  QF_DIFFERENT_POLYNOMIALS,
  QF_STATE_BUDGET_EXCEEDED,
  QF_MISMATCHED_POLYNOMIALS,
  QF_INVALID_ARGUMENT,
  QF_PARSE_ERROR,
  QF_RESIDUAL_TOO_LARGE,
  QF_INTERNAL_ERROR
} qf_status;

typedef enum qf_var { QF_VAR_T = 0, QF_VAR_S = 1, QF_VAR_BOTH = 2 } qf_var;

QF_API const char* qf_status_name(qf_status status);
QF_API const char* qf_last_error(void);
QF_API void qf_string_free(char* s);

/* Polynomial from term-map JSON or expression text. */
QF_API qf_status qf_poly_parse(const char* text, qf_poly** out);
QF_API void qf_poly_free(qf_poly* p);
QF_API qf_status qf_poly_to_json(const qf_poly* p, char** out);
QF_API qf_status qf_poly_to_text(const qf_poly* p, char** out);

/* Norm factorization condition. *satisfied is 1 when N(q) = P(t) R(s).
 * *json_out (may be NULL) receives {"satisfied", "worst_minor", "minor":
 * {"rows", "cols"}, "P", "R", "t_quadratics", "s_quadratics"}. */
QF_API qf_status qf_nfc(const qf_poly* p, double eps, int* satisfied, double* worst_minor, char** json_out);

/* Quadratic factors of the norm's `var`-part in canonical order, as JSON. */
QF_API qf_status qf_quadratics(const qf_poly* p, qf_var var, double eps, char** json_out);

/* Multiplication technique consuming the quadratics of `var` (QF_VAR_S or
 * QF_VAR_T) in the given order of canonical indices; order == NULL uses the
 * canonical order. */
QF_API qf_status qf_factor(const qf_poly* p, qf_var var, const size_t* order, size_t order_len, double eps,
                           qf_factorization** out);

QF_API qf_status qf_factorization_parse(const char* text, qf_factorization** out);
QF_API void qf_factorization_free(qf_factorization* f);
QF_API qf_status qf_factorization_to_json(const qf_factorization* f, char** out);
QF_API qf_status qf_factorization_to_text(const qf_factorization* f, char** out);
QF_API qf_status qf_factorization_product(const qf_factorization* f, qf_poly** out);
QF_API size_t qf_factorization_length(const qf_factorization* f);
QF_API int qf_factorization_k_is_one(const qf_factorization* f);

/* Relative residual of unit * prod(factors) - K q. */
QF_API qf_status qf_verify(const qf_poly* p, const qf_factorization* f, double* residual);

/* One NDJSON record per permutation. */
QF_API qf_status qf_enumerate(const qf_poly* p, qf_var role, double eps, unsigned threads, char** ndjson_out,
                              size_t* k_one_count, int* class_count);

QF_API qf_status qf_equivalent(const qf_factorization* a, const qf_factorization* b, double eps, int* t_equivalent,
                               int* s_equivalent, int* equivalent);

/* Dual lift of two factorizations of the same polynomial. *json_out gets
 * {"dimension", "basis", "parameters", "layout", "equations", "unknowns",
 * "residuals"}; *max_residual is the largest verify_lift residual. */
QF_API qf_status qf_lift(const qf_factorization* a, const qf_factorization* b, double rank_tol, double eps,
                         size_t* dimension, double* max_residual, char** json_out);

#ifdef __cplusplus
}
#endif

#endif
