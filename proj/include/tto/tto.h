/* C interface to the truncated Toeplitz operator library.
 *
 * Every function returns a tto_status. On failure a message is available from
 * tto_last_error() on the calling thread until the next call. Handles are opaque
 * and owned by the caller; free them with the matching *_free function. Strings
 * returned through char** are released with tto_string_free. */
#ifndef TTO_TTO_H
#define TTO_TTO_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define TTO_API __attribute__((visibility("default")))
#else
#define TTO_API
#endif

typedef enum tto_status {
  TTO_OK = 0,
  TTO_INVALID_ARGUMENT = 1,
  TTO_DOMAIN = 2,
  TTO_NON_FINITE = 3,
  TTO_NOT_CONVERGED = 4,
  TTO_CONFIG = 5,
  TTO_IO = 6,
  TTO_ASSERTION = 7,
  TTO_INTERNAL = 8
} tto_status;

typedef struct tto_blaschke tto_blaschke;
typedef struct tto_symbol tto_symbol;
typedef struct tto_matrix tto_matrix;
typedef struct tto_clark tto_clark;
typedef struct tto_config tto_config;

/* Quadrature settings; tto_quadrature_default fills the library defaults. */
typedef struct tto_quadrature {
  size_t initial_points;
  size_t max_points;
  double abs_tol;
  double rel_tol;
} tto_quadrature;

TTO_API const char* tto_version(void);
TTO_API const char* tto_last_error(void);
TTO_API const char* tto_status_name(tto_status status);
TTO_API void tto_string_free(char* s);
TTO_API void tto_quadrature_default(tto_quadrature* out);

/* Blaschke products. Zeros are passed as separate real and imaginary arrays. */
TTO_API tto_status tto_blaschke_create(const double* re, const double* im, size_t count, tto_blaschke** out);
/* First `count` zeros of a named generator; `param` is r, lambda or gamma as applicable. */
TTO_API tto_status tto_blaschke_generate(const char* generator, double param, size_t count, tto_blaschke** out);
TTO_API void tto_blaschke_free(tto_blaschke* b);
TTO_API tto_status tto_blaschke_degree(const tto_blaschke* b, size_t* out);
TTO_API tto_status tto_blaschke_zero(const tto_blaschke* b, size_t j, double* re, double* im);
TTO_API tto_status tto_blaschke_eval(const tto_blaschke* b, double re, double im, double* out_re, double* out_im);
TTO_API tto_status tto_blaschke_abs_derivative(const tto_blaschke* b, double angle, double* out);

/* Symbols: a preset name or "c<k>=<value>,...". */
TTO_API tto_status tto_symbol_parse(const char* text, tto_symbol** out);
TTO_API void tto_symbol_free(tto_symbol* s);
TTO_API tto_status tto_symbol_eval(const tto_symbol* s, double angle, double* out_re, double* out_im);

/* Dense operator matrices in the TMW basis of the given product. */
TTO_API tto_status tto_toeplitz_build(const tto_blaschke* b, const tto_symbol* phi, const tto_quadrature* q,
                                      tto_matrix** out);
TTO_API tto_status tto_clark_unitary_build(const tto_blaschke* b, double alpha_angle, const tto_quadrature* q,
                                           tto_matrix** out);
/* Applies a function ("identity", "square", "poly:c0,c1,..." ...) to a matrix. */
TTO_API tto_status tto_matrix_apply_function(const tto_matrix* a, const char* function, tto_matrix** out);
TTO_API void tto_matrix_free(tto_matrix* m);
TTO_API tto_status tto_matrix_dim(const tto_matrix* m, size_t* out);
TTO_API tto_status tto_matrix_entry(const tto_matrix* m, size_t i, size_t j, double* re, double* im);
TTO_API tto_status tto_matrix_trace(const tto_matrix* m, double* re, double* im);
TTO_API tto_status tto_matrix_norms(const tto_matrix* m, double* hs, double* trace_norm, double* op_norm);
TTO_API tto_status tto_matrix_converged(const tto_matrix* m, int* out);
TTO_API tto_status tto_matrix_to_json(const tto_matrix* m, char** out);

/* Clark measures for |alpha| = 1, alpha = e^{i alpha_angle}. */
TTO_API tto_status tto_clark_measure(const tto_blaschke* b, double alpha_angle, tto_clark** out);
TTO_API void tto_clark_free(tto_clark* c);
TTO_API tto_status tto_clark_atom_count(const tto_clark* c, size_t* out);
TTO_API tto_status tto_clark_atom(const tto_clark* c, size_t k, double* angle, double* weight);

/* Experiment configs: load a file or start from defaults, override keys, run. */
TTO_API tto_status tto_config_default(tto_config** out);
TTO_API tto_status tto_config_load(const char* path, tto_config** out);
TTO_API void tto_config_free(tto_config* c);
/* key is "section.key", e.g. "sweep.n_values". */
TTO_API tto_status tto_config_set(tto_config* c, const char* key, const char* value);
TTO_API tto_status tto_config_canonical(const tto_config* c, char** out);
TTO_API tto_status tto_config_hash(const tto_config* c, char** out);
/* Runs a subcommand (operator, clark, szego, stz, angular, lemmas). `exit_code` receives
 * 0 success, 1 assertion failure, 2 config error, 3 runtime error; `report`, if non-NULL,
 * receives a JSON summary. The status is TTO_OK whenever the run itself was attempted. */
TTO_API tto_status tto_run(const char* subcommand, const tto_config* c, int* exit_code, char** report);

#ifdef __cplusplus
}
#endif

#endif
