/*
 * mflab C API.
 *
 * Every fallible call returns an mflab_status; on failure a message is
 * available from mflab_last_error() on the calling thread. Objects behind
 * opaque handles are owned by the caller and released with the matching
 * *_free function. Array outputs use the two-call convention: pass the
 * capacity, receive the required count; MFLAB_ERR_BUFFER_TOO_SMALL is
 * returned (with *count set) when the buffer is NULL or too short.
 *
 * Blocks are text: binary blocks over "01", signed blocks over "0+-".
 * Positions are 1-based.
 */
#ifndef MFLAB_MFLAB_H
#define MFLAB_MFLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MFLAB_BUILDING)
#    define MFLAB_API __declspec(dllexport)
#  else
#    define MFLAB_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__)
#  define MFLAB_API __attribute__((visibility("default")))
#else
#  define MFLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mflab_status {
    MFLAB_OK = 0,
    MFLAB_ERR_INVALID_ARGUMENT = 1,
    MFLAB_ERR_RANGE = 2,
    MFLAB_ERR_CAP_EXCEEDED = 3,
    MFLAB_ERR_IO = 4,
    MFLAB_ERR_FORMAT = 5,
    MFLAB_ERR_BUFFER_TOO_SMALL = 6,
    MFLAB_ERR_INTERNAL = 7
} mflab_status;

MFLAB_API const char* mflab_version(void);
MFLAB_API const char* mflab_last_error(void);
MFLAB_API const char* mflab_status_string(mflab_status status);
/* 0 restores the hardware default. */
MFLAB_API void mflab_set_threads(unsigned threads);

/* ---- string lists ------------------------------------------------------ */

typedef struct mflab_strings mflab_strings;
MFLAB_API size_t mflab_strings_count(const mflab_strings* list);
MFLAB_API const char* mflab_strings_get(const mflab_strings* list, size_t i);
MFLAB_API void mflab_strings_free(mflab_strings* list);

/* ---- arithmetic tables ------------------------------------------------- */

typedef enum mflab_function {
    MFLAB_MOBIUS = 0,
    MFLAB_LIOUVILLE = 1,
    MFLAB_SQUAREFREE = 2
} mflab_function;

typedef struct mflab_table mflab_table;

MFLAB_API mflab_status mflab_table_sieve(mflab_function function, uint64_t max_n, mflab_table** out);
MFLAB_API mflab_status mflab_table_load(const char* path, mflab_table** out);
MFLAB_API mflab_status mflab_table_save(const mflab_table* table, const char* path);
MFLAB_API void mflab_table_free(mflab_table* table);
MFLAB_API mflab_function mflab_table_function(const mflab_table* table);
MFLAB_API uint64_t mflab_table_max_n(const mflab_table* table);
/* values[i] is the value at n = i + 1. */
MFLAB_API const int8_t* mflab_table_values(const mflab_table* table);

MFLAB_API mflab_status mflab_primes_up_to(uint64_t bound, uint64_t* out, size_t capacity, size_t* count);
MFLAB_API mflab_status mflab_mobius_direct(uint64_t n, int* out);

/* ---- admissibility ----------------------------------------------------- */

MFLAB_API mflab_status mflab_residue_count(uint64_t p, const uint64_t* positions, size_t n, uint64_t* out);
MFLAB_API mflab_status mflab_is_admissible_support(const uint64_t* positions, size_t n, int* out);
MFLAB_API mflab_status mflab_checked_primes(const uint64_t* positions, size_t n, uint64_t* out,
                                            size_t capacity, size_t* count);
MFLAB_API mflab_status mflab_block_support(const char* block, uint64_t* out, size_t capacity, size_t* count);
MFLAB_API mflab_status mflab_is_admissible_block(const char* block, int* out);
/* alphabet is 2 or 3; cap 0 selects the default of 24. */
MFLAB_API mflab_status mflab_enumerate_admissible_blocks(size_t length, int alphabet, size_t cap,
                                                         mflab_strings** out);

/* ---- Mirsky measure ---------------------------------------------------- */

typedef struct mflab_density {
    double value;
    uint64_t cutoff;
    double error_bound;
} mflab_density;

MFLAB_API mflab_status mflab_squarefree_pattern_density(const uint64_t* positions, size_t n, uint64_t cutoff,
                                                        mflab_density* out);
MFLAB_API mflab_status mflab_mirsky_cylinder(const char* block, uint64_t cutoff, mflab_density* out);
MFLAB_API mflab_status mflab_mirsky_empirical(const char* block, uint64_t windows, double* out);

/* ---- Chowla measure ---------------------------------------------------- */

/* signs: one '+' or '-' per nonzero position of base. */
MFLAB_API mflab_status mflab_chowla_cylinder(const char* base, const char* signs, uint64_t cutoff,
                                             mflab_density* out);
MFLAB_API mflab_status mflab_eval_fab(const uint64_t* odd, size_t n_odd, const uint64_t* squared,
                                      size_t n_squared, const char* word, int* out);
MFLAB_API mflab_status mflab_integral_fab_level(const uint64_t* odd, size_t n_odd, const uint64_t* squared,
                                                size_t n_squared, size_t level, uint64_t cutoff, double* out);
/* Values for the 2^|supp| sign patterns, ordered by the mask of -1 positions. */
MFLAB_API mflab_status mflab_uniqueness_solve(const char* base, double nu, double* out, size_t capacity,
                                              size_t* count);

typedef struct mflab_level mflab_level;

typedef struct mflab_level_check {
    const char* name;
    int passed;
    double max_deviation;
    double threshold;
} mflab_level_check;

typedef struct mflab_level_report {
    size_t level;
    uint64_t cutoff;
    double tol;
    double total_mass;
    mflab_level_check checks[3];
    int passed;
} mflab_level_report;

MFLAB_API mflab_status mflab_level_chowla(size_t level, uint64_t cutoff, mflab_level** out);
MFLAB_API void mflab_level_free(mflab_level* level);
MFLAB_API size_t mflab_level_size(const mflab_level* level);
/* word_buf receives the signed word (needs level + 1 bytes). */
MFLAB_API mflab_status mflab_level_entry(const mflab_level* level, size_t i, char* word_buf, size_t buf_len,
                                         double* value);
MFLAB_API mflab_status mflab_level_set(mflab_level* level, const char* word, double value);
MFLAB_API mflab_status mflab_level_verify(const mflab_level* level, uint64_t cutoff, double tol,
                                          mflab_level_report* out);

/* ---- Walsh-Hadamard and Barker ------------------------------------------ */

MFLAB_API int mflab_walsh_entry(uint64_t a, uint64_t b);
MFLAB_API mflab_status mflab_walsh_det_log2(unsigned n, int* sign, uint64_t* log2_abs);
/* Exact determinant of the materialized matrix as decimal text, n <= 6. */
MFLAB_API mflab_status mflab_walsh_det_exact(unsigned n, char* buf, size_t buf_len);
MFLAB_API mflab_status mflab_fwht(double* v, size_t len);
MFLAB_API mflab_status mflab_solve_uniform_system(unsigned n, double a, double* out, size_t capacity,
                                                  size_t* count);
MFLAB_API mflab_status mflab_uniform_system_residual(const double* nu, size_t len, double a, double* out);
/* Row-major order x order matrices. */
MFLAB_API mflab_status mflab_is_hadamard(const int* m, size_t order, int* out);
MFLAB_API mflab_status mflab_hadamard_det_bound_check(const double* m, size_t order, double* det_abs,
                                                      double* bound, int* tight);
MFLAB_API mflab_status mflab_autocorrelations(const int8_t* x, size_t len, int64_t* out, size_t capacity,
                                              size_t* count);
MFLAB_API mflab_status mflab_is_barker(const int8_t* x, size_t len, int* out);
/* Sequences of every length 1..max_len as "+-" strings, first entry '+'. */
MFLAB_API mflab_status mflab_barker_search(size_t max_len, mflab_strings** out);
/* out receives order*order entries, row-major. */
MFLAB_API mflab_status mflab_circulant_from_row(const int8_t* row, size_t order, int* out, size_t capacity);

/* ---- empirical statistics ---------------------------------------------- */

typedef enum mflab_averaging { MFLAB_CESARO = 0, MFLAB_LOGARITHMIC = 1 } mflab_averaging;
typedef enum mflab_normalizer { MFLAB_LOG_N = 0, MFLAB_ELL_N = 1 } mflab_normalizer;

MFLAB_API mflab_status mflab_chowla_sum(const mflab_table* table, const uint64_t* shifts,
                                        const unsigned* exponents, size_t count, uint64_t n,
                                        mflab_averaging averaging, mflab_normalizer normalizer, double* value,
                                        int* density_mode);
typedef int (*mflab_indicator)(uint64_t n, void* user);
MFLAB_API mflab_status mflab_log_density(mflab_indicator indicator, void* user, uint64_t n,
                                         mflab_normalizer normalizer, double* out);
/* x[0] is position 1; pattern is a binary or signed block. */
MFLAB_API mflab_status mflab_empirical_measure_cylinder(const int8_t* x, size_t len, const char* pattern,
                                                        uint64_t windows, double* out);

typedef struct mflab_orbit_coverage {
    uint64_t seen;
    uint64_t admissible_total;
    double ratio;
} mflab_orbit_coverage;

/* mobius may be NULL, in which case mu is sieved internally. missing may be NULL. */
MFLAB_API mflab_status mflab_orbit_block_coverage(size_t length, uint64_t n, const mflab_table* mobius,
                                                  mflab_orbit_coverage* out, mflab_strings** missing);

/* ---- sampler ----------------------------------------------------------- */

typedef struct mflab_sample_config {
    uint64_t cutoff;
    uint64_t length;
    uint64_t seed;
} mflab_sample_config;

MFLAB_API uint64_t mflab_default_cutoff(uint64_t length);
MFLAB_API const char* mflab_sampler_algorithm(void);

typedef struct mflab_sampler mflab_sampler;

MFLAB_API mflab_status mflab_sampler_new(const mflab_sample_config* cfg, mflab_sampler** out);
MFLAB_API void mflab_sampler_free(mflab_sampler* sampler);
/* out receives cfg->length symbols. */
MFLAB_API mflab_status mflab_sampler_mirsky(const mflab_sampler* sampler, uint64_t index, int8_t* out,
                                            size_t capacity);
MFLAB_API mflab_status mflab_sampler_chowla(const mflab_sampler* sampler, uint64_t index, int8_t* out,
                                            size_t capacity);
MFLAB_API mflab_status mflab_mirsky_window(const uint64_t* primes, const uint64_t* residues, size_t count,
                                           size_t length, int8_t* out);
MFLAB_API mflab_status mflab_mc_integral_fab(const uint64_t* odd, size_t n_odd, const uint64_t* squared,
                                             size_t n_squared, uint64_t samples, const mflab_sample_config* cfg,
                                             double* mean, double* standard_error);

/* ---- acceptance report ------------------------------------------------- */

typedef struct mflab_report mflab_report;

typedef struct mflab_criterion {
    const char* id;
    const char* name;
    int passed;
    int diagnostic;
    double value;
    double threshold;
    const char* detail;
} mflab_criterion;

MFLAB_API mflab_status mflab_report_run(int quick, uint64_t seed, mflab_report** out);
MFLAB_API void mflab_report_free(mflab_report* report);
MFLAB_API size_t mflab_report_count(const mflab_report* report);
/* Strings stay valid until the report is freed. */
MFLAB_API mflab_status mflab_report_item(const mflab_report* report, size_t i, mflab_criterion* out);
MFLAB_API int mflab_report_passed(const mflab_report* report);

#ifdef __cplusplus
}
#endif

#endif /* MFLAB_MFLAB_H */
