#ifndef QUADCX_H
#define QUADCX_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* 0 on success; 1..99 mirror the library's error kinds; 100+ are API-level. */
enum {
    QCX_OK = 0,
    QCX_E_SHAPE_MISMATCH = 1,
    QCX_E_NOT_A_COMPLEX,
    QCX_E_NO_SOLUTION,
    QCX_E_SINGULAR,
    QCX_E_NOT_QIS,
    QCX_E_PRECONDITION_FAILED,
    QCX_E_RANK_CONDITION,
    QCX_E_HOMOTOPY_IDENTITY_FAILS,
    QCX_E_NO_HOMOTOPY,
    QCX_E_MISMATCH,
    QCX_E_NOT_ACYCLIC,
    QCX_E_NOT_AN_ORIENTATION,
    QCX_E_SPACE_MISMATCH,
    QCX_E_COST_GUARD,
    QCX_E_NOT_LIPSCHITZ,
    QCX_E_NOT_SCALAR,
    QCX_E_RANGE_ERROR,
    QCX_E_NOT_IN_SUBGROUP,
    QCX_E_NOT_COMPOSABLE,
    QCX_E_ODD_RANK,
    QCX_E_ISOTROPY_FAILURE,
    QCX_E_NOT_HOMOGENEOUS,
    QCX_E_NOT_MONOTONE,
    QCX_E_NOT_UNIPOTENT,
    QCX_E_UNKNOWN_SUITE,
    QCX_E_INVALID_ARGUMENT,
    QCX_E_UNSUPPORTED_RING,
    QCX_E_SPLIT_MISMATCH,
    QCX_E_HALF_RANK_ISOTROPIC,
    QCX_E_INTERNAL,
    QCX_E_JSON = 100,
    QCX_E_NULL_ARGUMENT = 101,
    QCX_E_UNKNOWN = 102
};

/* Message of the last failing call on this thread; never NULL. */
const char* qcx_last_error(void);
const char* qcx_status_name(int status);
void qcx_string_free(char* s);

/* Verification suites */
typedef struct qcx_report qcx_report;

int qcx_suite_count(void);
const char* qcx_suite_name(int index);
int qcx_run_suite(const char* name, uint64_t seed, int cases, qcx_report** out);
int qcx_report_passed(const qcx_report* r);
int qcx_report_failure_count(const qcx_report* r);
double qcx_report_wall_ms(const qcx_report* r);
int qcx_report_json(const qcx_report* r, char** out);
void qcx_report_free(qcx_report* r);

/* Demos; results are JSON strings released with qcx_string_free. */
int qcx_demo_matfac(int n, int k, int cutoff, char** out);
int qcx_clifford_table(int n, char** out);
int qcx_boundary_ideal(int n, char** out);
int qcx_sample_reduction(uint64_t seed, char** out);

/* Ideals in Q[X_1..X_N]: {"nvars": N, "gens": [[{"exps": [...], "coeff": "p/q"}, ...], ...]} */
typedef struct qcx_ideal qcx_ideal;

int qcx_ideal_from_json(const char* json, qcx_ideal** out);
int qcx_ideal_groebner_json(const qcx_ideal* ideal, char** out);
int qcx_ideal_contains(const qcx_ideal* ideal, const char* poly_json, int* contains);
void qcx_ideal_free(qcx_ideal* ideal);

/* Complexes: {"lo", "hi", "ranks": {deg: rank}, "diffs": {deg: matrix}} */
typedef struct qcx_complex qcx_complex;

int qcx_complex_from_json(const char* json, qcx_complex** out);
int qcx_complex_cohomology_json(const qcx_complex* c, char** out);
void qcx_complex_free(qcx_complex* c);

/* Simplicial subsets {"N", "faces"}: realization ideal and subdivision. */
int qcx_simplicial_json(const char* json, char** out);

#ifdef __cplusplus
}
#endif

#endif
