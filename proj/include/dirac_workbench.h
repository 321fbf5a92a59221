/* dirac-workbench public C API.
 *
 * Every function except the accessors returns a dw_status; DW_OK means
 * success. On failure dw_last_error() returns a human-readable message for
 * the calling thread. Strings returned through char** parameters are owned
 * by the caller and must be released with dw_string_free().
 */
#ifndef DIRAC_WORKBENCH_H
#define DIRAC_WORKBENCH_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dw_status {
  DW_OK = 0,
  DW_ERR_PARSE = 1,              /* unreadable expression or JSON text */
  DW_ERR_SINGULAR_STRUCTURE = 2, /* Legendre/consistency structure not handled */
  DW_ERR_INCONSISTENT_CHAIN = 3, /* consistency forces a nonzero constant to vanish */
  DW_ERR_FIRST_CLASS = 4,        /* constraint matrix not invertible */
  DW_ERR_INTEGRATOR = 5,         /* trajectory left the representable range */
  DW_ERR_EIGENSOLVER = 6,        /* eigenvalue iteration did not converge */
  DW_ERR_INVALID_ARGUMENT = 7,   /* well-formed input that violates the schema */
  DW_ERR_IO = 8,                 /* file not readable */
  DW_ERR_INTERNAL = 9
} dw_status;

typedef struct dw_model dw_model;       /* parsed model definition */
typedef struct dw_analysis dw_analysis; /* completed constraint analysis */

const char* dw_version(void);

/* Message for the most recent failure on this thread ("" if none). */
const char* dw_last_error(void);

/* --- model loading ------------------------------------------------------ */

dw_status dw_model_load_file(const char* path, dw_model** out);
dw_status dw_model_load_json(const char* text, dw_model** out);
void dw_model_free(dw_model* model);

const char* dw_model_name(const dw_model* model);

/* Suggested integration step and step count from the model's defaults. */
dw_status dw_model_defaults(const dw_model* model, double* h, int* steps);

/* Evolved state layout: the non-multiplier coordinates, then their momenta. */
int dw_model_state_size(const dw_model* model);
const char* dw_model_state_name(const dw_model* model, int i);

/* First bundled sample point, written as doubles into buf[0..len-1];
 * len must equal dw_model_state_size(). */
dw_status dw_model_initial_state(const dw_model* model, double* buf, int len);

/* --- constraint analysis ------------------------------------------------- */

dw_status dw_analyze(const dw_model* model, dw_analysis** out);
void dw_analysis_free(dw_analysis* analysis);

/* Full JSON report: constraint chain, multiplier solutions, rewrite rules,
 * bracket matrices, Dirac bracket table, strong-zero check. */
dw_status dw_analysis_report_json(const dw_analysis* analysis, char** out_json);

int dw_analysis_constraint_count(const dw_analysis* analysis);
int dw_analysis_all_second_class(const dw_analysis* analysis);

/* --- dynamics ------------------------------------------------------------ */

/* Integrates the constrained equations of motion and returns the trajectory
 * as CSV. method is "dirac-rk4", "project" or "exact". initial may be NULL
 * to start from the model's first sample point; otherwise it supplies
 * initial_len = dw_model_state_size() doubles. */
dw_status dw_simulate(const dw_model* model, const char* method, double h, int steps,
                      const double* initial, int initial_len, char** out_csv);

/* --- quantization of the ring -------------------------------------------- */

/* Energy levels as JSON. method is "analytic" or "grid"; grid_n is the
 * number of grid points (used by "grid" only); include_e0 adds the constant
 * ordering energy hbar^2 / (8 m r0^2) to every level. */
dw_status dw_spectrum(double r0, double mass, double hbar, double alpha, double beta, int levels,
                      const char* method, int grid_n, int include_e0, char** out_json);

/* Operator-truncation diagnostics at cutoff n (matrix dimension 2n+1). */
dw_status dw_operator_report(double r0, double mass, double hbar, double alpha, double beta,
                             int n, char** out_json);

void dw_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* DIRAC_WORKBENCH_H */
