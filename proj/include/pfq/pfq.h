#ifndef PFQ_PFQ_H_
#define PFQ_PFQ_H_

/* C interface to the frequency-qubit optics simulator.
 *
 * Every fallible call returns a pfq_status and, on failure, records a
 * thread-local message (and a source location for netlist errors) readable
 * with pfq_last_error*. Strings returned through char** are owned by the
 * caller and released with pfq_free_string. Handles are released with their
 * matching *_free function; passing NULL to any *_free is a no-op. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(PFQ_BUILDING_LIBRARY)
#define PFQ_API __declspec(dllexport)
#else
#define PFQ_API __declspec(dllimport)
#endif
#else
#define PFQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pfq_status {
  PFQ_OK = 0,
  PFQ_ERR_INVALID_ARGUMENT = 1,
  PFQ_ERR_DEGENERATE_STATE = 2,
  PFQ_ERR_CIRCUIT = 3,
  PFQ_ERR_CONFIGURATION = 4,
  PFQ_ERR_RANGE = 5,
  PFQ_ERR_PRECONDITION = 6,
  PFQ_ERR_SAMPLING = 7,
  PFQ_ERR_AMBIGUOUS_PATTERN = 8,
  PFQ_ERR_SYNTAX = 9,
  PFQ_ERR_UNKNOWN_KEYWORD = 10,
  PFQ_ERR_UNDECLARED_PATH = 11,
  PFQ_ERR_ARITY = 12,
  PFQ_ERR_BAD_PARAMETER = 13,
  PFQ_ERR_DUPLICATE_PATH = 14,
  PFQ_ERR_IDENTICAL_PORTS = 15,
  PFQ_ERR_IO = 16,
  PFQ_ERR_INTERNAL = 99
} pfq_status;

enum { PFQ_POL_H = 0, PFQ_POL_V = 1 };
enum { PFQ_ROLE_CF1 = 0, PFQ_ROLE_CF2 = 1 };
enum { PFQ_RECORD_TIME_TRACE = 0, PFQ_RECORD_FRINGE = 1 };
enum { PFQ_CLASS_NONE = -1, PFQ_CLASS_FRINGE = 0, PFQ_CLASS_ANTIFRINGE = 1, PFQ_CLASS_FLAT = 2 };
enum { PFQ_SWEEP_THETA = 0, PFQ_SWEEP_PHI = 1 };

typedef struct pfq_state pfq_state;
typedef struct pfq_circuit pfq_circuit;
typedef struct pfq_program pfq_program;
typedef struct pfq_record pfq_record;
typedef struct pfq_sweep pfq_sweep;

typedef struct pfq_constants {
  double delta_omega; /* rad/s */
  double delta;       /* rad/s */
  double eta_fs;
  double epsilon_cf;
} pfq_constants;

typedef struct pfq_record_summary {
  int kind;
  int classification;
  double dc;
  double beat_amplitude;
  double beat_phase;
  double quadrature_re;
  double quadrature_im;
  size_t sample_count;
} pfq_record_summary;

typedef struct pfq_sweep_summary {
  int variable;
  size_t rows;
  double fit_a; /* y ~ a cos x + b sin x + c */
  double fit_b;
  double fit_c;
  double fit_max_residual;
  double max_phase_error;
  double min_amplitude;
  double max_amplitude;
} pfq_sweep_summary;

typedef struct pfq_verify_report {
  double max_deviation;
  double stray;
  double tolerance;
  int pass;
} pfq_verify_report;

/* errors */
PFQ_API const char* pfq_status_name(pfq_status status);
PFQ_API const char* pfq_last_error(void);
PFQ_API int pfq_last_error_line(void);   /* 0 when not located */
PFQ_API int pfq_last_error_column(void); /* 0 when not located */
PFQ_API void pfq_free_string(char* s);
/* Every call that fails sets its output handle (when non-NULL) to NULL. */

/* constants */
PFQ_API pfq_constants pfq_constants_default(void);
PFQ_API pfq_constants pfq_constants_ideal(void);
PFQ_API pfq_status pfq_constants_set(pfq_constants* c, const char* key, double value);
PFQ_API pfq_status pfq_constants_validate(const pfq_constants* c);

/* states */
PFQ_API pfq_status pfq_state_basis(int64_t k, int64_t m, int path, int pol, pfq_state** out);
PFQ_API pfq_status pfq_state_from_json(const char* text, pfq_state** out);
PFQ_API pfq_status pfq_state_to_json(const pfq_state* s, char** out);
PFQ_API pfq_status pfq_state_norm_squared(const pfq_state* s, double* out);
PFQ_API pfq_status pfq_state_loss(const pfq_state* s, double* out);
PFQ_API size_t pfq_state_mode_count(const pfq_state* s);
PFQ_API pfq_status pfq_state_amplitude(const pfq_state* s, int64_t k, int64_t m, int path, int pol,
                                       double* re, double* im);
PFQ_API void pfq_state_free(pfq_state* s);

/* circuits */
PFQ_API pfq_status pfq_circuit_parse(const char* text, size_t length, pfq_circuit** out);
PFQ_API pfq_status pfq_circuit_serialize(const pfq_circuit* c, char** out);
PFQ_API pfq_status pfq_circuit_run(const pfq_circuit* c, const pfq_state* in, pfq_state** out);
/* Applies the circuit's `const` header lines on top of *constants. */
PFQ_API pfq_status pfq_circuit_resolve_constants(const pfq_circuit* c, pfq_constants* constants);
PFQ_API size_t pfq_circuit_stage_count(const pfq_circuit* c);
PFQ_API int pfq_circuit_qubits(const pfq_circuit* c);
PFQ_API int pfq_circuit_shifter_count(const pfq_circuit* c);
PFQ_API int pfq_circuit_equal(const pfq_circuit* a, const pfq_circuit* b);
PFQ_API void pfq_circuit_free(pfq_circuit* c);

PFQ_API pfq_status pfq_build_fhg(int n, int target, double eta, double epsilon, pfq_circuit** out);
PFQ_API pfq_status pfq_build_fqpg(int n, int qubit, double eta, double epsilon, pfq_circuit** out);
PFQ_API pfq_status pfq_build_cz(int n, int control, int target, double eta, double epsilon,
                                pfq_circuit** out);
PFQ_API pfq_status pfq_build_cnot(int n, int control, int target, double eta, double epsilon,
                                  pfq_circuit** out);
PFQ_API pfq_status pfq_build_bb_phase(int n, int qubit, int bit, double eta, double epsilon,
                                      pfq_circuit** out);
PFQ_API pfq_status pfq_build_experimental_fhg(double theta, double eta, pfq_circuit** out);
PFQ_API pfq_status pfq_build_experimental_fqpg(double phi, double eta, pfq_circuit** out);
PFQ_API pfq_status pfq_build_dj(int bb1, int bb2, double eta, pfq_circuit** out);
/* k = 0, m = 0 on path 1, H. */
PFQ_API pfq_status pfq_emulation_input(pfq_state** out);

/* detection */
PFQ_API pfq_status pfq_time_trace(const pfq_state* s, int path, const pfq_constants* constants,
                                  int periods, int per_period, pfq_record** out);
PFQ_API pfq_status pfq_fringe(const pfq_state* s, int path_a, int path_b, pfq_record** out);
PFQ_API pfq_status pfq_record_summarize(const pfq_record* r, pfq_record_summary* out);
PFQ_API pfq_status pfq_record_sample(const pfq_record* r, size_t index, double* x,
                                     double* intensity);
/* counts must hold sample_count entries. */
PFQ_API pfq_status pfq_record_poisson(const pfq_record* r, double mean_counts, uint64_t seed,
                                      int64_t* counts);
/* counts may be NULL (count == 0) to omit the counts column. */
PFQ_API pfq_status pfq_record_to_csv(const pfq_record* r, const int64_t* counts, size_t count,
                                     char** out);
PFQ_API pfq_status pfq_record_to_json(const pfq_record* r, char** out);
PFQ_API void pfq_record_free(pfq_record* r);

/* experiments; sweeps exclude the stop point */
PFQ_API pfq_status pfq_sweep_run(int variable, const pfq_constants* constants, double start,
                                 double stop, int steps, pfq_sweep** out);
PFQ_API pfq_status pfq_sweep_summarize(const pfq_sweep* s, pfq_sweep_summary* out);
PFQ_API pfq_status pfq_sweep_row(const pfq_sweep* s, size_t index, double* setting,
                                 double* beat_amplitude, double* beat_phase, double* dc);
PFQ_API pfq_status pfq_sweep_to_csv(const pfq_sweep* s, char** out);
PFQ_API pfq_status pfq_sweep_to_json(const pfq_sweep* s, char** out);
PFQ_API void pfq_sweep_free(pfq_sweep* s);

/* classification receives a PFQ_CLASS_* value; pattern may be NULL. */
PFQ_API pfq_status pfq_dj(int bb1, int bb2, const pfq_constants* constants, int* classification,
                          pfq_record** pattern);

PFQ_API pfq_status pfq_spectrum_csv(int n, const int* qubits, size_t qubit_count, int role,
                                    double edge_width, double epsilon, int samples, char** out);

/* gate programs */
PFQ_API pfq_status pfq_program_from_json(const char* text, pfq_program** out);
PFQ_API pfq_status pfq_program_to_json(const pfq_program* p, char** out);
PFQ_API int pfq_program_qubits(const pfq_program* p);
PFQ_API pfq_status pfq_program_compile(const pfq_program* p, double eta, double epsilon,
                                       pfq_circuit** out);
/* realized may be NULL to verify the compiled program itself. */
PFQ_API pfq_status pfq_program_verify(const pfq_program* p, const pfq_circuit* realized,
                                      double tolerance, pfq_verify_report* out);
PFQ_API void pfq_program_free(pfq_program* p);

#ifdef __cplusplus
}
#endif

#endif /* PFQ_PFQ_H_ */
