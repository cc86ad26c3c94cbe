/*
 * C interface to the kicked-top interferometer simulator.
 *
 * Objects are opaque handles created by qkt_*_create / qkt_*_from_* and
 * released with the matching qkt_*_destroy. Every fallible call returns a
 * qkt_status; on failure, qkt_last_error_message() describes the error for
 * the calling thread until its next failing call.
 */
#ifndef QKT_QKT_H
#define QKT_QKT_H

#include <stddef.h>

#if defined(QKT_BUILDING_LIBRARY)
#define QKT_API __attribute__((visibility("default")))
#else
#define QKT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qkt_status {
  QKT_OK = 0,
  QKT_ERR_INVALID_ARGUMENT = 1,
  QKT_ERR_VALIDATION = 2,
  QKT_ERR_NUMERICAL = 3,
  QKT_ERR_VANISHING_PROBABILITY = 4,
  QKT_ERR_NON_PHYSICAL_STATE = 5,
  QKT_ERR_IO = 6,
  QKT_ERR_INTERNAL = 7
} qkt_status;

typedef enum qkt_entropy_base { QKT_ENTROPY_BITS = 0, QKT_ENTROPY_NATS = 1 } qkt_entropy_base;

typedef enum qkt_format { QKT_FORMAT_CSV = 0, QKT_FORMAT_JSON = 1 } qkt_format;

typedef enum qkt_detector { QKT_DETECTOR_D1 = 1, QKT_DETECTOR_D2 = 2 } qkt_detector;

QKT_API const char* qkt_version(void);
QKT_API const char* qkt_last_error_message(void);
QKT_API const char* qkt_status_name(qkt_status status);

/* ---- interferometer ---------------------------------------------------- */

typedef struct qkt_setting {
  double sigma1;
  double phi1;
  double sigma2;
  double phi2;
} qkt_setting;

typedef struct qkt_entropy_record {
  int n;
  double s_cl;
  double s_ps;
  double delta_s;
  double p1;
} qkt_entropy_record;

typedef struct qkt_time_average {
  double value;
  double mean_p1;
  int samples;
  int excluded;
} qkt_time_average;

/* Both branches of the superposed evolution from |theta, phi>, kicks 0..n. */
typedef struct qkt_branches qkt_branches;

QKT_API qkt_status qkt_branches_create(int j, double theta, double phi, double kappa1,
                                       double kappa2, double alpha, int n_kicks,
                                       qkt_branches** out);
QKT_API void qkt_branches_destroy(qkt_branches* branches);
QKT_API int qkt_branches_kicks(const qkt_branches* branches);

/* Normalized Bloch vector of one qubit and the unnormalized trace of the
 * post-selected state for `detector`. */
QKT_API qkt_status qkt_branches_post_selected(const qkt_branches* branches,
                                              const qkt_setting* setting, int n,
                                              qkt_detector detector, double bloch[3],
                                              double* trace);
/* Bloch vector of the classical mixture; only sigma1 of `setting` matters. */
QKT_API qkt_status qkt_branches_classical_mixture(const qkt_branches* branches,
                                                  const qkt_setting* setting, int n,
                                                  double bloch[3]);
QKT_API qkt_status qkt_branches_delta_s(const qkt_branches* branches, const qkt_setting* setting,
                                        int n, qkt_entropy_base base, qkt_entropy_record* out);
QKT_API qkt_status qkt_branches_time_average(const qkt_branches* branches,
                                             const qkt_setting* setting, qkt_entropy_base base,
                                             qkt_time_average* out);

/* ---- classical map ----------------------------------------------------- */

QKT_API qkt_status qkt_classical_step(const double xyz[3], double kappa, double out[3]);

/* ---- scenarios and sweeps ---------------------------------------------- */

typedef struct qkt_scenarios qkt_scenarios;

QKT_API qkt_status qkt_scenarios_from_file(const char* path, qkt_scenarios** out);
QKT_API qkt_status qkt_scenarios_from_json(const char* json_text, qkt_scenarios** out);
QKT_API qkt_status qkt_scenarios_from_preset(const char* name, qkt_scenarios** out);
QKT_API void qkt_scenarios_destroy(qkt_scenarios* scenarios);
QKT_API size_t qkt_scenarios_count(const qkt_scenarios* scenarios);
/* Strings stay valid until the scenarios handle is destroyed. */
QKT_API const char* qkt_scenarios_name(const qkt_scenarios* scenarios, size_t index);
QKT_API const char* qkt_scenarios_kind(const qkt_scenarios* scenarios, size_t index);
QKT_API const char* qkt_scenarios_json(const qkt_scenarios* scenarios, size_t index);
QKT_API qkt_status qkt_scenarios_set_kicks(qkt_scenarios* scenarios, int n_kicks);

QKT_API size_t qkt_preset_count(void);
QKT_API const char* qkt_preset_name(size_t index);
QKT_API const char* qkt_preset_json(const char* name);

typedef struct qkt_result qkt_result;

QKT_API qkt_status qkt_run(const qkt_scenarios* scenarios, size_t index, int workers,
                           qkt_result** out);
QKT_API void qkt_result_destroy(qkt_result* result);
QKT_API size_t qkt_result_rows(const qkt_result* result);
QKT_API size_t qkt_result_columns(const qkt_result* result);
QKT_API const char* qkt_result_column_name(const qkt_result* result, size_t column);
QKT_API double qkt_result_value(const qkt_result* result, size_t row, size_t column);
QKT_API double qkt_result_wall_seconds(const qkt_result* result);
QKT_API size_t qkt_result_flagged_rows(const qkt_result* result);
/* Writes into out_dir; the first written path is copied to path_buf
 * (truncated to path_len) when path_buf is non-null. */
QKT_API qkt_status qkt_result_write(const qkt_result* result, const char* out_dir,
                                    qkt_format format, char* path_buf, size_t path_len);

#ifdef __cplusplus
}
#endif

#endif /* QKT_QKT_H */
