#ifndef SIMPSON_LAB_H
#define SIMPSON_LAB_H

#if defined(__GNUC__)
#define SL_API __attribute__((visibility("default")))
#else
#define SL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  SL_OK = 0,
  SL_INVALID_INPUT = 1,
  SL_NOT_DIVISIBLE = 2,
  SL_PRECISION_EXHAUSTED = 3,
  SL_NOT_SMALL = 4,
  SL_NON_COMMUTING = 5,
  SL_PROPERTY_VIOLATION = 6,
  SL_INTERNAL = 7
} sl_status;

/* A Higgs module or Gamma-representation over a point chart, with its ring parameters. */
typedef struct sl_instance sl_instance;

/* Message of the last failing call on this thread; empty after success. */
SL_API const char* sl_last_error(void);
SL_API const char* sl_status_name(sl_status s);

/* Strings returned through char** out-parameters are released with sl_string_free. */
SL_API void sl_string_free(char* s);

SL_API sl_status sl_instance_parse(const char* json, sl_instance** out);
SL_API sl_status sl_instance_to_json(const sl_instance* inst, char** out);
SL_API int sl_instance_is_higgs(const sl_instance* inst);
SL_API int sl_instance_rank(const sl_instance* inst);
SL_API void sl_instance_free(sl_instance* inst);

/* to_rep != 0: Higgs -> representation, otherwise representation -> Higgs.
   The result carries a stamp recording the round trip back to the input, mod p^(e-g). */
SL_API sl_status sl_correspond(const sl_instance* in, int to_rep, sl_instance** out);

/* Cohomology profiles of the instance's complex: the Higgs de Rham complex, or the Koszul complex
   of gamma_i - 1.  eta_json, when non-null, is a ring element f and the decalage eta_f is profiled too. */
SL_API sl_status sl_cohomology(const sl_instance* inst, const char* eta_json, char** report_json);

/* Characteristic-polynomial coefficients per direction and the small-locus verdict. */
SL_API sl_status sl_hitchin(const sl_instance* inst, char** report_json);

/* config_json: {"suite", "p", "n", "e", "guard", "d", "r", "a", "rank", "D", "seed", "instances", "threads"}.
   Writes the report (JSON or text) and its exit code: 0 pass, 1 violation, 2 invalid input, 3 precision exhausted. */
SL_API sl_status sl_run_suite(const char* config_json, int as_text, char** report, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif
