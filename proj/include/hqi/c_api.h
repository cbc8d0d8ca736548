/* C interface for foreign-function bindings. All arrays are float64 buffers
 * with the x index fastest. Functions return HQI_OK or an error status; the
 * message of the last failure on the calling thread is kept in
 * hqi_last_error(). No C++ exception crosses this boundary. */
#ifndef HQI_C_API_H
#define HQI_C_API_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct hqi_spline hqi_spline;

enum hqi_status {
    HQI_OK = 0,
    HQI_ERROR = 1,            /* internal or unclassified failure */
    HQI_PARSE_ERROR = 2,      /* malformed serialized input */
    HQI_CONSTRAINT_ERROR = 3  /* violated precondition (sizes, degrees, domain) */
};

const char* hqi_last_error(void);

hqi_spline* hqi_create(void);
void hqi_release(hqi_spline* s);

/* nodes x_0..x_n-1. Periodic fits use x_N = x_0 + T as the last node and pass
 * N (or N + 1) value rows. derivatives may be NULL (approximate variant, fd_order 0
 * selects the default). values and derivatives hold n_rows * dim entries. */
int hqi_fit_1d(hqi_spline* s, const double* nodes, size_t n_nodes, const double* values,
               const double* derivatives, size_t n_values, int dim, int degree, int fd_order,
               int periodic);

/* Periodic axes list the samples of one period and their period; other axes
 * ignore period. fx, fy, fxy are all NULL (approximate) or all set (Hermite). */
int hqi_fit_2d(hqi_spline* s, const double* x, size_t nx, const double* y, size_t ny,
               const double* values, const double* fx, const double* fy, const double* fxy,
               const int degrees[2], const int fd_orders[2], const int periodic[2],
               const double period[2]);

int hqi_fit_3d(hqi_spline* s, const double* x, size_t nx, const double* y, size_t ny,
               const double* z, size_t nz, const double* values, const int degrees[3],
               const int fd_orders[3], const int periodic[3], const double period[3]);

/* Number of independent variables (0 for an empty handle) and values per point. */
int hqi_domain_dim(const hqi_spline* s);
int hqi_value_dim(const hqi_spline* s);

/* points: n_points * domain_dim coordinates (point-major); orders: domain_dim
 * derivative orders; out: n_points * value_dim values. */
int hqi_eval(const hqi_spline* s, const double* points, size_t n_points, const int* orders, double* out);

/* Writes the JSON form including the terminating NUL if it fits in capacity;
 * *needed receives the full size (with NUL) in every case. A NULL buffer only
 * queries the size; a non-NULL buffer that is too small is an error. */
int hqi_serialize(const hqi_spline* s, char* buffer, size_t capacity, size_t* needed);
int hqi_deserialize(hqi_spline* s, const char* json, size_t length);

#ifdef __cplusplus
}
#endif

#endif
