#pragma once

// Make LAPACKE use std::complex directly (layout-compatible with the C99
// complex it defaults to). Include this instead of <lapacke.h>.
#include <complex>

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
