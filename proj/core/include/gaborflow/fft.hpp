#pragma once

#include <complex>

namespace gaborflow {

// Thin wrapper over FFTW with cached per-length plans. forward applies
// sum_n x[n] e^{-2 pi i n k / n}, backward the unnormalized conjugate.
namespace fft {

void forward(std::complex<double>* data, int n);
void backward(std::complex<double>* data, int n);

}  // namespace fft
}  // namespace gaborflow
