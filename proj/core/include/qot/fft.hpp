#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qot::fft {

// Thin wrapper over FFTW. Plans are cached per shape and created under a
// global lock; execution runs lock-free on caller buffers (FFTW_UNALIGNED),
// so concurrent transforms on distinct data are safe. Backward transforms
// are unnormalized, matching FFTW.

void forward_inplace(Eigen::VectorXcd& v);
void backward_inplace(Eigen::VectorXcd& v);

/// FFT each column of a column-major matrix.
void forward_cols_inplace(Eigen::MatrixXcd& m);
void backward_cols_inplace(Eigen::MatrixXcd& m);

/// FFT each row of a column-major matrix.
void forward_rows_inplace(Eigen::MatrixXcd& m);
void backward_rows_inplace(Eigen::MatrixXcd& m);

/// Row-major n-dimensional transform (dims.front() slowest).
void forward_nd_inplace(std::complex<double>* data, const std::vector<int>& dims);
void backward_nd_inplace(std::complex<double>* data, const std::vector<int>& dims);

}  // namespace qot::fft
