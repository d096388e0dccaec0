#include "qot/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace qot::fft {
namespace {

struct PlanKey {
  std::vector<int> dims;
  int howmany, stride, dist, sign;
  bool operator<(const PlanKey& o) const {
    return std::tie(dims, howmany, stride, dist, sign) <
           std::tie(o.dims, o.howmany, o.stride, o.dist, o.sign);
  }
};

std::mutex g_plan_mutex;
std::map<PlanKey, fftw_plan>& planCache() {
  static std::map<PlanKey, fftw_plan> cache;
  return cache;
}

fftw_plan getPlan(const PlanKey& key) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& cache = planCache();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  // Dummy buffer only used at planning time (FFTW_ESTIMATE does not touch it,
  // but the API wants a valid pointer).
  long total = 1;
  for (int d : key.dims) total *= d;
  total = total * key.howmany + std::abs(key.dist) * (key.howmany - 1);
  std::vector<std::complex<double>> buf(std::max<long>(total, 1));
  auto* p = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan = fftw_plan_many_dft(
      static_cast<int>(key.dims.size()), key.dims.data(), key.howmany, p, nullptr,
      key.stride, key.dist, p, nullptr, key.stride, key.dist, key.sign,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, plan);
  return plan;
}

void run(std::complex<double>* data, const PlanKey& key) {
  fftw_plan plan = getPlan(key);
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, p, p);
}

}  // namespace

void forward_inplace(Eigen::VectorXcd& v) {
  run(v.data(), {{static_cast<int>(v.size())}, 1, 1, 0, FFTW_FORWARD});
}

void backward_inplace(Eigen::VectorXcd& v) {
  run(v.data(), {{static_cast<int>(v.size())}, 1, 1, 0, FFTW_BACKWARD});
}

void forward_cols_inplace(Eigen::MatrixXcd& m) {
  run(m.data(), {{static_cast<int>(m.rows())}, static_cast<int>(m.cols()), 1,
                 static_cast<int>(m.rows()), FFTW_FORWARD});
}

void backward_cols_inplace(Eigen::MatrixXcd& m) {
  run(m.data(), {{static_cast<int>(m.rows())}, static_cast<int>(m.cols()), 1,
                 static_cast<int>(m.rows()), FFTW_BACKWARD});
}

void forward_rows_inplace(Eigen::MatrixXcd& m) {
  run(m.data(), {{static_cast<int>(m.cols())}, static_cast<int>(m.rows()),
                 static_cast<int>(m.rows()), 1, FFTW_FORWARD});
}

void backward_rows_inplace(Eigen::MatrixXcd& m) {
  run(m.data(), {{static_cast<int>(m.cols())}, static_cast<int>(m.rows()),
                 static_cast<int>(m.rows()), 1, FFTW_BACKWARD});
}

void forward_nd_inplace(std::complex<double>* data, const std::vector<int>& dims) {
  run(data, {dims, 1, 1, 0, FFTW_FORWARD});
}

void backward_nd_inplace(std::complex<double>* data, const std::vector<int>& dims) {
  run(data, {dims, 1, 1, 0, FFTW_BACKWARD});
}

}  // namespace qot::fft
