#include "gaborflow/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace gaborflow {
namespace fft {
namespace {

std::mutex plan_mutex;
std::map<std::pair<int, int>, fftw_plan> plans;

fftw_plan get_plan(int n, int sign) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  // UNALIGNED so the plan can be re-executed on arbitrary caller buffers.
  fftw_complex* scratch = fftw_alloc_complex(n);
  fftw_plan plan =
      fftw_plan_dft_1d(n, scratch, scratch, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(scratch);
  plans.emplace(key, plan);
  return plan;
}

void run(std::complex<double>* data, int n, int sign) {
  fftw_plan plan = get_plan(n, sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

}  // namespace

void forward(std::complex<double>* data, int n) { run(data, n, FFTW_FORWARD); }
void backward(std::complex<double>* data, int n) { run(data, n, FFTW_BACKWARD); }

}  // namespace fft
}  // namespace gaborflow
