#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace radar_cdr::detail {

namespace {

enum class Kind { forward, inverse, real_forward, real_inverse };

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Plan {
 public:
  Plan(Kind kind, std::size_t n) : kind_(kind), n_(n) {
    const int size = static_cast<int>(n);
    in_ = fftw_malloc(sizeof(fftw_complex) * n);
    out_ = fftw_malloc(sizeof(fftw_complex) * n);
    std::lock_guard lock(planner_mutex());
    switch (kind) {
      case Kind::forward:
        plan_ = fftw_plan_dft_1d(size, complex_in(), complex_out(), FFTW_FORWARD, FFTW_ESTIMATE);
        break;
      case Kind::inverse:
        plan_ = fftw_plan_dft_1d(size, complex_in(), complex_out(), FFTW_BACKWARD, FFTW_ESTIMATE);
        break;
      case Kind::real_forward:
        plan_ = fftw_plan_dft_r2c_1d(size, real_in(), complex_out(), FFTW_ESTIMATE);
        break;
      case Kind::real_inverse:
        plan_ = fftw_plan_dft_c2r_1d(size, complex_in(), real_out(), FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
        break;
    }
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }

  void execute() { fftw_execute(plan_); }

  fftw_complex* complex_in() { return static_cast<fftw_complex*>(in_); }
  fftw_complex* complex_out() { return static_cast<fftw_complex*>(out_); }
  double* real_in() { return static_cast<double*>(in_); }
  double* real_out() { return static_cast<double*>(out_); }
  std::size_t size() const { return n_; }

 private:
  Kind kind_;
  std::size_t n_;
  void* in_ = nullptr;
  void* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

Plan& plan_for(Kind kind, std::size_t n) {
  thread_local std::map<std::pair<Kind, std::size_t>, std::unique_ptr<Plan>> cache;
  auto& slot = cache[{kind, n}];
  if (!slot) slot = std::make_unique<Plan>(kind, n);
  return *slot;
}

void complex_transform(Kind kind, std::span<std::complex<double>> inout) {
  Plan& plan = plan_for(kind, inout.size());
  std::copy(inout.begin(), inout.end(), reinterpret_cast<std::complex<double>*>(plan.complex_in()));
  plan.execute();
  const auto* out = reinterpret_cast<const std::complex<double>*>(plan.complex_out());
  std::copy(out, out + inout.size(), inout.begin());
}

}  // namespace

void fft_forward(std::span<std::complex<double>> inout) { complex_transform(Kind::forward, inout); }

void fft_inverse(std::span<std::complex<double>> inout) { complex_transform(Kind::inverse, inout); }

void fft_real_forward(std::span<const double> in, std::span<std::complex<double>> out) {
  Plan& plan = plan_for(Kind::real_forward, in.size());
  std::copy(in.begin(), in.end(), plan.real_in());
  plan.execute();
  const auto* res = reinterpret_cast<const std::complex<double>*>(plan.complex_out());
  std::copy(res, res + std::min(out.size(), in.size() / 2 + 1), out.begin());
}

void fft_real_inverse(std::span<const std::complex<double>> in, std::span<double> out) {
  Plan& plan = plan_for(Kind::real_inverse, out.size());
  std::copy(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(out.size() / 2 + 1),
            reinterpret_cast<std::complex<double>*>(plan.complex_in()));
  plan.execute();
  std::copy(plan.real_out(), plan.real_out() + out.size(), out.begin());
}

}  // namespace radar_cdr::detail
