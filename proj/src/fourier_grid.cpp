#include "filament/fourier_grid.hpp"

#include <algorithm>
#include <mutex>
#include <utility>

#include "filament/errors.hpp"

namespace filament {

namespace {

// The FFTW planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FourierGrid::FourierGrid(int size) : size_(size) {
  if (size < 1) throw UsageError("FourierGrid: size must be positive");
  std::lock_guard lock(planner_mutex());
  buffer_ = fftw_alloc_complex(static_cast<size_t>(size));
  forward_ = fftw_plan_dft_1d(size, buffer_, buffer_, FFTW_FORWARD, FFTW_ESTIMATE);
  backward_ = fftw_plan_dft_1d(size, buffer_, buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (buffer_ == nullptr || forward_ == nullptr || backward_ == nullptr) {
    release();
    throw InternalError("FourierGrid: FFTW plan creation failed");
  }
}

FourierGrid::~FourierGrid() { release(); }

FourierGrid::FourierGrid(FourierGrid&& other) noexcept
    : size_(std::exchange(other.size_, 0)),
      buffer_(std::exchange(other.buffer_, nullptr)),
      forward_(std::exchange(other.forward_, nullptr)),
      backward_(std::exchange(other.backward_, nullptr)) {}

FourierGrid& FourierGrid::operator=(FourierGrid&& other) noexcept {
  if (this != &other) {
    release();
    size_ = std::exchange(other.size_, 0);
    buffer_ = std::exchange(other.buffer_, nullptr);
    forward_ = std::exchange(other.forward_, nullptr);
    backward_ = std::exchange(other.backward_, nullptr);
  }
  return *this;
}

void FourierGrid::release() noexcept {
  std::lock_guard lock(planner_mutex());
  if (forward_ != nullptr) fftw_destroy_plan(forward_);
  if (backward_ != nullptr) fftw_destroy_plan(backward_);
  if (buffer_ != nullptr) fftw_free(buffer_);
  forward_ = backward_ = nullptr;
  buffer_ = nullptr;
}

void FourierGrid::synthesize_positive(std::span<const Complex> modes,
                                      std::span<Complex> samples) const {
  if (static_cast<int>(modes.size()) >= size_ || static_cast<int>(samples.size()) != size_) {
    throw InternalError("FourierGrid::synthesize_positive: shape mismatch");
  }
  auto* buf = reinterpret_cast<Complex*>(buffer_);
  std::fill(buf, buf + size_, Complex{});
  std::copy(modes.begin(), modes.end(), buf + 1);
  fftw_execute(backward_);
  std::copy(buf, buf + size_, samples.begin());
}

void FourierGrid::synthesize(std::span<const Complex> bins, std::span<Complex> samples) const {
  if (static_cast<int>(bins.size()) != size_ || static_cast<int>(samples.size()) != size_) {
    throw InternalError("FourierGrid::synthesize: shape mismatch");
  }
  auto* buf = reinterpret_cast<Complex*>(buffer_);
  std::copy(bins.begin(), bins.end(), buf);
  fftw_execute(backward_);
  std::copy(buf, buf + size_, samples.begin());
}

void FourierGrid::analyze(std::span<const Complex> samples, std::span<Complex> bins) const {
  if (static_cast<int>(bins.size()) != size_ || static_cast<int>(samples.size()) != size_) {
    throw InternalError("FourierGrid::analyze: shape mismatch");
  }
  auto* buf = reinterpret_cast<Complex*>(buffer_);
  std::copy(samples.begin(), samples.end(), buf);
  fftw_execute(forward_);
  const double scale = 1.0 / size_;
  for (int b = 0; b < size_; ++b) bins[b] = buf[b] * scale;
}

}  // namespace filament
