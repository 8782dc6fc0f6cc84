#pragma once

#include <fftw3.h>

#include <span>

#include "filament/spectral_state.hpp"

namespace filament {

/// FFTW-backed transforms on an M-point periodic grid.
///
/// Owns its plans and work buffer, so one instance must not be used from two
/// threads at once; independent instances are safe to use concurrently.
/// Bin b holds signed mode b for b < M/2 and b - M otherwise.
class FourierGrid {
 public:
  explicit FourierGrid(int size);
  ~FourierGrid();

  FourierGrid(const FourierGrid&) = delete;
  FourierGrid& operator=(const FourierGrid&) = delete;
  FourierGrid(FourierGrid&& other) noexcept;
  FourierGrid& operator=(FourierGrid&& other) noexcept;

  int size() const noexcept { return size_; }

  /// samples[j] = sum_{k=1..K} modes[k-1] e^{2 pi i j k / M}, K = modes.size() < M.
  void synthesize_positive(std::span<const Complex> modes, std::span<Complex> samples) const;

  /// samples[j] = sum_b bins[b] e^{2 pi i j b / M}.
  void synthesize(std::span<const Complex> bins, std::span<Complex> samples) const;

  /// bins[b] = (1/M) sum_j samples[j] e^{-2 pi i j b / M}.
  void analyze(std::span<const Complex> samples, std::span<Complex> bins) const;

  int signed_mode(int bin) const noexcept { return bin <= size_ / 2 ? bin : bin - size_; }

 private:
  void release() noexcept;

  int size_ = 0;
  fftw_complex* buffer_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

}  // namespace filament
