#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>

#include "specrk/spectral_field.hpp"

namespace specrk {

namespace detail {
void* aligned_allocate(std::size_t bytes);
void aligned_free(void* p) noexcept;
/// Serializes access to the (non re-entrant) FFT planner.
std::mutex& fft_planner_mutex();
}  // namespace detail

/// Owning array with the alignment the FFT backend plans for.
template <typename T>
class AlignedBuffer {
 public:
  AlignedBuffer() = default;
  explicit AlignedBuffer(std::size_t n)
      : data_(static_cast<T*>(detail::aligned_allocate(n * sizeof(T)))), size_(n) {
    std::fill_n(data_.get(), n, T{});
  }

  T* data() { return data_.get(); }
  const T* data() const { return data_.get(); }
  std::size_t size() const { return size_; }
  std::span<T> span() { return {data_.get(), size_}; }
  std::span<const T> span() const { return {data_.get(), size_}; }

 private:
  struct Free {
    void operator()(T* p) const noexcept { detail::aligned_free(p); }
  };
  std::unique_ptr<T, Free> data_;
  std::size_t size_ = 0;
};

/// Real-to-complex transforms on one grid.
///
/// Forward transforms are unnormalized (a constant field 1 maps to N^dims at
/// k = 0); inverse transforms divide by N^dims. Plans are created once with a
/// deterministic planner so repeated runs produce identical bits. A
/// Transformer owns scratch memory: use one per thread.
class Transformer {
 public:
  explicit Transformer(const GridSpec& grid);
  ~Transformer();
  Transformer(Transformer&&) noexcept;
  Transformer& operator=(Transformer&&) noexcept;
  Transformer(const Transformer&) = delete;
  Transformer& operator=(const Transformer&) = delete;

  const GridSpec& grid() const;

  void forward(std::span<const double> real, std::span<Complex> spectral);
  void inverse(std::span<const Complex> spectral, std::span<double> real);

  SpectralField forward(const PhysicalField& field);
  PhysicalField inverse(const SpectralField& field);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SpectralField forward_transform(const PhysicalField& field);
PhysicalField inverse_transform(const SpectralField& field);

}  // namespace specrk
