#pragma once

#include <cstddef>
#include <vector>

#include "cmclab/mat2.hpp"

namespace cmclab {

struct GridIndex {
  int i = 0;  ///< x index
  int j = 0;  ///< y index

  friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

/// Uniform rectangular sampling of the coordinate z = x + iy.
class GridSpec {
 public:
  static constexpr int kMinSamples = 5;

  /// Throws InvalidInput if nx or ny < 5 or an extent is empty.
  GridSpec(double x_min, double x_max, double y_min, double y_max, int nx, int ny);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double y_min() const { return y_min_; }
  double y_max() const { return y_max_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }

  /// Sample coordinates; the last sample is the stored maximum exactly.
  double x(int i) const { return i == nx_ - 1 ? x_max_ : x_min_ + i * hx_; }
  double y(int j) const { return j == ny_ - 1 ? y_max_ : y_min_ + j * hy_; }
  Complex z(int i, int j) const { return {x(i), y(j)}; }

  bool contains(GridIndex p) const { return p.i >= 0 && p.i < nx_ && p.j >= 0 && p.j < ny_; }
  bool interior(GridIndex p) const {
    return p.i >= 1 && p.i < nx_ - 1 && p.j >= 1 && p.j < ny_ - 1;
  }
  GridIndex center() const { return {(nx_ - 1) / 2, (ny_ - 1) / 2}; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  double x_min_, x_max_, y_min_, y_max_;
  int nx_, ny_;
  double hx_, hy_;
};

/// Values over a GridSpec, stored with x fastest.
template <typename T>
class Grid {
 public:
  explicit Grid(const GridSpec& spec, const T& fill = T{})
      : spec_(spec), values_(spec.size(), fill) {}

  const GridSpec& spec() const { return spec_; }

  T& operator()(int i, int j) { return values_[index(i, j)]; }
  const T& operator()(int i, int j) const { return values_[index(i, j)]; }
  T& operator[](GridIndex p) { return (*this)(p.i, p.j); }
  const T& operator[](GridIndex p) const { return (*this)(p.i, p.j); }

  const std::vector<T>& values() const { return values_; }
  std::vector<T>& values() { return values_; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * spec_.nx() + i;
  }

  GridSpec spec_;
  std::vector<T> values_;
};

}  // namespace cmclab
