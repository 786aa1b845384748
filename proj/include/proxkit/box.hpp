#pragma once

#include <cstddef>
#include <string>

#include "proxkit/errors.hpp"
#include "proxkit/vec.hpp"

namespace proxkit {

/// Axis-aligned box, the finite sampling window for all grid operations.
struct Box {
  Vec lower;
  Vec upper;

  Box() = default;
  Box(Vec lo, Vec up) : lower(std::move(lo)), upper(std::move(up)) {
    if (lower.size() != upper.size())
      throw dimension_mismatch("box lower/upper dimensions differ");
    for (std::size_t i = 0; i < lower.size(); ++i)
      if (lower[i] > upper[i]) throw degenerate_box("box has lower[i] > upper[i]");
  }

  static Box cube(std::size_t n, double lo, double up) {
    return Box(Vec(n, lo), Vec(n, up));
  }

  std::size_t dim() const { return lower.size(); }

  bool contains(const Vec& x) const {
    if (x.size() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i)
      if (x[i] < lower[i] || x[i] > upper[i]) return false;
    return true;
  }

  /// Box widened by `frac` of each axis width on both sides.
  Box padded(double frac) const {
    Vec lo = lower, up = upper;
    for (std::size_t i = 0; i < dim(); ++i) {
      double w = upper[i] - lower[i];
      lo[i] -= frac * w;
      up[i] += frac * w;
    }
    return Box(lo, up);
  }
};

/// Uniform lattice over a box; nodes are enumerated by a flat index so grid
/// reductions can run as data-parallel loops.
struct Grid {
  Box box;
  std::size_t points_per_axis = 0;

  Grid() = default;
  Grid(Box b, std::size_t points) : box(std::move(b)), points_per_axis(points) {
    if (points_per_axis < 3) throw Error("GridTooCoarse", "need at least 3 points per axis");
  }

  std::size_t dim() const { return box.dim(); }

  std::size_t node_count() const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < dim(); ++i) n *= points_per_axis;
    return n;
  }

  double spacing(std::size_t axis) const {
    return (box.upper[axis] - box.lower[axis]) / double(points_per_axis - 1);
  }

  Vec node(std::size_t flat) const {
    Vec x(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      std::size_t idx = flat % points_per_axis;
      flat /= points_per_axis;
      x[i] = box.lower[i] + double(idx) * spacing(i);
    }
    return x;
  }

  bool is_boundary(std::size_t flat) const {
    for (std::size_t i = 0; i < dim(); ++i) {
      std::size_t idx = flat % points_per_axis;
      flat /= points_per_axis;
      if (idx == 0 || idx + 1 == points_per_axis) return true;
    }
    return false;
  }

  /// Stable key for caches keyed by (function, parameter, grid).
  std::string signature() const {
    std::string s = std::to_string(points_per_axis);
    for (std::size_t i = 0; i < dim(); ++i) {
      s += "|" + std::to_string(box.lower[i]) + "," + std::to_string(box.upper[i]);
    }
    return s;
  }
};

}  // namespace proxkit
