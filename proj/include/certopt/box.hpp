#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "certopt/interval.hpp"

namespace certopt {

/// Cartesian product of intervals, one component per problem variable.
/// A box is empty as soon as any component is empty.
class Box {
 public:
  Box() = default;
  explicit Box(std::size_t n) : components_(n, Interval(0.0, 0.0)) {}
  explicit Box(std::vector<Interval> components) : components_(std::move(components)) {}

  static Box empty_box(std::size_t n);

  std::size_t size() const { return components_.size(); }
  const Interval& operator[](std::size_t i) const { return components_[i]; }
  Interval& operator[](std::size_t i) { return components_[i]; }
  const std::vector<Interval>& components() const { return components_; }

  bool is_empty() const;

  /// Largest component width (the termination metric).
  double width() const;

  /// Componentwise midpoint, clamped to finite values.
  std::vector<double> midpoint() const;

  Box intersect(const Box& other) const;
  Box hull(const Box& other) const;

  bool contains(const std::vector<double>& point) const;
  bool contains(const Box& other) const;

  /// Index maximizing width_i / (1 + |mid_i|); ties broken by lowest index.
  std::size_t max_relative_width_index() const;

  /// Product of component widths; +inf if any component is unbounded.
  double volume() const;

 private:
  std::vector<Interval> components_;
};

bool operator==(const Box& a, const Box& b);
std::ostream& operator<<(std::ostream& os, const Box& b);

}  // namespace certopt
