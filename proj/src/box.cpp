#include "certopt/box.hpp"

#include <algorithm>
#include <cmath>

namespace certopt {

Box Box::empty_box(std::size_t n) {
  std::vector<Interval> comps(n, Interval::empty());
  return Box(std::move(comps));
}

bool Box::is_empty() const {
  for (const auto& c : components_) {
    if (c.is_empty()) return true;
  }
  return components_.empty();
}

double Box::width() const {
  if (is_empty()) return -kInf;
  double w = 0.0;
  for (const auto& c : components_) w = std::max(w, c.width());
  return w;
}

std::vector<double> Box::midpoint() const {
  std::vector<double> m(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) m[i] = components_[i].mid();
  return m;
}

Box Box::intersect(const Box& other) const {
  Box out(*this);
  for (std::size_t i = 0; i < components_.size(); ++i) {
    out.components_[i] = components_[i].intersect(other.components_[i]);
    if (out.components_[i].is_empty()) return Box::empty_box(components_.size());
  }
  return out;
}

Box Box::hull(const Box& other) const {
  if (is_empty()) return other;
  if (other.is_empty()) return *this;
  Box out(*this);
  for (std::size_t i = 0; i < components_.size(); ++i) {
    out.components_[i] = components_[i].hull(other.components_[i]);
  }
  return out;
}

bool Box::contains(const std::vector<double>& point) const {
  if (point.size() != components_.size() || is_empty()) return false;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (!components_[i].contains(point[i])) return false;
  }
  return true;
}

bool Box::contains(const Box& other) const {
  if (other.is_empty()) return true;
  if (is_empty() || other.size() != size()) return false;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (!components_[i].contains(other.components_[i])) return false;
  }
  return true;
}

std::size_t Box::max_relative_width_index() const {
  std::size_t best = 0;
  double best_score = -kInf;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    double w = components_[i].width();
    double score = std::isinf(w) ? kInf : w / (1.0 + std::abs(components_[i].mid()));
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return best;
}

double Box::volume() const {
  if (is_empty()) return 0.0;
  double v = 1.0;
  for (const auto& c : components_) {
    double w = c.width();
    if (std::isinf(w)) return kInf;
    v *= w;
  }
  return v;
}

bool operator==(const Box& a, const Box& b) {
  if (a.size() != b.size()) return false;
  if (a.is_empty() && b.is_empty()) return true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

std::ostream& operator<<(std::ostream& os, const Box& b) {
  os << '{';
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) os << " x ";
    os << b[i];
  }
  return os << '}';
}

}  // namespace certopt
