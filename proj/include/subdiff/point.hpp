#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace subdiff {

/// Largest spatial dimension supported by the path samplers and geometry.
inline constexpr int kMaxDim = 3;

/// A point (or displacement) in R^d with 1 <= d <= kMaxDim, stored inline.
class Point {
 public:
  Point() = default;
  explicit Point(int dim) : dim_(dim) { check_dim(dim); }
  Point(std::initializer_list<double> coords) : dim_(static_cast<int>(coords.size())) {
    check_dim(dim_);
    int i = 0;
    for (double c : coords) c_[i++] = c;
  }

  static Point zero(int dim) { return Point(dim); }
  static Point unit(int dim, int axis) {
    Point p(dim);
    p[axis] = 1.0;
    return p;
  }

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[i]; }
  double& operator[](int i) { return c_[i]; }

  /// Last coordinate (the "height" in graph charts).
  double last() const { return c_[dim_ - 1]; }

  Point& operator+=(const Point& o) {
    for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Point& operator-=(const Point& o) {
    for (int i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Point& operator*=(double s) {
    for (int i = 0; i < dim_; ++i) c_[i] *= s;
    return *this;
  }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.dim_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

  std::string to_string() const;

 private:
  static void check_dim(int d) {
    if (d < 1 || d > kMaxDim)
      throw std::invalid_argument("Point: dimension must be in [1, " + std::to_string(kMaxDim) + "]");
  }

  std::array<double, kMaxDim> c_{};
  int dim_ = 1;
};

inline Point operator+(Point a, const Point& b) { return a += b; }
inline Point operator-(Point a, const Point& b) { return a -= b; }
inline Point operator*(double s, Point a) { return a *= s; }
inline Point operator*(Point a, double s) { return a *= s; }

inline double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}
inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }
inline double distance(const Point& a, const Point& b) { return norm(a - b); }

inline std::string Point::to_string() const {
  std::string s = "(";
  for (int i = 0; i < dim_; ++i) {
    if (i) s += ", ";
    s += std::to_string(c_[i]);
  }
  return s + ")";
}

}  // namespace subdiff
