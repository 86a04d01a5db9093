#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

namespace testing {

// Trapezoid rule after t = exp(v); spectrally accurate for smooth integrands
// that decay at both ends of the log scale.
inline double log_trapezoid(const std::function<double(double)>& f, double vlo, double vhi, int n) {
  const double h = (vhi - vlo) / n;
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double t = std::exp(vlo + k * h);
    const double w = (k == 0 || k == n) ? 0.5 : 1.0;
    s += w * f(t) * t;
  }
  return s * h;
}

// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("subdiff_unit_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace testing
