#include "santalo/rng.hpp"

#include <cmath>

namespace santalo {

std::uint64_t RngStream::mix(std::uint64_t z) {
  // splitmix64 finalizer
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double RngStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  double u2 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

double RngStream::laplace(double lambda) {
  // inverse CDF on u in (-1/2, 1/2)
  double u = uniform01() - 0.5;
  double s = u < 0 ? -1.0 : 1.0;
  double v = 1.0 - 2.0 * std::abs(u);
  while (v <= 0.0) {  // guard against u == +-1/2 exactly
    u = uniform01() - 0.5;
    s = u < 0 ? -1.0 : 1.0;
    v = 1.0 - 2.0 * std::abs(u);
  }
  return -s * std::log(v) / lambda;
}

Vector RngStream::normal_vector(int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Vector RngStream::uniform_in_box(const Box& box) {
  const int n = box.dim();
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(box.lo[i], box.hi[i]);
  return v;
}

Vector RngStream::sphere_direction(int n) {
  while (true) {
    Vector v = normal_vector(n);
    double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

}  // namespace santalo
