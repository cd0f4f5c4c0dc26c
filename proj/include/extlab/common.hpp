#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace extlab {

using cd = std::complex<double>;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Planar objects live in R^3 with a zero third component.
inline Vec3 vec2(double x, double y) { return Vec3(x, y, 0.0); }

// Forward kernel e^{-2 pi i x.xi}; every transform routes through here.
inline cd fourier_kernel(double phase_dot) {
  return std::polar(1.0, -kTwoPi * phase_dot);
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument or violated precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A discretization is too coarse for the requested certification.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration input.
class SchemaError : public Error {
 public:
  using Error::Error;
};

using SphereFn = std::function<cd(const Vec3&)>;

// Kahan-compensated sum in fixed order; keeps reductions reproducible.
class Accumulator {
 public:
  void add(double v) {
    double y = v - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

class CAccumulator {
 public:
  void add(cd v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  cd value() const { return {re_.value(), im_.value()}; }

 private:
  Accumulator re_, im_;
};

// Gauss-Legendre nodes/weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Gauss-Legendre on [a,b].
void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

// Gauss-Hermite for the weight e^{-x^2} (Golub-Welsch).
void gauss_hermite(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace extlab
