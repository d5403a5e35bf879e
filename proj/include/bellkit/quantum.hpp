#pragma once

// Quantum predictions for two-qubit states under projective +/-1
// measurements: E(AB) = Tr(rho A(thetaA) (x) B(thetaB)).
//
// The matrix arithmetic is self-contained (fixed 2x2 / 4x4 complex), so the
// module can serve as an independent oracle for everything angle-valued.
// Observables live in the z-x Bloch plane: O(theta) = cos(theta) sigma_z +
// sin(theta) sigma_x, with eigenvalues exactly +/-1. Photon-polarizer
// angles are mapped onto this convention by doubling, and only inside the
// clearly named constructor.

#include <array>
#include <complex>

#include "bellkit/behavior.hpp"

namespace bellkit {

using Cplx = std::complex<double>;

struct Mat2 {
  std::array<Cplx, 4> e{};  // row-major

  Cplx& at(int i, int j) { return e[i * 2 + j]; }
  const Cplx& at(int i, int j) const { return e[i * 2 + j]; }
};

struct Mat4 {
  std::array<Cplx, 16> e{};

  Cplx& at(int i, int j) { return e[i * 4 + j]; }
  const Cplx& at(int i, int j) const { return e[i * 4 + j]; }

  static Mat4 kron(const Mat2& a, const Mat2& b);
  Cplx trace() const { return at(0, 0) + at(1, 1) + at(2, 2) + at(3, 3); }
};

Mat4 operator*(const Mat4& a, const Mat4& b);

// Eigenvalues of a Hermitian matrix by cyclic Jacobi sweeps, ascending.
std::array<double, 4> hermitian_eigenvalues(const Mat4& h);
std::array<double, 2> hermitian_eigenvalues(const Mat2& h);

class MeasurementAngle {
 public:
  explicit MeasurementAngle(double radians);
  static MeasurementAngle degrees(double deg);
  // Polarizer angles double: a polarizer at alpha measures O(2*alpha).
  static MeasurementAngle photon_polarizer(double radians);

  double radians() const { return theta_; }

 private:
  double theta_;  // reduced mod 2*pi
};

// cos(theta) sigma_z + sin(theta) sigma_x; real symmetric, eigenvalues +/-1.
Mat2 observable(const MeasurementAngle& theta);

class DensityMatrix4 {
 public:
  // Validates: Hermitian within 1e-12, unit trace within 1e-12,
  // eigenvalues >= -1e-10.
  explicit DensityMatrix4(const Mat4& m);
  static DensityMatrix4 singlet();

  const Mat4& mat() const { return m_; }

 private:
  Mat4 m_;
};

// Tr(rho O(thetaA) (x) O(thetaB)); throws if the trace has an imaginary
// residue beyond 1e-12, otherwise discards it.
double trace_expectation(const DensityMatrix4& rho, const MeasurementAngle& theta_a,
                         const MeasurementAngle& theta_b);

// The singlet behavior p_xy(a,b) = (1 - a*b*cos(theta_x - theta_y))/4,
// cross-checked entrywise against the trace path at construction.
Behavior singlet_behavior(const MeasurementAngle& a1, const MeasurementAngle& a2,
                          const MeasurementAngle& b1, const MeasurementAngle& b2);

}  // namespace bellkit
