#include "bellkit/quantum.hpp"

#include <algorithm>
#include <cmath>

namespace bellkit {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// One Jacobi rotation zeroing h[p][q], applied as U^H H U. Generic over the
// matrix dimension so the 2x2 and 4x4 cases share it.
template <int N>
void jacobi_rotate(std::array<Cplx, N * N>& h, int p, int q) {
  auto at = [&](int i, int j) -> Cplx& { return h[i * N + j]; };
  Cplx g = at(p, q);
  double mag = std::abs(g);
  if (mag == 0.0) return;
  Cplx phase = g / mag;
  double alpha = at(p, p).real();
  double beta = at(q, q).real();
  double tau = (alpha - beta) / (2.0 * mag);
  double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
  double c = 1.0 / std::sqrt(1.0 + t * t);
  double s = t * c;
  // Columns: H <- H U with U[p][p]=c, U[p][q]=s*phase, U[q][p]=-s*conj(phase), U[q][q]=c.
  for (int r = 0; r < N; ++r) {
    Cplx hp = at(r, p), hq = at(r, q);
    at(r, p) = hp * c - hq * (s * std::conj(phase));
    at(r, q) = hp * (s * phase) + hq * c;
  }
  // Rows: H <- U^H H.
  for (int r = 0; r < N; ++r) {
    Cplx hp = at(p, r), hq = at(q, r);
    at(p, r) = hp * c - hq * (s * phase);
    at(q, r) = hp * (s * std::conj(phase)) + hq * c;
  }
}

template <int N>
std::array<double, N> jacobi_eigenvalues(std::array<Cplx, N * N> h) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < N; ++p) {
      for (int q = p + 1; q < N; ++q) off += std::norm(h[p * N + q]);
    }
    if (off < 1e-30) break;
    for (int p = 0; p < N; ++p) {
      for (int q = p + 1; q < N; ++q) jacobi_rotate<N>(h, p, q);
    }
  }
  std::array<double, N> ev{};
  for (int i = 0; i < N; ++i) ev[i] = h[i * N + i].real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace

Mat4 Mat4::kron(const Mat2& a, const Mat2& b) {
  Mat4 m;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          m.at(i * 2 + k, j * 2 + l) = a.at(i, j) * b.at(k, l);
        }
      }
    }
  }
  return m;
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Cplx sum = 0.0;
      for (int k = 0; k < 4; ++k) sum += a.at(i, k) * b.at(k, j);
      m.at(i, j) = sum;
    }
  }
  return m;
}

std::array<double, 4> hermitian_eigenvalues(const Mat4& h) {
  return jacobi_eigenvalues<4>(h.e);
}

std::array<double, 2> hermitian_eigenvalues(const Mat2& h) {
  return jacobi_eigenvalues<2>(h.e);
}

MeasurementAngle::MeasurementAngle(double radians) {
  if (!std::isfinite(radians)) throw ValidationError("angle must be finite");
  theta_ = std::fmod(radians, kTwoPi);
  if (theta_ < 0) theta_ += kTwoPi;
}

MeasurementAngle MeasurementAngle::degrees(double deg) {
  return MeasurementAngle(deg * (kTwoPi / 360.0));
}

MeasurementAngle MeasurementAngle::photon_polarizer(double radians) {
  return MeasurementAngle(2.0 * radians);
}

Mat2 observable(const MeasurementAngle& theta) {
  double c = std::cos(theta.radians());
  double s = std::sin(theta.radians());
  Mat2 m;
  m.at(0, 0) = c;
  m.at(0, 1) = s;
  m.at(1, 0) = s;
  m.at(1, 1) = -c;
  return m;
}

DensityMatrix4::DensityMatrix4(const Mat4& m) : m_(m) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (std::abs(m_.at(i, j) - std::conj(m_.at(j, i))) > 1e-12) {
        throw ValidationError("density matrix is not Hermitian");
      }
    }
  }
  if (std::abs(m_.trace() - Cplx(1.0)) > 1e-12) {
    throw ValidationError("density matrix trace must be 1");
  }
  auto ev = hermitian_eigenvalues(m_);
  if (ev[0] < -1e-10) {
    throw ValidationError("density matrix has a negative eigenvalue");
  }
}

DensityMatrix4 DensityMatrix4::singlet() {
  // |psi-> = (|01> - |10>)/sqrt(2) in the basis |00>,|01>,|10>,|11>.
  Mat4 m;
  m.at(1, 1) = 0.5;
  m.at(2, 2) = 0.5;
  m.at(1, 2) = -0.5;
  m.at(2, 1) = -0.5;
  return DensityMatrix4(m);
}

double trace_expectation(const DensityMatrix4& rho, const MeasurementAngle& theta_a,
                         const MeasurementAngle& theta_b) {
  Mat4 ab = Mat4::kron(observable(theta_a), observable(theta_b));
  Cplx tr = (rho.mat() * ab).trace();
  if (std::fabs(tr.imag()) > 1e-12) {
    throw NumericalError("trace expectation has an imaginary residue");
  }
  return tr.real();
}

Behavior singlet_behavior(const MeasurementAngle& a1, const MeasurementAngle& a2,
                          const MeasurementAngle& b1, const MeasurementAngle& b2) {
  DensityMatrix4 rho = DensityMatrix4::singlet();
  std::array<MeasurementAngle, 2> alice{a1, a2};
  std::array<MeasurementAngle, 2> bob{b1, b2};
  Mat2 id;
  id.at(0, 0) = 1.0;
  id.at(1, 1) = 1.0;

  std::array<OutcomeDist, 4> table;
  for (const Context& c : kContexts) {
    const MeasurementAngle& ta = alice[c.a - 1];
    const MeasurementAngle& tb = bob[c.b - 1];
    double cosd = std::cos(ta.radians() - tb.radians());
    std::array<Scalar, 4> p;
    Mat2 oa = observable(ta);
    Mat2 ob = observable(tb);
    for (int a : {1, -1}) {
      for (int b : {1, -1}) {
        double closed = (1.0 - a * b * cosd) / 4.0;
        // Projector route: p = Tr(rho (I + a*Oa)/2 (x) (I + b*Ob)/2).
        Mat2 pa, pb;
        for (int k = 0; k < 4; ++k) {
          pa.e[k] = (id.e[k] + Cplx(a) * oa.e[k]) * 0.5;
          pb.e[k] = (id.e[k] + Cplx(b) * ob.e[k]) * 0.5;
        }
        Cplx traced = (rho.mat() * Mat4::kron(pa, pb)).trace();
        if (std::fabs(traced.real() - closed) > 1e-12 || std::fabs(traced.imag()) > 1e-12) {
          throw NumericalError("singlet closed form disagrees with trace");
        }
        p[OutcomeDist::index_of(a, b)] = Scalar(closed);
      }
    }
    table[context_index(c)] = OutcomeDist::from_probs(p[0], p[1], p[2], p[3]);
  }
  return Behavior(table);
}

}  // namespace bellkit
