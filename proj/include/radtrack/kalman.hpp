///////////////////////////////////////////////////////////////////////////////
// kalman.hpp: Constant-velocity Kalman filter over the 8-component cluster
// state [Px, Py, Vx, Vy, BXmax, BXmin, BYmax, BYmin] with full-state
// measurement (H = I).
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <cmath>
#include <utility>

#include "radtrack/core_model.hpp"

namespace radtrack
{

enum StateIndex : int
{
  kPx = 0,
  kPy,
  kVx,
  kVy,
  kBXmax,
  kBXmin,
  kBYmax,
  kBYmin,
  kStateSize
};

template <typename Scalar>
using StateVector = Eigen::Matrix<Scalar, kStateSize, 1>;
template <typename Scalar>
using StateMatrix = Eigen::Matrix<Scalar, kStateSize, kStateSize>;

struct KFConfig
{
  double q_pos = 0.01;    // process-noise intensities
  double q_vel = 0.1;
  double q_box = 0.01;
  double r_pos = 0.0144;  // measurement variances; (0.12 m)^2
  double r_vel = 0.1;
  double r_box = 0.05;
  double xi = 0.5;        // tangential-velocity attenuation in [0, 1]

  void validate() const;
};

template <typename Scalar>
struct KFState
{
  StateVector<Scalar> x = StateVector<Scalar>::Zero();
  StateMatrix<Scalar> P = StateMatrix<Scalar>::Identity();
};

using KFStated = KFState<double>;

/// Constant-velocity transition: positions and box edges move by V*dt.
template <typename Scalar>
StateMatrix<Scalar> transition_matrix(Scalar dt)
{
  StateMatrix<Scalar> A = StateMatrix<Scalar>::Identity();
  A(kPx, kVx) = dt;
  A(kPy, kVy) = dt;
  A(kBXmax, kVx) = dt;
  A(kBXmin, kVx) = dt;
  A(kBYmax, kVy) = dt;
  A(kBYmin, kVy) = dt;
  return A;
}

template <typename Scalar>
StateMatrix<Scalar> process_noise(Scalar dt, const KFConfig& cfg)
{
  StateVector<Scalar> d;
  d << Scalar(cfg.q_pos), Scalar(cfg.q_pos), Scalar(cfg.q_vel), Scalar(cfg.q_vel),
      Scalar(cfg.q_box), Scalar(cfg.q_box), Scalar(cfg.q_box), Scalar(cfg.q_box);
  return (d * dt).asDiagonal();
}

template <typename Scalar>
StateMatrix<Scalar> measurement_noise(const KFConfig& cfg)
{
  StateVector<Scalar> d;
  d << Scalar(cfg.r_pos), Scalar(cfg.r_pos), Scalar(cfg.r_vel), Scalar(cfg.r_vel),
      Scalar(cfg.r_box), Scalar(cfg.r_box), Scalar(cfg.r_box), Scalar(cfg.r_box);
  return d.asDiagonal();
}

namespace detail
{
template <typename Scalar>
void order_box_edges(StateVector<Scalar>& x)
{
  if (x(kBXmax) < x(kBXmin))
  {
    std::swap(x(kBXmax), x(kBXmin));
  }
  if (x(kBYmax) < x(kBYmin))
  {
    std::swap(x(kBYmax), x(kBYmin));
  }
}
}  // namespace detail

template <typename Scalar>
KFState<Scalar> predict(const KFState<Scalar>& s, Scalar dt, const KFConfig& cfg)
{
  if (!(dt > Scalar(0)))
  {
    throw ValidationError("predict requires dt > 0");
  }
  if (!s.x.allFinite() || !s.P.allFinite())
  {
    throw Error("predict: non-finite state");
  }
  const StateMatrix<Scalar> A = transition_matrix(dt);
  KFState<Scalar> out;
  out.x = A * s.x;
  out.P = A * s.P * A.transpose() + process_noise(dt, cfg);
  return out;
}

template <typename Scalar>
KFState<Scalar> update(const KFState<Scalar>& s, const StateVector<Scalar>& z, const KFConfig& cfg)
{
  if (!z.allFinite())
  {
    throw ValidationError("update: non-finite measurement");
  }
  const StateMatrix<Scalar> S = s.P + measurement_noise<Scalar>(cfg);
  const Eigen::LDLT<StateMatrix<Scalar>> ldlt(S);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
  {
    throw Error("update: singular innovation covariance");
  }
  // K = P S^-1 = (S^-1 P)^T since both are symmetric.
  const StateMatrix<Scalar> K = ldlt.solve(s.P).transpose();
  KFState<Scalar> out;
  out.x = s.x + K * (z - s.x);
  const StateMatrix<Scalar> P = (StateMatrix<Scalar>::Identity() - K) * s.P;
  out.P = (P + P.transpose()) / Scalar(2);
  detail::order_box_edges(out.x);
  return out;
}

/// Cartesian velocity from radial velocity plus the tangential speed
/// implied by the angle swept between two centroids. `xi` scales the
/// tangential contribution. The sweep angle is positive toward increasing
/// azimuth (from +y toward +x).
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> estimate_tangential_velocity(const Eigen::Matrix<Scalar, 2, 1>& prev,
                                                         const Eigen::Matrix<Scalar, 2, 1>& curr,
                                                         Scalar vr, Scalar dt, Scalar xi)
{
  using std::atan2;
  using std::cos;
  using std::sin;
  if (!(dt > Scalar(0)))
  {
    throw ValidationError("tangential velocity requires dt > 0");
  }
  const Scalar r_prev = prev.norm();
  if (!(r_prev > Scalar(0)))
  {
    throw ValidationError("previous centroid at radar origin");
  }
  const Scalar theta =
      atan2(prev.y() * curr.x() - prev.x() * curr.y(), prev.dot(curr));
  const Scalar phi = azimuth(curr.x(), curr.y());
  const Scalar vt = r_prev * sin(theta) / dt;
  // Radial unit (sin phi, cos phi); tangential unit (cos phi, -sin phi).
  return {vr * sin(phi) + xi * vt * cos(phi), vr * cos(phi) - xi * vt * sin(phi)};
}

/// Purely radial decomposition of `vr` at the azimuth of `pos`.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> radial_velocity_vector(const Eigen::Matrix<Scalar, 2, 1>& pos, Scalar vr)
{
  using std::cos;
  using std::sin;
  const Scalar phi = azimuth(pos.x(), pos.y());
  return {vr * sin(phi), vr * cos(phi)};
}

}  // namespace radtrack
