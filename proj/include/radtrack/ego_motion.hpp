///////////////////////////////////////////////////////////////////////////////
// ego_motion.hpp: Static-scene radial velocity, moving/static classification
// and world-frame trajectory correction for a moving radar.
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <Eigen/Core>

#include <cmath>
#include <map>
#include <vector>

#include "radtrack/core_model.hpp"

namespace radtrack
{

struct EgoMotion
{
  long frame = 0;
  double vx = 0.0;  // lateral [m/s]
  double vy = 0.0;  // forward [m/s]

  bool operator==(const EgoMotion&) const = default;
};

struct EgoPose
{
  long frame = 0;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  double heading = 0.0;  // (-pi, pi]
};

struct FrameTime
{
  long index = 0;
  double timestamp = 0.0;
};

struct WorldPoint
{
  long frame = 0;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
};

/// V_static = vx sin(az) + vy cos(az): the closing speed a static point at
/// azimuth `az` shows to the moving radar.
template <typename Scalar>
Scalar static_radial_velocity(Scalar vx, Scalar vy, Scalar az)
{
  using std::cos;
  using std::sin;
  return vx * sin(az) + vy * cos(az);
}

inline double static_radial_velocity(const EgoMotion& ego, double az)
{
  return static_radial_velocity(ego.vx, ego.vy, az);
}

/// Radial velocity with the ego contribution removed. A static point has
/// measured vr = -V_static under the receding-positive convention, so the
/// compensation is vr + V_static (zero for static scene points).
inline double compensated_radial_velocity(double vr, double az, const EgoMotion& ego)
{
  return vr + static_radial_velocity(ego, az);
}

/// True iff the ego-compensated radial velocity exceeds `delta_v`.
inline bool classify_moving(double vr, double az, const EgoMotion& ego, double delta_v)
{
  return std::abs(compensated_radial_velocity(vr, az, ego)) > delta_v;
}

/// Copy of `frame` with every plot's radial velocity ego-compensated.
Frame compensate_frame(const Frame& frame, const EgoMotion& ego);

/// Trapezoidal integration of ego velocity from the origin with heading 0.
/// Every frame needs an ego record; a gap raises ValidationError naming it.
std::vector<EgoPose> dead_reckon(const std::vector<FrameTime>& frames,
                                 const std::vector<EgoMotion>& ego);

/// world = pose.position + R(pose.heading) * sensor point, per frame.
std::vector<WorldPoint> correct_trajectory(const std::vector<WorldPoint>& sensor_track,
                                           const std::vector<EgoPose>& poses);

/// Lookup by frame index; throws ValidationError naming the missing frame.
const EgoMotion& ego_for_frame(const std::map<long, EgoMotion>& by_frame, long frame);

}  // namespace radtrack
