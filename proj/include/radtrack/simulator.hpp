///////////////////////////////////////////////////////////////////////////////
// simulator.hpp: Seeded synthetic radar scenes with ground truth. Targets
// move at constant velocity in the world; the radar moves at a constant ego
// velocity with heading 0. Everything emitted is in the sensor frame.
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "radtrack/core_model.hpp"
#include "radtrack/ego_motion.hpp"
#include "radtrack/metrics.hpp"

namespace radtrack
{

struct TargetSpec
{
  TargetClass cls = TargetClass::pedestrian;
  Eigen::Vector2d extent{0.5, 0.5};  // (width along x, depth along y) [m]
  double reflectivity = 10.0;        // mean plot amplitude
  double plot_count = 10.0;          // Poisson mean plots per frame, floored at 1
  Eigen::Vector2d start = Eigen::Vector2d::Zero();     // world position at t = 0
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();  // world velocity

  /// Default extent for a class: pedestrian 0.5x0.5, bicycle 0.6x1.8,
  /// sedan 1.8x4.5, clutter 0.3x0.3.
  static Eigen::Vector2d default_extent(TargetClass cls);
};

struct NoiseSpec
{
  double position = 0.0;   // sigma [m]
  double velocity = 0.0;   // sigma [m/s]
  double amplitude = 0.0;  // sigma [a.u.]
};

struct FieldOfView
{
  double x_min = -15.0;
  double x_max = 15.0;
  double y_min = 1.0;
  double y_max = 30.0;
};

struct ScenarioConfig
{
  double duration = 10.0;   // [s]
  double frame_rate = 10.0;  // [Hz]
  std::vector<TargetSpec> targets;
  Eigen::Vector2d ego_velocity = Eigen::Vector2d::Zero();
  NoiseSpec noise;
  double false_alarm_rate = 0.0;       // mean spurious plots per frame
  double false_alarm_max_speed = 3.0;  // |vr| bound of spurious plots
  FieldOfView fov;
  std::uint64_t seed = 0;

  /// Throws ValidationError naming the offending field.
  void validate() const;
  long frame_count() const;
};

struct Scenario
{
  std::vector<Frame> frames;
  std::vector<EgoMotion> ego;
  std::vector<GroundTruthTrack> gt;  // target id = index into cfg.targets
};

/// Exact radial velocity (receding positive) of a point at `pos` moving
/// with `relative_velocity` with respect to the radar.
double relative_radial_velocity(const Eigen::Vector2d& pos, const Eigen::Vector2d& relative_velocity);

Scenario simulate(const ScenarioConfig& cfg);

}  // namespace radtrack
