#include "radtrack/ego_motion.hpp"

#include <Eigen/Geometry>

#include <string>

namespace radtrack
{

Frame compensate_frame(const Frame& frame, const EgoMotion& ego)
{
  Frame out = frame;
  for (auto& p : out.plots)
  {
    p.radial_velocity = compensated_radial_velocity(p.radial_velocity, p.azimuth(), ego);
  }
  return out;
}

const EgoMotion& ego_for_frame(const std::map<long, EgoMotion>& by_frame, long frame)
{
  const auto it = by_frame.find(frame);
  if (it == by_frame.end())
  {
    throw ValidationError("missing ego record for frame " + std::to_string(frame));
  }
  return it->second;
}

std::vector<EgoPose> dead_reckon(const std::vector<FrameTime>& frames,
                                 const std::vector<EgoMotion>& ego)
{
  std::map<long, EgoMotion> by_frame;
  for (const auto& e : ego)
  {
    if (!std::isfinite(e.vx) || !std::isfinite(e.vy))
    {
      throw ValidationError("non-finite ego velocity at frame " + std::to_string(e.frame));
    }
    by_frame[e.frame] = e;
  }

  std::vector<EgoPose> poses;
  poses.reserve(frames.size());
  for (std::size_t k = 0; k < frames.size(); ++k)
  {
    const EgoMotion& cur = ego_for_frame(by_frame, frames[k].index);
    EgoPose pose;
    pose.frame = frames[k].index;
    if (k > 0)
    {
      const double dt = frames[k].timestamp - frames[k - 1].timestamp;
      if (!(dt > 0.0))
      {
        throw ValidationError("timestamps not increasing at frame " +
                              std::to_string(frames[k].index));
      }
      const EgoMotion& prev = ego_for_frame(by_frame, frames[k - 1].index);
      pose.position = poses.back().position +
                      0.5 * dt * Eigen::Vector2d(prev.vx + cur.vx, prev.vy + cur.vy);
    }
    poses.push_back(pose);
  }
  return poses;
}

std::vector<WorldPoint> correct_trajectory(const std::vector<WorldPoint>& sensor_track,
                                           const std::vector<EgoPose>& poses)
{
  std::map<long, const EgoPose*> by_frame;
  for (const auto& p : poses)
  {
    by_frame[p.frame] = &p;
  }

  std::vector<WorldPoint> out;
  out.reserve(sensor_track.size());
  for (const auto& pt : sensor_track)
  {
    const auto it = by_frame.find(pt.frame);
    if (it == by_frame.end())
    {
      throw ValidationError("no ego pose for frame " + std::to_string(pt.frame));
    }
    const EgoPose& pose = *it->second;
    // Heading is measured like azimuth (clockwise from +y), hence the sign.
    const Eigen::Rotation2Dd rot(-pose.heading);
    out.push_back({pt.frame, pose.position + rot * pt.position});
  }
  return out;
}

}  // namespace radtrack
