#include "radtrack/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace radtrack
{

Eigen::Vector2d TargetSpec::default_extent(TargetClass cls)
{
  switch (cls)
  {
    case TargetClass::pedestrian: return {0.5, 0.5};
    case TargetClass::bicycle: return {0.6, 1.8};
    case TargetClass::sedan: return {1.8, 4.5};
    case TargetClass::clutter: return {0.3, 0.3};
  }
  return {0.5, 0.5};
}

void ScenarioConfig::validate() const
{
  if (!(duration > 0.0) || std::isinf(duration))
  {
    throw ValidationError("duration must be > 0");
  }
  if (!(frame_rate > 0.0) || std::isinf(frame_rate))
  {
    throw ValidationError("frame_rate must be > 0");
  }
  if (!(noise.position >= 0.0))
  {
    throw ValidationError("noise.position must be >= 0");
  }
  if (!(noise.velocity >= 0.0))
  {
    throw ValidationError("noise.velocity must be >= 0");
  }
  if (!(noise.amplitude >= 0.0))
  {
    throw ValidationError("noise.amplitude must be >= 0");
  }
  if (!(false_alarm_rate >= 0.0))
  {
    throw ValidationError("false_alarm_rate must be >= 0");
  }
  if (!(false_alarm_max_speed >= 0.0))
  {
    throw ValidationError("false_alarm_max_speed must be >= 0");
  }
  if (!(fov.x_max > fov.x_min) || !(fov.y_max > fov.y_min))
  {
    throw ValidationError("field_of_view must have max > min");
  }
  if (!ego_velocity.allFinite())
  {
    throw ValidationError("ego velocity must be finite");
  }
  for (std::size_t i = 0; i < targets.size(); ++i)
  {
    const auto& t = targets[i];
    const std::string where = "targets[" + std::to_string(i) + "].";
    if (t.cls != TargetClass::clutter && !(t.extent.x() > 0.0 && t.extent.y() > 0.0))
    {
      throw ValidationError(where + "extent must be positive");
    }
    if (!(t.extent.x() >= 0.0 && t.extent.y() >= 0.0))
    {
      throw ValidationError(where + "extent must be >= 0");
    }
    if (t.cls == TargetClass::clutter && !t.velocity.isZero(0.0))
    {
      throw ValidationError(where + "velocity must be zero for clutter");
    }
    if (!(t.reflectivity >= 0.0))
    {
      throw ValidationError(where + "reflectivity must be >= 0");
    }
    if (!(t.plot_count >= 1.0))
    {
      throw ValidationError(where + "plot_count must be >= 1");
    }
    if (!t.start.allFinite() || !t.velocity.allFinite())
    {
      throw ValidationError(where + "start and velocity must be finite");
    }
  }
}

long ScenarioConfig::frame_count() const
{
  return std::max(1L, std::lround(duration * frame_rate));
}

double relative_radial_velocity(const Eigen::Vector2d& pos, const Eigen::Vector2d& relative_velocity)
{
  const double az = azimuth(pos.x(), pos.y());
  return relative_velocity.x() * std::sin(az) + relative_velocity.y() * std::cos(az);
}

Scenario simulate(const ScenarioConfig& cfg)
{
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto gauss = [&](double sigma)
  { return sigma > 0.0 ? std::normal_distribution<double>(0.0, sigma)(rng) : 0.0; };

  double min_reflectivity = std::numeric_limits<double>::infinity();
  for (const auto& t : cfg.targets)
  {
    min_reflectivity = std::min(min_reflectivity, t.reflectivity);
  }
  const double fa_amp_max = std::isfinite(min_reflectivity) ? 0.5 * min_reflectivity : 1.0;

  Scenario sc;
  sc.gt.resize(cfg.targets.size());
  for (std::size_t i = 0; i < cfg.targets.size(); ++i)
  {
    sc.gt[i].target = static_cast<int>(i);
    sc.gt[i].cls = cfg.targets[i].cls;
  }

  const long n_frames = cfg.frame_count();
  for (long k = 0; k < n_frames; ++k)
  {
    const double t = static_cast<double>(k) / cfg.frame_rate;
    const Eigen::Vector2d ego_pos = cfg.ego_velocity * t;
    Frame frame{k, t, {}};

    for (std::size_t i = 0; i < cfg.targets.size(); ++i)
    {
      const TargetSpec& spec = cfg.targets[i];
      const Eigen::Vector2d centre = spec.start + spec.velocity * t - ego_pos;
      const Eigen::Vector2d rel_vel = spec.velocity - cfg.ego_velocity;
      const Eigen::Vector2d half = spec.extent / 2.0;

      sc.gt[i].samples.push_back(
          {k, centre, {centre.x() - half.x(), centre.x() + half.x(), centre.y() - half.y(),
                       centre.y() + half.y()}});

      const int count = std::max(1, std::poisson_distribution<int>(spec.plot_count)(rng));
      for (int p = 0; p < count; ++p)
      {
        Eigen::Vector2d pos = centre;
        pos.x() += (unit(rng) - 0.5) * spec.extent.x();
        pos.y() += (unit(rng) - 0.5) * spec.extent.y();
        pos.x() += gauss(cfg.noise.position);
        pos.y() += gauss(cfg.noise.position);
        Plot plot;
        plot.x = pos.x();
        plot.y = pos.y();
        plot.amplitude = std::max(0.0, spec.reflectivity + gauss(cfg.noise.amplitude));
        plot.radial_velocity = relative_radial_velocity(pos, rel_vel) + gauss(cfg.noise.velocity);
        frame.plots.push_back(plot);
      }
    }

    const int n_fa = cfg.false_alarm_rate > 0.0
                         ? std::poisson_distribution<int>(cfg.false_alarm_rate)(rng)
                         : 0;
    for (int p = 0; p < n_fa; ++p)
    {
      Plot plot;
      plot.x = cfg.fov.x_min + unit(rng) * (cfg.fov.x_max - cfg.fov.x_min);
      plot.y = cfg.fov.y_min + unit(rng) * (cfg.fov.y_max - cfg.fov.y_min);
      plot.amplitude = unit(rng) * fa_amp_max;
      plot.radial_velocity = (2.0 * unit(rng) - 1.0) * cfg.false_alarm_max_speed;
      frame.plots.push_back(plot);
    }

    sc.frames.push_back(std::move(frame));
    sc.ego.push_back({k, cfg.ego_velocity.x(), cfg.ego_velocity.y()});
  }
  return sc;
}

}  // namespace radtrack
