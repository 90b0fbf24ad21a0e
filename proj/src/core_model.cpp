#include "radtrack/core_model.hpp"

#include <algorithm>
#include <limits>

namespace radtrack
{

FeatureVectord extract_features(const Frame& frame, std::span<const std::size_t> members)
{
  if (members.empty())
  {
    throw ValidationError("empty cluster");
  }

  constexpr double inf = std::numeric_limits<double>::infinity();
  double sx = 0.0, sy = 0.0, sv = 0.0, sa = 0.0;
  BoundingBoxd box{inf, -inf, inf, -inf};

  for (const std::size_t i : members)
  {
    if (i >= frame.plots.size())
    {
      throw ValidationError("plot index " + std::to_string(i) + " out of range for frame " +
                            std::to_string(frame.index));
    }
    const Plot& p = frame.plots[i];
    sx += p.x;
    sy += p.y;
    sv += p.radial_velocity;
    sa += p.amplitude;
    box.x_min = std::min(box.x_min, p.x);
    box.x_max = std::max(box.x_max, p.x);
    box.y_min = std::min(box.y_min, p.y);
    box.y_max = std::max(box.y_max, p.y);
  }

  const auto n = static_cast<double>(members.size());
  FeatureVectord f;
  f.px = sx / n;
  f.py = sy / n;
  f.vr = sv / n;
  f.amplitude = sa / n;
  f.bbox = box;
  f.area = box.area();
  // Rounding of the mean can push a degenerate centroid a ulp outside its box.
  f.px = std::clamp(f.px, box.x_min, box.x_max);
  f.py = std::clamp(f.py, box.y_min, box.y_max);
  return f;
}

void validate_plot(const Plot& plot)
{
  if (!std::isfinite(plot.x) || !std::isfinite(plot.y) || !std::isfinite(plot.radial_velocity) ||
      !std::isfinite(plot.amplitude))
  {
    throw ValidationError("plot has non-finite field");
  }
  if (plot.amplitude < 0.0)
  {
    throw ValidationError("plot amplitude must be >= 0");
  }
}

}  // namespace radtrack
