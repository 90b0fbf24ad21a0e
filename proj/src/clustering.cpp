#include "radtrack/clustering.hpp"

#include <cmath>
#include <deque>
#include <numeric>

namespace radtrack
{

void ClusteringParams::validate() const
{
  if (!(epsilon > 0.0))
  {
    throw ValidationError("clustering.epsilon must be > 0");
  }
  if (min_pts < 1)
  {
    throw ValidationError("clustering.min_pts must be >= 1");
  }
  if (amp_thres && !(*amp_thres > 0.0))
  {
    throw ValidationError("clustering.amp_thres must be > 0");
  }
  if (!(vel_thres > 0.0))
  {
    throw ValidationError("clustering.vel_thres must be > 0");
  }
  if (!(suppression_radius >= 0.0) || std::isinf(suppression_radius))
  {
    throw ValidationError("clustering.suppression_radius must be >= 0");
  }
}

Frame suppress_non_maxima(const Frame& frame, double radius)
{
  if (radius <= 0.0)
  {
    return frame;
  }

  const auto& plots = frame.plots;
  const double r2 = radius * radius;
  Frame out{frame.index, frame.timestamp, {}};
  out.plots.reserve(plots.size());

  for (std::size_t i = 0; i < plots.size(); ++i)
  {
    bool dominant = true;
    for (std::size_t j = 0; j < plots.size() && dominant; ++j)
    {
      if (j == i)
      {
        continue;
      }
      const double dx = plots[i].x - plots[j].x;
      const double dy = plots[i].y - plots[j].y;
      if (dx * dx + dy * dy > r2)
      {
        continue;
      }
      const double ai = plots[i].amplitude;
      const double aj = plots[j].amplitude;
      if (aj > ai || (aj == ai && j < i))
      {
        dominant = false;
      }
    }
    if (dominant)
    {
      out.plots.push_back(plots[i]);
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> epsilon_neighbourhoods(const Frame& frame, double epsilon)
{
  const auto& plots = frame.plots;
  const double e2 = epsilon * epsilon;
  std::vector<std::vector<std::size_t>> nbrs(plots.size());
  for (std::size_t i = 0; i < plots.size(); ++i)
  {
    for (std::size_t j = 0; j < plots.size(); ++j)
    {
      const double dx = plots[i].x - plots[j].x;
      const double dy = plots[i].y - plots[j].y;
      if (dx * dx + dy * dy < e2)
      {
        nbrs[i].push_back(j);
      }
    }
  }
  return nbrs;
}

std::vector<Cluster> cluster(const Frame& frame, const ClusteringParams& params)
{
  params.validate();
  const auto& plots = frame.plots;
  const std::size_t n = plots.size();
  if (n == 0)
  {
    return {};
  }

  const double mean_amp =
      std::accumulate(plots.begin(), plots.end(), 0.0,
                      [](double s, const Plot& p) { return s + p.amplitude; }) /
      static_cast<double>(n);
  const double amp_thres = params.amp_thres.value_or(0.5 * mean_amp);
  const auto min_pts = static_cast<std::size_t>(params.min_pts);

  const auto nbrs = epsilon_neighbourhoods(frame, params.epsilon);

  std::vector<bool> noise(n, false);
  for (std::size_t i = 0; i < n; ++i)
  {
    const bool sparse = nbrs[i].size() < min_pts;
    noise[i] = params.amplitude_noise_test ? (sparse && plots[i].amplitude < mean_amp) : sparse;
  }

  // A plot joins through the plot that reached it: it must be dense and
  // within the velocity and amplitude thresholds of that parent.
  auto joins = [&](std::size_t parent, std::size_t j)
  {
    return nbrs[j].size() >= min_pts &&
           std::abs(plots[j].radial_velocity - plots[parent].radial_velocity) < params.vel_thres &&
           std::abs(plots[j].amplitude - plots[parent].amplitude) < amp_thres;
  };

  std::vector<bool> assigned(n, false);
  std::vector<Cluster> clusters;
  std::deque<std::size_t> frontier;

  for (std::size_t seed = 0; seed < n; ++seed)
  {
    if (assigned[seed] || noise[seed])
    {
      continue;
    }
    Cluster c;
    c.id = static_cast<int>(clusters.size());
    c.member_indices.push_back(seed);
    assigned[seed] = true;
    frontier.push_back(seed);

    while (!frontier.empty())
    {
      const std::size_t parent = frontier.front();
      frontier.pop_front();
      for (const std::size_t j : nbrs[parent])
      {
        if (!assigned[j] && joins(parent, j))
        {
          assigned[j] = true;
          c.member_indices.push_back(j);
          frontier.push_back(j);
        }
      }
    }

    std::sort(c.member_indices.begin(), c.member_indices.end());
    c.features = extract_features(frame, c.member_indices);
    clusters.push_back(std::move(c));
  }
  return clusters;
}

std::vector<std::size_t> unclustered_plots(const Frame& frame, const std::vector<Cluster>& clusters)
{
  std::vector<bool> used(frame.plots.size(), false);
  for (const auto& c : clusters)
  {
    for (const auto i : c.member_indices)
    {
      used.at(i) = true;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < used.size(); ++i)
  {
    if (!used[i])
    {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace radtrack
