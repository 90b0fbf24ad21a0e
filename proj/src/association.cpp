#include "radtrack/association.hpp"

#include <cmath>
#include <numeric>
#include <tuple>

namespace radtrack
{

void SimilarityWeights::validate() const
{
  const double w[] = {distance, velocity, area, overlap, amplitude};
  const char* names[] = {"weights.distance", "weights.velocity", "weights.area",
                         "weights.overlap", "weights.amplitude"};
  double sum = 0.0;
  for (int i = 0; i < 5; ++i)
  {
    if (!(w[i] >= 0.0 && w[i] <= 1.0))
    {
      throw ValidationError(std::string(names[i]) + " must be in [0, 1]");
    }
    sum += w[i];
  }
  if (std::abs(sum - 1.0) > 1e-9)
  {
    throw ValidationError("weights must sum to 1 (got " + std::to_string(sum) + ")");
  }
}

void SimilarityThresholds::validate() const
{
  if (!(d_thres > 0.0))
  {
    throw ValidationError("thresholds.d_thres must be > 0");
  }
  if (!(v_thres > 0.0))
  {
    throw ValidationError("thresholds.v_thres must be > 0");
  }
  if (!(area_thres > 0.0))
  {
    throw ValidationError("thresholds.area_thres must be > 0");
  }
  if (!(gate > 0.0 && gate <= 1.0))
  {
    throw ValidationError("thresholds.gate must be in (0, 1]");
  }
}

double Assignment::total_similarity() const
{
  return std::accumulate(pairs.begin(), pairs.end(), 0.0,
                         [](double s, const MatchedPair& p) { return s + p.similarity; });
}

namespace
{

Assignment greedy_assign(const std::vector<int>& track_ids, const std::vector<int>& cluster_ids,
                         const Eigen::MatrixXd& sim, double gate)
{
  struct Candidate
  {
    double s;
    int track;
    int cluster;
    Eigen::Index row;
    Eigen::Index col;
  };
  std::vector<Candidate> candidates;
  for (Eigen::Index r = 0; r < sim.rows(); ++r)
  {
    for (Eigen::Index c = 0; c < sim.cols(); ++c)
    {
      if (sim(r, c) >= gate)
      {
        candidates.push_back({sim(r, c), track_ids[r], cluster_ids[c], r, c});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b)
            { return std::tie(b.s, a.track, a.cluster) < std::tie(a.s, b.track, b.cluster); });

  std::vector<bool> row_used(sim.rows(), false);
  std::vector<bool> col_used(sim.cols(), false);
  Assignment out;
  for (const auto& cand : candidates)
  {
    if (row_used[cand.row] || col_used[cand.col])
    {
      continue;
    }
    row_used[cand.row] = true;
    col_used[cand.col] = true;
    out.pairs.push_back({cand.track, cand.cluster, cand.s});
  }
  for (Eigen::Index r = 0; r < sim.rows(); ++r)
  {
    if (!row_used[r])
    {
      out.unmatched_tracks.push_back(track_ids[r]);
    }
  }
  for (Eigen::Index c = 0; c < sim.cols(); ++c)
  {
    if (!col_used[c])
    {
      out.unmatched_clusters.push_back(cluster_ids[c]);
    }
  }
  return out;
}

// Maximum-total matching by dynamic programming over subsets of columns.
Assignment optimal_assign(const std::vector<int>& track_ids, const std::vector<int>& cluster_ids,
                          const Eigen::MatrixXd& sim, double gate)
{
  constexpr Eigen::Index max_side = 16;
  if (sim.cols() > max_side && sim.rows() > max_side)
  {
    throw Error("optimal assignment limited to " + std::to_string(max_side) +
                " tracks or clusters");
  }
  if (sim.cols() > max_side)
  {
    Assignment t = optimal_assign(cluster_ids, track_ids, sim.transpose(), gate);
    Assignment out;
    for (const auto& p : t.pairs)
    {
      out.pairs.push_back({p.cluster_id, p.track_id, p.similarity});
    }
    out.unmatched_tracks = t.unmatched_clusters;
    out.unmatched_clusters = t.unmatched_tracks;
    return out;
  }

  const auto rows = static_cast<std::size_t>(sim.rows());
  const auto cols = static_cast<std::size_t>(sim.cols());
  const std::size_t masks = std::size_t{1} << cols;
  // best[r][mask]: best total for rows r.. with columns in mask already taken.
  std::vector<std::vector<double>> best(rows + 1, std::vector<double>(masks, 0.0));
  std::vector<std::vector<int>> choice(rows, std::vector<int>(masks, -1));
  for (std::size_t r = rows; r-- > 0;)
  {
    for (std::size_t mask = 0; mask < masks; ++mask)
    {
      double b = best[r + 1][mask];
      int ch = -1;
      for (std::size_t c = 0; c < cols; ++c)
      {
        const double s = sim(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        if ((mask >> c) & 1U || s < gate)
        {
          continue;
        }
        const double v = s + best[r + 1][mask | (std::size_t{1} << c)];
        if (v > b)
        {
          b = v;
          ch = static_cast<int>(c);
        }
      }
      best[r][mask] = b;
      choice[r][mask] = ch;
    }
  }

  Assignment out;
  std::vector<bool> col_used(cols, false);
  std::size_t mask = 0;
  for (std::size_t r = 0; r < rows; ++r)
  {
    const int c = choice[r][mask];
    if (c < 0)
    {
      out.unmatched_tracks.push_back(track_ids[r]);
      continue;
    }
    mask |= std::size_t{1} << c;
    col_used[c] = true;
    out.pairs.push_back({track_ids[r], cluster_ids[c],
                         sim(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))});
  }
  for (std::size_t c = 0; c < cols; ++c)
  {
    if (!col_used[c])
    {
      out.unmatched_clusters.push_back(cluster_ids[c]);
    }
  }
  return out;
}

}  // namespace

Assignment assign(const std::vector<int>& track_ids, const std::vector<int>& cluster_ids,
                  const Eigen::MatrixXd& sim, double gate, AssignmentPolicy policy)
{
  if (sim.rows() != static_cast<Eigen::Index>(track_ids.size()) ||
      sim.cols() != static_cast<Eigen::Index>(cluster_ids.size()))
  {
    throw Error("similarity matrix shape does not match ids");
  }
  return policy == AssignmentPolicy::greedy ? greedy_assign(track_ids, cluster_ids, sim, gate)
                                            : optimal_assign(track_ids, cluster_ids, sim, gate);
}

Assignment associate(const std::vector<std::pair<int, FeatureVectord>>& predicted,
                     const std::vector<Cluster>& clusters, const SimilarityFunction& sim_fn,
                     double gate, AssignmentPolicy policy)
{
  std::vector<int> track_ids;
  std::vector<int> cluster_ids;
  track_ids.reserve(predicted.size());
  cluster_ids.reserve(clusters.size());
  for (const auto& [id, f] : predicted)
  {
    track_ids.push_back(id);
  }
  for (const auto& c : clusters)
  {
    cluster_ids.push_back(c.id);
  }

  Eigen::MatrixXd sim(predicted.size(), clusters.size());
  for (std::size_t r = 0; r < predicted.size(); ++r)
  {
    for (std::size_t c = 0; c < clusters.size(); ++c)
    {
      sim(r, c) = sim_fn(predicted[r].second, clusters[c].features);
    }
  }
  return assign(track_ids, cluster_ids, sim, gate, policy);
}

Assignment associate(const std::vector<std::pair<int, FeatureVectord>>& predicted,
                     const std::vector<Cluster>& clusters, const SimilarityWeights& weights,
                     const SimilarityThresholds& thresholds, AssignmentPolicy policy)
{
  weights.validate();
  thresholds.validate();
  return associate(
      predicted, clusters,
      [&](const FeatureVectord& a, const FeatureVectord& b)
      { return similarity(a, b, weights, thresholds); },
      thresholds.gate, policy);
}

}  // namespace radtrack
