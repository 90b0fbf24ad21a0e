///////////////////////////////////////////////////////////////////////////////
// association.hpp: Weighted cluster feature similarity and one-to-one
// track/cluster assignment.
//
// Sim = w_dis S_dis + w_vel S_vel + w_area S_area + w_overlap S_overlap
//       + w_amp S_amp, each component clamped to [0, 1].
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "radtrack/core_model.hpp"

namespace radtrack
{

struct SimilarityWeights
{
  double distance = 0.3;
  double velocity = 0.2;
  double area = 0.15;
  double overlap = 0.2;
  double amplitude = 0.15;

  void validate() const;
};

struct SimilarityThresholds
{
  double d_thres = 2.0;     // [m]
  double v_thres = 2.0;     // [m/s]
  double area_thres = 2.0;  // [m^2]
  double gate = 0.4;        // minimum Sim for a match, in (0, 1]

  void validate() const;
};

enum class AssignmentPolicy
{
  greedy,   // repeatedly take the best remaining pair
  optimal,  // maximise total similarity (exhaustive)
};

struct MatchedPair
{
  int track_id = 0;
  int cluster_id = 0;
  double similarity = 0.0;

  bool operator==(const MatchedPair&) const = default;
};

struct Assignment
{
  std::vector<MatchedPair> pairs;
  std::vector<int> unmatched_tracks;
  std::vector<int> unmatched_clusters;

  double total_similarity() const;
};

namespace detail
{
template <typename Scalar>
Scalar clamp01(Scalar v)
{
  return std::clamp(v, Scalar(0), Scalar(1));
}
}  // namespace detail

template <typename Scalar>
Scalar distance_similarity(const FeatureVector<Scalar>& a, const FeatureVector<Scalar>& b,
                           Scalar d_thres)
{
  return detail::clamp01(Scalar(1) - (a.centroid() - b.centroid()).norm() / d_thres);
}

template <typename Scalar>
Scalar velocity_similarity(const FeatureVector<Scalar>& a, const FeatureVector<Scalar>& b,
                           Scalar v_thres)
{
  using std::abs;
  return detail::clamp01(Scalar(1) - abs(a.vr - b.vr) / v_thres);
}

template <typename Scalar>
Scalar area_similarity(const FeatureVector<Scalar>& a, const FeatureVector<Scalar>& b,
                       Scalar area_thres)
{
  using std::abs;
  return detail::clamp01(Scalar(1) - abs(a.area - b.area) / area_thres);
}

/// Intersection over union. Two zero-area boxes score 1 only if identical.
template <typename Scalar>
Scalar overlap_similarity(const BoundingBox<Scalar>& a, const BoundingBox<Scalar>& b)
{
  const Scalar area_a = a.area();
  const Scalar area_b = b.area();
  if (area_a <= Scalar(0) && area_b <= Scalar(0))
  {
    return a == b ? Scalar(1) : Scalar(0);
  }
  const Scalar inter = intersection_area(a, b);
  const Scalar uni = area_a + area_b - inter;
  return detail::clamp01(inter / uni);
}

/// 1 - |dA| / max(A1, A2); two zero amplitudes score 1.
template <typename Scalar>
Scalar amplitude_similarity(const FeatureVector<Scalar>& a, const FeatureVector<Scalar>& b)
{
  using std::abs;
  using std::max;
  const Scalar m = max(a.amplitude, b.amplitude);
  if (m <= Scalar(0))
  {
    return Scalar(1);
  }
  return detail::clamp01(Scalar(1) - abs(a.amplitude - b.amplitude) / m);
}

/// The five components in weight order (distance, velocity, area, overlap,
/// amplitude).
template <typename Scalar>
Eigen::Matrix<Scalar, 5, 1> similarity_components(const FeatureVector<Scalar>& a,
                                                  const FeatureVector<Scalar>& b,
                                                  const SimilarityThresholds& t)
{
  Eigen::Matrix<Scalar, 5, 1> s;
  s << distance_similarity(a, b, Scalar(t.d_thres)), velocity_similarity(a, b, Scalar(t.v_thres)),
      area_similarity(a, b, Scalar(t.area_thres)), overlap_similarity(a.bbox, b.bbox),
      amplitude_similarity(a, b);
  return s;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 5, 1> weight_vector(const SimilarityWeights& w)
{
  return Eigen::Matrix<Scalar, 5, 1>(Scalar(w.distance), Scalar(w.velocity), Scalar(w.area),
                                     Scalar(w.overlap), Scalar(w.amplitude));
}

template <typename Scalar>
Scalar similarity(const FeatureVector<Scalar>& a, const FeatureVector<Scalar>& b,
                  const SimilarityWeights& w, const SimilarityThresholds& t)
{
  if (a == b)
  {
    return Scalar(1);
  }
  return detail::clamp01(weight_vector<Scalar>(w).dot(similarity_components(a, b, t)));
}

using SimilarityFunction = std::function<double(const FeatureVectord&, const FeatureVectord&)>;

/// Matches rows (tracks) to columns (clusters) of a precomputed similarity
/// matrix. Greedy ties resolve by lower track id, then lower cluster id.
Assignment assign(const std::vector<int>& track_ids, const std::vector<int>& cluster_ids,
                  const Eigen::MatrixXd& sim, double gate,
                  AssignmentPolicy policy = AssignmentPolicy::greedy);

Assignment associate(const std::vector<std::pair<int, FeatureVectord>>& predicted,
                     const std::vector<Cluster>& clusters, const SimilarityWeights& weights,
                     const SimilarityThresholds& thresholds,
                     AssignmentPolicy policy = AssignmentPolicy::greedy);

/// Same as above with an arbitrary pairwise similarity.
Assignment associate(const std::vector<std::pair<int, FeatureVectord>>& predicted,
                     const std::vector<Cluster>& clusters, const SimilarityFunction& sim_fn,
                     double gate, AssignmentPolicy policy = AssignmentPolicy::greedy);

}  // namespace radtrack
