///////////////////////////////////////////////////////////////////////////////
// clustering.hpp: Non-maximum plot suppression and amplitude/velocity-aware
// density clustering of radar plots.
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <optional>
#include <vector>

#include "radtrack/core_model.hpp"

namespace radtrack
{

struct ClusteringParams
{
  double epsilon = 0.5;                 // neighbourhood radius [m]
  int min_pts = 2;                      // neighbourhood size for a core plot (self included)
  std::optional<double> amp_thres;      // unset: half the mean frame amplitude
  double vel_thres = 1.0;               // [m/s]
  double suppression_radius = 0.2;      // [m], 0 disables suppression
  // When false a plot is noise on sparsity alone (classical DBSCAN marking).
  bool amplitude_noise_test = true;

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

/// Keeps each plot whose amplitude dominates every other plot within
/// `radius`. Equal amplitudes are resolved in favour of the lower index.
Frame suppress_non_maxima(const Frame& frame, double radius);

/// Clusters the plots of `frame`. Clusters are ordered by their smallest
/// member index and numbered 0..k-1 in that order.
std::vector<Cluster> cluster(const Frame& frame, const ClusteringParams& params);

/// Indices of plots that belong to none of `clusters`.
std::vector<std::size_t> unclustered_plots(const Frame& frame, const std::vector<Cluster>& clusters);

/// Indices (self included) of plots strictly within `epsilon` of each plot.
std::vector<std::vector<std::size_t>> epsilon_neighbourhoods(const Frame& frame, double epsilon);

}  // namespace radtrack
