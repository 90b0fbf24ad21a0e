///////////////////////////////////////////////////////////////////////////////
// metrics.hpp: Centroid matching error, bounding-box overlap rate and
// frame-level detection F1 of tracker output against ground truth.
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

#include "radtrack/core_model.hpp"

namespace radtrack
{

enum class TargetClass
{
  pedestrian,
  bicycle,
  sedan,
  clutter,
};

std::string_view to_string(TargetClass c);
TargetClass target_class_from_string(std::string_view s);

struct GroundTruthSample
{
  long frame = 0;
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
  BoundingBoxd bbox;
};

struct GroundTruthTrack
{
  int target = 0;
  TargetClass cls = TargetClass::pedestrian;
  std::vector<GroundTruthSample> samples;  // contiguous frames
};

/// One reported detection of a tracker track in one frame.
struct DetectionSample
{
  long frame = 0;
  int track = 0;
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
  BoundingBoxd bbox;
};

struct Residual
{
  long frame = 0;
  int target = 0;
  int track = 0;
  double dx = 0.0;
  double dy = 0.0;
  double iou = 0.0;
};

struct TargetScore
{
  int target = 0;
  TargetClass cls = TargetClass::pedestrian;
  std::vector<int> tracks;  // track ids matched at least once, ascending
  long n = 0;               // matched frame count
  double cme = 0.0;
  double bbor = 0.0;
};

struct EvalReport
{
  long tp = 0;
  long fp = 0;
  long fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long n = 0;          // true-positive triples
  double cme = 0.0;    // over all true positives
  double bbor = 0.0;
  std::vector<TargetScore> targets;  // non-clutter targets with n > 0, by id
  std::vector<Residual> residuals;   // by frame, then target
};

/// Mean Euclidean distance between paired centroids.
double cme(const std::vector<Eigen::Vector2d>& gt, const std::vector<Eigen::Vector2d>& dt);

/// Mean IoU between paired boxes.
double bbor(const std::vector<BoundingBoxd>& gt, const std::vector<BoundingBoxd>& dt);

/// 2PR/(P+R), 0 when P + R = 0.
double f1_score(double precision, double recall);

/// Per frame, greedily pairs detections with ground-truth targets by
/// nearest centroid within `match_dist`. Detections on clutter count as
/// false positives; clutter is never a false negative.
EvalReport evaluate(const std::vector<GroundTruthTrack>& gt,
                    const std::vector<DetectionSample>& detections, double match_dist);

}  // namespace radtrack
