///////////////////////////////////////////////////////////////////////////////
// core_model.hpp: Plots, frames, bounding boxes, clusters and the cluster
// feature vector shared by every stage of the tracking pipeline.
//
// Coordinates: y is boresight (forward), x is lateral (positive right).
// Azimuth is measured from +y toward +x, so x = r sin(az), y = r cos(az).
// Radial velocity is positive when the target recedes from the radar.
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace radtrack
{

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Bad input: malformed files, invalid configuration, inconsistent streams.
class ValidationError : public Error
{
public:
  using Error::Error;
};

/// Azimuth of (x, y) measured from the +y axis toward +x.
template <typename Scalar>
Scalar azimuth(Scalar x, Scalar y)
{
  using std::atan2;
  return atan2(x, y);
}

/// One post-CFAR detection.
struct Plot
{
  double x = 0.0;
  double y = 0.0;
  double amplitude = 0.0;
  double radial_velocity = 0.0;

  Eigen::Vector2d position() const { return {x, y}; }
  double range() const { return std::hypot(x, y); }
  double azimuth() const { return radtrack::azimuth(x, y); }

  bool operator==(const Plot&) const = default;
};

/// Plots of one radar scan. Plot order is significant for tie-breaking.
struct Frame
{
  long index = 0;
  double timestamp = 0.0;
  std::vector<Plot> plots;

  bool operator==(const Frame&) const = default;
};

/// Axis-aligned box, x_max >= x_min and y_max >= y_min.
template <typename Scalar>
struct BoundingBox
{
  Scalar x_min{0};
  Scalar x_max{0};
  Scalar y_min{0};
  Scalar y_max{0};

  Scalar width() const { return x_max - x_min; }
  Scalar height() const { return y_max - y_min; }
  Scalar area() const { return width() * height(); }

  bool contains(Scalar x, Scalar y) const
  {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }

  BoundingBox translated(Scalar dx, Scalar dy) const
  {
    return {x_min + dx, x_max + dx, y_min + dy, y_max + dy};
  }

  template <typename Other>
  BoundingBox<Other> cast() const
  {
    return {Other(x_min), Other(x_max), Other(y_min), Other(y_max)};
  }

  bool operator==(const BoundingBox&) const = default;
};

/// Area of the intersection of two boxes (0 when disjoint).
template <typename Scalar>
Scalar intersection_area(const BoundingBox<Scalar>& a, const BoundingBox<Scalar>& b)
{
  using std::max;
  using std::min;
  const Scalar w = min(a.x_max, b.x_max) - max(a.x_min, b.x_min);
  const Scalar h = min(a.y_max, b.y_max) - max(a.y_min, b.y_min);
  if (w <= Scalar(0) || h <= Scalar(0))
  {
    return Scalar(0);
  }
  return w * h;
}

/// Cluster descriptor: centroid, mean radial velocity, box area, mean
/// amplitude and the box itself.
template <typename Scalar>
struct FeatureVector
{
  Scalar px{0};
  Scalar py{0};
  Scalar vr{0};
  Scalar area{0};
  Scalar amplitude{0};
  BoundingBox<Scalar> bbox;

  Eigen::Matrix<Scalar, 2, 1> centroid() const { return {px, py}; }

  bool operator==(const FeatureVector&) const = default;
};

using BoundingBoxd = BoundingBox<double>;
using FeatureVectord = FeatureVector<double>;

struct Cluster
{
  int id = 0;
  std::vector<std::size_t> member_indices;  // ascending
  FeatureVectord features;

  bool operator==(const Cluster&) const = default;
};

/// Means of position, velocity and amplitude over the members, plus their
/// min/max envelope. Throws ValidationError on an empty or out-of-range set.
FeatureVectord extract_features(const Frame& frame, std::span<const std::size_t> members);

/// Throws ValidationError if a plot has negative amplitude or non-finite fields.
void validate_plot(const Plot& plot);

}  // namespace radtrack
