#include "radtrack/tracking.hpp"

#include <algorithm>
#include <map>

namespace radtrack
{

std::string_view to_string(TrackStatus s)
{
  switch (s)
  {
    case TrackStatus::tentative: return "tentative";
    case TrackStatus::confirmed: return "confirmed";
    case TrackStatus::coasting: return "coasting";
    case TrackStatus::deleted: return "deleted";
  }
  return "unknown";
}

TrackStatus track_status_from_string(std::string_view s)
{
  if (s == "tentative") return TrackStatus::tentative;
  if (s == "confirmed") return TrackStatus::confirmed;
  if (s == "coasting") return TrackStatus::coasting;
  if (s == "deleted") return TrackStatus::deleted;
  throw ValidationError("unknown track status '" + std::string(s) + "'");
}

std::string_view to_string(TrackEventKind k)
{
  switch (k)
  {
    case TrackEventKind::created: return "created";
    case TrackEventKind::confirmed: return "confirmed";
    case TrackEventKind::coasting: return "coasting";
    case TrackEventKind::deleted: return "deleted";
  }
  return "unknown";
}

bool is_valid_transition(TrackStatus from, TrackStatus to)
{
  switch (from)
  {
    case TrackStatus::tentative:
      return to == TrackStatus::confirmed || to == TrackStatus::deleted;
    case TrackStatus::confirmed: return to == TrackStatus::coasting;
    case TrackStatus::coasting:
      return to == TrackStatus::confirmed || to == TrackStatus::deleted;
    case TrackStatus::deleted: return false;
  }
  return false;
}

void LifecycleConfig::validate() const
{
  if (confirm_hits < 1)
  {
    throw ValidationError("lifecycle.confirm_hits must be >= 1");
  }
  if (max_misses < 1)
  {
    throw ValidationError("lifecycle.max_misses must be >= 1");
  }
}

void KFConfig::validate() const
{
  const std::pair<double, const char*> q[] = {
      {q_pos, "kf.q_pos"}, {q_vel, "kf.q_vel"}, {q_box, "kf.q_box"}};
  for (const auto& [v, name] : q)
  {
    if (!(v >= 0.0) || std::isinf(v))
    {
      throw ValidationError(std::string(name) + " must be >= 0");
    }
  }
  const std::pair<double, const char*> r[] = {
      {r_pos, "kf.r_pos"}, {r_vel, "kf.r_vel"}, {r_box, "kf.r_box"}};
  for (const auto& [v, name] : r)
  {
    if (!(v > 0.0) || std::isinf(v))
    {
      throw ValidationError(std::string(name) + " must be > 0");
    }
  }
  if (!(xi >= 0.0 && xi <= 1.0))
  {
    throw ValidationError("kf.xi must be in [0, 1]");
  }
}

void TrackerConfig::validate() const
{
  kf.validate();
  weights.validate();
  thresholds.validate();
  lifecycle.validate();
  if (!(delta_v > 0.0))
  {
    throw ValidationError("ego.delta_v must be > 0");
  }
}

FeatureVectord Track::estimate() const
{
  const auto& x = state.x;
  FeatureVectord f;
  f.px = x(kPx);
  f.py = x(kPy);
  f.bbox = {x(kBXmin), x(kBXmax), x(kBYmin), x(kBYmax)};
  f.area = f.bbox.area();
  const double az = azimuth(f.px, f.py);
  f.vr = x(kVx) * std::sin(az) + x(kVy) * std::cos(az);
  f.amplitude = amplitude;
  return f;
}

Tracker::Tracker(TrackerConfig cfg) : cfg_(std::move(cfg))
{
  cfg_.validate();
}

double Tracker::raw_vr(const FeatureVectord& f, const std::optional<EgoMotion>& ego) const
{
  if (cfg_.compensated_input && ego)
  {
    return f.vr - static_radial_velocity(*ego, azimuth(f.px, f.py));
  }
  return f.vr;
}

namespace
{

StateVector<double> state_from_features(const FeatureVectord& f, const Eigen::Vector2d& velocity)
{
  StateVector<double> z;
  z << f.px, f.py, velocity.x(), velocity.y(), f.bbox.x_max, f.bbox.x_min, f.bbox.y_max,
      f.bbox.y_min;
  return z;
}

}  // namespace

Track Tracker::spawn(const Cluster& c, const Frame& frame, const std::optional<EgoMotion>& ego)
{
  const auto& f = c.features;
  Track t;
  t.id = next_id_++;
  t.state.x = state_from_features(f, radial_velocity_vector(f.centroid(), raw_vr(f, ego)));
  StateVector<double> p0;
  p0 << cfg_.kf.r_pos, cfg_.kf.r_pos, cfg_.kf.r_vel, cfg_.kf.r_vel, cfg_.kf.r_box, cfg_.kf.r_box,
      cfg_.kf.r_box, cfg_.kf.r_box;
  t.state.P = p0.asDiagonal();
  t.status = cfg_.lifecycle.confirm_hits <= 1 ? TrackStatus::confirmed : TrackStatus::tentative;
  t.last_centroid = f.centroid();
  t.last_centroid_time = frame.timestamp;
  t.amplitude = f.amplitude;

  HistoryEntry h{frame.index, t.estimate(), f, std::nullopt, std::nullopt};
  if (ego)
  {
    const double residual =
        cfg_.compensated_input ? f.vr
                               : compensated_radial_velocity(f.vr, azimuth(f.px, f.py), *ego);
    h.residual = residual;
    t.moving = std::abs(residual) > cfg_.delta_v;
  }
  t.history.push_back(std::move(h));
  return t;
}

std::vector<TrackEvent> Tracker::step(const Frame& frame, const std::vector<Cluster>& clusters,
                                      const std::optional<EgoMotion>& ego)
{
  if (last_timestamp_ && !(frame.timestamp > *last_timestamp_))
  {
    throw ValidationError("frame " + std::to_string(frame.index) +
                          ": timestamp not after previous frame");
  }

  std::erase_if(tracks_, [](const Track& t) { return t.status == TrackStatus::deleted; });

  std::vector<TrackEvent> events;
  std::vector<std::pair<int, FeatureVectord>> predicted;
  predicted.reserve(tracks_.size());

  if (last_timestamp_)
  {
    const double dt = frame.timestamp - *last_timestamp_;
    for (auto& t : tracks_)
    {
      t.state = predict(t.state, dt, cfg_.kf);
    }
  }
  for (const auto& t : tracks_)
  {
    FeatureVectord f = t.estimate();
    if (cfg_.compensated_input && ego)
    {
      f.vr = compensated_radial_velocity(f.vr, azimuth(f.px, f.py), *ego);
    }
    predicted.emplace_back(t.id, f);
  }

  const Assignment assignment =
      sim_override_ ? associate(predicted, clusters, sim_override_, cfg_.thresholds.gate, cfg_.policy)
                    : associate(predicted, clusters, cfg_.weights, cfg_.thresholds, cfg_.policy);

  std::map<int, const Cluster*> cluster_by_id;
  for (const auto& c : clusters)
  {
    cluster_by_id[c.id] = &c;
  }
  std::map<int, Track*> track_by_id;
  for (auto& t : tracks_)
  {
    track_by_id[t.id] = &t;
  }

  for (const auto& pair : assignment.pairs)
  {
    Track& t = *track_by_id.at(pair.track_id);
    const FeatureVectord& f = cluster_by_id.at(pair.cluster_id)->features;
    const double vr = raw_vr(f, ego);
    const double dt_meas = frame.timestamp - t.last_centroid_time;

    const Eigen::Vector2d velocity =
        t.last_centroid.norm() > 0.0
            ? estimate_tangential_velocity<double>(t.last_centroid, f.centroid(), vr, dt_meas,
                                                   cfg_.kf.xi)
            : radial_velocity_vector(f.centroid(), vr);
    t.state = update(t.state, state_from_features(f, velocity), cfg_.kf);

    t.hits += 1;
    t.consecutive_misses = 0;
    t.last_centroid = f.centroid();
    t.last_centroid_time = frame.timestamp;
    t.amplitude = f.amplitude;

    if ((t.status == TrackStatus::tentative && t.hits >= cfg_.lifecycle.confirm_hits) ||
        t.status == TrackStatus::coasting)
    {
      t.status = TrackStatus::confirmed;
      events.push_back({frame.index, t.id, TrackEventKind::confirmed});
    }

    HistoryEntry h{frame.index, t.estimate(), f, pair.similarity, std::nullopt};
    if (ego)
    {
      const double residual = cfg_.compensated_input
                                  ? f.vr
                                  : compensated_radial_velocity(f.vr, azimuth(f.px, f.py), *ego);
      h.residual = residual;
      t.moving = t.moving || std::abs(residual) > cfg_.delta_v;
    }
    t.history.push_back(std::move(h));
  }

  for (const int id : assignment.unmatched_tracks)
  {
    Track& t = *track_by_id.at(id);
    t.consecutive_misses += 1;
    if (t.status == TrackStatus::confirmed)
    {
      t.status = TrackStatus::coasting;
      events.push_back({frame.index, t.id, TrackEventKind::coasting});
    }
    if (t.consecutive_misses >= cfg_.lifecycle.max_misses)
    {
      t.status = TrackStatus::deleted;
      events.push_back({frame.index, t.id, TrackEventKind::deleted});
    }
    t.history.push_back({frame.index, t.estimate(), std::nullopt, std::nullopt, std::nullopt});
  }

  for (const int id : assignment.unmatched_clusters)
  {
    Track t = spawn(*cluster_by_id.at(id), frame, ego);
    events.push_back({frame.index, t.id, TrackEventKind::created});
    if (t.status == TrackStatus::confirmed)
    {
      events.push_back({frame.index, t.id, TrackEventKind::confirmed});
    }
    tracks_.push_back(std::move(t));
  }

  last_timestamp_ = frame.timestamp;
  return events;
}

}  // namespace radtrack
