#include "radtrack/pipeline.hpp"

#include <map>
#include <sstream>

#include "radtrack/clustering.hpp"
#include "radtrack/ego_motion.hpp"

namespace radtrack
{

using nlohmann::json;

namespace
{

std::map<long, EgoMotion> index_ego(const std::vector<Frame>& frames,
                                    const std::vector<EgoMotion>& ego)
{
  std::map<long, EgoMotion> by_frame;
  for (const auto& e : ego)
  {
    if (!by_frame.emplace(e.frame, e).second)
    {
      throw ValidationError("duplicate ego record for frame " + std::to_string(e.frame));
    }
  }
  for (const auto& f : frames)
  {
    ego_for_frame(by_frame, f.index);
  }
  return by_frame;
}

}  // namespace

TrackRun run_tracking(const std::vector<Frame>& frames,
                      const std::optional<std::vector<EgoMotion>>& ego,
                      const PipelineConfig& cfg, const SimilarityFunction& sim_override)
{
  cfg.validate();
  std::map<long, EgoMotion> ego_by_frame;
  if (ego)
  {
    ego_by_frame = index_ego(frames, *ego);
  }

  TrackerConfig tcfg = cfg.tracker;
  tcfg.compensated_input = cfg.compensate_before_association && ego.has_value();
  Tracker tracker(tcfg);
  if (sim_override)
  {
    tracker.set_similarity(sim_override);
  }

  TrackRun run;
  std::map<int, Track> every_track;
  for (const auto& frame : frames)
  {
    std::optional<EgoMotion> frame_ego;
    if (ego)
    {
      frame_ego = ego_by_frame.at(frame.index);
    }

    Frame working = suppress_non_maxima(frame, cfg.clustering.suppression_radius);
    if (tcfg.compensated_input)
    {
      working = compensate_frame(working, *frame_ego);
    }
    const auto clusters = cluster(working, cfg.clustering);
    const auto events = tracker.step(working, clusters, frame_ego);
    run.events.insert(run.events.end(), events.begin(), events.end());

    for (const auto& t : tracker.tracks())
    {
      every_track[t.id] = t;
      const HistoryEntry& h = t.history.back();
      TrackRecord r;
      r.frame = frame.index;
      r.track_id = t.id;
      r.status = t.status;
      r.px = t.state.x(kPx);
      r.py = t.state.x(kPy);
      r.vx = t.state.x(kVx);
      r.vy = t.state.x(kVy);
      r.bbox = h.estimate.bbox;
      r.similarity = h.similarity;
      if (ego)
      {
        r.moving = t.moving;
      }
      run.records.push_back(r);
    }
  }
  run.final_tracks = tracker.tracks();
  for (auto& [id, t] : every_track)
  {
    run.all_tracks.push_back(std::move(t));
  }

  if (ego)
  {
    std::vector<FrameTime> times;
    times.reserve(frames.size());
    for (const auto& f : frames)
    {
      times.push_back({f.index, f.timestamp});
    }
    const auto poses = dead_reckon(times, *ego);

    std::map<std::pair<int, long>, const HistoryEntry*> history;
    for (const auto& t : run.all_tracks)
    {
      for (const auto& h : t.history)
      {
        history[{t.id, h.frame}] = &h;
      }
    }

    std::vector<WorldPoint> estimates;
    std::vector<WorldPoint> measured;
    for (const auto& r : run.records)
    {
      estimates.push_back({r.frame, {r.px, r.py}});
      const HistoryEntry& h = *history.at({r.track_id, r.frame});
      if (h.measurement)
      {
        measured.push_back({r.frame, h.measurement->centroid()});
      }
    }
    const auto world = correct_trajectory(estimates, poses);
    const auto world_measured = correct_trajectory(measured, poses);

    std::size_t mi = 0;
    for (std::size_t i = 0; i < run.records.size(); ++i)
    {
      const auto& r = run.records[i];
      const HistoryEntry& h = *history.at({r.track_id, r.frame});
      CorrectedRecord c;
      c.frame = r.frame;
      c.track_id = r.track_id;
      c.status = r.status;
      c.moving = r.moving.value_or(false);
      c.residual = h.residual;
      c.world = world[i].position;
      if (h.measurement)
      {
        c.world_measured = world_measured[mi++].position;
      }
      run.corrected.push_back(c);
    }
  }
  return run;
}

std::vector<DetectionSample> detections_from_records(const std::vector<TrackRecord>& records)
{
  std::vector<DetectionSample> out;
  for (const auto& r : records)
  {
    const bool live = r.status == TrackStatus::confirmed || r.status == TrackStatus::coasting;
    if (live && r.moving.value_or(true))
    {
      out.push_back({r.frame, r.track_id, {r.px, r.py}, r.bbox});
    }
  }
  return out;
}

std::vector<TrackRecord> records_from_gt(const std::vector<GroundTruthTrack>& gt)
{
  std::vector<TrackRecord> out;
  for (const auto& g : gt)
  {
    if (g.cls == TargetClass::clutter)
    {
      continue;
    }
    for (const auto& s : g.samples)
    {
      TrackRecord r;
      r.frame = s.frame;
      r.track_id = g.target;
      r.status = TrackStatus::confirmed;
      r.px = s.centroid.x();
      r.py = s.centroid.y();
      r.bbox = s.bbox;
      out.push_back(r);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const TrackRecord& a, const TrackRecord& b)
                   { return std::tie(a.frame, a.track_id) < std::tie(b.frame, b.track_id); });
  return out;
}

json report_to_json(const EvalReport& rep, const PipelineConfig& cfg)
{
  json targets = json::array();
  for (const auto& t : rep.targets)
  {
    targets.push_back({{"target", t.target},
                       {"class", std::string(to_string(t.cls))},
                       {"tracks", t.tracks},
                       {"n", t.n},
                       {"cme", t.cme},
                       {"bbor", t.bbor}});
  }
  return {{"config", to_json(cfg)},
          {"overall",
           {{"tp", rep.tp},
            {"fp", rep.fp},
            {"fn", rep.fn},
            {"precision", rep.precision},
            {"recall", rep.recall},
            {"f1", rep.f1},
            {"n", rep.n},
            {"cme", rep.cme},
            {"bbor", rep.bbor}}},
          {"targets", targets}};
}

std::string residuals_csv(const EvalReport& rep)
{
  std::ostringstream os;
  os << "frame,target,track,dx,dy,iou\n";
  for (const auto& r : rep.residuals)
  {
    os << r.frame << ',' << r.target << ',' << r.track << ',' << format_double(r.dx) << ','
       << format_double(r.dy) << ',' << format_double(r.iou) << '\n';
  }
  return os.str();
}

}  // namespace radtrack
