#include "radtrack/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "radtrack/association.hpp"

namespace radtrack
{

std::string_view to_string(TargetClass c)
{
  switch (c)
  {
    case TargetClass::pedestrian: return "pedestrian";
    case TargetClass::bicycle: return "bicycle";
    case TargetClass::sedan: return "sedan";
    case TargetClass::clutter: return "clutter";
  }
  return "unknown";
}

TargetClass target_class_from_string(std::string_view s)
{
  if (s == "pedestrian") return TargetClass::pedestrian;
  if (s == "bicycle") return TargetClass::bicycle;
  if (s == "sedan") return TargetClass::sedan;
  if (s == "clutter") return TargetClass::clutter;
  throw ValidationError("unknown target class '" + std::string(s) + "'");
}

double cme(const std::vector<Eigen::Vector2d>& gt, const std::vector<Eigen::Vector2d>& dt)
{
  if (gt.size() != dt.size())
  {
    throw ValidationError("cme: trajectories differ in length");
  }
  if (gt.empty())
  {
    throw ValidationError("cme: no common frames");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < gt.size(); ++i)
  {
    sum += (gt[i] - dt[i]).norm();
  }
  return sum / static_cast<double>(gt.size());
}

double bbor(const std::vector<BoundingBoxd>& gt, const std::vector<BoundingBoxd>& dt)
{
  if (gt.size() != dt.size())
  {
    throw ValidationError("bbor: box sequences differ in length");
  }
  if (gt.empty())
  {
    throw ValidationError("bbor: no common frames");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < gt.size(); ++i)
  {
    sum += overlap_similarity(gt[i], dt[i]);
  }
  return sum / static_cast<double>(gt.size());
}

double f1_score(double precision, double recall)
{
  const double d = precision + recall;
  return d > 0.0 ? 2.0 * precision * recall / d : 0.0;
}

EvalReport evaluate(const std::vector<GroundTruthTrack>& gt,
                    const std::vector<DetectionSample>& detections, double match_dist)
{
  if (!(match_dist > 0.0))
  {
    throw ValidationError("eval.match_dist must be > 0");
  }

  struct GtRef
  {
    const GroundTruthTrack* track;
    const GroundTruthSample* sample;
  };
  std::map<long, std::vector<GtRef>> gt_by_frame;
  for (const auto& g : gt)
  {
    for (const auto& s : g.samples)
    {
      gt_by_frame[s.frame].push_back({&g, &s});
    }
  }
  std::map<long, std::vector<const DetectionSample*>> dt_by_frame;
  for (const auto& d : detections)
  {
    dt_by_frame[d.frame].push_back(&d);
  }
  std::set<long> frames;
  for (const auto& [f, v] : gt_by_frame) frames.insert(f);
  for (const auto& [f, v] : dt_by_frame) frames.insert(f);

  EvalReport rep;
  struct Acc
  {
    std::vector<Eigen::Vector2d> gt_c, dt_c;
    std::vector<BoundingBoxd> gt_b, dt_b;
    std::set<int> tracks;
  };
  std::map<int, Acc> per_target;
  std::vector<Eigen::Vector2d> all_gt_c, all_dt_c;
  std::vector<BoundingBoxd> all_gt_b, all_dt_b;

  for (const long frame : frames)
  {
    const auto& gts = gt_by_frame[frame];
    const auto& dts = dt_by_frame[frame];

    struct Candidate
    {
      double dist;
      int target;
      int track;
      std::size_t gi;
      std::size_t di;
    };
    std::vector<Candidate> cands;
    for (std::size_t gi = 0; gi < gts.size(); ++gi)
    {
      for (std::size_t di = 0; di < dts.size(); ++di)
      {
        const double d = (gts[gi].sample->centroid - dts[di]->centroid).norm();
        if (d <= match_dist)
        {
          cands.push_back({d, gts[gi].track->target, dts[di]->track, gi, di});
        }
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b)
              { return std::tie(a.dist, a.target, a.track) < std::tie(b.dist, b.target, b.track); });

    std::vector<bool> g_used(gts.size(), false), d_used(dts.size(), false);
    std::vector<Residual> frame_res;
    for (const auto& c : cands)
    {
      if (g_used[c.gi] || d_used[c.di])
      {
        continue;
      }
      g_used[c.gi] = d_used[c.di] = true;
      const GtRef& g = gts[c.gi];
      const DetectionSample& d = *dts[c.di];
      if (g.track->cls == TargetClass::clutter)
      {
        rep.fp += 1;
        continue;
      }
      rep.tp += 1;
      auto& acc = per_target[g.track->target];
      acc.gt_c.push_back(g.sample->centroid);
      acc.dt_c.push_back(d.centroid);
      acc.gt_b.push_back(g.sample->bbox);
      acc.dt_b.push_back(d.bbox);
      acc.tracks.insert(d.track);
      all_gt_c.push_back(g.sample->centroid);
      all_dt_c.push_back(d.centroid);
      all_gt_b.push_back(g.sample->bbox);
      all_dt_b.push_back(d.bbox);
      const Eigen::Vector2d delta = d.centroid - g.sample->centroid;
      frame_res.push_back({frame, g.track->target, d.track, delta.x(), delta.y(),
                           overlap_similarity(g.sample->bbox, d.bbox)});
    }
    for (std::size_t gi = 0; gi < gts.size(); ++gi)
    {
      if (!g_used[gi] && gts[gi].track->cls != TargetClass::clutter)
      {
        rep.fn += 1;
      }
    }
    for (std::size_t di = 0; di < dts.size(); ++di)
    {
      if (!d_used[di])
      {
        rep.fp += 1;
      }
    }
    std::sort(frame_res.begin(), frame_res.end(),
              [](const Residual& a, const Residual& b) { return a.target < b.target; });
    rep.residuals.insert(rep.residuals.end(), frame_res.begin(), frame_res.end());
  }

  rep.precision = rep.tp + rep.fp > 0 ? double(rep.tp) / double(rep.tp + rep.fp) : 0.0;
  rep.recall = rep.tp + rep.fn > 0 ? double(rep.tp) / double(rep.tp + rep.fn) : 0.0;
  rep.f1 = f1_score(rep.precision, rep.recall);
  rep.n = rep.tp;
  if (rep.tp > 0)
  {
    rep.cme = cme(all_gt_c, all_dt_c);
    rep.bbor = bbor(all_gt_b, all_dt_b);
  }

  for (const auto& g : gt)
  {
    const auto it = per_target.find(g.target);
    if (it == per_target.end())
    {
      continue;
    }
    const Acc& acc = it->second;
    TargetScore s;
    s.target = g.target;
    s.cls = g.cls;
    s.tracks.assign(acc.tracks.begin(), acc.tracks.end());
    s.n = static_cast<long>(acc.gt_c.size());
    s.cme = cme(acc.gt_c, acc.dt_c);
    s.bbor = bbor(acc.gt_b, acc.dt_b);
    rep.targets.push_back(std::move(s));
  }
  std::sort(rep.targets.begin(), rep.targets.end(),
            [](const TargetScore& a, const TargetScore& b) { return a.target < b.target; });
  return rep;
}

}  // namespace radtrack
