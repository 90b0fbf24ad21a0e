#include "radtrack/io.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace radtrack
{

using nlohmann::json;

namespace
{

const json& field(const json& j, const char* key)
{
  if (!j.is_object())
  {
    throw ValidationError("record must be a JSON object");
  }
  const auto it = j.find(key);
  if (it == j.end())
  {
    throw ValidationError(std::string("missing field '") + key + "'");
  }
  return *it;
}

double number(const json& j, const char* key)
{
  const json& v = field(j, key);
  if (!v.is_number())
  {
    throw ValidationError(std::string("field '") + key + "' must be a number");
  }
  return v.get<double>();
}

long integer(const json& j, const char* key)
{
  const json& v = field(j, key);
  if (!v.is_number_integer())
  {
    throw ValidationError(std::string("field '") + key + "' must be an integer");
  }
  return v.get<long>();
}

BoundingBoxd bbox_from_json(const json& j)
{
  const json& b = field(j, "bbox");
  if (!b.is_array() || b.size() != 4)
  {
    throw ValidationError("field 'bbox' must be [xmin, xmax, ymin, ymax]");
  }
  for (const auto& v : b)
  {
    if (!v.is_number())
    {
      throw ValidationError("field 'bbox' must hold numbers");
    }
  }
  BoundingBoxd box{b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()};
  if (box.x_max < box.x_min || box.y_max < box.y_min)
  {
    throw ValidationError("field 'bbox' has max < min");
  }
  return box;
}

json bbox_to_json(const BoundingBoxd& b)
{
  return json::array({b.x_min, b.x_max, b.y_min, b.y_max});
}

void for_each_line(std::istream& in, const std::function<void(const json&)>& fn)
{
  std::string line;
  long line_no = 0;
  while (std::getline(in, line))
  {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
    {
      continue;
    }
    try
    {
      fn(json::parse(line));
    }
    catch (const json::exception& e)
    {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
    catch (const ValidationError& e)
    {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void for_each_line(const std::filesystem::path& path, const std::function<void(const json&)>& fn)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ValidationError("cannot open " + path.string());
  }
  try
  {
    for_each_line(in, fn);
  }
  catch (const ValidationError& e)
  {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::ofstream open_out(const std::filesystem::path& path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
  {
    throw Error("cannot write " + path.string());
  }
  return out;
}

}  // namespace

std::string format_double(double v)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

json to_json(const Frame& f)
{
  json plots = json::array();
  for (const auto& p : f.plots)
  {
    plots.push_back({{"x", p.x}, {"y", p.y}, {"amp", p.amplitude}, {"vr", p.radial_velocity}});
  }
  return {{"index", f.index}, {"timestamp", f.timestamp}, {"plots", plots}};
}

Frame frame_from_json(const json& j)
{
  Frame f;
  f.index = integer(j, "index");
  if (f.index < 0)
  {
    throw ValidationError("field 'index' must be >= 0");
  }
  f.timestamp = number(j, "timestamp");
  const json& plots = field(j, "plots");
  if (!plots.is_array())
  {
    throw ValidationError("field 'plots' must be an array");
  }
  for (const auto& pj : plots)
  {
    Plot p{number(pj, "x"), number(pj, "y"), number(pj, "amp"), number(pj, "vr")};
    validate_plot(p);
    f.plots.push_back(p);
  }
  return f;
}

json to_json(const EgoMotion& e)
{
  return {{"frame", e.frame}, {"vx", e.vx}, {"vy", e.vy}};
}

EgoMotion ego_from_json(const json& j)
{
  EgoMotion e{integer(j, "frame"), number(j, "vx"), number(j, "vy")};
  if (j.contains("heading"))
  {
    const double h = number(j, "heading");
    if (h != 0.0)
    {
      throw ValidationError("frame " + std::to_string(e.frame) +
                            ": nonzero heading is not supported (straight-line ego motion only)");
    }
  }
  return e;
}

json to_json(const TrackRecord& r)
{
  json j = {{"frame", r.frame},
            {"track_id", r.track_id},
            {"status", std::string(to_string(r.status))},
            {"px", r.px},
            {"py", r.py},
            {"vx", r.vx},
            {"vy", r.vy},
            {"bbox", bbox_to_json(r.bbox)},
            {"similarity", r.similarity ? json(*r.similarity) : json(nullptr)}};
  if (r.moving)
  {
    j["moving"] = *r.moving;
  }
  return j;
}

TrackRecord track_record_from_json(const json& j)
{
  TrackRecord r;
  r.frame = integer(j, "frame");
  r.track_id = static_cast<int>(integer(j, "track_id"));
  const json& status = field(j, "status");
  if (!status.is_string())
  {
    throw ValidationError("field 'status' must be a string");
  }
  r.status = track_status_from_string(status.get<std::string>());
  r.px = number(j, "px");
  r.py = number(j, "py");
  r.vx = number(j, "vx");
  r.vy = number(j, "vy");
  r.bbox = bbox_from_json(j);
  if (const auto it = j.find("similarity"); it != j.end() && !it->is_null())
  {
    r.similarity = number(j, "similarity");
  }
  if (const auto it = j.find("moving"); it != j.end() && !it->is_null())
  {
    if (!it->is_boolean())
    {
      throw ValidationError("field 'moving' must be a boolean");
    }
    r.moving = it->get<bool>();
  }
  return r;
}

json to_json(const CorrectedRecord& r)
{
  json j = {{"frame", r.frame},
            {"track_id", r.track_id},
            {"status", std::string(to_string(r.status))},
            {"moving", r.moving},
            {"residual", r.residual ? json(*r.residual) : json(nullptr)},
            {"wx", r.world.x()},
            {"wy", r.world.y()}};
  if (r.world_measured)
  {
    j["mx"] = r.world_measured->x();
    j["my"] = r.world_measured->y();
  }
  else
  {
    j["mx"] = nullptr;
    j["my"] = nullptr;
  }
  return j;
}

std::vector<json> gt_to_json_lines(const std::vector<GroundTruthTrack>& gt)
{
  std::map<std::pair<long, int>, json> ordered;
  for (const auto& g : gt)
  {
    for (const auto& s : g.samples)
    {
      ordered[{s.frame, g.target}] = {{"frame", s.frame},
                                      {"target", g.target},
                                      {"class", std::string(to_string(g.cls))},
                                      {"cx", s.centroid.x()},
                                      {"cy", s.centroid.y()},
                                      {"bbox", bbox_to_json(s.bbox)}};
    }
  }
  std::vector<json> lines;
  lines.reserve(ordered.size());
  for (auto& [key, j] : ordered)
  {
    lines.push_back(std::move(j));
  }
  return lines;
}

namespace
{

void add_gt_line(std::map<int, GroundTruthTrack>& by_target, const json& j)
{
  const int target = static_cast<int>(integer(j, "target"));
  const json& cls = field(j, "class");
  if (!cls.is_string())
  {
    throw ValidationError("field 'class' must be a string");
  }
  const TargetClass c = target_class_from_string(cls.get<std::string>());
  auto [it, inserted] = by_target.try_emplace(target);
  GroundTruthTrack& g = it->second;
  if (inserted)
  {
    g.target = target;
    g.cls = c;
  }
  else if (g.cls != c)
  {
    throw ValidationError("target " + std::to_string(target) + " changes class");
  }
  g.samples.push_back({integer(j, "frame"), {number(j, "cx"), number(j, "cy")}, bbox_from_json(j)});
}

std::vector<GroundTruthTrack> finish_gt(std::map<int, GroundTruthTrack>& by_target)
{
  std::vector<GroundTruthTrack> out;
  for (auto& [id, g] : by_target)
  {
    std::sort(g.samples.begin(), g.samples.end(),
              [](const GroundTruthSample& a, const GroundTruthSample& b) { return a.frame < b.frame; });
    for (std::size_t i = 1; i < g.samples.size(); ++i)
    {
      if (g.samples[i].frame != g.samples[i - 1].frame + 1)
      {
        throw ValidationError("ground truth for target " + std::to_string(id) +
                              " is not contiguous at frame " + std::to_string(g.samples[i].frame));
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

std::vector<GroundTruthTrack> gt_from_json_lines(const std::vector<json>& lines)
{
  std::map<int, GroundTruthTrack> by_target;
  for (std::size_t i = 0; i < lines.size(); ++i)
  {
    try
    {
      add_gt_line(by_target, lines[i]);
    }
    catch (const ValidationError& e)
    {
      throw ValidationError("line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return finish_gt(by_target);
}

std::vector<json> read_json_lines(std::istream& in)
{
  std::vector<json> out;
  for_each_line(in, [&](const json& j) { out.push_back(j); });
  return out;
}

std::vector<json> read_json_lines(const std::filesystem::path& path)
{
  std::vector<json> out;
  for_each_line(path, [&](const json& j) { out.push_back(j); });
  return out;
}

void write_json_lines(std::ostream& out, const std::vector<json>& lines)
{
  for (const auto& j : lines)
  {
    out << j.dump() << '\n';
  }
}

void write_json_lines(const std::filesystem::path& path, const std::vector<json>& lines)
{
  auto out = open_out(path);
  write_json_lines(out, lines);
}

std::vector<Frame> read_frames(const std::filesystem::path& path)
{
  std::vector<Frame> frames;
  for_each_line(path, [&](const json& j) { frames.push_back(frame_from_json(j)); });
  return frames;
}

std::vector<EgoMotion> read_ego(const std::filesystem::path& path)
{
  std::vector<EgoMotion> ego;
  for_each_line(path, [&](const json& j) { ego.push_back(ego_from_json(j)); });
  return ego;
}

std::vector<GroundTruthTrack> read_gt(const std::filesystem::path& path)
{
  std::map<int, GroundTruthTrack> by_target;
  for_each_line(path, [&](const json& j) { add_gt_line(by_target, j); });
  return finish_gt(by_target);
}

std::vector<TrackRecord> read_track_records(const std::filesystem::path& path)
{
  std::vector<TrackRecord> recs;
  for_each_line(path, [&](const json& j) { recs.push_back(track_record_from_json(j)); });
  return recs;
}

void write_frames(const std::filesystem::path& path, const std::vector<Frame>& frames)
{
  auto out = open_out(path);
  for (const auto& f : frames)
  {
    out << to_json(f).dump() << '\n';
  }
}

void write_ego(const std::filesystem::path& path, const std::vector<EgoMotion>& ego)
{
  auto out = open_out(path);
  for (const auto& e : ego)
  {
    out << to_json(e).dump() << '\n';
  }
}

void write_gt(const std::filesystem::path& path, const std::vector<GroundTruthTrack>& gt)
{
  write_json_lines(path, gt_to_json_lines(gt));
}

void write_track_records(const std::filesystem::path& path, const std::vector<TrackRecord>& recs)
{
  auto out = open_out(path);
  for (const auto& r : recs)
  {
    out << to_json(r).dump() << '\n';
  }
}

}  // namespace radtrack
