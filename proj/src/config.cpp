#include "radtrack/config.hpp"

#include <fstream>
#include <set>
#include <string>

namespace radtrack
{

using nlohmann::json;

namespace
{

// Reads typed fields from one JSON object and rejects keys nobody asked for.
class Section
{
public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path))
  {
    if (!obj_.is_object())
    {
      throw ValidationError(where() + " must be an object");
    }
  }

  ~Section() noexcept(false)
  {
    if (std::uncaught_exceptions() > 0)
    {
      return;
    }
    for (const auto& [key, value] : obj_.items())
    {
      if (!seen_.count(key))
      {
        throw ValidationError("unknown key '" + qualify(key) + "'");
      }
    }
  }

  Section(const Section&) = delete;
  Section& operator=(const Section&) = delete;

  const json* find(const std::string& key)
  {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out)
  {
    if (const json* v = find(key))
    {
      if (!v->is_number())
      {
        throw ValidationError(qualify(key) + " must be a number");
      }
      out = v->get<double>();
    }
  }

  void integer(const std::string& key, int& out)
  {
    if (const json* v = find(key))
    {
      if (!v->is_number_integer())
      {
        throw ValidationError(qualify(key) + " must be an integer");
      }
      out = v->get<int>();
    }
  }

  void boolean(const std::string& key, bool& out)
  {
    if (const json* v = find(key))
    {
      if (!v->is_boolean())
      {
        throw ValidationError(qualify(key) + " must be a boolean");
      }
      out = v->get<bool>();
    }
  }

  void vec2(const std::string& key, Eigen::Vector2d& out)
  {
    if (const json* v = find(key))
    {
      if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number())
      {
        throw ValidationError(qualify(key) + " must be [number, number]");
      }
      out = {(*v)[0].get<double>(), (*v)[1].get<double>()};
    }
  }

  std::string qualify(const std::string& key) const
  {
    return path_.empty() ? key : path_ + "." + key;
  }

private:
  std::string where() const { return path_.empty() ? "document" : path_; }

  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_clustering(const json& j, ClusteringParams& c)
{
  Section s(j, "clustering");
  s.number("epsilon", c.epsilon);
  s.integer("min_pts", c.min_pts);
  if (const json* v = s.find("amp_thres"))
  {
    if (v->is_null())
    {
      c.amp_thres.reset();
    }
    else if (v->is_number())
    {
      c.amp_thres = v->get<double>();
    }
    else
    {
      throw ValidationError("clustering.amp_thres must be a number or null");
    }
  }
  s.number("vel_thres", c.vel_thres);
  s.number("suppression_radius", c.suppression_radius);
  s.boolean("amplitude_noise_test", c.amplitude_noise_test);
}

void read_weights(const json& j, SimilarityWeights& w)
{
  Section s(j, "weights");
  s.number("distance", w.distance);
  s.number("velocity", w.velocity);
  s.number("area", w.area);
  s.number("overlap", w.overlap);
  s.number("amplitude", w.amplitude);
}

void read_thresholds(const json& j, SimilarityThresholds& t)
{
  Section s(j, "thresholds");
  s.number("d_thres", t.d_thres);
  s.number("v_thres", t.v_thres);
  s.number("area_thres", t.area_thres);
  s.number("gate", t.gate);
}

void read_kf(const json& j, KFConfig& k)
{
  Section s(j, "kf");
  s.number("q_pos", k.q_pos);
  s.number("q_vel", k.q_vel);
  s.number("q_box", k.q_box);
  s.number("r_pos", k.r_pos);
  s.number("r_vel", k.r_vel);
  s.number("r_box", k.r_box);
  s.number("xi", k.xi);
}

AssignmentPolicy policy_from_string(const std::string& s)
{
  if (s == "greedy") return AssignmentPolicy::greedy;
  if (s == "optimal") return AssignmentPolicy::optimal;
  throw ValidationError("association.policy must be \"greedy\" or \"optimal\"");
}

std::string to_string(AssignmentPolicy p)
{
  return p == AssignmentPolicy::greedy ? "greedy" : "optimal";
}

}  // namespace

void PipelineConfig::validate() const
{
  clustering.validate();
  tracker.validate();
  if (!(match_dist > 0.0))
  {
    throw ValidationError("eval.match_dist must be > 0");
  }
}

PipelineConfig pipeline_config_from_json(const json& doc)
{
  PipelineConfig cfg;
  {
    Section root(doc, "");
    if (const json* v = root.find("clustering")) read_clustering(*v, cfg.clustering);
    if (const json* v = root.find("weights")) read_weights(*v, cfg.tracker.weights);
    if (const json* v = root.find("thresholds")) read_thresholds(*v, cfg.tracker.thresholds);
    if (const json* v = root.find("kf")) read_kf(*v, cfg.tracker.kf);
    if (const json* v = root.find("lifecycle"))
    {
      Section s(*v, "lifecycle");
      s.integer("confirm_hits", cfg.tracker.lifecycle.confirm_hits);
      s.integer("max_misses", cfg.tracker.lifecycle.max_misses);
    }
    if (const json* v = root.find("association"))
    {
      Section s(*v, "association");
      if (const json* p = s.find("policy"))
      {
        if (!p->is_string())
        {
          throw ValidationError("association.policy must be a string");
        }
        cfg.tracker.policy = policy_from_string(p->get<std::string>());
      }
    }
    if (const json* v = root.find("ego"))
    {
      Section s(*v, "ego");
      s.number("delta_v", cfg.tracker.delta_v);
      s.boolean("compensate_before_association", cfg.compensate_before_association);
    }
    if (const json* v = root.find("eval"))
    {
      Section s(*v, "eval");
      s.number("match_dist", cfg.match_dist);
    }
  }
  cfg.tracker.compensated_input = cfg.compensate_before_association;
  cfg.validate();
  return cfg;
}

json to_json(const PipelineConfig& cfg)
{
  const auto& c = cfg.clustering;
  const auto& t = cfg.tracker;
  json j;
  j["clustering"] = {{"epsilon", c.epsilon},
                     {"min_pts", c.min_pts},
                     {"amp_thres", c.amp_thres ? json(*c.amp_thres) : json(nullptr)},
                     {"vel_thres", c.vel_thres},
                     {"suppression_radius", c.suppression_radius},
                     {"amplitude_noise_test", c.amplitude_noise_test}};
  j["weights"] = {{"distance", t.weights.distance},
                  {"velocity", t.weights.velocity},
                  {"area", t.weights.area},
                  {"overlap", t.weights.overlap},
                  {"amplitude", t.weights.amplitude}};
  j["thresholds"] = {{"d_thres", t.thresholds.d_thres},
                     {"v_thres", t.thresholds.v_thres},
                     {"area_thres", t.thresholds.area_thres},
                     {"gate", t.thresholds.gate}};
  j["kf"] = {{"q_pos", t.kf.q_pos}, {"q_vel", t.kf.q_vel}, {"q_box", t.kf.q_box},
             {"r_pos", t.kf.r_pos}, {"r_vel", t.kf.r_vel}, {"r_box", t.kf.r_box},
             {"xi", t.kf.xi}};
  j["lifecycle"] = {{"confirm_hits", t.lifecycle.confirm_hits},
                    {"max_misses", t.lifecycle.max_misses}};
  j["association"] = {{"policy", to_string(t.policy)}};
  j["ego"] = {{"delta_v", t.delta_v},
              {"compensate_before_association", cfg.compensate_before_association}};
  j["eval"] = {{"match_dist", cfg.match_dist}};
  return j;
}

json read_json_file(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ValidationError("cannot open " + path.string());
  }
  try
  {
    return json::parse(in);
  }
  catch (const json::parse_error& e)
  {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path)
{
  return pipeline_config_from_json(read_json_file(path));
}

ScenarioConfig scenario_config_from_json(const json& doc)
{
  ScenarioConfig cfg;
  {
    Section root(doc, "");
    root.number("duration", cfg.duration);
    root.number("frame_rate", cfg.frame_rate);
    root.number("false_alarm_rate", cfg.false_alarm_rate);
    root.number("false_alarm_max_speed", cfg.false_alarm_max_speed);
    if (const json* v = root.find("seed"))
    {
      if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0))
      {
        throw ValidationError("seed must be a non-negative integer");
      }
      cfg.seed = v->get<std::uint64_t>();
    }
    if (const json* v = root.find("ego"))
    {
      Section s(*v, "ego");
      s.number("vx", cfg.ego_velocity.x());
      s.number("vy", cfg.ego_velocity.y());
    }
    if (const json* v = root.find("noise"))
    {
      Section s(*v, "noise");
      s.number("position", cfg.noise.position);
      s.number("velocity", cfg.noise.velocity);
      s.number("amplitude", cfg.noise.amplitude);
    }
    if (const json* v = root.find("field_of_view"))
    {
      Section s(*v, "field_of_view");
      s.number("x_min", cfg.fov.x_min);
      s.number("x_max", cfg.fov.x_max);
      s.number("y_min", cfg.fov.y_min);
      s.number("y_max", cfg.fov.y_max);
    }
    if (const json* v = root.find("targets"))
    {
      if (!v->is_array())
      {
        throw ValidationError("targets must be an array");
      }
      for (std::size_t i = 0; i < v->size(); ++i)
      {
        Section s((*v)[i], "targets[" + std::to_string(i) + "]");
        TargetSpec t;
        if (const json* c = s.find("class"))
        {
          if (!c->is_string())
          {
            throw ValidationError(s.qualify("class") + " must be a string");
          }
          t.cls = target_class_from_string(c->get<std::string>());
        }
        t.extent = TargetSpec::default_extent(t.cls);
        s.vec2("extent", t.extent);
        s.number("reflectivity", t.reflectivity);
        s.number("plot_count", t.plot_count);
        s.vec2("start", t.start);
        s.vec2("velocity", t.velocity);
        cfg.targets.push_back(t);
      }
    }
  }
  cfg.validate();
  return cfg;
}

json to_json(const ScenarioConfig& cfg)
{
  json targets = json::array();
  for (const auto& t : cfg.targets)
  {
    targets.push_back({{"class", std::string(to_string(t.cls))},
                       {"extent", {t.extent.x(), t.extent.y()}},
                       {"reflectivity", t.reflectivity},
                       {"plot_count", t.plot_count},
                       {"start", {t.start.x(), t.start.y()}},
                       {"velocity", {t.velocity.x(), t.velocity.y()}}});
  }
  return {{"duration", cfg.duration},
          {"frame_rate", cfg.frame_rate},
          {"seed", cfg.seed},
          {"false_alarm_rate", cfg.false_alarm_rate},
          {"false_alarm_max_speed", cfg.false_alarm_max_speed},
          {"ego", {{"vx", cfg.ego_velocity.x()}, {"vy", cfg.ego_velocity.y()}}},
          {"noise",
           {{"position", cfg.noise.position},
            {"velocity", cfg.noise.velocity},
            {"amplitude", cfg.noise.amplitude}}},
          {"field_of_view",
           {{"x_min", cfg.fov.x_min},
            {"x_max", cfg.fov.x_max},
            {"y_min", cfg.fov.y_min},
            {"y_max", cfg.fov.y_max}}},
          {"targets", targets}};
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path)
{
  return scenario_config_from_json(read_json_file(path));
}

}  // namespace radtrack
