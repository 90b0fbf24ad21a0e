#include "radtrack/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "radtrack/association.hpp"
#include "radtrack/config.hpp"
#include "radtrack/io.hpp"
#include "radtrack/pipeline.hpp"
#include "radtrack/simulator.hpp"

namespace radtrack::cli
{

namespace fs = std::filesystem;

namespace
{

void write_text(const fs::path& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
  {
    throw Error("cannot write " + path.string());
  }
  out << text;
}

fs::path sibling(const fs::path& file, const std::string& name)
{
  return file.has_parent_path() ? file.parent_path() / name : fs::path(name);
}

struct GridRow
{
  SimilarityWeights weights;
  double gate = 0.0;
};

std::vector<GridRow> read_grid(const fs::path& path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ValidationError("cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line))
  {
    throw ValidationError(path.string() + ": empty grid");
  }
  std::vector<GridRow> rows;
  long row_no = 0;
  while (std::getline(in, line))
  {
    if (line.find_first_not_of(" \t\r") == std::string::npos)
    {
      continue;
    }
    ++row_no;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double v[6];
    for (double& x : v)
    {
      if (!(ls >> x))
      {
        throw ValidationError("grid row " + std::to_string(row_no) + ": expected 6 numbers");
      }
    }
    GridRow r;
    r.weights = {v[0], v[1], v[2], v[3], v[4]};
    r.gate = v[5];
    try
    {
      r.weights.validate();
      SimilarityThresholds t;
      t.gate = r.gate;
      t.validate();
    }
    catch (const ValidationError& e)
    {
      throw ValidationError("grid row " + std::to_string(row_no) + ": " + e.what());
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

void cmd_simulate(const fs::path& config, const fs::path& out_dir)
{
  const ScenarioConfig cfg = load_scenario_config(config);
  const Scenario sc = simulate(cfg);
  fs::create_directories(out_dir);
  write_frames(out_dir / "frames.jsonl", sc.frames);
  write_ego(out_dir / "ego.jsonl", sc.ego);
  write_gt(out_dir / "gt.jsonl", sc.gt);
}

void cmd_track(const fs::path& frames_path, const std::optional<fs::path>& ego_path,
               const fs::path& config, const fs::path& out)
{
  const PipelineConfig cfg = load_pipeline_config(config);
  const auto frames = read_frames(frames_path);
  std::optional<std::vector<EgoMotion>> ego;
  if (ego_path)
  {
    ego = read_ego(*ego_path);
  }
  const TrackRun run = run_tracking(frames, ego, cfg);
  write_track_records(out, run.records);
  if (ego)
  {
    std::vector<nlohmann::json> lines;
    lines.reserve(run.corrected.size());
    for (const auto& c : run.corrected)
    {
      lines.push_back(to_json(c));
    }
    write_json_lines(sibling(out, "corrected.jsonl"), lines);
  }
}

void cmd_evaluate(const fs::path& tracks, const fs::path& gt_path, const fs::path& config,
                  const fs::path& report)
{
  const PipelineConfig cfg = load_pipeline_config(config);
  const auto records = read_track_records(tracks);
  const auto gt = read_gt(gt_path);
  if (gt.empty())
  {
    throw ValidationError(gt_path.string() + ": empty ground truth");
  }
  const EvalReport rep = evaluate(gt, detections_from_records(records), cfg.match_dist);
  write_text(report, report_to_json(rep, cfg).dump(2) + "\n");
  write_text(sibling(report, "residuals.csv"), residuals_csv(rep));
}

void cmd_sweep(const fs::path& frames_path, const std::optional<fs::path>& ego_path,
               const fs::path& gt_path, const fs::path& config, const fs::path& grid,
               const fs::path& out)
{
  const PipelineConfig base = load_pipeline_config(config);
  const auto frames = read_frames(frames_path);
  std::optional<std::vector<EgoMotion>> ego;
  if (ego_path)
  {
    ego = read_ego(*ego_path);
  }
  const auto gt = read_gt(gt_path);
  if (gt.empty())
  {
    throw ValidationError(gt_path.string() + ": empty ground truth");
  }
  const auto rows = read_grid(grid);

  std::ostringstream os;
  os << "row,w_dis,w_vel,w_area,w_overlap,w_amp,gate,precision,recall,f1,cme,bbor,iou_crosscheck\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    PipelineConfig cfg = base;
    cfg.tracker.weights = rows[i].weights;
    cfg.tracker.thresholds.gate = rows[i].gate;
    const TrackRun run = run_tracking(frames, ego, cfg);
    const EvalReport rep = evaluate(gt, detections_from_records(run.records), cfg.match_dist);

    std::string crosscheck;
    if (rows[i].weights.overlap == 1.0)
    {
      const TrackRun iou_run =
          run_tracking(frames, ego, cfg, [](const FeatureVectord& a, const FeatureVectord& b)
                       { return overlap_similarity(a.bbox, b.bbox); });
      crosscheck = iou_run.records == run.records ? "match" : "mismatch";
    }

    const auto& w = rows[i].weights;
    os << i + 1 << ',' << format_double(w.distance) << ',' << format_double(w.velocity) << ','
       << format_double(w.area) << ',' << format_double(w.overlap) << ','
       << format_double(w.amplitude) << ',' << format_double(rows[i].gate) << ','
       << format_double(rep.precision) << ',' << format_double(rep.recall) << ','
       << format_double(rep.f1) << ',' << format_double(rep.cme) << ','
       << format_double(rep.bbor) << ',' << crosscheck << '\n';
  }
  write_text(out, os.str());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"radtrack: cluster-based radar multi-target tracking"};
  app.require_subcommand(1);

  std::string config, out_path, frames, ego, gt, tracks, report, grid;

  auto* sim = app.add_subcommand("simulate", "generate a synthetic scenario");
  sim->add_option("--config", config, "scenario config (JSON)")->required();
  sim->add_option("--out", out_path, "output directory")->required();

  auto* trk = app.add_subcommand("track", "run the tracking pipeline");
  trk->add_option("--frames", frames, "frames JSON Lines")->required();
  trk->add_option("--ego", ego, "ego motion JSON Lines");
  trk->add_option("--config", config, "pipeline config (JSON)")->required();
  trk->add_option("--out", out_path, "track output JSON Lines")->required();

  auto* ev = app.add_subcommand("evaluate", "score tracks against ground truth");
  ev->add_option("--tracks", tracks, "track JSON Lines")->required();
  ev->add_option("--gt", gt, "ground truth JSON Lines")->required();
  ev->add_option("--config", config, "pipeline config (JSON)")->required();
  ev->add_option("--report", report, "report JSON path")->required();

  auto* sw = app.add_subcommand("sweep", "evaluate a grid of similarity weights");
  sw->add_option("--frames", frames, "frames JSON Lines")->required();
  sw->add_option("--ego", ego, "ego motion JSON Lines");
  sw->add_option("--gt", gt, "ground truth JSON Lines")->required();
  sw->add_option("--config", config, "pipeline config (JSON)")->required();
  sw->add_option("--grid", grid, "weight grid CSV")->required();
  sw->add_option("--out", out_path, "output CSV")->required();

  try
  {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  }
  catch (const CLI::ParseError& e)
  {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  auto optional_path = [](const std::string& s) -> std::optional<fs::path>
  { return s.empty() ? std::nullopt : std::optional<fs::path>(s); };

  try
  {
    if (sim->parsed())
    {
      cmd_simulate(config, out_path);
    }
    else if (trk->parsed())
    {
      cmd_track(frames, optional_path(ego), config, out_path);
    }
    else if (ev->parsed())
    {
      cmd_evaluate(tracks, gt, config, report);
    }
    else if (sw->parsed())
    {
      cmd_sweep(frames, optional_path(ego), gt, config, grid, out_path);
    }
  }
  catch (const ValidationError& e)
  {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  catch (const std::exception& e)
  {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace radtrack::cli
