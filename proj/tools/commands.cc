// Copyright 2026 The Leadfollow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "config_file.h"
#include "json.hpp"
#include "leadfollow/error.h"
#include "leadfollow/mlp_denoiser.h"
#include "leadfollow/motion_io.h"
#include "leadfollow/svg_plot.h"
#include "leadfollow/synthetic.h"
#include "runs.h"

namespace leadfollow::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Random-stream ids for derive_seed, one per purpose.
constexpr std::uint64_t kPriorStream = 1;
constexpr std::uint64_t kSampleStream = 2;
constexpr std::uint64_t kAblationStream = 3;
constexpr std::uint64_t kScenarioStream = 4;
constexpr std::uint64_t kEvaluationStream = 5;
constexpr std::uint64_t kTrainStream = 6;

struct GlobalFlags {
  std::uint64_t seed = 0;
  std::string config;
  std::string out_dir = "out";
  std::string denoiser = "analytic";
  std::string data;
  int frames = kDefaultFrames;
  double fps = kDefaultFps;
  int prior_items = 8;
};

struct GuidanceFlags {
  double window_start = 0.7;
  double window_end = 0.3;
  double grad_step = 0.5;
  int grad_iters = 1;
  std::string inject_mode = "noised";
  std::string target_agent = "a";
  double delta = 0.10;
  double w_joint = 1.0;
  double w_vel = 0.1;
  int adapter_steps = 3;
  double adapter_grad_step = 0.1;
  int adapter_grad_iters = 5;
  std::string vel_loss_form = "cosine";
  bool no_adapter = false;
  bool no_controller = false;

  RunOptions to_options() const {
    RunOptions o;
    o.controller = !no_controller;
    o.adapter = !no_adapter;
    o.pace.window = {window_start, window_end};
    o.pace.grad_step_size = grad_step;
    o.pace.grad_steps = grad_iters;
    o.pace.injection_mode = inject_mode == "raw" ? InjectionMode::kRaw : InjectionMode::kNoised;
    o.pace.target_agent = target_agent == "b"      ? TargetAgent::kB
                          : target_agent == "both" ? TargetAgent::kBoth
                                                   : TargetAgent::kA;
    o.adapter_config.delta = delta;
    o.adapter_config.w_joint = w_joint;
    o.adapter_config.w_vel = w_vel;
    o.adapter_config.adapter_steps = adapter_steps;
    o.adapter_config.grad_step_size = adapter_grad_step;
    o.adapter_config.grad_iters = adapter_grad_iters;
    o.adapter_config.vel_form =
        vel_loss_form == "dot" ? VelocityLossForm::kDot : VelocityLossForm::kCosine;
    o.pace.validate();
    o.adapter_config.validate();
    return o;
  }
};

void add_guidance_flags(CLI::App* cmd, GuidanceFlags& g) {
  cmd->add_option("--window-start", g.window_start, "Guidance window start as a fraction of T")
      ->capture_default_str();
  cmd->add_option("--window-end", g.window_end, "Guidance window end as a fraction of T")
      ->capture_default_str();
  cmd->add_option("--grad-step", g.grad_step, "Trajectory refinement step size")
      ->capture_default_str();
  cmd->add_option("--grad-iters", g.grad_iters, "Trajectory refinement steps per call")
      ->capture_default_str();
  cmd->add_option("--inject-mode", g.inject_mode, "Trajectory injection mode")
      ->check(CLI::IsMember({"raw", "noised"}))
      ->capture_default_str();
  cmd->add_option("--target-agent", g.target_agent, "Agent(s) whose root is guided")
      ->check(CLI::IsMember({"a", "b", "both"}))
      ->capture_default_str();
  cmd->add_option("--delta", g.delta, "Joint distance margin in meters")->capture_default_str();
  cmd->add_option("--w-joint", g.w_joint, "Joint loss weight")->capture_default_str();
  cmd->add_option("--w-vel", g.w_vel, "Velocity loss weight")->capture_default_str();
  cmd->add_option("--adapter-steps", g.adapter_steps, "Denoising steps at which the adapter runs")
      ->capture_default_str();
  cmd->add_option("--adapter-grad-step", g.adapter_grad_step, "Adapter descent step size")
      ->capture_default_str();
  cmd->add_option("--adapter-grad-iters", g.adapter_grad_iters, "Adapter descent iterations")
      ->capture_default_str();
  cmd->add_option("--vel-loss-form", g.vel_loss_form, "Velocity loss form")
      ->check(CLI::IsMember({"cosine", "dot"}))
      ->capture_default_str();
  cmd->add_flag("--no-adapter", g.no_adapter, "Disable the synchronization adapter");
  cmd->add_flag("--no-controller", g.no_controller, "Disable trajectory guidance");
}

std::vector<ScenarioKind> parse_kinds(const std::string& list) {
  std::vector<ScenarioKind> kinds;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) kinds.push_back(parse_scenario(item));
  }
  if (kinds.empty()) throw ValidationError("--kinds: no scenario kinds given");
  return kinds;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Loaded or fitted denoiser plus, for the analytic prior, direct access.
struct LoadedDenoiser {
  std::shared_ptr<const Denoiser> denoiser;
  std::shared_ptr<const AnalyticGaussianPrior> prior;  // null for checkpoints
};

std::shared_ptr<AnalyticGaussianPrior> fit_prior(std::span<const LabeledMotion> items) {
  if (items.empty()) throw ValidationError("prior: empty dataset");
  const MotionShape shape{items.front().motion.frames(), items.front().motion.joints()};
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(shape.size());
  std::map<ScenarioKind, std::pair<Eigen::VectorXd, int>> by_kind;
  for (const LabeledMotion& item : items) {
    if (item.motion.frames() != shape.frames || item.motion.joints() != shape.joints) {
      throw ValidationError("prior: dataset items differ in shape");
    }
    const Eigen::VectorXd v = MotionTensor::from_motion(item.motion).values();
    mean += v;
    auto [it, inserted] = by_kind.try_emplace(item.label.category(),
                                              Eigen::VectorXd::Zero(shape.size()), 0);
    it->second.first += v;
    ++it->second.second;
  }
  mean /= static_cast<double>(items.size());
  auto prior = std::make_shared<AnalyticGaussianPrior>(shape, mean, make_schedule(1000));
  for (auto& [kind, sum] : by_kind) prior->set_condition_mean(kind, sum.first / sum.second);
  return prior;
}

LoadedDenoiser load_denoiser(const GlobalFlags& g) {
  LoadedDenoiser out;
  if (g.denoiser == "analytic") {
    std::shared_ptr<AnalyticGaussianPrior> prior;
    if (!g.data.empty()) {
      prior = fit_prior(load_dataset_dir(g.data));
    } else {
      const Dataset data = build_dataset(g.prior_items,
                                         std::vector<ScenarioKind>(kAllScenarioKinds.begin(),
                                                                   kAllScenarioKinds.end()),
                                         g.frames, g.fps, derive_seed(g.seed, kPriorStream));
      prior = fit_prior(data.labeled());
    }
    out.prior = prior;
    out.denoiser = prior;
    return out;
  }
  const std::string prefix = "checkpoint:";
  if (g.denoiser.rfind(prefix, 0) == 0 && g.denoiser.size() > prefix.size()) {
    out.denoiser =
        std::make_shared<MlpDenoiser>(MlpDenoiser::load(g.denoiser.substr(prefix.size())));
    return out;
  }
  throw ValidationError("--denoiser must be 'analytic' or 'checkpoint:<path>', got '" +
                        g.denoiser + "'");
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
    out << "\n";
  }
}

std::string table_text(const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream s;
  print_table(s, rows);
  return s.str();
}

// ---------------------------------------------------------------- make-data

struct MakeDataFlags {
  int n_per_kind = 10;
  std::string kinds = "circle-duet,approach-collide,mirror-walk,orbit";
};

void cmd_make_data(const GlobalFlags& g, const MakeDataFlags& f, std::ostream& out) {
  const std::vector<ScenarioKind> kinds = parse_kinds(f.kinds);
  const Dataset data = build_dataset(f.n_per_kind, kinds, g.frames, g.fps, g.seed);
  const fs::path dir = g.out_dir;
  json manifest;
  manifest["format"] = "leadfollow-dataset";
  manifest["version"] = 1;
  manifest["seed"] = g.seed;
  manifest["n_per_kind"] = f.n_per_kind;
  manifest["items"] = json::array();
  for (size_t i = 0; i < data.items.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "item_%04zu.json", i);
    const DatasetItem& item = data.items[i];
    save_motion(item.sample.motion, dir / name);
    manifest["items"].push_back({{"file", name},
                                 {"kind", std::string(scenario_name(item.sample.label.category()))},
                                 {"seed", item.seed},
                                 {"frames", item.sample.motion.frames()},
                                 {"fps", item.sample.motion.fps()}});
  }
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
  out << "wrote " << data.items.size() << " items to " << dir.string() << "\n";
}

// -------------------------------------------------------------------- train

struct TrainFlags {
  MlpHyperparams hp;
};

void cmd_train(const GlobalFlags& g, const TrainFlags& f, std::ostream& out) {
  if (g.data.empty()) throw ValidationError("train: --data <dataset dir> is required");
  const std::vector<LabeledMotion> items = load_dataset_dir(g.data);
  Rng rng(derive_seed(g.seed, kTrainStream));
  TrainingReport report;
  const MlpDenoiser model =
      train_mlp_denoiser(items, make_schedule(1000), f.hp, rng, &report,
                         [&out](int epoch, double loss) {
                           out << "epoch " << epoch + 1 << " loss " << format_double(loss) << "\n";
                         });
  const fs::path dir = g.out_dir;
  std::vector<std::vector<std::string>> log{{"epoch", "loss"}};
  for (size_t i = 0; i < report.epoch_loss.size(); ++i) {
    log.push_back({std::to_string(i + 1), format_double(report.epoch_loss[i])});
  }
  write_text_file(dir / "train_log.tsv", table_text(log));
  fs::create_directories(dir);
  model.save(dir / "denoiser.ckpt");
  out << "wrote " << (dir / "denoiser.ckpt").string() << "\n";
}

// ----------------------------------------------------------------- generate

struct GenerateFlags {
  std::string trajectory;
  std::string trajectory_b;
  std::string shape;
  double scale = 6.0;
  std::string condition = "circle-duet";
  std::string name = "motion";
  bool plot = false;
};

Trajectory target_from_flags(const std::string& file, const std::string& shape, double scale,
                             int frames) {
  if (!file.empty()) return load_trajectory(file);
  if (!shape.empty()) return generate_trajectory_condition(parse_trajectory_shape(shape), frames, scale);
  throw ValidationError("a trajectory is required: pass --trajectory <file> or --shape");
}

void cmd_generate(const GlobalFlags& g, const GuidanceFlags& gf, const GenerateFlags& f,
                  std::ostream& out) {
  const RunOptions options = gf.to_options();
  const LoadedDenoiser loaded = load_denoiser(g);
  const int frames = loaded.denoiser->shape().frames;
  const ConditionLabel condition(parse_scenario(f.condition));
  PaceTargets targets;
  std::vector<Trajectory> plotted;
  if (options.controller) {
    const TargetAgent who = options.pace.target_agent;
    Trajectory first = target_from_flags(f.trajectory, f.shape, f.scale, frames);
    if (who == TargetAgent::kBoth) {
      if (f.trajectory_b.empty()) {
        throw ValidationError("--target-agent both needs --trajectory-b <file>");
      }
      targets.b = load_trajectory(f.trajectory_b);
      plotted.push_back(*targets.b);
    }
    (who == TargetAgent::kB ? targets.b : targets.a) = first;
    plotted.insert(plotted.begin(), first);
  }
  const SkeletonSpec skeleton = default_skeleton();
  const RunResult r = run_once(*loaded.denoiser, condition, targets, options, skeleton,
                               derive_seed(g.seed, kSampleStream));
  const fs::path dir = g.out_dir;
  save_motion(r.motion, dir / (f.name + ".json"));
  out << "wrote " << (dir / (f.name + ".json")).string() << " (" << r.adapter_calls
      << " adapter calls)\n";
  if (f.plot) {
    write_text_file(dir / (f.name + ".svg"), overhead_svg(plotted, r.motion, skeleton));
    out << "wrote " << (dir / (f.name + ".svg")).string() << "\n";
  }
}

// ------------------------------------------------------------ ablate-window

struct AblateFlags {
  std::vector<std::string> windows{"0.8:0.2", "0.7:0.3", "0.6:0.4"};
  int n_seeds = 5;
  std::string trajectory;
  std::string shapes = "line,s-curve,circle";
  double scale = 6.0;
  std::string condition = "mirror-walk";
};

GuidanceWindow parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ValidationError("window '" + text + "' must look like start:end, e.g. 0.7:0.3");
  }
  try {
    GuidanceWindow w{std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    w.validate();
    return w;
  } catch (const std::logic_error&) {
    throw ValidationError("window '" + text + "' must look like start:end, e.g. 0.7:0.3");
  }
}

void cmd_ablate_window(const GlobalFlags& g, const GuidanceFlags& gf, const AblateFlags& f,
                       std::ostream& out) {
  const RunOptions options = gf.to_options();
  std::vector<GuidanceWindow> windows;
  for (const auto& w : f.windows) windows.push_back(parse_window(w));
  if (f.n_seeds < 1) throw ValidationError("--n-seeds must be >= 1");
  const LoadedDenoiser loaded = load_denoiser(g);
  const int frames = loaded.denoiser->shape().frames;
  std::vector<Trajectory> targets;
  if (!f.trajectory.empty()) {
    targets.push_back(load_trajectory(f.trajectory));
  } else {
    std::stringstream in(f.shapes);
    std::string name;
    while (std::getline(in, name, ',')) {
      if (name.empty()) continue;
      const TrajectoryShape shape = parse_trajectory_shape(name);
      // Circles use a third of the scale as radius so every path spans a
      // similar walking distance.
      const double scale = shape == TrajectoryShape::kCircle ? f.scale / 3.0 : f.scale;
      targets.push_back(generate_trajectory_condition(shape, frames, scale));
    }
  }
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < f.n_seeds; ++i) seeds.push_back(derive_seed(g.seed, kAblationStream, i));
  const SkeletonSpec skeleton = default_skeleton();
  const std::vector<AblationRow> rows =
      run_window_ablation(*loaded.denoiser, ConditionLabel(parse_scenario(f.condition)), targets,
                          windows, options, seeds, skeleton);

  const fs::path dir = g.out_dir;
  std::vector<std::vector<std::string>> table{{"window", "config_hash", "trajectory_rmse",
                                               "smoothness", "penetration_frames", "seconds"}};
  for (const AblationRow& row : rows) {
    RunOptions run = options;
    run.controller = row.guided;
    run.adapter = row.guided && options.adapter;
    run.pace.window = row.window;
    table.push_back({row.label, config_hash(run), format_double(row.trajectory_rmse),
                     format_double(row.smoothness), format_double(row.penetration_frames),
                     format_double(row.seconds)});
    for (size_t i = 0; i < row.motions.size(); ++i) {
      save_motion(row.motions[i], dir / "ablation" / (row.label + "_" + std::to_string(i) + ".json"));
    }
  }
  write_text_file(dir / "ablation.tsv", table_text(table));
  print_table(out, table);
}

// ----------------------------------------------------------------- evaluate

struct EvaluateFlags {
  std::string scenario = "approach-collide";
  int n_seeds = 5;
  int tail_frames = 20;
  std::string prior_center = "scenario";
};

void cmd_evaluate(const GlobalFlags& g, const GuidanceFlags& gf, const EvaluateFlags& f,
                  std::ostream& out) {
  const RunOptions options = gf.to_options();
  const ScenarioKind kind = parse_scenario(f.scenario);
  if (f.n_seeds < 1) throw ValidationError("--n-seeds must be >= 1");
  std::vector<EvaluationCase> cases;
  for (int i = 0; i < f.n_seeds; ++i) {
    cases.push_back({generate_scenario(kind, g.frames, g.fps, derive_seed(g.seed, kScenarioStream, i)),
                     derive_seed(g.seed, kEvaluationStream, i)});
  }
  DenoiserFactory factory;
  if (g.denoiser == "analytic" && f.prior_center == "scenario") {
    const MotionShape shape{g.frames, joint::kDefaultCount};
    const NoiseSchedule schedule = make_schedule(1000);
    factory = [shape, schedule](const EvaluationCase& item) {
      return std::make_shared<const AnalyticGaussianPrior>(
          shape, MotionTensor::from_motion(item.scenario.motion).values(), schedule);
    };
  } else {
    const std::shared_ptr<const Denoiser> shared = load_denoiser(g).denoiser;
    if (shared->shape().frames != g.frames) {
      throw ValidationError("evaluate: denoiser has " + std::to_string(shared->shape().frames) +
                            " frames but --frames is " + std::to_string(g.frames));
    }
    factory = [shared](const EvaluationCase&) { return shared; };
  }
  const SkeletonSpec skeleton = default_skeleton();
  const std::vector<EvaluationRow> rows =
      run_evaluation(factory, cases, options, skeleton, f.tail_frames);

  const fs::path dir = g.out_dir;
  std::vector<std::vector<std::string>> table{
      {"scenario", "controller", "adapter", "config_hash", "trajectory_rmse",
       "penetration_frames", "final_velocity_similarity", "smoothness", "diversity", "seconds"}};
  for (const EvaluationRow& row : rows) {
    const std::string tag =
        std::string(row.controller ? "ctrl-on" : "ctrl-off") + (row.adapter ? "_adapter-on" : "_adapter-off");
    table.push_back({f.scenario, row.controller ? "on" : "off", row.adapter ? "on" : "off",
                     row.config_hash, format_double(row.trajectory_rmse),
                     format_double(row.penetration_frames),
                     format_double(row.final_velocity_similarity), format_double(row.smoothness),
                     format_double(row.diversity), format_double(row.seconds)});
    for (size_t i = 0; i < row.motions.size(); ++i) {
      save_motion(row.motions[i], dir / "evaluation" / (tag + "_" + std::to_string(i) + ".json"));
    }
  }
  write_text_file(dir / "evaluation.tsv", table_text(table));
  print_table(out, table);
}

bool has_long_option(const CLI::App* app, const std::string& key) {
  return app->get_option_no_throw("--" + key) != nullptr;
}

}  // namespace

std::vector<LabeledMotion> load_dataset_dir(const std::filesystem::path& dir) {
  const fs::path manifest_path = dir / "manifest.json";
  if (!fs::exists(manifest_path)) {
    throw Error("dataset: " + manifest_path.string() + " not found (create one with make-data)");
  }
  json manifest;
  try {
    manifest = json::parse(read_text_file(manifest_path));
  } catch (const json::exception& e) {
    throw ParseError("manifest", e.what());
  }
  if (!manifest.contains("items") || !manifest["items"].is_array()) {
    throw ParseError("items", "manifest has no items array");
  }
  std::vector<LabeledMotion> items;
  for (const json& entry : manifest["items"]) {
    if (!entry.contains("file") || !entry["file"].is_string()) {
      throw ParseError("file", "manifest item without a file name");
    }
    if (!entry.contains("kind") || !entry["kind"].is_string()) {
      throw ParseError("kind", "manifest item without a scenario kind");
    }
    items.push_back({load_motion(dir / entry["file"].get<std::string>()),
                     ConditionLabel(parse_scenario(entry["kind"].get<std::string>()))});
  }
  if (items.empty()) throw ValidationError("dataset: manifest lists no items");
  return items;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lead-follow two-agent motion generation"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--config", g.config, "Flat key=value file of flag defaults");
  app.add_option("--out-dir", g.out_dir, "Output directory")->capture_default_str();
  app.add_option("--denoiser", g.denoiser, "analytic or checkpoint:<path>")->capture_default_str();
  app.add_option("--data", g.data, "Dataset directory written by make-data");
  app.add_option("--frames", g.frames, "Frames per motion")->capture_default_str();
  app.add_option("--fps", g.fps, "Frame rate")->capture_default_str();
  app.add_option("--prior-items", g.prior_items,
                 "Clips per kind used to fit the analytic prior when --data is absent")
      ->capture_default_str();

  MakeDataFlags make_data;
  CLI::App* make_data_cmd = app.add_subcommand("make-data", "Write a synthetic dataset");
  make_data_cmd->add_option("--n-per-kind", make_data.n_per_kind, "Clips per scenario kind")
      ->capture_default_str();
  make_data_cmd->add_option("--kinds", make_data.kinds, "Comma-separated scenario kinds")
      ->capture_default_str();

  TrainFlags train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train the MLP denoiser on --data");
  train_cmd->add_option("--epochs", train.hp.epochs)->capture_default_str();
  train_cmd->add_option("--width", train.hp.hidden_width)->capture_default_str();
  train_cmd->add_option("--layers", train.hp.hidden_layers)->capture_default_str();
  train_cmd->add_option("--lr", train.hp.learning_rate)->capture_default_str();
  train_cmd->add_option("--batch-size", train.hp.batch_size)->capture_default_str();

  GuidanceFlags guidance;
  GenerateFlags generate;
  CLI::App* generate_cmd = app.add_subcommand("generate", "Sample one guided motion");
  add_guidance_flags(generate_cmd, guidance);
  generate_cmd->add_option("--trajectory", generate.trajectory, "Target path file");
  generate_cmd->add_option("--trajectory-b", generate.trajectory_b,
                           "Second target path (agent b) for --target-agent both");
  generate_cmd->add_option("--shape", generate.shape,
                           "Built-in target path when no file is given: line, circle, s-curve");
  generate_cmd->add_option("--scale", generate.scale, "Size of the built-in path in meters")
      ->capture_default_str();
  generate_cmd->add_option("--condition", generate.condition, "Scenario kind label")
      ->capture_default_str();
  generate_cmd->add_option("--name", generate.name, "Output file stem")->capture_default_str();
  generate_cmd->add_flag("--plot", generate.plot, "Also write an overhead SVG");

  AblateFlags ablate;
  CLI::App* ablate_cmd = app.add_subcommand("ablate-window", "Compare guidance windows");
  add_guidance_flags(ablate_cmd, guidance);
  ablate_cmd->add_option("--windows", ablate.windows, "start:end pairs")
      ->delimiter(',')
      ->capture_default_str();
  ablate_cmd->add_option("--n-seeds", ablate.n_seeds)->capture_default_str();
  ablate_cmd->add_option("--trajectory", ablate.trajectory, "Target path file");
  ablate_cmd->add_option("--shapes", ablate.shapes, "Built-in target paths")->capture_default_str();
  ablate_cmd->add_option("--scale", ablate.scale)->capture_default_str();
  ablate_cmd->add_option("--condition", ablate.condition)->capture_default_str();

  EvaluateFlags evaluate;
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "Controller x adapter grid");
  add_guidance_flags(evaluate_cmd, guidance);
  evaluate_cmd->add_option("--scenario", evaluate.scenario)->capture_default_str();
  evaluate_cmd->add_option("--n-seeds", evaluate.n_seeds)->capture_default_str();
  evaluate_cmd->add_option("--tail-frames", evaluate.tail_frames)->capture_default_str();
  evaluate_cmd->add_option("--prior-center", evaluate.prior_center,
                           "Analytic prior mean: each scenario itself or the fitted dataset")
      ->check(CLI::IsMember({"scenario", "dataset"}))
      ->capture_default_str();

  try {
    std::vector<std::string> merged = args;
    const std::string config_path = find_config_path(args);
    if (!config_path.empty()) {
      const CLI::App* chosen = nullptr;
      for (const auto& a : args) {
        if (auto* sub = app.get_subcommand_no_throw(a)) {
          chosen = sub;
          break;
        }
      }
      const auto config = parse_config_text(read_text_file(config_path));
      merged = merge_config(
          args, config,
          [&](const std::string& key) {
            return has_long_option(&app, key) || (chosen && has_long_option(chosen, key));
          },
          [&](const std::string& key) {
            for (const CLI::App* sub : app.get_subcommands({})) {
              if (has_long_option(sub, key)) return true;
            }
            return has_long_option(&app, key);
          });
    }
    std::reverse(merged.begin(), merged.end());
    app.parse(merged);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return 2;
  } catch (const leadfollow::Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*make_data_cmd) {
      cmd_make_data(g, make_data, out);
    } else if (*train_cmd) {
      cmd_train(g, train, out);
    } else if (*generate_cmd) {
      cmd_generate(g, guidance, generate, out);
    } else if (*ablate_cmd) {
      cmd_ablate_window(g, guidance, ablate, out);
    } else if (*evaluate_cmd) {
      cmd_evaluate(g, guidance, evaluate, out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace leadfollow::cli
