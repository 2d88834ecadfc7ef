// workbench: command-line front end for the camera pipeline security workbench.

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "workbench/analysis/analysis.h"
#include "workbench/attack/attack.h"
#include "workbench/attack/defense.h"
#include "workbench/attack/scaling.h"
#include "workbench/detect/detector.h"
#include "workbench/errors.h"
#include "workbench/image_io.h"
#include "workbench/json_util.h"
#include "workbench/risk/catalog.h"
#include "workbench/service/service.h"
#include "workbench/sim/pipeline.h"
#include "workbench/sim/scenes.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void emit(const json& j, const std::string& out) {
  std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    wb::write_file(out, text);
}

void ensure_parent(const std::string& path) {
  fs::path p = fs::path(path).parent_path();
  if (!p.empty()) fs::create_directories(p);
}

int risk_eval(const std::string& catalog, const std::string& format, bool fail_on_mismatch) {
  wb::risk::Catalog cat = wb::risk::load_catalog(catalog);
  for (const auto& w : cat.warnings) std::cerr << "warning: " << w << "\n";
  std::vector<wb::risk::EvaluatedRecord> rows;
  bool all = true;
  for (const auto& r : cat.records) {
    rows.push_back(wb::risk::evaluate(r));
    all &= rows.back().matches;
  }
  std::cout << wb::risk::render_report(rows, wb::risk::parse_report_format(format));
  return fail_on_mismatch && !all ? 1 : 0;
}

int risk_matrix() {
  static const char* kImpact[] = {"Negligible", "Moderate", "Major", "Severe"};
  auto m = wb::risk::risk_matrix();
  std::cout << "impact,VeryLow,Low,Medium,High\n";
  for (int i = 3; i >= 0; --i)
    std::cout << kImpact[i] << ',' << m[i][0] << ',' << m[i][1] << ',' << m[i][2] << ',' << m[i][3]
              << "\n";
  return 0;
}

json preset(const std::string& kind) {
  namespace sc = wb::sim::scenes;
  if (kind == "non-hdr") return wb::sim::to_json(sc::non_hdr_preset());
  if (kind == "hdr") return wb::sim::to_json(sc::hdr_preset());
  if (kind == "laser") return wb::attack::to_json(wb::attack::AttackSpec{wb::attack::stop_sign_laser()});
  // 90 Hz square wave over the sign, strong enough to band it
  wb::attack::Flicker f;
  f.frequency_hz = 90;
  f.intensity = 0.6 * sc::kRadianceScale;
  f.region.kind = wb::sim::Region::Kind::Rect;
  f.region.rect = sc::stop_sign_roi();
  return wb::attack::to_json(wb::attack::AttackSpec{f});
}

int capture(const std::string& scene_path, const std::string& config_path, const std::string& prefix) {
  auto scene = wb::sim::load_scene(scene_path);
  auto config = wb::sim::load_config(config_path);
  auto out = wb::sim::run_pipeline(scene, config);
  ensure_parent(prefix);
  wb::write_raw(prefix + ".pre.pgm", out.pre_isp, out.metadata);
  wb::write_ppm(prefix + ".post.ppm", out.post_isp);
  return 0;
}

int attack_cmd(const std::string& kind, const std::string& spec_path, const std::string& scene_path,
               const std::string& out) {
  static const std::map<std::string, size_t> kVariant = {
      {"blind", 0}, {"flicker", 1}, {"scalecam", 2}, {"overlay", 3}};
  wb::attack::AttackSpec spec = wb::attack::load_attack(spec_path);
  if (spec.index() != kVariant.at(kind))
    throw wb::DomainError("spec variant does not match 'attack " + kind + "'");
  ensure_parent(out);
  if (auto* cam = std::get_if<wb::attack::ScalingCamouflage>(&spec)) {
    auto r = wb::attack::craft_scaling_attack(cam->source, cam->target, cam->scaler);
    wb::write_ppm(out + ".ppm", r.image);
    emit({{"residual_linf", r.residual_linf},
          {"perturbation_linf", r.perturbation_linf},
          {"modified_pixels", r.modified_pixels},
          {"image", fs::path(out + ".ppm").filename().string()}},
         out + ".report.json");
    return 0;
  }
  if (scene_path.empty()) throw wb::DomainError("--scene is required for scene-level attacks");
  auto scene = wb::attack::apply_attack(wb::sim::load_scene(scene_path), spec);
  wb::sim::save_scene(out, scene);
  return 0;
}

wb::RoiRect roi_or_full(const std::string& roi, int w, int h) {
  return roi.empty() ? wb::RoiRect{0, 0, w, h} : wb::parse_roi(roi);
}

int defend(const std::string& kind, const std::string& img, const std::string& roi,
           const std::vector<std::string>& configs, std::optional<uint64_t> seed,
           double threshold, const std::string& out) {
  using namespace wb::attack;
  if (kind == "blinding") {
    if (img.empty()) throw wb::DomainError("--img is required");
    double thr = threshold >= 0 ? threshold : kBlindingThreshold;
    DefenseReport r;
    if (img.size() > 4 && img.substr(img.size() - 4) == ".pgm") {
      auto raw = wb::read_raw(img).image;
      r = detect_blinding(raw, roi_or_full(roi, raw.width, raw.height), thr);
    } else {
      auto rgb = wb::read_ppm(img);
      r = detect_blinding(rgb, roi_or_full(roi, rgb.width, rgb.height), thr);
    }
    emit(to_json(r), out);
    return 0;
  }
  if (kind == "multi-isp") {
    if (img.empty()) throw wb::DomainError("--img (raw .pgm) is required");
    std::vector<wb::sim::PipelineConfig> cs;
    for (const auto& c : configs) cs.push_back(wb::sim::load_config(c));
    wb::detect::StopSignDetector det;
    auto r = defense_multi_pipeline(wb::read_raw(img).image, cs, det,
                                    threshold >= 0 ? threshold : kDisagreementThreshold);
    emit(to_json(r), out);
    return 0;
  }
  // random-readout
  if (configs.size() != 1) throw wb::DomainError("random-readout takes exactly one --config");
  auto c = defense_random_readout(wb::sim::load_config(configs[0]), seed);
  emit(wb::sim::to_json(c), out);
  return 0;
}

int analyze(const std::string& a, const std::string& b, const std::string& roi, bool is_signed,
            const std::string& out) {
  auto ia = wb::analysis::load_image(a);
  auto ib = wb::analysis::load_image(b);
  std::optional<wb::RoiRect> r;
  if (!roi.empty()) r = wb::parse_roi(roi);
  auto entries = wb::analysis::compare(
      ia, ib, is_signed ? wb::analysis::DiffMode::Signed : wb::analysis::DiffMode::Absolute, r);
  wb::analysis::export_report(entries, out);
  return 0;
}

int detect(const std::string& img, bool pre_isp) {
  wb::RgbImage rgb =
      pre_isp ? wb::detect::demosaic_for_detection(wb::read_raw(img).image) : wb::read_ppm(img);
  std::cout << wb::detect::to_json(wb::detect::naive_stop_sign_detect(rgb)).dump(2) << "\n";
  return 0;
}

// The blinding use case end to end: clean, blinded, blinded with HDR.
int usecase(const std::string& out_dir) {
  namespace sc = wb::sim::scenes;
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  auto clean = sc::stop_sign_scene();
  auto blinded = wb::attack::apply_attack(clean, wb::attack::stop_sign_laser());
  const wb::RoiRect roi = sc::stop_sign_roi();
  struct Run {
    const char* name;
    const wb::sim::TimeVaryingScene* scene;
    wb::sim::PipelineConfig config;
  };
  const Run runs[] = {{"clean", &clean, sc::non_hdr_preset()},
                      {"blinded", &blinded, sc::non_hdr_preset()},
                      {"blinded_hdr", &blinded, sc::hdr_preset()}};
  json summary = json::object();
  std::map<std::string, wb::RgbImage> post;
  for (const auto& r : runs) {
    auto o = wb::sim::run_pipeline(*r.scene, r.config);
    const std::string stem = (dir / r.name).string();
    wb::write_raw(stem + ".pre.pgm", o.pre_isp, o.metadata);
    wb::write_ppm(stem + ".post.ppm", o.post_isp);
    auto dets = wb::detect::naive_stop_sign_detect(o.post_isp);
    bool found = false;
    for (const auto& d : dets) found |= wb::detect::iou(d.box, roi) >= 0.5;
    summary[r.name] = {{"detections", wb::detect::to_json(dets)},
                       {"sign_found", found},
                       {"roi_saturation", wb::attack::detect_blinding(o.pre_isp, roi).score}};
    post[r.name] = o.post_isp;
  }
  auto entries = wb::analysis::compare(wb::analysis::from_rgb(post["blinded"]),
                                       wb::analysis::from_rgb(post["blinded_hdr"]),
                                       wb::analysis::DiffMode::Signed, roi);
  wb::analysis::export_report(entries, (dir / "analysis").string());
  emit(summary, (dir / "summary.json").string());
  std::cout << summary.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Camera pipeline security workbench"};
  app.require_subcommand(1);

  auto* risk = app.add_subcommand("risk", "Threat catalog evaluation");
  risk->require_subcommand(1);
  std::string catalog, format = "csv";
  bool fail_on_mismatch = false;
  auto* eval = risk->add_subcommand("eval", "Recompute feasibility and risk for a catalog");
  eval->add_option("--catalog", catalog, "Catalog JSON")->required();
  eval->add_option("--format", format, "csv or markdown");
  eval->add_flag("--fail-on-mismatch", fail_on_mismatch, "Exit 1 if any row disagrees");
  auto* matrix = risk->add_subcommand("matrix", "Print the impact x feasibility risk matrix");

  auto* scene = app.add_subcommand("scene", "Write a built-in scene");
  scene->require_subcommand(1);
  std::string scene_prefix, chart_out;
  int chart_w = 128, chart_h = 128;
  auto* stop = scene->add_subcommand("stop-sign", "Red octagon on grey");
  stop->add_option("--out-prefix", scene_prefix)->required();
  auto* chart = scene->add_subcommand("chart", "Codec test chart");
  chart->add_option("--out", chart_out)->required();
  chart->add_option("--width", chart_w);
  chart->add_option("--height", chart_h);

  std::string scene_path, config_path, out_prefix;
  auto* pre = app.add_subcommand("preset", "Write a built-in config or attack spec as JSON");
  std::string preset_kind, preset_out;
  pre->add_option("kind", preset_kind)->required()->check(CLI::IsMember({"non-hdr", "hdr", "laser", "flicker"}));
  pre->add_option("--out", preset_out, "Write JSON here instead of stdout");

  auto* cap = app.add_subcommand("capture", "Run the sensor and ISP on a scene");
  cap->add_option("--scene", scene_path)->required();
  cap->add_option("--config", config_path)->required();
  cap->add_option("--out-prefix", out_prefix)->required();

  std::string attack_kind, spec_path, attack_scene, attack_out;
  auto* atk = app.add_subcommand("attack", "Inject an attack");
  atk->add_option("kind", attack_kind)->required()->check(
      CLI::IsMember({"blind", "flicker", "scalecam", "overlay"}));
  atk->add_option("--spec", spec_path)->required();
  atk->add_option("--scene", attack_scene, "Input scene (scene-level attacks)");
  atk->add_option("--out-prefix", attack_out)->required();

  std::string defend_kind, defend_img, defend_roi, defend_out;
  std::vector<std::string> defend_configs;
  uint64_t defend_seed = 0;
  double threshold = -1;
  auto* def = app.add_subcommand("defend", "Run a defense");
  def->add_option("kind", defend_kind)->required()->check(
      CLI::IsMember({"blinding", "multi-isp", "random-readout"}));
  def->add_option("--img", defend_img, "Image (.ppm) or raw (.pgm)");
  def->add_option("--roi", defend_roi, "x,y,w,h");
  def->add_option("--config", defend_configs, "Pipeline config JSON (repeatable)");
  auto* seed_opt = def->add_option("--seed", defend_seed, "Readout permutation seed");
  def->add_option("--threshold", threshold);
  def->add_option("--out", defend_out, "Write JSON here instead of stdout");

  std::string an_a, an_b, an_roi, an_out;
  bool an_signed = false;
  auto* an = app.add_subcommand("analyze", "Compare two images");
  an->add_option("--a", an_a)->required();
  an->add_option("--b", an_b)->required();
  an->add_option("--roi", an_roi, "x,y,w,h");
  an->add_flag("--signed", an_signed);
  an->add_option("--out", an_out)->required();

  std::string det_img;
  bool det_pre = false;
  auto* det = app.add_subcommand("detect", "Run the stop-sign detector");
  det->add_option("--img", det_img)->required();
  det->add_flag("--pre-isp", det_pre, "Input is a raw frame");

  std::string uc_out;
  auto* uc = app.add_subcommand("usecase", "Blinding use case: clean, blinded, blinded with HDR");
  uc->add_option("--out", uc_out)->required();

  wb::service::Options sopts;
  sopts.catalog_path = "catalog/threats.json";
  std::string host = "127.0.0.1";
  int port = -1;
  auto* srv = app.add_subcommand("serve", "HTTP service (port from WORKBENCH_PORT by default)");
  srv->add_option("--host", host);
  srv->add_option("--port", port);
  srv->add_option("--data-dir", sopts.data_dir);
  srv->add_option("--catalog", sopts.catalog_path);
  srv->add_option("--ui-dir", sopts.ui_dir);

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed()) return risk_eval(catalog, format, fail_on_mismatch);
    if (matrix->parsed()) return risk_matrix();
    if (stop->parsed()) {
      ensure_parent(scene_prefix);
      wb::sim::save_scene(scene_prefix, wb::sim::scenes::stop_sign_scene());
      return 0;
    }
    if (chart->parsed()) {
      ensure_parent(chart_out);
      wb::write_ppm(chart_out, wb::sim::scenes::test_chart(chart_w, chart_h));
      return 0;
    }
    if (pre->parsed()) {
      if (!preset_out.empty()) ensure_parent(preset_out);
      emit(preset(preset_kind), preset_out);
      return 0;
    }
    if (cap->parsed()) return capture(scene_path, config_path, out_prefix);
    if (atk->parsed()) return attack_cmd(attack_kind, spec_path, attack_scene, attack_out);
    if (def->parsed()) {
      std::optional<uint64_t> seed;
      if (seed_opt->count()) seed = defend_seed;
      return defend(defend_kind, defend_img, defend_roi, defend_configs, seed, threshold, defend_out);
    }
    if (an->parsed()) return analyze(an_a, an_b, an_roi, an_signed, an_out);
    if (det->parsed()) return detect(det_img, det_pre);
    if (uc->parsed()) return usecase(uc_out);
    if (srv->parsed()) {
      if (port < 0) {
        const char* env = std::getenv("WORKBENCH_PORT");
        port = env ? std::atoi(env) : 8080;
      }
      return wb::service::serve(sopts, host, port);
    }
  } catch (const wb::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
