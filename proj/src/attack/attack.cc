#include "workbench/attack/attack.h"

#include <filesystem>

#include "workbench/errors.h"
#include "workbench/image_io.h"
#include "workbench/json_util.h"
#include "workbench/sim/scenes.h"

namespace wb::attack {

using nlohmann::json;
using namespace jsonu;

namespace {

void check_weights(const std::array<double, 3>& w) {
  for (double v : w)
    if (!(v >= 0 && v <= 1)) throw DomainError("channel_weights must lie in [0,1]");
}

sim::TimeVaryingScene apply(const sim::TimeVaryingScene& scene, const Blinding& b) {
  if (!(b.intensity >= 0)) throw DomainError("blinding intensity must be >= 0");
  if (b.cx < 0 || b.cy < 0 || b.cx > scene.width || b.cy > scene.height)
    throw DomainError("blinding centre outside the scene");
  if (!(b.radius >= 0)) throw DomainError("blinding radius must be >= 0");
  check_weights(b.channel_weights);
  sim::TimeVaryingScene out = scene;
  if (b.intensity == 0) return out;
  sim::LightModulator m;
  m.region.kind = sim::Region::Kind::Disc;
  m.region.cx = b.cx;
  m.region.cy = b.cy;
  m.region.r = b.radius;
  m.channel_weights = b.channel_weights;
  m.waveform = sim::Waveform::Constant;
  m.intensity = b.intensity;
  m.psf_sigma = b.psf_sigma;
  sim::validate(m, scene.width, scene.height);
  out.modulators.push_back(m);
  return out;
}

sim::TimeVaryingScene apply(const sim::TimeVaryingScene& scene, const Flicker& f) {
  if (!(f.intensity >= 0)) throw DomainError("flicker intensity must be >= 0");
  sim::TimeVaryingScene out = scene;
  if (f.intensity == 0) return out;
  sim::LightModulator m;
  m.region = f.region;
  m.channel_weights = f.channel_weights;
  m.waveform = sim::Waveform::Square;
  m.frequency_hz = f.frequency_hz;
  m.duty = f.duty;
  m.intensity = f.intensity;
  sim::validate(m, scene.width, scene.height);
  out.modulators.push_back(m);
  return out;
}

sim::TimeVaryingScene apply(const sim::TimeVaryingScene& scene, const DigitalOverlay& o) {
  const RgbImage& p = o.patch;
  if (o.x < 0 || o.y < 0 || o.x + p.width > scene.width || o.y + p.height > scene.height)
    throw DomainError("overlay patch does not fit inside the scene");
  sim::TimeVaryingScene out = scene;
  for (int y = 0; y < p.height; ++y)
    for (int x = 0; x < p.width; ++x)
      for (int c = 0; c < 3; ++c)
        out.at(o.x + x, o.y + y, c) = static_cast<float>(p.at(x, y, c) / 255.0 * scene.radiance_scale);
  return out;
}

std::array<double, 3> weights(const json& j, const std::string& path) {
  std::array<double, 3> w{1, 1, 1};
  if (!j.contains("channel_weights")) return w;
  const json& a = j["channel_weights"];
  const std::string p = join(path, "channel_weights");
  if (!a.is_array() || a.size() != 3) throw ParseError(p, "expected 3 numbers");
  for (int c = 0; c < 3; ++c) w[c] = num(a[c], p);
  return w;
}

RgbImage image_field(const json& j, const char* key, const std::string& base_dir) {
  const json& v = need(j, key, "");
  if (v.is_string()) return read_ppm((std::filesystem::path(base_dir) / v.get<std::string>()).string());
  int w = integer(need(v, "width", key), std::string(key) + ".width");
  int h = integer(need(v, "height", key), std::string(key) + ".height");
  const json& px = need(v, "pixels", key);
  if (w < 1 || h < 1) throw ParseError(key, "image must be at least 1x1");
  if (!px.is_array() || px.size() != static_cast<size_t>(w) * h * 3)
    throw ParseError(std::string(key) + ".pixels", "expected width*height*3 values");
  RgbImage img(w, h);
  for (size_t i = 0; i < px.size(); ++i) {
    int v8 = integer(px[i], std::string(key) + ".pixels");
    if (v8 < 0 || v8 > 255) throw ParseError(std::string(key) + ".pixels", "values must be 0..255");
    img.data[i] = static_cast<uint8_t>(v8);
  }
  return img;
}

}  // namespace

sim::TimeVaryingScene apply_attack(const sim::TimeVaryingScene& scene, const AttackSpec& spec) {
  return std::visit(
      [&](const auto& a) -> sim::TimeVaryingScene {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, ScalingCamouflage>) {
          throw DomainError("ScalingCamouflage is not a scene-level attack; use craft_scaling_attack");
        } else {
          return apply(scene, a);
        }
      },
      spec);
}

AttackSpec attack_from_json(const json& j, const std::string& base_dir) {
  std::string v = str(need(j, "variant", ""), "variant");
  if (v == "Blinding") {
    Blinding b;
    const json& c = need(j, "center", "");
    if (!c.is_array() || c.size() != 2) throw ParseError("center", "expected [x, y]");
    b.cx = num(c[0], "center[0]");
    b.cy = num(c[1], "center[1]");
    b.radius = num(need(j, "radius", ""), "radius");
    b.intensity = num(need(j, "intensity", ""), "intensity");
    b.channel_weights = weights(j, "");
    b.psf_sigma = num_or(j, "psf_sigma", "", 0.0);
    return b;
  }
  if (v == "Flicker") {
    Flicker f;
    f.frequency_hz = num(need(j, "frequency_hz", ""), "frequency_hz");
    f.duty = num_or(j, "duty", "", 0.5);
    f.intensity = num(need(j, "intensity", ""), "intensity");
    if (j.contains("region")) f.region = sim::region_from_json(j["region"], "region");
    f.channel_weights = weights(j, "");
    return f;
  }
  if (v == "ScalingCamouflage") {
    ScalingCamouflage s;
    s.source = image_field(j, "source", base_dir);
    s.target = image_field(j, "target", base_dir);
    const json& sc = need(j, "scaler", "");
    std::string m = str(need(sc, "method", "scaler"), "scaler.method");
    if (m != "nearest" && m != "bilinear") throw ParseError("scaler.method", "expected nearest or bilinear");
    s.scaler.method = m == "nearest" ? sim::ResizeMethod::Nearest : sim::ResizeMethod::Bilinear;
    s.scaler.width = integer(need(sc, "width", "scaler"), "scaler.width");
    s.scaler.height = integer(need(sc, "height", "scaler"), "scaler.height");
    return s;
  }
  if (v == "DigitalOverlay") {
    DigitalOverlay o;
    o.patch = image_field(j, "patch", base_dir);
    const json& p = need(j, "position", "");
    if (!p.is_array() || p.size() != 2) throw ParseError("position", "expected [x, y]");
    o.x = integer(p[0], "position[0]");
    o.y = integer(p[1], "position[1]");
    return o;
  }
  throw ParseError("variant", "unknown attack variant '" + v + "'");
}

AttackSpec load_attack(const std::string& path) {
  return attack_from_json(parse_file(path), std::filesystem::path(path).parent_path().string());
}

json to_json(const AttackSpec& spec) {
  auto size = [](const RgbImage& i) { return json{{"width", i.width}, {"height", i.height}}; };
  return std::visit(
      [&](const auto& a) -> json {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Blinding>) {
          return {{"variant", "Blinding"},   {"center", {a.cx, a.cy}},
                  {"radius", a.radius},      {"intensity", a.intensity},
                  {"channel_weights", a.channel_weights}, {"psf_sigma", a.psf_sigma}};
        } else if constexpr (std::is_same_v<T, Flicker>) {
          return {{"variant", "Flicker"},         {"frequency_hz", a.frequency_hz},
                  {"duty", a.duty},               {"intensity", a.intensity},
                  {"region", sim::to_json(a.region)}, {"channel_weights", a.channel_weights}};
        } else if constexpr (std::is_same_v<T, ScalingCamouflage>) {
          return {{"variant", "ScalingCamouflage"},
                  {"source", size(a.source)},
                  {"target", size(a.target)},
                  {"scaler",
                   {{"method", a.scaler.method == sim::ResizeMethod::Nearest ? "nearest" : "bilinear"},
                    {"width", a.scaler.width},
                    {"height", a.scaler.height}}}};
        } else {
          return {{"variant", "DigitalOverlay"}, {"patch", size(a.patch)}, {"position", {a.x, a.y}}};
        }
      },
      spec);
}

Blinding stop_sign_laser() {
  namespace s = sim::scenes;
  Blinding b;
  b.cx = s::kLaserCx;
  b.cy = s::kLaserCy;
  b.radius = 6;
  b.intensity = 5 * s::kRadianceScale;
  b.channel_weights = {1, 0.35, 0.35};
  b.psf_sigma = 20;
  return b;
}

}  // namespace wb::attack
