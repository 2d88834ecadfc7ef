#include "workbench/sim/scene.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>

#include "workbench/image_io.h"
#include "workbench/json_util.h"

namespace wb {
namespace jsonu {

nlohmann::json parse_file(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path, e.what());
  }
}

}  // namespace jsonu

namespace sim {

using nlohmann::json;

double modulator_profile(const LightModulator& m, int x, int y) {
  const double px = x + 0.5, py = y + 0.5;
  double d = 0;
  switch (m.region.kind) {
    case Region::Kind::Full:
      return 1.0;
    case Region::Kind::Rect: {
      const RoiRect& r = m.region.rect;
      double dx = std::max({r.x - px, 0.0, px - (r.x + r.w)});
      double dy = std::max({r.y - py, 0.0, py - (r.y + r.h)});
      d = std::hypot(dx, dy);
      break;
    }
    case Region::Kind::Disc:
      d = std::max(std::hypot(px - m.region.cx, py - m.region.cy) - m.region.r, 0.0);
      break;
  }
  if (d == 0) return 1.0;
  if (m.psf_sigma <= 0) return 0.0;
  return std::exp(-d * d / (2 * m.psf_sigma * m.psf_sigma));
}

namespace {

// Antiderivative of the square wave: on for the first `duty` of each period.
double square_primitive(double f, double duty, double t) {
  double cycles = f * t;
  double whole = std::floor(cycles);
  return (whole * duty + std::min(cycles - whole, duty)) / f;
}

}  // namespace

double waveform_integral(const LightModulator& m, double t0, double t1) {
  switch (m.waveform) {
    case Waveform::Constant:
      return t1 - t0;
    case Waveform::Square:
      return square_primitive(m.frequency_hz, m.duty, t1) -
             square_primitive(m.frequency_hz, m.duty, t0);
    case Waveform::Sine: {
      const double w = 2 * std::numbers::pi * m.frequency_hz;
      return 0.5 * (t1 - t0) - (std::cos(w * t1) - std::cos(w * t0)) / (2 * w);
    }
  }
  return 0;
}

void validate(const LightModulator& m, int width, int height) {
  if (!(m.intensity >= 0)) throw DomainError("modulator intensity must be >= 0");
  if (!(m.psf_sigma >= 0)) throw DomainError("psf_sigma must be >= 0");
  for (double w : m.channel_weights)
    if (!(w >= 0 && w <= 1)) throw DomainError("channel_weights must lie in [0,1]");
  if (m.waveform != Waveform::Constant && !(m.frequency_hz > 0))
    throw DomainError("frequency_hz must be > 0 for periodic waveforms");
  if (m.waveform == Waveform::Square && !(m.duty > 0 && m.duty < 1))
    throw DomainError("duty must lie in (0,1)");
  if (m.region.kind == Region::Kind::Rect) check_roi(m.region.rect, width, height);
  if (m.region.kind == Region::Kind::Disc) {
    const Region& r = m.region;
    if (!(r.r >= 0) || r.cx < 0 || r.cy < 0 || r.cx > width || r.cy > height)
      throw DomainError("disc centre outside the scene");
  }
}

void validate(const TimeVaryingScene& s) {
  if (s.width <= 0 || s.height <= 0) throw DomainError("scene dimensions must be positive");
  if (s.base.size() != static_cast<size_t>(s.width) * s.height * 3)
    throw DomainError("scene base radiance has the wrong size");
  for (float v : s.base)
    if (!(v >= 0)) throw DomainError("scene radiance must be >= 0");
  if (!(s.radiance_scale > 0)) throw DomainError("radiance_scale must be > 0");
  for (const auto& m : s.modulators) validate(m, s.width, s.height);
}

TimeVaryingScene scene_from_rgb(const RgbImage& img, double radiance_scale) {
  TimeVaryingScene s;
  s.width = img.width;
  s.height = img.height;
  s.radiance_scale = radiance_scale;
  s.base.resize(img.data.size());
  for (size_t i = 0; i < img.data.size(); ++i)
    s.base[i] = static_cast<float>(img.data[i] / 255.0 * radiance_scale);
  return s;
}

RgbImage scene_base_to_rgb(const TimeVaryingScene& s) {
  RgbImage img(s.width, s.height);
  for (size_t i = 0; i < s.base.size(); ++i) {
    double v = std::round(s.base[i] / s.radiance_scale * 255.0);
    img.data[i] = static_cast<uint8_t>(std::clamp(v, 0.0, 255.0));
  }
  return img;
}

json to_json(const Region& r) {
  switch (r.kind) {
    case Region::Kind::Full: return {{"kind", "full"}};
    case Region::Kind::Rect:
      return {{"kind", "rect"}, {"x", r.rect.x}, {"y", r.rect.y}, {"w", r.rect.w}, {"h", r.rect.h}};
    case Region::Kind::Disc: return {{"kind", "disc"}, {"cx", r.cx}, {"cy", r.cy}, {"r", r.r}};
  }
  return {};
}

Region region_from_json(const json& j, const std::string& path) {
  using namespace jsonu;
  Region r;
  std::string kind = str(need(j, "kind", path), join(path, "kind"));
  if (kind == "full") {
    r.kind = Region::Kind::Full;
  } else if (kind == "rect") {
    r.kind = Region::Kind::Rect;
    r.rect = {integer(need(j, "x", path), join(path, "x")),
              integer(need(j, "y", path), join(path, "y")),
              integer(need(j, "w", path), join(path, "w")),
              integer(need(j, "h", path), join(path, "h"))};
  } else if (kind == "disc") {
    r.kind = Region::Kind::Disc;
    r.cx = num(need(j, "cx", path), join(path, "cx"));
    r.cy = num(need(j, "cy", path), join(path, "cy"));
    r.r = num(need(j, "r", path), join(path, "r"));
  } else {
    throw ParseError(join(path, "kind"), "unknown region kind '" + kind + "'");
  }
  return r;
}

json to_json(const LightModulator& m) {
  json w;
  switch (m.waveform) {
    case Waveform::Constant: w = {{"kind", "constant"}}; break;
    case Waveform::Square:
      w = {{"kind", "square"}, {"frequency_hz", m.frequency_hz}, {"duty", m.duty}};
      break;
    case Waveform::Sine: w = {{"kind", "sine"}, {"frequency_hz", m.frequency_hz}}; break;
  }
  return {{"region", to_json(m.region)},
          {"channel_weights", m.channel_weights},
          {"waveform", w},
          {"intensity", m.intensity},
          {"psf_sigma", m.psf_sigma}};
}

LightModulator modulator_from_json(const json& j, const std::string& path) {
  using namespace jsonu;
  LightModulator m;
  m.region = j.contains("region") ? region_from_json(j["region"], join(path, "region")) : Region{};
  if (j.contains("channel_weights")) {
    const json& cw = j["channel_weights"];
    if (!cw.is_array() || cw.size() != 3)
      throw ParseError(join(path, "channel_weights"), "expected 3 numbers");
    for (int c = 0; c < 3; ++c)
      m.channel_weights[c] = num(cw[c], join(path, "channel_weights") + "[" + std::to_string(c) + "]");
  }
  m.intensity = num(need(j, "intensity", path), join(path, "intensity"));
  m.psf_sigma = num_or(j, "psf_sigma", path, 0.0);
  if (j.contains("waveform")) {
    const std::string wp = join(path, "waveform");
    const json& w = j["waveform"];
    std::string kind = str(need(w, "kind", wp), join(wp, "kind"));
    if (kind == "constant") {
      m.waveform = Waveform::Constant;
    } else if (kind == "square") {
      m.waveform = Waveform::Square;
      m.frequency_hz = num(need(w, "frequency_hz", wp), join(wp, "frequency_hz"));
      m.duty = num_or(w, "duty", wp, 0.5);
    } else if (kind == "sine") {
      m.waveform = Waveform::Sine;
      m.frequency_hz = num(need(w, "frequency_hz", wp), join(wp, "frequency_hz"));
    } else {
      throw ParseError(join(wp, "kind"), "unknown waveform '" + kind + "'");
    }
  }
  return m;
}

TimeVaryingScene load_scene(const std::string& path) {
  using namespace jsonu;
  json j = parse_file(path);
  std::filesystem::path dir = std::filesystem::path(path).parent_path();
  std::string base = str(need(j, "base_image", ""), "base_image");
  RgbImage img = read_ppm((dir / base).string());
  TimeVaryingScene s = scene_from_rgb(img, num(need(j, "radiance_scale", ""), "radiance_scale"));
  if (j.contains("width") && (integer(j["width"], "width") != img.width ||
                              integer(need(j, "height", ""), "height") != img.height))
    throw ParseError("width", "scene size disagrees with " + base);
  if (j.contains("modulators")) {
    const json& mods = j["modulators"];
    if (!mods.is_array()) throw ParseError("modulators", "expected an array");
    for (size_t i = 0; i < mods.size(); ++i)
      s.modulators.push_back(modulator_from_json(mods[i], "modulators[" + std::to_string(i) + "]"));
  }
  validate(s);
  return s;
}

void save_scene(const std::string& prefix, const TimeVaryingScene& s) {
  const std::string base = prefix + ".base.ppm";
  write_ppm(base, scene_base_to_rgb(s));
  json mods = json::array();
  for (const auto& m : s.modulators) mods.push_back(to_json(m));
  json j = {{"width", s.width},
            {"height", s.height},
            {"base_image", std::filesystem::path(base).filename().string()},
            {"radiance_scale", s.radiance_scale},
            {"modulators", mods}};
  write_file(prefix + ".scene.json", j.dump(2) + "\n");
}

}  // namespace sim
}  // namespace wb
