#include "workbench/sim/config.h"

#include <algorithm>
#include <cmath>

#include "workbench/json_util.h"

namespace wb::sim {

using nlohmann::json;
using namespace jsonu;

namespace {

constexpr IspStage kStages[] = {IspStage::DefectCorrection, IspStage::BlackLevel,
                                IspStage::Demosaic,         IspStage::WhiteBalance,
                                IspStage::Denoise,          IspStage::Tone,
                                IspStage::Crop,             IspStage::Scale,
                                IspStage::Compress};

const char* method_name(ResizeMethod m) { return m == ResizeMethod::Nearest ? "nearest" : "bilinear"; }

template <typename E>
E parse_method(const json& v, const std::string& path) {
  std::string s = str(v, path);
  if (s == "nearest") return E::Nearest;
  if (s == "bilinear") return E::Bilinear;
  throw ParseError(path, "expected nearest or bilinear, got '" + s + "'");
}

uint64_t parse_seed(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0))
    throw ParseError(path, "expected a non-negative integer");
  return v.get<uint64_t>();
}

}  // namespace

const char* to_string(IspStage s) {
  switch (s) {
    case IspStage::DefectCorrection: return "defect_correction";
    case IspStage::BlackLevel: return "black_level";
    case IspStage::Demosaic: return "demosaic";
    case IspStage::WhiteBalance: return "white_balance";
    case IspStage::Denoise: return "denoise";
    case IspStage::Tone: return "tone";
    case IspStage::Crop: return "crop";
    case IspStage::Scale: return "scale";
    case IspStage::Compress: return "compress";
  }
  return "?";
}

bool PipelineConfig::bypassed(IspStage s) const {
  return std::find(bypass.begin(), bypass.end(), s) != bypass.end();
}

void validate(const PipelineConfig& c) {
  auto fail = [](const char* field, const std::string& msg) { throw ParseError(field, msg); };
  if (!(c.exposure_time > 0)) fail("exposure_time", "must be > 0");
  if (!(c.analog_gain >= 1)) fail("analog_gain", "must be >= 1");
  if (!(c.line_time >= 0)) fail("line_time", "must be >= 0");
  if (c.bit_depth < 1 || c.bit_depth > 16) fail("bit_depth", "must be in [1,16]");
  if (c.black_level < 0 || c.black_level >= (1 << c.bit_depth) - 1)
    fail("black_level", "must be in [0, full scale)");
  if (!(c.read_noise_sigma >= 0)) fail("read_noise_sigma", "must be >= 0");
  if (c.hdr.enabled) {
    if (c.hdr.n_exposures < 2) fail("hdr.n_exposures", "must be >= 2");
    if (!(c.hdr.exposure_ratio > 1)) fail("hdr.exposure_ratio", "must be > 1");
    double extra = std::ceil(std::log2(std::pow(c.hdr.exposure_ratio, c.hdr.n_exposures - 1)) - 1e-9);
    if (c.bit_depth + extra > 16) fail("hdr", "merged bit depth would exceed 16");
  }
  if (!(c.tone_gamma > 0)) fail("tone_gamma", "must be > 0");
  for (double g : c.wb_gains)
    if (!(g > 0)) fail("wb_gains", "gains must be > 0");
  if (c.scale && (c.scale->width < 1 || c.scale->height < 1)) fail("scale", "target must be >= 1x1");
  if (c.crop && c.crop->empty()) fail("crop", "must have w, h >= 1");
  if (c.compress_quality && (*c.compress_quality < 1 || *c.compress_quality > 100))
    fail("compress_quality", "must be in 1..100 or \"off\"");
  if (c.output_bit_depth != 8) fail("output_bit_depth", "only 8 is supported");
}

json to_json(const PipelineConfig& c) {
  json j;
  j["exposure_time"] = c.exposure_time;
  j["analog_gain"] = c.analog_gain;
  j["line_time"] = c.line_time;
  if (c.readout_order.kind == ReadoutOrder::Kind::Sequential)
    j["readout_order"] = "sequential";
  else
    j["readout_order"] = {{"kind", "randomized"}, {"seed", c.readout_order.seed}};
  if (c.hdr.enabled)
    j["hdr"] = {{"kind", "bracketed"},
                {"n_exposures", c.hdr.n_exposures},
                {"exposure_ratio", c.hdr.exposure_ratio}};
  else
    j["hdr"] = "off";
  j["bit_depth"] = c.bit_depth;
  j["cfa"] = wb::to_string(c.cfa);
  j["black_level"] = c.black_level;
  j["read_noise_sigma"] = c.read_noise_sigma;
  j["shot_noise"] = c.shot_noise;
  j["noise_seed"] = c.noise_seed;
  json defects = json::array();
  for (auto [x, y] : c.defect_map) defects.push_back({x, y});
  j["defect_map"] = defects;
  j["tone_gamma"] = c.tone_gamma;
  j["wb_gains"] = c.wb_gains;
  j["demosaic"] = c.demosaic == DemosaicMethod::Nearest ? "nearest" : "bilinear";
  j["denoise"] = c.denoise_median3 ? "median3" : "off";
  j["scale"] = c.scale ? json{{"target_w", c.scale->width},
                              {"target_h", c.scale->height},
                              {"method", method_name(c.scale->method)}}
                       : json(nullptr);
  j["crop"] = c.crop ? json{{"x", c.crop->x}, {"y", c.crop->y}, {"w", c.crop->w}, {"h", c.crop->h}}
                     : json(nullptr);
  j["compress_quality"] = c.compress_quality ? json(*c.compress_quality) : json("off");
  j["output_bit_depth"] = c.output_bit_depth;
  json bypass = json::array();
  for (IspStage s : c.bypass) bypass.push_back(to_string(s));
  j["bypass"] = bypass;
  return j;
}

PipelineConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("$", "config must be a JSON object");
  PipelineConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    if (k == "exposure_time") {
      c.exposure_time = num(v, k);
    } else if (k == "analog_gain") {
      c.analog_gain = num(v, k);
    } else if (k == "line_time") {
      c.line_time = num(v, k);
    } else if (k == "readout_order") {
      if (v.is_string() && v == "sequential") {
        c.readout_order = {};
      } else if (v.is_object() && v.value("kind", "") == "randomized") {
        c.readout_order.kind = ReadoutOrder::Kind::Randomized;
        c.readout_order.seed = parse_seed(need(v, "seed", k), k + ".seed");
      } else {
        throw ParseError(k, "expected \"sequential\" or {\"kind\":\"randomized\",\"seed\":n}");
      }
    } else if (k == "hdr") {
      if (v.is_string() && v == "off") {
        c.hdr.enabled = false;
      } else if (v.is_object() && v.value("kind", "") == "bracketed") {
        c.hdr.enabled = true;
        c.hdr.n_exposures = integer(need(v, "n_exposures", k), k + ".n_exposures");
        c.hdr.exposure_ratio = num(need(v, "exposure_ratio", k), k + ".exposure_ratio");
      } else {
        throw ParseError(k, "expected \"off\" or {\"kind\":\"bracketed\",...}");
      }
    } else if (k == "bit_depth") {
      c.bit_depth = integer(v, k);
    } else if (k == "cfa") {
      c.cfa = cfa_from_string(str(v, k));
    } else if (k == "black_level") {
      c.black_level = integer(v, k);
    } else if (k == "read_noise_sigma") {
      c.read_noise_sigma = num(v, k);
    } else if (k == "shot_noise") {
      c.shot_noise = boolean(v, k);
    } else if (k == "noise_seed") {
      c.noise_seed = parse_seed(v, k);
    } else if (k == "defect_map") {
      if (!v.is_array()) throw ParseError(k, "expected an array of [x,y]");
      for (size_t i = 0; i < v.size(); ++i) {
        std::string p = k + "[" + std::to_string(i) + "]";
        if (!v[i].is_array() || v[i].size() != 2) throw ParseError(p, "expected [x,y]");
        c.defect_map.emplace_back(integer(v[i][0], p), integer(v[i][1], p));
      }
    } else if (k == "tone_gamma") {
      c.tone_gamma = num(v, k);
    } else if (k == "wb_gains") {
      if (!v.is_array() || v.size() != 3) throw ParseError(k, "expected 3 numbers");
      for (int i = 0; i < 3; ++i) c.wb_gains[i] = num(v[i], k + "[" + std::to_string(i) + "]");
    } else if (k == "demosaic") {
      c.demosaic = parse_method<DemosaicMethod>(v, k);
    } else if (k == "denoise") {
      std::string s = str(v, k);
      if (s != "off" && s != "median3") throw ParseError(k, "expected off or median3");
      c.denoise_median3 = s == "median3";
    } else if (k == "scale") {
      if (v.is_null()) {
        c.scale.reset();
      } else {
        ScaleSpec s;
        s.width = integer(need(v, "target_w", k), k + ".target_w");
        s.height = integer(need(v, "target_h", k), k + ".target_h");
        if (v.contains("method")) s.method = parse_method<ResizeMethod>(v["method"], k + ".method");
        c.scale = s;
      }
    } else if (k == "crop") {
      if (v.is_null()) {
        c.crop.reset();
      } else {
        c.crop = RoiRect{integer(need(v, "x", k), k + ".x"), integer(need(v, "y", k), k + ".y"),
                         integer(need(v, "w", k), k + ".w"), integer(need(v, "h", k), k + ".h")};
      }
    } else if (k == "compress_quality") {
      if (v.is_string() && v == "off")
        c.compress_quality.reset();
      else
        c.compress_quality = integer(v, k);
    } else if (k == "output_bit_depth") {
      c.output_bit_depth = integer(v, k);
    } else if (k == "bypass") {
      if (!v.is_array()) throw ParseError(k, "expected an array of stage names");
      c.bypass.clear();
      for (size_t i = 0; i < v.size(); ++i) {
        std::string p = k + "[" + std::to_string(i) + "]";
        std::string name = str(v[i], p);
        auto st = std::find_if(std::begin(kStages), std::end(kStages),
                               [&](IspStage s) { return name == to_string(s); });
        if (st == std::end(kStages)) throw ParseError(p, "unknown stage '" + name + "'");
        c.bypass.push_back(*st);
      }
    } else {
      throw ParseError(k, "unknown field");
    }
  }
  validate(c);
  return c;
}

PipelineConfig load_config(const std::string& path) { return config_from_json(parse_file(path)); }

PipelineConfig merge_config(const PipelineConfig& base, const json& patch) {
  if (!patch.is_object()) throw ParseError("$", "config patch must be a JSON object");
  json j = to_json(base);
  for (auto it = patch.begin(); it != patch.end(); ++it) j[it.key()] = it.value();
  return config_from_json(j);
}

}  // namespace wb::sim
