#include "workbench/image_io.h"

#include <cctype>
#include <fstream>
#include <sstream>

#include "workbench/errors.h"

namespace wb {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(const std::string& b) : b_(b) {}

  void skip_space_and_comments() {
    while (pos_ < b_.size()) {
      if (std::isspace(static_cast<unsigned char>(b_[pos_]))) {
        ++pos_;
      } else if (b_[pos_] == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  int next_int(const char* field) {
    skip_space_and_comments();
    size_t start = pos_;
    long v = 0;
    while (pos_ < b_.size() && std::isdigit(static_cast<unsigned char>(b_[pos_]))) {
      v = v * 10 + (b_[pos_] - '0');
      if (v > 1 << 30) throw ParseError("pnm header", std::string(field) + " too large");
      ++pos_;
    }
    if (pos_ == start) throw ParseError("pnm header", std::string("missing ") + field);
    return static_cast<int>(v);
  }

  size_t pos_ = 0;

 private:
  const std::string& b_;
};

}  // namespace

Pnm decode_pnm(const std::string& bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
    throw ParseError("pnm header", "expected P5 or P6 magic");
  Pnm pnm;
  pnm.channels = bytes[1] == '6' ? 3 : 1;
  HeaderReader hr(bytes);
  hr.pos_ = 2;
  pnm.width = hr.next_int("width");
  pnm.height = hr.next_int("height");
  pnm.maxval = hr.next_int("maxval");
  if (pnm.width <= 0 || pnm.height <= 0) throw ParseError("pnm header", "zero dimension");
  if (pnm.maxval <= 0 || pnm.maxval > 65535)
    throw ParseError("pnm header", "maxval " + std::to_string(pnm.maxval) + " out of range");
  if (hr.pos_ >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[hr.pos_])))
    throw ParseError("pnm header", "missing whitespace after maxval");
  size_t p = hr.pos_ + 1;
  const size_t bps = pnm.maxval > 255 ? 2 : 1;
  const size_t n = static_cast<size_t>(pnm.width) * pnm.height * pnm.channels;
  if (bytes.size() - p < n * bps)
    throw ParseError("pnm data", "truncated: need " + std::to_string(n * bps) + " bytes, have " +
                                     std::to_string(bytes.size() - p));
  pnm.samples.resize(n);
  const auto* d = reinterpret_cast<const unsigned char*>(bytes.data()) + p;
  for (size_t i = 0; i < n; ++i) {
    uint16_t v = bps == 2 ? static_cast<uint16_t>(d[2 * i] << 8 | d[2 * i + 1]) : d[i];
    if (v > pnm.maxval)
      throw ParseError("pnm data", "sample " + std::to_string(i) + " exceeds maxval");
    pnm.samples[i] = v;
  }
  return pnm;
}

std::string encode_pnm(const Pnm& pnm) {
  std::string out = (pnm.channels == 3 ? "P6\n" : "P5\n") + std::to_string(pnm.width) + " " +
                    std::to_string(pnm.height) + "\n" + std::to_string(pnm.maxval) + "\n";
  const bool wide = pnm.maxval > 255;
  out.reserve(out.size() + pnm.samples.size() * (wide ? 2 : 1));
  for (uint16_t v : pnm.samples) {
    if (wide) out.push_back(static_cast<char>(v >> 8));
    out.push_back(static_cast<char>(v & 0xff));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("short write to " + path);
}

std::string encode_ppm(const RgbImage& img) {
  Pnm p{img.width, img.height, 3, 255, {img.data.begin(), img.data.end()}};
  return encode_pnm(p);
}

RgbImage decode_ppm(const std::string& bytes) {
  Pnm p = decode_pnm(bytes);
  if (p.channels != 3) throw ParseError("ppm", "expected P6");
  if (p.maxval != 255) throw ParseError("ppm", "expected maxval 255, got " + std::to_string(p.maxval));
  RgbImage img(p.width, p.height);
  for (size_t i = 0; i < p.samples.size(); ++i) img.data[i] = static_cast<uint8_t>(p.samples[i]);
  return img;
}

RgbImage read_ppm(const std::string& path) { return decode_ppm(read_file(path)); }
void write_ppm(const std::string& path, const RgbImage& img) { write_file(path, encode_ppm(img)); }

std::string sidecar_path(const std::string& raw_path) { return raw_path + ".meta.json"; }

void write_raw(const std::string& path, const RawImage& raw, const nlohmann::json& metadata) {
  Pnm p{raw.width, raw.height, 1, 65535, raw.data};
  write_file(path, encode_pnm(p));
  nlohmann::json side = {{"width", raw.width},       {"height", raw.height},
                         {"bit_depth", raw.bit_depth}, {"cfa", to_string(raw.cfa)},
                         {"black_level", raw.black_level}, {"metadata", metadata}};
  write_file(sidecar_path(path), side.dump(2) + "\n");
}

RawFile read_raw(const std::string& path, std::optional<CfaPattern> expect_cfa) {
  Pnm p = decode_pnm(read_file(path));
  if (p.channels != 1) throw ParseError(path, "raw frame must be P5");
  nlohmann::json side;
  try {
    side = nlohmann::json::parse(read_file(sidecar_path(path)));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(sidecar_path(path), e.what());
  }
  RawFile out;
  try {
    int bd = side.at("bit_depth").get<int>();
    CfaPattern cfa = cfa_from_string(side.at("cfa").get<std::string>());
    int bl = side.value("black_level", 0);
    if (side.contains("width") && (side["width"].get<int>() != p.width ||
                                   side["height"].get<int>() != p.height))
      throw ParseError(sidecar_path(path), "dimensions disagree with " + path);
    if (expect_cfa && *expect_cfa != cfa)
      throw DomainError(path + ": sidecar cfa " + to_string(cfa) + " does not match requested " +
                        to_string(*expect_cfa));
    out.image = RawImage(p.width, p.height, bd, cfa, bl);
    out.metadata = side.value("metadata", nlohmann::json::object());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(sidecar_path(path), e.what());
  }
  const uint16_t fs = out.image.full_scale();
  for (size_t i = 0; i < p.samples.size(); ++i) {
    if (p.samples[i] > fs)
      throw DomainError(path + ": sample " + std::to_string(i) + " = " +
                        std::to_string(p.samples[i]) + " exceeds " + std::to_string(fs) +
                        " for bit_depth " + std::to_string(out.image.bit_depth));
  }
  out.image.data = std::move(p.samples);
  return out;
}

}  // namespace wb
