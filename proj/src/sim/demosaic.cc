#include "workbench/sim/demosaic.h"

#include <algorithm>

#include "workbench/errors.h"

namespace wb::sim {

namespace {

// Mirror an out-of-range coordinate by whole CFA periods so the sample keeps its colour.
int lattice_clamp(int v, int n) {
  while (v < 0) v += 2;
  while (v >= n) v -= 2;
  return v;
}

// Channel planes: index 0..3 = R, G, B, C.
struct Sampler {
  const RawImage& raw;

  bool has(int x, int y, CfaChannel c) const { return cfa_channel(raw.cfa, x, y) == c; }
  float at(int x, int y) const {
    return raw.at(lattice_clamp(x, raw.width), lattice_clamp(y, raw.height));
  }

  float bilinear(int x, int y, CfaChannel c) const {
    if (has(x, y, c)) return raw.at(x, y);
    static constexpr int kCross[4][2] = {{0, -1}, {-1, 0}, {1, 0}, {0, 1}};
    static constexpr int kDiag[4][2] = {{-1, -1}, {1, -1}, {-1, 1}, {1, 1}};
    for (const auto* ring : {kCross, kDiag}) {
      float sum = 0;
      int n = 0;
      for (int k = 0; k < 4; ++k) {
        // Colour is a property of parity, so test the unclamped position.
        if (!has(x + ring[k][0], y + ring[k][1], c)) continue;
        sum += at(x + ring[k][0], y + ring[k][1]);
        ++n;
      }
      if (n) return sum / n;
    }
    return 0;  // channel absent from the pattern
  }

  float nearest(int x, int y, CfaChannel c) const {
    if (has(x, y, c)) return raw.at(x, y);
    const int cx = x & ~1, cy = y & ~1;
    for (int dy = 0; dy < 2; ++dy)
      for (int dx = 0; dx < 2; ++dx)
        if (has(cx + dx, cy + dy, c)) return at(cx + dx, cy + dy);
    return 0;
  }

  float sample(int x, int y, CfaChannel c, DemosaicMethod m) const {
    return m == DemosaicMethod::Nearest ? nearest(x, y, c) : bilinear(x, y, c);
  }
};

}  // namespace

LinearImage demosaic(const RawImage& raw, DemosaicMethod method) {
  LinearImage out(raw.width, raw.height);
  if (raw.cfa == CfaPattern::Mono) {
    for (int y = 0; y < raw.height; ++y)
      for (int x = 0; x < raw.width; ++x)
        for (int c = 0; c < 3; ++c) out.at(x, y, c) = raw.at(x, y);
    return out;
  }
  if (raw.width < 2 || raw.height < 2)
    throw DomainError("demosaic needs at least a 2x2 image for CFA " + to_string(raw.cfa));
  Sampler s{raw};
  const float fs = raw.full_scale();
  for (int y = 0; y < raw.height; ++y) {
    for (int x = 0; x < raw.width; ++x) {
      switch (raw.cfa) {
        case CfaPattern::RCCB: {
          float r = s.sample(x, y, CfaChannel::R, method);
          float b = s.sample(x, y, CfaChannel::B, method);
          float cl = s.sample(x, y, CfaChannel::C, method);
          float g = (cl - 0.299f * r - 0.114f * b) / 0.587f;
          out.at(x, y, 0) = r;
          out.at(x, y, 1) = std::clamp(g, 0.f, fs);
          out.at(x, y, 2) = b;
          break;
        }
        case CfaPattern::RCCC: {
          float cl = s.sample(x, y, CfaChannel::C, method);
          out.at(x, y, 0) = s.sample(x, y, CfaChannel::R, method);
          out.at(x, y, 1) = cl;
          out.at(x, y, 2) = cl;
          break;
        }
        default:
          out.at(x, y, 0) = s.sample(x, y, CfaChannel::R, method);
          out.at(x, y, 1) = s.sample(x, y, CfaChannel::G, method);
          out.at(x, y, 2) = s.sample(x, y, CfaChannel::B, method);
      }
    }
  }
  return out;
}

}  // namespace wb::sim
