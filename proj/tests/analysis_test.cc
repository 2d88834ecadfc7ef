#include <gtest/gtest.h>

#include <locale>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>

#include "support.h"
#include "workbench/analysis/analysis.h"
#include "workbench/analysis/stripes.h"
#include "workbench/errors.h"
#include "workbench/image_io.h"

using namespace wb;
using namespace wb::analysis;

namespace {

RgbImage constant(int w, int h, uint8_t v) { return RgbImage(w, h, v); }

RgbImage random_rgb(int w, int h, uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(0, 255);
  RgbImage img(w, h);
  for (auto& v : img.data) v = static_cast<uint8_t>(d(rng));
  return img;
}

uint64_t total(const Histogram& h) { return std::accumulate(h.counts.begin(), h.counts.end(), uint64_t{0}); }

}  // namespace

TEST(Stats, ConstantWithRoi) {
  auto s = stats(from_rgb(constant(8, 8, 128)), RoiRect{1, 1, 4, 4});
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].mean, 128);
  EXPECT_EQ(s[0].std, 0);
  EXPECT_TRUE(s[0].snr_reported);
  EXPECT_FALSE(s[0].snr.has_value());
}

TEST(Stats, TwoPixelRoi) {
  RgbImage img(2, 1);
  for (int c = 0; c < 3; ++c) {
    img.at(0, 0, c) = 100;
    img.at(1, 0, c) = 200;
  }
  auto s = stats(from_rgb(img), RoiRect{0, 0, 2, 1});
  EXPECT_EQ(s[1].min, 100);
  EXPECT_EQ(s[1].max, 200);
  EXPECT_DOUBLE_EQ(s[1].mean, 150);
  EXPECT_DOUBLE_EQ(s[1].std, 50);
  ASSERT_TRUE(s[1].snr.has_value());
  EXPECT_DOUBLE_EQ(*s[1].snr, 3.0);
}

TEST(Stats, FullImageHasNoSnr) {
  auto s = stats(from_rgb(random_rgb(9, 7, 1)));
  for (const auto& c : s) {
    EXPECT_FALSE(c.snr_reported);
    EXPECT_LE(c.min, c.mean);
    EXPECT_LE(c.mean, c.max);
  }
}

TEST(Stats, MatchesTwoPassOracle) {
  RgbImage img = random_rgb(31, 17, 9);
  RoiRect roi{3, 2, 20, 11};
  auto s = stats(from_rgb(img), roi);
  for (int c = 0; c < 3; ++c) {
    double sum = 0;
    for (int y = roi.y; y < roi.y + roi.h; ++y)
      for (int x = roi.x; x < roi.x + roi.w; ++x) sum += img.at(x, y, c);
    double mean = sum / (roi.w * roi.h), ss = 0;
    for (int y = roi.y; y < roi.y + roi.h; ++y)
      for (int x = roi.x; x < roi.x + roi.w; ++x) ss += (img.at(x, y, c) - mean) * (img.at(x, y, c) - mean);
    EXPECT_NEAR(s[c].mean, mean, 1e-12);
    EXPECT_NEAR(s[c].std, std::sqrt(ss / (roi.w * roi.h)), 1e-9);
  }
}

TEST(Stats, RoiOutOfBounds) {
  EXPECT_THROW(stats(from_rgb(constant(4, 4, 0)), RoiRect{2, 2, 3, 3}), DomainError);
  EXPECT_THROW(histogram(from_rgb(constant(4, 4, 0)), RoiRect{0, 0, 0, 1}), DomainError);
}

TEST(Histogram, ConstantSingleBinAndRamp) {
  auto h = histogram(from_rgb(constant(5, 5, 42)));
  ASSERT_EQ(h.size(), 3u);
  EXPECT_EQ(h[0].counts.size(), 256u);
  EXPECT_EQ(h[0].counts[42], 25u);
  EXPECT_EQ(total(h[0]), 25u);
  RgbImage ramp(256, 1);
  for (int x = 0; x < 256; ++x) ramp.at(x, 0, 0) = ramp.at(x, 0, 1) = ramp.at(x, 0, 2) = x;
  for (auto& ch : histogram(from_rgb(ramp)))
    for (auto n : ch.counts) EXPECT_EQ(n, 1u);
}

TEST(Histogram, RawUsesFullBitDepth) {
  RawImage raw(4, 4, 10, CfaPattern::RGGB);
  raw.at(1, 1) = 1023;
  Image img = from_raw(raw);
  auto h = histogram(img);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0].counts.size(), 1024u);
  EXPECT_EQ(h[0].counts[1023], 1u);
  EXPECT_EQ(h[0].counts[0], 15u);
}

TEST(Diff, SelfIsZero) {
  Image a = from_rgb(random_rgb(12, 10, 3));
  Image d = diff(a, a, DiffMode::Signed);
  EXPECT_TRUE(d.is_signed);
  for (auto& s : stats(d)) {
    EXPECT_EQ(s.min, 0);
    EXPECT_EQ(s.max, 0);
    EXPECT_EQ(s.mean, 0);
    EXPECT_EQ(s.std, 0);
  }
  auto h = histogram(d);
  EXPECT_EQ(h[0].lo, -255);
  EXPECT_EQ(h[0].counts.size(), 511u);
  EXPECT_EQ(h[0].counts[255], 120u);
}

TEST(Diff, ConstantImages) {
  Image d = diff(from_rgb(constant(4, 4, 10)), from_rgb(constant(4, 4, 7)), DiffMode::Signed);
  for (auto v : d.data) EXPECT_EQ(v, 3);
  EXPECT_EQ(stats(d)[0].std, 0);
  Image n = diff(from_rgb(constant(4, 4, 7)), from_rgb(constant(4, 4, 10)), DiffMode::Absolute);
  for (auto v : n.data) EXPECT_EQ(v, 3);
}

TEST(Diff, SignedHistogramMirrors) {
  Image a = from_rgb(random_rgb(16, 16, 4)), b = from_rgb(random_rgb(16, 16, 5));
  auto hab = histogram(diff(a, b, DiffMode::Signed));
  auto hba = histogram(diff(b, a, DiffMode::Signed));
  for (size_t c = 0; c < 3; ++c) {
    const auto& x = hab[c].counts;
    const auto& y = hba[c].counts;
    ASSERT_EQ(x.size(), y.size());
    for (size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i], y[x.size() - 1 - i]);
  }
}

TEST(Diff, MismatchesRejected) {
  RgbImage a(4, 4), b(4, 5);
  EXPECT_THROW(diff(from_rgb(a), from_rgb(b), DiffMode::Signed), DomainError);
  RawImage r(4, 4, 10, CfaPattern::RGGB), m(4, 4, 10, CfaPattern::Mono), r8(4, 4, 8, CfaPattern::RGGB);
  EXPECT_THROW(diff(from_raw(r), from_raw(m), DiffMode::Signed), DomainError);
  EXPECT_THROW(diff(from_raw(r), from_raw(r8), DiffMode::Signed), DomainError);
  // a raw frame and a processed image are never compared
  EXPECT_THROW(diff(from_raw(r), from_rgb(a), DiffMode::Signed), DomainError);
}

TEST(Diff, BlindedVersusHdrChannelDirections) {
  auto uc = wbtest::use_case();
  auto e = compare(from_rgb(uc.blinded.out.post_isp), from_rgb(uc.blinded_hdr.out.post_isp),
                   DiffMode::Signed, sim::scenes::stop_sign_roi());
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(e[2].name, "diff");
  EXPECT_GT(e[2].stats[0].mean, 0);
  EXPECT_LT(e[2].stats[1].mean, 0);
  EXPECT_LT(e[2].stats[2].mean, 0);
}

TEST(Histogram, BlindedRoiTopBinsEmptierWithHdr) {
  auto uc = wbtest::use_case();
  auto top = [](const RawImage& raw) {
    auto h = histogram(from_raw(raw), sim::scenes::laser_roi())[0];
    const int thr = saturation_threshold(raw.full_scale(), raw.black_level);
    return std::accumulate(h.counts.begin() + thr, h.counts.end(), uint64_t{0});
  };
  EXPECT_LT(top(uc.blinded_hdr.out.pre_isp), top(uc.blinded.out.pre_isp));
}

TEST(Report, CsvLayoutAndSnrMarkers) {
  Image a = from_rgb(constant(4, 4, 10)), b = from_rgb(constant(4, 4, 7));
  auto entries = compare(a, b, DiffMode::Signed, RoiRect{0, 0, 2, 2});
  std::string csv = metrics_csv(entries);
  EXPECT_EQ(csv,
            "image,channel,min,max,mean,std,snr\n"
            "a,R,10.000000,10.000000,10.000000,0.000000,undefined\n"
            "a,G,10.000000,10.000000,10.000000,0.000000,undefined\n"
            "a,B,10.000000,10.000000,10.000000,0.000000,undefined\n"
            "b,R,7.000000,7.000000,7.000000,0.000000,undefined\n"
            "b,G,7.000000,7.000000,7.000000,0.000000,undefined\n"
            "b,B,7.000000,7.000000,7.000000,0.000000,undefined\n"
            "diff,R,3.000000,3.000000,3.000000,0.000000,undefined\n"
            "diff,G,3.000000,3.000000,3.000000,0.000000,undefined\n"
            "diff,B,3.000000,3.000000,3.000000,0.000000,undefined\n");
  auto full = compare(a, b, DiffMode::Signed, std::nullopt);
  EXPECT_NE(metrics_csv(full).find("a,R,10.000000,10.000000,10.000000,0.000000,\n"), std::string::npos);
  EXPECT_EQ(metrics_csv({}), "image,channel,min,max,mean,std,snr\n");
}

TEST(Report, Fixed6) {
  EXPECT_EQ(fixed6(0), "0.000000");
  EXPECT_EQ(fixed6(-1.5), "-1.500000");
  EXPECT_EQ(fixed6(1.0 / 3), "0.333333");
  EXPECT_EQ(fixed6(-0.0000001), "0.000000");
}

TEST(Report, ExportIsDeterministic) {
  auto dir = wbtest::temp_dir("report");
  Image a = from_rgb(random_rgb(20, 20, 1)), b = from_rgb(random_rgb(20, 20, 2));
  auto entries = compare(a, b, DiffMode::Absolute, RoiRect{2, 2, 10, 10});
  export_report(entries, (dir / "one").string());
  export_report(entries, (dir / "two").string());
  for (const char* f : {"metrics.csv", "hist_a.svg", "hist_b.svg", "hist_diff.svg"}) {
    ASSERT_TRUE(std::filesystem::exists(dir / "one" / f)) << f;
    EXPECT_EQ(read_file((dir / "one" / f).string()), read_file((dir / "two" / f).string()));
  }
  std::string svg = read_file((dir / "one" / "hist_diff.svg").string());
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
}

TEST(Report, LocaleIndependent) {
  struct Comma : std::numpunct<char> {
    char do_decimal_point() const override { return ','; }
    std::string do_grouping() const override { return "\3"; }
    char do_thousands_sep() const override { return '.'; }
  };
  std::locale saved = std::locale::global(std::locale(std::locale::classic(), new Comma));
  std::string s = fixed6(12345.25);
  Image a = from_rgb(constant(2, 2, 1));
  std::string csv = metrics_csv({analyze("a", a, std::nullopt)});
  std::string svg = histogram_svg(analyze("a", a, std::nullopt));
  std::locale::global(saved);
  EXPECT_NE(svg.find("width=\"532\""), std::string::npos);
  EXPECT_EQ(s, "12345.250000");
  EXPECT_NE(csv.find("a,R,1.000000,1.000000,1.000000,0.000000,"), std::string::npos);
}

TEST(LoadImage, PgmAndPpm) {
  auto dir = wbtest::temp_dir("load");
  RawImage raw(4, 2, 10, CfaPattern::RGGB);
  raw.at(3, 1) = 999;
  write_raw((dir / "r.pgm").string(), raw);
  write_ppm((dir / "c.ppm").string(), constant(3, 3, 5));
  Image r = load_image((dir / "r.pgm").string());
  EXPECT_EQ(r.kind, Image::Kind::Raw);
  EXPECT_EQ(r.at(3, 1, 0), 999);
  EXPECT_EQ(load_image((dir / "c.ppm").string()).kind, Image::Kind::Rgb);
  EXPECT_THROW(load_image((dir / "r.pgm").string(), CfaPattern::Mono), DomainError);
  EXPECT_THROW(load_image((dir / "c.txt").string()), DomainError);
}

TEST(Stripes, AutocorrelationAndPeriod) {
  std::vector<double> flat(100, 3.0);
  EXPECT_EQ(autocorrelation(flat, 5), 0.0);
  EXPECT_EQ(band_period(flat), 0.0);
  std::vector<double> sq(400);
  for (int i = 0; i < 400; ++i) sq[i] = (i % 20) < 10 ? 1 : 0;
  EXPECT_NEAR(autocorrelation(sq, 0), 1.0, 1e-12);
  EXPECT_NEAR(autocorrelation(sq, 20), 1.0, 1e-12);
  EXPECT_NEAR(autocorrelation(sq, 10), -1.0, 1e-12);
  EXPECT_NEAR(band_period(sq), 20.0, 0.5);
  std::vector<double> sine(600);
  for (int i = 0; i < 600; ++i) sine[i] = std::sin(2 * std::numbers::pi * i / 37.3);
  EXPECT_NEAR(band_period(sine), 37.3, 0.3);
}
