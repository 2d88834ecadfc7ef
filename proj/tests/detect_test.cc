#include <gtest/gtest.h>

#include <cmath>

#include "support.h"
#include "workbench/detect/detector.h"
#include "workbench/sim/scenes.h"

using namespace wb;
using namespace wb::detect;
namespace sc = wb::sim::scenes;

namespace {

void fill_rect(RgbImage& img, RoiRect r, uint8_t R, uint8_t G, uint8_t B) {
  for (int y = r.y; y < r.y + r.h; ++y)
    for (int x = r.x; x < r.x + r.w; ++x) {
      img.at(x, y, 0) = R;
      img.at(x, y, 1) = G;
      img.at(x, y, 2) = B;
    }
}

}  // namespace

TEST(Detector, GrayImageEmpty) { EXPECT_TRUE(naive_stop_sign_detect(RgbImage(64, 64, 128)).empty()); }

TEST(Detector, OctagonFillRatio) {
  auto dets = naive_stop_sign_detect(sc::stop_sign_image());
  ASSERT_EQ(dets.size(), 1u);
  EXPECT_EQ(dets[0].label, "stop sign");
  // a regular octagon covers 2 / (1 + sqrt 2) of its bounding box
  EXPECT_NEAR(dets[0].score, 2 / (1 + std::sqrt(2.0)), 0.02);
  EXPECT_EQ(dets[0].box, sc::stop_sign_roi());
}

TEST(Detector, SaturatedSignVanishes) {
  RgbImage img = sc::stop_sign_image();
  fill_rect(img, sc::stop_sign_roi(), 255, 255, 255);
  EXPECT_TRUE(naive_stop_sign_detect(img).empty());
}

TEST(Detector, MaskThresholds) {
  RgbImage img(40, 40, 0);
  fill_rect(img, {0, 0, 10, 10}, 140, 100, 50);  // 1.4 * 100 is not exceeded
  fill_rect(img, {20, 0, 10, 10}, 60, 0, 0);     // not above the floor
  fill_rect(img, {0, 20, 7, 9}, 200, 0, 0);      // 63 px, too small
  EXPECT_TRUE(naive_stop_sign_detect(img).empty());
  fill_rect(img, {20, 20, 8, 8}, 61, 0, 0);
  auto dets = naive_stop_sign_detect(img);
  ASSERT_EQ(dets.size(), 1u);
  EXPECT_EQ(dets[0].box, (RoiRect{20, 20, 8, 8}));
  EXPECT_EQ(dets[0].score, 1.0);
}

TEST(Detector, SparseComponentBelowScoreCut) {
  RgbImage img(60, 60, 0);
  // an L shape: 8-connected, large area but a poor fill ratio
  fill_rect(img, {0, 0, 50, 2}, 255, 0, 0);
  fill_rect(img, {0, 0, 2, 50}, 255, 0, 0);
  EXPECT_TRUE(naive_stop_sign_detect(img).empty());
  StopSignParams loose;
  loose.min_score = 0.05;
  EXPECT_EQ(naive_stop_sign_detect(img, loose).size(), 1u);
}

TEST(Detector, DiagonalNeighboursJoin) {
  RgbImage img(30, 30, 0);
  fill_rect(img, {0, 0, 8, 8}, 255, 0, 0);
  fill_rect(img, {8, 8, 8, 8}, 255, 0, 0);
  auto dets = naive_stop_sign_detect(img);
  ASSERT_EQ(dets.size(), 1u);
  EXPECT_EQ(dets[0].box, (RoiRect{0, 0, 16, 16}));
  EXPECT_DOUBLE_EQ(dets[0].score, 0.5);
}

TEST(Detector, SortedByScoreAndDeterministic) {
  RgbImage img(100, 40, 0);
  fill_rect(img, {0, 0, 12, 12}, 200, 0, 0);  // score 1
  fill_rect(img, {30, 0, 12, 12}, 200, 0, 0);
  fill_rect(img, {30, 0, 3, 3}, 0, 0, 0);     // score 135/144
  fill_rect(img, {60, 0, 12, 12}, 200, 0, 0);
  fill_rect(img, {60, 0, 6, 6}, 0, 0, 0);     // score 108/144
  StopSignDetector det;
  auto a = det.detect(img);
  ASSERT_EQ(a.size(), 3u);
  for (size_t i = 1; i < a.size(); ++i) EXPECT_GE(a[i - 1].score, a[i].score);
  EXPECT_EQ(a[0].box.x, 0);
  EXPECT_EQ(a[2].box.x, 60);
  auto b = det.detect(img);
  EXPECT_EQ(to_json(a), to_json(b));
  for (const auto& d : a) {
    EXPECT_GE(d.score, 0);
    EXPECT_LE(d.score, 1);
  }
}

TEST(Detector, Iou) {
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {0, 0, 10, 10}), 1.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {5, 0, 10, 10}), 50.0 / 150);
  EXPECT_DOUBLE_EQ(iou({0, 0, 2, 2}, {5, 5, 2, 2}), 0.0);
}

TEST(DemosaicForDetection, ConstantAndFullScale) {
  RawImage raw(6, 6, 10, CfaPattern::RGGB);
  std::fill(raw.data.begin(), raw.data.end(), 1023);
  RgbImage out = demosaic_for_detection(raw);
  for (uint8_t v : out.data) EXPECT_EQ(v, 255);
  std::fill(raw.data.begin(), raw.data.end(), 300);
  out = demosaic_for_detection(raw);
  for (uint8_t v : out.data) EXPECT_EQ(v, out.data[0]);
  EXPECT_EQ(out.data[0], static_cast<uint8_t>(std::lround(300 * 255.0 / 1023)));
  RawImage bl(4, 4, 10, CfaPattern::RGGB, 64);
  std::fill(bl.data.begin(), bl.data.end(), 64);
  for (uint8_t v : demosaic_for_detection(bl).data) EXPECT_EQ(v, 0);
}

TEST(DemosaicForDetection, PreAndPostIspAgreeOnCleanScene) {
  auto out = sim::run_pipeline(sc::stop_sign_scene(), sc::non_hdr_preset());
  auto post = naive_stop_sign_detect(out.post_isp);
  auto pre = naive_stop_sign_detect(demosaic_for_detection(out.pre_isp));
  ASSERT_FALSE(post.empty());
  ASSERT_FALSE(pre.empty());
  EXPECT_GE(iou(pre[0].box, post[0].box), 0.5);
}

TEST(UseCase, DetectedMissedDetected) {
  auto uc = wbtest::use_case();
  EXPECT_TRUE(uc.clean.sign_found);
  EXPECT_FALSE(uc.blinded.sign_found);
  EXPECT_TRUE(uc.blinded_hdr.sign_found);
  EXPECT_LT(uc.blinded_hdr.roi_saturation, uc.blinded.roi_saturation);
}

TEST(Json, Shape) {
  auto j = to_json({{"stop sign", 0.75, {1, 2, 3, 4}}});
  EXPECT_EQ(j.dump(), R"([{"box":{"h":4,"w":3,"x":1,"y":2},"label":"stop sign","score":0.75}])");
}
