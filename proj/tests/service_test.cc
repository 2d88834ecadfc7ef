#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <thread>

#include "httplib.h"
#include "support.h"
#include "workbench/image_io.h"
#include "workbench/service/service.h"
#include "workbench/sim/scenes.h"

using nlohmann::json;
namespace sc = wb::sim::scenes;

namespace {

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    data_dir_ = wbtest::temp_dir("service_data");
    svc_ = std::make_unique<wb::service::Service>(wb::service::Options{
        data_dir_.string(), std::string(WB_SOURCE_DIR) + "/catalog/threats.json", ""});
    svc_->install(server_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    client_->set_read_timeout(60, 0);
  }

  void TearDown() override {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  json body(const httplib::Result& r) { return json::parse(r->body); }

  std::string new_session(const json& req = json::object()) {
    auto r = client_->Post("/sessions", req.dump(), "application/json");
    EXPECT_EQ(r->status, 201);
    return body(r).at("id");
  }

  httplib::Result put_config(const std::string& id, const json& req) {
    return client_->Put("/sessions/" + id + "/config", req.dump(), "application/json");
  }

  std::filesystem::path data_dir_;
  std::unique_ptr<wb::service::Service> svc_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

}  // namespace

TEST_F(ServiceTest, SessionLifecycleAndRevisions) {
  auto r = client_->Post("/sessions", "{}", "application/json");
  ASSERT_EQ(r->status, 201);
  json j = body(r);
  EXPECT_EQ(j["id"], "s1");
  EXPECT_EQ(j["revision"], 1);
  EXPECT_EQ(r->get_header_value("X-Config-Revision"), "1");
  EXPECT_EQ(new_session(), "s2");

  r = client_->Get("/sessions/s1/config");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["config"], wb::sim::to_json(sc::non_hdr_preset()));

  r = put_config("s1", {{"revision", 1}, {"config", {{"tone_gamma", 1.8}}}});
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["revision"], 2);
  EXPECT_EQ(body(r)["config"]["tone_gamma"], 1.8);

  // stale revision: rejected, nothing applied
  r = put_config("s1", {{"revision", 1}, {"config", {{"tone_gamma", 3.0}}}});
  EXPECT_EQ(r->status, 409);
  EXPECT_EQ(body(r)["field"], "revision");
  r = client_->Get("/sessions/s1/config");
  EXPECT_EQ(body(r)["revision"], 2);
  EXPECT_EQ(body(r)["config"]["tone_gamma"], 1.8);

  // If-Match carries the revision too
  httplib::Headers hdr{{"If-Match", "1"}};
  r = client_->Put("/sessions/s1/config", hdr, json{{"analog_gain", 2}}.dump(), "application/json");
  EXPECT_EQ(r->status, 409);
  hdr = {{"If-Match", "2"}};
  r = client_->Put("/sessions/s1/config", hdr, json{{"analog_gain", 2}}.dump(), "application/json");
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["revision"], 3);
}

TEST_F(ServiceTest, ValidationErrorsNameTheField) {
  std::string id = new_session();
  auto r = put_config(id, {{"revision", 1}, {"config", {{"bit_depth", 40}}}});
  ASSERT_EQ(r->status, 400);
  EXPECT_EQ(body(r)["field"], "config.bit_depth");
  r = put_config(id, {{"config", {{"hdr", {{"kind", "bracketed"}, {"n_exposures", 1}, {"exposure_ratio", 4}}}}}});
  ASSERT_EQ(r->status, 400);
  EXPECT_EQ(body(r)["field"].get<std::string>().rfind("config.hdr", 0), 0u);
  r = client_->Put("/sessions/" + id + "/config", "{nope", "application/json");
  EXPECT_EQ(r->status, 400);
  r = client_->Get("/sessions/" + id + "/config");
  EXPECT_EQ(body(r)["revision"], 1);  // failed PUTs leave no trace

  r = client_->Post("/sessions", json{{"config", {{"exposure_time", -1}}}}.dump(), "application/json");
  EXPECT_EQ(r->status, 400);
  EXPECT_EQ(body(r)["field"], "config.exposure_time");
}

TEST_F(ServiceTest, NotFound) {
  EXPECT_EQ(client_->Get("/sessions/s9/config")->status, 404);
  std::string id = new_session();
  EXPECT_EQ(client_->Get("/sessions/" + id + "/measurements/0")->status, 404);
  EXPECT_EQ(client_->Get("/sessions/" + id + "/detections?m=0")->status, 404);
  EXPECT_EQ(client_->Get("/sessions/" + id + "/analysis?a=0&b=0")->status, 404);
  EXPECT_EQ(client_->Get("/sessions/" + id + "/detections")->status, 400);
}

TEST_F(ServiceTest, PreviewEchoesConfigAtHalfResolution) {
  std::string id = new_session();
  ASSERT_EQ(put_config(id, {{"revision", 1}, {"config", {{"tone_gamma", 2.2}}}})->status, 200);
  auto r = client_->Get("/sessions/" + id + "/preview");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(json::parse(r->get_header_value("X-Config-Echo"))["tone_gamma"], 2.2);
  EXPECT_EQ(r->get_header_value("X-Config-Revision"), "2");
  wb::RgbImage img = wb::decode_ppm(r->body);
  EXPECT_EQ(img.width, sc::kWidth / 2);
  EXPECT_EQ(img.height, sc::kHeight / 2);
}

TEST_F(ServiceTest, MeasurementsAreDeterministicAndPreviewDoesNotLog) {
  std::string id = new_session();
  auto m0 = client_->Post("/sessions/" + id + "/measure", "", "application/json");
  ASSERT_EQ(m0->status, 201);
  ASSERT_EQ(client_->Get("/sessions/" + id + "/preview")->status, 200);
  ASSERT_EQ(client_->Get("/sessions/" + id + "/preview")->status, 200);
  auto m1 = client_->Post("/sessions/" + id + "/measure", "", "application/json");
  ASSERT_EQ(m1->status, 201);
  EXPECT_EQ(body(m1)["measurement"]["n"], 1);  // previews in between added nothing
  EXPECT_EQ(client_->Get("/sessions/" + id + "/measurements/2")->status, 404);

  for (const char* kind : {"pre", "post"}) {
    auto a = client_->Get("/sessions/" + id + "/measurements/0?image=" + kind);
    auto b = client_->Get("/sessions/" + id + "/measurements/1?image=" + kind);
    ASSERT_EQ(a->status, 200);
    EXPECT_EQ(a->body, b->body) << kind;
  }
  auto meta = body(client_->Get("/sessions/" + id + "/measurements/0"));
  EXPECT_EQ(meta["config_revision"], 1);
  EXPECT_EQ(meta["pre_isp"]["bit_depth"], 10);
  EXPECT_TRUE(std::filesystem::exists(meta["files"]["pre_isp"].get<std::string>()));
  EXPECT_TRUE(std::filesystem::exists(data_dir_ / id / "log.jsonl"));
  EXPECT_EQ(client_->Get("/sessions/" + id + "/measurements/0?image=raw")->status, 400);
}

TEST_F(ServiceTest, ReplayOnFreshSessionMatches) {
  auto script = [&](const std::string& id) {
    put_config(id, {{"config", {{"readout_order", {{"kind", "randomized"}, {"seed", 5}}}}}});
    client_->Put("/sessions/" + id + "/attack", wb::attack::to_json(wb::attack::stop_sign_laser()).dump(),
                 "application/json");
    client_->Post("/sessions/" + id + "/measure", "", "application/json");
    return client_->Get("/sessions/" + id + "/measurements/0?image=pre")->body;
  };
  std::string a = script(new_session()), b = script(new_session());
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, b);
}

TEST_F(ServiceTest, AttackAnalysisAndDetections) {
  std::string id = new_session();
  ASSERT_EQ(client_->Post("/sessions/" + id + "/measure", "", "application/json")->status, 201);
  auto r = client_->Put("/sessions/" + id + "/attack",
                        wb::attack::to_json(wb::attack::stop_sign_laser()).dump(), "application/json");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["attack"]["variant"], "Blinding");
  ASSERT_EQ(client_->Post("/sessions/" + id + "/measure", "", "application/json")->status, 201);

  r = client_->Put("/sessions/" + id + "/attack", json{{"variant", "Blinding"}, {"center", {-1, 0}},
                                                       {"radius", 1}, {"intensity", 1}}.dump(),
                   "application/json");
  EXPECT_EQ(r->status, 400);

  auto roi = sc::stop_sign_roi();
  std::string q = "/sessions/" + id + "/analysis?a=1&b=0&signed=1&roi=" + std::to_string(roi.x) + "," +
                  std::to_string(roi.y) + "," + std::to_string(roi.w) + "," + std::to_string(roi.h);
  r = client_->Get(q);
  ASSERT_EQ(r->status, 200);
  json j = body(r);
  ASSERT_EQ(j["entries"].size(), 3u);
  EXPECT_EQ(j["entries"][2]["name"], "diff");
  const json& hist = j["entries"][0]["histograms"][0];
  uint64_t mass = 0;
  for (auto c : hist["counts"]) mass += c.get<uint64_t>();
  EXPECT_EQ(mass, uint64_t(roi.w) * roi.h);
  EXPECT_GT(j["entries"][2]["stats"][0]["mean"].get<double>(), 0);  // laser adds red
  EXPECT_EQ(client_->Get("/sessions/" + id + "/analysis?a=0&b=1&roi=1,2")->status, 400);

  auto clean = body(client_->Get("/sessions/" + id + "/detections?m=0"));
  auto blinded = body(client_->Get("/sessions/" + id + "/detections?m=1"));
  EXPECT_FALSE(clean["detections"].empty());
  EXPECT_TRUE(blinded["detections"].empty());
  auto pre = body(client_->Get("/sessions/" + id + "/detections?m=0&pre=1"));
  EXPECT_TRUE(pre["pre_isp"].get<bool>());
  EXPECT_FALSE(pre["detections"].empty());

  // clearing the attack
  r = client_->Put("/sessions/" + id + "/attack", "", "application/json");
  EXPECT_TRUE(body(r)["attack"].is_null());
}

TEST_F(ServiceTest, RiskEndpoints) {
  auto r = client_->Get("/risk/catalog");
  ASSERT_EQ(r->status, 200);
  json j = body(r);
  EXPECT_EQ(j["total"], 38);
  EXPECT_EQ(j["matched"], 38);
  for (const auto& row : j["records"]) EXPECT_TRUE(row["matches"].get<bool>()) << row.dump();

  r = client_->Get("/risk/matrix");
  ASSERT_EQ(r->status, 200);
  j = body(r);
  EXPECT_EQ(j["impact"][1], "Moderate");
  EXPECT_EQ(j["feasibility"][3], "High");
  EXPECT_EQ(j["matrix"][1][3], 3);
  EXPECT_EQ(j["matrix"][3][1], 3);
  EXPECT_EQ(j["matrix"][3][3], 5);
  EXPECT_EQ(j["matrix"][0][0], 1);
}

TEST_F(ServiceTest, ConcurrentPutsSerialise) {
  std::string id = new_session();
  // every writer claims revision 1; exactly one may win
  std::vector<std::thread> ts;
  std::atomic<int> ok{0}, conflict{0};
  for (int i = 0; i < 6; ++i)
    ts.emplace_back([&, i] {
      httplib::Client c("127.0.0.1", port_);
      auto r = c.Put("/sessions/" + id + "/config",
                     json{{"revision", 1}, {"config", {{"analog_gain", 1.0 + i}}}}.dump(), "application/json");
      (r && r->status == 200 ? ok : conflict)++;
    });
  for (auto& t : ts) t.join();
  EXPECT_EQ(ok.load(), 1);
  EXPECT_EQ(conflict.load(), 5);
  EXPECT_EQ(body(client_->Get("/sessions/" + id + "/config"))["revision"], 2);
}
