#include "workbench/service/service.h"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "httplib.h"
#include "workbench/analysis/analysis.h"
#include "workbench/detect/detector.h"
#include "workbench/errors.h"
#include "workbench/image_io.h"
#include "workbench/json_util.h"
#include "workbench/risk/catalog.h"
#include "workbench/sim/pipeline.h"
#include "workbench/sim/resize.h"
#include "workbench/sim/scenes.h"

namespace wb::service {

using nlohmann::json;

namespace {

struct HttpError {
  int status;
  json body;
};

[[noreturn]] void fail(int status, const std::string& msg, const std::string& field = "") {
  json b = {{"error", msg}};
  if (!field.empty()) b["field"] = field;
  throw HttpError{status, b};
}

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", "application/json");
}

// Maps exceptions to status codes so every handler reports errors the same way.
template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const HttpError& e) {
      send_json(res, e.body, e.status);
    } catch (const ParseError& e) {
      send_json(res, {{"error", e.what()}, {"field", e.where()}}, 400);
    } catch (const json::exception& e) {
      send_json(res, {{"error", e.what()}}, 400);
    } catch (const DomainError& e) {
      send_json(res, {{"error", e.what()}}, 400);
    } catch (const std::exception& e) {
      send_json(res, {{"error", e.what()}}, 500);
    }
  };
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    fail(400, std::string("malformed JSON body: ") + e.what(), "$");
  }
}

std::string utc_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json measurement_json(const Measurement& m) {
  json j = {{"n", m.n},
            {"timestamp", m.timestamp},
            {"config_revision", m.config_revision},
            {"config", m.config},
            {"attack", m.attack ? *m.attack : json(nullptr)},
            {"hdr_recovered", m.hdr_recovered},
            {"pre_isp", {{"width", m.pre_isp.width}, {"height", m.pre_isp.height},
                         {"bit_depth", m.pre_isp.bit_depth}, {"cfa", to_string(m.pre_isp.cfa)}}},
            {"post_isp", {{"width", m.post_isp.width}, {"height", m.post_isp.height}}}};
  if (!m.pre_path.empty()) j["files"] = {{"pre_isp", m.pre_path}, {"post_isp", m.post_path}};
  return j;
}

json entry_json(const analysis::Entry& e) {
  json stats = json::array(), hists = json::array();
  for (size_t c = 0; c < e.channels.size(); ++c) {
    const auto& s = e.stats[c];
    json js = {{"channel", e.channels[c]}, {"min", s.min}, {"max", s.max}, {"mean", s.mean}, {"std", s.std}};
    if (s.snr_reported) js["snr"] = s.snr ? json(*s.snr) : json("undefined");
    stats.push_back(js);
    hists.push_back({{"channel", e.channels[c]}, {"lo", e.histograms[c].lo}, {"counts", e.histograms[c].counts}});
  }
  return {{"name", e.name}, {"stats", stats}, {"histograms", hists}};
}

int parse_index(const std::string& s, const char* field) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size() || v < 0) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(400, std::string("expected a measurement index, got '") + s + "'", field);
  }
}

}  // namespace

Service::Service(Options opts) : opts_(std::move(opts)) {}

std::shared_ptr<Session> Service::find(const std::string& id) {
  std::lock_guard lock(store_mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) fail(404, "unknown session '" + id + "'");
  return it->second;
}

std::shared_ptr<Session> Service::create(const json& body) {
  if (!body.is_object()) fail(400, "expected a JSON object", "$");
  auto s = std::make_shared<Session>();
  s->scene = sim::scenes::stop_sign_scene();
  if (body.contains("scene")) {
    const json& sc = body["scene"];
    if (sc.is_string() && sc == "stop-sign") {
    } else if (sc.is_object() && sc.contains("path")) {
      s->scene = sim::load_scene(jsonu::str(sc["path"], "scene.path"));
    } else {
      fail(400, "scene must be \"stop-sign\" or {\"path\": ...}", "scene");
    }
  }
  s->config = sim::scenes::non_hdr_preset();
  if (body.contains("config")) {
    try {
      s->config = sim::merge_config(s->config, body["config"]);
    } catch (const ParseError& e) {
      fail(400, e.what(), "config." + e.where());
    }
  }
  std::lock_guard lock(store_mu_);
  s->id = "s" + std::to_string(next_id_++);
  sessions_[s->id] = s;
  return s;
}

void Service::install(httplib::Server& srv) {
  const std::string sid = R"(/sessions/([^/]+))";

  srv.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto s = create(parse_body(req));
    std::lock_guard lock(s->mu);
    res.set_header("X-Config-Revision", std::to_string(s->revision));
    send_json(res, {{"id", s->id}, {"revision", s->revision}, {"config", sim::to_json(s->config)}}, 201);
  }));

  srv.Get(sid + "/config", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto s = find(req.matches[1]);
    std::lock_guard lock(s->mu);
    res.set_header("X-Config-Revision", std::to_string(s->revision));
    send_json(res, {{"id", s->id}, {"revision", s->revision}, {"config", sim::to_json(s->config)}});
  }));

  srv.Put(sid + "/config", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto s = find(req.matches[1]);
    json body = parse_body(req);
    std::optional<int> expected;
    json patch = body;
    if (body.is_object() && body.contains("config")) {
      patch = body["config"];
      if (body.contains("revision")) expected = jsonu::integer(body["revision"], "revision");
    }
    if (req.has_header("If-Match")) expected = parse_index(req.get_header_value("If-Match"), "If-Match");
    std::lock_guard lock(s->mu);
    res.set_header("X-Config-Revision", std::to_string(s->revision));
    if (expected && *expected != s->revision)
      fail(409, "stale revision " + std::to_string(*expected) + ", current is " +
                    std::to_string(s->revision), "revision");
    sim::PipelineConfig next;
    try {
      next = sim::merge_config(s->config, patch);
    } catch (const ParseError& e) {
      fail(400, e.what(), "config." + e.where());
    }
    s->config = next;
    ++s->revision;
    res.set_header("X-Config-Revision", std::to_string(s->revision));
    send_json(res, {{"id", s->id}, {"revision", s->revision}, {"config", sim::to_json(s->config)}});
  }));

  srv.Put(sid + "/attack", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto s = find(req.matches[1]);
    json body = req.body.empty() ? json(nullptr) : parse_body(req);
    std::optional<attack::AttackSpec> spec;
    if (!body.is_null()) {
      spec = attack::attack_from_json(body);
      attack::apply_attack(s->scene, *spec);  // validates geometry and variant
    }
    std::lock_guard lock(s->mu);
    s->active_attack = spec;
    res.set_header("X-Config-Revision", std::to_string(s->revision));
    send_json(res, {{"id", s->id},
                    {"revision", s->revision},
                    {"attack", spec ? attack::to_json(*spec) : json(nullptr)}});
  }));

  srv.Get(sid + "/preview", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto s = find(req.matches[1]);
    std::lock_guard lock(s->mu);
    sim::TimeVaryingScene scene = s->active_attack ? attack::apply_attack(s->scene, *s->active_attack) : s->scene;
    RgbImage full = sim::run_pipeline(scene, s->config).post_isp;
    RgbImage half = sim::resize(full, std::max(full.width / 2, 1), std::max(full.height / 2, 1),
                                sim::ResizeMethod::Bilinear);
    s->last_preview = half;
    res.set_header("X-Config-Revision", std::to_string(s->revision));
    res.set_header("X-Config-Echo", sim::to_json(s->config).dump());
    res.set_content(encode_ppm(half), "image/x-portable-pixmap");
  }));

  srv.Post(sid + "/measure", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto s = find(req.matches[1]);
    std::lock_guard lock(s->mu);
    sim::TimeVaryingScene scene = s->active_attack ? attack::apply_attack(s->scene, *s->active_attack) : s->scene;
    sim::PipelineOutput out = sim::run_pipeline(scene, s->config);
    Measurement m;
    m.n = static_cast<int>(s->log.size());
    m.timestamp = utc_now();
    m.config_revision = s->revision;
    m.config = sim::to_json(s->config);
    if (s->active_attack) m.attack = attack::to_json(*s->active_attack);
    m.hdr_recovered = out.hdr_recovered;
    m.pre_isp = std::move(out.pre_isp);
    m.post_isp = std::move(out.post_isp);
    if (!opts_.data_dir.empty()) {
      auto dir = std::filesystem::path(opts_.data_dir) / s->id;
      std::filesystem::create_directories(dir);
      std::string stem = (dir / ("m" + std::to_string(m.n))).string();
      m.pre_path = stem + ".pre.pgm";
      m.post_path = stem + ".post.ppm";
      write_raw(m.pre_path, m.pre_isp, out.metadata);
      write_ppm(m.post_path, m.post_isp);
      json entry = measurement_json(m);
      std::ofstream(dir / "log.jsonl", std::ios::app) << entry.dump() << "\n";
    }
    s->log.push_back(std::move(m));
    res.set_header("X-Config-Revision", std::to_string(s->revision));
    send_json(res, {{"revision", s->revision}, {"measurement", measurement_json(s->log.back())}}, 201);
  }));

  srv.Get(sid + R"(/measurements/(\d+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto s = find(req.matches[1]);
    int n = parse_index(req.matches[2], "n");
    std::lock_guard lock(s->mu);
    res.set_header("X-Config-Revision", std::to_string(s->revision));
    if (n >= static_cast<int>(s->log.size())) fail(404, "unknown measurement " + std::to_string(n));
    const Measurement& m = s->log[n];
    std::string image = req.get_param_value("image");
    if (image == "post") {
      res.set_content(encode_ppm(m.post_isp), "image/x-portable-pixmap");
    } else if (image == "pre") {
      res.set_content(encode_pnm({m.pre_isp.width, m.pre_isp.height, 1, 65535, m.pre_isp.data}),
                      "image/x-portable-graymap");
    } else if (image.empty()) {
      json j = measurement_json(m);
      j["revision"] = s->revision;
      send_json(res, j);
    } else {
      fail(400, "image must be pre or post", "image");
    }
  }));

  srv.Get(sid + "/analysis", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto s = find(req.matches[1]);
    if (!req.has_param("a") || !req.has_param("b")) fail(400, "a and b are required", "a");
    int a = parse_index(req.get_param_value("a"), "a");
    int b = parse_index(req.get_param_value("b"), "b");
    std::optional<RoiRect> roi;
    if (req.has_param("roi")) roi = parse_roi(req.get_param_value("roi"));
    std::string image = req.has_param("image") ? req.get_param_value("image") : "post";
    if (image != "pre" && image != "post") fail(400, "image must be pre or post", "image");
    bool is_signed = req.get_param_value("signed") != "0" && req.get_param_value("signed") != "false";
    std::lock_guard lock(s->mu);
    res.set_header("X-Config-Revision", std::to_string(s->revision));
    const int count = static_cast<int>(s->log.size());
    if (a >= count) fail(404, "unknown measurement " + std::to_string(a));
    if (b >= count) fail(404, "unknown measurement " + std::to_string(b));
    auto load = [&](const Measurement& m) {
      return image == "pre" ? analysis::from_raw(m.pre_isp) : analysis::from_rgb(m.post_isp);
    };
    auto entries = analysis::compare(load(s->log[a]), load(s->log[b]),
                                     is_signed ? analysis::DiffMode::Signed : analysis::DiffMode::Absolute, roi);
    json arr = json::array();
    for (const auto& e : entries) arr.push_back(entry_json(e));
    send_json(res, {{"revision", s->revision}, {"a", a}, {"b", b}, {"image", image},
                    {"signed", is_signed}, {"entries", arr}});
  }));

  srv.Get(sid + "/detections", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto s = find(req.matches[1]);
    if (!req.has_param("m")) fail(400, "m is required", "m");
    int n = parse_index(req.get_param_value("m"), "m");
    bool pre = req.get_param_value("pre") == "1" || req.get_param_value("pre") == "true";
    std::lock_guard lock(s->mu);
    res.set_header("X-Config-Revision", std::to_string(s->revision));
    if (n >= static_cast<int>(s->log.size())) fail(404, "unknown measurement " + std::to_string(n));
    const Measurement& m = s->log[n];
    RgbImage img = pre ? detect::demosaic_for_detection(m.pre_isp) : m.post_isp;
    send_json(res, {{"revision", s->revision}, {"m", n}, {"pre_isp", pre},
                    {"detections", detect::to_json(detect::naive_stop_sign_detect(img))}});
  }));

  srv.Get("/risk/catalog", guarded([this](const httplib::Request&, httplib::Response& res) {
    if (opts_.catalog_path.empty()) fail(404, "no catalog configured");
    risk::Catalog cat = risk::load_catalog(opts_.catalog_path);
    json rows = json::array();
    size_t matched = 0;
    for (const auto& r : cat.records) {
      risk::EvaluatedRecord e = risk::evaluate(r);
      matched += e.matches;
      rows.push_back(risk::to_json(e));
    }
    send_json(res, {{"records", rows}, {"matched", matched}, {"total", cat.records.size()},
                    {"warnings", cat.warnings}});
  }));

  srv.Get("/risk/matrix", guarded([](const httplib::Request&, httplib::Response& res) {
    json rows = json::array();
    auto m = risk::risk_matrix();
    for (int i = 0; i < 4; ++i) rows.push_back(m[i]);
    send_json(res, {{"impact", {"Negligible", "Moderate", "Major", "Severe"}},
                    {"feasibility", {"VeryLow", "Low", "Medium", "High"}},
                    {"matrix", rows}});
  }));

  if (!opts_.ui_dir.empty()) srv.set_mount_point("/ui", opts_.ui_dir);
}

int serve(const Options& opts, const std::string& host, int port) {
  httplib::Server srv;
  Service svc(opts);
  svc.install(srv);
  if (port == 0) {
    port = srv.bind_to_any_port(host);
    if (port < 0) return 1;
    std::cout << "listening on " << host << ":" << port << std::endl;
    return srv.listen_after_bind() ? 0 : 1;
  }
  std::cout << "listening on " << host << ":" << port << std::endl;
  return srv.listen(host, port) ? 0 : 1;
}

}  // namespace wb::service
