#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "workbench/attack/attack.h"
#include "workbench/image.h"
#include "workbench/sim/config.h"
#include "workbench/sim/scene.h"

namespace httplib {
class Server;
}

namespace wb::service {

struct Options {
  std::string data_dir;      // empty: measurements stay in memory
  std::string catalog_path;  // threat catalog served under /risk
  std::string ui_dir;        // optional static bundle mounted at /ui
};

struct Measurement {
  int n = 0;
  std::string timestamp;
  int config_revision = 0;
  nlohmann::json config;
  std::optional<nlohmann::json> attack;
  RawImage pre_isp;
  RgbImage post_isp;
  std::string pre_path, post_path;
  size_t hdr_recovered = 0;
};

struct Session {
  std::string id;
  sim::TimeVaryingScene scene;
  sim::PipelineConfig config;
  int revision = 1;
  std::optional<attack::AttackSpec> active_attack;
  std::optional<RgbImage> last_preview;
  std::vector<Measurement> log;
  std::mutex mu;  // serialises everything touching this session
};

class Service {
 public:
  explicit Service(Options opts);
  void install(httplib::Server& server);

  std::shared_ptr<Session> find(const std::string& id);

 private:
  std::shared_ptr<Session> create(const nlohmann::json& body);

  Options opts_;
  std::mutex store_mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  int next_id_ = 1;
};

// Blocks until the server stops. Port 0 picks a free port.
int serve(const Options& opts, const std::string& host, int port);

}  // namespace wb::service
