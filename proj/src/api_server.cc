// Copyright 2026 The reqsmell Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <exception>
#include <sstream>

#include "httplib.h"
#include "reqsmell/reviewsvc.h"

namespace reqsmell::review {
namespace {

using nlohmann::json;

constexpr const char *kJsonType = "application/json";

void SendJson(httplib::Response &res, int status, const json &body) {
  res.status = status;
  res.set_content(body.dump(), kJsonType);
}

void SendError(httplib::Response &res, int status, std::string_view code,
               const std::string &message) {
  SendJson(res, status, {{"code", code}, {"message", message}});
}

struct BadQuery {
  std::string message;
};

bool ParseBoolParam(const httplib::Request &req, const char *name) {
  if (!req.has_param(name)) return false;
  std::string v = req.get_param_value(name);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw BadQuery{std::string("'") + name + "' must be true, false, 1 or 0"};
}

ListingFilter ParseListingFilter(const httplib::Request &req) {
  ListingFilter filter;
  filter.include_rejected = ParseBoolParam(req, "include_rejected");
  filter.include_suppressed = ParseBoolParam(req, "include_suppressed");
  if (req.has_param("smells")) {
    std::stringstream ss(req.get_param_value("smells"));
    std::string name;
    while (std::getline(ss, name, ',')) {
      std::string_view trimmed = Trim(name);
      if (trimmed.empty()) continue;
      auto smell = smells::ParseSmell(trimmed);
      if (!smell) throw BadQuery{"unknown smell '" + std::string(trimmed) + "'"};
      filter.smells.insert(*smell);
    }
  }
  return filter;
}

json ReviewJson(const std::optional<ReviewRecord> &r) {
  return r ? ToJson(*r) : json(nullptr);
}

}  // namespace

class ApiServer::Impl {
 public:
  Impl(RunRepository &repository, ServerOptions options)
      : repository_(repository), options_(std::move(options)) {
    Routes();
  }

  int Bind() {
    int port = options_.port;
    if (port == 0) {
      port = server_.bind_to_any_port(options_.host);
      if (port < 0) port = 0;
    } else if (!server_.bind_to_port(options_.host, port)) {
      port = 0;
    }
    if (port == 0) {
      throw Error(ErrorCode::kIoError,
                  "cannot bind " + options_.host + ":" +
                      std::to_string(options_.port) + " (address in use?)");
    }
    return port;
  }

  void Listen() { server_.listen_after_bind(); }
  void Stop() { server_.stop(); }
  void WaitUntilReady() { server_.wait_until_ready(); }

 private:
  // Resolves the run of a request, or answers 404.
  Run *RunOf(const httplib::Request &req, httplib::Response &res) {
    const std::string run_id = req.matches[1];
    Run *run = repository_.Get(run_id);
    if (run == nullptr) SendError(res, 404, "not_found", "unknown run " + run_id);
    return run;
  }

  void Routes() {
    server_.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    if (options_.static_dir) {
      server_.set_mount_point("/", options_.static_dir->string());
    }
    if (options_.cors_origin) {
      server_.set_default_headers(
          {{"Access-Control-Allow-Origin", *options_.cors_origin},
           {"Access-Control-Allow-Methods", "GET, PUT, OPTIONS"},
           {"Access-Control-Allow-Headers", "Content-Type"}});
      server_.Options(R"(/api/v1/.*)",
                      [](const httplib::Request &, httplib::Response &res) {
                        res.status = 204;
                      });
    }
    server_.set_error_handler(
        [](const httplib::Request &req, httplib::Response &res) {
          if (res.body.empty()) {
            SendError(res, res.status, res.status == 404 ? "not_found" : "error",
                      "no route for " + req.method + " " + req.path);
          }
        });
    server_.set_exception_handler([](const httplib::Request &,
                                     httplib::Response &res,
                                     std::exception_ptr ep) {
      std::string message = "internal error";
      try {
        std::rethrow_exception(ep);
      } catch (const BadQuery &e) {
        SendError(res, 400, "bad_request", e.message);
        return;
      } catch (const std::exception &e) {
        message = e.what();
      } catch (...) {
      }
      SendError(res, 500, "internal", message);
    });

    server_.Get("/api/v1/runs", [this](const httplib::Request &,
                                       httplib::Response &res) {
      SendJson(res, 200, {{"runs", repository_.ListRuns()}});
    });
    server_.Get(R"(/api/v1/runs/([^/]+))",
                [this](const httplib::Request &req, httplib::Response &res) {
                  if (Run *run = RunOf(req, res)) SendJson(res, 200, run->header());
                });
    server_.Get(R"(/api/v1/runs/([^/]+)/artifacts)",
                [this](const httplib::Request &req, httplib::Response &res) {
                  Run *run = RunOf(req, res);
                  if (run == nullptr) return;
                  json out = json::array();
                  for (const auto &a : run->artifacts()) out.push_back(ToJson(a));
                  SendJson(res, 200, out);
                });
    server_.Get(R"(/api/v1/runs/([^/]+)/artifacts/(.+)/items)",
                [this](const httplib::Request &req, httplib::Response &res) {
                  Run *run = RunOf(req, res);
                  if (run == nullptr) return;
                  ListItems(*run, req, res);
                });
    server_.Get(R"(/api/v1/runs/([^/]+)/treemap)",
                [this](const httplib::Request &req, httplib::Response &res) {
                  Run *run = RunOf(req, res);
                  if (run == nullptr) return;
                  if (!req.has_param("smell")) {
                    SendJson(res, 200, ToJson(run->treemap()));
                    return;
                  }
                  auto smell = smells::ParseSmell(req.get_param_value("smell"));
                  if (!smell) {
                    SendError(res, 400, "bad_request",
                              "unknown smell '" + req.get_param_value("smell") +
                                  "'");
                    return;
                  }
                  SendJson(res, 200,
                           ToJson(metrics::TreemapForSmell(run->treemap(), *smell)));
                });
    server_.Get(R"(/api/v1/runs/([^/]+)/blacklist)",
                [this](const httplib::Request &req, httplib::Response &res) {
                  if (Run *run = RunOf(req, res)) {
                    SendJson(res, 200, {{"finding_ids", run->Blacklist()}});
                  }
                });
    server_.Get(R"(/api/v1/runs/([^/]+)/findings/([^/]+))",
                [this](const httplib::Request &req, httplib::Response &res) {
                  Run *run = RunOf(req, res);
                  if (run == nullptr) return;
                  const smells::Finding *f = run->FindFinding(req.matches[2].str());
                  if (f == nullptr) {
                    SendError(res, 404, "not_found",
                              "unknown finding " + req.matches[2].str());
                    return;
                  }
                  SendJson(res, 200,
                           {{"finding", smells::ToJson(*f)},
                            {"review", ReviewJson(run->Review(f->finding_id))},
                            {"improvement_hint", f->improvement_hint},
                            {"visible_by_default", run->Visible(*f, {})}});
                });
    server_.Put(R"(/api/v1/runs/([^/]+)/findings/([^/]+)/review)",
                [this](const httplib::Request &req, httplib::Response &res) {
                  Run *run = RunOf(req, res);
                  if (run == nullptr) return;
                  const std::string finding_id = req.matches[2];
                  if (run->FindFinding(finding_id) == nullptr) {
                    SendError(res, 404, "not_found", "unknown finding " + finding_id);
                    return;
                  }
                  json body = json::parse(req.body, nullptr, false);
                  if (body.is_discarded()) {
                    SendError(res, 422, "invalid_body", "body is not valid JSON");
                    return;
                  }
                  ReviewRecord record;
                  try {
                    record = ParseReviewBody(body, finding_id);
                  } catch (const Error &e) {
                    SendError(res, 422, "invalid_body", e.what());
                    return;
                  }
                  SendJson(res, 200, ToJson(run->PutReview(std::move(record))));
                });
  }

  void ListItems(const Run &run, const httplib::Request &req,
                 httplib::Response &res) {
    const std::string artifact_id = req.matches[2];
    if (!run.HasArtifact(artifact_id)) {
      SendError(res, 404, "not_found", "unknown artifact " + artifact_id);
      return;
    }
    ListingFilter filter = ParseListingFilter(req);
    json items = json::array();
    for (const StoredItem *item : run.ItemsOf(artifact_id)) {
      json j = ToJson(*item);
      json findings = json::array();
      for (const smells::Finding *f : run.FindingsOf(*item)) {
        if (!run.Visible(*f, filter)) continue;
        json fj = smells::ToJson(*f);
        fj["review"] = ReviewJson(run.Review(f->finding_id));
        findings.push_back(std::move(fj));
      }
      j["findings"] = std::move(findings);
      items.push_back(std::move(j));
    }
    SendJson(res, 200, {{"run_id", run.id()},
                        {"artifact_id", artifact_id},
                        {"items", std::move(items)}});
  }

  RunRepository &repository_;
  ServerOptions options_;
  httplib::Server server_;
};

ApiServer::ApiServer(RunRepository &repository, ServerOptions options)
    : impl_(std::make_unique<Impl>(repository, std::move(options))) {}

ApiServer::~ApiServer() = default;

int ApiServer::Bind() { return impl_->Bind(); }
void ApiServer::Listen() { impl_->Listen(); }
void ApiServer::Stop() { impl_->Stop(); }
void ApiServer::WaitUntilReady() { impl_->WaitUntilReady(); }

}  // namespace reqsmell::review
