#include "envelope.hpp"

#include "qpsh/version.hpp"

namespace qpsh::cli {

namespace {

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::info: return "info";
  }
  return "info";
}

}  // namespace

bool Envelope::all_pass() const {
  for (const auto& c : checks)
    if (c.status == Status::fail) return false;
  return !error;
}

int Envelope::exit_code() const {
  if (error) return error->exit_code;
  return all_pass() ? 0 : 1;
}

Json Envelope::to_json() const {
  Json j;
  j["schema"] = kSchemaId;
  j["library"] = {{"name", "qpsh"}, {"version", kVersion}};
  j["status"] = error ? "error" : all_pass() ? "pass" : "fail";
  j["exit_code"] = exit_code();
  j["seed"] = config.contains("seed") ? config["seed"] : Json(nullptr);
  j["threads"] = config.contains("threads") ? config["threads"] : Json(1);
  j["config"] = config;
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json o;
    o["name"] = c.name;
    o["status"] = status_name(c.status);
    o["value"] = c.value;
    o["tolerance"] = c.tolerance ? Json(*c.tolerance) : Json(nullptr);
    o["detail"] = c.detail;
    cs.push_back(std::move(o));
  }
  j["checks"] = std::move(cs);
  j["results"] = results;
  j["error"] = error ? Json{{"kind", error->kind}, {"message", error->message}} : Json(nullptr);
  j["wall_time_s"] = wall_time_s;
  return j;
}

Check pass_if(std::string name, bool ok, Json value, std::optional<double> tol, std::string detail) {
  return {std::move(name), ok ? Status::pass : Status::fail, std::move(value), tol, std::move(detail)};
}

Check info(std::string name, Json value, std::string detail) {
  return {std::move(name), Status::info, std::move(value), std::nullopt, std::move(detail)};
}

}  // namespace qpsh::cli
