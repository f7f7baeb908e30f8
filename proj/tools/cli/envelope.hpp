#pragma once

// The single structured output of every subcommand.

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace qpsh::cli {

inline constexpr const char* kSchemaId = "qpsh.envelope/1";

enum class Status { pass, fail, info };

struct Check {
  std::string name;
  Status status = Status::info;
  Json value;
  std::optional<double> tolerance;
  std::string detail;
};

struct ErrorInfo {
  std::string kind;
  std::string message;
  int exit_code = 2;
};

struct Envelope {
  Json config;
  std::vector<Check> checks;
  Json results = Json::object();
  std::optional<ErrorInfo> error;
  double wall_time_s = 0.0;

  bool all_pass() const;
  /// 0 all checks pass, 1 a check failed, otherwise the error's code.
  int exit_code() const;
  Json to_json() const;
};

Check pass_if(std::string name, bool ok, Json value, std::optional<double> tol = std::nullopt, std::string detail = "");
Check info(std::string name, Json value, std::string detail = "");

}  // namespace qpsh::cli
