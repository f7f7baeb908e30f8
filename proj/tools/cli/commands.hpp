#pragma once

#include "envelope.hpp"

namespace qpsh::cli {

/// Runs the configured subcommand and fills checks and results. Library
/// errors propagate as exceptions; run_cli maps them to exit codes.
void run_command(const ExperimentConfig& c, Envelope& env);

/// Suites of `verify`.
void run_suite(const ExperimentConfig& c, Envelope& env);

/// Parse, validate, run and serialize. Returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace qpsh::cli
