#pragma once

#include "stmas/coherence.hpp"
#include "stmas/spin.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stmas {

struct AcquisitionParams {
  double sw_f2_hz = 100e3;
  double sw_f1_hz = 10e3;
  int td_f2 = 1024;
  int td_f1 = 128;
  double ref_hz = 0.0;
  double spin_rate_hz = 0.0;

  friend bool operator==(const AcquisitionParams &, const AcquisitionParams &) = default;
};

/// A modeled pathway with the transition that evolves during t1.
struct Route {
  std::string name;
  std::vector<int> dp;
  TransitionLabel t1_branch;
  double amplitude = 1.0;

  friend bool operator==(const Route &, const Route &) = default;
};

struct PulseProgram {
  HalfInt spin{5};
  double larmor_hz = 0.0;
  double nuq_hz = 0.0;
  AcquisitionParams acquisition;
  CycleSpec cycle;
  std::vector<Route> routes;

  SpinSystem system() const { return build_spin_system(spin, larmor_hz, nuq_hz); }

  friend bool operator==(const PulseProgram &, const PulseProgram &) = default;
};

enum class IssueKind { syntax, duplicate, range, missing };

struct ParseIssue {
  int line = 1;
  IssueKind kind = IssueKind::syntax;
  std::string message;
};

std::string to_string(IssueKind kind);
/// "line 3: range: ..."
std::string format_issue(const ParseIssue &issue);

struct ParseResult {
  std::optional<PulseProgram> program;
  std::vector<ParseIssue> issues;

  bool ok() const { return program.has_value(); }
};

/// Parses the line-oriented `.pp` format. Never throws on malformed text;
/// every problem found is reported with its 1-based line.
ParseResult parse_program(std::string_view text);

/// Canonical text: headers in fixed order, then pulses, acquire, routes.
/// Numbers use the shortest representation that round-trips.
std::string render_program(const PulseProgram &prog);

/// Shortest round-trip text of a double.
std::string format_double(double value);

} // namespace stmas
