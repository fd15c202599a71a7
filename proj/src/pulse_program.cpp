#include "stmas/pulse_program.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace stmas {

namespace {

constexpr std::array kHeaderOrder{"spin",     "larmor_hz", "nuq_hz", "spin_rate_hz", "sw_f2_hz",
                                  "sw_f1_hz", "td_f2",     "td_f1",  "ref_hz"};
constexpr std::array kRequiredHeaders{"spin",     "larmor_hz", "nuq_hz", "sw_f2_hz",
                                      "sw_f1_hz", "td_f2",     "td_f1"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// U+2212 MINUS SIGN is accepted wherever '-' is.
std::string normalize_minus(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.compare(i, 3, "\xE2\x88\x92") == 0) {
      out.push_back('-');
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+')
    s.remove_prefix(1);
  if (s.empty())
    return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value))
    return std::nullopt;
  return value;
}

std::optional<int> to_int(std::string_view s) {
  if (!s.empty() && s.front() == '+')
    s.remove_prefix(1);
  if (s.empty())
    return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    return std::nullopt;
  return value;
}

// Whitespace split that keeps parenthesized groups together.
std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (char c : line) {
    if (c == '(')
      ++depth;
    if (c == ')')
      --depth;
    if ((c == ' ' || c == '\t') && depth <= 0) {
      if (!current.empty())
        out.push_back(std::move(current));
      current.clear();
      continue;
    }
    current.push_back(c);
  }
  if (!current.empty())
    out.push_back(std::move(current));
  return out;
}

std::optional<std::vector<int>> parse_int_tuple(std::string_view s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    return std::nullopt;
  s = s.substr(1, s.size() - 2);
  std::vector<int> out;
  while (true) {
    const auto comma = s.find(',');
    auto value = to_int(trim(s.substr(0, comma)));
    if (!value)
      return std::nullopt;
    out.push_back(*value);
    if (comma == std::string_view::npos)
      break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

struct Attributes {
  std::map<std::string, std::string, std::less<>> values;
};

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParseResult run() {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      const auto nl = text_.find('\n', pos);
      const auto end = nl == std::string_view::npos ? text_.size() : nl;
      ++line_no;
      line(line_no, text_.substr(pos, end - pos));
      if (nl == std::string_view::npos)
        break;
      pos = nl + 1;
    }
    finish();
    ParseResult result;
    result.issues = std::move(issues_);
    if (result.issues.empty())
      result.program = std::move(prog_);
    return result;
  }

private:
  void issue(int line, IssueKind kind, std::string message) {
    issues_.push_back({line, kind, std::move(message)});
  }

  void line(int no, std::string_view raw) {
    const std::string normalized = normalize_minus(raw);
    std::string_view content = normalized;
    if (const auto hash = content.find('#'); hash != std::string_view::npos)
      content = content.substr(0, hash);
    content = trim(content);
    if (content.empty())
      return;

    if (const auto eq = content.find('='); eq != std::string_view::npos) {
      const auto key = trim(content.substr(0, eq));
      if (key.find_first_of(" \t") == std::string_view::npos) {
        header(no, std::string(key), trim(content.substr(eq + 1)));
        return;
      }
    }

    const auto tokens = tokenize(content);
    const std::string &keyword = tokens.front();
    if (keyword == "pulse")
      pulse(no, tokens);
    else if (keyword == "acquire")
      acquire(no, tokens);
    else if (keyword == "route")
      route(no, tokens);
    else
      issue(no, IssueKind::syntax, "unrecognized statement '" + keyword + "'");
  }

  void header(int no, const std::string &key, std::string_view value) {
    bool known = false;
    for (const char *k : kHeaderOrder)
      known = known || key == k;
    if (!known) {
      issue(no, IssueKind::syntax, "unknown key '" + key + "'");
      return;
    }
    if (!seen_headers_.emplace(key, no).second) {
      issue(no, IssueKind::duplicate, "key '" + key + "' already set on line " +
                                          std::to_string(seen_headers_[key]));
      return;
    }

    if (key == "spin") {
      auto s = parse_half_int(value);
      if (!s) {
        issue(no, IssueKind::syntax, "spin must be written like 5/2, got '" + std::string(value) + "'");
        spin_ok_ = false;
      } else if (!is_half_integer_quadrupolar(*s)) {
        issue(no, IssueKind::range, "spin " + to_string(*s) + " is not a half-integer >= 3/2");
        spin_ok_ = false;
      } else {
        prog_.spin = *s;
        spin_line_ = no;
      }
      return;
    }

    if (key == "td_f2" || key == "td_f1") {
      auto v = to_int(value);
      if (!v) {
        issue(no, IssueKind::syntax, key + " must be an integer");
        return;
      }
      if (*v < 2)
        issue(no, IssueKind::range, key + " must be at least 2");
      (key == "td_f2" ? prog_.acquisition.td_f2 : prog_.acquisition.td_f1) = *v;
      return;
    }

    auto v = to_double(value);
    if (!v) {
      issue(no, IssueKind::syntax, key + " must be a number in Hz, got '" + std::string(value) + "'");
      return;
    }
    if (key == "larmor_hz") {
      if (*v <= 0.0)
        issue(no, IssueKind::range, "larmor_hz must be positive");
      prog_.larmor_hz = *v;
    } else if (key == "nuq_hz") {
      if (*v < 0.0)
        issue(no, IssueKind::range, "nuq_hz must be non-negative");
      prog_.nuq_hz = *v;
    } else if (key == "spin_rate_hz") {
      if (*v < 0.0)
        issue(no, IssueKind::range, "spin_rate_hz must be non-negative");
      prog_.acquisition.spin_rate_hz = *v;
    } else if (key == "sw_f2_hz" || key == "sw_f1_hz") {
      if (*v <= 0.0)
        issue(no, IssueKind::range, key + " must be positive");
      (key == "sw_f2_hz" ? prog_.acquisition.sw_f2_hz : prog_.acquisition.sw_f1_hz) = *v;
    } else if (key == "ref_hz") {
      if (*v <= 0.0)
        issue(no, IssueKind::range, "ref_hz must be positive");
      prog_.acquisition.ref_hz = *v;
    }
  }

  // Splits `key=value` tokens after the leading keyword (and name, if any).
  std::optional<Attributes> attributes(int no, const std::vector<std::string> &tokens,
                                       std::size_t first,
                                       std::initializer_list<std::string_view> allowed) {
    Attributes attrs;
    bool ok = true;
    for (std::size_t i = first; i < tokens.size(); ++i) {
      const auto eq = tokens[i].find('=');
      if (eq == std::string::npos || eq == 0) {
        issue(no, IssueKind::syntax, "expected key=value, got '" + tokens[i] + "'");
        ok = false;
        continue;
      }
      std::string key = tokens[i].substr(0, eq);
      bool known = false;
      for (auto a : allowed)
        known = known || key == a;
      if (!known) {
        issue(no, IssueKind::syntax, "unknown attribute '" + key + "'");
        ok = false;
        continue;
      }
      if (!attrs.values.emplace(key, tokens[i].substr(eq + 1)).second) {
        issue(no, IssueKind::duplicate, "attribute '" + key + "' given twice");
        ok = false;
      }
    }
    for (auto a : allowed) {
      if (!attrs.values.contains(a)) {
        issue(no, IssueKind::missing, "missing attribute '" + std::string(a) + "'");
        ok = false;
      }
    }
    if (!ok)
      return std::nullopt;
    return attrs;
  }

  void pulse(int no, const std::vector<std::string> &tokens) {
    if (tokens.size() < 2 || tokens[1].find('=') != std::string::npos) {
      issue(no, IssueKind::syntax, "pulse needs an id: pulse <id> n_phases=<int> dp=<int>");
      return;
    }
    const std::string &id = tokens[1];
    auto attrs = attributes(no, tokens, 2, {"n_phases", "dp"});
    if (!attrs)
      return;
    auto n = to_int(attrs->values["n_phases"]);
    auto dp = to_int(attrs->values["dp"]);
    if (!n)
      issue(no, IssueKind::syntax, "n_phases must be an integer");
    else if (*n < 1)
      issue(no, IssueKind::range, "n_phases must be at least 1");
    if (!dp)
      issue(no, IssueKind::syntax, "dp must be an integer");
    if (!n || !dp || *n < 1)
      return;
    if (!pulse_ids_.emplace(id, no).second) {
      issue(no, IssueKind::duplicate, "pulse '" + id + "' already declared on line " +
                                          std::to_string(pulse_ids_[id]));
      return;
    }
    prog_.cycle.pulses.push_back({id, *n, *dp});
  }

  void acquire(int no, const std::vector<std::string> &tokens) {
    if (acquire_line_) {
      issue(no, IssueKind::duplicate, "acquire already given on line " + std::to_string(acquire_line_));
      return;
    }
    auto attrs = attributes(no, tokens, 1, {"order"});
    if (!attrs)
      return;
    auto order = to_int(attrs->values["order"]);
    if (!order) {
      issue(no, IssueKind::syntax, "order must be an integer");
      return;
    }
    prog_.cycle.acquisition_order = *order;
    acquire_line_ = no;
  }

  void route(int no, const std::vector<std::string> &tokens) {
    if (tokens.size() < 2 || tokens[1].find('=') != std::string::npos) {
      issue(no, IssueKind::syntax, "route needs a name: route <name> dp=(...) t1_branch=<CT|STk> amp=<x>");
      return;
    }
    const std::string &name = tokens[1];
    auto attrs = attributes(no, tokens, 2, {"dp", "t1_branch", "amp"});
    if (!attrs)
      return;
    bool ok = true;
    auto dp = parse_int_tuple(attrs->values["dp"]);
    if (!dp) {
      issue(no, IssueKind::syntax, "route '" + name + "': dp must look like (+1,-1,0)");
      ok = false;
    }
    auto branch = parse_transition_label(attrs->values["t1_branch"]);
    if (!branch) {
      issue(no, IssueKind::syntax, "route '" + name + "': t1_branch must be CT or STk");
      ok = false;
    }
    auto amp = to_double(attrs->values["amp"]);
    if (!amp) {
      issue(no, IssueKind::syntax, "route '" + name + "': amp must be a number");
      ok = false;
    } else if (std::abs(*amp) > 1.0) {
      issue(no, IssueKind::range, "route '" + name + "': |amp| must not exceed 1");
      ok = false;
    }
    if (!ok)
      return;
    if (!route_names_.emplace(name, no).second) {
      issue(no, IssueKind::duplicate, "route '" + name + "' already declared on line " +
                                          std::to_string(route_names_[name]));
      return;
    }
    prog_.routes.push_back({name, *dp, *branch, *amp});
    route_lines_.push_back(no);
  }

  // Checks that need the whole file.
  void finish() {
    for (const char *key : kRequiredHeaders)
      if (!seen_headers_.contains(key))
        issue(1, IssueKind::missing, std::string("missing: ") + key);
    if (prog_.cycle.pulses.empty())
      issue(1, IssueKind::missing, "missing: pulse");
    if (!acquire_line_)
      issue(1, IssueKind::missing, "missing: acquire");

    if (!seen_headers_.contains("ref_hz"))
      prog_.acquisition.ref_hz = prog_.larmor_hz;

    const bool spin_known = spin_ok_ && spin_line_ != 0;
    const int max_order = prog_.spin.twice;
    if (acquire_line_ && spin_known && std::abs(prog_.cycle.acquisition_order) > max_order)
      issue(acquire_line_, IssueKind::range,
            "acquisition order " + std::to_string(prog_.cycle.acquisition_order) +
                " exceeds the maximum coherence order " + std::to_string(max_order));

    for (std::size_t r = 0; r < prog_.routes.size(); ++r) {
      const Route &route = prog_.routes[r];
      const int no = route_lines_[r];
      if (route.dp.size() != prog_.cycle.pulses.size()) {
        issue(no, IssueKind::range,
              "route '" + route.name + "' has " + std::to_string(route.dp.size()) +
                  " dp entries but " + std::to_string(prog_.cycle.pulses.size()) +
                  " pulses are declared");
        continue;
      }
      if (!spin_known)
        continue;
      if (!label_exists(prog_.spin, route.t1_branch))
        issue(no, IssueKind::range,
              "route '" + route.name + "': " + to_string(route.t1_branch) +
                  " does not exist for spin " + to_string(prog_.spin));
      if (!within_bounds(route.dp, max_order))
        issue(no, IssueKind::range,
              "route '" + route.name + "' leaves the coherence range [-" +
                  std::to_string(max_order) + ", " + std::to_string(max_order) + "]");
      else if (acquire_line_ && final_order(route.dp) != prog_.cycle.acquisition_order)
        issue(no, IssueKind::range,
              "route '" + route.name + "' ends at order " + std::to_string(final_order(route.dp)) +
                  ", not the acquisition order");
    }
  }

  std::string_view text_;
  PulseProgram prog_;
  std::vector<ParseIssue> issues_;
  std::map<std::string, int, std::less<>> seen_headers_;
  std::map<std::string, int, std::less<>> pulse_ids_;
  std::map<std::string, int, std::less<>> route_names_;
  std::vector<int> route_lines_;
  int acquire_line_ = 0;
  int spin_line_ = 0;
  bool spin_ok_ = true;
};

std::string signed_int(int v) { return v > 0 ? "+" + std::to_string(v) : std::to_string(v); }

} // namespace

std::string to_string(IssueKind kind) {
  switch (kind) {
  case IssueKind::syntax:
    return "syntax";
  case IssueKind::duplicate:
    return "duplicate";
  case IssueKind::range:
    return "range";
  case IssueKind::missing:
    return "missing";
  }
  return "syntax";
}

std::string format_issue(const ParseIssue &issue) {
  return "line " + std::to_string(issue.line) + ": " + to_string(issue.kind) + ": " + issue.message;
}

ParseResult parse_program(std::string_view text) { return Parser(text).run(); }

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  (void)ec;
  return std::string(buf.data(), ptr);
}

std::string render_program(const PulseProgram &prog) {
  std::ostringstream out;
  const auto &acq = prog.acquisition;
  out << "spin = " << to_string(prog.spin) << '\n'
      << "larmor_hz = " << format_double(prog.larmor_hz) << '\n'
      << "nuq_hz = " << format_double(prog.nuq_hz) << '\n'
      << "spin_rate_hz = " << format_double(acq.spin_rate_hz) << '\n'
      << "sw_f2_hz = " << format_double(acq.sw_f2_hz) << '\n'
      << "sw_f1_hz = " << format_double(acq.sw_f1_hz) << '\n'
      << "td_f2 = " << acq.td_f2 << '\n'
      << "td_f1 = " << acq.td_f1 << '\n'
      << "ref_hz = " << format_double(acq.ref_hz) << '\n';
  for (const auto &p : prog.cycle.pulses)
    out << "pulse " << p.id << " n_phases=" << p.n_phases << " dp=" << signed_int(p.dp_desired)
        << '\n';
  out << "acquire order=" << prog.cycle.acquisition_order << '\n';
  for (const auto &r : prog.routes) {
    out << "route " << r.name << " dp=(";
    for (std::size_t i = 0; i < r.dp.size(); ++i)
      out << (i ? "," : "") << signed_int(r.dp[i]);
    out << ") t1_branch=" << to_string(r.t1_branch) << " amp=" << format_double(r.amplitude) << '\n';
  }
  return out.str();
}

} // namespace stmas
