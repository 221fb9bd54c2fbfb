/*
 * Copyright 2026 The noncoll Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "noncoll/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "noncoll/kernels.hpp"
#include "noncoll/matalg.hpp"
#include "noncoll/specfun.hpp"

namespace noncoll::cli {

using json = nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
    throw UsageError("not a finite decimal number: '" + text + "'");
  }
  return v;
}

namespace {

const char* command_name(Command c) {
  switch (c) {
    case Command::Eval: return "eval";
    case Command::Table: return "table";
    case Command::McCompare: return "mc-compare";
    case Command::Moments: return "moments";
    case Command::SelfTest: return "self-test";
  }
  return "?";
}

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::Ell: return "ell";
    case Axis::R: return "r";
    case Axis::H: return "h";
    case Axis::W: return "w";
  }
  return "?";
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item));
  if (out.empty()) throw UsageError("empty list");
  return out;
}

GridSpec parse_grid(const std::vector<std::string>& parts) {
  if (parts.size() != 2) throw UsageError("--grid expects <axis> <min:max:count>");
  GridSpec g{};
  const std::string& a = parts[0];
  if (a == "ell") g.axis = Axis::Ell;
  else if (a == "r") g.axis = Axis::R;
  else if (a == "h") g.axis = Axis::H;
  else if (a == "w") g.axis = Axis::W;
  else throw UsageError("unknown grid axis '" + a + "'");
  const std::string& spec = parts[1];
  const auto c1 = spec.find(':');
  const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) throw UsageError("grid range must be min:max:count");
  g.min = parse_double(spec.substr(0, c1));
  g.max = parse_double(spec.substr(c1 + 1, c2 - c1 - 1));
  const std::string count = spec.substr(c2 + 1);
  int n = 0;
  const auto res = std::from_chars(count.data(), count.data() + count.size(), n);
  if (res.ec != std::errc() || res.ptr != count.data() + count.size()) throw UsageError("grid count must be an integer");
  g.count = n;
  return g;
}

std::vector<double> grid_points(const GridSpec& g) {
  std::vector<double> pts(static_cast<std::size_t>(g.count));
  for (int i = 0; i < g.count; ++i) {
    pts[static_cast<std::size_t>(i)] = g.count == 1 ? g.min : g.min + (g.max - g.min) * i / (g.count - 1);
  }
  return pts;
}

// Stand-in for an absent side of a two-sided window; the CDFs differ from
// their one-sided limits by less than exp(-2 * 12^2) there.
double unbounded(double T) { return 12.0 * std::sqrt(T); }

bool is_type_a(ProcessTag t) { return chamber_of(t) == Chamber::TypeA; }

Statistic default_statistic(ProcessTag t) { return is_type_a(t) ? Statistic::R : Statistic::H; }

// ---------------------------------------------------------------------------
// CDF evaluation at a configuration, with one axis optionally overridden.

struct Point {
  std::optional<double> ell, r, h, w;
};

Point point_of(const RunConfig& c) { return {c.ell, c.r, c.h, c.w}; }

void set_axis(Point& p, Axis a, double x) {
  switch (a) {
    case Axis::Ell: p.ell = x; break;
    case Axis::R: p.r = x; break;
    case Axis::H: p.h = x; break;
    case Axis::W: p.w = x; break;
  }
}

CdfEvaluation evaluate(const RunConfig& c, const Point& p) {
  const double big = unbounded(c.T);
  switch (c.process) {
    case ProcessTag::BridgeAA:
      if (p.w) return cdf_width(c.N, c.T, *p.w, std::max(c.tol, 1e-10));
      return cdf_bridge_joint_LR(c.N, c.T, p.ell.value_or(big), p.r.value_or(big), c.tol);
    case ProcessTag::MotionAR: return cdf_motion_joint_LR(c.N, c.T, p.ell.value_or(big), p.r.value_or(big), c.tol);
    case ProcessTag::BesselCC: return cdf_bessel_H(c.N, c.T, *p.h, c.tol);
    case ProcessTag::MeanderCR: return cdf_meander_H(c.N, c.T, *p.h, c.tol);
    default: break;
  }
  const Chamber ch = chamber_of(c.process);
  const IntervalGeometry g = ch == Chamber::TypeA
                                 ? IntervalGeometry::make(-p.ell.value_or(big), p.r.value_or(big), c.T)
                                 : IntervalGeometry::make(0, *p.h, c.T);
  OrderedConfiguration a(ch, *c.start);
  const ProcessKind kind = c.end ? ProcessKind::fixed_ends(c.process, a, OrderedConfiguration(ch, *c.end))
                                 : ProcessKind::free_end(c.process, a);
  return cdf_general(kind, g, c.N, c.T, c.tol);
}

// ---------------------------------------------------------------------------
// Output helpers.

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

std::string csv_cell(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

json header(const RunConfig& c) {
  json h;
  h["command"] = command_name(c.command);
  h["process"] = to_string(c.process);
  h["N"] = c.N;
  h["T"] = c.T;
  return h;
}

json rows_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json o;
    for (std::size_t i = 0; i < row.size(); ++i) o[t.columns[i]] = row[i];
    rows.push_back(std::move(o));
  }
  return rows;
}

void emit(std::ostream& out, const RunConfig& c, const Table& t, json extra = json::object()) {
  if (c.format == Format::Csv) {
    write_csv(out, t);
    return;
  }
  json doc = header(c);
  for (auto& [k, v] : extra.items()) doc[k] = v;
  doc["rows"] = rows_json(t);
  out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Commands.

int cmd_eval(const RunConfig& c, std::ostream& out) {
  const CdfEvaluation e = evaluate(c, point_of(c));
  Table t{{"value", "raw", "error_estimate", "N", "T", "left", "right"},
          {{e.value, e.raw, e.error_estimate, e.params.N, e.params.T, e.params.geometry.left,
            e.params.geometry.right}}};
  emit(out, c, t);
  return kExitOk;
}

int cmd_table(const RunConfig& c, std::ostream& out) {
  const auto pts = grid_points(*c.grid);
  const std::function<CdfEvaluation(double)> fn = [&](double x) {
    Point p = point_of(c);
    set_axis(p, c.grid->axis, x);
    return evaluate(c, p);
  };
  const auto evals = evaluate_grid(pts, fn, c.threads);
  Table t{{"arg", "value", "error_estimate"}, {}};
  for (std::size_t i = 0; i < pts.size(); ++i) t.rows.push_back({pts[i], evals[i].value, evals[i].error_estimate});
  emit(out, c, t, json{{"axis", axis_name(c.grid->axis)}});
  return kExitOk;
}

double analytic_statistic_cdf(const RunConfig& c, Statistic s, double x) {
  const double big = unbounded(c.T);
  if (s == Statistic::L) {
    // P(L < x) = 1 - P(-(-x) < L)
    if (x >= 0) return 1.0;
    Point p{-x, big, std::nullopt, std::nullopt};
    return 1.0 - evaluate(c, p).value;
  }
  if (x <= 0) return 0.0;
  Point p{};
  if (s == Statistic::R) p = {big, x, std::nullopt, std::nullopt};
  if (s == Statistic::H) p.h = x;
  if (s == Statistic::W) p.w = x;
  return evaluate(c, p).value;
}

int cmd_mc_compare(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Statistic s = c.stat.value_or(default_statistic(c.process));
  SamplerOptions opt;
  opt.threads = c.threads;
  const PathEnsemble ens = sample_bridge_ensemble(ProcessKind::limit(c.process), c.N, c.T, c.steps, c.samples,
                                                  c.seed, opt);
  std::vector<double> grid;
  if (c.grid) {
    grid = grid_points(*c.grid);
  } else {
    auto vals = statistic_values(ens, s);
    std::sort(vals.begin(), vals.end());
    constexpr int kPoints = 20;
    for (int i = 0; i < kPoints; ++i) {
      const double q = 0.025 + 0.95 * i / (kPoints - 1);
      grid.push_back(vals[static_cast<std::size_t>(q * static_cast<double>(vals.size() - 1))]);
    }
  }
  const EmpiricalCdf emp = empirical_cdf(ens, s, grid);
  const std::function<double(double)> fn = [&](double x) { return analytic_statistic_cdf(c, s, x); };
  const auto analytic = evaluate_grid(grid, fn, c.threads);
  Table t{{"arg", "analytic", "empirical", "ci_half_width", "inside_ci"}, {}};
  int inside = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const bool in = std::abs(analytic[i] - emp.estimates[i]) <= emp.half_widths[i];
    inside += in;
    t.rows.push_back({grid[i], analytic[i], emp.estimates[i], emp.half_widths[i], in});
  }
  const double coverage = static_cast<double>(inside) / static_cast<double>(grid.size());
  err << "coverage " << format_double(coverage) << " (" << inside << "/" << grid.size() << ")\n";
  emit(out, c, t,
       json{{"statistic", to_string(s)},
            {"samples", c.samples},
            {"steps", c.steps},
            {"seed", c.seed},
            {"proposals", ens.attempted},
            {"coverage", coverage}});
  return kExitOk;
}

int cmd_moments(const RunConfig& c, std::ostream& out) {
  Table t{{"m", "analytic", "cdf_integrated", "relative_difference"}, {}};
  for (double m : c.moments) {
    const double a = height_moment_n1(m, c.T);
    const double q = height_moment_from_cdf(m, c.T, std::max(c.tol, 1e-13));
    t.rows.push_back({m, a, q, std::abs(q - a) / std::abs(a)});
  }
  emit(out, c, t);
  return kExitOk;
}

struct Check {
  const char* name;
  std::function<bool()> run;
};

std::vector<Check> self_test_battery() {
  return {
      {"bessel_n1_series",
       [] {
         double s = 0;
         for (int n = -30; n <= 30; ++n) s += (1.0 - 4.0 * n * n) * std::exp(-2.0 * n * n);
         return std::abs(cdf_bessel_H(1, 1, 1).raw - s) < 1e-12;
       }},
      {"bridge_reflection",
       [] { return std::abs(cdf_bridge_joint_LR(3, 1, 0.9, 1.4).raw - cdf_bridge_joint_LR(3, 1, 1.4, 0.9).raw) < 1e-10; }},
      {"scaling_law",
       [] { return std::abs(cdf_meander_H(2, 4, 5).raw - cdf_meander_H(2, 1, 2.5).raw) < 1e-10; }},
      {"theta_periodicity",
       [] {
         const auto a = theta_all(6, 1.3, 0.4), b = theta_all(6, 1.3, 1.7);
         return (a.values - b.values).cwiseAbs().maxCoeff() < 1e-12;
       }},
      {"poisson_identity",
       [] {
         const double eta = 0.8, xi = 0.3;
         const double lhs = poisson_lhs(2, eta, xi).value;
         const double th = theta(2, std::sqrt(std::numbers::pi) * eta, std::sqrt(std::numbers::pi) * xi / eta).value;
         const double rhs = -std::pow(eta, 3) / (4 * std::numbers::pi) * th;
         return std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs);
       }},
      {"pfaffian_squared_is_determinant",
       [] {
         MatrixX<double> a(4, 4);
         a << 0, 1.5, -0.3, 2.0, -1.5, 0, 0.7, 0.2, 0.3, -0.7, 0, -1.1, -2.0, -0.2, 1.1, 0;
         const double pf = pfaffian(make_antisymmetric(a));
         return std::abs(pf * pf - determinant(a)) < 1e-12;
       }},
      {"survival_two_particles",
       [] {
         const OrderedConfiguration x(Chamber::TypeA, {0.0, 0.8});
         return std::abs(survival_A(1.0, x) - std::erf(0.4)) < 1e-13;
       }},
      {"normalization",
       [] {
         return cdf_bridge_joint_LR(2, 1, 8, 8).value > 1 - 1e-8 && cdf_bessel_H(2, 1, 8).value > 1 - 1e-8 &&
                cdf_bessel_H(2, 1, 0.05).value < 1e-6;
       }},
      {"moment_identity",
       [] { return std::abs(height_moment_from_cdf(2, 1) / height_moment_n1(2, 1) - 1) < 1e-6; }},
  };
}

int cmd_self_test(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Table t{{"check", "passed"}, {}};
  int passed = 0, failed = 0;
  for (const auto& check : self_test_battery()) {
    bool ok = false;
    try {
      ok = check.run();
    } catch (const std::exception& e) {
      err << check.name << ": " << e.what() << '\n';
    }
    (ok ? passed : failed)++;
    t.rows.push_back({check.name, ok});
  }
  err << "self-test: " << passed << " passed, " << failed << " failed\n";
  emit(out, c, t, json{{"passed", passed}, {"failed", failed}});
  return failed == 0 ? kExitOk : kExitNumerical;
}

}  // namespace

void validate(const RunConfig& c) {
  if (!(c.T > 0)) throw UsageError("--T must be positive");
  if (!(c.tol > 0)) throw UsageError("--tol must be positive");
  if (c.N < 1) throw UsageError("--N must be at least 1");
  if (c.threads < 1) throw UsageError("--threads must be at least 1");
  for (const auto& [v, name] : {std::pair{c.ell, "--ell"}, {c.r, "--r"}, {c.h, "--h"}, {c.w, "--w"}}) {
    if (v && !(*v > 0)) throw UsageError(std::string(name) + " must be positive");
  }
  if (c.command == Command::Moments || c.command == Command::SelfTest) return;

  const bool type_a = is_type_a(c.process);
  if (type_a && c.h) throw UsageError("--h applies to the type C processes");
  if (!type_a && (c.ell || c.r || c.w)) throw UsageError("--ell/--r/--w apply to the type A processes");
  if (c.w && c.process != ProcessTag::BridgeAA) throw UsageError("--w is available for the bridge process only");
  if (c.w && (c.ell || c.r)) throw UsageError("--w cannot be combined with --ell/--r");

  if (!is_limit_process(c.process)) {
    if (c.command == Command::McCompare) throw UsageError("mc-compare supports the four limit processes");
    if (!c.start) throw UsageError("general processes need --start");
    const bool fixed = c.process == ProcessTag::GeneralABA || c.process == ProcessTag::GeneralABC;
    if (fixed != c.end.has_value()) {
      throw UsageError(fixed ? "this process needs --end" : "this process has a free end point; drop --end");
    }
    if (static_cast<int>(c.start->size()) != c.N || (c.end && static_cast<int>(c.end->size()) != c.N)) {
      throw UsageError("--start/--end must list N points");
    }
  } else if (c.start || c.end) {
    throw UsageError("--start/--end apply to the general processes");
  }

  const Axis grid_axis = c.grid ? c.grid->axis : Axis::R;
  if (c.grid) {
    const Axis a = c.grid->axis;
    if (type_a && a == Axis::H) throw UsageError("grid axis h needs a type C process");
    if (!type_a && a != Axis::H) throw UsageError("type C processes use grid axis h");
    if (a == Axis::W && c.process != ProcessTag::BridgeAA) throw UsageError("grid axis w needs the bridge process");
    if (!(c.grid->min < c.grid->max)) throw UsageError("grid needs min < max");
  }

  switch (c.command) {
    case Command::Eval:
      if (!type_a && !c.h) throw UsageError("eval needs --h");
      break;
    case Command::Table:
      if (!c.grid) throw UsageError("table needs --grid");
      if (c.grid->count < 2) throw UsageError("grid count must be at least 2");
      if (!type_a && c.h) throw UsageError("--h is set by the grid");
      if ((grid_axis == Axis::Ell && c.ell) || (grid_axis == Axis::R && c.r) || (grid_axis == Axis::W && c.w)) {
        throw UsageError("the grid axis cannot also be given as a fixed value");
      }
      if (grid_axis == Axis::W && (c.ell || c.r)) throw UsageError("--w grids cannot be combined with --ell/--r");
      break;
    case Command::McCompare: {
      if (c.samples < 100) throw UsageError("--samples must be at least 100");
      if (c.steps < kMinSteps) throw UsageError("--steps must be at least 64");
      const Statistic s = c.stat.value_or(default_statistic(c.process));
      if (!statistic_defined(c.process, s)) {
        throw UsageError(std::string("statistic ") + to_string(s) + " is not defined for " + to_string(c.process));
      }
      if (s == Statistic::W && c.process != ProcessTag::BridgeAA) {
        throw UsageError("the width law is available for the bridge process only");
      }
      if (c.ell || c.r || c.h || c.w) throw UsageError("mc-compare takes its arguments from --grid");
      if (c.grid) {
        const Axis want = s == Statistic::L ? Axis::Ell : s == Statistic::R ? Axis::R : s == Statistic::H ? Axis::H : Axis::W;
        if (c.grid->axis != want) throw UsageError("grid axis does not match the statistic");
        if (c.grid->count < 2) throw UsageError("grid count must be at least 2");
      }
      break;
    }
    default: break;
  }
}

RunConfig parse_args(int argc, const char* const* argv, const char* env_tol) {
  CLI::App app{"Extreme-value laws of noncolliding diffusions", "noncoll"};
  app.set_help_flag("--help", "Print this help message and exit");
  std::string command, process = "bridge", format = "csv";
  std::string N = "1", T = "1", ell, r, h, w, tol, seed = "1", samples = "100000", steps = "128", threads = "1";
  std::string stat, start, end, moments, out;
  std::vector<std::string> grid;
  app.add_option("command", command, "eval | table | mc-compare | moments | self-test")->required();
  app.add_option("--process", process, "bridge | motion | bessel | meander | general-ab-a | general-ar-a | "
                                       "general-ab-c | general-ar-c");
  app.add_option("--N", N, "Number of paths");
  app.add_option("--T", T, "Time horizon");
  app.add_option("--ell", ell, "Lower window -ell (type A)");
  app.add_option("--r", r, "Upper window r (type A)");
  app.add_option("--h", h, "Height h (type C)");
  app.add_option("--w", w, "Width w (bridge)");
  app.add_option("--grid", grid, "<axis> <min:max:count>")->expected(2);
  app.add_option("--tol", tol, "Absolute tolerance");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--samples", samples, "Monte Carlo sample count");
  app.add_option("--steps", steps, "Time steps per path");
  app.add_option("--threads", threads, "Worker threads");
  app.add_option("--stat", stat, "Statistic for mc-compare: L | R | H | W");
  app.add_option("--start", start, "Start configuration a1,a2,... (general processes)");
  app.add_option("--end", end, "End configuration b1,b2,... (general-ab-*)");
  app.add_option("--m", moments, "Moment orders m1,m2,... (moments)");
  app.add_option("--format", format, "csv | json");
  app.add_option("--out", out, "Output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  auto parse_int = [](const std::string& s, const char* name) -> long long {
    long long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw UsageError(std::string(name) + " must be an integer");
    }
    return v;
  };

  RunConfig c;
  if (command == "eval") c.command = Command::Eval;
  else if (command == "table") c.command = Command::Table;
  else if (command == "mc-compare") c.command = Command::McCompare;
  else if (command == "moments") c.command = Command::Moments;
  else if (command == "self-test") c.command = Command::SelfTest;
  else throw UsageError("unknown command '" + command + "'");
  const auto tag = parse_process_tag(process);
  if (!tag) throw UsageError("unknown process '" + process + "'");
  c.process = *tag;
  const long long n = parse_int(N, "--N");
  if (n < 1 || n > 64) throw UsageError("--N out of range");
  c.N = static_cast<int>(n);
  c.T = parse_double(T);
  if (!ell.empty()) c.ell = parse_double(ell);
  if (!r.empty()) c.r = parse_double(r);
  if (!h.empty()) c.h = parse_double(h);
  if (!w.empty()) c.w = parse_double(w);
  if (!grid.empty()) c.grid = parse_grid(grid);
  if (!tol.empty()) c.tol = parse_double(tol);
  else if (env_tol && *env_tol) c.tol = parse_double(env_tol);
  const long long sd = parse_int(seed, "--seed");
  if (sd < 0) throw UsageError("--seed must be nonnegative");
  c.seed = static_cast<std::uint64_t>(sd);
  const long long ns = parse_int(samples, "--samples");
  if (ns < 1) throw UsageError("--samples must be positive");
  c.samples = static_cast<std::uint64_t>(ns);
  const long long st = parse_int(steps, "--steps");
  if (st < 1 || st > 1'000'000) throw UsageError("--steps out of range");
  c.steps = static_cast<int>(st);
  const long long th = parse_int(threads, "--threads");
  if (th < 1 || th > 1024) throw UsageError("--threads out of range");
  c.threads = static_cast<unsigned>(th);
  if (!stat.empty()) {
    c.stat = parse_statistic(stat);
    if (!c.stat) throw UsageError("unknown statistic '" + stat + "'");
  }
  if (!start.empty()) c.start = parse_list(start);
  if (!end.empty()) c.end = parse_list(end);
  if (!moments.empty()) {
    c.moments = parse_list(moments);
    for (double m : c.moments) {
      if (!(m > 1)) throw UsageError("moment orders must exceed 1");
    }
  }
  if (format == "csv") c.format = Format::Csv;
  else if (format == "json") c.format = Format::Json;
  else throw UsageError("unknown format '" + format + "'");
  if (!out.empty()) c.out = out;
  validate(c);
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    switch (c.command) {
      case Command::Eval: return cmd_eval(c, out);
      case Command::Table: return cmd_table(c, out);
      case Command::McCompare: return cmd_mc_compare(c, out, err);
      case Command::Moments: return cmd_moments(c, out);
      case Command::SelfTest: return cmd_self_test(c, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_numerical() ? kExitNumerical : kExitInvalid;
  }
  return kExitInvalid;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  try {
    c = parse_args(argc, argv, std::getenv("NONCOLL_TOL"));
  } catch (const CLI::CallForHelp&) {
    err << "usage: noncoll <eval|table|mc-compare|moments|self-test> [--process P] [--N n] [--T t] "
           "[--ell x] [--r x] [--h x] [--w x] [--grid axis min:max:count] [--tol x] [--seed s] "
           "[--samples n] [--steps n] [--threads n] [--stat L|R|H|W] [--start a,..] [--end b,..] "
           "[--m m,..] [--format csv|json] [--out path]\n";
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_numerical() ? kExitNumerical : kExitInvalid;
  }
  if (!c.out) return run(c, out, err);
  // Buffer the artifact and write it once.
  std::ostringstream buf;
  const int status = run(c, buf, err);
  if (status == kExitOk) {
    std::ofstream f(*c.out, std::ios::binary);
    if (!f) {
      err << "error: cannot open " << *c.out << '\n';
      return kExitInvalid;
    }
    f << buf.str();
  }
  return status;
}

}  // namespace noncoll::cli
