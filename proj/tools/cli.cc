// Copyright 2026 The csg-check Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "csg/checker.h"
#include "csg/error.h"
#include "csg/model.h"
#include "csg/strategy.h"

namespace csg::tools {
namespace {

namespace fs = std::filesystem;

struct Property {
  std::string text;
  std::string origin;  // "file:line" or "-p N"
};

std::string Number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool ReadFile(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CsgError("cannot write " + path.string());
  out << text;
}

std::string Trim(std::string s) {
  const size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Prefixes each parse diagnostic with where the text came from.
void ReportParse(const ParseError& e, const std::string& origin, int line_offset,
                 std::ostream& err) {
  for (const ParseDiagnostic& d : e.diagnostics()) {
    err << origin << ":" << d.position.line + line_offset << ":" << d.position.column
        << ": error: " << d.message << "\n";
  }
}

using Point = std::vector<std::pair<std::string, std::string>>;

std::vector<Point> SweepPoints(const std::vector<Sweep>& sweeps) {
  std::vector<Point> points{{}};
  for (const Sweep& sw : sweeps) {
    std::vector<Point> next;
    for (const Point& p : points) {
      for (const std::string& v : sw.values) {
        Point q = p;
        q.emplace_back(sw.name, v);
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  return points;
}

std::string PointText(const Point& p) {
  std::string out;
  for (const auto& [k, v] : p) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

}  // namespace

Sweep ParseSweep(const std::string& text) {
  const size_t eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
    throw CsgError("sweep must look like NAME=a..b or NAME=v1,v2: " + text);
  }
  Sweep sw;
  sw.name = text.substr(0, eq);
  const std::string rest = text.substr(eq + 1);
  const size_t dots = rest.find("..");
  if (dots != std::string::npos) {
    char* end = nullptr;
    const std::string a = rest.substr(0, dots);
    const std::string b = rest.substr(dots + 2);
    const long lo = std::strtol(a.c_str(), &end, 10);
    if (a.empty() || *end != '\0') throw CsgError("bad sweep range start: " + a);
    const long hi = std::strtol(b.c_str(), &end, 10);
    if (b.empty() || *end != '\0') throw CsgError("bad sweep range end: " + b);
    if (hi < lo) throw CsgError("empty sweep range " + rest);
    for (long v = lo; v <= hi; ++v) sw.values.push_back(std::to_string(v));
    return sw;
  }
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (item.empty()) throw CsgError("empty value in sweep " + text);
    sw.values.push_back(item);
  }
  return sw;
}

int Run(const RunConfig& config, std::ostream& err) {
  if (!(config.epsilon > 0.0)) {
    err << "error: --epsilon must be positive\n";
    return kExitError;
  }
  if (config.workers < 1) {
    err << "error: --workers must be at least 1\n";
    return kExitError;
  }
  std::string model_text;
  if (!ReadFile(config.model_path, model_text)) {
    err << "error: cannot read model file " << config.model_path << "\n";
    return kExitError;
  }

  std::vector<Property> props;
  for (size_t i = 0; i < config.properties.size(); ++i) {
    props.push_back({config.properties[i], "property " + std::to_string(i + 1)});
  }
  std::vector<int> line_of;  // parse position offset per property
  line_of.assign(props.size(), 0);
  if (!config.props_file.empty()) {
    std::string text;
    if (!ReadFile(config.props_file, text)) {
      err << "error: cannot read properties file " << config.props_file << "\n";
      return kExitError;
    }
    std::stringstream ss(text);
    std::string line;
    int n = 0;
    while (std::getline(ss, line)) {
      ++n;
      const std::string t = Trim(line);
      if (t.empty() || t[0] == '#') continue;
      props.push_back({t, config.props_file});
      line_of.push_back(n - 1);
    }
  }
  if (props.empty()) {
    err << "error: no properties given (use -p or --props-file)\n";
    return kExitError;
  }

  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) {
    err << "error: cannot create output directory " << config.out_dir << ": " << ec.message()
        << "\n";
    return kExitError;
  }
  const fs::path out_dir(config.out_dir);

  CheckOptions options;
  options.iteration.epsilon = config.epsilon;
  options.iteration.max_iters = config.max_iters;
  options.gamma = config.gamma;
  options.workers = config.workers;
  options.force = config.force;
  options.all_states = config.all_states;
  options.plain_vi = config.plain_vi;
  options.synth = config.synth || !config.exports.empty();

  std::string csv = "property,params,state,value,value1,value2,sat,iterations,epsilon";
  if (config.timing) csv += ",wall_ms";
  csv += "\n";
  std::string log;
  int status = kExitOk;

  const std::vector<Point> points = SweepPoints(config.sweeps);
  for (size_t pi = 0; pi < points.size(); ++pi) {
    const Point& point = points[pi];
    const std::string params = PointText(point);
    const std::string where = params.empty() ? "" : " params=" + params;
    Csg game;
    try {
      game = BuildCsg(ParseModel(SubstituteParameters(model_text, point)));
    } catch (const ParseError& e) {
      ReportParse(e, config.model_path, 0, err);
      return kExitError;
    } catch (const CsgError& e) {
      err << config.model_path << ": error:" << where << " " << e.what() << "\n";
      return kExitError;
    }
    ModelChecker checker(game, options);

    for (size_t k = 0; k < props.size(); ++k) {
      const std::string text = SubstituteParameters(props[k].text, point);
      const std::string tag = "property=" + std::to_string(k + 1) + where;
      const auto t0 = std::chrono::steady_clock::now();
      QueryResult r;
      try {
        r = checker.Check(text);
      } catch (const ParseError& e) {
        ReportParse(e, props[k].origin, line_of[k], err);
        log += tag + " error: " + e.what() + "\n";
        status = kExitError;
        continue;
      } catch (const AssumptionError& e) {
        err << props[k].origin << ": error: assumption " << e.assumption()
            << " rejected the model: " << e.what() << " (use --force to iterate anyway)\n";
        log += tag + " assumption" + std::to_string(e.assumption()) + "-rejected: " + e.what() +
               "\n";
        status = kExitError;
        continue;
      } catch (const CsgError& e) {
        err << props[k].origin << ": error: " << e.what() << "\n";
        log += tag + " error: " + e.what() + "\n";
        status = kExitError;
        continue;
      }
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
              .count();

      log += tag + " iterations=" + std::to_string(r.iterations) + "\n";
      for (const Diagnostic& d : r.diagnostics) log += tag + " " + FormatDiagnostic(d) + "\n";

      const std::string eps = r.certificate ? Number(r.certificate->epsilon) : "";
      for (int s = 0; s < game.num_states(); ++s) {
        const bool wanted = config.all_states ? !std::isnan(r.values.empty() ? 0.0 : r.values[s])
                                              : game.initial()[s] != 0;
        if (!wanted) continue;
        std::string row = CsvField(text) + "," + CsvField(params) + "," +
                          std::to_string(game.state_id(s)) + ",";
        switch (r.type) {
          case QueryResult::Type::kBoolean:
            if (!r.values.empty()) row += Number(r.values[s]);
            row += ",,," + std::string(r.sat[s] ? "true" : "false");
            if (!r.sat[s]) status = std::max(status, static_cast<int>(kExitViolated));
            break;
          case QueryResult::Type::kValue:
            row += Number(r.values[s]) + ",,,";
            break;
          case QueryResult::Type::kPair:
            row += Number(r.values[s]) + "," + Number(r.values1[s]) + "," +
                   Number(r.values2[s]) + ",";
            break;
        }
        row += "," + std::to_string(r.iterations) + "," + eps;
        if (config.timing) row += "," + Number(ms);
        csv += row + "\n";
      }

      if (r.profile && r.strategy_game) {
        std::string stem = "strategy_" + std::to_string(k + 1);
        if (points.size() > 1) stem += "_" + std::to_string(pi + 1);
        std::vector<std::string> formats = config.exports;
        if (formats.empty()) formats.push_back("table");
        for (const std::string& f : formats) {
          if (f == "graph") {
            WriteFile(out_dir / (stem + ".dot"), ExportGraph(*r.strategy_game, *r.profile));
          } else {
            WriteFile(out_dir / (stem + ".csv"), ExportTable(*r.strategy_game, *r.profile));
          }
        }
      }
    }
  }

  try {
    WriteFile(out_dir / "results.csv", csv);
    WriteFile(out_dir / "diagnostics.log", log);
  } catch (const CsgError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return status;
}

int Main(int argc, char** argv, std::ostream& err) {
  CLI::App app{"Model checker for concurrent stochastic games"};
  RunConfig config;
  if (const char* env = std::getenv("CSG_CHECK_WORKERS")) {
    try {
      config.workers = std::stoi(env);
    } catch (const std::exception&) {
      err << "error: CSG_CHECK_WORKERS must be an integer\n";
      return kExitError;
    }
  }
  std::vector<std::string> sweeps;
  double gamma = 0.0;
  app.add_option("model", config.model_path, "Model file")->required();
  app.add_option("-p,--property", config.properties, "Property to check (repeatable)");
  app.add_option("--props-file", config.props_file, "File with one property per line");
  app.add_option("--epsilon", config.epsilon, "Relative convergence threshold");
  auto* gamma_opt = app.add_option("--gamma", gamma, "Reward lifted onto zero-reward choices");
  app.add_option("--max-iters", config.max_iters, "Sweep limit for value iteration");
  app.add_option("--workers", config.workers, "Worker threads per sweep");
  app.add_flag("--force", config.force, "Iterate even when a stopping assumption fails");
  app.add_flag("--synth", config.synth, "Synthesize strategies and certify them");
  app.add_option("--export", config.exports, "Strategy export format")
      ->check(CLI::IsMember({"graph", "table"}));
  app.add_option("--sweep", sweeps, "Parameter sweep NAME=a..b or NAME=v1,v2");
  app.add_option("--out", config.out_dir, "Output directory");
  app.add_flag("--all-states", config.all_states, "Report every state, not just initial ones");
  app.add_flag("--plain-vi", config.plain_vi,
               "Plain reward iteration from zero (no infinite-reward pinning)");
  app.add_flag("--timing", config.timing, "Add wall-clock time to results.csv");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  if (gamma_opt->count() > 0) config.gamma = gamma;
  try {
    for (const std::string& s : sweeps) config.sweeps.push_back(ParseSweep(s));
  } catch (const CsgError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return Run(config, err);
}

}  // namespace csg::tools
