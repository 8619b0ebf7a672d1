#include "lwr/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lwr {

namespace {

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (trim(s.substr(used)) != "")
      throw ParseError(line, "trailing characters after number: '" + s + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (...) {
    throw ParseError(line, "expected a number, got '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

std::vector<double> parse_list(const std::string& s, int line) {
  std::vector<double> out;
  for (const std::string& item : split(s, ','))
    out.push_back(parse_number(item, line));
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v[i]);
  }
  return out;
}

std::string fmt_ids(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

ScenarioFile parse_scenario_text(const std::string& text) {
  ScenarioFile sc;
  sc.initial = InitialDatum::constant(0.0);
  std::string initial_preset = "constant";
  std::vector<double> initial_values, initial_breaks;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  bool have_domain = false;

  auto finish_initial = [&]() {
    if (initial_preset == "constant") {
      sc.initial = InitialDatum::constant(sc.initial.value);
    } else if (initial_preset == "indicator") {
      sc.initial = InitialDatum::indicator(sc.initial.from, sc.initial.to,
                                           sc.initial.value);
    } else if (initial_preset == "piecewise") {
      sc.initial = InitialDatum::piecewise(initial_breaks, initial_values);
    }
  };

  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError(line, "malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section == "interface") {
        sc.interfaces.emplace_back();
      } else if (section == "crossing") {
        sc.crossings.emplace_back();
      } else if (section != "flux" && section != "domain" &&
                 section != "initial" && section != "output") {
        throw ParseError(line, "unknown section [" + section + "]");
      }
      continue;
    }

    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ParseError(line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (section.empty())
      throw ParseError(line, "key outside of any section");

    if (section == "flux") {
      if (key == "kind") {
        if (val != "quadratic")
          throw ParseError(line, "unsupported flux kind '" + val + "'");
        sc.flux_kind = val;
      } else {
        throw ParseError(line, "unknown flux key '" + key + "'");
      }
    } else if (section == "domain") {
      have_domain = true;
      if (key == "x_min")
        sc.x_min = parse_number(val, line);
      else if (key == "x_max")
        sc.x_max = parse_number(val, line);
      else if (key == "dx")
        sc.dx = parse_number(val, line);
      else if (key == "lambda")
        sc.lambda = parse_number(val, line);
      else if (key == "horizon")
        sc.horizon = parse_number(val, line);
      else
        throw ParseError(line, "unknown domain key '" + key + "'");
    } else if (section == "initial") {
      if (key == "preset") {
        if (val != "constant" && val != "indicator" && val != "piecewise")
          throw ParseError(line, "unknown initial preset '" + val + "'");
        initial_preset = val;
      } else if (key == "value") {
        sc.initial.value = parse_number(val, line);
      } else if (key == "from") {
        sc.initial.from = parse_number(val, line);
      } else if (key == "to") {
        sc.initial.to = parse_number(val, line);
      } else if (key == "values") {
        initial_values = parse_list(val, line);
      } else if (key == "breaks") {
        initial_breaks = parse_list(val, line);
      } else {
        throw ParseError(line, "unknown initial key '" + key + "'");
      }
    } else if (section == "interface") {
      InterfaceSpec& spec = sc.interfaces.back();
      if (key == "id") {
        spec.id = static_cast<int>(parse_number(val, line));
      } else if (key == "t_begin") {
        spec.start_time = parse_number(val, line);
      } else if (key == "t_end") {
        spec.end_time = parse_number(val, line);
      } else if (key == "path") {
        for (const std::string& item : split(val, ',')) {
          const std::vector<std::string> tv = split(item, ':');
          if (tv.size() != 2)
            throw ParseError(line, "path points are 't:y' pairs");
          spec.path.push_back(
              {parse_number(tv[0], line), parse_number(tv[1], line)});
        }
      } else if (key == "constraint") {
        for (const std::string& item : split(val, ',')) {
          const std::vector<std::string> seg = split(item, ':');
          if (seg.size() != 3)
            throw ParseError(line, "constraint segments are 't0:t1:q'");
          spec.constraint.push_back({parse_number(seg[0], line),
                                     parse_number(seg[1], line),
                                     parse_number(seg[2], line)});
        }
      } else {
        throw ParseError(line, "unknown interface key '" + key + "'");
      }
    } else if (section == "crossing") {
      CrossingPoint& c = sc.crossings.back();
      if (key == "t") {
        c.t = parse_number(val, line);
      } else if (key == "x") {
        c.x = parse_number(val, line);
      } else if (key == "ends") {
        for (double v : parse_list(val, line))
          c.ending.push_back(static_cast<int>(v));
      } else if (key == "starts") {
        for (double v : parse_list(val, line))
          c.starting.push_back(static_cast<int>(v));
      } else {
        throw ParseError(line, "unknown crossing key '" + key + "'");
      }
    } else if (section == "output") {
      if (key == "snapshots") {
        sc.output.snapshots = parse_list(val, line);
      } else if (key == "diagnostics") {
        if (val != "on" && val != "off")
          throw ParseError(line, "diagnostics must be on or off");
        sc.output.diagnostics = val == "on";
      } else if (key == "dei") {
        if (val != "on" && val != "off")
          throw ParseError(line, "dei must be on or off");
        sc.output.dei = val == "on";
      } else {
        throw ParseError(line, "unknown output key '" + key + "'");
      }
    }
  }
  if (!have_domain) throw ParseError(line, "missing [domain] section");
  finish_initial();
  return sc;
}

ScenarioFile parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str());
}

std::string serialize_scenario(const ScenarioFile& sc) {
  std::ostringstream os;
  os << "[flux]\nkind = " << sc.flux_kind << "\n\n";
  os << "[domain]\n";
  os << "x_min = " << fmt(sc.x_min) << "\n";
  os << "x_max = " << fmt(sc.x_max) << "\n";
  os << "dx = " << fmt(sc.dx) << "\n";
  os << "lambda = " << fmt(sc.lambda) << "\n";
  os << "horizon = " << fmt(sc.horizon) << "\n\n";
  os << "[initial]\n";
  switch (sc.initial.kind) {
    case InitialDatum::Kind::Constant:
      os << "preset = constant\nvalue = " << fmt(sc.initial.value) << "\n";
      break;
    case InitialDatum::Kind::Indicator:
      os << "preset = indicator\nvalue = " << fmt(sc.initial.value)
         << "\nfrom = " << fmt(sc.initial.from)
         << "\nto = " << fmt(sc.initial.to) << "\n";
      break;
    case InitialDatum::Kind::Piecewise:
      os << "preset = piecewise\nvalues = " << fmt_list(sc.initial.values)
         << "\nbreaks = " << fmt_list(sc.initial.breaks) << "\n";
      break;
    case InitialDatum::Kind::Callable:
      throw IoError("callable initial data cannot be serialized");
  }
  os << "\n";
  for (const InterfaceSpec& spec : sc.interfaces) {
    os << "[interface]\n";
    os << "id = " << spec.id << "\n";
    os << "t_begin = " << fmt(spec.start_time) << "\n";
    os << "t_end = " << fmt(spec.end_time) << "\n";
    os << "path = ";
    for (std::size_t i = 0; i < spec.path.size(); ++i) {
      if (i) os << ", ";
      os << fmt(spec.path[i].t) << ":" << fmt(spec.path[i].y);
    }
    os << "\nconstraint = ";
    for (std::size_t i = 0; i < spec.constraint.size(); ++i) {
      if (i) os << ", ";
      os << fmt(spec.constraint[i].t_begin) << ":"
         << fmt(spec.constraint[i].t_end) << ":" << fmt(spec.constraint[i].q);
    }
    os << "\n\n";
  }
  for (const CrossingPoint& c : sc.crossings) {
    os << "[crossing]\n";
    os << "t = " << fmt(c.t) << "\n";
    os << "x = " << fmt(c.x) << "\n";
    if (!c.ending.empty()) os << "ends = " << fmt_ids(c.ending) << "\n";
    if (!c.starting.empty()) os << "starts = " << fmt_ids(c.starting) << "\n";
    os << "\n";
  }
  os << "[output]\n";
  if (!sc.output.snapshots.empty())
    os << "snapshots = " << fmt_list(sc.output.snapshots) << "\n";
  os << "diagnostics = " << (sc.output.diagnostics ? "on" : "off") << "\n";
  os << "dei = " << (sc.output.dei ? "on" : "off") << "\n";
  return os.str();
}

bool scenario_equal(const ScenarioFile& a, const ScenarioFile& b) {
  return serialize_scenario(a) == serialize_scenario(b);
}

RunConfig ScenarioFile::to_run_config() const {
  RunConfig cfg;
  cfg.flux = FluxModel::quadratic();
  cfg.grid = GridSpec::from_extent(x_min, x_max, dx);
  cfg.scheme.dx = dx;
  cfg.scheme.lambda = lambda;
  cfg.scheme.horizon = horizon;
  cfg.initial = initial;
  cfg.interfaces = interfaces;
  cfg.crossings = crossings;
  return cfg;
}

}  // namespace lwr
