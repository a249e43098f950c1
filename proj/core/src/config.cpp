#include "sacs/config.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sacs/errors.hpp"
#include "sacs/io.hpp"

namespace sacs {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct UnitInfo {
  const char* name;
  Dimension dim;
  double factor;
};

// Factors convert to ns, rad/ns, W/cm^2, nm, rad.
constexpr UnitInfo kUnits[] = {
    {"ns", Dimension::time, 1.0},
    {"ps", Dimension::time, 1e-3},
    {"us", Dimension::time, 1e3},
    {"rad/ns", Dimension::angular_rate, 1.0},
    {"1/ns", Dimension::angular_rate, 1.0},
    {"rad/us", Dimension::angular_rate, 1e-3},
    {"1/us", Dimension::angular_rate, 1e-3},
    {"rad/s", Dimension::angular_rate, 1e-9},
    {"1/s", Dimension::angular_rate, 1e-9},
    {"W/cm2", Dimension::intensity, 1.0},
    {"kW/cm2", Dimension::intensity, 1e3},
    {"MW/cm2", Dimension::intensity, 1e6},
    {"GW/cm2", Dimension::intensity, 1e9},
    {"nm", Dimension::wavelength, 1.0},
    {"um", Dimension::wavelength, 1e3},
    {"rad", Dimension::angle, 1.0},
    {"deg", Dimension::angle, std::numbers::pi / 180.0},
    {"delta2", Dimension::relative, 1.0},
};

const char* dimension_name(Dimension d) {
  switch (d) {
    case Dimension::time:
      return "time (ns, ps, us)";
    case Dimension::angular_rate:
      return "angular frequency (rad/ns, 1/ns, rad/us, rad/s)";
    case Dimension::intensity:
      return "intensity (W/cm2, kW/cm2, MW/cm2, GW/cm2)";
    case Dimension::wavelength:
      return "wavelength (nm, um)";
    case Dimension::angle:
      return "angle (rad, deg)";
    case Dimension::relative:
      return "relative frequency (delta2)";
  }
  return "?";
}

bool parse_double(const std::string& s, double& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc{} && p == e;
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
  Config c;
  c.origin_ = origin;
  c.text_ = text;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const std::string where = origin + ":" + std::to_string(line) + ": ";
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(where + "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty()) throw ConfigError(where + "empty section name");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "empty key");
    if (value.empty()) throw ConfigError(where + "empty value for " + key);
    const std::string full = section.empty() ? key : section + "." + key;
    if (c.entries_.count(full)) throw ConfigError(where + "duplicate key " + full);
    c.entries_[full] = Entry{value, line, false};
  }
  return c;
}

Config Config::load(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  return parse(text, path.string());
}

bool Config::has(const std::string& key) const { return entries_.count(key) != 0; }

bool Config::has_section(const std::string& section) const {
  const std::string prefix = section + ".";
  const auto it = entries_.lower_bound(prefix);
  return it != entries_.end() && it->first.compare(0, prefix.size(), prefix) == 0;
}

const Config::Entry& Config::entry(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError(origin_ + ": missing key " + key);
  it->second.used = true;
  return it->second;
}

void Config::fail(const Entry& e, const std::string& key, const std::string& what) const {
  throw ConfigError(origin_ + ":" + std::to_string(e.line) + ": " + key + ": " + what);
}

double Config::quantity(const std::string& key, Dimension dim) const {
  const Entry& e = entry(key);
  const auto sp = e.value.find_first_of(" \t");
  if (sp == std::string::npos) fail(e, key, std::string("missing unit; expected ") + dimension_name(dim));
  const std::string num = e.value.substr(0, sp);
  const std::string unit = trim(e.value.substr(sp));
  double v = 0.0;
  if (!parse_double(num, v) || !std::isfinite(v)) fail(e, key, "not a finite number: " + num);
  for (const auto& u : kUnits) {
    if (unit != u.name) continue;
    if (u.dim != dim) fail(e, key, "unit " + unit + " is not a " + dimension_name(dim));
    return v * u.factor;
  }
  fail(e, key, "unknown unit " + unit);
}

std::optional<double> Config::optional_quantity(const std::string& key, Dimension dim) const {
  if (!has(key)) return std::nullopt;
  return quantity(key, dim);
}

double Config::quantity_or(const std::string& key, Dimension dim, double fallback) const {
  return has(key) ? quantity(key, dim) : fallback;
}

double Config::number(const std::string& key) const {
  const Entry& e = entry(key);
  double v = 0.0;
  if (!parse_double(e.value, v) || !std::isfinite(v)) fail(e, key, "expected a plain number, got " + e.value);
  return v;
}

double Config::number_or(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

std::size_t Config::count(const std::string& key) const {
  const Entry& e = entry(key);
  long long v = 0;
  const char* b = e.value.data();
  auto [p, ec] = std::from_chars(b, b + e.value.size(), v);
  if (ec != std::errc{} || p != b + e.value.size() || v < 1) fail(e, key, "expected a positive integer");
  return static_cast<std::size_t>(v);
}

std::size_t Config::count_or(const std::string& key, std::size_t fallback) const {
  return has(key) ? count(key) : fallback;
}

std::string Config::text(const std::string& key) const { return entry(key).value; }

std::string Config::text_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

bool Config::flag_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const Entry& e = entry(key);
  if (e.value == "true" || e.value == "yes" || e.value == "on") return true;
  if (e.value == "false" || e.value == "no" || e.value == "off") return false;
  fail(e, key, "expected true or false");
}

void Config::finish() const {
  std::string unused;
  for (const auto& [k, e] : entries_)
    if (!e.used) unused += (unused.empty() ? "" : ", ") + k + " (line " + std::to_string(e.line) + ")";
  if (!unused.empty()) throw ConfigError(origin_ + ": unknown or unused keys: " + unused);
}

}  // namespace sacs
