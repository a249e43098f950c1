#pragma once

// Sectioned key/value configuration with mandatory physical units.
//
//   # comment
//   [section]
//   key = 1.5 ns
//   other = 0.9 MW/cm2
//
// Keys are addressed as "section.key". Every key must be consumed before
// finish(), so misspelled keys are errors rather than silently ignored.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sacs {

enum class Dimension {
  time,          // ns
  angular_rate,  // rad/ns
  intensity,     // W/cm^2
  wavelength,    // nm
  angle,         // rad
  relative,      // multiples of a reference frequency ("delta2")
};

class Config {
 public:
  static Config parse(const std::string& text, const std::string& origin = "<memory>");
  static Config load(const std::filesystem::path& path);

  const std::string& origin() const { return origin_; }
  const std::string& source_text() const { return text_; }

  bool has(const std::string& key) const;
  bool has_section(const std::string& section) const;

  /// Quantity converted to the internal unit of `dim`; ConfigError on a
  /// missing key, missing or mismatched unit, or non-finite number.
  double quantity(const std::string& key, Dimension dim) const;
  std::optional<double> optional_quantity(const std::string& key, Dimension dim) const;
  double quantity_or(const std::string& key, Dimension dim, double fallback) const;

  /// Dimensionless number (no unit allowed).
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  /// Positive integer count (no unit allowed).
  std::size_t count(const std::string& key) const;
  std::size_t count_or(const std::string& key, std::size_t fallback) const;

  std::string text(const std::string& key) const;
  std::string text_or(const std::string& key, const std::string& fallback) const;
  bool flag_or(const std::string& key, bool fallback) const;

  /// Throws ConfigError naming every key that was never read.
  void finish() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
  };
  const Entry& entry(const std::string& key) const;
  [[noreturn]] void fail(const Entry& e, const std::string& key, const std::string& what) const;

  std::string origin_;
  std::string text_;
  std::map<std::string, Entry> entries_;
};

}  // namespace sacs
