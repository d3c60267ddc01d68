#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace readiness {

/// 17 significant digits: parses back to the identical double.
std::string format_exact(double value);

/// Shortest representation that parses back to the identical double.
std::string format_shortest(double value);

/// Fixed number of significant digits for human-facing tables.
std::string format_digits(double value, int digits);

/// Whole-string decimal parse; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view text);
std::optional<std::uint64_t> parse_unsigned(std::string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string> split(std::string_view text, char separator);
std::string join(std::span<const std::string> items, std::string_view separator);

/// One line of a delimited record, honouring double-quoted fields.
std::vector<std::string> split_csv_record(std::string_view line);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// Sectioned `key = value` text used for model documents, reports and run
/// configuration. Sections and keys may repeat; entry order is preserved.
class Document {
 public:
  struct Entry {
    std::string section;
    std::size_t block = 0;  // increments with every section header
    std::string key;
    std::string value;
    std::size_t line = 0;
  };

  static Document parse(std::string_view text);

  void section(std::string name);
  void add(std::string key, std::string value);
  void add(std::string key, double value);
  void add(std::string key, std::span<const double> values);

  std::string str() const;

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const Entry* find(std::string_view section, std::string_view key) const;
  std::vector<const Entry*> find_all(std::string_view section, std::string_view key) const;

 private:
  std::string current_;
  std::size_t block_ = 0;
  std::vector<Entry> entries_;
};

}  // namespace readiness
