#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fdstc {

// Shortest round-trip decimal form, independent of the global locale.
std::string format_double(double v);
double parse_double(std::string_view text);
long long parse_integer(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

// Ordered key/value pairs rendered as "key<TAB>value" lines.
class TabularReport {
 public:
  void add(std::string key, std::string value);
  void add(std::string key, double value);
  void add_section(std::string title);  // rendered as "# title"
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

// Parses "key=value" lines; '#' starts a comment, blank lines are skipped.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text);

void write_text_file(const std::string& path, std::string_view contents);
std::string read_text_file(const std::string& path);

}  // namespace fdstc
