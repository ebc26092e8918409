#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace polarforge {

// Canonical float formatting for every emitted artifact: shortest-faithful
// %.17g. The same double always renders to the same bytes.
std::string format_double(double v);

// Hand-rolled JSON emitter that writes keys in insertion order -- reruns with
// identical inputs produce byte-identical documents. Only the shapes needed
// here: objects, arrays, strings, bools, integers, doubles.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(std::string_view s);
  JsonWriter& value(const char* s);
  JsonWriter& value(bool b);
  JsonWriter& value(int v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(double v);
  std::string take();

 private:
  void comma();
  std::string out_;
  std::vector<bool> first_;
  bool pending_key_ = false;
};

// Minimal CSV builder: comma separator, LF line endings, UTF-8, one header
// row. Fields here never contain commas or quotes, so no quoting is emitted.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);
  void row(const std::vector<std::string>& fields);
  const std::string& str() const { return out_; }

 private:
  std::size_t columns_;
  std::string out_;
};

void write_text_file(const std::string& path, std::string_view content);
std::string read_text_file(const std::string& path);

// Frozen-set file: one decimal index per line, ascending, newline-terminated.
std::string render_frozen_set(const std::vector<std::uint32_t>& frozen);
std::vector<std::uint32_t> parse_frozen_set(std::string_view content, int n);

}  // namespace polarforge
