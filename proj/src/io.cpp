#include "polarforge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "polarforge/errors.hpp"
#include "polarforge/index.hpp"

namespace polarforge {

std::string format_double(double v) {
  if (!std::isfinite(v)) {
    throw io_error("refusing to serialize a non-finite number");
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void JsonWriter::comma() {
  if (pending_key_) {
    pending_key_ = false;
    return;  // value directly follows its key
  }
  if (!first_.empty()) {
    if (first_.back()) {
      first_.back() = false;
    } else {
      out_ += ',';
    }
  }
}

JsonWriter& JsonWriter::begin_object() {
  comma();
  out_ += '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  comma();
  out_ += '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  first_.pop_back();
  return *this;
}

namespace {

void append_escaped(std::string& out, std::string_view s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

JsonWriter& JsonWriter::key(std::string_view k) {
  comma();
  append_escaped(out_, k);
  out_ += ':';
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view s) {
  comma();
  append_escaped(out_, s);
  return *this;
}

JsonWriter& JsonWriter::value(const char* s) { return value(std::string_view(s)); }

JsonWriter& JsonWriter::value(bool b) {
  comma();
  out_ += b ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(int v) { return value(static_cast<std::int64_t>(v)); }

JsonWriter& JsonWriter::value(std::int64_t v) {
  comma();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  comma();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  comma();
  out_ += format_double(v);
  return *this;
}

std::string JsonWriter::take() {
  if (!first_.empty()) {
    throw io_error("JSON document closed with unbalanced nesting");
  }
  return std::move(out_);
}

CsvWriter::CsvWriter(const std::vector<std::string>& header) : columns_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) {
    throw io_error("CSV row width does not match the header");
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ += ',';
    out_ += fields[i];
  }
  out_ += '\n';
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot open '" + path + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw io_error("short write to '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw io_error("read failure on '" + path + "'");
  return ss.str();
}

std::string render_frozen_set(const std::vector<std::uint32_t>& frozen) {
  std::string out;
  for (std::uint32_t v : frozen) {
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

std::vector<std::uint32_t> parse_frozen_set(std::string_view content, int n) {
  std::vector<std::uint32_t> out;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    ++line_no;
    std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::uint64_t v = 0;
    for (char c : line) {
      if (c < '0' || c > '9') {
        throw validation_error("frozen set line " + std::to_string(line_no) +
                               ": expected a decimal index");
      }
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
      if (v > (std::uint64_t{1} << kMaxN)) {
        throw validation_error("frozen set line " + std::to_string(line_no) +
                               ": index too large");
      }
    }
    if (v >= (std::uint64_t{1} << n)) {
      throw validation_error("frozen set line " + std::to_string(line_no) +
                             ": index out of range for n=" + std::to_string(n));
    }
    if (!out.empty() && v <= out.back()) {
      throw validation_error("frozen set indices must be strictly ascending (line " +
                             std::to_string(line_no) + ")");
    }
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

}  // namespace polarforge
