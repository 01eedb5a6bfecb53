#include "serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "prionkit/errors.hpp"

namespace prionkit_cli {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt(long v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt(int v) { return fmt(static_cast<long>(v)); }

std::string fmt(std::size_t v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void TableBuilder::comment(const std::string& text) {
  buf_ += "# ";
  buf_ += text;
  buf_ += '\n';
}

void TableBuilder::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) buf_ += '\t';
    buf_ += cells[i];
  }
  buf_ += '\n';
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw prionkit::IoError("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw prionkit::IoError("write failed: " + path);
}

}  // namespace prionkit_cli
