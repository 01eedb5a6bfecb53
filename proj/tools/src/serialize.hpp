#pragma once

#include <string>
#include <vector>

namespace prionkit_cli {

// Shortest round-trip decimal form via std::to_chars: locale-independent
// and byte-stable, so identical inputs always serialize identically.
std::string fmt(double v);
std::string fmt(long v);
std::string fmt(int v);
std::string fmt(std::size_t v);

// Accumulates a tab-separated table ('#'-prefixed comment lines allowed
// anywhere) and hands the finished buffer to write_text in one shot.
class TableBuilder {
 public:
  void comment(const std::string& text);
  void row(const std::vector<std::string>& cells);
  const std::string& str() const { return buf_; }

 private:
  std::string buf_;
};

// Writes the whole buffer or throws IoError; creates no partial files
// beyond what a failed stream leaves behind.
void write_text(const std::string& path, const std::string& content);

}  // namespace prionkit_cli
