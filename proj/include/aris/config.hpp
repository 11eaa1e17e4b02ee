#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace aris {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// `key = value` lines, `#` starts a comment. Readers take keys as they go;
// finish() rejects whatever was not taken.
class KeyValueFile {
 public:
  static KeyValueFile parse(const std::string& text, const std::string& origin = "<text>");
  static KeyValueFile load(const std::string& path);

  bool has(const std::string& key) const;
  std::string take(const std::string& key);
  double take_double(const std::string& key);
  long take_int(const std::string& key);
  bool take_bool(const std::string& key);
  std::vector<double> take_doubles(const std::string& key);
  std::vector<std::string> take_words(const std::string& key);

  void finish() const;
  const std::string& origin() const { return origin_; }
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& why) const;
  std::map<std::string, std::string> entries_;
  std::map<std::string, int> lines_;
  std::set<std::string> taken_;
  std::string origin_;
};

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 1469598103934665603ull);
std::string hex64(std::uint64_t v);

}  // namespace aris
