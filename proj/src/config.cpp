#include "aris/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace aris {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(s.c_str(), &end);
  return errno == 0 && end == s.c_str() + s.size();
}

}  // namespace

KeyValueFile KeyValueFile::parse(const std::string& text, const std::string& origin) {
  KeyValueFile kv;
  kv.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected `key = value`");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (kv.entries_.count(key))
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key `" + key + "`");
    kv.entries_[key] = value;
    kv.lines_[key] = lineno;
  }
  return kv;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file `" + path + "`");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path);
}

bool KeyValueFile::has(const std::string& key) const { return entries_.count(key) > 0; }

void KeyValueFile::fail(const std::string& key, const std::string& why) const {
  auto it = lines_.find(key);
  const std::string where = it == lines_.end() ? origin_ : origin_ + ":" + std::to_string(it->second);
  throw ConfigError(where + ": key `" + key + "`: " + why);
}

std::string KeyValueFile::take(const std::string& key) {
  auto it = entries_.find(key);
  if (it == entries_.end()) fail(key, "missing");
  taken_.insert(key);
  return it->second;
}

double KeyValueFile::take_double(const std::string& key) {
  const std::string s = take(key);
  double v;
  if (!parse_number(s, v)) fail(key, "not a number: `" + s + "`");
  return v;
}

long KeyValueFile::take_int(const std::string& key) {
  const double v = take_double(key);
  if (v != double(long(v))) fail(key, "not an integer");
  return long(v);
}

bool KeyValueFile::take_bool(const std::string& key) {
  const std::string s = take(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  fail(key, "not a boolean: `" + s + "`");
}

std::vector<std::string> KeyValueFile::take_words(const std::string& key) {
  std::string s = take(key);
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<double> KeyValueFile::take_doubles(const std::string& key) {
  std::vector<double> out;
  for (const auto& w : take_words(key)) {
    double v;
    if (!parse_number(w, v)) fail(key, "not a number: `" + w + "`");
    out.push_back(v);
  }
  return out;
}

void KeyValueFile::finish() const {
  for (const auto& [key, value] : entries_)
    if (!taken_.count(key)) fail(key, "unknown key");
}

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 0xf];
  return s;
}

}  // namespace aris
