#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "subdiff/bernstein.hpp"
#include "subdiff/diffusion.hpp"
#include "subdiff/domain.hpp"
#include "subdiff/envelope.hpp"

namespace subdiff {

/// Flat typed key-value configuration.
///
/// One `key = value` assignment per line or per `;`-separated field; `#` starts
/// a comment. Values are numbers, bare or double-quoted strings, or
/// comma-separated number lists. Keys may be dotted (`band.ratio = 4`).
class Config {
 public:
  struct Entry {
    std::string value;
    int line = 0;
    int field = 0;
  };

  static Config parse(std::string_view text, std::string source = "<string>");
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  void set(const std::string& key, const std::string& value);

  std::string str(const std::string& key) const;
  std::string str(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  /// Strictly positive number.
  double positive(const std::string& key, double fallback) const;
  std::uint64_t u64(const std::string& key, std::uint64_t fallback) const;
  int integer(const std::string& key, int fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const;
  std::optional<double> optional_number(const std::string& key) const;

  /// Throws ConfigError naming the first key not in `known`.
  void require_known(const std::set<std::string>& known) const;

  /// Sorted `key=value` lines, excluding keys that do not affect results.
  std::string canonical() const;
  /// FNV-1a (64 bit) of canonical().
  std::uint64_t hash() const;
  std::string hash_hex() const;

  const std::map<std::string, Entry>& entries() const { return entries_; }
  const std::string& source() const { return source_; }

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;
  const Entry& at(const std::string& key) const;

  std::map<std::string, Entry> entries_;
  std::string source_;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

/// Catalog resolution; unknown names raise ConfigError listing the valid entries.
LaplaceExponent make_exponent(const Config& cfg);
DiffusionSpec make_diffusion(const Config& cfg, int dim);
Domain make_domain(const Config& cfg);
EnvelopeParams make_envelope(const Config& cfg);

const std::vector<std::string>& exponent_catalog();
const std::vector<std::string>& domain_catalog();
const std::vector<std::string>& diffusion_catalog();

}  // namespace subdiff
