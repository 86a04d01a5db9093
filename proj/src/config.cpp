#include "subdiff/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "subdiff/errors.hpp"

namespace subdiff {
namespace {

// Keys that select where or how fast a run happens, not what it computes.
const std::set<std::string> kUnhashed = {"out", "workers"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-')) return false;
  return true;
}

std::optional<double> to_double(const std::string& s) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (b != e && *b == '+') ++b;
  const auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) return std::nullopt;
  return v;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

Point point_from(const Config& cfg, const std::string& key, int dim, const Point& fallback) {
  if (!cfg.has(key)) return fallback;
  const auto v = cfg.numbers(key);
  if (static_cast<int>(v.size()) != dim)
    throw ConfigError(cfg.source() + ": field '" + key + "' needs " + std::to_string(dim) + " coordinates");
  Point p(dim);
  for (int i = 0; i < dim; ++i) p[i] = v[i];
  return p;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Config Config::parse(std::string_view text, std::string source) {
  Config cfg;
  cfg.source_ = std::move(source);
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body;
    bool quoted = false;
    for (char c : line) {
      if (c == '"') quoted = !quoted;
      if (c == '#' && !quoted) break;
      body += c;
    }
    int field_no = 0;
    std::size_t start = 0;
    quoted = false;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      if (i < body.size() && body[i] == '"') quoted = !quoted;
      if (i < body.size() && (body[i] != ';' || quoted)) continue;
      const std::string field = trim(std::string_view(body).substr(start, i - start));
      start = i + 1;
      ++field_no;
      if (field.empty()) continue;
      const auto where = cfg.source_ + ":" + std::to_string(line_no) + ": field " + std::to_string(field_no);
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw ConfigError(where + ": expected key = value, got '" + field + "'");
      const std::string key = trim(std::string_view(field).substr(0, eq));
      std::string value = trim(std::string_view(field).substr(eq + 1));
      if (!valid_key(key)) throw ConfigError(where + ": invalid key '" + key + "'");
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
      else if (value.find('"') != std::string::npos) throw ConfigError(where + ": unbalanced quote in '" + key + "'");
      if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
      if (cfg.entries_.count(key))
        throw ConfigError(where + ": duplicate key '" + key + "' (first set on line " +
                          std::to_string(cfg.entries_.at(key).line) + ")");
      cfg.entries_[key] = Entry{value, line_no, field_no};
    }
    if (quoted) throw ConfigError(cfg.source_ + ":" + std::to_string(line_no) + ": unterminated string");
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path.string());
}

void Config::set(const std::string& key, const std::string& value) {
  if (!valid_key(key)) throw ConfigError("invalid key '" + key + "'");
  entries_[key] = Entry{value, 0, 0};
}

void Config::fail(const std::string& key, const std::string& message) const {
  const auto it = entries_.find(key);
  std::string where = source_;
  if (it != entries_.end() && it->second.line > 0)
    where += ":" + std::to_string(it->second.line) + ": field " + std::to_string(it->second.field);
  throw ConfigError(where + ": '" + key + "' " + message);
}

const Config::Entry& Config::at(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError(source_ + ": missing required field '" + key + "'");
  return it->second;
}

std::string Config::str(const std::string& key) const { return at(key).value; }

std::string Config::str(const std::string& key, const std::string& fallback) const {
  return has(key) ? str(key) : fallback;
}

double Config::number(const std::string& key) const {
  const auto v = to_double(at(key).value);
  if (!v || !std::isfinite(*v)) fail(key, "expects a finite number, got '" + at(key).value + "'");
  return *v;
}

double Config::number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

double Config::positive(const std::string& key, double fallback) const {
  const double v = number(key, fallback);
  if (!(v > 0.0)) fail(key, "must be positive");
  return v;
}

std::uint64_t Config::u64(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string& s = at(key).value;
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) fail(key, "expects an unsigned 64-bit integer, got '" + s + "'");
  return v;
}

int Config::integer(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const std::string& s = at(key).value;
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) fail(key, "expects an integer, got '" + s + "'");
  return v;
}

std::vector<double> Config::numbers(const std::string& key) const {
  const std::string& s = at(key).value;
  std::vector<double> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] != ',') continue;
    const std::string item = trim(std::string_view(s).substr(start, i - start));
    start = i + 1;
    const auto v = to_double(item);
    if (!v || !std::isfinite(*v)) fail(key, "expects a comma-separated number list, bad item '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

std::vector<double> Config::numbers(const std::string& key, std::vector<double> fallback) const {
  return has(key) ? numbers(key) : fallback;
}

std::optional<double> Config::optional_number(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return number(key);
}

void Config::require_known(const std::set<std::string>& known) const {
  for (const auto& [k, e] : entries_)
    if (!known.count(k)) fail(k, "is not a recognized field for this experiment kind");
}

std::string Config::canonical() const {
  std::string s;
  for (const auto& [k, e] : entries_) {
    if (kUnhashed.count(k)) continue;
    s += k + "=" + e.value + "\n";
  }
  return s;
}

std::uint64_t Config::hash() const { return fnv1a64(canonical()); }

std::string Config::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

const std::vector<std::string>& exponent_catalog() {
  static const std::vector<std::string> names = {"stable",           "conjugate_geometric_stable",
                                                 "conjugate_gamma",  "exponential_levy",
                                                 "drift_only",       "custom_tempered"};
  return names;
}

const std::vector<std::string>& domain_catalog() {
  static const std::vector<std::string> names = {"interval", "ball", "half_space", "power_cusp", "complement_of_ball"};
  return names;
}

const std::vector<std::string>& diffusion_catalog() {
  static const std::vector<std::string> names = {"identity", "smooth_anisotropic"};
  return names;
}

LaplaceExponent make_exponent(const Config& cfg) {
  const std::string name = cfg.str("phi");
  try {
    if (name == "stable") return LaplaceExponent::stable(cfg.number("beta"));
    if (name == "conjugate_geometric_stable") return LaplaceExponent::conjugate_geometric_stable(cfg.number("beta"));
    if (name == "conjugate_gamma") return LaplaceExponent::conjugate_gamma();
    if (name == "exponential_levy") return LaplaceExponent::exponential_levy();
    if (name == "drift_only") return LaplaceExponent::drift_only();
    if (name == "custom_tempered")
      return LaplaceExponent::custom_tempered(cfg.number("c"), cfg.number("alpha"), cfg.number("kappa"));
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(cfg.source() + ": exponent '" + name + "': " + ex.what());
  } catch (const std::domain_error& ex) {
    throw ConfigError(cfg.source() + ": exponent '" + name + "': " + ex.what());
  }
  throw ConfigError(cfg.source() + ": unknown exponent '" + name + "'; valid entries: " + join(exponent_catalog()));
}

DiffusionSpec make_diffusion(const Config& cfg, int dim) {
  const std::string name = cfg.str("diffusion", "identity");
  if (name == "identity") return DiffusionSpec::identity(dim);
  if (name == "smooth_anisotropic") return DiffusionSpec::smooth_anisotropic(dim, cfg.positive("lambda0", 2.0));
  throw ConfigError(cfg.source() + ": unknown diffusion '" + name + "'; valid entries: " + join(diffusion_catalog()));
}

Domain make_domain(const Config& cfg) {
  const std::string name = cfg.str("domain");
  const int dim = cfg.integer("dim", 1);
  try {
    if (name == "interval") return Domain::interval(cfg.number("a", 0.0), cfg.number("b", 1.0));
    if (name == "ball") return Domain::ball(point_from(cfg, "center", dim, Point(dim)), cfg.positive("radius", 1.0));
    if (name == "half_space")
      return Domain::half_space(point_from(cfg, "normal", dim, Point::unit(dim, dim - 1)), cfg.number("offset", 0.0));
    if (name == "power_cusp") return Domain::power_cusp(dim, cfg.positive("cusp_c", 0.5), cfg.positive("cusp_p", 1.5));
    if (name == "complement_of_ball")
      return Domain::complement_of_ball(point_from(cfg, "center", dim, Point(dim)), cfg.positive("radius", 1.0));
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(cfg.source() + ": domain '" + name + "': " + ex.what());
  }
  throw ConfigError(cfg.source() + ": unknown domain '" + name + "'; valid entries: " + join(domain_catalog()));
}

EnvelopeParams make_envelope(const Config& cfg) {
  EnvelopeParams p;
  p.C = cfg.positive("envelope.C", 1.0);
  p.c1 = cfg.positive("envelope.c1", 0.5);
  p.c2 = cfg.positive("envelope.c2", 0.5);
  const std::string inv = cfg.str("inverse", "full");
  if (inv == "full") p.inverse = InverseMode::full;
  else if (inv == "pure_jump") p.inverse = InverseMode::pure_jump;
  else throw ConfigError(cfg.source() + ": unknown inverse '" + inv + "'; valid entries: full, pure_jump");
  return p;
}

}  // namespace subdiff
