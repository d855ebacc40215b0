#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "pyjama/cli.hpp"
#include "pyjama/errors.hpp"

namespace pyjama::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string field_name(const std::string& section, const std::string& key) { return section + "." + key; }

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find_first_of("#;");
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError("unterminated section header", line);
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty()) throw ParseError("empty section name", line);
      if (cfg.sections_.count(section)) throw ParseError("duplicate section [" + section + "]", line);
      cfg.sections_[section];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line);
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section.empty()) throw ParseError("key outside any section", line, key);
    if (key.empty()) throw ParseError("empty key", line);
    auto& sec = cfg.sections_[section];
    if (sec.count(key)) throw ParseError("duplicate key", line, field_name(section, key));
    sec[key] = {value, line};
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool Config::has_section(const std::string& section) const { return sections_.count(section) > 0; }

bool Config::has(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

const Config::Entry& Config::entry(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  if (it == sections_.end()) throw ConfigError("missing section [" + section + "]");
  const auto kt = it->second.find(key);
  if (kt == it->second.end()) throw ConfigError("missing key " + field_name(section, key));
  return kt->second;
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
  return entry(section, key).value;
}

Rational Config::get_rational(const std::string& section, const std::string& key) const {
  const Entry& e = entry(section, key);
  try {
    return parse_rational(e.value);
  } catch (const ParseError& ex) {
    throw ParseError(ex.what(), e.line, field_name(section, key));
  }
}

GaussianRational Config::get_gaussian(const std::string& section, const std::string& key) const {
  const Entry& e = entry(section, key);
  try {
    return GaussianRational::parse(e.value);
  } catch (const ParseError& ex) {
    throw ParseError(ex.what(), e.line, field_name(section, key));
  }
}

std::vector<GaussianRational> Config::get_gaussian_list(const std::string& section, const std::string& key) const {
  const Entry& e = entry(section, key);
  std::vector<GaussianRational> out;
  std::istringstream in(e.value);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(GaussianRational::parse(trim(item)));
    } catch (const ParseError& ex) {
      throw ParseError(ex.what(), e.line, field_name(section, key));
    }
  }
  if (out.empty()) throw ParseError("empty list", e.line, field_name(section, key));
  return out;
}

long Config::get_long(const std::string& section, const std::string& key) const {
  const Entry& e = entry(section, key);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(e.value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != e.value.size()) throw ParseError("expected an integer", e.line, field_name(section, key));
  return v;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  const Entry& e = entry(section, key);
  // floating fields also accept the exact p/q form
  if (e.value.find('/') != std::string::npos) return get_rational(section, key).get_d();
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(e.value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != e.value.size()) throw ParseError("expected a number", e.line, field_name(section, key));
  return v;
}

void Config::expect_keys(const std::string& section, const std::vector<std::string>& allowed) const {
  const auto it = sections_.find(section);
  if (it == sections_.end()) return;
  for (const auto& [key, e] : it->second)
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ParseError("unknown key", e.line, field_name(section, key));
}

CoveringConfig covering_config(const Config& cfg) {
  cfg.expect_keys("covering", {"rotations", "N", "epsilon", "D", "obstruction_m_max", "audit_points"});
  CoveringConfig c;
  if (cfg.has("covering", "rotations") == cfg.has("covering", "N"))
    throw ConfigError("[covering] needs exactly one of 'rotations' and 'N'");
  if (cfg.has("covering", "rotations")) {
    c.rotations = cfg.get_gaussian_list("covering", "rotations");
  } else {
    const long N = cfg.get_long("covering", "N");
    if (N < 0) throw ConfigError("covering.N must be nonnegative");
    c.rotations = theta_set(static_cast<unsigned>(N));
  }
  c.epsilon = cfg.get_rational("covering", "epsilon");
  if (cfg.has("covering", "D")) {
    const GaussianRational d = cfg.get_gaussian("covering", "D");
    if (!d.is_gaussian_integer()) throw ConfigError("covering.D must be a Gaussian integer");
    c.D = d.num();
  } else if (cfg.has("covering", "N")) {
    c.D = min_period_multiplier(static_cast<unsigned>(cfg.get_long("covering", "N")));
  } else {
    // least common denominator of the rotations, as a Gaussian integer multiple
    Integer l = 1;
    for (const auto& t : c.rotations) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.den().get_mpz_t());
    c.D = GaussianInt(l);
  }
  c.validate();
  return c;
}

}  // namespace pyjama::cli
