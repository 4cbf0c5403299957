#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "qnls/cli.hpp"
#include "qnls/errors.hpp"

namespace qnls::cli {

namespace pt = boost::property_tree;

RunConfig RunConfig::parse(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  RunConfig cfg;
  for (const auto& [name, node] : tree) {
    if (node.empty()) throw FormatError("config: key '" + name + "' outside any [section]");
    Section s{name, {}};
    for (const auto& [key, leaf] : node) {
      if (!leaf.empty()) throw FormatError("config: nested key in section " + name);
      s.entries.push_back({key, leaf.data()});
    }
    cfg.sections_.push_back(std::move(s));
  }
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string RunConfig::echo() const {
  pt::ptree tree;
  for (const auto& s : sections_) {
    pt::ptree node;
    for (const auto& e : s.entries) node.push_back({e.key, pt::ptree(e.value)});
    tree.push_back({s.name, node});
  }
  std::ostringstream out;
  pt::write_ini(out, tree);
  return out.str();
}

bool RunConfig::has(const std::string& section, const std::string& key) const { return get(section, key).has_value(); }

std::optional<std::string> RunConfig::get(const std::string& section, const std::string& key) const {
  for (const auto& s : sections_)
    if (s.name == section)
      for (const auto& e : s.entries)
        if (e.key == key) return e.value;
  return std::nullopt;
}

std::string RunConfig::text(const std::string& section, const std::string& key, const std::string& fallback) const {
  return get(section, key).value_or(fallback);
}

double RunConfig::number(const std::string& section, const std::string& key, double fallback) const {
  const auto v = get(section, key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const double x = std::stod(*v, &used);
    if (used != v->size()) throw std::invalid_argument(*v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("config: " + section + "." + key + " = '" + *v + "' is not a number");
  }
}

long RunConfig::integer(const std::string& section, const std::string& key, long fallback) const {
  const auto v = get(section, key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const long x = std::stol(*v, &used);
    if (used != v->size()) throw std::invalid_argument(*v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("config: " + section + "." + key + " = '" + *v + "' is not an integer");
  }
}

bool RunConfig::flag(const std::string& section, const std::string& key, bool fallback) const {
  const auto v = get(section, key);
  if (!v) return fallback;
  std::string s = *v;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ValidationError("config: " + section + "." + key + " = '" + *v + "' is not a boolean");
}

std::vector<double> RunConfig::numbers(const std::string& section, const std::string& key,
                                       const std::vector<double>& fallback) const {
  const auto v = get(section, key);
  if (!v) return fallback;
  std::string s = *v;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ValidationError("config: " + section + "." + key + " contains '" + tok + "'");
    }
  }
  if (out.empty()) throw ValidationError("config: " + section + "." + key + " is empty");
  return out;
}

void RunConfig::set(const std::string& section, const std::string& key, const std::string& value) {
  auto s = std::find_if(sections_.begin(), sections_.end(), [&](const Section& x) { return x.name == section; });
  if (s == sections_.end()) {
    sections_.push_back({section, {}});
    s = sections_.end() - 1;
  }
  for (auto& e : s->entries)
    if (e.key == key) {
      e.value = value;
      return;
    }
  s->entries.push_back({key, value});
}

}  // namespace qnls::cli
