#include "msow/config.hpp"

#include <sstream>

namespace msow {

namespace {

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (!in || !in.eof())
    throw UsageError("config: bad value for " + key + ": " + value);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::from_text(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config: expected key=value: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "track_width_cap") c.track_width_cap = parse_number<int>(key, val);
    else if (key == "nba_complement_cap") c.nba_complement_cap = parse_number<int>(key, val);
    else if (key == "monoid_cap") c.monoid_cap = parse_number<std::size_t>(key, val);
    else if (key == "dfa_state_cap") c.dfa_state_cap = parse_number<std::size_t>(key, val);
    else if (key == "ktype_len_k2") c.ktype_len_k2 = parse_number<int>(key, val);
    else if (key == "ktype_len_k3") c.ktype_len_k3 = parse_number<int>(key, val);
    else if (key == "brute_force_len") c.brute_force_len = parse_number<int>(key, val);
    else if (key == "brute_force_qr") c.brute_force_qr = parse_number<int>(key, val);
    else if (key == "type_table_cap") c.type_table_cap = parse_number<std::size_t>(key, val);
    else if (key == "unary_search_cap") c.unary_search_cap = parse_number<int>(key, val);
    else if (key == "cert_n0_max") c.cert_n0_max = parse_number<int>(key, val);
    else if (key == "cert_q_max") c.cert_q_max = parse_number<int>(key, val);
    else if (key == "cert_window") c.cert_window = parse_number<int>(key, val);
    else if (key == "extension_len_cap") c.extension_len_cap = parse_number<int>(key, val);
    else if (key == "oracle_search_len") c.oracle_search_len = parse_number<int>(key, val);
    else if (key == "indicator_search_cap") c.indicator_search_cap = parse_number<int>(key, val);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, val);
    else if (key == "output") {
      if (val == "json") c.json = true;
      else if (val == "text") c.json = false;
      else throw UsageError("config: output must be text or json");
    } else {
      throw UsageError("config: unknown key " + key);
    }
  }
  for (auto& [k, v] : c.to_map()) {
    if (k == "output" || k == "seed") continue;
    if (v.empty() || v[0] == '-' || v == "0")
      throw UsageError("config: " + k + " must be positive");
  }
  return c;
}

std::map<std::string, std::string> Config::to_map() const {
  return {
      {"track_width_cap", std::to_string(track_width_cap)},
      {"nba_complement_cap", std::to_string(nba_complement_cap)},
      {"monoid_cap", std::to_string(monoid_cap)},
      {"dfa_state_cap", std::to_string(dfa_state_cap)},
      {"ktype_len_k2", std::to_string(ktype_len_k2)},
      {"ktype_len_k3", std::to_string(ktype_len_k3)},
      {"brute_force_len", std::to_string(brute_force_len)},
      {"brute_force_qr", std::to_string(brute_force_qr)},
      {"type_table_cap", std::to_string(type_table_cap)},
      {"unary_search_cap", std::to_string(unary_search_cap)},
      {"cert_n0_max", std::to_string(cert_n0_max)},
      {"cert_q_max", std::to_string(cert_q_max)},
      {"cert_window", std::to_string(cert_window)},
      {"extension_len_cap", std::to_string(extension_len_cap)},
      {"oracle_search_len", std::to_string(oracle_search_len)},
      {"indicator_search_cap", std::to_string(indicator_search_cap)},
      {"seed", std::to_string(seed)},
      {"output", json ? "json" : "text"},
  };
}

Config& config() {
  static Config c;
  return c;
}

}  // namespace msow
