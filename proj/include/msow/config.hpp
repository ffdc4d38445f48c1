// Shared error types and tunable bounds.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace msow {

/// Malformed formula text; column is 1-based.
class SyntaxError : public std::runtime_error {
public:
  SyntaxError(const std::string& msg, std::size_t column)
      : std::runtime_error(msg + " at column " + std::to_string(column)), column_(column) {}
  std::size_t column() const { return column_; }

private:
  std::size_t column_;
};

/// Caller broke a precondition (bad arguments, free variables, ...).
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A configured cap or budget was exceeded. `stage` names the cap.
class ResourceError : public std::runtime_error {
public:
  ResourceError(const std::string& stage, const std::string& msg)
      : std::runtime_error(stage + ": " + msg), stage_(stage) {}
  const std::string& stage() const { return stage_; }

private:
  std::string stage_;
};

/// A checked property did not hold (failed certificate, failed language condition).
class PropertyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Config {
  int track_width_cap = 16;
  int nba_complement_cap = 12;
  std::size_t monoid_cap = 200000;
  std::size_t dfa_state_cap = 2000000;
  // brute-force k-type budget: word length limits per rank
  int ktype_len_k2 = 10;
  int ktype_len_k3 = 7;
  int brute_force_len = 12;
  int brute_force_qr = 3;
  std::size_t type_table_cap = 2000000;
  int unary_search_cap = 256;
  // gap-word certificate search
  int cert_n0_max = 64;
  int cert_q_max = 8;
  int cert_window = 4;
  // word-construction searches (realizer, oracle embedding)
  int extension_len_cap = 64;
  int oracle_search_len = 14;
  int indicator_search_cap = 256;
  std::uint64_t seed = 20240901;
  bool json = false;

  /// Parse `key=value` lines; `#` starts a comment. Unknown keys are usage errors.
  static Config from_text(const std::string& text);
  std::map<std::string, std::string> to_map() const;
};

/// Process-wide configuration used by library defaults.
Config& config();

}  // namespace msow
