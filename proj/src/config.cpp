#include "arithcoh/config.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <stdexcept>
#include <thread>

#include "arithcoh/prime_field.hpp"

namespace arithcoh {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string env_name(const std::string& key) {
  std::string out = "ARITHCOH_";
  for (char c : key) out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

uint32_t parse_uint(const std::string& s, const std::string& what) {
  const std::string t = trim(s);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw std::invalid_argument("invalid " + what + ": '" + s + "'");
  const unsigned long long v = std::stoull(t);
  if (v > 0xffffffffull) throw std::invalid_argument(what + " out of range: " + t);
  return static_cast<uint32_t>(v);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{"rlist", "ell-list", "budget", "qmin",   "qmax",
                                             "hset",  "cache-dir", "format", "threads"};
  return keys;
}

Settings parse_config_file(std::istream& in) {
  Settings out;
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(n) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw std::invalid_argument("config line " + std::to_string(n) + ": unknown key '" + key + "'");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

Settings settings_from_env(const std::function<const char*(const char*)>& getenv) {
  Settings out;
  for (const auto& key : config_keys())
    if (const char* v = getenv(env_name(key).c_str())) out[key] = v;
  return out;
}

std::vector<uint32_t> parse_uint_list(const std::string& s) {
  std::vector<uint32_t> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const std::string item = trim(s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (!item.empty()) {
      if (auto dash = item.find('-'); dash != std::string::npos && dash > 0) {
        const uint32_t a = parse_uint(item.substr(0, dash), "range start"), b = parse_uint(item.substr(dash + 1), "range end");
        if (b < a) throw std::invalid_argument("empty range '" + item + "'");
        for (uint32_t v = a; v <= b; ++v) out.push_back(v);
      } else {
        out.push_back(parse_uint(item, "list entry"));
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

RunConfig resolve_config(const Settings& flags, const Settings& env, const Settings& file,
                         const std::function<const char*(const char*)>& getenv) {
  Settings merged = file;
  for (auto& [k, v] : env) merged[k] = v;
  for (auto& [k, v] : flags) merged[k] = v;

  RunConfig c;
  const unsigned hw = std::thread::hardware_concurrency();
  c.threads = hw ? hw : 1;
  if (const char* xdg = getenv("XDG_CACHE_HOME"); xdg && *xdg)
    c.cache_dir = std::string(xdg) + "/arithcoh";
  else if (const char* home = getenv("HOME"); home && *home)
    c.cache_dir = std::string(home) + "/.cache/arithcoh";
  else
    c.cache_dir = ".arithcoh-cache";

  for (auto& [k, v] : merged) {
    if (k == "rlist") {
      c.moduli = parse_uint_list(v);
    } else if (k == "ell-list") {
      c.primes = parse_uint_list(v);
    } else if (k == "budget") {
      c.budget = parse_uint(v, "budget");
    } else if (k == "qmin") {
      c.qmin = parse_uint(v, "qmin");
    } else if (k == "qmax") {
      c.qmax = parse_uint(v, "qmax");
    } else if (k == "hset") {
      c.hset.clear();
      for (auto h : parse_uint_list(v)) c.hset.push_back(h);
    } else if (k == "cache-dir") {
      c.cache_dir = v;
    } else if (k == "format") {
      if (v != "tsv" && v != "jsonl") throw std::invalid_argument("format must be tsv or jsonl");
      c.format = v;
    } else if (k == "threads") {
      c.threads = std::max<uint32_t>(1, parse_uint(v, "threads"));
    } else {
      throw std::invalid_argument("unknown setting '" + k + "'");
    }
  }
  if (c.moduli.empty()) throw std::invalid_argument("modulus list is empty");
  if (c.primes.empty()) throw std::invalid_argument("Hecke prime list is empty");
  for (auto ell : c.primes)
    if (!is_prime(ell)) throw std::invalid_argument("Hecke prime " + std::to_string(ell) + " is not prime");
  if (c.budget == 0) throw std::invalid_argument("extension budget must be positive");
  return c;
}

void validate_moduli(const std::vector<uint32_t>& moduli, unsigned h, const std::vector<uint32_t>& levels) {
  std::set<uint32_t> seen;
  for (auto r : moduli) {
    if (!is_prime(r)) throw std::invalid_argument("modulus " + std::to_string(r) + " is not prime");
    if (!seen.insert(r).second) throw std::invalid_argument("modulus " + std::to_string(r) + " is repeated");
    if (r <= h + 2) throw std::invalid_argument("modulus " + std::to_string(r) + " must exceed h+2");
    for (auto q : levels)
      if (q == r) throw std::invalid_argument("modulus clash: r = q = " + std::to_string(r));
  }
}

}  // namespace arithcoh
