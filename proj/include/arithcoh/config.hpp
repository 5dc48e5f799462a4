#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace arithcoh {

using Settings = std::map<std::string, std::string>;

// Keys understood by the front end. The environment name of a key is
// ARITHCOH_ followed by the key upper-cased with '-' replaced by '_'.
const std::vector<std::string>& config_keys();

struct RunConfig {
  std::vector<uint32_t> moduli{149, 151, 163};
  std::vector<uint32_t> primes{2, 3, 5};
  unsigned budget = 6;
  uint32_t qmin = 2;
  uint32_t qmax = 0;
  std::vector<unsigned> hset;
  std::string cache_dir;
  std::string format = "tsv";
  unsigned threads = 1;
};

// key = value lines; '#' starts a comment. Throws on malformed lines and
// unknown keys.
Settings parse_config_file(std::istream& in);

Settings settings_from_env(const std::function<const char*(const char*)>& getenv);

// Comma-separated list of integers or a-b ranges.
std::vector<uint32_t> parse_uint_list(const std::string& s);

// Flags override the environment, which overrides the file, which overrides
// the defaults.
RunConfig resolve_config(const Settings& flags, const Settings& env, const Settings& file,
                         const std::function<const char*(const char*)>& getenv);

// Moduli must be prime, distinct, above h+2 and different from every level.
void validate_moduli(const std::vector<uint32_t>& moduli, unsigned h, const std::vector<uint32_t>& levels);

}  // namespace arithcoh
