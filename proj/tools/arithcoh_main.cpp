#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include "CLI11.hpp"
#include "arithcoh/pipeline.hpp"

using namespace arithcoh;
using json = nlohmann::json;

namespace {

std::string join_dims(const std::vector<ModularDim>& dims) {
  std::string s;
  for (auto& d : dims) s += (s.empty() ? "" : ",") + std::to_string(d.r) + ":" + std::to_string(d.dim);
  return s;
}

json certificate_json(const CuspidalCertificate& c) {
  json dims = json::object();
  for (auto& d : c.computed) dims[std::to_string(d.r)] = d.dim;
  json j{{"q", c.q}, {"h", c.h}, {"dims", dims}, {"boundary", c.boundary}, {"verdict", to_string(c.verdict)}};
  if (c.verdict == Verdict::CertifiedDim) j["cuspidal_dim"] = c.value;
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

std::string cuspidal_cell(const CuspidalCertificate& c) {
  switch (c.verdict) {
    case Verdict::CertifiedZero: return "0";
    case Verdict::CertifiedDim: return std::to_string(c.value);
    default: return "-";
  }
}

std::string join_map(const json& obj, const std::string& sep, const std::string& open = "", const std::string& close = "") {
  std::string s;
  for (auto& [k, v] : obj.items()) {
    std::string val = v.is_string() ? v.get<std::string>() : v.is_boolean() ? (v.get<bool>() ? "1" : "0") : v.dump();
    s += (s.empty() ? "" : sep) + open + k + close + "=" + val;
  }
  return s;
}

std::string poly_string(const json& coeffs) {
  std::string s;
  for (auto& c : coeffs) s += (s.empty() ? "" : " ") + std::to_string(c.get<int64_t>());
  return "[" + s + "]";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology of Gamma_0(q) in SL(3,Z), Hecke eigenpackets and rigidity certificates"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.fallthrough();

  Settings flags;
  std::map<std::string, std::string> raw;
  for (const auto& key : config_keys()) app.add_option("--" + key, raw[key], "override " + key);
  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");
  bool quiet = false, no_cache = false;
  app.add_flag("--quiet", quiet, "suppress progress on standard error");
  app.add_flag("--no-cache", no_cache, "neither read nor write the results ledger");

  uint32_t q = 0, r = 0, p = 0, ell = 2;
  unsigned h = 0;
  auto* dim = app.add_subcommand("dim", "dimension of H^3 with coefficients in V_h over F_r");
  dim->add_option("--q", q, "prime level")->required();
  dim->add_option("--h", h, "weight parameter")->required();
  dim->add_option("--r", r, "prime modulus")->required();

  auto* table = app.add_subcommand("table", "cuspidal vanishing table over primes q <= qmax and h in hset");

  auto* packets = app.add_subcommand("packets", "Hecke eigenpackets of H^3 over F_r");
  packets->add_option("--q", q, "prime level")->required();
  packets->add_option("--h", h, "weight parameter")->required();
  packets->add_option("--r", r, "prime modulus")->required();
  auto* popt = packets->add_option("--p", p, "report quasicuspidality mod p for the cuspidal block");

  auto* rigid = app.add_subcommand("rigid", "p-adic rigidity certificate for the cuspidal packets at level q");
  rigid->add_option("--q", q, "prime level")->required();
  rigid->add_option("--p", p, "residue characteristic")->required();
  rigid->add_option("--ell", ell, "quasicuspidality witness prime")->capture_default_str();

  auto* cache = app.add_subcommand("cache", "results ledger maintenance");
  cache->require_subcommand(1);
  auto* inspect = cache->add_subcommand("inspect", "summarize the ledger");
  auto* clear = cache->add_subcommand("clear", "remove every ledger record");

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& key : config_keys())
      if (app.count("--" + key)) flags[key] = raw[key];
    auto env = [](const char* name) -> const char* { return std::getenv(name); };
    Settings file;
    if (config_path.empty())
      if (const char* c = std::getenv("ARITHCOH_CONFIG")) config_path = c;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::runtime_error("cannot read config file " + config_path);
      file = parse_config_file(in);
    }
    RunConfig cfg = resolve_config(flags, settings_from_env(env), file, env);
    const bool jsonl = cfg.format == "jsonl";

    std::shared_ptr<Ledger> ledger;
    if (!no_cache || cache->parsed()) ledger = std::make_shared<Ledger>(cfg.cache_dir);

    std::mutex err_mutex;
    std::function<void(const std::string&)> progress;
    if (!quiet)
      progress = [&err_mutex](const std::string& s) {
        std::lock_guard<std::mutex> g(err_mutex);
        std::cerr << "[arithcoh] " << s << std::endl;
      };
    Pipeline pipe(cfg, ledger, progress);

    if (dim->parsed()) {
      const size_t d = pipe.dim(q, h, r);
      if (jsonl)
        std::cout << json{{"q", q}, {"h", h}, {"r", r}, {"h3_dim", d}}.dump() << "\n";
      else
        std::cout << d << "\n";
    } else if (table->parsed()) {
      auto rows = pipe.table(cfg.qmin, cfg.qmax, cfg.hset);
      if (!jsonl) std::cout << "q\th\tdims\tboundary\tverdict\tcuspidal\tnote\n";
      for (auto& row : rows) {
        const auto& c = row.certificate;
        if (jsonl)
          std::cout << certificate_json(c).dump() << "\n";
        else
          std::cout << c.q << "\t" << c.h << "\t" << join_dims(c.computed) << "\t" << c.boundary << "\t"
                    << to_string(c.verdict) << "\t" << cuspidal_cell(c) << "\t" << (c.reason.empty() ? "-" : c.reason)
                    << "\n";
      }
    } else if (packets->parsed()) {
      json rec = pipe.packets(q, h, r);
      std::optional<PacketLift> lift;
      if (popt->count()) lift = pipe.lift(q, h);
      if (!jsonl)
        std::cout << "# q=" << q << " h=" << h << " r=" << r << " h3_dim=" << rec.at("h3_dim")
                  << " boundary=" << rec.at("boundary") << "\n"
                  << "index\torbit\tmult\ttype\tminpoly\tvalues\thecke\tesd\tquasicusp\n";
      size_t index = 0;
      for (auto& pk : rec.at("packets")) {
        const bool cusp = pk.at("cuspidal").get<bool>();
        json qc = json::object();
        if (lift && cusp && lift->dimension() > 0)
          for (auto l : cfg.primes)
            if (l != p) qc[std::to_string(l)] = quasicuspidal_test(*lift, l, p);
        if (jsonl) {
          json out = pk;
          out["q"] = q;
          out["h"] = h;
          out["r"] = r;
          out["index"] = index;
          if (!qc.empty()) out["quasicusp"] = qc, out["p"] = p;
          std::cout << out.dump() << "\n";
        } else {
          std::cout << index << "\t" << pk.at("orbit") << "\t" << pk.at("multiplicity") << "\t"
                    << (cusp ? "cuspidal" : "boundary") << "\t" << poly_string(pk.at("minimal_poly")) << "\t"
                    << join_map(pk.at("values"), ";", "a(", ")") << "\t" << join_map(pk.at("hecke"), ";", "P_") << "\t"
                    << join_map(pk.at("esd"), ",") << "\t" << (qc.empty() ? "-" : join_map(qc, ",")) << "\n";
        }
        ++index;
      }
    } else if (rigid->parsed()) {
      auto rep = pipe.rigid(q, p, ell);
      json j{{"q", rep.q},
             {"p", rep.p},
             {"g0", rep.g0},
             {"witness", rep.witness},
             {"minimal_poly", rep.lift.minimal_poly},
             {"moduli", rep.lift.moduli},
             {"residue_polynomial", rep.residue_polynomial},
             {"quasicuspidal", rep.quasicuspidal},
             {"ordinary", rep.ordinary},
             {"g", rep.g},
             {"vanishing", certificate_json(rep.vanishing)},
             {"verdict", rep.rigid ? "rigid" : "not-certified"}};
      if (jsonl) {
        std::cout << j.dump() << "\n";
      } else {
        auto yes = [](bool b) { return b ? "yes" : "no"; };
        std::cout << "q\t" << rep.q << "\n"
                  << "p\t" << rep.p << "\n"
                  << "source_weight\tlambda(" << rep.g0 << ")\n"
                  << "cuspidal_minimal_poly\t" << poly_string(j.at("minimal_poly")) << "\n"
                  << "lift_moduli\t" << poly_string(j.at("moduli")) << "\n"
                  << "witness\t" << rep.witness << "\n"
                  << "hecke_polynomial_mod_p\t" << rep.residue_polynomial << "\n"
                  << "quasicuspidal\t" << yes(rep.quasicuspidal) << "\n"
                  << "ordinary\t" << yes(rep.ordinary) << "\n"
                  << "vanishing_weight\t" << rep.g << "\n"
                  << "vanishing_dims\t" << join_dims(rep.vanishing.computed) << "\n"
                  << "vanishing_boundary\t" << rep.vanishing.boundary << "\n"
                  << "vanishing_verdict\t" << to_string(rep.vanishing.verdict) << "\n"
                  << "verdict\t" << (rep.rigid ? "rigid" : "not-certified") << "\n";
      }
    } else if (inspect->parsed()) {
      auto s = ledger->inspect();
      json j{{"file", ledger->file().string()},   {"records", s.records}, {"malformed", s.malformed},
             {"current_version", s.current_version}, {"bytes", s.bytes},     {"by_kind", s.by_kind},
             {"code_version", code_version()}};
      if (jsonl) {
        std::cout << j.dump() << "\n";
      } else {
        std::cout << "file\t" << ledger->file().string() << "\nrecords\t" << s.records << "\nmalformed\t" << s.malformed
                  << "\ncurrent_version\t" << s.current_version << "\nbytes\t" << s.bytes << "\ncode_version\t"
                  << code_version() << "\n";
        for (auto& [k, n] : s.by_kind) std::cout << "kind." << k << "\t" << n << "\n";
      }
    } else if (clear->parsed()) {
      ledger->clear();
      std::cout << "cleared\t" << ledger->file().string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
