// Copyright 2026 The expsum-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// expsum-lab: command-line front end. Talks to the library only through
// the C API in expsum/expsum.h.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "expsum/expsum.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIndefinite = 2;
constexpr int kExitUsage = 64;
constexpr int kExitCap = 65;
constexpr int kExitMismatch = 70;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key=value lines, '#' comments. Values are kept whole so that
// "poly=[1,1,0,1]" is one polynomial, not four numbers.
class KeyValueConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    std::vector<CLI::ConfigItem> items;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      line = trim(line);
      if (line.empty() || line[0] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw CLI::ConversionError("config line " + std::to_string(lineno) + ": expected key=value");
      CLI::ConfigItem item;
      item.name = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
      // cache_dir and --cache-dir name the same thing
      for (auto& c : item.name)
        if (c == '-') c = '_';
      item.inputs = {value};
      items.push_back(std::move(item));
    }
    return items;
  }
};

struct RunConfig {
  std::vector<std::string> polys;
  std::string primes;
  std::string p;
  std::string x;
  std::string exponents;
  std::string k;
  long long a = 1;
  std::string cap = "30000";
  double threshold = 10;
  int kappa = 0;
  std::string group = "SU";
  int n = 4;
  std::string samples = "100000";
  std::string cache_dir;
  bool no_cache = false;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::string format = "csv";
  bool verbose = false;
  std::string cache_action;
  std::string hash;
};

std::uint64_t parse_count(const std::string& raw, const char* what) {
  const std::string s = raw;
  if (s.empty()) throw UsageError(std::string("empty ") + what);
  std::size_t used = 0;
  try {
    if (s.find_first_of("eE.") != std::string::npos) {
      const double d = std::stod(s, &used);
      if (used != s.size() || d < 0 || d != std::floor(d) || d > 1.8e19) throw UsageError("bad " + std::string(what) + ": " + s);
      return static_cast<std::uint64_t>(d);
    }
    if (s[0] == '-') throw UsageError("bad " + std::string(what) + ": " + s);
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw UsageError("bad " + std::string(what) + ": " + s);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("bad " + std::string(what) + ": " + s);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<std::uint64_t> parse_list(const std::string& s, const char* what) {
  std::vector<std::uint64_t> out;
  for (const auto& t : split(s, ',')) out.push_back(parse_count(t, what));
  return out;
}

std::vector<int> parse_ints(const std::string& s, const char* what) {
  std::vector<int> out;
  for (auto v : parse_list(s, what)) {
    if (v > 1000) throw UsageError(std::string(what) + " too large");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

// "lo..hi" (or lo:hi) means every prime in the range; a list must be all primes.
std::vector<std::uint64_t> parse_primes(const std::string& s) {
  std::string lo, hi;
  if (auto dots = s.find(".."); dots != std::string::npos) {
    lo = s.substr(0, dots);
    hi = s.substr(dots + 2);
  } else if (auto colon = s.find(':'); colon != std::string::npos) {
    lo = s.substr(0, colon);
    hi = s.substr(colon + 1);
  }
  if (!hi.empty() || !lo.empty()) {
    const auto a = parse_count(lo, "prime range"), b = parse_count(hi, "prime range");
    std::size_t n = 0;
    if (expsum_status st = expsum_primes_in(a, b, nullptr, 0, &n); st != EXPSUM_OK) {
      throw std::runtime_error(expsum_last_error());
    }
    std::vector<std::uint64_t> out(n);
    expsum_primes_in(a, b, out.data(), out.size(), &n);
    return out;
  }
  auto out = parse_list(s, "prime");
  for (auto p : out)
    if (!expsum_is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
  return out;
}

int exit_code(expsum_status s) {
  switch (s) {
    case EXPSUM_OK: return kExitOk;
    case EXPSUM_E_INVALID_ARGUMENT:
    case EXPSUM_E_PARSE:
    case EXPSUM_E_NOT_PRIME:
    case EXPSUM_E_BAD_REDUCTION:
    case EXPSUM_E_SMALL_PRIME:
    case EXPSUM_E_SMALL_CHARACTERISTIC:
    case EXPSUM_E_BAD_CHARACTERISTIC:
    case EXPSUM_E_NO_GOOD_PRIME:
    case EXPSUM_E_NON_SQUAREFREE:
    case EXPSUM_E_INSUFFICIENT_SAMPLES:
      return kExitUsage;
    case EXPSUM_E_CAP_EXCEEDED:
    case EXPSUM_E_PRIME_TOO_LARGE:
    case EXPSUM_E_EXTENSION_TOO_LARGE:
      return kExitCap;
    default: return kExitMismatch;
  }
}

struct Failure {
  expsum_status status;
};

void check(expsum_status s) {
  if (s != EXPSUM_OK) throw Failure{s};
}

using PolyPtr = std::unique_ptr<expsum_poly, decltype(&expsum_poly_free)>;
using ReportPtr = std::unique_ptr<expsum_report, decltype(&expsum_report_free)>;

std::vector<PolyPtr> load_polys(const RunConfig& cfg, std::size_t min, std::size_t max) {
  if (cfg.polys.size() < min) throw UsageError("need --poly" + std::string(min > 1 ? " at least " + std::to_string(min) + " times" : ""));
  if (cfg.polys.size() > max) throw UsageError("too many --poly values");
  std::vector<PolyPtr> out;
  for (const auto& s : cfg.polys) {
    expsum_poly* f = nullptr;
    check(expsum_poly_parse(s.c_str(), &f));
    out.emplace_back(f, &expsum_poly_free);
  }
  return out;
}

std::vector<const expsum_poly*> raw(const std::vector<PolyPtr>& fs) {
  std::vector<const expsum_poly*> out;
  for (const auto& f : fs) out.push_back(f.get());
  return out;
}

int run(const std::string& cmd, const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format must be csv or json");
  const expsum_format fmt = cfg.format == "json" ? EXPSUM_FORMAT_JSON : EXPSUM_FORMAT_CSV;

  std::string cache_dir = cfg.cache_dir;
  if (cache_dir.empty())
    if (const char* env = std::getenv("EXPSUM_CACHE_DIR"); env && *env) cache_dir = env;
  if (cache_dir.empty()) cache_dir = ".expsum-cache";
  const bool use_cache = !cfg.no_cache || cmd == "cache";

  expsum_ctx* raw_ctx = nullptr;
  check(expsum_ctx_new(use_cache ? cache_dir.c_str() : nullptr, cfg.threads, cfg.seed, &raw_ctx));
  std::unique_ptr<expsum_ctx, decltype(&expsum_ctx_free)> ctx(raw_ctx, &expsum_ctx_free);

  expsum_report* rep = nullptr;
  int exit = kExitOk;
  if (cmd == "classify") {
    auto fs = load_polys(cfg, 1, 1);
    const auto primes = cfg.primes.empty() ? std::vector<std::uint64_t>{} : parse_primes(cfg.primes);
    check(expsum_classify(ctx.get(), fs[0].get(), primes.data(), primes.size(), &rep));
    if (!expsum_report_flag(rep)) exit = kExitIndefinite;
  } else if (cmd == "moments") {
    auto fs = load_polys(cfg, 1, 1);
    const auto primes = parse_primes(cfg.primes);
    if (primes.empty()) throw UsageError("empty prime list");
    const auto ex = cfg.exponents.empty() ? std::vector<int>{1, 2, 4, 6, 8} : parse_ints(cfg.exponents, "exponent");
    check(expsum_moments(ctx.get(), fs[0].get(), primes.data(), primes.size(), ex.data(), ex.size(), fmt, &rep));
  } else if (cmd == "dichotomy") {
    auto fs = load_polys(cfg, 1, 1);
    const auto primes = parse_primes(cfg.primes);
    if (primes.empty()) throw UsageError("empty prime list");
    check(expsum_dichotomy(ctx.get(), fs[0].get(), primes.data(), primes.size(), cfg.threshold, fmt, &rep));
  } else if (cmd == "shao") {
    auto fs = load_polys(cfg, 1, 1);
    const auto xs = parse_list(cfg.x.empty() ? "1e3,1e4,1e5" : cfg.x, "x");
    check(expsum_shao(ctx.get(), fs[0].get(), xs.data(), xs.size(), cfg.kappa, fmt, &rep));
  } else if (cmd == "cross") {
    auto fs = load_polys(cfg, 1, 16);
    const auto primes = parse_primes(cfg.primes);
    if (primes.empty()) throw UsageError("empty prime list");
    const auto ks = parse_ints(cfg.k.empty() ? "1,2" : cfg.k, "k");
    const auto ptrs = raw(fs);
    check(expsum_cross(ctx.get(), ptrs.data(), ptrs.size(), primes.data(), primes.size(), ks.data(), ks.size(), fmt, &rep));
  } else if (cmd == "sweep") {
    auto fs = load_polys(cfg, 1, 16);
    if (cfg.a == 0) throw UsageError("a = 0 makes every sum degenerate; pick a >= 1");
    if (cfg.a < 0) throw UsageError("a must be positive");
    const auto grid = parse_list(cfg.x.empty() ? "1e3,3e3,1e4,3e4" : cfg.x, "x");
    const auto ex = parse_ints(cfg.exponents.empty() ? "1,2,4" : cfg.exponents, "exponent");
    const auto ptrs = raw(fs);
    const auto st = expsum_sweep(ctx.get(), ptrs.data(), ptrs.size(), cfg.a, grid.data(), grid.size(), ex.data(),
                                 ex.size(), parse_count(cfg.cap, "cap"), fmt, &rep);
    if (st == EXPSUM_E_CAP_EXCEEDED) {
      std::cerr << "expsum-lab: " << expsum_last_error() << "\n"
                << "hint: every prime up to the largest x needs a table; lower --x or raise --cap if memory allows\n";
      return kExitCap;
    }
    check(st);
  } else if (cmd == "rmt") {
    expsum_group g;
    if (cfg.group == "SU" || cfg.group == "su") g = EXPSUM_GROUP_SU;
    else if (cfg.group == "USp" || cfg.group == "usp") g = EXPSUM_GROUP_USP;
    else throw UsageError("--group must be SU or USp");
    const auto ks = parse_ints(cfg.k.empty() ? "0,1,2,3,4" : cfg.k, "k");
    check(expsum_rmt(ctx.get(), g, cfg.n, ks.data(), ks.size(), parse_count(cfg.samples, "samples"), fmt, &rep));
  } else if (cmd == "oracle") {
    auto fs = load_polys(cfg, 1, 1);
    if (cfg.p.empty()) throw UsageError("need --p");
    check(expsum_oracle(ctx.get(), fs[0].get(), parse_count(cfg.p, "p"), fmt, &rep));
    if (!expsum_report_flag(rep)) exit = kExitMismatch;
  } else if (cmd == "cache") {
    const std::string& action = cfg.cache_action;
    if (action == "list") {
      check(expsum_cache_list(ctx.get(), fmt, &rep));
    } else if (action == "verify") {
      check(expsum_cache_verify(ctx.get(), fmt, &rep));
      if (!expsum_report_flag(rep)) exit = kExitMismatch;
    } else if (action == "evict") {
      if (cfg.hash.empty()) throw UsageError("evict needs --hash (a prefix; use --hash all to clear)");
      std::size_t removed = 0;
      check(expsum_cache_evict(ctx.get(), cfg.hash == "all" ? "" : cfg.hash.c_str(), &removed));
      std::cout << "evicted " << removed << "\n";
      return kExitOk;
    } else {
      throw UsageError("cache action must be list, evict or verify");
    }
  }

  ReportPtr owned(rep, &expsum_report_free);
  std::cout << expsum_report_text(rep);
  std::cout.flush();
  if (cfg.verbose && use_cache) {
    std::uint64_t hits = 0, misses = 0, corrupt = 0;
    expsum_ctx_cache_stats(ctx.get(), &hits, &misses, &corrupt);
    std::cerr << "cache " << cache_dir << ": hits " << hits << ", misses " << misses << ", corrupt " << corrupt << "\n";
  }
  return exit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Complete exponential sums, genericity and moment statistics", "expsum-lab");
  app.config_formatter(std::make_shared<KeyValueConfig>());
  app.set_config("--config", "", "key=value file; flags on the command line win");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(expsum_version()));

  RunConfig cfg;
  app.add_option("--poly", cfg.polys, "coefficients as JSON, constant term first, e.g. \"[1,1,0,1]\"; repeatable")
      ->allow_extra_args(false);
  app.add_option("--primes", cfg.primes, "comma list, or a range lo..hi");
  app.add_option("--p", cfg.p, "single prime (oracle)");
  app.add_option("--x", cfg.x, "x values, comma list (sweep grid, shao points)");
  app.add_option("--exponents", cfg.exponents, "exponents of |W|, comma list");
  app.add_option("--k", cfg.k, "moment orders, comma list (cross, rmt)");
  app.add_option("--a", cfg.a, "the a in W(a;q) (sweep)");
  app.add_option("--cap", cfg.cap, "largest x a sweep may use");
  app.add_option("--threshold", cfg.threshold, "T in the T/sqrt(p) bands (dichotomy)");
  app.add_option("--kappa", cfg.kappa, "component count; 0 estimates it (shao)");
  app.add_option("--group", cfg.group, "SU or USp (rmt)");
  app.add_option("--n", cfg.n, "matrix size (rmt)");
  app.add_option("--samples", cfg.samples, "Monte Carlo samples, 0 to skip (rmt)");
  app.add_option("--cache-dir,--cache_dir", cfg.cache_dir, "table cache (default $EXPSUM_CACHE_DIR or .expsum-cache)");
  app.add_flag("--no-cache,--no_cache", cfg.no_cache, "compute every table afresh");
  app.add_option("--threads", cfg.threads, "worker threads, 0 for all cores");
  app.add_option("--seed", cfg.seed, "seed for sampled checks and Monte Carlo");
  app.add_option("--format", cfg.format, "csv or json");
  app.add_flag("-v,--verbose", cfg.verbose, "cache statistics on stderr");
  app.add_option("--hash", cfg.hash, "polynomial hash prefix (cache evict)");

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"classify", "Morse / Sidon-Morse classification as JSON"},
      {"moments", "per-prime moments with oracles and group references"},
      {"dichotomy", "fourth-moment band scan over primes"},
      {"shao", "prime-averaged second moment against log log x"},
      {"cross", "moments of products of several sums"},
      {"sweep", "sums over squarefree q <= x"},
      {"rmt", "trace moments of SU(n) / USp(n): exact and Monte Carlo"},
      {"oracle", "self-test of the fast paths at one prime"},
      {"cache", "list, evict or verify cached tables"},
  };
  for (const auto& [name, help] : subs) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    if (name == "cache") sub->add_option("action", cfg.cache_action, "list | evict | verify")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, cfg);
  } catch (const UsageError& e) {
    std::cerr << "expsum-lab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Failure& f) {
    std::cerr << "expsum-lab: " << expsum_last_error() << "\n";
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::cerr << "expsum-lab: " << e.what() << "\n";
    return kExitMismatch;
  }
}
