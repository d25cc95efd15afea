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

#include "expsum/expsum.h"

#include <cstring>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "expsum/cache.hpp"
#include "expsum/error.hpp"
#include "expsum/parallel.hpp"
#include "expsum/report.hpp"
#include "expsum/selftest.hpp"

using namespace expsum;

struct expsum_ctx {
  std::unique_ptr<TableCache> cache;
  unsigned threads = 1;
  std::uint64_t seed = 1;

  TableProvider tables() { return cache ? cache->provider() : TableProvider{}; }
};

struct expsum_poly {
  PolyExact f;
};

struct expsum_table {
  SumTable t;
};

struct expsum_report {
  std::string text;
  int flag = 1;
};

namespace {

thread_local std::string last_error;

expsum_status from_code(ErrorCode c) { return static_cast<expsum_status>(static_cast<int>(c) + 1); }

template <class F>
expsum_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return EXPSUM_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return from_code(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "Internal: out of memory";
    return EXPSUM_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = std::string("Internal: ") + e.what();
    return EXPSUM_E_INTERNAL;
  }
}

void need(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

template <class T>
std::vector<T> to_vec(const T* p, std::size_t n) {
  need(n == 0 || p != nullptr, "null array with nonzero length");
  return std::vector<T>(p, p + n);
}

std::vector<PolyExact> polys(const expsum_poly* const* fs, std::size_t n) {
  need(n > 0 && fs != nullptr, "need at least one polynomial");
  std::vector<PolyExact> out;
  for (std::size_t i = 0; i < n; ++i) {
    need(fs[i] != nullptr, "null polynomial");
    out.push_back(fs[i]->f);
  }
  return out;
}

expsum_report* emit(const Table& t, expsum_format fmt, int flag = 1) {
  auto* r = new expsum_report;
  r->text = fmt == EXPSUM_FORMAT_JSON ? t.to_json() : t.to_csv();
  r->flag = flag;
  return r;
}

// Group governing f, or none when f cannot be classified.
std::optional<GroupSpec> group_of(const PolyExact& f) {
  if (f.degree() < 2) return std::nullopt;
  try {
    const auto primes = default_certificate_primes(f.degree());
    return monodromy_group(classify(f, primes));
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string group_name(const GroupSpec& g) {
  return std::string(to_string(g.family)) + "(" + std::to_string(g.n) + ")";
}

}  // namespace

extern "C" {

const char* expsum_version(void) { return "0.1.0"; }

const char* expsum_status_name(expsum_status s) {
  if (s == EXPSUM_OK) return "OK";
  if (s < EXPSUM_OK || s > EXPSUM_E_INTERNAL) return "Unknown";
  return error_code_name(static_cast<ErrorCode>(static_cast<int>(s) - 1));
}

const char* expsum_last_error(void) { return last_error.c_str(); }

int expsum_is_prime(uint64_t n) { return is_prime(n) ? 1 : 0; }

expsum_status expsum_primes_in(uint64_t lo, uint64_t hi, uint64_t* out, size_t cap, size_t* count) {
  return guard([&] {
    need(count != nullptr, "null count");
    if (hi > (u64{1} << 30)) throw Error(ErrorCode::CapExceeded, "prime ranges stop at 2^30");
    const auto ps = lo <= hi ? primes_in(lo, hi) : std::vector<u64>{};
    *count = ps.size();
    if (!out) return;
    need(cap >= ps.size(), "output buffer too small");
    std::copy(ps.begin(), ps.end(), out);
  });
}

expsum_status expsum_ctx_new(const char* cache_dir, unsigned threads, uint64_t seed, expsum_ctx** out) {
  return guard([&] {
    need(out != nullptr, "null output");
    auto ctx = std::make_unique<expsum_ctx>();
    if (cache_dir) ctx->cache = std::make_unique<TableCache>(cache_dir);
    ctx->threads = resolve_threads(threads);
    ctx->seed = seed;
    *out = ctx.release();
  });
}

void expsum_ctx_free(expsum_ctx* ctx) { delete ctx; }

expsum_status expsum_ctx_cache_stats(const expsum_ctx* ctx, uint64_t* hits, uint64_t* misses, uint64_t* corrupt) {
  return guard([&] {
    need(ctx != nullptr, "null context");
    const auto s = ctx->cache ? ctx->cache->stats() : TableCache::Stats{};
    if (hits) *hits = s.hits;
    if (misses) *misses = s.misses;
    if (corrupt) *corrupt = s.corrupt;
  });
}

expsum_status expsum_poly_parse(const char* json, expsum_poly** out) {
  return guard([&] {
    need(json != nullptr && out != nullptr, "null argument");
    *out = new expsum_poly{PolyExact::from_json(json)};
  });
}

void expsum_poly_free(expsum_poly* f) { delete f; }

int expsum_poly_degree(const expsum_poly* f) { return f ? f->f.degree() : -1; }

expsum_status expsum_poly_hash(const expsum_poly* f, char out[65]) {
  return guard([&] {
    need(f != nullptr && out != nullptr, "null argument");
    const std::string h = f->f.hash_hex();
    std::memcpy(out, h.c_str(), 65);
  });
}

expsum_status expsum_table_new(expsum_ctx* ctx, const expsum_poly* f, uint64_t p, int normalized,
                               expsum_table** out) {
  return guard([&] {
    need(ctx && f && out, "null argument");
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    auto tables = ctx->tables();
    SumTable plain = tables ? tables(f->f, p) : compute_table(f->f, p);
    if (normalized) {
      const PolyModP fp = reduce_mod_p(f->f, p).poly;
      const auto data = critical_data(fp);
      std::optional<OddFormModP> odd;
      if (p > static_cast<u64>(f->f.degree())) odd = odd_form(fp);
      plain = normalized_table(plain, data, odd);
    }
    *out = new expsum_table{std::move(plain)};
  });
}

void expsum_table_free(expsum_table* t) { delete t; }

uint64_t expsum_table_prime(const expsum_table* t) { return t ? t->t.p : 0; }

double expsum_table_error_bound(const expsum_table* t) { return t ? t->t.error_bound : 0; }

expsum_status expsum_table_get(const expsum_table* t, int64_t a, double* re, double* im) {
  return guard([&] {
    need(t && re && im, "null argument");
    const i64 p = static_cast<i64>(t->t.p);
    const cplx w = t->t.masked(static_cast<u64>(((a % p) + p) % p));
    *re = w.real();
    *im = w.imag();
  });
}

expsum_status expsum_sum_single(const expsum_poly* f, uint64_t p, uint64_t a, double* re, double* im) {
  return guard([&] {
    need(f && re && im, "null argument");
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    const cplx w = sum_single(reduce_mod_p(f->f, p).poly, a);
    *re = w.real();
    *im = w.imag();
  });
}

expsum_status expsum_twisted(expsum_ctx* ctx, const expsum_poly* f, int64_t a, uint64_t q, double* re, double* im) {
  return guard([&] {
    need(ctx && f && re && im, "null argument");
    need(q >= 1, "q must be positive");
    auto tables = ctx->tables();
    std::map<u64, SumTable> built;
    const TableLookup lookup = [&](u64 p) -> const SumTable* {
      auto it = built.find(p);
      if (it == built.end()) it = built.emplace(p, tables ? tables(f->f, p) : compute_table(f->f, p)).first;
      return &it->second;
    };
    const cplx w = twisted_extend(lookup, a, q);
    *re = w.real();
    *im = w.imag();
  });
}

const char* expsum_report_text(const expsum_report* r) { return r ? r->text.c_str() : ""; }

int expsum_report_flag(const expsum_report* r) { return r ? r->flag : 0; }

void expsum_report_free(expsum_report* r) { delete r; }

expsum_status expsum_classify(expsum_ctx* ctx, const expsum_poly* f, const uint64_t* primes, size_t nprimes,
                              expsum_report** out) {
  return guard([&] {
    need(ctx && f && out, "null argument");
    std::vector<u64> ps = to_vec(primes, nprimes);
    if (ps.empty()) ps = default_certificate_primes(std::max(1, f->f.degree()));
    const GenericityReport rep = classify(f->f, ps);
    *out = new expsum_report{genericity_json(rep), rep.definite() ? 1 : 0};
  });
}

expsum_status expsum_moments(expsum_ctx* ctx, const expsum_poly* f, const uint64_t* primes, size_t nprimes,
                             const int* exponents, size_t nexp, expsum_format fmt, expsum_report** out) {
  return guard([&] {
    need(ctx && f && out, "null argument");
    const std::vector<u64> ps = to_vec(primes, nprimes);
    if (ps.empty()) throw Error(ErrorCode::InvalidArgument, "empty prime list");
    MomentOptions opts;
    if (nexp) opts.exponents = to_vec(exponents, nexp);
    for (int e : opts.exponents) need(e == 1 || (e > 0 && e % 2 == 0), "exponents must be 1 or positive even");
    opts.group = group_of(f->f);
    opts.tables = ctx->tables();
    std::vector<MomentReport> reps(ps.size());
    parallel_for(ps.size(), ctx->threads, [&](std::size_t i) { reps[i] = moment_report(f->f, ps[i], opts); });
    Table t = moments_table(reps, opts);
    t.meta.insert(t.meta.begin(), {"poly", f->f.to_string()});
    *out = emit(t, fmt);
  });
}

expsum_status expsum_dichotomy(expsum_ctx* ctx, const expsum_poly* f, const uint64_t* primes, size_t nprimes,
                               double threshold, expsum_format fmt, expsum_report** out) {
  return guard([&] {
    need(ctx && f && out, "null argument");
    const std::vector<u64> ps = to_vec(primes, nprimes);
    if (ps.empty()) throw Error(ErrorCode::InvalidArgument, "empty prime list");
    need(threshold > 0, "threshold must be positive");
    DichotomyOptions opts;
    opts.threshold = threshold;
    opts.tables = ctx->tables();
    opts.threads = ctx->threads;
    Table t = dichotomy_table(dichotomy_scan(f->f, ps, opts), threshold);
    t.meta.insert(t.meta.begin(), {"poly", f->f.to_string()});
    *out = emit(t, fmt);
  });
}

expsum_status expsum_shao(expsum_ctx* ctx, const expsum_poly* f, const uint64_t* xs, size_t nxs, int kappa,
                          expsum_format fmt, expsum_report** out) {
  return guard([&] {
    need(ctx && f && out, "null argument");
    const std::vector<u64> x = to_vec(xs, nxs);
    need(!x.empty(), "empty x list");
    std::optional<KappaEstimate> est;
    if (kappa <= 0) {
      est = estimate_kappa(f->f, primes_in(2 * static_cast<u64>(f->f.degree()), 2000));
      kappa = est->kappa;
    }
    Table t = shao_table(shao_partial_sums(f->f, x, kappa), kappa);
    t.meta.insert(t.meta.begin(), {"poly", f->f.to_string()});
    if (est) {
      t.meta.emplace_back("kappa_source", std::string("estimated"));
      t.meta.emplace_back("m", static_cast<std::int64_t>(est->m));
      t.meta.emplace_back("mean_components", est->mean_components);
      t.meta.emplace_back("max_rounding_residual", est->max_rounding_residual);
      t.meta.emplace_back("kappa_primes", static_cast<std::uint64_t>(est->primes_used));
    } else {
      t.meta.emplace_back("kappa_source", std::string("given"));
    }
    *out = emit(t, fmt);
  });
}

expsum_status expsum_cross(expsum_ctx* ctx, const expsum_poly* const* fs, size_t nf, const uint64_t* primes,
                           size_t nprimes, const int* ks, size_t nk, expsum_format fmt, expsum_report** out) {
  return guard([&] {
    need(ctx && out, "null argument");
    const std::vector<PolyExact> f = polys(fs, nf);
    const std::vector<u64> ps = to_vec(primes, nprimes);
    if (ps.empty()) throw Error(ErrorCode::InvalidArgument, "empty prime list");
    std::vector<int> k = to_vec(ks, nk);
    if (k.empty()) k = {1, 2};
    for (int x : k) need(x >= 1, "k must be >= 1");

    // Target: product of the single-polynomial group moments, which is what
    // the moment factorizes to when no two factors are linearly equivalent.
    std::vector<std::optional<GroupSpec>> groups;
    std::string gnames;
    for (const auto& g : f) {
      groups.push_back(group_of(g));
      gnames += (gnames.empty() ? "" : ";") + (groups.back() ? group_name(*groups.back()) : std::string("?"));
    }
    Table t;
    t.columns = {"p", "k", "status", "moment", "target", "exact", "disc"};
    std::string names;
    for (const auto& g : f) names += (names.empty() ? "" : ";") + g.to_string();
    t.meta.emplace_back("polys", names);
    t.meta.emplace_back("groups", gnames);
    std::vector<std::vector<Cell>> rows(ps.size() * k.size());
    const TableProvider tables = ctx->tables();
    parallel_for(ps.size(), ctx->threads, [&](std::size_t i) {
      for (std::size_t j = 0; j < k.size(); ++j) {
        std::vector<Cell>& row = rows[i * k.size() + j];
        row = {ps[i], static_cast<std::int64_t>(k[j])};
        double target = 1;
        bool exact = true, known = true;
        for (const auto& g : groups) {
          if (!g) {
            known = false;
            break;
          }
          const auto ref = reference_moment(*g, k[j]);
          target *= ref.value;
          exact = exact && ref.exact;
        }
        try {
          const double m = cross_moment(f, ps[i], k[j], tables);
          row.push_back(std::string("ok"));
          row.push_back(m);
          if (known) {
            row.push_back(target);
            row.push_back(exact);
            row.push_back(std::sqrt(static_cast<double>(ps[i])) * std::abs(m - target));
          } else {
            row.insert(row.end(), 3, Cell{});
          }
        } catch (const Error& e) {
          row.push_back(std::string(error_code_name(e.code())));
          row.insert(row.end(), 4, Cell{});
        }
      }
    });
    t.rows = std::move(rows);
    *out = emit(t, fmt);
  });
}

expsum_status expsum_sweep(expsum_ctx* ctx, const expsum_poly* const* fs, size_t nf, int64_t a, const uint64_t* grid,
                           size_t ngrid, const int* exponents, size_t nexp, uint64_t cap, expsum_format fmt,
                           expsum_report** out) {
  return guard([&] {
    need(ctx && out, "null argument");
    const std::vector<PolyExact> f = polys(fs, nf);
    SweepOptions opts;
    if (ngrid) opts.grid = to_vec(grid, ngrid);
    if (nexp) opts.exponents = to_vec(exponents, nexp);
    if (cap) opts.cap = cap;
    opts.tables = ctx->tables();
    opts.threads = ctx->threads;
    const SweepReport rep = sweep_q(f, a, opts);
    std::vector<int> ex = opts.exponents;
    std::sort(ex.begin(), ex.end());
    ex.erase(std::unique(ex.begin(), ex.end()), ex.end());
    *out = emit(sweep_table(rep, ex), fmt);
  });
}

expsum_status expsum_rmt(expsum_ctx* ctx, expsum_group family, int n, const int* ks, size_t nk, size_t samples,
                         expsum_format fmt, expsum_report** out) {
  return guard([&] {
    need(ctx && out, "null argument");
    need(family == EXPSUM_GROUP_SU || family == EXPSUM_GROUP_USP, "unknown group family");
    need(n >= 1, "n must be >= 1");
    const GroupSpec g{family == EXPSUM_GROUP_SU ? GroupFamily::SpecialUnitary : GroupFamily::UnitarySymplectic, n};
    if (g.family == GroupFamily::UnitarySymplectic) need(n % 2 == 0, "symplectic groups need even n");
    std::vector<int> k = to_vec(ks, nk);
    if (k.empty())
      for (int i = 0; i <= 4; ++i) k.push_back(i);
    for (int x : k) need(x >= 0, "k must be >= 0");
    need(samples == 0 || samples >= 1000, "need at least 1000 samples");
    Table t;
    t.columns = {"family", "n", "k", "reference", "exact", "mc_mean", "mc_se", "z"};
    t.meta.emplace_back("samples", static_cast<std::uint64_t>(samples));
    t.meta.emplace_back("seed", ctx->seed);
    std::vector<std::vector<Cell>> rows(k.size());
    parallel_for(k.size(), ctx->threads, [&](std::size_t i) {
      const auto ref = reference_moment(g, k[i]);
      rows[i] = {std::string(to_string(g.family)), static_cast<std::int64_t>(n), static_cast<std::int64_t>(k[i]),
                 ref.value, ref.exact};
      if (samples == 0) {
        rows[i].insert(rows[i].end(), 3, Cell{});
        return;
      }
      // Same seed for every k: one set of matrices, several statistics.
      const auto mc = mc_trace_moment(g, k[i], samples, ctx->seed);
      rows[i].push_back(mc.mean);
      rows[i].push_back(mc.standard_error);
      rows[i].push_back(mc.standard_error > 0 ? Cell{std::abs(mc.mean - ref.value) / mc.standard_error} : Cell{});
    });
    t.rows = std::move(rows);
    *out = emit(t, fmt);
  });
}

expsum_status expsum_oracle(expsum_ctx* ctx, const expsum_poly* f, uint64_t p, expsum_format fmt,
                            expsum_report** out) {
  return guard([&] {
    need(ctx && f && out, "null argument");
    const SelfTestReport rep = oracle_selftest(f->f, p, ctx->seed, ctx->cache.get());
    Table t = rep.table();
    t.meta.insert(t.meta.begin(), {"poly", f->f.to_string()});
    *out = emit(t, fmt, rep.pass ? 1 : 0);
  });
}

expsum_status expsum_cache_list(expsum_ctx* ctx, expsum_format fmt, expsum_report** out) {
  return guard([&] {
    need(ctx && out, "null argument");
    if (!ctx->cache) throw Error(ErrorCode::InvalidArgument, "no cache directory configured");
    Table t;
    t.columns = {"poly_hash", "p", "kind", "bytes", "checksum", "path"};
    t.meta.emplace_back("dir", ctx->cache->dir().string());
    for (const auto& e : ctx->cache->list())
      t.rows.push_back({e.poly_hash, e.p, std::string(e.kind == CacheKind::Table ? "table" : "dist"),
                        static_cast<std::uint64_t>(e.bytes), e.checksum, e.path.string()});
    *out = emit(t, fmt);
  });
}

expsum_status expsum_cache_evict(expsum_ctx* ctx, const char* hash_prefix, size_t* removed) {
  return guard([&] {
    need(ctx != nullptr, "null context");
    if (!ctx->cache) throw Error(ErrorCode::InvalidArgument, "no cache directory configured");
    const std::size_t n = ctx->cache->evict(hash_prefix ? hash_prefix : "");
    if (removed) *removed = n;
  });
}

expsum_status expsum_cache_verify(expsum_ctx* ctx, expsum_format fmt, expsum_report** out) {
  return guard([&] {
    need(ctx && out, "null argument");
    if (!ctx->cache) throw Error(ErrorCode::InvalidArgument, "no cache directory configured");
    const auto v = ctx->cache->verify();
    Table t;
    t.columns = {"poly_hash", "p", "kind", "path", "reason"};
    t.meta.emplace_back("ok", static_cast<std::uint64_t>(v.ok));
    t.meta.emplace_back("corrupt", static_cast<std::uint64_t>(v.corrupt.size()));
    const auto log = ctx->cache->corrupt_log();
    for (const auto& e : v.corrupt) {
      std::string reason = "corrupt";
      for (const auto& line : log)
        if (line.rfind(e.path.string() + ": ", 0) == 0) reason = line.substr(e.path.string().size() + 2);
      t.rows.push_back({e.poly_hash, e.p, std::string(e.kind == CacheKind::Table ? "table" : "dist"), e.path.string(),
                        reason + "; evicted"});
    }
    *out = emit(t, fmt, v.corrupt.empty() ? 1 : 0);
  });
}

}  // extern "C"
