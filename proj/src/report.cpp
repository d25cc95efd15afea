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

#include "expsum/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <sstream>

namespace expsum {

namespace {

using json = nlohmann::ordered_json;

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "";
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, double>) return format_double(v);
        else if constexpr (std::is_same_v<T, std::string>) return csv_quote(v);
        else return std::to_string(v);
      },
      c);
}

json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
        else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else return v;
      },
      c);
}

json rational_json(const Rational& q) { return format_rational(q); }

json poly_json(const PolyExact& f) { return json::parse(f.to_json()); }

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

std::string Table::to_csv() const {
  std::ostringstream os;
  os << kSchemaLine << '\n';
  for (const auto& [k, v] : meta) os << "# " << k << ": " << cell_text(v) << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_quote(columns[i]);
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
  return os.str();
}

std::string Table::to_json() const {
  json out;
  out["schema"] = "expsum-lab v1";
  json m = json::object();
  for (const auto& [k, v] : meta) m[k] = cell_json(v);
  out["meta"] = m;
  json rs = json::array();
  for (const auto& row : rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size() && i < columns.size(); ++i) r[columns[i]] = cell_json(row[i]);
    rs.push_back(std::move(r));
  }
  out["rows"] = std::move(rs);
  return out.dump(2) + "\n";
}

std::string genericity_json(const GenericityReport& r) {
  json j;
  j["poly"] = poly_json(r.poly);
  j["degree"] = r.degree;
  j["morse"] = r.morse;
  switch (r.sidon) {
    case Tristate::True: j["sidon"] = true; break;
    case Tristate::False: j["sidon"] = false; break;
    case Tristate::Unknown: j["sidon"] = "unknown"; break;
  }
  j["sidon_failures"] = r.sidon_failures;
  j["symmetric"] = r.symmetric_sidon_morse;
  if (r.odd_witness) {
    j["odd_witness"] = {{"x0", rational_json(r.odd_witness->x0)},
                        {"delta", rational_json(r.odd_witness->delta)},
                        {"g", poly_json(r.odd_witness->g)}};
  } else {
    j["odd_witness"] = nullptr;
  }
  j["indecomposable"] = r.indecomposable;
  if (r.decomposition) {
    j["decomposition"] = {{"outer", poly_json(r.decomposition->outer)}, {"inner", poly_json(r.decomposition->inner)}};
  } else {
    j["decomposition"] = nullptr;
  }
  j["dickson_param"] = r.dickson_param ? json(rational_json(*r.dickson_param)) : json(nullptr);
  j["fried"] = to_string(fried_predict(r.poly));
  j["verdict"] = to_string(r.verdict);
  j["definite"] = r.definite();
  json certs = json::array();
  for (const auto& c : r.certificates) {
    json e{{"prime", c.prime}, {"morse", c.morse}, {"sidon", c.sidon}, {"verdict", to_string(c.verdict)}};
    e["symmetric_sidon"] = c.symmetric_sidon ? json(*c.symmetric_sidon) : json(nullptr);
    certs.push_back(std::move(e));
  }
  j["certificates"] = std::move(certs);
  return j.dump(2) + "\n";
}

Table moments_table(const std::vector<MomentReport>& reps, const MomentOptions& opts) {
  Table t;
  t.columns = {"p", "status"};
  for (int e : opts.exponents) t.columns.push_back("m" + std::to_string(e));
  if (opts.group) {
    t.meta.emplace_back("group", std::string(to_string(opts.group->family)) + "(" + std::to_string(opts.group->n) + ")");
    for (int e : opts.exponents) {
      if (e % 2) continue;
      t.columns.push_back("ref" + std::to_string(e));
      t.columns.push_back("exact" + std::to_string(e));
      t.columns.push_back("disc" + std::to_string(e));
    }
  }
  if (opts.oracles) {
    t.columns.push_back("oracle2");
    t.columns.push_back("oracle4");
  }
  for (const auto& r : reps) {
    std::vector<Cell> row{r.p, r.error.empty() ? std::string("ok") : r.error};
    const bool ok = r.error.empty();
    for (int e : opts.exponents) row.push_back(ok ? Cell{r.moments.at(e)} : Cell{});
    if (opts.group) {
      for (int e : opts.exponents) {
        if (e % 2) continue;
        if (ok) {
          row.push_back(r.reference.at(e).value);
          row.push_back(r.reference.at(e).exact);
          row.push_back(r.scaled_discrepancy.at(e));
        } else {
          row.insert(row.end(), 3, Cell{});
        }
      }
    }
    if (opts.oracles) {
      row.push_back(ok ? Cell{r.oracle.at(2)} : Cell{});
      row.push_back(ok ? Cell{r.oracle.at(4)} : Cell{});
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table dichotomy_table(const DichotomyReport& r, double threshold) {
  Table t;
  t.columns = {"p", "m1", "m2", "near_two", "high", "resolvable"};
  t.meta.emplace_back("threshold", threshold);
  t.meta.emplace_back("high_fraction", r.high_fraction);
  t.meta.emplace_back("verdict", std::string(to_string(r.verdict)));
  for (const auto& w : r.warnings) t.meta.emplace_back("warning", w);
  for (const auto& row : r.rows) t.rows.push_back({row.p, row.m1, row.m2, row.near_two, row.high, row.resolvable});
  return t;
}

Table shao_table(const std::vector<ShaoPoint>& pts, int kappa) {
  Table t;
  t.columns = {"x", "sum", "drift", "primes", "low_confidence"};
  t.meta.emplace_back("kappa", static_cast<std::int64_t>(kappa));
  for (const auto& s : pts) t.rows.push_back({s.x, s.sum, s.drift, static_cast<std::uint64_t>(s.primes), s.low_confidence});
  return t;
}

Table sweep_table(const SweepReport& r, const std::vector<int>& exponents) {
  Table t;
  t.columns = {"x"};
  for (int j : exponents) {
    t.columns.push_back("sum" + std::to_string(j));
    t.columns.push_back("ratio" + std::to_string(j));
  }
  const bool has4 = r.rows.empty() ? false : r.rows.front().sums.count(4) > 0;
  if (has4) t.columns.push_back("lower_ratio4");
  t.columns.push_back("envelope");
  t.columns.push_back("sum1_over_envelope");
  std::string ids;
  for (const auto& id : r.poly_ids) ids += (ids.empty() ? "" : ";") + id;
  t.meta.emplace_back("polys", ids);
  t.meta.emplace_back("a", static_cast<std::int64_t>(r.a));
  t.meta.emplace_back("A", static_cast<std::int64_t>(r.A));
  t.meta.emplace_back("s", static_cast<std::int64_t>(r.s));
  t.meta.emplace_back("gamma_hat", r.gamma_hat);
  t.meta.emplace_back("M", r.envelope.M);
  for (const auto& row : r.rows) {
    std::vector<Cell> c{row.x};
    for (int j : exponents) {
      c.push_back(row.sums.at(j));
      c.push_back(row.ratios.at(j));
    }
    if (has4) c.push_back(row.lower_ratio4);
    c.push_back(row.envelope);
    auto s1 = row.sums.find(1);
    c.push_back(s1 != row.sums.end() && row.envelope > 0 ? Cell{s1->second / row.envelope} : Cell{});
    t.rows.push_back(std::move(c));
  }
  return t;
}

}  // namespace expsum
