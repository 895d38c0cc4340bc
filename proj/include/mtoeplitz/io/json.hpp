#pragma once

#include <cmath>
#include <string>

#include "json.hpp"
#include "mtoeplitz/bracket.hpp"
#include "mtoeplitz/error.hpp"
#include "mtoeplitz/experiments/report.hpp"
#include "mtoeplitz/rational.hpp"
#include "mtoeplitz/symbol.hpp"

namespace mtoeplitz {

using nlohmann::json;

/// Extended reals: infinity is written as the string "inf".
inline json extended_real_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

inline double extended_real_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kInfinity;
    throw PreconditionFailed("expected a number or \"inf\", got \"" + s + "\"");
  }
  if (!j.is_number()) throw PreconditionFailed("expected a number");
  return j.get<double>();
}

// ---------------------------------------------------------------------------
// SymbolSpec
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t parse_index(const std::string& s) {
  const auto q = PositiveRational::parse(s);
  if (!q.is_integer()) throw PreconditionFailed("expected an integer key, got '" + s + "'");
  return q.num();
}

inline std::pair<std::uint64_t, std::uint32_t> parse_prime_power_key(const std::string& s) {
  const auto caret = s.find('^');
  if (caret == std::string::npos) return {parse_index(s), 1};
  return {parse_index(s.substr(0, caret)), static_cast<std::uint32_t>(parse_index(s.substr(caret + 1)))};
}

inline const json& require_field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw PreconditionFailed(std::string("symbol JSON is missing field '") + name + "'");
  }
  return j.at(name);
}

}  // namespace detail

inline json symbol_to_json(const SymbolSpec& f) {
  json j;
  switch (f.kind()) {
    case SymbolKind::power_on_naturals:
      j["kind"] = "power";
      j["alpha"] = f.get_if<PowerOnNaturals>()->alpha;
      break;
    case SymbolKind::product_power:
      j["kind"] = "prodpow";
      j["alpha"] = f.get_if<ProductPower>()->alpha;
      j["beta"] = f.get_if<ProductPower>()->beta;
      break;
    case SymbolKind::tabulated_naturals: {
      j["kind"] = "tab_naturals";
      json v = json::object();
      for (const auto& [n, x] : f.get_if<TabulatedNaturals>()->values) v[std::to_string(n)] = x;
      j["values"] = v;
      break;
    }
    case SymbolKind::tabulated_rationals: {
      j["kind"] = "tab_rationals";
      json v = json::object();
      for (const auto& [q, x] : f.get_if<TabulatedRationals>()->values) v[q.to_string()] = x;
      j["values"] = v;
      break;
    }
    case SymbolKind::completely_multiplicative: {
      j["kind"] = "completely_multiplicative";
      json v = json::object();
      for (const auto& [t, x] : f.get_if<CompletelyMultiplicative>()->prime_values) {
        v[std::to_string(t)] = x;
      }
      j["prime_values"] = v;
      break;
    }
    case SymbolKind::multiplicative: {
      const auto& m = *f.get_if<Multiplicative>();
      j["kind"] = "multiplicative";
      json v = json::object();
      for (const auto& [key, x] : m.prime_power_values) {
        v[std::to_string(key.first) + "^" + std::to_string(key.second)] = x;
      }
      j["prime_power_values"] = v;
      j["zero_beyond_table"] = m.zero_beyond_table;
      break;
    }
  }
  return j;
}

inline SymbolSpec symbol_from_json(const json& j) {
  const auto kind = detail::require_field(j, "kind").get<std::string>();
  if (kind == "power") return SymbolSpec::power(detail::require_field(j, "alpha").get<double>());
  if (kind == "prodpow") {
    return SymbolSpec::product_power(detail::require_field(j, "alpha").get<double>(),
                                     detail::require_field(j, "beta").get<double>());
  }
  if (kind == "tab_naturals") {
    std::map<std::uint64_t, double> v;
    for (const auto& [k, x] : detail::require_field(j, "values").items()) {
      v[detail::parse_index(k)] = x.get<double>();
    }
    return SymbolSpec::tabulated(std::move(v));
  }
  if (kind == "tab_rationals") {
    std::map<PositiveRational, double> v;
    for (const auto& [k, x] : detail::require_field(j, "values").items()) {
      v[PositiveRational::parse(k)] = x.get<double>();
    }
    return SymbolSpec::tabulated(std::move(v));
  }
  if (kind == "completely_multiplicative") {
    std::map<std::uint64_t, double> v;
    for (const auto& [k, x] : detail::require_field(j, "prime_values").items()) {
      v[detail::parse_index(k)] = x.get<double>();
    }
    return SymbolSpec::completely_multiplicative(std::move(v));
  }
  if (kind == "multiplicative") {
    std::map<std::pair<std::uint64_t, std::uint32_t>, double> v;
    for (const auto& [k, x] : detail::require_field(j, "prime_power_values").items()) {
      v[detail::parse_prime_power_key(k)] = x.get<double>();
    }
    const bool zero = j.value("zero_beyond_table", false);
    return SymbolSpec::multiplicative(std::move(v), zero);
  }
  throw PreconditionFailed("unknown symbol kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// NormBracket and ExperimentReport
// ---------------------------------------------------------------------------

inline json bracket_to_json(const NormBracket& b) {
  json params = {{"c", b.witness_params.c}};
  if (b.witness_params.T) params["T"] = b.witness_params.T;
  if (b.witness_params.k) params["k"] = b.witness_params.k;
  if (b.witness_params.M) params["M"] = b.witness_params.M;
  if (b.witness_kind == WitnessKind::ascent) params["iterations"] = b.witness_params.iterations;
  return {
      {"p", extended_real_to_json(b.p)},
      {"q", extended_real_to_json(b.q)},
      {"r", extended_real_to_json(b.r)},
      {"lower", b.lower},
      {"upper", b.upper ? json(*b.upper) : json("diverges")},
      {"witnessKind", to_string(b.witness_kind)},
      {"witnessParams", params},
      {"N", b.N},
      {"iterations", b.iterations},
      {"elapsed_ms", b.elapsed_ms},
  };
}

inline json report_to_json(const ExperimentReport& r) {
  json m = json::object();
  for (const auto& [name, s] : r.measurements) {
    json arr = json::array();
    for (double v : s) arr.push_back(extended_real_to_json(v));
    m[name] = arr;
  }
  json tol = json::object();
  for (const auto& [name, v] : r.tolerances) tol[name] = v;
  return {
      {"id", r.id},
      {"config", r.config},
      {"measurements", m},
      {"verdict", to_string(r.verdict)},
      {"tolerances", tol},
      {"notes", r.notes},
  };
}

}  // namespace mtoeplitz
