#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlicz/orlicz_spec.hpp"
#include "orlicz/sampled_function.hpp"

namespace orlicz {

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr const char* kLibraryVersion = "0.1.0";

/// JSON form of an OrliczSpec. Closed-form kinds serialize their parameters
/// losslessly; Tabulated serializes the normalized samples (u, value(u)) plus
/// the extrapolation exponents, so a round trip reproduces evaluations to
/// floating-point rounding.
inline nlohmann::json to_json(const OrliczSpec& spec) {
  using nlohmann::json;
  return std::visit(
      [&](const auto& k) -> json {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, OrliczSpec::Power>) {
          return json{{"kind", "power"}, {"p", k.p}};
        } else if constexpr (std::is_same_v<T, OrliczSpec::PowerLog>) {
          return json{{"kind", "powerlog"}, {"p", k.p}, {"a_zero", k.a_zero}, {"a_inf", k.a_inf}};
        } else if constexpr (std::is_same_v<T, OrliczSpec::Spliced>) {
          return json{{"kind", "spliced"},
                      {"low", to_json(*k.low)},
                      {"high", to_json(*k.high)},
                      {"knot", std::exp(k.log_knot)}};
        } else {
          std::vector<double> u(k.log_u.size()), v(k.log_u.size());
          for (std::size_t i = 0; i < k.log_u.size(); ++i) {
            u[i] = std::exp(k.log_u[i]);
            v[i] = std::exp(spec.log_eval(k.log_u[i]));
          }
          json j{{"kind", "tabulated"}, {"u", u}, {"v", v}};
          if (!std::isnan(k.ext_low)) j["ext_low"] = k.ext_low;
          if (!std::isnan(k.ext_high)) j["ext_high"] = k.ext_high;
          return j;
        }
      },
      spec.kind());
}

inline OrliczSpec spec_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "power") return OrliczSpec::power(j.at("p").get<double>());
  if (kind == "powerlog")
    return OrliczSpec::power_log(j.at("p").get<double>(), j.value("a_zero", 0.0),
                                 j.value("a_inf", 0.0));
  if (kind == "spliced")
    return OrliczSpec::spliced(spec_from_json(j.at("low")), spec_from_json(j.at("high")),
                               j.at("knot").get<double>());
  if (kind == "tabulated") {
    auto u = j.at("u").get<std::vector<double>>();
    auto v = j.at("v").get<std::vector<double>>();
    const double el = j.value("ext_low", std::nan(""));
    const double eh = j.value("ext_high", std::nan(""));
    return OrliczSpec::tabulated(std::move(u), std::move(v), el, eh);
  }
  throw std::invalid_argument("spec_from_json: unknown kind '" + kind + "'");
}

/// JSON form of a profile on (0,1]:
///   {"kind":"power_decay","exponent":e,"log_exponent":a}  — t^{-e} ln^a(e/t)
///   {"kind":"constant","value":c}
///   {"kind":"indicator","height":h,"width":w}
///   {"kind":"samples","t":[...],"v":[...],"nonincreasing":bool}
inline SampledRealFunction profile_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "power_decay")
    return SampledRealFunction::power_decay(j.at("exponent").get<double>(),
                                            j.value("log_exponent", 0.0));
  if (kind == "constant") return SampledRealFunction::constant(j.at("value").get<double>());
  if (kind == "indicator")
    return SampledRealFunction::indicator(j.at("height").get<double>(),
                                          j.at("width").get<double>());
  if (kind == "samples")
    return SampledRealFunction::from_samples(Domain::UnitInterval,
                                             j.at("t").get<std::vector<double>>(),
                                             j.at("v").get<std::vector<double>>(),
                                             j.value("nonincreasing", false));
  throw std::invalid_argument("profile_from_json: unknown kind '" + kind + "'");
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("parse error in " + path + ": " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

/// CSV curve writer: stable column order, '#'-prefixed header documentation
/// line followed by the column names.
inline void save_csv(const std::string& path, const std::string& comment,
                     const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "# " << comment << "\n";
  for (std::size_t c = 0; c < columns.size(); ++c)
    out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
  out.precision(17);
  for (const auto& r : rows) {
    if (r.size() != columns.size()) throw std::invalid_argument("save_csv: ragged row");
    for (std::size_t c = 0; c < r.size(); ++c) out << r[c] << (c + 1 < r.size() ? "," : "\n");
  }
}

}  // namespace orlicz
