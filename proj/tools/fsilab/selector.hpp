#pragma once

// Scheme selectors: "builtin:NAME", "builtin:NAME(key=value,...)" or
// "file:PATH". Numbers may be ratios ("1/6") and are parsed in the target
// Real type, so builtin:TI is exact in extended precision.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fsi/core/scheme.hpp"
#include "fsi/core/scheme_io.hpp"

namespace fsilab {

struct BuiltinInfo {
  std::string name;
  std::string family;
  std::string params;
  int order;
  std::string note;
};

inline const std::vector<BuiltinInfo>& builtinSchemes() {
  static const std::vector<BuiltinInfo> list = {
      {"leapfrog", "second-order", "alpha=0", 2, "velocity Verlet, DKD"},
      {"TI", "second-order", "alpha=1/24", 2, "correctable: phase error starts at fourth order"},
      {"second-order", "second-order", "alpha", 2, "[D 1/2, K(1, alpha), D 1/2]"},
      {"C", "4acb", "t0=1/6,alpha=0", 4, "one force gradient, three forces"},
      {"Opt-C", "4acb", "t0=0.166160,alpha=0", 4, "precession-optimised at e = 0.936"},
      {"4acb", "4acb", "t0,alpha", 4, "seven-stage forward family"},
  };
  return list;
}

namespace detail {

inline std::map<std::string, std::string> parseParams(std::string_view body) {
  std::map<std::string, std::string> out;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const auto item = fsi::detail::trim(body.substr(0, comma));
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw fsi::ValidationError("scheme parameter '" + std::string(item) + "' is not key=value");
    }
    const std::string key(fsi::detail::trim(item.substr(0, eq)));
    if (!out.emplace(key, std::string(fsi::detail::trim(item.substr(eq + 1)))).second) {
      throw fsi::ValidationError("scheme parameter '" + key + "' given twice");
    }
  }
  return out;
}

template <fsi::RealNumber Real>
Real take(std::map<std::string, std::string>& params, const std::string& key,
          std::optional<std::string_view> fallback) {
  const auto it = params.find(key);
  if (it == params.end()) {
    if (!fallback) {
      throw fsi::ValidationError("scheme parameter '" + key + "' is required");
    }
    return fsi::parseReal<Real>(*fallback);
  }
  const Real v = fsi::parseReal<Real>(it->second);
  params.erase(it);
  return v;
}

}  // namespace detail

template <fsi::RealNumber Real>
[[nodiscard]] fsi::SplittingScheme<Real> selectScheme(std::string_view selector) {
  using fsi::ValidationError;
  if (selector.starts_with("file:")) {
    return fsi::loadSchemeFile<Real>(std::string(selector.substr(5)));
  }
  if (!selector.starts_with("builtin:")) {
    throw ValidationError("scheme selector '" + std::string(selector) +
                          "' must start with builtin: or file:");
  }
  std::string_view rest = selector.substr(8);
  std::string_view name = rest;
  std::map<std::string, std::string> params;
  if (const auto open = rest.find('('); open != std::string_view::npos) {
    if (!rest.ends_with(')')) {
      throw ValidationError("scheme selector '" + std::string(selector) + "' lacks a closing ')'");
    }
    name = rest.substr(0, open);
    params = detail::parseParams(rest.substr(open + 1, rest.size() - open - 2));
  }

  fsi::SplittingScheme<Real> s;
  bool preset = true;
  if (name == "leapfrog") {
    s = fsi::makeSecondOrder(Real(0));
  } else if (name == "TI") {
    s = fsi::makeSecondOrder(fsi::parseReal<Real>("1/24"));
  } else if (name == "C") {
    s = fsi::make4ACB(fsi::parseReal<Real>("1/6"), Real(0));
  } else if (name == "Opt-C") {
    s = fsi::make4ACB(fsi::parseReal<Real>("0.166160"), Real(0));
  } else if (name == "second-order") {
    preset = false;
    s = fsi::makeSecondOrder(detail::take<Real>(params, "alpha", "0"));
  } else if (name == "4acb") {
    preset = false;
    const Real t0 = detail::take<Real>(params, "t0", std::nullopt);
    s = fsi::make4ACB(t0, detail::take<Real>(params, "alpha", "0"));
  } else {
    throw ValidationError("unknown builtin scheme '" + std::string(name) +
                          "' (see the schemes subcommand)");
  }
  if (!params.empty()) {
    throw ValidationError("unknown parameter '" + params.begin()->first + "' for builtin " +
                          std::string(name));
  }
  if (preset) {
    s.name = std::string(name);
  }
  return s;
}

}  // namespace fsilab
