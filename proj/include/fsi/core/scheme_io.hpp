#pragma once

// Plain-text scheme documents.
//
//   fsi-scheme 1
//   name = C
//   nominal_order = 4
//   family = 4acb              (optional: second-order | 4acb, with t0/alpha)
//   t0 = 0.16666666666666666
//   alpha = 0
//   stage = drift 0.16666666666666666
//   stage = kick 0.375 0.0026041666666666665
//   ...
//
// One "key = value" per line; '#' starts a comment. Stages are applied in file
// order. A kick's second number is its gradient weight and may be omitted.
// Numbers are decimal literals or exact ratios such as 1/6.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fsi/core/scheme.hpp"

namespace fsi {

inline constexpr std::string_view kSchemeMagic = "fsi-scheme 1";

namespace detail {

template <RealNumber Real>
std::string formatExact(const Real& x) {
  if constexpr (std::same_as<Real, Extended>) {
    return formatReal(x);
  } else {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
  }
}

inline std::vector<std::string_view> splitWords(std::string_view s) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
      ++i;
    }
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') {
      ++i;
    }
    if (i > b) {
      words.push_back(s.substr(b, i - b));
    }
  }
  return words;
}

}  // namespace detail

template <RealNumber Real>
[[nodiscard]] std::string saveScheme(const SplittingScheme<Real>& s) {
  std::ostringstream out;
  out << kSchemeMagic << '\n';
  out << "name = " << s.name << '\n';
  out << "nominal_order = " << s.nominalOrder << '\n';
  if (s.params && s.params->family != SchemeFamily::Custom) {
    out << "family = " << (s.params->family == SchemeFamily::SecondOrder ? "second-order" : "4acb")
        << '\n';
    out << "t0 = " << detail::formatExact(s.params->t0) << '\n';
    out << "alpha = " << detail::formatExact(s.params->alpha) << '\n';
  }
  for (const auto& st : s.stages) {
    if (st.kind == StageKind::Drift) {
      out << "stage = drift " << detail::formatExact(st.weight) << '\n';
    } else {
      out << "stage = kick " << detail::formatExact(st.weight);
      if (st.gradWeight != 0) {
        out << ' ' << detail::formatExact(st.gradWeight);
      }
      out << '\n';
    }
  }
  return out.str();
}

template <RealNumber Real>
[[nodiscard]] SplittingScheme<Real> loadScheme(std::string_view doc) {
  SplittingScheme<Real> s;
  bool haveMagic = false;
  bool haveName = false;
  bool haveOrder = false;
  std::optional<SchemeFamily> family;
  std::optional<Real> t0;
  std::optional<Real> alpha;
  std::size_t lineNo = 0;

  auto fail = [&](const std::string& msg) -> ValidationError {
    return ValidationError("scheme document line " + std::to_string(lineNo) + ": " + msg);
  };

  std::size_t pos = 0;
  while (pos <= doc.size()) {
    const std::size_t eol = doc.find('\n', pos);
    std::string_view line = doc.substr(pos, eol == std::string_view::npos ? doc.npos : eol - pos);
    pos = eol == std::string_view::npos ? doc.size() + 1 : eol + 1;
    ++lineNo;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) {
      continue;
    }
    if (!haveMagic) {
      if (line != kSchemeMagic) {
        throw fail("expected header '" + std::string(kSchemeMagic) + "'");
      }
      haveMagic = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw fail("expected 'key = value'");
    }
    const std::string_view key = detail::trim(line.substr(0, eq));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    try {
      if (key == "name") {
        s.name = std::string(value);
        haveName = true;
      } else if (key == "nominal_order") {
        int order = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), order);
        if (ec != std::errc{} || ptr != value.data() + value.size()) {
          throw fail("nominal_order must be an integer");
        }
        s.nominalOrder = order;
        haveOrder = true;
      } else if (key == "family") {
        if (value == "second-order") {
          family = SchemeFamily::SecondOrder;
        } else if (value == "4acb") {
          family = SchemeFamily::ForceGradient4;
        } else {
          throw fail("unknown family '" + std::string(value) + "'");
        }
      } else if (key == "t0") {
        t0 = parseReal<Real>(value);
      } else if (key == "alpha") {
        alpha = parseReal<Real>(value);
      } else if (key == "stage") {
        const auto words = detail::splitWords(value);
        if (words.empty()) {
          throw fail("empty stage");
        }
        if (words[0] == "drift") {
          if (words.size() != 2) {
            throw fail("drift takes exactly one weight");
          }
          s.stages.push_back(drift(parseReal<Real>(words[1])));
        } else if (words[0] == "kick") {
          if (words.size() != 2 && words.size() != 3) {
            throw fail("kick takes a weight and an optional gradient weight");
          }
          const Real u = words.size() == 3 ? parseReal<Real>(words[2]) : Real(0);
          s.stages.push_back(kick(parseReal<Real>(words[1]), u));
        } else {
          throw fail("stage kind must be drift or kick");
        }
      } else {
        throw fail("unknown key '" + std::string(key) + "'");
      }
    } catch (const ValidationError& e) {
      const std::string msg = e.what();
      if (msg.rfind("scheme document", 0) == 0) {
        throw;
      }
      throw fail(msg);
    }
  }
  if (!haveMagic) {
    throw ValidationError("scheme document: empty");
  }
  if (!haveName) {
    throw ValidationError("scheme document: missing 'name'");
  }
  if (!haveOrder) {
    throw ValidationError("scheme document: missing 'nominal_order'");
  }
  if (family) {
    s.params = FamilyParams<Real>{*family, t0.value_or(Real(0)), alpha.value_or(Real(0))};
    if (*family == SchemeFamily::ForceGradient4 &&
        (s.params->t0 < 0 || s.params->t0 > forwardLimitT0<Real>())) {
      s.warnings.emplace_back("not forward: t0 outside [0, t_c]");
    }
  } else if (t0 || alpha) {
    throw ValidationError("scheme document: t0/alpha given without 'family'");
  }
  validateScheme(s);
  return s;
}

template <RealNumber Real>
[[nodiscard]] SplittingScheme<Real> loadSchemeFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open scheme file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return loadScheme<Real>(buf.str());
}

}  // namespace fsi
