#pragma once

// Numeric plumbing shared by every module: the extended-precision type,
// precision scoping, and exact decimal conversion for double and Extended.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <charconv>
#include <cmath>
#include <concepts>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>

#include "fsi/error.hpp"

namespace fsi {

/// Runtime-precision binary float (MPFR). Expression templates are disabled so
/// generic code can use `auto` safely.
using Extended = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultDigits = 60;

template <class T>
concept RealNumber = std::same_as<T, double> || std::same_as<T, long double> ||
                     std::same_as<T, Extended>;

/// Sets the default Extended precision (decimal digits) for its lifetime.
/// The default is process-wide, so set it before spawning workers.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits) : saved_(Extended::default_precision()) {
    Extended::default_precision(digits);
  }
  ~PrecisionScope() { Extended::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

namespace detail {
// Extended starts at kDefaultDigits rather than the backend's 20.
inline const bool kDefaultPrecisionApplied = [] {
  Extended::default_precision(kDefaultDigits);
  return true;
}();
}  // namespace detail

template <RealNumber Real>
[[nodiscard]] inline Real pi() {
  return boost::math::constants::pi<Real>();
}

template <RealNumber To, RealNumber From>
[[nodiscard]] inline To real_cast(const From& x) {
  if constexpr (std::same_as<To, From>) {
    return x;
  } else if constexpr (std::same_as<From, Extended>) {
    return x.template convert_to<To>();
  } else {
    return To(x);
  }
}

[[nodiscard]] inline bool isFinite(double x) { return std::isfinite(x); }
[[nodiscard]] inline bool isFinite(long double x) { return std::isfinite(x); }
[[nodiscard]] inline bool isFinite(const Extended& x) { return boost::multiprecision::isfinite(x); }

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <RealNumber Real>
Real parseDecimal(std::string_view text) {
  text = trim(text);
  if (text.empty()) {
    throw ValidationError("empty numeric literal");
  }
  if constexpr (std::same_as<Real, Extended>) {
    // Validate the literal with the double parser first; MPFR silently accepts junk.
    double probe = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), probe);
    if (ec == std::errc::invalid_argument || ptr != text.data() + text.size()) {
      throw ValidationError("malformed numeric literal '" + std::string(text) + "'");
    }
    return Extended(std::string(text));
  } else {
    Real value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw ValidationError("malformed numeric literal '" + std::string(text) + "'");
    }
    return value;
  }
}

}  // namespace detail

/// Parses a decimal literal or an exact ratio "a/b" (e.g. "1/6").
template <RealNumber Real>
[[nodiscard]] Real parseReal(std::string_view text) {
  text = detail::trim(text);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Real num = detail::parseDecimal<Real>(text.substr(0, slash));
    const Real den = detail::parseDecimal<Real>(text.substr(slash + 1));
    if (den == 0) {
      throw ValidationError("zero denominator in '" + std::string(text) + "'");
    }
    return num / den;
  }
  return detail::parseDecimal<Real>(text);
}

/// Shortest round-trip text for doubles; `digits` significant digits for Extended.
[[nodiscard]] inline std::string formatReal(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

[[nodiscard]] inline std::string formatReal(double x, int significantDigits) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, significantDigits);
  return std::string(buf, ptr);
}

[[nodiscard]] inline std::string formatReal(const Extended& x, int significantDigits) {
  return x.str(significantDigits, std::ios_base::scientific);
}

[[nodiscard]] inline std::string formatReal(const Extended& x) {
  return formatReal(x, static_cast<int>(Extended::default_precision()));
}

}  // namespace fsi
