#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fsi/precision.hpp"

namespace fsilab {

/// 17 significant digits: enough to round-trip any double.
inline std::string num(double x) { return fsi::formatReal(x, 17); }

inline std::string num(long double x) { return num(static_cast<double>(x)); }

inline std::string num(const fsi::Extended& x) { return num(x.convert_to<double>()); }

/// Full working precision of an extended value.
inline std::string numExt(const fsi::Extended& x) {
  return fsi::formatReal(x, static_cast<int>(fsi::Extended::default_precision()));
}

/// Comma-separated rows; '#' lines carry the run stamp and summaries.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void comment(const std::string& text) { os_ << "# " << text << '\n'; }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) {
        os_ << ',';
      }
      os_ << cells[i];
    }
    os_ << '\n';
  }

 private:
  std::ostream& os_;
};

}  // namespace fsilab
