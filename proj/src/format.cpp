#include "opcalc/format.hpp"

namespace opcalc {

std::string format_terms(const std::vector<std::pair<Rational, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [coef, mono] : terms) {
    const bool negative = sgn(coef) < 0;
    const Rational magnitude = abs(coef);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (mono.empty()) {
      out += to_string(magnitude);
    } else if (magnitude == 1) {
      out += mono;
    } else {
      out += to_string(magnitude) + '*' + mono;
    }
  }
  return out;
}

}  // namespace opcalc
