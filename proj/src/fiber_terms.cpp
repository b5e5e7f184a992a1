#include "opcalc/fiber_terms.hpp"

namespace opcalc {

std::string to_string(const OrderValue& order) { return order ? std::to_string(*order) : std::string("none"); }

}  // namespace opcalc
