#pragma once

#include "chow/divisor.hpp"
#include "chow/matroid.hpp"

#include <string>
#include <vector>

namespace chow {

// "E" for the full ground set, "{0,2}" otherwise.
std::string format_flat(const Matroid& m, Mask f);

// "D{0,1}^3 * D{0,1,2}^2 * D{E}" with factors in canonical flat order.
std::string format_monomial(const Matroid& m, const DivisorMonomial& mono);

// Inverse of format_flat; accepts "E", "{}", "{0,1,2}".
Mask parse_flat(const Matroid& m, const std::string& text);

// Inverse of format_monomial; every factor must name a flat of m. Repeated
// factors accumulate. The empty string is the unit monomial.
DivisorMonomial parse_monomial(const Matroid& m, const std::string& text);

// "psi-{0,1} * psi-{E}" into the list of flats.
std::vector<Mask> parse_psi_product(const Matroid& m, const std::string& text);

} // namespace chow
