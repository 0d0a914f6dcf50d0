#pragma once

#include <string>

namespace polypell::detail {

// Unqualified calls resolved by argument-dependent lookup at instantiation;
// class templates with an is_zero() member route through these.
template <class T>
bool coeff_is_zero(const T& x) { return is_zero(x); }

template <class T>
std::string coeff_to_string(const T& x) { return to_string(x); }

}  // namespace polypell::detail
