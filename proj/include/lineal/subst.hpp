#pragma once

#include <set>
#include <string>

#include "lineal/canon.hpp"
#include "lineal/term.hpp"

namespace lineal {

// A name not occurring in avoid, derived from base by priming.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// Capture-avoiding substitution of replacement for every free occurrence of
// name in t; the result is re-canonicalized under the given sum mode.
TermPtr substitute(const TermPtr& t, const std::string& name, const TermPtr& replacement,
                   SumMode mode = SumMode::Ac);

}  // namespace lineal
