#pragma once

#include "m2s/instance.hpp"

namespace m2s {

// Linear-time 2-SAT decision: builds the 2n-node implication graph (clause
// (a v b) contributes edges !a -> b and !b -> a) and reports satisfiable iff
// no variable shares a strongly connected component with its negation.
bool two_sat_satisfiable(const Instance& inst);

}  // namespace m2s
