#pragma once

// Shared fixtures for the test suites.

#include <vector>

#include "m2s/instance.hpp"

namespace m2s::test {

// The six-clause, three-variable formula used as the worked example
// throughout the suites:
//   (x1 v x2)(!x1 v x2)(x1 v !x3)(!x1 v x3)(!x2 v x3)(!x2 v !x3)
// Four optimal assignments satisfy five of the six clauses; the all-true
// assignment is one of them. Not satisfiable.
inline Instance worked_example() {
    Instance inst;
    inst.n = 3;
    inst.id = "worked-example";
    inst.clauses = {make_clause(1, 2),  make_clause(-1, 2), make_clause(1, -3),
                    make_clause(-1, 3), make_clause(-2, 3), make_clause(-2, -3)};
    return inst;
}

inline Instance zero_clause_instance(int n) {
    Instance inst;
    inst.n = n;
    inst.id = "empty-n" + std::to_string(n);
    return inst;
}

}  // namespace m2s::test
