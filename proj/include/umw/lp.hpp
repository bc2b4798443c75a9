#pragma once

#include <vector>

#include <gmpxx.h>

namespace umw::lp {

enum class Sense { le, eq, ge };

struct Row {
    std::vector<mpq_class> coeffs;
    Sense sense = Sense::le;
    mpq_class rhs = 0;
};

/// maximize objective . x subject to rows, x >= 0.
struct Problem {
    int variables = 0;
    std::vector<mpq_class> objective;
    std::vector<Row> rows;
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
    Status status = Status::infeasible;
    mpq_class value = 0;
    std::vector<mpq_class> x;
};

/// Two-phase dense tableau simplex over exact rationals. Bland's rule
/// (lowest-index entering and leaving variables) rules out cycling on the
/// heavily degenerate systems the capacity oracle produces.
Solution solve(const Problem& problem);

}  // namespace umw::lp
