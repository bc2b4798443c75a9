#include "umw/lp.hpp"

#include <cstddef>
#include <optional>

#include "umw/error.hpp"

namespace umw::lp {

namespace {

class Tableau {
  public:
    Tableau(std::size_t rows, std::size_t cols) : a_(rows, std::vector<mpq_class>(cols)), b_(rows), basis_(rows) {}

    std::vector<std::vector<mpq_class>> a_;
    std::vector<mpq_class> b_;
    std::vector<std::size_t> basis_;

    std::size_t rows() const { return a_.size(); }
    std::size_t cols() const { return a_.empty() ? 0 : a_[0].size(); }

    void pivot(std::size_t r, std::size_t c, std::vector<mpq_class>& reduced, mpq_class& value) {
        const mpq_class p = a_[r][c];
        for (auto& x : a_[r]) x /= p;
        b_[r] /= p;
        for (std::size_t i = 0; i < rows(); ++i) {
            if (i == r || sgn(a_[i][c]) == 0) continue;
            const mpq_class f = a_[i][c];
            for (std::size_t j = 0; j < cols(); ++j) {
                if (sgn(a_[r][j]) != 0) a_[i][j] -= f * a_[r][j];
            }
            b_[i] -= f * b_[r];
        }
        if (sgn(reduced[c]) != 0) {
            const mpq_class f = reduced[c];
            for (std::size_t j = 0; j < cols(); ++j) {
                if (sgn(a_[r][j]) != 0) reduced[j] -= f * a_[r][j];
            }
            value += f * b_[r];
        }
        basis_[r] = c;
    }

    // Reduced costs c_j - c_B B^-1 A_j for a maximization objective.
    std::vector<mpq_class> reduced_costs(const std::vector<mpq_class>& cost, mpq_class& value) const {
        std::vector<mpq_class> d = cost;
        value = 0;
        for (std::size_t i = 0; i < rows(); ++i) {
            const mpq_class& cb = cost[basis_[i]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j < cols(); ++j) d[j] -= cb * a_[i][j];
            value += cb * b_[i];
        }
        return d;
    }

    // Runs Bland-rule pivots over the columns flagged in `allowed`.
    Status optimize(const std::vector<mpq_class>& cost, const std::vector<char>& allowed, mpq_class& value) {
        std::vector<mpq_class> d = reduced_costs(cost, value);
        for (;;) {
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < cols(); ++j) {
                if (allowed[j] && sgn(d[j]) > 0) {
                    enter = j;
                    break;
                }
            }
            if (!enter) return Status::optimal;
            std::optional<std::size_t> leave;
            mpq_class best_ratio;
            for (std::size_t i = 0; i < rows(); ++i) {
                if (sgn(a_[i][*enter]) <= 0) continue;
                mpq_class ratio = b_[i] / a_[i][*enter];
                if (!leave || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (!leave) return Status::unbounded;
            pivot(*leave, *enter, d, value);
        }
    }

    void drop_row(std::size_t r) {
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
        b_.erase(b_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    }
};

}  // namespace

Solution solve(const Problem& problem) {
    const auto n = static_cast<std::size_t>(problem.variables);
    if (problem.objective.size() != n) {
        throw ValidationError("LP objective length does not match the variable count");
    }

    // Normalize to nonnegative right-hand sides.
    std::vector<Row> rows = problem.rows;
    for (Row& row : rows) {
        if (row.coeffs.size() != n) {
            throw ValidationError("LP row length does not match the variable count");
        }
        if (sgn(row.rhs) < 0) {
            for (auto& c : row.coeffs) c = -c;
            row.rhs = -row.rhs;
            if (row.sense == Sense::le) {
                row.sense = Sense::ge;
            } else if (row.sense == Sense::ge) {
                row.sense = Sense::le;
            }
        }
    }

    std::size_t slacks = 0;
    std::size_t artificials = 0;
    for (const Row& row : rows) {
        if (row.sense != Sense::eq) ++slacks;
        if (row.sense != Sense::le) ++artificials;
    }
    const std::size_t cols = n + slacks + artificials;
    Tableau t(rows.size(), cols);
    std::size_t next_slack = n;
    std::size_t next_art = n + slacks;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) t.a_[i][j] = rows[i].coeffs[j];
        t.b_[i] = rows[i].rhs;
        switch (rows[i].sense) {
            case Sense::le:
                t.a_[i][next_slack] = 1;
                t.basis_[i] = next_slack++;
                break;
            case Sense::ge:
                t.a_[i][next_slack++] = -1;
                t.a_[i][next_art] = 1;
                t.basis_[i] = next_art++;
                break;
            case Sense::eq:
                t.a_[i][next_art] = 1;
                t.basis_[i] = next_art++;
                break;
        }
    }

    Solution sol;
    std::vector<char> allowed(cols, 1);
    if (artificials > 0) {
        std::vector<mpq_class> phase1(cols, 0);
        for (std::size_t j = n + slacks; j < cols; ++j) phase1[j] = -1;
        mpq_class value;
        t.optimize(phase1, allowed, value);
        if (sgn(value) < 0) {
            sol.status = Status::infeasible;
            return sol;
        }
        // Pivot zero-valued artificials out of the basis; rows that cannot be
        // pivoted are linearly dependent and carry no constraint.
        for (std::size_t i = 0; i < t.rows();) {
            if (t.basis_[i] < n + slacks) {
                ++i;
                continue;
            }
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < n + slacks; ++j) {
                if (sgn(t.a_[i][j]) != 0) {
                    col = j;
                    break;
                }
            }
            if (!col) {
                t.drop_row(i);
                continue;
            }
            std::vector<mpq_class> dummy(cols, 0);
            mpq_class dv;
            t.pivot(i, *col, dummy, dv);
            ++i;
        }
        for (std::size_t j = n + slacks; j < cols; ++j) allowed[j] = 0;
    }

    std::vector<mpq_class> cost(cols, 0);
    for (std::size_t j = 0; j < n; ++j) cost[j] = problem.objective[j];
    mpq_class value;
    sol.status = t.optimize(cost, allowed, value);
    if (sol.status != Status::optimal) {
        return sol;
    }
    sol.value = value;
    sol.x.assign(n, 0);
    for (std::size_t i = 0; i < t.rows(); ++i) {
        if (t.basis_[i] < n) sol.x[t.basis_[i]] = t.b_[i];
    }
    return sol;
}

}  // namespace umw::lp
