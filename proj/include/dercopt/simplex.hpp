// Dense two-phase tableau simplex for small LPs, with Bland's rule for
// anti-cycling and row-dual extraction for downstream KKT verification.
// Problem form: minimize c.x subject to a.x {<=,>=,==} b, x >= 0.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "dercopt/common.hpp"

namespace dercopt {

struct LpRow {
    std::vector<double> a;
    double b = 0.0;
    char rel = '<';  // '<' | '>' | '='
};

struct LpProblem {
    std::vector<double> c;  // minimized
    std::vector<LpRow> rows;

    std::size_t n_vars() const { return c.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    std::vector<double> x;
    double objective = 0.0;
    // Row multipliers y_i = c_B B^-1 e_i and structural reduced costs at the
    // optimum; for infeasible problems `farkas` carries the phase-1 row
    // multipliers, for unbounded ones `ray` carries an improving direction.
    std::vector<double> y;
    std::vector<double> reduced_costs;
    std::vector<double> farkas;
    std::vector<double> ray;
};

namespace detail {

class SimplexTableau {
public:
    explicit SimplexTableau(const LpProblem& p) : n_(p.n_vars()), m_(p.rows.size()) {
        rows_ = p.rows;
        flipped_.assign(m_, false);
        for (std::size_t i = 0; i < m_; ++i) {
            auto& r = rows_[i];
            if (r.a.size() != n_) throw ShapeError("simplex: row width mismatch");
            if (r.b < 0.0) {  // normalize rhs >= 0; duals are un-flipped on extraction
                for (auto& v : r.a) v = -v;
                r.b = -r.b;
                r.rel = r.rel == '<' ? '>' : (r.rel == '>' ? '<' : '=');
                flipped_[i] = true;
            }
        }
        // column layout: structural | per-row surplus (for '>') or slack (for '<') | artificials
        std::size_t col = n_;
        slack_col_.assign(m_, SIZE_MAX);
        for (std::size_t i = 0; i < m_; ++i)
            if (rows_[i].rel != '=') slack_col_[i] = col++;
        art_col_.assign(m_, SIZE_MAX);
        for (std::size_t i = 0; i < m_; ++i)
            if (rows_[i].rel != '<') art_col_[i] = col++;
        ncols_ = col;

        t_.assign(m_, std::vector<double>(ncols_ + 1, 0.0));
        basis_.assign(m_, SIZE_MAX);
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) t_[i][j] = rows_[i].a[j];
            if (rows_[i].rel == '<') t_[i][slack_col_[i]] = 1.0;
            if (rows_[i].rel == '>') t_[i][slack_col_[i]] = -1.0;
            if (art_col_[i] != SIZE_MAX) t_[i][art_col_[i]] = 1.0;
            t_[i].back() = rows_[i].b;
            basis_[i] = art_col_[i] != SIZE_MAX ? art_col_[i] : slack_col_[i];
        }
    }

    LpSolution solve(const std::vector<double>& c) {
        LpSolution sol;

        // Phase 1: drive artificials to zero.
        std::vector<double> phase1(ncols_, 0.0);
        bool any_artificial = false;
        for (std::size_t i = 0; i < m_; ++i)
            if (art_col_[i] != SIZE_MAX) {
                phase1[art_col_[i]] = 1.0;
                any_artificial = true;
            }
        if (any_artificial) {
            set_objective(phase1);
            run(/*allow_artificial_entering=*/true);
            if (obj_value_ > kTol) {
                sol.status = LpStatus::Infeasible;
                sol.farkas = extract_duals(phase1);
                return sol;
            }
            drive_out_artificials();
        }

        // Phase 2.
        std::vector<double> full_c(ncols_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) full_c[j] = c[j];
        set_objective(full_c);
        if (!run(/*allow_artificial_entering=*/false)) {
            sol.status = LpStatus::Unbounded;
            sol.ray = unbounded_ray_;
            return sol;
        }

        sol.status = LpStatus::Optimal;
        sol.x.assign(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) sol.x[basis_[i]] = t_[i].back();
        sol.objective = obj_value_;
        sol.reduced_costs.assign(obj_row_.begin(), obj_row_.begin() + static_cast<long>(n_));
        sol.y = extract_duals(full_c);
        return sol;
    }

private:
    static constexpr double kTol = 1e-9;

    void set_objective(const std::vector<double>& cost) {
        cost_ = cost;
        obj_row_.assign(ncols_, 0.0);
        obj_value_ = 0.0;
        for (std::size_t j = 0; j < ncols_; ++j) obj_row_[j] = cost[j];
        for (std::size_t i = 0; i < m_; ++i) {
            const double cb = cost[basis_[i]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j < ncols_; ++j) obj_row_[j] -= cb * t_[i][j];
            obj_value_ += cb * t_[i].back();
        }
    }

    // Bland's rule in both choices; returns false on unboundedness.
    bool run(bool allow_artificial_entering) {
        for (;;) {
            std::size_t enter = SIZE_MAX;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (!allow_artificial_entering && is_artificial(j)) continue;
                if (obj_row_[j] < -kTol) {
                    enter = j;
                    break;
                }
            }
            if (enter == SIZE_MAX) return true;  // optimal

            std::size_t leave = SIZE_MAX;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                if (t_[i][enter] > kTol) {
                    const double ratio = t_[i].back() / t_[i][enter];
                    if (ratio < best_ratio - kTol ||
                        (ratio < best_ratio + kTol && (leave == SIZE_MAX || basis_[i] < basis_[leave]))) {
                        best_ratio = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == SIZE_MAX) {
                unbounded_ray_.assign(n_, 0.0);
                if (enter < n_) unbounded_ray_[enter] = 1.0;
                for (std::size_t i = 0; i < m_; ++i)
                    if (basis_[i] < n_) unbounded_ray_[basis_[i]] = -t_[i][enter];
                return false;
            }
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const double p = t_[row][col];
        for (auto& v : t_[row]) v /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row) continue;
            const double f = t_[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= ncols_; ++j) t_[i][j] -= f * t_[row][j];
        }
        const double fo = obj_row_[col];
        if (fo != 0.0) {
            for (std::size_t j = 0; j < ncols_; ++j) obj_row_[j] -= fo * t_[row][j];
            obj_value_ += fo * t_[row].back();
        }
        basis_[row] = col;
    }

    bool is_artificial(std::size_t j) const { return j >= first_artificial(); }

    std::size_t first_artificial() const {
        std::size_t first = ncols_;
        for (std::size_t i = 0; i < m_; ++i)
            if (art_col_[i] != SIZE_MAX) first = std::min(first, art_col_[i]);
        return first;
    }

    // Degenerate artificials left basic after phase 1 must not regain value
    // in phase 2; pivot them out where possible. Rows that cannot release
    // their artificial are redundant: every non-artificial entry is zero, so
    // later pivots leave them untouched.
    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (!is_artificial(basis_[i])) continue;
            for (std::size_t j = 0; j < first_artificial(); ++j) {
                if (std::abs(t_[i][j]) > kTol) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    // y_i read from each row's original unit column (slack for '<', artificial
    // otherwise): y_i = cost[j] - reduced_cost[j]. Rows normalized by -1 get
    // their multiplier negated back to the caller's orientation.
    std::vector<double> extract_duals(const std::vector<double>& cost) const {
        std::vector<double> y(m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            const std::size_t j = art_col_[i] != SIZE_MAX ? art_col_[i] : slack_col_[i];
            y[i] = cost[j] - obj_row_[j];
            if (flipped_[i]) y[i] = -y[i];
        }
        return y;
    }

    std::size_t n_, m_, ncols_ = 0;
    std::vector<LpRow> rows_;
    std::vector<bool> flipped_;
    std::vector<std::vector<double>> t_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> slack_col_, art_col_;
    std::vector<double> cost_, obj_row_;
    std::vector<double> unbounded_ray_;
    double obj_value_ = 0.0;
};

}  // namespace detail

inline LpSolution solve_lp_dense(const LpProblem& p) {
    if (p.c.empty()) throw ModelError("simplex: empty problem");
    detail::SimplexTableau tab(p);
    return tab.solve(p.c);
}

}  // namespace dercopt
