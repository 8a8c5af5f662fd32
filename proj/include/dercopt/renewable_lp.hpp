// Step 1: size PV / WT / biomass and the natural-gas CHP threshold rating by
// maximizing annual fuel savings subject to the DOE and state-mandate
// constraints, then verify the optimum against the KKT conditions.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "dercopt/common.hpp"
#include "dercopt/simplex.hpp"

namespace dercopt {

// Mandate floors, all dimensionless fractions in [0, 1].
struct RegulatoryParams {
    double theta = 0.0;  // PV share floor among renewables
    double rho = 0.0;    // renewable capacity share floor
    double omega = 0.0;  // CO2 reduction floor
    double delta = 0.0;  // energy-efficiency increase floor
    bool pv_share_includes_biomass = false;  // which variant of the PV-share ratio applies

    bool valid() const {
        for (double v : {theta, rho, omega, delta})
            if (!(v >= 0.0 && v <= 1.0)) return false;
        return true;
    }
};

// Per-DER annualized coefficients (Table-I style, Ohio defaults in fixtures).
struct SavingsCoefficients {
    double alpha_pv = 0.0, alpha_wt = 0.0, alpha_biomass = 0.0, alpha_ng = 0.0;  // tons/MW
    double beta_pv = 0.0, beta_wt = 0.0;                                         // MWh/MW
    double beta_e_chp = 0.0, beta_th_chp = 0.0;  // shared CHP electrical + thermal, MWh/MW
    double gamma_pv = 0.0, gamma_wt = 0.0, gamma_biomass = 0.0, gamma_ng = 0.0;  // MMBtu/MW
};

struct DemandContext {
    double annual_electric_mwh = 0.0;   // E_l
    double annual_thermal_mwh = 0.0;    // E_th
    double co2_base_tons_per_mw = 0.0;  // E_CO2
    double average_load_mw = 0.0;       // L
    double cap_pv_mw = 0.0;
    double cap_wt_mw = 0.0;
    double cap_biomass_mw = 0.5;
    double cap_ng_thr_mw = 0.0;
};

struct Capacities {
    double pv = 0.0;
    double wt = 0.0;
    double biomass = 0.0;
    double ng = 0.0;  // NG CHP threshold rating in step 1, actual capacity later

    std::vector<double> as_vector() const { return {pv, wt, biomass, ng}; }
    static Capacities from_vector(const std::vector<double>& v) {
        return {v.at(0), v.at(1), v.at(2), v.at(3)};
    }
};

inline double fuel_savings(const Capacities& x, const SavingsCoefficients& c) {
    return c.gamma_pv * x.pv + c.gamma_wt * x.wt + c.gamma_biomass * x.biomass + c.gamma_ng * x.ng;
}

inline double emissions_reduction(const Capacities& x, const SavingsCoefficients& c) {
    return c.alpha_pv * x.pv + c.alpha_wt * x.wt + c.alpha_ng * x.ng + c.alpha_biomass * x.biomass;
}

inline double system_energy_savings(const Capacities& x, const SavingsCoefficients& c) {
    return c.beta_pv * x.pv + c.beta_wt * x.wt + (c.beta_e_chp + c.beta_th_chp) * (x.ng + x.biomass);
}

// The built LP plus row metadata used for KKT reporting.
struct Step1Lp {
    LpProblem lp;  // min -FS over x = (pv, wt, biomass, ng_thr)
    std::vector<std::string> row_names;
    SavingsCoefficients coeffs;
    RegulatoryParams reg;
    DemandContext ctx;
};

// Ratio constraints are cross-multiplied into linear form; trivially
// satisfied mandates (zero floors) are dropped so the zero-mandate problem
// degenerates to caps and non-negativity alone. A tiny total-capacity floor
// keeps the cross-multiplied denominators structurally positive.
inline Step1Lp build_lp(const RegulatoryParams& reg, const SavingsCoefficients& coeffs,
                        const DemandContext& ctx) {
    if (!reg.valid()) throw ModelError("build_lp: mandate fractions must lie in [0, 1]");
    if ((reg.delta > 0.0 && ctx.annual_electric_mwh + ctx.annual_thermal_mwh <= 0.0))
        throw ModelError("build_lp: E_l + E_th must be positive for the efficiency mandate");
    if (reg.omega > 0.0 && ctx.co2_base_tons_per_mw * ctx.average_load_mw <= 0.0)
        throw ModelError("build_lp: E_CO2 * L must be positive for the CO2 mandate");
    for (double cap : {ctx.cap_pv_mw, ctx.cap_wt_mw, ctx.cap_biomass_mw, ctx.cap_ng_thr_mw})
        if (cap < 0.0) throw ModelError("build_lp: capacity caps must be non-negative");

    Step1Lp out;
    out.coeffs = coeffs;
    out.reg = reg;
    out.ctx = ctx;
    out.lp.c = {-coeffs.gamma_pv, -coeffs.gamma_wt, -coeffs.gamma_biomass, -coeffs.gamma_ng};

    auto add = [&](std::vector<double> a, double b, char rel, std::string name) {
        out.lp.rows.push_back({std::move(a), b, rel});
        out.row_names.push_back(std::move(name));
    };

    add({0, 0, 1, 0}, ctx.cap_biomass_mw, '<', "biomass_cap");
    add({1, 0, 0, 0}, ctx.cap_pv_mw, '<', "pv_cap");
    add({0, 1, 0, 0}, ctx.cap_wt_mw, '<', "wt_cap");
    add({0, 0, 0, 1}, ctx.cap_ng_thr_mw, '<', "ng_thr_cap");

    bool has_ratio_row = false;
    if (reg.theta > 0.0) {
        const double t = reg.theta;
        if (reg.pv_share_includes_biomass)
            add({1.0 - t, -t, -t, 0}, 0.0, '>', "pv_share");
        else
            add({1.0 - t, -t, 0, 0}, 0.0, '>', "pv_share");
        has_ratio_row = true;
    }
    if (reg.rho > 0.0) {
        const double r = reg.rho;
        add({1.0 - r, 1.0 - r, 1.0 - r, -r}, 0.0, '>', "renewable_share");
        has_ratio_row = true;
    }
    if (reg.omega > 0.0)
        add({coeffs.alpha_pv, coeffs.alpha_wt, coeffs.alpha_biomass, coeffs.alpha_ng},
            reg.omega * ctx.co2_base_tons_per_mw * ctx.average_load_mw, '>', "co2_reduction");
    if (reg.delta > 0.0) {
        const double chp = coeffs.beta_e_chp + coeffs.beta_th_chp;
        add({coeffs.beta_pv, coeffs.beta_wt, chp, chp},
            reg.delta * (ctx.annual_electric_mwh + ctx.annual_thermal_mwh), '>', "efficiency_increase");
    }
    if (has_ratio_row) add({1, 1, 1, 1}, 1e-6, '>', "total_capacity_floor");

    return out;
}

struct KktReport {
    double stationarity = 0.0;      // ||grad f + sum(mu grad g) + sum(lambda grad h)||_inf, scaled
    double primal_feasibility = 0.0;
    double dual_feasibility = 0.0;  // most negative inequality multiplier, scaled
    double complementarity = 0.0;   // max |mu_j g_j|, scaled
    bool pass = false;

    double worst() const {
        return std::max({stationarity, primal_feasibility, dual_feasibility, complementarity});
    }
};

struct RenewableSizingSolution {
    LpStatus status = LpStatus::Optimal;
    Capacities capacities;
    double fuel_savings_mmbtu = 0.0;
    double emissions_reduction_tons = 0.0;
    double system_energy_savings_mwh = 0.0;
    std::vector<double> row_multipliers;   // simplex duals of the FS-max solve
    std::vector<double> bound_multipliers; // reduced costs of x >= 0
    KktReport kkt;
    std::vector<double> certificate;  // Farkas rows (infeasible) or ray (unbounded)
};

namespace detail {

// KKT multipliers in Eq.-(9)-(12) orientation for a minimized objective:
// '<' rows have g = a.x - b with mu = -y, '>' rows g = b - a.x with mu = +y.
inline double row_kkt_multiplier(const LpRow& row, double y) {
    return row.rel == '<' ? -y : y;
}

}  // namespace detail

inline KktReport kkt_verify(const RenewableSizingSolution& sol, const Step1Lp& step1,
                            double tolerance = 1e-7) {
    const LpProblem& lp = step1.lp;
    const std::vector<double> x = sol.capacities.as_vector();
    const std::size_t n = lp.n_vars();

    KktReport rep;
    if (sol.row_multipliers.size() != lp.rows.size() || sol.bound_multipliers.size() != n) {
        rep.pass = false;
        rep.stationarity = rep.primal_feasibility = rep.dual_feasibility = rep.complementarity =
            std::numeric_limits<double>::infinity();
        return rep;
    }

    double c_scale = 1.0;
    for (double cj : lp.c) c_scale = std::max(c_scale, std::abs(cj));

    // stationarity: with mu/lambda mapped from the row duals, every row type
    // contributes -y_i a_ij, giving the LP identity c - A^T y - nu = 0
    for (std::size_t j = 0; j < n; ++j) {
        double r = lp.c[j] - sol.bound_multipliers[j];
        for (std::size_t i = 0; i < lp.rows.size(); ++i)
            r -= sol.row_multipliers[i] * lp.rows[i].a[j];
        rep.stationarity = std::max(rep.stationarity, std::abs(r) / c_scale);
    }

    double obj_scale = std::max(1.0, std::abs(fuel_savings(sol.capacities, step1.coeffs)));
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        const auto& row = lp.rows[i];
        double ax = 0.0, row_scale = std::max(1.0, std::abs(row.b));
        for (std::size_t j = 0; j < n; ++j) {
            ax += row.a[j] * x[j];
            row_scale = std::max(row_scale, std::abs(row.a[j] * x[j]));
        }
        const double g = row.rel == '<' ? ax - row.b : (row.rel == '>' ? row.b - ax : ax - row.b);
        if (row.rel == '=') {
            rep.primal_feasibility = std::max(rep.primal_feasibility, std::abs(g) / row_scale);
        } else {
            rep.primal_feasibility = std::max(rep.primal_feasibility, std::max(0.0, g) / row_scale);
            const double mu = detail::row_kkt_multiplier(row, sol.row_multipliers[i]);
            rep.dual_feasibility = std::max(rep.dual_feasibility, std::max(0.0, -mu) / c_scale);
            rep.complementarity = std::max(rep.complementarity, std::abs(mu * g) / obj_scale);
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        rep.primal_feasibility = std::max(rep.primal_feasibility, std::max(0.0, -x[j]));
        rep.dual_feasibility = std::max(rep.dual_feasibility, std::max(0.0, -sol.bound_multipliers[j]) / c_scale);
        rep.complementarity =
            std::max(rep.complementarity, std::abs(sol.bound_multipliers[j] * x[j]) / obj_scale);
    }

    rep.pass = rep.worst() <= tolerance;
    return rep;
}

// Solves the step-1 LP. Alternate optima are resolved by a second solve that
// pins fuel savings at the optimum and minimizes the NG threshold; the KKT
// multipliers come from the FS-max solve (any dual optimum certifies any
// primal optimum for an LP).
inline RenewableSizingSolution solve_step1(const Step1Lp& step1) {
    RenewableSizingSolution sol;
    LpSolution first = solve_lp_dense(step1.lp);
    sol.status = first.status;
    if (first.status == LpStatus::Infeasible) {
        sol.certificate = first.farkas;
        return sol;
    }
    if (first.status == LpStatus::Unbounded) {
        sol.certificate = first.ray;
        return sol;
    }

    const double fs_opt = -first.objective;
    sol.row_multipliers = first.y;
    sol.bound_multipliers = first.reduced_costs;

    LpProblem tie = step1.lp;
    tie.c = {0, 0, 0, 1};  // minimize the NG threshold at equal savings
    tie.rows.push_back({{-step1.coeffs.gamma_pv, -step1.coeffs.gamma_wt, -step1.coeffs.gamma_biomass,
                         -step1.coeffs.gamma_ng},
                        -fs_opt,
                        '='});
    LpSolution second = solve_lp_dense(tie);
    const std::vector<double>& xv = second.status == LpStatus::Optimal ? second.x : first.x;

    sol.capacities = Capacities::from_vector(xv);
    sol.fuel_savings_mmbtu = fuel_savings(sol.capacities, step1.coeffs);
    sol.emissions_reduction_tons = emissions_reduction(sol.capacities, step1.coeffs);
    sol.system_energy_savings_mwh = system_energy_savings(sol.capacities, step1.coeffs);
    sol.kkt = kkt_verify(sol, step1);
    return sol;
}

}  // namespace dercopt
