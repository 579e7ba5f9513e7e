// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "specbound/cli.hpp"
#include "specbound/oracles/explicit_sums.hpp"
#include "specbound/run_config.hpp"
#include "specbound/specbound.hpp"

using namespace specbound;

namespace {

const UnitsConfig unit{};

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double time_limit_s;  // <= 0: none
    std::function<Outcome()> body;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<std::pair<const char*, PotentialSpec>> desk_cases() {
    return {{"GeneralizedMorse", GeneralizedMorse{100.0, 20.0, 1.0}},
            {"Mie", Mie{5.0, 1.0}},
            {"KratzerFues", KratzerFues{10.0, 1.0}},
            {"Coulomb", Coulomb{1.0}},
            {"Pseudoharmonic", Pseudoharmonic{2.0, 1.0}},
            {"NoncentralRadial", NoncentralRadial{-1.0, 0.0}},
            {"DeformedRosenMorse", DeformedRosenMorse{4.0, 8.0, 0.5, 1.0}},
            {"WoodsSaxon", WoodsSaxon{5.0, 10.0, 1.0}},
            {"PoschlTeller", PoschlTeller{10.0, 1.0, 1.0}}};
}

Outcome coulomb_exactness() {
    Outcome o;
    const auto model = to_parametric(Coulomb{1.0}, 0, unit);
    double worst_abs = 0.0;
    for (int n0 = 1; n0 <= 5; ++n0) {
        const auto e = solve_energy(model.form, n0 - 1);
        if (!e) return {false, "no root for n0 = " + std::to_string(n0)};
        worst_abs = std::max(worst_abs, std::abs(*e + 0.5 / (n0 * n0)));
    }
    const auto oracle = fd_eigenvalues(Coulomb{1.0}, 0, unit, numerics::RadialGrid{1e-4, 80.0, 4000}, 3);
    double worst_rel = 0.0;
    if (oracle.eigenvalues.size() < 3) return {false, "oracle found fewer than 3 levels"};
    for (int k = 0; k < 3; ++k) {
        const double exact = -0.5 / ((k + 1.0) * (k + 1.0));
        worst_rel = std::max(worst_rel, std::abs(oracle.eigenvalues[static_cast<std::size_t>(k)] - exact) / std::abs(exact));
    }
    o.pass = worst_abs < 1e-12 && worst_rel < 1e-5;
    o.detail = "max abs err " + num(worst_abs) + " (< 1e-12), oracle max rel " + num(worst_rel) + " (< 1e-5)";
    return o;
}

Outcome nine_case_agreement() {
    Outcome o;
    double worst_closed = 0.0, worst_oracle = 0.0;
    std::string failures;
    for (const auto& [name, spec] : desk_cases()) {
        const auto rep = verify(spec, 0, unit, 2, 1e-5);
        worst_closed = std::max(worst_closed, rep.worst_rel_diff_closed);
        worst_oracle = std::max(worst_oracle, rep.worst_rel_diff_oracle);
        if (!rep.pass || rep.levels.empty()) failures += std::string(failures.empty() ? "" : ",") + name;
    }
    o.pass = failures.empty() && worst_closed < 1e-10 && worst_oracle < 1e-5;
    o.detail = "closed-form max rel " + num(worst_closed) + " (< 1e-10), oracle max rel " + num(worst_oracle) +
               " (< 1e-5)" + (failures.empty() ? "" : "; failing: " + failures);
    return o;
}

Outcome jacobi_consistency() {
    double worst_r2 = 0.0, worst_sum = 0.0;
    int levels = 0;
    for (const auto& [name, spec] : desk_cases()) {
        for (const auto& st : spectrum(spec, 0, unit, 10)) {
            const auto* jc = std::get_if<JacobiBranchConstants>(&st.branch_constants);
            if (jc == nullptr) continue;
            const auto rep = consistency_check(*jc);
            worst_r2 = std::max(worst_r2, rep.r2_abs);
            worst_sum = std::max(worst_sum, rep.r1_plus_r3_abs);
            ++levels;
        }
    }
    return {levels > 0 && worst_r2 < 1e-10 && worst_sum < 1e-10,
            std::to_string(levels) + " levels, max |r2| " + num(worst_r2) + ", max |r1+r3| " + num(worst_sum) +
                " (< 1e-10)"};
}

Outcome special_functions() {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> deg(0, 15);
    std::uniform_real_distribution<double> par(-0.9, 3.0);
    std::uniform_real_distribution<double> arg(-1.0, 1.0);
    std::uniform_real_distribution<double> kd(-0.9, 10.0);
    std::uniform_real_distribution<double> zd(0.0, 10.0);
    double jac = 0.0, lag = 0.0, sym = 0.0, origin = 0.0, ode = 0.0;
    for (int i = 0; i < 100; ++i) {
        const JacobiQuery q{deg(rng), par(rng), par(rng), arg(rng)};
        jac = std::max(jac, std::abs(jacobi_eval(q) - oracles::jacobi_sum_oracle(q)));
        const LaguerreQuery lq{deg(rng), kd(rng), zd(rng)};
        lag = std::max(lag, std::abs(laguerre_eval(lq) - oracles::laguerre_sum_oracle(lq)));
    }
    for (int n = 0; n <= 15; ++n) {
        for (double a : {-0.5, 0.0, 1.25}) {
            for (double z : {0.1, 0.37, 0.8}) {
                const double sign = n % 2 == 0 ? 1.0 : -1.0;
                sym = std::max(sym, std::abs(jacobi_eval({n, a, a, -z}) - sign * jacobi_eval({n, a, a, z})));
            }
        }
        for (int k = 0; k <= 10; ++k) {
            double binom = 1.0;
            for (int i = 1; i <= n; ++i) binom = binom * (k + i) / i;
            origin = std::max(origin, std::abs(laguerre_eval({n, static_cast<double>(k), 0.0}) - binom) / binom);
        }
    }
    for (int n = 0; n <= 10; ++n) {
        for (double z : {-0.6, 0.2, 0.7}) {
            const JacobiQuery q{n, 0.7, 1.4, z};
            ode = std::max(ode, ode_residual_check(q) / std::max(1.0, std::abs(jacobi_eval(q))));
            const LaguerreQuery lq{n, 1.5, 2.0 + 3.0 * z};
            ode = std::max(ode, ode_residual_check(lq) / std::max(1.0, std::abs(laguerre_eval(lq))));
        }
    }
    const bool pass = jac < 1e-10 && lag < 1e-10 && sym < 1e-12 && origin < 1e-12 && ode < 1e-4;
    return {pass, "jacobi " + num(jac) + ", laguerre " + num(lag) + " (< 1e-10); symmetry " + num(sym) +
                      ", L(0) " + num(origin) + "; ode " + num(ode) + " (< 1e-4)"};
}

Outcome node_theorem() {
    int checked = 0;
    std::string failures;
    for (const auto& [name, spec] : desk_cases()) {
        auto grid = default_grid(spec, unit);
        grid.n_points = 10000;
        for (const auto& st : spectrum(spec, 0, unit, 4)) {
            ++checked;
            const int nodes = numerics::count_nodes(sample_wavefunction(st, grid));
            if (nodes != st.n) failures += std::string(" ") + name + "/n=" + std::to_string(st.n);
        }
    }
    return {failures.empty(), std::to_string(checked) + " states on 1e4 points" +
                                  (failures.empty() ? "" : "; wrong node count:" + failures)};
}

Outcome orthogonality() {
    double worst = 0.0;
    int pairs = 0;
    for (const auto& [name, spec] : desk_cases()) {
        const auto states = spectrum(spec, 0, unit, 4);
        if (states.size() < 2) continue;
        const auto grid = covering_grid(spec, 0, unit, states.back().energy);
        for (std::size_t i = 0; i < states.size(); ++i) {
            for (std::size_t j = i + 1; j < states.size(); ++j) {
                worst = std::max(worst, std::abs(overlap(states[i], states[j], grid)));
                ++pairs;
            }
        }
    }
    return {pairs > 0 && worst < 1e-6, std::to_string(pairs) + " pairs, max |<n|m>| " + num(worst) + " (< 1e-6)"};
}

Outcome identities() {
    const double d1 =
        std::abs(spectrum(Coulomb{1.0}, 0, unit, 1)[1].energy - spectrum(Coulomb{1.0}, 1, unit, 0)[0].energy);
    double d2 = 0.0;
    for (int l = 0; l <= 3; ++l) {
        const auto nc = spectrum(NoncentralRadial{-1.0, l * (l + 1.0) / 2.0}, 0, unit, 3);
        const auto co = spectrum(Coulomb{1.0}, l, unit, 3);
        if (nc.size() != co.size()) return {false, "level counts differ at l = " + std::to_string(l)};
        for (std::size_t i = 0; i < nc.size(); ++i) d2 = std::max(d2, std::abs(nc[i].energy - co[i].energy));
    }
    return {d1 < 1e-12 && d2 < 1e-12,
            "Coulomb degeneracy " + num(d1) + ", noncentral reduction " + num(d2) + " (< 1e-12)"};
}

Outcome oracle_self_validation() {
    const auto box = numerics::fd_eigenvalues([](double) { return 0.0; }, numerics::RadialGrid{0.0, 1.0, 2000}, 1.0,
                                              1.0, 5);
    double worst_box = 0.0;
    if (box.eigenvalues.size() < 5) return {false, "box oracle returned fewer than 5 levels"};
    for (int n = 0; n < 5; ++n) {
        const double exact = (n + 1.0) * (n + 1.0) * std::numbers::pi * std::numbers::pi / 2.0;
        worst_box = std::max(worst_box, std::abs(box.eigenvalues[static_cast<std::size_t>(n)] - exact) / exact);
    }
    const int size = 50;
    numerics::SymmetricTridiagonal lap{std::vector<double>(size, 2.0), std::vector<double>(size - 1, -1.0)};
    double worst_lap = 0.0;
    for (int k = 0; k < size; ++k) {
        const double exact = 2.0 - 2.0 * std::cos((k + 1.0) * std::numbers::pi / (size + 1.0));
        worst_lap = std::max(worst_lap, std::abs(numerics::kth_eigenvalue(lap, k) - exact));
    }
    return {worst_box < 1e-4 && worst_lap < 1e-10,
            "box max rel " + num(worst_box) + " (< 1e-4), Toeplitz max abs " + num(worst_lap) + " (< 1e-10)"};
}

Outcome cli_contract() {
    const auto code = [](std::vector<std::string> args) {
        std::ostringstream out, err;
        return cli::run_cli(args, out, err);
    };
    const int verify_ok = code({"verify", "--potential", "Coulomb", "--param", "e2=1"});
    const int invalid = code({"spectrum", "--potential", "Coulomb", "--param", "e2=-1"});
    const int exhausted =
        code({"spectrum", "--potential", "GeneralizedMorse", "--param", "V1=100", "--param", "V2=0.1", "--param", "a=1"});
    const int coarse = code({"verify", "--potential", "Coulomb", "--param", "e2=1", "--grid", "0.001,80,200"});
    RunConfig c;
    c.potential = WoodsSaxon{5.0, 10.0, 1.0};
    c.units = {0.3, 1.7};
    c.n_max = 4;
    c.grid = numerics::RadialGrid{-30.0, 40.0, 3001};
    c.output_format = OutputFormat::csv;
    c.rel_tol = 1.0 / 3.0;
    const bool round_trip = run_config_from_json(parse_json_text(to_json(c).dump())) == c;
    const bool pass = verify_ok == 0 && invalid == 2 && exhausted == 3 && coarse == 4 && round_trip;
    return {pass, "verify " + std::to_string(verify_ok) + ", invalid " + std::to_string(invalid) + ", exhausted " +
                      std::to_string(exhausted) + ", coarse grid " + std::to_string(coarse) + ", json round trip " +
                      (round_trip ? "identical" : "differs")};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Coulomb exactness and oracle", 5.0, coulomb_exactness},
        {2, "nine-case three-way agreement", 60.0, nine_case_agreement},
        {3, "Jacobi-branch consistency", 0.0, jacobi_consistency},
        {4, "special-function suite", 5.0, special_functions},
        {5, "node theorem", 0.0, node_theorem},
        {6, "orthogonality", 0.0, orthogonality},
        {7, "degeneracy and reduction identities", 0.0, identities},
        {8, "oracle self-validation", 0.0, oracle_self_validation},
        {9, "CLI contract", 0.0, cli_contract},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::string timing = num(secs) + " s";
        if (c.time_limit_s > 0.0) {
            timing += " (< " + num(c.time_limit_s) + " s)";
            if (secs >= c.time_limit_s) o.pass = false;
        }
        if (!o.pass) ++failed;
        std::printf("%s %d %s: %s; %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), timing.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
