#include "fvpost/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/core.h>
#include <fmt/ostream.h>
#include <json.hpp>

namespace fvpost {

ReferenceSpec parse_reference(const std::string& text) {
    if (text == "exact") return {ReferenceSpec::Kind::Exact, 0};
    if (text == "none") return {ReferenceSpec::Kind::None, 0};
    if (text.rfind("fine:", 0) == 0) {
        try {
            std::size_t used = 0;
            const int level = std::stoi(text.substr(5), &used);
            if (level >= 0 && used == text.size() - 5) return {ReferenceSpec::Kind::Fine, static_cast<unsigned>(level)};
        } catch (const std::exception&) {
        }
    }
    throw ConfigError(fmt::format("unknown reference '{}' (expected exact, none or fine:L)", text));
}

std::string to_string(const ReferenceSpec& ref) {
    switch (ref.kind) {
        case ReferenceSpec::Kind::Exact: return "exact";
        case ReferenceSpec::Kind::Fine: return fmt::format("fine:{}", ref.level);
        case ReferenceSpec::Kind::None: break;
    }
    return "none";
}

State PiecewiseLinear::value(double x) const {
    std::size_t k = 0;
    while (k < breaks.size() && x > breaks[k]) ++k;
    return intercept[k] + x * slope[k];
}

State PiecewiseLinear::average(double a, double b) const {
    if (!(b > a)) return value(a);
    State total{};
    double lo = a;
    for (std::size_t k = 0; k <= breaks.size() && lo < b; ++k) {
        const double hi = k < breaks.size() ? std::min(b, breaks[k]) : b;
        if (hi > lo) total = total + ((hi - lo) * intercept[k] + (0.5 * (hi * hi - lo * lo)) * slope[k]);
        lo = std::max(lo, hi);
    }
    return (1.0 / (b - a)) * total;
}

std::string to_string(CaseId id) {
    switch (id) {
        case CaseId::Psys2Raref: return "psys-2raref";
        case CaseId::PsysRarefShock: return "psys-raref-shock";
        case CaseId::BurgersCurved: return "burgers-curved";
        case CaseId::Custom: break;
    }
    return "custom";
}

CaseConfig make_case(const std::string& name) {
    CaseConfig c;
    c.name = name;
    if (name == "psys-2raref") {
        c.id = CaseId::Psys2Raref;
        c.model = ConservationLaw::psystem();
        c.left = make_state(1.0, -2.0);
        c.right = make_state(1.0, 2.0);
        c.t0 = 0.5;
        c.T = 1.0;
        c.reference = {ReferenceSpec::Kind::Exact, 0};
    } else if (name == "psys-raref-shock") {
        c.id = CaseId::PsysRarefShock;
        c.model = ConservationLaw::psystem();
        c.left = make_state(0.15, 0.0);
        c.right = make_state(0.1, 0.0);
        c.t0 = 0.0;
        c.T = 1.5;
        c.reference = {ReferenceSpec::Kind::Exact, 0};
    } else if (name == "burgers-curved") {
        c.id = CaseId::BurgersCurved;
        c.model = ConservationLaw::burgers();
        c.pieces = PiecewiseLinear{{-4.0, 0.0},
                                   {make_state(10.0), make_state(-2.0), make_state(-7.0)},
                                   {make_state(0.0), make_state(-3.0), make_state(0.0)}};
        c.t0 = 0.0;
        c.T = 1.0;
        c.reference = {ReferenceSpec::Kind::Fine, 14};
    } else if (name == "custom") {
        c.id = CaseId::Custom;
    } else {
        throw ConfigError(
            fmt::format("unknown case '{}' (expected psys-2raref, psys-raref-shock, burgers-curved or custom)", name));
    }
    return c;
}

std::vector<State> initial_data(const CaseConfig& config, const Grid1D& grid) {
    if (config.pieces) {
        std::vector<State> u(grid.cells);
        for (std::size_t j = 0; j < grid.cells; ++j) u[j] = config.pieces->average(grid.face(j), grid.face(j + 1));
        return u;
    }
    const WaveFan fan = solve_riemann(config.model, config.left, config.right);
    return cell_average_exact(fan, 0.0, config.t0 - config.fan_start, grid);
}

SpaceTimeSolution solve_case(const CaseConfig& config, unsigned level) {
    const Grid1D grid = build_grid(config.x_min, config.x_max, level);
    MarchOptions opt;
    opt.cfl = config.cfl;
    opt.t0 = config.t0;
    opt.T = config.T;
    return run(initial_data(config, grid), config.model, config.flux, grid, opt);
}

std::vector<State> restrict_average(std::span<const State> fine, std::size_t coarse_cells) {
    if (coarse_cells == 0 || fine.size() % coarse_cells != 0) {
        throw ConfigError(fmt::format("{} fine cells do not nest in {} coarse cells", fine.size(), coarse_cells));
    }
    const std::size_t r = fine.size() / coarse_cells;
    const double w = 1.0 / static_cast<double>(r);
    std::vector<State> out(coarse_cells);
    for (std::size_t J = 0; J < coarse_cells; ++J) {
        State s{};
        for (std::size_t k = 0; k < r; ++k) s = s + fine[J * r + k];
        out[J] = w * s;
    }
    return out;
}

std::vector<State> prolong_constant(std::span<const State> coarse, std::size_t fine_cells) {
    if (coarse.empty() || fine_cells % coarse.size() != 0) {
        throw ConfigError(fmt::format("{} coarse cells do not nest in {} fine cells", coarse.size(), fine_cells));
    }
    const std::size_t r = fine_cells / coarse.size();
    std::vector<State> out(fine_cells);
    for (std::size_t j = 0; j < fine_cells; ++j) out[j] = coarse[j / r];
    return out;
}

double l1_distance(std::span<const State> u, std::span<const State> ref, double dx, std::size_t m) {
    State s{};
    for (std::size_t j = 0; j < u.size(); ++j) s = s + abs(u[j] - ref[j]);
    return dx * linf(s, m);
}

double linf_l1_error_exact(const SpaceTimeSolution& sol, const WaveFan& fan, double fan_start) {
    double err = 0.0;
    for (std::size_t n = 0; n < sol.levels(); ++n) {
        const auto ref = cell_average_exact(fan, 0.0, sol.time(n) - fan_start, sol.grid());
        err = std::max(err, l1_distance(sol.level(n), ref, sol.grid().dx, sol.components()));
    }
    return err;
}

double linf_l1_error(const SpaceTimeSolution& sol, const SpaceTimeSolution& reference) {
    if (reference.grid().x_min != sol.grid().x_min || reference.grid().x_max != sol.grid().x_max) {
        throw ConfigError("reference solution covers a different domain");
    }
    double err = 0.0;
    std::size_t k = 0;
    for (std::size_t n = 0; n < sol.levels(); ++n) {
        const double t = sol.time(n);
        while (k + 1 < reference.levels() && reference.time(k + 1) < t) ++k;
        const std::size_t k1 = std::min(k + 1, reference.levels() - 1);
        const double t_a = reference.time(k), t_b = reference.time(k1);
        const double w = t_b > t_a ? std::clamp((t - t_a) / (t_b - t_a), 0.0, 1.0) : 0.0;
        const auto ra = restrict_average(reference.level(k), sol.cells());
        const auto rb = restrict_average(reference.level(k1), sol.cells());
        std::vector<State> ref(sol.cells());
        for (std::size_t j = 0; j < ref.size(); ++j) ref[j] = (1.0 - w) * ra[j] + w * rb[j];
        err = std::max(err, l1_distance(sol.level(n), ref, sol.grid().dx, sol.components()));
    }
    return err;
}

std::vector<double> fine_reference_errors(const CaseConfig& config, unsigned fine_level,
                                          const std::vector<const SpaceTimeSolution*>& coarse) {
    const Grid1D fine = build_grid(config.x_min, config.x_max, fine_level);
    for (const auto* s : coarse) {
        if (s->grid().x_min != fine.x_min || s->grid().x_max != fine.x_max || fine.cells <= s->cells() ||
            fine.cells % s->cells() != 0) {
            throw ConfigError(fmt::format("reference level {} does not nest the {}-cell grid", fine_level, s->cells()));
        }
    }
    struct Target {
        const SpaceTimeSolution* sol;
        std::size_t next = 0;
        double err = 0.0;
    };
    std::vector<Target> targets;
    for (const auto* s : coarse) targets.push_back({s});

    std::vector<State> prev;
    double t_prev = config.t0;
    MarchOptions opt;
    opt.cfl = config.cfl;
    opt.t0 = config.t0;
    opt.T = config.T;
    opt.cache_fluxes = false;
    const double tol = 1e-12 * (config.T - config.t0);
    run_streaming(initial_data(config, fine), config.model, config.flux, fine, opt,
                  [&](std::size_t n, double t, std::span<const State> u) {
                      for (auto& tg : targets) {
                          const auto& s = *tg.sol;
                          while (tg.next < s.levels() && s.time(tg.next) <= t + tol) {
                              const double tc = s.time(tg.next);
                              const auto rb = restrict_average(u, s.cells());
                              std::vector<State> ref = rb;
                              if (n > 0 && t > t_prev) {
                                  const double w = std::clamp((tc - t_prev) / (t - t_prev), 0.0, 1.0);
                                  const auto ra = restrict_average(prev, s.cells());
                                  for (std::size_t j = 0; j < ref.size(); ++j) ref[j] = (1.0 - w) * ra[j] + w * rb[j];
                              }
                              tg.err = std::max(tg.err, l1_distance(s.level(tg.next), ref, s.grid().dx, s.components()));
                              ++tg.next;
                          }
                      }
                      prev.assign(u.begin(), u.end());
                      t_prev = t;
                  });
    std::vector<double> out;
    for (const auto& tg : targets) out.push_back(tg.err);
    return out;
}

std::vector<std::optional<double>> eoc(const std::vector<double>& values) {
    std::vector<std::optional<double>> out;
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        if (values[k] > 0.0 && values[k + 1] > 0.0) {
            out.emplace_back(-std::log2(values[k + 1] / values[k]));
        } else {
            out.emplace_back(std::nullopt);
        }
    }
    return out;
}

CaseRun run_case(const CaseConfig& config, bool keep_cells, bool defer_fine) {
    CaseRun r{solve_case(config, config.level), {}};
    auto& res = r.result;
    res.level = config.level;
    res.cells = r.solution.cells();
    res.steps = r.solution.steps();
    res.estimate = error_estimator(r.solution, config.sigma, config.slab_mode, true, keep_cells);
    switch (config.reference.kind) {
        case ReferenceSpec::Kind::Exact: {
            if (config.pieces) throw ConfigError("the exact reference needs Riemann initial data");
            const WaveFan fan = solve_riemann(config.model, config.left, config.right);
            res.error = linf_l1_error_exact(r.solution, fan, config.fan_start);
            break;
        }
        case ReferenceSpec::Kind::Fine:
            if (config.reference.level <= config.level) {
                throw ConfigError(fmt::format("reference level {} must exceed level {}", config.reference.level,
                                              config.level));
            }
            if (!defer_fine) res.error = fine_reference_errors(config, config.reference.level, {&r.solution}).front();
            break;
        case ReferenceSpec::Kind::None: break;
    }
    return r;
}

EoCTable converge(const CaseConfig& config, unsigned level_min, unsigned level_max, const LevelCallback& on_level,
                  bool keep_cells) {
    if (level_max < level_min + 1) throw ConfigError("converge needs at least two levels");
    std::vector<CaseRun> runs;
    for (unsigned L = level_min; L <= level_max; ++L) {
        CaseConfig c = config;
        c.level = L;
        runs.push_back(run_case(c, keep_cells, true));
        runs.back().solution.drop_flux_cache();
    }
    if (config.reference.kind == ReferenceSpec::Kind::Fine) {
        std::vector<const SpaceTimeSolution*> sols;
        for (const auto& r : runs) sols.push_back(&r.solution);
        const auto errs = fine_reference_errors(config, config.reference.level, sols);
        for (std::size_t k = 0; k < runs.size(); ++k) runs[k].result.error = errs[k];
    }
    EoCTable table;
    table.case_name = config.name;
    for (auto& r : runs) {
        if (on_level) {
            CaseConfig c = config;
            c.level = r.result.level;
            on_level(c, r);
        }
        r.result.estimate.partitions.clear();
        r.result.estimate.residual.bound.clear();
        r.result.estimate.residual.triplets.clear();
        table.rows.push_back(std::move(r.result));
    }
    return table;
}

namespace {

std::string fmt5(double v) { return fmt::format("{:.5g}", v); }

std::string fmt_eoc(const std::optional<double>& v) { return v ? fmt::format("{:.5g}", *v) : std::string(); }

}  // namespace

void write_eoc_csv(std::ostream& os, const EoCTable& table) {
    std::vector<double> eps, es, eg, err;
    bool have_err = true;
    for (const auto& r : table.rows) {
        eps.push_back(r.estimate.epsilon);
        es.push_back(r.estimate.estimate_surge);
        eg.push_back(r.estimate.estimate_smooth);
        err.push_back(r.error.value_or(0.0));
        have_err = have_err && r.error.has_value();
    }
    const auto e_eps = eoc(eps), e_es = eoc(es), e_eg = eoc(eg), e_err = eoc(err);
    os << "L,eps,EoC_eps,eps13,E_S,EoC_E_S,E_G,EoC_E_G,linf_l1_err,EoC_err\n";
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
        const auto& r = table.rows[k];
        const std::optional<double> none;
        fmt::print(os, "{},{},{},{},{},{},{},{},{},{}\n", r.level, fmt5(eps[k]), fmt_eoc(k ? e_eps[k - 1] : none),
                   fmt5(r.estimate.eps13), fmt5(es[k]), fmt_eoc(k ? e_es[k - 1] : none), fmt5(eg[k]),
                   fmt_eoc(k ? e_eg[k - 1] : none), r.error ? fmt5(*r.error) : std::string(),
                   have_err ? fmt_eoc(k ? e_err[k - 1] : none) : std::string());
    }
}

void write_report_json(std::ostream& os, const CaseConfig& config, const LevelResult& result) {
    const auto& e = result.estimate;
    nlohmann::json j;
    j["schema"] = 1;
    j["case"] = config.name;
    j["model"] = config.model.name();
    j["flux"] = to_string(config.flux);
    j["level"] = result.level;
    j["cells"] = result.cells;
    j["steps"] = result.steps;
    j["cfl"] = config.cfl;
    j["sigma"] = config.sigma;
    j["slab_size"] = to_string(config.slab_mode);
    j["t0"] = config.t0;
    j["T"] = config.T;
    j["reference"] = to_string(config.reference);
    j["residual"] = {{"beta", e.residual.beta},     {"eta", e.residual.eta},        {"C", e.residual.C},
                     {"tv_max", e.residual.tv_max}, {"max_dt_dx", e.residual.max_ratio}};
    j["epsilon"] = e.epsilon;
    j["eps13"] = e.eps13;
    j["E_S"] = e.estimate_surge;
    j["E_G"] = e.estimate_smooth;
    j["constants"] = "C_S = C_G = 1; the true stability constants are not computable";
    j["kappa_prime_max"] = e.kappa_prime_max;
    j["delta_max"] = e.delta_max;
    j["surge_total"] = e.surge_total;
    j["kappa_sum"] = e.kappa_sum;
    j["C0"] = e.c0;
    j["linf_l1_error"] = result.error ? nlohmann::json(*result.error) : nlohmann::json(nullptr);
    j["slabs"] = nlohmann::json::array();
    for (std::size_t mu = 0; mu < e.slabs.size(); ++mu) {
        const auto& s = e.slabs[mu];
        nlohmann::json js = {{"n0", s.n0},       {"n1", s.n1},     {"t0", s.t0},
                             {"t1", s.t1},       {"surges", s.surges}, {"kappa", s.kappa},
                             {"kappa_prime", s.kappa_prime}, {"delta", s.delta}, {"C0", s.c0},
                             {"cover_ok", s.cover_ok}};
        if (mu < e.partitions.size()) {
            js["surge_trapezoids"] = nlohmann::json::array();
            for (const auto& st : e.partitions[mu].surges) {
                js["surge_trapezoids"].push_back({{"x0", st.x0},
                                                  {"lambda", st.lambda},
                                                  {"delta_l", st.delta_l},
                                                  {"delta_r", st.delta_r},
                                                  {"kappa", st.kappa}});
            }
        }
        j["slabs"].push_back(js);
    }
    os << j.dump(2) << '\n';
}

}  // namespace fvpost
