#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "fvpost/experiment.hpp"

namespace fs = std::filesystem;
using namespace fvpost;

namespace {

struct Options {
    std::string case_name = "custom";
    unsigned level = 7;
    std::string levels;
    std::optional<double> cfl, sigma, t0, T, x_min, x_max, fan_start;
    std::string slab_size, flux, ref, model, left, right, ic_breaks, ic_pieces;
    std::string out = ".";
    std::string dump;
    bool cells = false;
    std::string audit_file;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

double to_double(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(fmt::format("'{}' is not a number", s));
}

State parse_state(const std::string& s, std::size_t m) {
    const auto parts = split(s, ',');
    if (parts.size() != m) throw ConfigError(fmt::format("state '{}' needs {} component(s)", s, m));
    State u{};
    for (std::size_t c = 0; c < m; ++c) u[c] = to_double(parts[c]);
    return u;
}

// "intercept:slope;intercept:slope;..." with comma-separated components.
PiecewiseLinear parse_pieces(const std::string& breaks, const std::string& pieces, std::size_t m) {
    PiecewiseLinear p;
    if (!breaks.empty()) {
        for (const auto& b : split(breaks, ',')) p.breaks.push_back(to_double(b));
    }
    if (!std::is_sorted(p.breaks.begin(), p.breaks.end())) throw ConfigError("--ic-breaks must be increasing");
    for (const auto& piece : split(pieces, ';')) {
        const auto ab = split(piece, ':');
        if (ab.size() != 2) throw ConfigError(fmt::format("piece '{}' must read intercept:slope", piece));
        p.intercept.push_back(parse_state(ab[0], m));
        p.slope.push_back(parse_state(ab[1], m));
    }
    if (p.intercept.size() != p.breaks.size() + 1) {
        throw ConfigError(fmt::format("{} breaks need {} pieces, got {}", p.breaks.size(), p.breaks.size() + 1,
                                      p.intercept.size()));
    }
    return p;
}

std::pair<unsigned, unsigned> parse_levels(const std::string& s) {
    const auto pos = s.find("..");
    if (pos == std::string::npos) throw ConfigError(fmt::format("--levels '{}' must read A..B", s));
    const double a = to_double(s.substr(0, pos)), b = to_double(s.substr(pos + 2));
    if (a < 0 || b < 0 || a != std::floor(a) || b != std::floor(b)) {
        throw ConfigError(fmt::format("--levels '{}' must hold non-negative integers", s));
    }
    return {static_cast<unsigned>(a), static_cast<unsigned>(b)};
}

CaseConfig build_config(const Options& o) {
    CaseConfig c = make_case(o.case_name);
    if (!o.model.empty()) c.model = parse_model(o.model);
    const std::size_t m = c.model.components();
    if (!o.left.empty()) c.left = parse_state(o.left, m);
    if (!o.right.empty()) c.right = parse_state(o.right, m);
    if (!o.ic_pieces.empty()) {
        c.pieces = parse_pieces(o.ic_breaks, o.ic_pieces, m);
    } else if (!o.ic_breaks.empty()) {
        throw ConfigError("--ic-breaks needs --ic-pieces");
    }
    if (o.cfl) c.cfl = *o.cfl;
    if (o.sigma) c.sigma = *o.sigma;
    if (o.t0) c.t0 = *o.t0;
    if (o.T) c.T = *o.T;
    if (o.x_min) c.x_min = *o.x_min;
    if (o.x_max) c.x_max = *o.x_max;
    if (o.fan_start) c.fan_start = *o.fan_start;
    if (!o.slab_size.empty()) c.slab_mode = parse_slab_mode(o.slab_size);
    if (!o.flux.empty()) c.flux = parse_flux_kind(o.flux);
    if (!o.ref.empty()) c.reference = parse_reference(o.ref);
    c.level = o.level;
    if (!(c.T > c.t0)) throw ConfigError(fmt::format("T = {} must exceed t0 = {}", c.T, c.t0));
    if (!(c.cfl > 0.0)) throw ConfigError("cfl must be positive");
    check_flux_supported(c.flux, c.model);
    return c;
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
    std::ofstream f(dir / name);
    if (!f) throw std::runtime_error(fmt::format("cannot write {}", (dir / name).string()));
    return f;
}

void close_out(std::ofstream& f, const fs::path& path) {
    f.close();
    if (!f) throw std::runtime_error(fmt::format("write to {} failed", path.string()));
}

template <class Fn>
void write_file(const fs::path& dir, const std::string& name, Fn&& fn) {
    auto f = open_out(dir, name);
    fn(f);
    close_out(f, dir / name);
}

void write_level_outputs(const fs::path& dir, const CaseConfig& c, const SpaceTimeSolution& sol,
                         const LevelResult& r, bool cells) {
    write_file(dir, "report.json", [&](std::ostream& os) { write_report_json(os, c, r); });
    write_file(dir, "slabs.csv", [&](std::ostream& os) { write_slab_csv(os, r.estimate); });
    write_file(dir, "partition.json", [&](std::ostream& os) { write_partition_json(os, r.estimate.partitions); });
    write_file(dir, "partition.svg", [&](std::ostream& os) { write_partition_svg(os, sol, r.estimate.partitions); });
    if (cells) write_file(dir, "cells.csv", [&](std::ostream& os) { write_residual_cells(os, sol, r.estimate.residual); });
}

void print_summary(const CaseConfig& c, const LevelResult& r) {
    const auto& e = r.estimate;
    fmt::print("{} L={} cells={} steps={}\n", c.name, r.level, r.cells, r.steps);
    fmt::print("  eps={:.5g} eps13={:.5g} E_S={:.5g} E_G={:.5g} surges={} slabs={}\n", e.epsilon, e.eps13,
               e.estimate_surge, e.estimate_smooth, e.surge_total, e.slabs.size());
    if (r.error) fmt::print("  LinfL1 error={:.5g}\n", *r.error);
}

int cmd_run(const Options& o) {
    const CaseConfig c = build_config(o);
    const fs::path dir(o.out);
    fs::create_directories(dir);
    const CaseRun run = run_case(c, o.cells);
    write_level_outputs(dir, c, run.solution, run.result, o.cells);
    if (!o.dump.empty()) {
        std::ofstream f(o.dump);
        if (!f) throw std::runtime_error(fmt::format("cannot write {}", o.dump));
        write_solution(f, run.solution);
        close_out(f, o.dump);
    }
    print_summary(c, run.result);
    return 0;
}

int cmd_converge(const Options& o) {
    if (o.levels.empty()) throw ConfigError("converge needs --levels A..B");
    const auto [lo, hi] = parse_levels(o.levels);
    const CaseConfig c = build_config(o);
    const fs::path dir(o.out);
    fs::create_directories(dir);
    const EoCTable table = converge(
        c, lo, hi,
        [&](const CaseConfig& cl, const CaseRun& run) {
            const fs::path sub = dir / fmt::format("L{}", cl.level);
            fs::create_directories(sub);
            write_level_outputs(sub, cl, run.solution, run.result, o.cells);
        },
        o.cells);
    write_file(dir, "eoc.csv", [&](std::ostream& os) { write_eoc_csv(os, table); });
    write_eoc_csv(std::cout, table);
    return 0;
}

int cmd_audit(const Options& o) {
    std::ifstream f(o.audit_file);
    if (!f) throw std::runtime_error(fmt::format("cannot read {}", o.audit_file));
    const SpaceTimeSolution sol = read_solution(f);
    CaseConfig c = make_case("custom");
    c.name = "audit";
    c.model = sol.model();
    c.flux = sol.flux_kind();
    c.cfl = sol.cfl();
    c.t0 = sol.time(0);
    c.T = sol.times().back();
    c.x_min = sol.grid().x_min;
    c.x_max = sol.grid().x_max;
    if (o.sigma) c.sigma = *o.sigma;
    if (!o.slab_size.empty()) c.slab_mode = parse_slab_mode(o.slab_size);
    LevelResult r;
    for (unsigned L = 0; L < 32; ++L) {
        if ((std::size_t{2} << L) == sol.cells()) r.level = c.level = L;
    }
    r.cells = sol.cells();
    r.steps = sol.steps();
    r.estimate = error_estimator(sol, c.sigma, c.slab_mode, true, o.cells);
    const fs::path dir(o.out);
    fs::create_directories(dir);
    write_level_outputs(dir, c, sol, r, o.cells);
    print_summary(c, r);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-volume solver with a posteriori error estimation for 1D conservation laws"};
    app.set_config("--config", "", "key=value file mirroring the long options");
    app.require_subcommand(1);
    Options o;

    app.add_option("--case", o.case_name, "psys-2raref, psys-raref-shock, burgers-curved or custom")
        ->capture_default_str();
    app.add_option("--level", o.level, "grid level L (2*2^L cells)")->capture_default_str();
    app.add_option("--levels", o.levels, "level range A..B for converge");
    app.add_option("--cfl", o.cfl, "CFL number (0.9)");
    app.add_option("--sigma", o.sigma, "minimal surge strength (0.1)");
    app.add_option("--slab-size", o.slab_size, "eps13 or eps");
    app.add_option("--flux", o.flux, "llf, godunov or eo");
    app.add_option("--ref", o.ref, "exact, fine:L or none");
    app.add_option("--out", o.out, "output directory")->capture_default_str();
    app.add_option("--model", o.model, "burgers or psystem");
    app.add_option("--left", o.left, "left Riemann state, comma separated");
    app.add_option("--right", o.right, "right Riemann state, comma separated");
    app.add_option("--fan-start", o.fan_start, "time at which the Riemann step sits at x = 0");
    app.add_option("--ic-breaks", o.ic_breaks, "breakpoints of piecewise-linear data, comma separated");
    app.add_option("--ic-pieces", o.ic_pieces, "pieces intercept:slope separated by ';'");
    app.add_option("--t0", o.t0, "start time");
    app.add_option("--T", o.T, "final time");
    app.add_option("--x-min", o.x_min, "left domain end (-5)");
    app.add_option("--x-max", o.x_max, "right domain end (5)");
    app.add_flag("--cells", o.cells, "also write per-cell residuals to cells.csv");

    auto* run = app.add_subcommand("run", "solve and estimate one level");
    run->add_option("--dump", o.dump, "write the space-time solution to this file");
    auto* conv = app.add_subcommand("converge", "run a level range and write eoc.csv");
    auto* audit = app.add_subcommand("audit", "re-estimate a dumped solution");
    audit->add_option("file", o.audit_file, "solution dump")->required();
    for (auto* sub : {run, conv, audit}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run) return cmd_run(o);
        if (*conv) return cmd_converge(o);
        return cmd_audit(o);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
