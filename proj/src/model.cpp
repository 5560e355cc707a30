#include "fvpost/model.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace fvpost {

ConservationLaw ConservationLaw::burgers() { return ConservationLaw(ModelKind::Burgers, 0.0, 0.0); }

ConservationLaw ConservationLaw::psystem(double pressure_constant, double gamma) {
    if (!(pressure_constant > 0.0) || !(gamma > 1.0)) {
        throw ConfigError(fmt::format("p-system requires C > 0 and gamma > 1 (got C={}, gamma={})",
                                      pressure_constant, gamma));
    }
    return ConservationLaw(ModelKind::PSystem, pressure_constant, gamma);
}

std::string ConservationLaw::name() const { return kind_ == ModelKind::Burgers ? "burgers" : "psystem"; }

bool ConservationLaw::in_domain(const State& u) const {
    if (kind_ == ModelKind::Burgers) return std::isfinite(u[0]);
    return std::isfinite(u[0]) && std::isfinite(u[1]) && u[0] > 0.0;
}

void ConservationLaw::require_domain(const State& u) const {
    if (!in_domain(u)) {
        throw DomainError(fmt::format("state ({}, {}) outside the domain of the {} model", u[0], u[1], name()));
    }
}

double ConservationLaw::pressure(double rho) const { return C_ * std::pow(rho, gamma_); }

double ConservationLaw::sound_speed(double rho) const {
    return std::sqrt(C_ * gamma_ * std::pow(rho, gamma_ - 1.0));
}

State ConservationLaw::flux(const State& u) const {
    if (kind_ == ModelKind::Burgers) return make_state(0.5 * u[0] * u[0]);
    require_domain(u);
    const double rho = u[0], q = u[1];
    return make_state(q, q * q / rho + pressure(rho));
}

State ConservationLaw::wave_speeds(const State& u) const {
    if (kind_ == ModelKind::Burgers) return make_state(u[0]);
    require_domain(u);
    const double v = u[1] / u[0];
    const double c = sound_speed(u[0]);
    return make_state(v - c, v + c);
}

double ConservationLaw::max_speed(const State& u) const { return linf(wave_speeds(u), components()); }

double ConservationLaw::min_wave_speed(const State& u) const { return wave_speeds(u)[0]; }

double ConservationLaw::max_wave_speed(const State& u) const { return wave_speeds(u)[components() - 1]; }

double ConservationLaw::entropy(const State& u) const {
    if (kind_ == ModelKind::Burgers) return 0.5 * u[0] * u[0];
    require_domain(u);
    const double rho = u[0], q = u[1];
    return 0.5 * q * q / rho + C_ * std::pow(rho, gamma_) / (gamma_ - 1.0);
}

double ConservationLaw::entropy_flux(const State& u) const {
    if (kind_ == ModelKind::Burgers) return u[0] * u[0] * u[0] / 3.0;
    const double v = u[1] / u[0];
    return v * (entropy(u) + pressure(u[0]));
}

ConservationLaw parse_model(std::string_view name) {
    if (name == "burgers") return ConservationLaw::burgers();
    if (name == "psystem" || name == "p-system") return ConservationLaw::psystem();
    throw ConfigError(fmt::format("unknown model '{}' (expected burgers or psystem)", name));
}

FluxKind parse_flux_kind(std::string_view name) {
    if (name == "llf") return FluxKind::LaxFriedrichs;
    if (name == "godunov") return FluxKind::GodunovBurgers;
    if (name == "eo") return FluxKind::EngquistOsherBurgers;
    throw ConfigError(fmt::format("unknown flux '{}' (expected llf, godunov or eo)", name));
}

std::string to_string(FluxKind kind) {
    switch (kind) {
        case FluxKind::LaxFriedrichs: return "llf";
        case FluxKind::GodunovBurgers: return "godunov";
        case FluxKind::EngquistOsherBurgers: return "eo";
    }
    return "?";
}

void check_flux_supported(FluxKind kind, const ConservationLaw& model) {
    if (kind != FluxKind::LaxFriedrichs && model.kind() != ModelKind::Burgers) {
        throw ConfigError(fmt::format("flux '{}' is only available for the burgers model", to_string(kind)));
    }
}

namespace {

double godunov_burgers(double uL, double uR) {
    if (uL > uR) {
        // shock with speed (uL + uR)/2
        return (uL + uR > 0.0) ? 0.5 * uL * uL : 0.5 * uR * uR;
    }
    if (uL > 0.0) return 0.5 * uL * uL;
    if (uR < 0.0) return 0.5 * uR * uR;
    return 0.0;
}

double engquist_osher_burgers(double uL, double uR) {
    const double p = std::max(uL, 0.0);
    const double n = std::min(uR, 0.0);
    return 0.5 * p * p + 0.5 * n * n;
}

}  // namespace

State numerical_flux(FluxKind kind, const ConservationLaw& model, const State& uL, const State& uR) {
    switch (kind) {
        case FluxKind::LaxFriedrichs: {
            const double lambda = std::max(model.max_speed(uL), model.max_speed(uR));
            return 0.5 * (model.flux(uL) + model.flux(uR)) - (0.5 * lambda) * (uR - uL);
        }
        case FluxKind::GodunovBurgers:
            check_flux_supported(kind, model);
            return make_state(godunov_burgers(uL[0], uR[0]));
        case FluxKind::EngquistOsherBurgers:
            check_flux_supported(kind, model);
            return make_state(engquist_osher_burgers(uL[0], uR[0]));
    }
    return State{};
}

double numerical_entropy_flux(const ConservationLaw& model, const State& uL, const State& uR) {
    const double lambda = std::max(model.max_speed(uL), model.max_speed(uR));
    return 0.5 * (model.entropy_flux(uL) + model.entropy_flux(uR)) -
           0.5 * lambda * (model.entropy(uR) - model.entropy(uL));
}

}  // namespace fvpost
