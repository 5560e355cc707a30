#pragma once

#include <string>
#include <string_view>

#include "fvpost/state.hpp"

namespace fvpost {

enum class ModelKind { Burgers, PSystem };

// A one-dimensional conservation law u_t + f(u)_x = 0 with a convex entropy pair.
//
// Burgers: f(u) = u^2/2, e = u^2/2, q = u^3/3.
// p-system (isentropic gas, conserved (rho, q = rho v)): f = (q, q^2/rho + C rho^gamma),
// entropy is the mechanical energy e = q^2/(2 rho) + C rho^gamma/(gamma - 1) with
// entropy flux v (e + p).
class ConservationLaw {
public:
    static ConservationLaw burgers();
    static ConservationLaw psystem(double pressure_constant = 1.0, double gamma = 1.4);

    ModelKind kind() const { return kind_; }
    std::size_t components() const { return kind_ == ModelKind::Burgers ? 1 : 2; }
    std::string name() const;
    double pressure_constant() const { return C_; }
    double gamma() const { return gamma_; }

    bool in_domain(const State& u) const;
    // Throws DomainError if u is outside the state domain.
    void require_domain(const State& u) const;

    State flux(const State& u) const;
    // Eigenvalues of Df(u) in increasing order; for m = 1 only [0] is meaningful.
    State wave_speeds(const State& u) const;
    // max_i |lambda_i(u)|
    double max_speed(const State& u) const;
    double min_wave_speed(const State& u) const;
    double max_wave_speed(const State& u) const;

    double entropy(const State& u) const;
    double entropy_flux(const State& u) const;

    // p-system helpers
    double pressure(double rho) const;
    double sound_speed(double rho) const;

private:
    ConservationLaw(ModelKind k, double C, double gamma) : kind_(k), C_(C), gamma_(gamma) {}

    ModelKind kind_;
    double C_;
    double gamma_;
};

ConservationLaw parse_model(std::string_view name);

enum class FluxKind { LaxFriedrichs, GodunovBurgers, EngquistOsherBurgers };

FluxKind parse_flux_kind(std::string_view name);
std::string to_string(FluxKind kind);

// Throws ConfigError when the flux is not available for the model.
void check_flux_supported(FluxKind kind, const ConservationLaw& model);

State numerical_flux(FluxKind kind, const ConservationLaw& model, const State& uL, const State& uR);

// Local Lax-Friedrichs numerical entropy flux
//   q^(uL, uR) = (q(uL) + q(uR))/2 - lambda_max (e(uR) - e(uL))/2.
double numerical_entropy_flux(const ConservationLaw& model, const State& uL, const State& uR);

}  // namespace fvpost
