#pragma once

#include "itkit/errors.hpp"
#include "itkit/rational.hpp"

namespace itkit {

// Exact evaluation of the three feasibility conditions tying the lazy-update
// thresholds (mu, U, rho) to (r, eps). Nonsensical tuples (nonpositive, or
// mu >= 1) are simply infeasible.
inline bool is_feasible(const Rational& mu, const Rational& u, const Rational& rho, int r,
                        const Rational& eps) {
    if (r < 2) return false;
    if (!(mu > 0) || !(u > 0) || !(rho > 0) || !(eps > 0)) return false;
    if (!(mu < 1)) return false;
    const Rational one_minus_mu = 1 - mu;
    const Rational slack = 1 - (Rational(1) / u) * ((1 + mu * u) / one_minus_mu + rho);
    if (!((2 + eps) * slack > (2 + mu * (r + 2) + rho * (r + 1)) / one_minus_mu)) return false;
    if (!(eps * slack > (mu * (r + 4) + rho * (r + 2)) / one_minus_mu)) return false;
    if (!(u - mu * rho > rho)) return false;
    return true;
}

struct EngineParams {
    int r = 2;
    Rational eps;
    Rational mu, u, rho;
    Rational b;  // u / (u - mu*rho), the signature base; > 1 for feasible tuples

    // The standard tuple (eps/10r, 10r/eps, eps/10r); requires 0 < eps < 1.
    static EngineParams defaults(int r, const Rational& eps) {
        if (r < 2) throw PreconditionViolationError("r >= 2 required");
        if (!(eps > 0) || !(eps < 1))
            throw PreconditionViolationError("defaults requires 0 < eps < 1");
        return from_tuple(r, eps, eps / (10 * r), Rational(10 * r) / eps, eps / (10 * r));
    }

    // Accepts any eps > 0. For eps >= 1 the tuple is built from eps' = 1/2;
    // the smaller eps' only strengthens the certificate, and the conditions
    // are re-verified exactly against the caller's eps.
    static EngineParams for_epsilon(int r, const Rational& eps) {
        if (r < 2) throw PreconditionViolationError("r >= 2 required");
        if (!(eps > 0)) throw PreconditionViolationError("eps > 0 required");
        if (eps < 1) return defaults(r, eps);
        EngineParams base = defaults(r, Rational(1, 2));
        return from_tuple(r, eps, base.mu, base.u, base.rho);
    }

    static EngineParams from_tuple(int r, const Rational& eps, const Rational& mu,
                                   const Rational& u, const Rational& rho) {
        if (!is_feasible(mu, u, rho, r, eps))
            throw InfeasibleParamsError("(mu,U,rho) tuple infeasible for (r,eps)");
        EngineParams p;
        p.r = r;
        p.eps = eps;
        p.mu = mu;
        p.u = u;
        p.rho = rho;
        p.b = u / (u - mu * rho);
        return p;
    }

    // For deserialization paths that must not enforce feasibility (the
    // verifier checks certificates as given).
    static EngineParams raw(int r, Rational eps, Rational mu, Rational u, Rational rho) {
        EngineParams p;
        p.r = r;
        p.eps = std::move(eps);
        p.mu = std::move(mu);
        p.u = std::move(u);
        p.rho = std::move(rho);
        p.b = p.u - p.mu * p.rho != 0 ? p.u / (p.u - p.mu * p.rho) : Rational(0);
        return p;
    }
};

} // namespace itkit
