#include <catch2/catch_amalgamated.hpp>

#include "itkit/params.hpp"

using namespace itkit;

namespace {

// Independent restatement of the three feasibility inequalities, evaluated
// term by term.
bool feasible_reference(const Rational& mu, const Rational& u, const Rational& rho, int r,
                        const Rational& eps) {
    if (!(mu > 0 && mu < 1 && u > 0 && rho > 0)) return false;
    Rational inner = (1 + mu * u) / (1 - mu) + rho;
    Rational bracket = 1 - inner / u;
    Rational lhs1 = (2 + eps) * bracket;
    Rational rhs1 = (2 + mu * Rational(r + 2) + rho * Rational(r + 1)) / (1 - mu);
    Rational lhs2 = eps * bracket;
    Rational rhs2 = (mu * Rational(r + 4) + rho * Rational(r + 2)) / (1 - mu);
    return lhs1 > rhs1 && lhs2 > rhs2 && u - mu * rho > rho;
}

} // namespace

TEST_CASE("standard tuple for (2, 1/2)") {
    EngineParams p = EngineParams::defaults(2, Rational(1, 2));
    CHECK(p.mu == Rational(1, 40));
    CHECK(p.rho == Rational(1, 40));
    CHECK(p.u == Rational(40));
    CHECK(p.b == Rational("64000/63999"));
    CHECK(is_feasible(p.mu, p.u, p.rho, 2, p.eps));
    CHECK(feasible_reference(p.mu, p.u, p.rho, 2, p.eps));
}

TEST_CASE("defaults rejects eps outside (0,1)") {
    CHECK_THROWS_AS(EngineParams::defaults(3, Rational(1)), PreconditionViolationError);
    CHECK_THROWS_AS(EngineParams::defaults(3, Rational(0)), PreconditionViolationError);
    CHECK_THROWS_AS(EngineParams::defaults(3, Rational(-1, 2)), PreconditionViolationError);
    CHECK_THROWS_AS(EngineParams::defaults(1, Rational(1, 2)), PreconditionViolationError);
}

TEST_CASE("standard tuple for (5, 1/10) re-verified independently") {
    EngineParams p = EngineParams::defaults(5, Rational(1, 10));
    CHECK(p.mu == Rational(1, 500));
    CHECK(p.rho == Rational(1, 500));
    CHECK(p.u == Rational(500));
    CHECK(feasible_reference(p.mu, p.u, p.rho, 5, Rational(1, 10)));
}

TEST_CASE("is_feasible examples") {
    CHECK(is_feasible(Rational(1, 40), Rational(40), Rational(1, 40), 2, Rational(1, 2)));
    // condition 3 fails: U - mu*rho = 1/2 <= rho
    CHECK(!is_feasible(Rational(1, 2), Rational(1), Rational(1), 2, Rational(1, 2)));
    CHECK(!is_feasible(Rational(0), Rational(40), Rational(1, 40), 2, Rational(1, 2)));
    CHECK(!is_feasible(Rational(3, 2), Rational(40), Rational(1, 40), 2, Rational(1, 2)));
}

TEST_CASE("standard tuples are feasible across the sweep") {
    for (int r = 2; r <= 6; ++r)
        for (int num = 1; num <= 9; ++num) {
            Rational eps(num, 10);
            EngineParams p = EngineParams::defaults(r, eps);
            CHECK(is_feasible(p.mu, p.u, p.rho, r, eps));
            CHECK(feasible_reference(p.mu, p.u, p.rho, r, eps));
        }
}

TEST_CASE("for_epsilon clamps large eps while keeping the reported bound") {
    EngineParams p = EngineParams::for_epsilon(2, Rational(1));
    CHECK(p.eps == Rational(1));
    EngineParams half = EngineParams::defaults(2, Rational(1, 2));
    CHECK(p.mu == half.mu);
    CHECK(p.u == half.u);
    CHECK(p.rho == half.rho);
    CHECK(is_feasible(p.mu, p.u, p.rho, 2, p.eps));
    CHECK_THROWS_AS(EngineParams::for_epsilon(2, Rational(0)), PreconditionViolationError);
}

TEST_CASE("from_tuple rejects infeasible overrides") {
    CHECK_THROWS_AS(
        EngineParams::from_tuple(2, Rational(1, 2), Rational(1, 2), Rational(1), Rational(1)),
        InfeasibleParamsError);
}
