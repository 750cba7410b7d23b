#include <doctest.h>

#include <cmath>

#include "stokesopt/quadrature.hpp"

using namespace stokesopt;

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// Exact value of the monomial integral over the reference triangle.
double exact_monomial(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

double quad_monomial(const QuadratureRule& rule, int a, int b) {
    double s = 0.0;
    for (int q = 0; q < rule.size(); ++q)
        s += rule.weights[q] * std::pow(rule.points[q].x, a) * std::pow(rule.points[q].y, b);
    return s;
}

}  // namespace

TEST_CASE("triangle rules integrate monomials exactly up to their degree") {
    for (int degree : {1, 2, 3, 4, 5, 6, 7, 8, 10}) {
        const QuadratureRule rule = QuadratureRule::triangle(degree);
        CAPTURE(degree);
        for (int a = 0; a + 0 <= degree; ++a) {
            for (int b = 0; a + b <= degree; ++b) {
                CAPTURE(a);
                CAPTURE(b);
                CHECK(quad_monomial(rule, a, b) == doctest::Approx(exact_monomial(a, b)).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("weights are positive and sum to the reference area") {
    for (int degree : {1, 4, 6, 10}) {
        const QuadratureRule rule = QuadratureRule::triangle(degree);
        double sum = 0.0;
        for (int q = 0; q < rule.size(); ++q) {
            CHECK(rule.weights[q] > 0.0);
            sum += rule.weights[q];
        }
        CHECK(sum == doctest::Approx(0.5).epsilon(1e-14));
    }
}

TEST_CASE("points lie strictly inside the reference triangle") {
    const QuadratureRule rule = QuadratureRule::triangle(6);
    for (const Vec2& p : rule.points) {
        CHECK(p.x > 0.0);
        CHECK(p.y > 0.0);
        CHECK(p.x + p.y < 1.0);
    }
}
