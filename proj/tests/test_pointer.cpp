#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "test_helpers.hpp"
#include "wva/pointer.hpp"

using namespace wva;
using wva::testing::near;
using wva::testing::rel_near;

namespace {

// Independent oracle: for a Gaussian pointer the exact post-selected means
// reduce to two-Gaussian overlap algebra. Derived by hand from
//   phi(q) = c+ G(q - tau) + c- G(q + tau),
// using <G(.-a), G(.-b)> = exp(-(a-b)^2 W^2 / 2) for Var(p) = W^2.
ExactShift analytic_shift(const SchemeConfig& cfg, double w, double tau) {
    const PolarizationState pre = pre_state(cfg);
    const PolarizationState post = post_state(cfg);
    const Complex cp = std::conj(post.amp_h()) * pre.amp_h();
    const Complex cm = std::conj(post.amp_v()) * pre.amp_v();
    const double overlap = std::exp(-2.0 * tau * tau * w * w);
    const double norm2 = std::norm(cp) + std::norm(cm) +
                         2.0 * (cp * std::conj(cm)).real() * overlap;
    const double dq = tau * (std::norm(cp) - std::norm(cm)) / norm2;
    const double dp =
        4.0 * tau * w * w * (cp * std::conj(cm)).imag() * overlap / norm2;
    return {dq, dp, norm2};
}

}  // namespace

TEST_CASE("pointer validation") {
    CHECK_THROWS_AS(GaussianPointer(0.0, 1e-6), InvalidArgument);
    CHECK_THROWS_AS(GaussianPointer(-1.0, 1e-6), InvalidArgument);
    CHECK_THROWS_AS(GaussianPointer(1.0, std::nan("")), InvalidArgument);
    CHECK_NOTHROW(GaussianPointer(1.0, -0.01));  // reversed displacement
}

TEST_CASE("first-order shifts") {
    SUBCASE("purely real weak value moves the position mean") {
        const WeakValueResult wv{Complex{1.0, 0.0}, 1.0, 0.0, 1.0, 0.5};
        const PointerShift shift = first_order_shifts(wv, {1.0, 0.01});
        CHECK(shift.dq == 0.01);
        CHECK(shift.dp == 0.0);
        CHECK(shift.weakness == 0.01);
        CHECK_FALSE(shift.weak_regime_exceeded);
    }
    SUBCASE("purely imaginary weak value moves the momentum mean") {
        const WeakValueResult wv = closed_form(scheme_b(0.002));
        const PointerShift shift = first_order_shifts(wv, {1.0, 1e-6});
        CHECK(shift.dq == 0.0);
        CHECK(near(shift.dp, -0.0009999986666663111, 1e-17));
        CHECK(near(shift.weakness, 4.9999933333315556e-4, 1e-12));
    }
    SUBCASE("plural weak value moves both") {
        const WeakValueResult wv = closed_form(scheme_c(0.002, 0.002));
        const PointerShift shift = first_order_shifts(wv, {1.0, 1e-6});
        CHECK(rel_near(shift.dq, 2.500006666679111e-4, 1e-12));
        CHECK(rel_near(shift.dp, -4.999973333304889e-4, 1e-12));
        CHECK(rel_near(shift.weakness, 3.535529191914557e-4, 1e-12));
    }
    SUBCASE("weak-regime warning") {
        const WeakValueResult wv = closed_form(scheme_b(0.002));
        CHECK(first_order_shifts(wv, {1.0, 1e-3}).weak_regime_exceeded);
        CHECK_FALSE(
            first_order_shifts(wv, {1.0, 1e-3}, 2.0).weak_regime_exceeded);
        // w^2 scales dp
        const PointerShift wide = first_order_shifts(wv, {2.0, 1e-6});
        CHECK(rel_near(wide.dp, 4.0 * -0.0009999986666663111, 1e-12));
    }
}

TEST_CASE("exact evolution: single-eigenstate case is a pure displacement") {
    // alpha = pi/4 projects the pre-selected state onto |H>, so the pointer
    // is one displaced Gaussian: first order is exact.
    const SchemeConfig cfg = scheme_a(std::numbers::pi / 4.0);
    const ExactShift exact = evolve_exact(cfg, {1.0, 0.01});
    CHECK(near(exact.dq, 0.01, 1e-12));
    CHECK(near(exact.dp, 0.0, 1e-12));
    CHECK(near(exact.prob, 0.5, 1e-9));
}

TEST_CASE("exact evolution: no interaction reproduces the overlap") {
    for (const SchemeConfig& cfg :
         {scheme_a(0.1), scheme_b(0.05), scheme_c(0.002, 0.002)}) {
        const ExactShift exact = evolve_exact(cfg, {1.0, 0.0});
        CHECK(near(exact.dq, 0.0, 1e-12));
        CHECK(near(exact.dp, 0.0, 1e-12));
        CHECK(rel_near(exact.prob, closed_form(cfg).prob, 1e-9));
    }
}

TEST_CASE("exact evolution matches first order in the weak regime") {
    const SchemeConfig cfg = scheme_a(0.1);
    const ExactShift exact = evolve_exact(cfg, {1.0, 1e-4});
    const double first = 1e-4 * closed_form(cfg).re;
    CHECK(rel_near(exact.dq, first, 1e-2));
    // frozen independent evaluation of the overlap algebra
    CHECK(rel_near(exact.dq, 0.0009966634622668741, 1e-11));
}

TEST_CASE("exact evolution agrees with the overlap-algebra oracle") {
    const GaussianPointer ptrs[] = {{1.0, 1e-3}, {1.0, 0.05}, {2.0, 1e-2},
                                    {0.5, -1e-3}};
    for (const SchemeConfig& cfg :
         {scheme_a(0.1), scheme_b(0.1), scheme_c(0.002, 0.002),
          scheme_c(0.3, -0.2)}) {
        for (const GaussianPointer& ptr : ptrs) {
            const ExactShift quad = evolve_exact(cfg, ptr);
            const ExactShift ref = analytic_shift(cfg, ptr.w, ptr.tau);
            CHECK(near(quad.dq, ref.dq, 1e-9 * std::max(1.0, std::abs(ref.dq))));
            CHECK(near(quad.dp, ref.dp, 1e-9 * std::max(1.0, std::abs(ref.dp))));
            CHECK(rel_near(quad.prob, ref.prob, 1e-9));
        }
    }
}

TEST_CASE("exact evolution is invariant under grid doubling") {
    const SchemeConfig cfg = scheme_c(0.05, 0.02);
    const ExactShift coarse = evolve_exact(cfg, {1.0, 1e-3}, {1u << 12});
    const ExactShift fine = evolve_exact(cfg, {1.0, 1e-3}, {1u << 13});
    CHECK(near(coarse.dq, fine.dq, 1e-9));
    CHECK(near(coarse.dp, fine.dp, 1e-9));
    CHECK(near(coarse.prob, fine.prob, 1e-9));
}

TEST_CASE("parity: reversing tau negates both shifts for real couplings") {
    const SchemeConfig cfg = scheme_a(0.1);
    const ExactShift fwd = evolve_exact(cfg, {1.0, 1e-3});
    const ExactShift rev = evolve_exact(cfg, {1.0, -1e-3});
    CHECK(near(rev.dq, -fwd.dq, 1e-12));
    CHECK(near(rev.dp, -fwd.dp, 1e-12));
    CHECK(rel_near(rev.prob, fwd.prob, 1e-12));
}

TEST_CASE("exact evolution resolution guards") {
    const SchemeConfig cfg = scheme_a(0.1);
    CHECK_THROWS_AS(evolve_exact(cfg, {1.0, 1e-4}, {16}), ResolutionError);
    CHECK_NOTHROW(evolve_exact(cfg, {1.0, 1e-4}, {64}));
    CHECK_THROWS_AS(evolve_exact(cfg, {1.0, 1e-4}, {1}), InvalidArgument);
    // wide momentum oscillation versus a narrow momentum grid
    CHECK_THROWS_AS(evolve_exact(cfg, {0.01, 33000.0}), ResolutionError);
}

TEST_CASE("exact evolution rejects fully orthogonal selection at tau = 0") {
    CHECK_THROWS_AS(evolve_exact(scheme_a(0.0), {1.0, 0.0}),
                    OrthogonalPostselection);
}

TEST_CASE("convergence study shows quadratic-or-better truncation decay") {
    SUBCASE("single-eigenstate case has no truncation error at all") {
        const std::vector<ConvergenceRow> rows = convergence_study(
            scheme_a(std::numbers::pi / 4.0), 1.0, {1e-2, 1e-3});
        for (const ConvergenceRow& row : rows) {
            CHECK(row.ok);
            CHECK(near(row.dq_residual(), 0.0, 1e-12));
            CHECK(near(row.dp_residual(), 0.0, 1e-12));
        }
    }
    SUBCASE("position residual for a real weak value") {
        const std::vector<ConvergenceRow> rows = convergence_study(
            scheme_a(0.1), 1.0, {8e-4, 4e-4, 2e-4, 1e-4});
        for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
            CHECK(rows[i].ok);
            CHECK(std::abs(rows[i + 1].dq_residual()) <=
                  0.3 * std::abs(rows[i].dq_residual()));
        }
        // frozen overlap-algebra value at tau = 8e-4
        CHECK(near(rows[0].dq_residual(), -5.017588332224254e-07, 1e-13));
        // the momentum first-order shift is identically zero here
        for (const ConvergenceRow& row : rows) {
            CHECK(row.dp_first == 0.0);
            CHECK(near(row.dp_exact, 0.0, 1e-12));
            CHECK(rel_near(row.weakness,
                           std::abs(row.tau) * 9.966644423259238, 1e-12));
        }
    }
    SUBCASE("momentum residual for an imaginary weak value") {
        const std::vector<ConvergenceRow> rows =
            convergence_study(scheme_b(0.1), 1.0, {8e-4, 4e-4, 2e-4});
        for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
            CHECK(std::abs(rows[i + 1].dp_residual()) <=
                  0.3 * std::abs(rows[i].dp_residual()));
        }
        CHECK(near(rows[0].dp_residual(), 1.02392805665842e-06, 1e-12));
        for (const ConvergenceRow& row : rows) {
            CHECK(row.dq_first == 0.0);
            CHECK(near(row.dq_exact, 0.0, 1e-12));
        }
    }
    SUBCASE("rows that fail the grid check are flagged, not dropped") {
        const std::vector<ConvergenceRow> rows = convergence_study(
            scheme_a(0.1), 0.01, {1e-4, 33000.0}, {1u << 14});
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].ok);
        CHECK_FALSE(rows[1].ok);
        CHECK(std::isnan(rows[1].dq_exact));
        CHECK(rows[1].tau == 33000.0);
    }
}
