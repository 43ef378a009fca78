#include <doctest.h>

#include "oracles.hpp"
#include "qtl/error.hpp"
#include "qtl/q_calculus.hpp"
#include "qtl/sobolev.hpp"

using namespace qtl;

namespace {

const cplx I(0.0, 1.0);

// Q-image commutator by plain matrix algebra.
qtl::Matrix i_commutator(const qtl::Matrix& a, const qtl::Matrix& b) { return I * (a * b - b * a); }

}  // namespace

TEST_SUITE("q_calculus") {
    TEST_CASE("operator commutator") {
        oracle::Rng rng(41);
        const CoeffGrid a = oracle::random_grid(rng, 4), b = oracle::random_grid(rng, 4), c = oracle::random_grid(rng, 4);
        CHECK(oracle::max_abs(op_commutator(a, a)) < 1e-13);
        CHECK(oracle::max_diff(op_commutator(a, b), -op_commutator(b, a)) == 0.0);
        CoeffGrid d1(3), d2(3);
        for (int k = -3; k <= 3; ++k) {
            d1(k, k) = rng.cnormal();
            d2(k, k) = rng.cnormal();
        }
        CHECK(oracle::max_abs(op_commutator(d1, d2)) == 0.0);
        const CoeffGrid jac = op_commutator(a, op_commutator(b, c)) + op_commutator(b, op_commutator(c, a)) +
                              op_commutator(c, op_commutator(a, b));
        CHECK(oracle::max_abs(jac) <= 1e-10 * oracle::max_abs(a) * oracle::max_abs(b) * oracle::max_abs(c));
        CHECK_THROWS_AS(op_commutator(a, CoeffGrid(2)), DimensionError);
    }

    TEST_CASE("field commutator matches the matrix definition") {
        oracle::Rng rng(42);
        for (int rep = 0; rep < 10; ++rep) {
            const CoeffGrid f = oracle::random_fourier_real(rng, 6), g = oracle::random_fourier_real(rng, 6);
            const CoeffGrid c = field_commutator(f, g);
            CHECK(is_fourier_real(c));
            const CoeffGrid ref = s_inv(CoeffGrid(6, i_commutator(s_map(f).matrix(), s_map(g).matrix())));
            CHECK(oracle::max_diff(c, ref) <= 1e-12 * oracle::max_abs(ref));
        }
    }

    TEST_CASE("field commutator examples") {
        oracle::Rng rng(43);
        const CoeffGrid f = oracle::random_fourier_real(rng, 5);
        CHECK(oracle::max_abs(field_commutator(f, f)) < 1e-12);
        CoeffGrid s(3);
        s(1, 1) = cplx(0.0, -0.5);
        s(-1, -1) = cplx(0.0, 0.5);
        CHECK(oracle::max_abs(field_commutator(oracle::cosine_grid(3, 1, 1), s)) == 0.0);
        CHECK_THROWS_AS(field_commutator(oracle::random_grid(rng, 2), oracle::random_fourier_real(rng, 2)), SymmetryError);
        for (double alpha : {0.0, 1.0, 2.0}) {
            const CoeffGrid p = oracle::random_fourier_real(rng, 6), q = oracle::random_fourier_real(rng, 6);
            CHECK(norm(field_commutator(p, q), alpha) <= 2.0 * norm(p, alpha) * norm(q, alpha));
        }
    }

    TEST_CASE("Jacobi identity, antisymmetry and bilinearity on fields") {
        oracle::Rng rng(44);
        for (int rep = 0; rep < 10; ++rep) {
            const CoeffGrid f = oracle::random_fourier_real(rng, 5), g = oracle::random_fourier_real(rng, 5),
                            h = oracle::random_fourier_real(rng, 5);
            const CoeffGrid jac = field_commutator(f, field_commutator(g, h)) + field_commutator(g, field_commutator(h, f)) +
                                  field_commutator(h, field_commutator(f, g));
            const double scale = oracle::max_abs(f) * oracle::max_abs(g) * oracle::max_abs(h);
            CHECK(oracle::max_abs(jac) <= 1e-10 * scale);
            CHECK(oracle::max_diff(field_commutator(f, g), -field_commutator(g, f)) <= 1e-13 * oracle::max_abs(field_commutator(f, g)));
            const double s = rng.normal(), t = rng.normal();
            const CoeffGrid lhs = field_commutator(s * f + t * h, g);
            const CoeffGrid rhs = s * field_commutator(f, g) + t * field_commutator(h, g);
            CHECK(oracle::max_diff(lhs, rhs) <= 1e-12 * oracle::max_abs(rhs));
        }
    }

    TEST_CASE("complex extension equals the Q-inverse of i[Qu, Qv]") {
        oracle::Rng rng(45);
        const ComplexField u{oracle::random_fourier_real(rng, 4), oracle::random_fourier_real(rng, 4)};
        const ComplexField v{oracle::random_fourier_real(rng, 4), oracle::random_fourier_real(rng, 4)};
        const ComplexField c = field_commutator(u, v);
        const ComplexField ref = q_inverse(CoeffGrid(4, i_commutator(q_transform(u).matrix(), q_transform(v).matrix())));
        CHECK(oracle::max_diff(c.re, ref.re) <= 1e-12 * oracle::max_abs(ref.re));
        CHECK(oracle::max_diff(c.im, ref.im) <= 1e-12 * oracle::max_abs(ref.im));
        // complex bilinearity
        const cplx z = rng.cnormal();
        const ComplexField lhs = field_commutator(z * u, v);
        const ComplexField rhs = z * c;
        CHECK(oracle::max_diff(lhs.re, rhs.re) <= 1e-12 * oracle::max_abs(rhs.re));
        CHECK(oracle::max_diff(lhs.im, rhs.im) <= 1e-12 * oracle::max_abs(rhs.im));
    }
}
