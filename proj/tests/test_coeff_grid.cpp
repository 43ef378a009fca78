#include <doctest.h>

#include "oracles.hpp"
#include "qtl/coeff_grid.hpp"
#include "qtl/error.hpp"

using namespace qtl;

TEST_SUITE("coeff_grid") {
    TEST_CASE("indexing is row-major with k outer") {
        CoeffGrid g(2);
        CHECK(g.side() == 5);
        CHECK(g.entry_count() == 25);
        g(-2, -2) = 1.0;
        g(-2, -1) = 2.0;
        g(2, 2) = 3.0;
        CHECK(g.matrix().data()[0] == cplx(1.0));
        CHECK(g.matrix().data()[1] == cplx(2.0));
        CHECK(g.matrix().data()[24] == cplx(3.0));
        CHECK(g.contains(2, -2));
        CHECK_FALSE(g.contains(3, 0));
    }

    TEST_CASE("negative band limit is rejected") { CHECK_THROWS_AS(CoeffGrid(-1), DimensionError); }

    TEST_CASE("tags round trip through text") {
        for (GridTag t : {GridTag::general, GridTag::fourier_real, GridTag::hermitian}) CHECK(parse_tag(to_string(t)) == t);
        CHECK_THROWS_AS(parse_tag("real"), ParseError);
    }

    TEST_CASE("symmetry predicates") {
        oracle::Rng rng(1);
        const CoeffGrid z = oracle::random_fourier_real(rng, 4);
        const CoeffGrid w = oracle::random_hermitian(rng, 4);
        CHECK(is_fourier_real(z));
        CHECK(is_hermitian(w));
        CHECK_FALSE(is_hermitian(oracle::random_grid(rng, 4)));
        CoeffGrid bad = z;
        bad(0, 0) += cplx(0.0, 1e-6);
        CHECK_FALSE(is_fourier_real(bad));
        CHECK_THROWS_AS(require_fourier_real(bad, "test"), SymmetryError);
        CHECK_NOTHROW(require_hermitian(w, "test"));
    }

    TEST_CASE("symmetry tolerance scales with the largest entry") {
        CoeffGrid z = oracle::cosine_grid(2, 1, 0);
        z *= 1e6;
        z(1, 0) += 1e-8;  // 1e-14 relative
        CHECK(is_fourier_real(z));
        z(1, 0) += 1e-3;  // 1e-9 relative
        CHECK_FALSE(is_fourier_real(z));
    }

    TEST_CASE("arithmetic and product") {
        oracle::Rng rng(2);
        const CoeffGrid a = oracle::random_grid(rng, 3), b = oracle::random_grid(rng, 3);
        const CoeffGrid p = a * b;
        for (int k = -3; k <= 3; ++k) {
            for (int l = -3; l <= 3; ++l) {
                cplx acc = 0.0;
                for (int m = -3; m <= 3; ++m) acc += a(k, m) * b(m, l);
                CHECK(std::abs(p(k, l) - acc) < 1e-12);
            }
        }
        CHECK(max_abs_diff(a + b - b, a) < 1e-14);
        CHECK(max_abs_diff((a * CoeffGrid::identity(3)), a) == 0.0);
        CHECK(max_abs_diff(a.adjoint().adjoint(), a) == 0.0);
        CHECK(a.adjoint()(1, -2) == std::conj(a(-2, 1)));
        CHECK_THROWS_AS(a + CoeffGrid(2), DimensionError);
        CHECK_THROWS_AS(a * CoeffGrid(2), DimensionError);
    }
}
