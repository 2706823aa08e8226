#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weylith/kernel/matrix.hpp"
#include "weylith/kernel/modp.hpp"
#include "weylith/kernel/multilinear.hpp"
#include "weylith/kernel/poly.hpp"
#include "weylith/kernel/rational.hpp"
#include "weylith/kernel/wedge.hpp"

#include <numeric>
#include <random>

using namespace weylith;
using Q = Rational;
using MatQ = DenseMatrix<Q>;

namespace {

// Leibniz expansion, independent of the elimination code.
Q leibniz_det(const MatQ& m)
{
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Q total;
    do {
        int inv = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                inv += perm[i] > perm[j];
        Q term(inv % 2 ? -1 : 1);
        for (std::size_t i = 0; i < n; ++i)
            term *= m(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

MatQ random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int range, double density)
{
    std::uniform_int_distribution<int> val(-range, range);
    std::bernoulli_distribution nz(density);
    MatQ m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (nz(rng))
                m(i, j) = Q(val(rng));
    return m;
}

}  // namespace

TEST_CASE("rational arithmetic stays canonical")
{
    Q a(6, -4);
    CHECK(a.str() == "-3/2");
    CHECK((a * Q(2, 3)).str() == "-1");
    CHECK(Q::parse("10/4") == Q(5, 2));
    CHECK(Q::parse("-7") == Q(-7));
    CHECK_THROWS_AS(Q::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Q::parse("x"), ParseError);
    CHECK_THROWS_AS(Q(1) / Q(0), InvalidInput);
}

TEST_CASE("prime field residues")
{
    Fp a(-1);
    CHECK(a.value() == Fp::modulus - 1);
    CHECK((a * a).value() == 1);
    CHECK((Fp(3) / Fp(3)).value() == 1);
    CHECK(Fp::from_rational(Q(1, 2)) * Fp(2) == Fp(1));
    CHECK_THROWS_AS(Fp(0).inverse(), InvalidInput);
}

TEST_CASE("rref examples")
{
    auto id = rref(MatQ::identity(2));
    CHECK(id.reduced == MatQ::identity(2));
    CHECK(id.pivots == std::vector<std::size_t>{0, 1});

    auto e = rref(MatQ{{Q(2), Q(4)}, {Q(1), Q(2)}});
    CHECK(e.reduced == MatQ{{Q(1), Q(2)}, {Q(0), Q(0)}});
    CHECK(e.pivots == std::vector<std::size_t>{0});

    auto z = rref(MatQ(3, 3));
    CHECK(z.reduced.is_zero());
    CHECK(z.pivots.empty());
}

TEST_CASE("kernel_basis examples")
{
    CHECK(kernel_basis(MatQ{{Q(1), Q(2)}}) == MatQ{{Q(-2)}, {Q(1)}});
    CHECK(kernel_basis(MatQ{{Q(1), Q(1)}, {Q(0), Q(3)}}).cols() == 0);
    CHECK(kernel_basis(MatQ(2, 2)) == MatQ::identity(2));
}

TEST_CASE("rref and kernel_basis on random matrices")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
        MatQ m = random_matrix(rng, r, c, 3, trial % 3 == 0 ? 0.3 : 0.7);
        auto e = rref(m);
        for (std::size_t i = 1; i < e.pivots.size(); ++i)
            CHECK(e.pivots[i - 1] < e.pivots[i]);
        MatQ k = kernel_basis(m);
        CHECK(e.pivots.size() + k.cols() == c);
        if (k.cols())
            CHECK((m * k).is_zero());
        CHECK(rank(k) == k.cols());
    }
}

TEST_CASE("determinant agrees with Leibniz expansion")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        MatQ m = random_matrix(rng, n, n, 4, 0.6);
        CHECK(determinant(m) == leibniz_det(m));
    }
}

TEST_CASE("complement_coordinates completes a span")
{
    MatQ m{{Q(1)}, {Q(1)}, {Q(0)}};
    auto comp = complement_coordinates(m);
    CHECK(comp == std::vector<std::size_t>{0, 2});
}

TEST_CASE("wedge bases in lexicographic order")
{
    auto b = wedge_basis(4, 2);
    REQUIRE(b.size() == 6);
    CHECK(b.front() == WedgeIndex{0, 1});
    CHECK(b[2] == WedgeIndex{0, 3});
    CHECK(b.back() == WedgeIndex{2, 3});
    for (int n = 0; n <= 6; ++n)
        for (int k = 0; k <= n; ++k) {
            auto basis = wedge_basis(n, k);
            CHECK(basis.size() == binomial(n, k));
            for (std::size_t i = 0; i < basis.size(); ++i)
                CHECK(wedge_rank(basis[i], n) == i);
        }
    CHECK(wedge_basis(2, 3).empty());
}

TEST_CASE("shuffle_sign examples")
{
    CHECK(shuffle_sign({0}, {1}) == 1);
    CHECK(shuffle_sign({1}, {0}) == -1);
    CHECK(shuffle_sign({0, 2}, {1}) == -1);
    CHECK(shuffle_sign({}, {0, 1, 2}) == 1);
    CHECK_THROWS_AS(shuffle_sign({0, 1}, {1}), InvalidInput);
    CHECK_THROWS_AS(shuffle_sign({0}, {2}), InvalidInput);
}

TEST_CASE("shuffle_sign graded symmetry")
{
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; b <= a; ++b) {
            WedgeIndex all(static_cast<std::size_t>(a));
            std::iota(all.begin(), all.end(), 0);
            for (const auto& positions : wedge_basis(a, b)) {
                WedgeIndex rest = wedge_complement(all, positions);
                const int sign = (b * (a - b)) % 2 ? -1 : 1;
                CHECK(shuffle_sign(positions, rest) * shuffle_sign(rest, positions) == sign);
            }
        }
}

TEST_CASE("comultiply examples")
{
    for (int ell = 1; ell <= 4; ++ell)
        for (int a = 0; a <= ell; ++a)
            CHECK(comultiply(a, a, ell) == MatQ::identity(binomial(ell, a)));

    // e0^e1 -> e0 (x) e1 - e1 (x) e0; rows (J, J') = (0,0),(0,1),(1,0),(1,1)
    MatQ phi = comultiply(2, 1, 2);
    CHECK(phi == MatQ{{Q(0)}, {Q(1)}, {Q(-1)}, {Q(0)}});

    MatQ empty = comultiply(3, 1, 2);
    CHECK(empty.cols() == 0);
    CHECK_THROWS_AS(comultiply(1, 2, 3), InvalidInput);
}

TEST_CASE("comultiplication is coassociative")
{
    for (int ell = 1; ell <= 4; ++ell)
        for (int a = 0; a <= 4; ++a)
            for (int b = 0; b <= a; ++b)
                for (int c = 0; c <= b; ++c) {
                    const MatQ lhs = kronecker(comultiply(b, c, ell), MatQ::identity(binomial(ell, a - b))) * comultiply(a, b, ell);
                    const MatQ rhs = kronecker(MatQ::identity(binomial(ell, c)), comultiply(a - c, b - c, ell)) * comultiply(a, c, ell);
                    CHECK(lhs == rhs);
                }
}

TEST_CASE("cauchy_embed examples")
{
    const PolyShape shape{2, 3};
    auto one = cauchy_embed(1, 2, 3);
    CHECK(one.matrix == MatQ::identity(6));
    CHECK(generic_minor({1}, {2}, shape) == PolyA::variable(shape, 1, 2));

    PolyA minor = generic_minor({0, 1}, {0, 1}, shape);
    PolyA expected = PolyA::variable(shape, 0, 0) * PolyA::variable(shape, 1, 1)
                     - PolyA::variable(shape, 0, 1) * PolyA::variable(shape, 1, 0);
    CHECK(minor == expected);

    auto zero = cauchy_embed(2, 1, 3);
    CHECK(zero.matrix.cols() == 0);
}

TEST_CASE("cauchy_embed is injective")
{
    for (int ell = 1; ell <= 4; ++ell)
        for (int dimW = 1; dimW <= 4; ++dimW)
            for (int k = 0; k <= std::min(ell, dimW); ++k) {
                auto emb = cauchy_embed(k, ell, dimW);
                CHECK(rank(emb.matrix) == binomial(ell, k) * binomial(dimW, k));
            }
}

TEST_CASE("polynomial arithmetic and evaluation")
{
    const PolyShape shape{2, 2};
    PolyA x00 = PolyA::variable(shape, 0, 0), x11 = PolyA::variable(shape, 1, 1);
    CHECK(x00 * PolyA::constant(shape, Q(1)) == x00);

    PolyA sq = (x00 + x11) * (x00 + x11);
    PolyA expected = x00 * x00 + x00 * x11 * Q(2) + x11 * x11;
    CHECK(sq == expected);
    CHECK(sq.is_homogeneous());
    CHECK(sq.degree() == 2);
    CHECK(sq.str() == "x00^2 + 2*x00*x11 + x11^2");

    PolyA minor = generic_minor({0, 1}, {0, 1}, shape);
    std::vector<Q> identity{Q(1), Q(0), Q(0), Q(1)};
    CHECK(minor.evaluate<Q>(identity) == Q(1));
    std::vector<Fp> identity_p{Fp(1), Fp(0), Fp(0), Fp(1)};
    CHECK(minor.evaluate<Fp>(identity_p) == Fp(1));

    std::vector<Q> short_point{Q(1)};
    CHECK_THROWS_AS(minor.evaluate<Q>(short_point), ShapeMismatch);
    CHECK_THROWS_AS(x00 + PolyA::variable(PolyShape{1, 2}, 0, 0), ShapeMismatch);
}

TEST_CASE("evaluation is a ring homomorphism")
{
    const PolyShape shape{2, 3};
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coeff(-3, 3);
    auto random_poly = [&] {
        PolyA p(shape);
        for (int i = 0; i < 4; ++i) {
            std::vector<MonomialA::Factor> f;
            for (int j = 0; j < 3; ++j)
                f.emplace_back(static_cast<std::uint16_t>(rng() % 6), 1);
            p.add_term(MonomialA(f), Q(coeff(rng)));
        }
        return p;
    };
    for (int trial = 0; trial < 20; ++trial) {
        PolyA p = random_poly(), q = random_poly();
        std::vector<Q> pt;
        for (int i = 0; i < 6; ++i)
            pt.emplace_back(coeff(rng), 1 + static_cast<long>(rng() % 3));
        CHECK((p * q).evaluate<Q>(pt) == p.evaluate<Q>(pt) * q.evaluate<Q>(pt));
        CHECK((p + q).evaluate<Q>(pt) == p.evaluate<Q>(pt) + q.evaluate<Q>(pt));
    }
}

TEST_CASE("polynomial determinant matches specialization")
{
    const PolyShape shape{2, 2};
    PolyMatrix m(shape, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            m(i, j) = PolyA::variable(shape, static_cast<int>((i + j) % 2), static_cast<int>(i * j % 2))
                      + PolyA::constant(shape, Q(static_cast<long>(i) - static_cast<long>(j)));
    PolyA det = determinant(m);
    std::vector<Q> pt{Q(2), Q(-1), Q(3, 2), Q(5)};
    CHECK(det.evaluate<Q>(pt) == determinant(m.evaluate<Q>(pt)));
}
