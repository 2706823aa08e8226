#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weylith/errors.hpp"
#include "weylith/resultant/resultant.hpp"

#include <random>

using namespace weylith;
using Q = Rational;

namespace {

Q syl(std::vector<Q> f, std::vector<Q> g)
{
    return sylvester_resultant<Q>(f, g);
}

/// Degree of p in the variables of row s, checked constant across terms.
int row_degree(const PolyA& p, int s)
{
    int deg = -1;
    const int n = p.shape().dimW;
    for (const auto& [m, c] : p.terms()) {
        int e = 0;
        for (auto [v, x] : m.factors())
            if (v / n == s)
                e += x;
        if (deg >= 0 && e != deg)
            return -2;
        deg = e;
    }
    return deg;
}

}  // namespace

TEST_CASE("Sylvester resultant examples")
{
    // low-to-high in x: x^2 = (0,0,1), y^2 = (1,0,0)
    CHECK(syl({0, 0, 1}, {1, 0, 0}) == Q(1));
    CHECK(syl({1, 2, 3}, {1, 2, 3}) == Q(0));
    CHECK(syl({-1, 0, 1}, {1, 0, 1}) == Q(4));
    CHECK(syl({0, 1}, {1, 0}) == Q(1));
    CHECK(syl({1, 0}, {0, 1}) == Q(-1));
    // (x - y)(x - 2y) and (x - y)(x + y) share x = y
    CHECK(syl({2, -3, 1}, {-1, 0, 1}) == Q(0));
    CHECK_THROWS_AS(syl({1, 0}, {1, 0, 0}), InvalidInput);

    for (int d : {1, 2, 3}) {
        const PolyA s = symbolic_sylvester(d);
        CHECK(s.is_homogeneous());
        CHECK(s.degree() == 2 * d);
        CHECK(row_degree(s, 0) == d);
        CHECK(row_degree(s, 1) == d);
    }
    std::vector<Q> f{3, -1, 2}, g{1, 5, -2};
    const auto pt = binary_pair_point<Q>(f, g);
    CHECK(symbolic_sylvester(2).evaluate<Q>(std::span<const Q>(pt.coords)) == syl(f, g));
}

TEST_CASE("cohomology_dims")
{
    SpecializedComplex<Q> one{0, {1}, {}};
    CHECK(cohomology_dims(one) == std::vector<std::size_t>{1});

    DenseMatrix<Q> inv{{1, 2, 0}, {0, 1, 0}, {0, 0, 3}};
    CHECK(cohomology_dims(SpecializedComplex<Q>{-1, {3, 3}, {inv}}) == std::vector<std::size_t>{0, 0});

    DenseMatrix<Q> drop{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}};
    CHECK(cohomology_dims(SpecializedComplex<Q>{-1, {3, 3}, {drop}}) == std::vector<std::size_t>{1, 1});

    DenseMatrix<Q> a{{1}}, b{{1}};
    CHECK_THROWS_AS(cohomology_dims(SpecializedComplex<Q>{0, {1, 1, 1}, {a, b}}), InvariantViolation);
}

TEST_CASE("specialize")
{
    AmbientSpace amb(3);
    const auto omega = weyman_complex(SheafSpec::make_omega(1), amb, 2);
    SpecPoint<Q> pt(2, 3);
    pt.at(0, 1) = Q(4);
    const auto so = specialize(omega, pt);
    const auto dims = cohomology_dims(so);
    std::size_t total = 0;
    for (auto x : dims)
        total += x;
    CHECK(total == 2);
    CHECK(dims[static_cast<std::size_t>(0 - so.p_lo)] == 2);

    const auto o = weyman_complex(SheafSpec::make_twist(0), amb, 1);
    SpecPoint<Q> p1(1, 3);
    const auto sc = specialize(o, p1);
    CHECK(cohomology_dims(sc)[static_cast<std::size_t>(0 - sc.p_lo)] == 1);
    CHECK_THROWS_AS(specialize(o, pt), ShapeMismatch);

    // x^2 and x y share the root x = 0: the conic complex is not exact there.
    const auto conic = weyman_complex(SheafSpec::make_veronese(2, 0), amb, 2);
    std::vector<Q> f{0, 0, 1}, g{0, 1, 0};
    const auto sp = specialize(conic, binary_pair_point<Q>(f, g));
    const auto& m = sp.maps[static_cast<std::size_t>(-1 - sp.p_lo)];
    CHECK(m.rows() == 3);
    CHECK(determinant(m) == Q(0));
    CHECK(cohomology_dims(sp)[static_cast<std::size_t>(-1 - sp.p_lo)] >= 1);
}

TEST_CASE("determinant of the Veronese complex")
{
    for (int d : {2, 3}) {
        const auto vr = veronese_resultant(d);
        CHECK(vr.determinant.is_homogeneous());
        CHECK(vr.determinant.degree() == 2 * d);
        CHECK(row_degree(vr.determinant, 0) == d);
        CHECK(row_degree(vr.determinant, 1) == d);
        CHECK((vr.unit == Q(1) || vr.unit == Q(-1)));
        CHECK(vr.complex.term(vr.position).rank() == static_cast<std::size_t>(2 * d - 1));
        CHECK(vr.determinant == symbolic_sylvester(d) * vr.unit);
    }
    CHECK_THROWS_AS(veronese_resultant(1), ExcludedCase);
}

TEST_CASE("det_two_term guards")
{
    AmbientSpace amb(3);
    CHECK_THROWS_AS(det_two_term(weyman_complex(SheafSpec::make_twist(0), amb, 2)), InvalidInput);
    CHECK_THROWS_AS(det_two_term(weyman_complex(SheafSpec::make_twist(-3), amb, 2)), InvalidInput);

    // An identity block is not minimal and is rejected before any determinant is taken.
    auto wc = weyman_complex(SheafSpec::make_veronese(2, 0), amb, 2);
    auto& m = wc.maps[static_cast<std::size_t>(-1 - wc.p_lo)].matrix;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(i, j) = PolyA::constant(m.shape(), i == j ? Q(1) : Q(0));
    CHECK_THROWS_AS(det_two_term(wc), InvariantViolation);
}

TEST_CASE("resultant values and generic exactness")
{
    const auto vr = veronese_resultant(2);
    std::vector<Q> f{1, 0, 1}, g{0, 1, 0};
    CHECK(resultant_value(vr, f, g) == syl(f, g));
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(-20, 20);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Q> a, b;
        for (int i = 0; i < 3; ++i) {
            a.push_back(Q(c(rng), 1 + std::abs(c(rng))));
            b.push_back(Q(c(rng)));
        }
        CHECK(resultant_value(vr, a, b) == syl(a, b));
        const auto sc = specialize(vr.complex, binary_pair_point<Q>(a, b));
        if (!syl(a, b).is_zero())
            for (auto x : cohomology_dims(sc))
                CHECK(x == 0);
    }
}

TEST_CASE("vanishing probe")
{
    for (int d : {2, 3}) {
        const auto vr = veronese_resultant(d);
        for (auto field : {FieldChoice::Rational, FieldChoice::Prime}) {
            const auto rep = resultant_vanishing_probe(vr, 40, 1234, field);
            CHECK(rep.pass());
            CHECK(rep.trials == 40);
            CHECK(rep.singular > 0);
            CHECK(rep.singular < 40);
            CHECK(rep.to_json().dump() == resultant_vanishing_probe(vr, 40, 1234, field).to_json().dump());
        }
    }
}
