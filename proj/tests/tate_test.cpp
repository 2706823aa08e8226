#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/cohomology_oracle.hpp"
#include "weylith/errors.hpp"
#include "weylith/tate/tate.hpp"

#include <functional>

using namespace weylith;
using Q = Rational;

namespace {

using Oracle = std::function<std::size_t(int i, int k)>;

void check_against_oracle(const TateSegment& seg, const Oracle& h)
{
    CHECK(segment_failures(seg).empty());
    const auto table = cohomology_table(seg);
    for (int p = seg.p_lo; p <= seg.p_hi; ++p)
        for (int i = 0; i <= table.N(); ++i) {
            INFO("p = " << p << ", i = " << i);
            CHECK(table.at(i, p - i) == h(i, p - i));
        }
}

}  // namespace

TEST_CASE("structure sheaf on P^2")
{
    AmbientSpace amb(3);
    const auto seg = tate_segment(SheafSpec::make_twist(0), amb, -3, 3);
    CHECK(seg.term(1).summands() == std::vector<Summand>{{-1, 3}});
    CHECK(seg.term(-1).summands() == std::vector<Summand>{{3, 1}});
    CHECK(seg.term(0).summands() == std::vector<Summand>{{0, 1}});
    const auto table = cohomology_table(seg);
    CHECK(table.at(0, 2) == 6);
    for (int k = -4; k <= 2; ++k)
        CHECK(table.at(1, k) == 0);
    CHECK(table.at(2, -3) == 1);
    CHECK_FALSE(table.known(0, 4));
    CHECK_THROWS_AS(table.at(0, 4), InvalidInput);
    check_against_oracle(seg, [](int i, int k) { return oracle::h_twist(2, i, k); });
}

TEST_CASE("omega(1) on P^2")
{
    AmbientSpace amb(3);
    const auto seg = tate_segment(SheafSpec::make_omega(1), amb, -2, 2);
    CHECK(seg.term(0).summands() == std::vector<Summand>{{1, 1}});
    const auto table = cohomology_table(seg);
    // omega(1) realizes Omega^1(1), so H^1(Omega^1) sits at k = -1.
    CHECK(table.at(1, -1) == 1);
    for (int k = -3; k <= 1; ++k)
        if (k != -1)
            CHECK(table.at(1, k) == 0);
    check_against_oracle(seg, [](int i, int k) { return oracle::h_omega_twisted(2, i, 1, k); });

    // Corner block of d^0 from hat-E(1) to T^1 = hat-E(-1) (x) M_1: forms of degree 2.
    const FormMatrix corner = extract_component(seg, 0, 1, -1);
    CHECK(corner.degree() == 2);
    CHECK(corner.rows() == oracle::h_omega_twisted(2, 0, 1, 1));
    CHECK(corner.cols() == 1);
    CHECK_FALSE(corner.is_zero());
}

TEST_CASE("term formula for builtins")
{
    for (int dimW : {3, 4}) {
        const int N = dimW - 1;
        AmbientSpace amb(dimW);
        for (int d = -N - 2; d <= 2; ++d) {
            INFO("twist " << d << " dimW " << dimW);
            check_against_oracle(tate_segment(SheafSpec::make_twist(d), amb, -N - 1, 2),
                                 [&](int i, int k) { return oracle::h_twist(N, i, k + d); });
        }
        for (int a = 0; a <= N; ++a) {
            INFO("omega " << a << " dimW " << dimW);
            check_against_oracle(tate_segment(SheafSpec::make_omega(a), amb, -N - 1, 2),
                                 [&](int i, int k) { return oracle::h_omega_twisted(N, i, a, k); });
        }
    }
    for (int d : {2, 3})
        for (int e : {-3, -1, 0, 1}) {
            INFO("veronese " << d << "," << e);
            AmbientSpace amb(d + 1);
            check_against_oracle(tate_segment(SheafSpec::make_veronese(d, e), amb, -3, 3),
                                 [&](int i, int k) { return oracle::h_veronese(i, d, e, k); });
        }
}

TEST_CASE("extract_component")
{
    AmbientSpace amb(3);
    const auto seg = tate_segment(SheafSpec::make_twist(0), amb, -2, 3);
    for (int p = 0; p < 3; ++p) {
        const FormMatrix f = extract_component(seg, p, -p, -p - 1);
        CHECK(f.degree() == 1);
        CHECK(f.cols() == oracle::h_twist(2, 0, p));
        CHECK(f.rows() == oracle::h_twist(2, 0, p + 1));
        CHECK_FALSE(f.is_zero());
    }
    const FormMatrix f0 = extract_component(seg, 0, 0, -1);
    for (int t = 0; t < 3; ++t)
        CHECK(f0.form(static_cast<std::size_t>(t), 0) == ExteriorForm::basis(3, {t}));
    // no summand hat-E(5) in T^0
    CHECK(extract_component(seg, 0, 5, -1).rows() == 0);
    // T^{-1} -> T^0 is hat-E(3) -> hat-E(0): the volume form
    const FormMatrix top = extract_component(seg, -1, 3, 0);
    CHECK(top.degree() == 3);
    CHECK_FALSE(top.is_zero());
}

TEST_CASE("d o d = 0 across the corner")
{
    AmbientSpace amb(4);
    for (const auto& spec : {SheafSpec::make_twist(0), SheafSpec::make_omega(2), SheafSpec::make_veronese(3, 0)}) {
        const auto seg = tate_segment(spec, amb, -3, 3);
        for (int p = seg.p_lo; p + 1 < seg.p_hi; ++p)
            CHECK(compose(seg.differential(p + 1), seg.differential(p)).is_zero());
        CHECK(segment_failures(seg).empty());
    }
}

TEST_CASE("sheaf-level invariance under the choice of module")
{
    AmbientSpace amb(3);
    SheafSpec conic;
    conic.kind = SheafKind::Quotient;
    conic.generators = {"w0*w2 - w1^2"};
    conic.regularity = 1;
    const auto a = tate_segment(conic, amb, -3, 3);
    const auto b = tate_segment(SheafSpec::make_veronese(2, 0), amb, -3, 3);
    CHECK(a.terms == b.terms);

    SheafSpec point;
    point.kind = SheafKind::Presentation;
    point.matrix = {{"w0", "w1"}};
    point.row_degrees = {0};
    point.column_degrees = {1, 1};
    point.regularity = 0;
    const auto seg = tate_segment(point, amb, -3, 2);
    CHECK(segment_failures(seg).empty());
    const auto table = cohomology_table(seg);
    for (int p = -3; p <= 2; ++p)
        for (int i = 0; i <= 2; ++i)
            CHECK(table.at(i, p - i) == (i == 0 ? 1u : 0u));
}

TEST_CASE("regularity gate")
{
    AmbientSpace amb(3);
    SheafSpec s = SheafSpec::make_twist(0);
    s.regularity = -1;
    try {
        tate_segment(s, amb, -1, 1);
        FAIL("expected a regularity failure");
    } catch (const RegularityFailure& e) {
        CHECK(e.degree() == 0);
    }

    SheafSpec thick;
    thick.kind = SheafKind::Quotient;
    thick.generators = {"w0^3"};
    thick.regularity = 1;
    CHECK_THROWS_AS(tate_segment(thick, amb, 0, 2), RegularityFailure);
    thick.regularity = 2;
    CHECK(segment_failures(tate_segment(thick, amb, -2, 3)).empty());
}

TEST_CASE("corrupted segments are detected")
{
    AmbientSpace amb(3);
    const auto seg = tate_segment(SheafSpec::make_twist(0), amb, -2, 2);

    TateSegment bad = seg;
    bad.maps[2].blocks[0].forms.entry(0, 0)[0] += Q(1);  // d^0
    CHECK_FALSE(segment_failures(bad).empty());

    TateSegment shifted = seg;
    shifted.terms[0] = FreeEModule(3, {{9, 1}});
    CHECK_THROWS_AS(cohomology_table(shifted), CorruptedSegment);
    CHECK_FALSE(segment_failures(shifted).empty());
}

TEST_CASE("segment JSON round trip")
{
    AmbientSpace amb(3);
    const auto seg = tate_segment(SheafSpec::make_omega(1), amb, -2, 2);
    const auto j = segment_to_json(seg);
    CHECK(j.at("format") == kSegmentFormat);
    const auto back = segment_from_json(j);
    CHECK(back.terms == seg.terms);
    CHECK(segment_to_json(back) == j);
    CHECK(segment_failures(back).empty());

    auto broken = j;
    broken["maps"][0]["blocks"][0]["entries"][0][0] = nlohmann::json::array({"1"});
    CHECK_THROWS_AS(segment_from_json(broken), ParseError);
    broken = j;
    broken["format"] = "something-else/9";
    CHECK_THROWS_AS(segment_from_json(broken), ParseError);
    broken = j;
    broken.erase("terms");
    CHECK_THROWS_AS(segment_from_json(broken), ParseError);

    const auto t = table_to_json(cohomology_table(seg));
    CHECK(t.at("format") == kTableFormat);
    CHECK(t.at("h").size() == 3);
}
