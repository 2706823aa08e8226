#pragma once

#include "weylith/errors.hpp"
#include "weylith/kernel/matrix.hpp"
#include "weylith/kernel/modp.hpp"
#include "weylith/kernel/poly.hpp"
#include "weylith/weyman/weyman.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace weylith {

/// (f_1, ..., f_ell) in W^ell: row s holds the coordinates of f_s, so entry (s, t)
/// is the value of the variable x_{s,t}.
template <class F>
struct SpecPoint {
    int ell = 1;
    int dimW = 2;
    std::vector<F> coords;  // row-major ell x dimW

    SpecPoint(int ell_, int dimW_) : ell(ell_), dimW(dimW_), coords(static_cast<std::size_t>(ell_ * dimW_), F(0)) {}
    F& at(int s, int t) { return coords[static_cast<std::size_t>(s * dimW + t)]; }
    const F& at(int s, int t) const { return coords[static_cast<std::size_t>(s * dimW + t)]; }
};

/// A Weyman complex evaluated at a point.
template <class F>
struct SpecializedComplex {
    int p_lo = 0;
    std::vector<std::size_t> ranks;      // index p - p_lo
    std::vector<DenseMatrix<F>> maps;    // index p - p_lo
};

template <class F>
SpecializedComplex<F> specialize(const WeymanComplex& wc, const SpecPoint<F>& f)
{
    if (f.ell != wc.ell || f.dimW != wc.dimW)
        throw ShapeMismatch("point shape (" + std::to_string(f.ell) + ", " + std::to_string(f.dimW)
                            + ") does not match the complex (" + std::to_string(wc.ell) + ", " + std::to_string(wc.dimW)
                            + ")");
    SpecializedComplex<F> out;
    out.p_lo = wc.p_lo;
    for (int p = wc.p_lo; p <= wc.p_hi; ++p)
        out.ranks.push_back(wc.term(p).rank());
    for (int p = wc.p_lo; p < wc.p_hi; ++p)
        out.maps.push_back(wc.differential(p).matrix.template evaluate<F>(std::span<const F>(f.coords)));
    return out;
}

/// dim ker - dim im at every position. Throws InvariantViolation when consecutive
/// maps do not compose to zero.
template <class F>
std::vector<std::size_t> cohomology_dims(const SpecializedComplex<F>& sc)
{
    const std::size_t n = sc.ranks.size();
    if (sc.maps.size() + 1 != n && !(n == 0 && sc.maps.empty()))
        throw InvariantViolation("specialized complex has inconsistent map count");
    for (std::size_t i = 0; i + 1 < sc.maps.size(); ++i)
        if (sc.maps[i].cols() && sc.maps[i + 1].rows() && !(sc.maps[i + 1] * sc.maps[i]).is_zero())
            throw InvariantViolation("specialized maps do not compose to zero at p = "
                                     + std::to_string(sc.p_lo + static_cast<int>(i)));
    std::vector<std::size_t> out(n, 0);
    std::vector<std::size_t> ranks(sc.maps.size());
    for (std::size_t i = 0; i < sc.maps.size(); ++i)
        ranks[i] = rank(sc.maps[i]);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t out_rank = i < ranks.size() ? ranks[i] : 0;
        const std::size_t in_rank = i > 0 ? ranks[i - 1] : 0;
        out[i] = sc.ranks[i] - out_rank - in_rank;
    }
    return out;
}

/// Position p of the source of the only nonzero map of a two-term complex with equal
/// ranks; throws InvalidInput otherwise.
int two_term_position(const WeymanComplex& wc);

/// Determinant of the square differential of a verified two-term complex.
PolyA det_two_term(const WeymanComplex& wc);

/// Sylvester matrix of two binary forms of degree d given low-to-high in x
/// (coefficient i multiplies x^i y^{d-i}); rows of f, then rows of g, highest
/// coefficient first.
template <class F>
DenseMatrix<F> sylvester_matrix(std::span<const F> f, std::span<const F> g)
{
    if (f.size() != g.size() || f.size() < 2)
        throw InvalidInput("Sylvester resultant needs two forms of the same degree d >= 1");
    const std::size_t d = f.size() - 1;
    DenseMatrix<F> m(2 * d, 2 * d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t i = 0; i <= d; ++i) {
            m(r, r + i) = f[d - i];
            m(d + r, r + i) = g[d - i];
        }
    return m;
}

template <class F>
F sylvester_resultant(std::span<const F> f, std::span<const F> g)
{
    return determinant(sylvester_matrix(f, g));
}

/// Sylvester resultant as a polynomial in x_{0,t} (coefficients of f) and x_{1,t} (of g).
PolyA symbolic_sylvester(int d);

/// The point of W^2 attached to two binary forms of degree d = dimW - 1.
template <class F>
SpecPoint<F> binary_pair_point(std::span<const F> f, std::span<const F> g)
{
    if (f.size() != g.size() || f.size() < 2)
        throw InvalidInput("binary forms must have the same degree d >= 1");
    SpecPoint<F> pt(2, static_cast<int>(f.size()));
    for (std::size_t t = 0; t < f.size(); ++t) {
        pt.at(0, static_cast<int>(t)) = f[t];
        pt.at(1, static_cast<int>(t)) = g[t];
    }
    return pt;
}

/// The ell = 2 Weyman complex of the degree-d rational normal curve, its determinant,
/// and the unit u with det = u * Res, fixed at the witness pair f = x^d, g = y^d.
struct VeroneseResultant {
    int d = 2;
    WeymanComplex complex;
    int position = 0;
    PolyA determinant;
    Rational unit;
};

VeroneseResultant veronese_resultant(int d);

/// det(complex at (f, g)) / unit, which equals the Sylvester resultant.
Rational resultant_value(const VeroneseResultant& vr, std::span<const Rational> f, std::span<const Rational> g);

enum class FieldChoice { Rational, Prime };

struct VanishingReport {
    int d = 2;
    FieldChoice field = FieldChoice::Rational;
    std::uint64_t seed = 0;
    int trials = 0;
    int singular = 0;       // pairs whose specialized complex is not exact
    int disagreements = 0;  // singular <=> resultant zero failed
    std::optional<std::string> witness;

    bool pass() const { return disagreements == 0; }
    nlohmann::json to_json() const;
};

/// Random pairs of binary d-forms, half of them forced to share a linear factor; each
/// trial draws from its own stream seeded by (seed, trial).
VanishingReport resultant_vanishing_probe(int d, int trials, std::uint64_t seed, FieldChoice field);
VanishingReport resultant_vanishing_probe(const VeroneseResultant& vr, int trials, std::uint64_t seed,
                                          FieldChoice field);

}  // namespace weylith
