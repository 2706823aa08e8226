#include "weylith/kernel/multilinear.hpp"

#include "weylith/errors.hpp"

#include <map>
#include <numeric>

namespace weylith {

DenseMatrix<Rational> comultiply(int a, int b, int ell)
{
    if (b < 0 || b > a)
        throw InvalidInput("comultiply: need 0 <= b <= a (got a=" + std::to_string(a) + ", b=" + std::to_string(b) + ")");
    const auto source = wedge_basis(ell, a);
    const std::size_t right = binomial(ell, a - b);
    DenseMatrix<Rational> m(binomial(ell, b) * right, source.size());
    for (std::size_t col = 0; col < source.size(); ++col) {
        const WedgeIndex& whole = source[col];
        // Splits of I are indexed by subsets of positions; a position subset picks J.
        for (const auto& positions : wedge_basis(a, b)) {
            WedgeIndex first;
            for (int pos : positions)
                first.push_back(whole[static_cast<std::size_t>(pos)]);
            WedgeIndex second = wedge_complement(whole, first);
            const std::size_t row = wedge_rank(first, ell) * right + wedge_rank(second, ell);
            m(row, col) = Rational(concat_sign(first, second));
        }
    }
    return m;
}

PolyA generic_minor(const WedgeIndex& rows, const WedgeIndex& cols, PolyShape shape)
{
    if (rows.size() != cols.size())
        throw ShapeMismatch("generic_minor: row and column sets differ in size");
    const std::size_t k = rows.size();
    PolyA out(shape);
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (perm[i] > perm[j])
                    ++inversions;
        std::vector<MonomialA::Factor> f;
        for (std::size_t i = 0; i < k; ++i)
            f.emplace_back(static_cast<std::uint16_t>(shape.var(rows[i], cols[static_cast<std::size_t>(perm[i])])), 1);
        out.add_term(MonomialA(std::move(f)), Rational(inversions % 2 ? -1 : 1));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

CauchyEmbedding cauchy_embed(int k, int ell, int dimW)
{
    if (k < 0)
        throw InvalidInput("cauchy_embed: negative degree");
    const PolyShape shape{ell, dimW};
    CauchyEmbedding out;
    out.monomials = monomials_of_degree(shape.num_vars(), k);
    std::map<MonomialA, std::size_t, GradedLexGreater> row_of;
    for (std::size_t i = 0; i < out.monomials.size(); ++i)
        row_of.emplace(out.monomials[i], i);
    const auto row_sets = wedge_basis(ell, k);
    const auto col_sets = wedge_basis(dimW, k);
    out.matrix = DenseMatrix<Rational>(out.monomials.size(), row_sets.size() * col_sets.size());
    for (std::size_t s = 0; s < row_sets.size(); ++s)
        for (std::size_t t = 0; t < col_sets.size(); ++t) {
            const PolyA minor = generic_minor(row_sets[s], col_sets[t], shape);
            for (const auto& [m, c] : minor.terms())
                out.matrix(row_of.at(m), s * col_sets.size() + t) = c;
        }
    return out;
}

}  // namespace weylith
