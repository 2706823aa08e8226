#include "weylith/algebra/generators.hpp"

#include "weylith/errors.hpp"

namespace weylith {

std::vector<std::pair<int, std::size_t>> GeneratorCover::counts() const
{
    std::vector<std::pair<int, std::size_t>> out;
    for (const auto& b : blocks)
        out.emplace_back(b.degree, b.elements.cols());
    return out;
}

FreeEModule GeneratorCover::free_module(int dimW) const
{
    std::vector<Summand> s;
    for (const auto& b : blocks)
        s.push_back({dimW - b.degree, b.elements.cols()});
    return FreeEModule(dimW, std::move(s));
}

namespace {

/// Columns spanning sum_t w_t^* V where V (columns) lives in piece(d + 1).
MatQ lowered(const DegreewiseEModule& m, int d, const MatQ& span)
{
    std::vector<MatQ> parts;
    for (int t = 0; t < m.ambient.dimW(); ++t)
        parts.push_back(m.action(t, d + 1) * span);
    return hstack(parts, m.dim(d));
}

}  // namespace

GeneratorCover e_minimal_generators(const DegreewiseEModule& m)
{
    GeneratorCover cover;
    for (int d = m.hi; d >= m.lo; --d) {
        const std::size_t n = m.dim(d);
        if (n == 0)
            continue;
        MatQ decomposable = d < m.hi ? lowered(m, d, MatQ::identity(m.dim(d + 1))) : MatQ(n, 0);
        const auto fresh = complement_coordinates(decomposable);
        if (fresh.empty())
            continue;
        if (d == m.hi && !m.closed_above)
            throw WindowTooNarrow("generator found in top window degree " + std::to_string(d)
                                  + " of a module that may extend above it");
        MatQ gens(n, fresh.size());
        for (std::size_t j = 0; j < fresh.size(); ++j)
            gens(fresh[j], j) = Rational(1);
        cover.blocks.push_back({d, std::move(gens)});
    }
    return cover;
}

std::vector<std::size_t> generated_dims(const DegreewiseEModule& m, const GeneratorCover& cover)
{
    std::vector<std::size_t> dims(m.dims.size(), 0);
    MatQ above;  // span in degree d + 1
    for (int d = m.hi; d >= m.lo; --d) {
        std::vector<MatQ> parts;
        if (d < m.hi && above.cols())
            parts.push_back(lowered(m, d, above));
        for (const auto& b : cover.blocks)
            if (b.degree == d)
                parts.push_back(b.elements);
        MatQ span = parts.empty() ? MatQ(m.dim(d), 0) : hstack(parts, m.dim(d));
        dims[static_cast<std::size_t>(d - m.lo)] = rank(span);
        above = std::move(span);
    }
    return dims;
}

}  // namespace weylith
