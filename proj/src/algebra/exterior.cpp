#include "weylith/algebra/exterior.hpp"

#include "weylith/errors.hpp"

#include <algorithm>
#include <map>

namespace weylith {

namespace {

/// Products w_T ^ w_U of basis forms: result index in the lex basis and sign (0 if T, U meet).
struct ProductTable {
    std::size_t right_size = 0;
    std::vector<std::pair<std::size_t, int>> entries;  // [i * right_size + j]

    ProductTable(int n, int p, int q)
    {
        const auto left = wedge_basis(n, p);
        const auto right = wedge_basis(n, q);
        right_size = right.size();
        entries.resize(left.size() * right.size(), {0, 0});
        if (p + q > n)
            return;
        for (std::size_t i = 0; i < left.size(); ++i)
            for (std::size_t j = 0; j < right.size(); ++j) {
                const int sign = concat_sign(left[i], right[j]);
                if (sign)
                    entries[i * right_size + j] = {wedge_rank(wedge_union(left[i], right[j]), n), sign};
            }
    }
    const std::pair<std::size_t, int>& at(std::size_t i, std::size_t j) const { return entries[i * right_size + j]; }
};

}  // namespace

ExteriorForm ExteriorForm::zero(int dimW, int degree)
{
    return {dimW, degree, std::vector<Rational>(binomial(dimW, degree))};
}

ExteriorForm ExteriorForm::basis(int dimW, const WedgeIndex& t)
{
    ExteriorForm f = zero(dimW, static_cast<int>(t.size()));
    f.coords.at(wedge_rank(t, dimW)) = Rational(1);
    return f;
}

bool ExteriorForm::is_zero() const
{
    return std::all_of(coords.begin(), coords.end(), [](const Rational& c) { return c.is_zero(); });
}

ExteriorForm wedge(const ExteriorForm& omega, const ExteriorForm& eta)
{
    if (omega.dimW != eta.dimW)
        throw ShapeMismatch("wedge of forms on different spaces");
    ExteriorForm out = ExteriorForm::zero(omega.dimW, omega.degree + eta.degree);
    if (out.coords.empty())
        return out;
    ProductTable table(omega.dimW, omega.degree, eta.degree);
    for (std::size_t i = 0; i < omega.coords.size(); ++i) {
        if (omega.coords[i].is_zero())
            continue;
        for (std::size_t j = 0; j < eta.coords.size(); ++j) {
            const auto [idx, sign] = table.at(i, j);
            if (sign && !eta.coords[j].is_zero())
                out.coords[idx] += omega.coords[i] * eta.coords[j] * Rational(sign);
        }
    }
    return out;
}

FormMatrix::FormMatrix(int dimW, int degree, std::size_t rows, std::size_t cols)
    : dimW_(dimW), degree_(degree), rows_(rows), cols_(cols), width_(binomial(dimW, degree)),
      data_(rows * cols * width_)
{
}

ExteriorForm FormMatrix::form(std::size_t r, std::size_t c) const
{
    auto e = entry(r, c);
    return {dimW_, degree_, std::vector<Rational>(e.begin(), e.end())};
}

void FormMatrix::set(std::size_t r, std::size_t c, const ExteriorForm& f)
{
    if (f.degree != degree_ || f.dimW != dimW_)
        throw ShapeMismatch("form of wrong degree for this matrix");
    std::copy(f.coords.begin(), f.coords.end(), entry(r, c).begin());
}

bool FormMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Rational& c) { return c.is_zero(); });
}

FormMatrix operator*(const FormMatrix& lhs, const FormMatrix& rhs)
{
    if (lhs.cols() != rhs.rows() || lhs.dimW() != rhs.dimW())
        throw ShapeMismatch("form matrix product shape mismatch");
    FormMatrix out(lhs.dimW(), lhs.degree() + rhs.degree(), lhs.rows(), rhs.cols());
    if (out.form_size() == 0)
        return out;
    ProductTable table(lhs.dimW(), lhs.degree(), rhs.degree());
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            auto a = lhs.entry(i, k);
            for (std::size_t j = 0; j < rhs.cols(); ++j) {
                auto b = rhs.entry(k, j);
                auto c = out.entry(i, j);
                for (std::size_t x = 0; x < a.size(); ++x) {
                    if (a[x].is_zero())
                        continue;
                    for (std::size_t y = 0; y < b.size(); ++y) {
                        const auto [idx, sign] = table.at(x, y);
                        if (sign && !b[y].is_zero())
                            c[idx] += sign > 0 ? a[x] * b[y] : -(a[x] * b[y]);
                    }
                }
            }
        }
    return out;
}

FreeEModule::FreeEModule(int dimW, std::vector<Summand> summands) : dimW_(dimW)
{
    std::sort(summands.begin(), summands.end(), [](const Summand& x, const Summand& y) { return x.twist < y.twist; });
    for (const auto& s : summands) {
        if (s.multiplicity == 0)
            continue;
        if (!summands_.empty() && summands_.back().twist == s.twist)
            summands_.back().multiplicity += s.multiplicity;
        else
            summands_.push_back(s);
    }
}

std::size_t FreeEModule::rank() const
{
    std::size_t r = 0;
    for (const auto& s : summands_)
        r += s.multiplicity;
    return r;
}

std::size_t FreeEModule::find_twist(int twist) const
{
    for (std::size_t s = 0; s < summands_.size(); ++s)
        if (summands_[s].twist == twist)
            return s;
    return npos;
}

std::size_t FreeEModule::piece_dim(int d) const
{
    std::size_t n = 0;
    for (std::size_t s = 0; s < summands_.size(); ++s)
        n += summands_[s].multiplicity * binomial(dimW_, generator_degree(s) - d);
    return n;
}

std::size_t FreeEModule::offset(int d, std::size_t s, std::size_t h) const
{
    std::size_t off = 0;
    for (std::size_t i = 0; i < s; ++i)
        off += summands_[i].multiplicity * binomial(dimW_, generator_degree(i) - d);
    return off + h * binomial(dimW_, generator_degree(s) - d);
}

int FreeEModule::lowest_degree() const
{
    if (summands_.empty())
        return 1;
    return -summands_.back().twist;
}

int FreeEModule::highest_degree() const
{
    if (summands_.empty())
        return 0;
    return dimW_ - summands_.front().twist;
}

MatQ FreeEModule::action(int t, int d) const
{
    MatQ out(piece_dim(d - 1), piece_dim(d));
    for (std::size_t s = 0; s < summands_.size(); ++s) {
        const int m = generator_degree(s) - d;
        if (m < 0 || m + 1 > dimW_)
            continue;
        const auto from = wedge_basis(dimW_, m);
        for (std::size_t h = 0; h < summands_[s].multiplicity; ++h) {
            const std::size_t src = offset(d, s, h), dst = offset(d - 1, s, h);
            for (std::size_t i = 0; i < from.size(); ++i) {
                const int sign = concat_sign(from[i], {t});
                if (sign)
                    out(dst + wedge_rank(wedge_union(from[i], {t}), dimW_), src + i) = Rational(sign);
            }
        }
    }
    return out;
}

bool ExteriorMap::is_zero() const
{
    return std::all_of(blocks.begin(), blocks.end(), [](const ExteriorBlock& b) { return b.forms.is_zero(); });
}

const ExteriorBlock* ExteriorMap::find_block(int source_twist, int target_twist) const
{
    const std::size_t s = source.find_twist(source_twist), t = target.find_twist(target_twist);
    for (const auto& b : blocks)
        if (b.source == s && b.target == t)
            return &b;
    return nullptr;
}

MatQ ExteriorMap::slice(int d) const
{
    MatQ out(target.piece_dim(d), source.piece_dim(d));
    const int n = source.dimW();
    for (const auto& b : blocks) {
        const int m = source.generator_degree(b.source) - d;
        const int k = b.forms.degree();
        if (m < 0 || m + k > n || b.forms.form_size() == 0)
            continue;
        ProductTable table(n, k, m);
        const std::size_t width = binomial(n, m);
        for (std::size_t h = 0; h < b.forms.cols(); ++h)
            for (std::size_t hp = 0; hp < b.forms.rows(); ++hp) {
                auto form = b.forms.entry(hp, h);
                const std::size_t col0 = source.offset(d, b.source, h), row0 = target.offset(d, b.target, hp);
                for (std::size_t x = 0; x < form.size(); ++x) {
                    if (form[x].is_zero())
                        continue;
                    for (std::size_t e = 0; e < width; ++e) {
                        const auto [idx, sign] = table.at(x, e);
                        if (sign)
                            out(row0 + idx, col0 + e) += sign > 0 ? form[x] : -form[x];
                    }
                }
            }
    }
    return out;
}

ExteriorMap compose(const ExteriorMap& second, const ExteriorMap& first)
{
    if (!(first.target == second.source))
        throw ShapeMismatch("compose: target of first map differs from source of second");
    std::map<std::pair<std::size_t, std::size_t>, FormMatrix> acc;
    for (const auto& b1 : first.blocks)
        for (const auto& b2 : second.blocks) {
            if (b1.target != b2.source)
                continue;
            FormMatrix prod = b2.forms * b1.forms;
            auto key = std::make_pair(b1.source, b2.target);
            auto it = acc.find(key);
            if (it == acc.end()) {
                acc.emplace(key, std::move(prod));
                continue;
            }
            auto& dst = it->second;
            for (std::size_t r = 0; r < dst.rows(); ++r)
                for (std::size_t c = 0; c < dst.cols(); ++c) {
                    auto x = dst.entry(r, c);
                    auto y = prod.entry(r, c);
                    for (std::size_t i = 0; i < x.size(); ++i)
                        x[i] += y[i];
                }
        }
    ExteriorMap out{first.source, second.target, {}};
    for (auto& [key, forms] : acc)
        out.blocks.push_back({key.first, key.second, std::move(forms)});
    return out;
}

ExteriorMap bgg_term(const DegreewiseSModule& m, int p)
{
    const int n = m.ambient.dimW();
    const std::size_t src = m.dim(p), dst = m.dim(p + 1);
    ExteriorMap out{FreeEModule(n, {{-p, src}}), FreeEModule(n, {{-p - 1, dst}}), {}};
    if (src == 0 || dst == 0)
        return out;
    FormMatrix forms(n, 1, dst, src);
    for (int t = 0; t < n; ++t) {
        const MatQ& a = m.action(t, p);
        for (std::size_t beta = 0; beta < dst; ++beta)
            for (std::size_t alpha = 0; alpha < src; ++alpha)
                forms.entry(beta, alpha)[static_cast<std::size_t>(t)] = a(beta, alpha);
    }
    out.blocks.push_back({0, 0, std::move(forms)});
    return out;
}

DegreewiseEModule to_emodule(const FreeEModule& f)
{
    DegreewiseEModule e{AmbientSpace(f.dimW()), f.lowest_degree(), f.highest_degree(), true, {}, {}};
    for (int d = e.lo; d <= e.hi; ++d) {
        e.dims.push_back(f.piece_dim(d));
        std::vector<MatQ> acts;
        if (d > e.lo)
            for (int t = 0; t < f.dimW(); ++t)
                acts.push_back(f.action(t, d));
        e.actions.push_back(std::move(acts));
    }
    return e;
}

EmbeddedSubmodule kernel_submodule(const ExteriorMap& phi)
{
    const FreeEModule& src = phi.source;
    const int n = src.dimW();
    EmbeddedSubmodule out{DegreewiseEModule{AmbientSpace(n), src.lowest_degree(), src.highest_degree(), true, {}, {}}, {}};
    auto& mod = out.module;
    std::vector<std::vector<std::size_t>> free_rows;
    for (int d = mod.lo; d <= mod.hi; ++d) {
        const MatQ s = phi.slice(d);
        auto e = rref(s);
        free_rows.push_back(free_columns(e, s.cols()));
        out.basis.push_back(kernel_basis(s));
        mod.dims.push_back(out.basis.back().cols());
    }
    for (int d = mod.lo; d <= mod.hi; ++d) {
        std::vector<MatQ> acts;
        if (d > mod.lo) {
            const MatQ& basis = out.basis[static_cast<std::size_t>(d - mod.lo)];
            const auto& rows = free_rows[static_cast<std::size_t>(d - 1 - mod.lo)];
            for (int t = 0; t < n; ++t)
                acts.push_back(select_rows(src.action(t, d) * basis, rows));
        }
        mod.actions.push_back(std::move(acts));
    }
    return out;
}

}  // namespace weylith
