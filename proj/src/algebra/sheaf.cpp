#include "weylith/algebra/sheaf.hpp"

#include "weylith/algebra/spoly.hpp"
#include "weylith/errors.hpp"
#include "weylith/kernel/wedge.hpp"

#include <algorithm>
#include <sstream>

namespace weylith {

SheafSpec SheafSpec::make_twist(int d)
{
    SheafSpec s;
    s.kind = SheafKind::Twist;
    s.twist = d;
    return s;
}

SheafSpec SheafSpec::make_veronese(int d, int twist)
{
    SheafSpec s;
    s.kind = SheafKind::Veronese;
    s.degree = d;
    s.twist = twist;
    return s;
}

SheafSpec SheafSpec::make_omega(int a)
{
    SheafSpec s;
    s.kind = SheafKind::Omega;
    s.a = a;
    return s;
}

namespace {

int parse_int(const std::string& s, const std::string& context)
{
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        throw ParseError("expected an integer in " + context + ", got '" + s + "'");
    }
    if (used != s.size())
        throw ParseError("expected an integer in " + context + ", got '" + s + "'");
    return v;
}

const char* kind_name(SheafKind k)
{
    switch (k) {
    case SheafKind::Twist: return "twist";
    case SheafKind::Veronese: return "veronese";
    case SheafKind::Omega: return "omega";
    case SheafKind::Quotient: return "quotient";
    case SheafKind::Presentation: return "presentation";
    }
    return "?";
}

}  // namespace

SheafSpec parse_sheaf_spec(const std::string& text)
{
    if (!text.empty() && text.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("sheaf JSON: ") + e.what());
        }
        return sheaf_from_json(j);
    }
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ParseError("sheaf spec '" + text + "' must look like twist:D, omega:A or veronese:D[,TWIST]");
    const std::string kind = text.substr(0, colon);
    std::vector<std::string> args;
    std::stringstream rest(text.substr(colon + 1));
    for (std::string item; std::getline(rest, item, ',');)
        args.push_back(item);
    if (args.empty())
        throw ParseError("sheaf spec '" + text + "' has no parameters");
    if (kind == "twist" && args.size() == 1)
        return SheafSpec::make_twist(parse_int(args[0], "twist"));
    if (kind == "omega" && args.size() == 1)
        return SheafSpec::make_omega(parse_int(args[0], "omega"));
    if (kind == "veronese" && args.size() <= 2)
        return SheafSpec::make_veronese(parse_int(args[0], "veronese degree"),
                                        args.size() == 2 ? parse_int(args[1], "veronese twist") : 0);
    throw ParseError("unknown sheaf spec '" + text + "'");
}

nlohmann::json sheaf_to_json(const SheafSpec& spec)
{
    nlohmann::json j;
    j["variant"] = kind_name(spec.kind);
    switch (spec.kind) {
    case SheafKind::Twist: j["twist"] = spec.twist; break;
    case SheafKind::Veronese:
        j["degree"] = spec.degree;
        j["twist"] = spec.twist;
        break;
    case SheafKind::Omega: j["a"] = spec.a; break;
    case SheafKind::Quotient: j["generators"] = spec.generators; break;
    case SheafKind::Presentation:
        j["matrix"] = spec.matrix;
        j["row_degrees"] = spec.row_degrees;
        j["column_degrees"] = spec.column_degrees;
        break;
    }
    if (spec.regularity)
        j["regularity"] = *spec.regularity;
    if (spec.support_dim)
        j["support_dim"] = *spec.support_dim;
    return j;
}

SheafSpec sheaf_from_json(const nlohmann::json& j)
{
    try {
        SheafSpec s;
        const std::string v = j.at("variant").get<std::string>();
        if (v == "twist") {
            s.kind = SheafKind::Twist;
            s.twist = j.at("twist").get<int>();
        } else if (v == "veronese") {
            s.kind = SheafKind::Veronese;
            s.degree = j.at("degree").get<int>();
            s.twist = j.value("twist", 0);
        } else if (v == "omega") {
            s.kind = SheafKind::Omega;
            s.a = j.at("a").get<int>();
        } else if (v == "quotient") {
            s.kind = SheafKind::Quotient;
            s.generators = j.at("generators").get<std::vector<std::string>>();
        } else if (v == "presentation") {
            s.kind = SheafKind::Presentation;
            s.matrix = j.at("matrix").get<std::vector<std::vector<std::string>>>();
            s.row_degrees = j.at("row_degrees").get<std::vector<int>>();
            s.column_degrees = j.at("column_degrees").get<std::vector<int>>();
        } else {
            throw ParseError("unknown sheaf variant '" + v + "'");
        }
        if (j.contains("regularity"))
            s.regularity = j.at("regularity").get<int>();
        if (j.contains("support_dim"))
            s.support_dim = j.at("support_dim").get<int>();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("sheaf JSON: ") + e.what());
    }
}

void validate_sheaf(const SheafSpec& spec, const AmbientSpace& ambient)
{
    switch (spec.kind) {
    case SheafKind::Twist: break;
    case SheafKind::Veronese:
        if (spec.degree < 1)
            throw InvalidInput("veronese degree must be >= 1");
        if (ambient.dimW() != spec.degree + 1)
            throw InvalidInput("veronese of degree " + std::to_string(spec.degree) + " lives in dimW = "
                               + std::to_string(spec.degree + 1) + ", not " + std::to_string(ambient.dimW()));
        break;
    case SheafKind::Omega:
        if (spec.a < 0 || spec.a > ambient.N())
            throw InvalidInput("omega needs 0 <= a <= N = " + std::to_string(ambient.N()));
        break;
    case SheafKind::Quotient:
        for (const auto& g : spec.generators)
            if (parse_spoly(g, ambient.dimW()).is_zero())
                throw InvalidInput("zero ideal generator '" + g + "'");
        break;
    case SheafKind::Presentation: {
        if (spec.matrix.size() != spec.row_degrees.size())
            throw InvalidInput("presentation has " + std::to_string(spec.matrix.size()) + " rows but "
                               + std::to_string(spec.row_degrees.size()) + " row degrees");
        for (const auto& row : spec.matrix)
            if (row.size() != spec.column_degrees.size())
                throw InvalidInput("presentation row length does not match column degrees");
        for (std::size_t i = 0; i < spec.matrix.size(); ++i)
            for (std::size_t j = 0; j < spec.column_degrees.size(); ++j) {
                const SPoly p = parse_spoly(spec.matrix[i][j], ambient.dimW());
                const int deg = p.homogeneous_degree();
                if (deg >= 0 && deg != spec.column_degrees[j] - spec.row_degrees[i])
                    throw InvalidInput("presentation entry (" + std::to_string(i) + "," + std::to_string(j)
                                       + ") has degree " + std::to_string(deg) + ", expected "
                                       + std::to_string(spec.column_degrees[j] - spec.row_degrees[i]));
            }
        break;
    }
    }
}

int effective_regularity(const SheafSpec& spec, const AmbientSpace& ambient)
{
    if (spec.regularity)
        return *spec.regularity;
    switch (spec.kind) {
    case SheafKind::Twist: return -spec.twist;
    case SheafKind::Omega: return spec.a == 0 ? 0 : 1;
    case SheafKind::Veronese: {
        // H^1(O_{P^1}(d (p-1) + twist)) = 0 iff d (p-1) + twist >= -1.
        const int d = spec.degree;
        const int need = -1 - spec.twist;
        const int ceil = need >= 0 ? (need + d - 1) / d : -((-need) / d);
        return 1 + ceil;
    }
    default: break;
    }
    (void)ambient;
    throw InvalidInput(std::string("sheaf variant '") + kind_name(spec.kind) + "' needs an explicit regularity bound");
}

namespace {

struct Column {
    int degree;
    std::vector<SPoly> entries;  // one per row
};

/// Degreewise cokernel of a free presentation  (+) S(-c_j) -> (+) S(-g_i).
class Cokernel {
public:
    Cokernel(int dimW, std::vector<int> row_degrees, std::vector<Column> columns)
        : dimW_(dimW), rows_(std::move(row_degrees)), cols_(std::move(columns))
    {
    }

    struct Piece {
        std::vector<std::size_t> offsets;         // per row
        std::vector<std::map<SExponents, std::size_t>> index;  // per row
        std::vector<std::pair<std::size_t, SExponents>> ambient;  // (row, monomial)
        RowEchelon<Rational> relations;
        std::vector<std::size_t> pivot_row;       // ambient col -> relation row or npos
        std::vector<std::size_t> quotient_pos;    // ambient col -> quotient coordinate or npos
        std::size_t dim = 0;
    };

    Piece piece(int k) const
    {
        Piece p;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            p.offsets.push_back(p.ambient.size());
            p.index.push_back(s_monomial_index(dimW_, k - rows_[i]));
            for (auto& m : s_monomials(dimW_, k - rows_[i]))
                p.ambient.emplace_back(i, std::move(m));
        }
        const std::size_t n = p.ambient.size();
        std::vector<std::vector<Rational>> rels;
        for (const auto& col : cols_)
            for (const auto& mu : s_monomials(dimW_, k - col.degree)) {
                std::vector<Rational> v(n);
                bool nonzero = false;
                for (std::size_t i = 0; i < rows_.size(); ++i)
                    for (const auto& [e, c] : col.entries[i].terms) {
                        SExponents prod = e;
                        for (int t = 0; t < dimW_; ++t)
                            prod[static_cast<std::size_t>(t)] += mu[static_cast<std::size_t>(t)];
                        v[p.offsets[i] + p.index[i].at(prod)] += c;
                        nonzero = true;
                    }
                if (nonzero)
                    rels.push_back(std::move(v));
            }
        MatQ r(rels.size(), n);
        for (std::size_t i = 0; i < rels.size(); ++i)
            for (std::size_t j = 0; j < n; ++j)
                r(i, j) = rels[i][j];
        p.relations = rref(std::move(r));
        p.pivot_row.assign(n, npos);
        p.quotient_pos.assign(n, npos);
        for (std::size_t i = 0; i < p.relations.pivots.size(); ++i)
            p.pivot_row[p.relations.pivots[i]] = i;
        for (std::size_t j = 0; j < n; ++j)
            if (p.pivot_row[j] == npos)
                p.quotient_pos[j] = p.dim++;
        return p;
    }

    /// Quotient coordinates of the ambient basis vector `col`.
    static std::vector<Rational> project_unit(const Piece& p, std::size_t col)
    {
        std::vector<Rational> out(p.dim);
        if (p.pivot_row[col] == npos) {
            out[p.quotient_pos[col]] = Rational(1);
            return out;
        }
        const auto row = p.relations.reduced.row(p.pivot_row[col]);
        for (std::size_t j = 0; j < row.size(); ++j)
            if (p.quotient_pos[j] != npos && !row[j].is_zero())
                out[p.quotient_pos[j]] = -row[j];
        return out;
    }

    DegreewiseSModule realize(const AmbientSpace& ambient, int lo, int hi) const
    {
        DegreewiseSModule m{ambient, lo, hi, {}, {}};
        std::vector<Piece> pieces;
        for (int k = lo; k <= hi; ++k) {
            pieces.push_back(piece(k));
            m.dims.push_back(pieces.back().dim);
        }
        for (int k = lo; k < hi; ++k) {
            const Piece& src = pieces[static_cast<std::size_t>(k - lo)];
            const Piece& dst = pieces[static_cast<std::size_t>(k + 1 - lo)];
            std::vector<MatQ> acts;
            for (int t = 0; t < dimW_; ++t) {
                MatQ a(dst.dim, src.dim);
                for (std::size_t j = 0; j < src.ambient.size(); ++j) {
                    if (src.quotient_pos[j] == npos)
                        continue;
                    const auto& [row, mono] = src.ambient[j];
                    SExponents up = mono;
                    ++up[static_cast<std::size_t>(t)];
                    const std::size_t target = dst.offsets[row] + dst.index[row].at(up);
                    const auto coords = project_unit(dst, target);
                    for (std::size_t i = 0; i < coords.size(); ++i)
                        a(i, src.quotient_pos[j]) = coords[i];
                }
                acts.push_back(std::move(a));
            }
            m.actions.push_back(std::move(acts));
        }
        return m;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    int dimW_;
    std::vector<int> rows_;
    std::vector<Column> cols_;
};

DegreewiseSModule veronese_module(const AmbientSpace& ambient, int d, int twist, int lo, int hi)
{
    DegreewiseSModule m{ambient, lo, hi, {}, {}};
    auto form_degree = [&](int k) { return d * k + twist; };
    for (int k = lo; k <= hi; ++k)
        m.dims.push_back(form_degree(k) >= 0 ? static_cast<std::size_t>(form_degree(k) + 1) : 0);
    for (int k = lo; k < hi; ++k) {
        const std::size_t src = m.dims[static_cast<std::size_t>(k - lo)];
        const std::size_t dst = m.dims[static_cast<std::size_t>(k + 1 - lo)];
        std::vector<MatQ> acts;
        // basis x^i y^{n-i}, i = 0..n; w_t multiplies by x^t y^{d-t}
        for (int t = 0; t <= d; ++t) {
            MatQ a(dst, src);
            for (std::size_t i = 0; i < src; ++i)
                a(i + static_cast<std::size_t>(t), i) = Rational(1);
            acts.push_back(std::move(a));
        }
        m.actions.push_back(std::move(acts));
    }
    return m;
}

}  // namespace

MatQ koszul_differential(const AmbientSpace& ambient, int a, int k)
{
    const int n = ambient.dimW();
    const auto src_wedges = wedge_basis(n, a);
    const auto mons = s_monomials(n, k);
    const auto up_index = s_monomial_index(n, k + 1);
    const std::size_t up_count = up_index.size();
    MatQ m(binomial(n, a - 1) * up_count, src_wedges.size() * mons.size());
    if (a == 0)
        return m;
    for (std::size_t w = 0; w < src_wedges.size(); ++w) {
        const WedgeIndex& I = src_wedges[w];
        for (std::size_t mu = 0; mu < mons.size(); ++mu)
            for (std::size_t r = 0; r < I.size(); ++r) {
                WedgeIndex rest = I;
                rest.erase(rest.begin() + static_cast<long>(r));
                SExponents up = mons[mu];
                ++up[static_cast<std::size_t>(I[r])];
                const std::size_t row = wedge_rank(rest, n) * up_count + up_index.at(up);
                m(row, w * mons.size() + mu) = Rational(r % 2 ? -1 : 1);
            }
    }
    return m;
}

DegreewiseSModule koszul_kernel_module(const AmbientSpace& ambient, int a, int lo, int hi)
{
    if (a < 0 || a > ambient.N())
        throw InvalidInput("koszul_kernel_module: need 0 <= a <= N = " + std::to_string(ambient.N()));
    if (hi < lo)
        throw WindowTooNarrow("empty window");
    const int n = ambient.dimW();
    struct Slice {
        MatQ basis;
        std::vector<std::size_t> free_rows;
        std::size_t mons = 0;
    };
    std::vector<Slice> slices;
    for (int k = lo; k <= hi; ++k) {
        Slice s;
        s.mons = binomial(n + k - 1, k);
        if (k >= 0) {
            const MatQ delta = koszul_differential(ambient, a, k);
            auto e = rref(delta);
            s.free_rows = free_columns(e, delta.cols());
            s.basis = kernel_basis(delta);
        }
        slices.push_back(std::move(s));
    }
    DegreewiseSModule m{ambient, lo, hi, {}, {}};
    for (const auto& s : slices)
        m.dims.push_back(s.basis.cols());
    for (int k = lo; k < hi; ++k) {
        const Slice& src = slices[static_cast<std::size_t>(k - lo)];
        const Slice& dst = slices[static_cast<std::size_t>(k + 1 - lo)];
        std::vector<MatQ> acts;
        const auto src_mons = k >= 0 ? s_monomials(n, k) : std::vector<SExponents>{};
        const auto dst_index = s_monomial_index(n, k + 1);
        std::vector<std::size_t> free_pos(dst.basis.rows(), Cokernel::npos);
        for (std::size_t i = 0; i < dst.free_rows.size(); ++i)
            free_pos[dst.free_rows[i]] = i;
        for (int t = 0; t < n; ++t) {
            MatQ act(dst.basis.cols(), src.basis.cols());
            for (std::size_t col = 0; col < src.basis.cols(); ++col)
                for (std::size_t row = 0; row < src.basis.rows(); ++row) {
                    const Rational& c = src.basis(row, col);
                    if (c.is_zero())
                        continue;
                    const std::size_t w = row / src_mons.size(), mu = row % src_mons.size();
                    SExponents up = src_mons[mu];
                    ++up[static_cast<std::size_t>(t)];
                    const std::size_t target = w * dst_index.size() + dst_index.at(up);
                    if (free_pos[target] != Cokernel::npos)
                        act(free_pos[target], col) += c;
                }
            acts.push_back(std::move(act));
        }
        m.actions.push_back(std::move(acts));
    }
    return m;
}

DegreewiseSModule realize(const SheafSpec& spec, const AmbientSpace& ambient, int lo, int hi)
{
    validate_sheaf(spec, ambient);
    if (hi < lo)
        throw WindowTooNarrow("empty window [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    const int n = ambient.dimW();
    switch (spec.kind) {
    case SheafKind::Twist: return Cokernel(n, {-spec.twist}, {}).realize(ambient, lo, hi);
    case SheafKind::Veronese: return veronese_module(ambient, spec.degree, spec.twist, lo, hi);
    case SheafKind::Omega: return koszul_kernel_module(ambient, spec.a, lo, hi);
    case SheafKind::Quotient: {
        std::vector<Column> cols;
        for (const auto& g : spec.generators) {
            SPoly p = parse_spoly(g, n);
            const int deg = p.homogeneous_degree();
            cols.push_back({deg, {std::move(p)}});
        }
        return Cokernel(n, {0}, std::move(cols)).realize(ambient, lo, hi);
    }
    case SheafKind::Presentation: {
        const int top = spec.row_degrees.empty() ? lo : *std::max_element(spec.row_degrees.begin(), spec.row_degrees.end());
        if (hi < top)
            throw WindowTooNarrow("window top " + std::to_string(hi) + " below presentation generator degree "
                                  + std::to_string(top));
        std::vector<Column> cols;
        for (std::size_t j = 0; j < spec.column_degrees.size(); ++j) {
            Column c{spec.column_degrees[j], {}};
            for (std::size_t i = 0; i < spec.matrix.size(); ++i)
                c.entries.push_back(parse_spoly(spec.matrix[i][j], n));
            cols.push_back(std::move(c));
        }
        return Cokernel(n, spec.row_degrees, std::move(cols)).realize(ambient, lo, hi);
    }
    }
    throw InvalidInput("unknown sheaf variant");
}

}  // namespace weylith
