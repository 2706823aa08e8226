#include "weylith/weyman/weyman.hpp"

#include "weylith/errors.hpp"
#include "weylith/kernel/multilinear.hpp"
#include "weylith/kernel/parallel.hpp"
#include "weylith/kernel/wedge.hpp"

#include <algorithm>
#include <map>

namespace weylith {

AFreeModule::AFreeModule(int ell, std::vector<ASummand> summands) : ell_(ell)
{
    if (ell < 1)
        throw InvalidInput("ell must be positive");
    std::map<int, std::size_t> merged;
    for (const auto& s : summands)
        if (s.multiplicity > 0 && s.wedge >= 0 && s.wedge <= ell)
            merged[s.wedge] += s.multiplicity;
    for (const auto& [w, m] : merged)
        summands_.push_back({w, m});
}

std::size_t AFreeModule::rank() const
{
    std::size_t r = 0;
    for (std::size_t s = 0; s < summands_.size(); ++s)
        r += summand_rank(s);
    return r;
}

std::size_t AFreeModule::summand_rank(std::size_t s) const
{
    return binomial(ell_, summands_[s].wedge) * summands_[s].multiplicity;
}

std::size_t AFreeModule::offset(std::size_t s) const
{
    std::size_t off = 0;
    for (std::size_t i = 0; i < s; ++i)
        off += summand_rank(i);
    return off;
}

std::size_t AFreeModule::find_wedge(int wedge) const
{
    for (std::size_t s = 0; s < summands_.size(); ++s)
        if (summands_[s].wedge == wedge)
            return s;
    return npos;
}

AFreeModule w_on_object(int j, std::size_t mult, int ell)
{
    return AFreeModule(ell, {{j, mult}});
}

AFreeModule w_on_object(const FreeEModule& f, int ell)
{
    std::vector<ASummand> s;
    for (const auto& x : f.summands())
        s.push_back({x.twist, x.multiplicity});
    return AFreeModule(ell, std::move(s));
}

PolyMatrix AMap::block(std::size_t s, std::size_t t) const
{
    const std::size_t c0 = source.offset(s), r0 = target.offset(t);
    PolyMatrix out(matrix.shape(), target.summand_rank(t), source.summand_rank(s));
    for (std::size_t r = 0; r < out.rows(); ++r)
        for (std::size_t c = 0; c < out.cols(); ++c)
            out(r, c) = matrix(r0 + r, c0 + c);
    return out;
}

namespace {

/// Fills the W_ell image of one block into `out`.
void fill_block(const ExteriorBlock& blk, int a, int b, const AFreeModule& src, std::size_t s, const AFreeModule& dst,
                std::size_t t, PolyShape shape, PolyMatrix& out)
{
    const int ell = shape.ell, n = shape.dimW, k = a - b;
    const auto I_basis = wedge_basis(ell, a), J_basis = wedge_basis(ell, b), T_basis = wedge_basis(n, k);
    const std::size_t mult_src = src.summands()[s].multiplicity, mult_dst = dst.summands()[t].multiplicity;
    const std::size_t c0 = src.offset(s), r0 = dst.offset(t);

    // Polynomial attached to (K, form) for each K in ^k K^ell, cached per K.
    std::map<WedgeIndex, std::vector<PolyA>> minors;
    auto minors_for = [&](const WedgeIndex& K) -> const std::vector<PolyA>& {
        auto it = minors.find(K);
        if (it != minors.end())
            return it->second;
        std::vector<PolyA> m;
        for (const auto& T : T_basis)
            m.push_back(generic_minor(K, T, shape));
        return minors.emplace(K, std::move(m)).first->second;
    };

    for (std::size_t ii = 0; ii < I_basis.size(); ++ii) {
        const WedgeIndex& I = I_basis[ii];
        for (std::size_t jj = 0; jj < J_basis.size(); ++jj) {
            const WedgeIndex& J = J_basis[jj];
            if (!std::includes(I.begin(), I.end(), J.begin(), J.end()))
                continue;
            const WedgeIndex K = wedge_complement(I, J);
            const int sign = concat_sign(J, K);
            const auto& mins = minors_for(K);
            for (std::size_t h = 0; h < mult_src; ++h)
                for (std::size_t hp = 0; hp < mult_dst; ++hp) {
                    auto form = blk.forms.entry(hp, h);
                    PolyA entry(shape);
                    for (std::size_t x = 0; x < form.size(); ++x)
                        if (!form[x].is_zero())
                            entry += mins[x] * (sign > 0 ? form[x] : -form[x]);
                    out(r0 + jj * mult_dst + hp, c0 + ii * mult_src + h) += entry;
                }
        }
    }
}

}  // namespace

AMap w_on_map(const ExteriorMap& phi, int ell)
{
    const int n = std::max(phi.source.dimW(), phi.target.dimW());
    const PolyShape shape{ell, n};
    AMap out{w_on_object(phi.source, ell), w_on_object(phi.target, ell), {}};
    out.matrix = PolyMatrix(shape, out.target.rank(), out.source.rank());
    for (const auto& blk : phi.blocks) {
        const int a = phi.source.summands()[blk.source].twist, b = phi.target.summands()[blk.target].twist;
        if (blk.forms.degree() != a - b)
            throw InvalidInput("exterior block degree " + std::to_string(blk.forms.degree())
                               + " does not match the twist drop " + std::to_string(a - b));
        const std::size_t s = out.source.find_wedge(a), t = out.target.find_wedge(b);
        if (s == AFreeModule::npos || t == AFreeModule::npos || a < b)
            continue;
        fill_block(blk, a, b, out.source, s, out.target, t, shape, out.matrix);
    }
    return out;
}

AFreeModule WeymanComplex::term(int p) const
{
    if (p < p_lo || p > p_hi)
        return AFreeModule(ell, {});
    return terms[static_cast<std::size_t>(p - p_lo)];
}

const AMap& WeymanComplex::differential(int p) const
{
    if (p < p_lo || p >= p_hi)
        throw WindowTooNarrow("differential " + std::to_string(p) + " outside complex");
    return maps[static_cast<std::size_t>(p - p_lo)];
}

std::vector<int> WeymanComplex::support() const
{
    std::vector<int> out;
    for (int p = p_lo; p <= p_hi; ++p)
        if (!term(p).is_zero())
            out.push_back(p);
    return out;
}

int infer_support_dim(const TateSegment& seg)
{
    const int N = seg.dimW - 1, r = seg.regularity;
    if (seg.p_lo > r || seg.p_hi < r + N)
        throw WindowTooNarrow("support inference needs T^p for p in [r, r + N]");
    std::vector<long> diff;
    for (int p = r; p <= r + N; ++p) {
        const auto& s = seg.term(p).summands();
        diff.push_back(s.empty() ? 0 : static_cast<long>(s[0].multiplicity));
    }
    // Leading coefficients of the Newton forward-difference expansion.
    int degree = -1;
    for (int m = 0; m <= N; ++m) {
        if (diff[0] != 0)
            degree = m;
        for (std::size_t i = 0; i + 1 < diff.size(); ++i)
            diff[i] = diff[i + 1] - diff[i];
        diff.pop_back();
    }
    return degree;
}

std::pair<int, int> weyman_window(const SheafSpec& spec, const AmbientSpace& ambient, int ell_max)
{
    const int N = ambient.N(), r = effective_regularity(spec, ambient);
    return {std::min(-ell_max, r), std::max(N, r + N)};
}

void check_ell(int ell, int dimW)
{
    if (ell == dimW)
        throw ExcludedCase("ell = dim W = " + std::to_string(dimW)
                           + " is excluded: the generalized Weyman complex is only defined for 1 <= ell <= dim W - 1");
    if (ell < 1 || ell > dimW - 1)
        throw ExcludedCase("ell = " + std::to_string(ell) + " outside the supported range 1 <= ell <= "
                           + std::to_string(dimW - 1));
}

WeymanComplex weyman_complex_from_segment(const TateSegment& seg, int ell, int d_supp)
{
    check_ell(ell, seg.dimW);
    const int N = seg.dimW - 1;
    if (seg.p_lo > -ell || seg.p_hi < N)
        throw WindowTooNarrow("segment must cover [-ell, N] = [" + std::to_string(-ell) + ", " + std::to_string(N) + "]");
    WeymanComplex wc;
    wc.ell = ell;
    wc.dimW = seg.dimW;
    wc.d_supp = d_supp;
    wc.p_lo = -ell;
    wc.p_hi = N;
    for (int p = wc.p_lo; p <= wc.p_hi; ++p)
        wc.terms.push_back(w_on_object(seg.term(p), ell));
    wc.maps.resize(static_cast<std::size_t>(wc.p_hi - wc.p_lo));
    parallel_for(wc.maps.size(), [&](std::size_t i) {
        wc.maps[i] = w_on_map(seg.differential(wc.p_lo + static_cast<int>(i)), ell);
    });
    wc.provenance = {{"segment_window", {seg.p_lo, seg.p_hi}}, {"regularity", seg.regularity}};
    return wc;
}

WeymanComplex weyman_complex(const SheafSpec& spec, const AmbientSpace& ambient, int ell)
{
    check_ell(ell, ambient.dimW());
    const auto [lo, hi] = weyman_window(spec, ambient, ell);
    const TateSegment seg = tate_segment(spec, ambient, lo, hi);
    const int d_supp = spec.support_dim.value_or(infer_support_dim(seg));
    WeymanComplex wc = weyman_complex_from_segment(seg, ell, d_supp);
    wc.provenance["sheaf"] = sheaf_to_json(spec);
    wc.provenance["support_dim_inferred"] = !spec.support_dim.has_value();
    return wc;
}

nlohmann::json VerificationReport::to_json() const
{
    return {{"composition_zero", composition_zero}, {"minimal", minimal},   {"support", support},
            {"homogeneous", homogeneous},           {"ok", ok()},           {"failures", failures}};
}

VerificationReport verify_complex(const WeymanComplex& wc)
{
    VerificationReport rep;
    auto fail = [&](bool& flag, std::string msg) {
        flag = false;
        rep.failures.push_back(std::move(msg));
    };
    for (int p = wc.p_lo; p <= wc.p_hi; ++p)
        if ((p < -wc.ell || p > wc.d_supp) && !wc.term(p).is_zero())
            fail(rep.support, "nonzero term at p = " + std::to_string(p) + " outside [-ell, d_supp]");
    for (int p = wc.p_lo; p < wc.p_hi; ++p) {
        const AMap& d = wc.differential(p);
        const std::string at = " at p = " + std::to_string(p);
        if (!(d.source == wc.term(p)) || !(d.target == wc.term(p + 1)) || d.matrix.rows() != d.target.rank()
            || d.matrix.cols() != d.source.rank()) {
            fail(rep.composition_zero, "differential shape does not match its terms" + at);
            continue;
        }
        for (std::size_t s = 0; s < d.source.summands().size(); ++s)
            for (std::size_t t = 0; t < d.target.summands().size(); ++t) {
                const int a = d.source.summands()[s].wedge, b = d.target.summands()[t].wedge;
                const PolyMatrix blk = d.block(s, t);
                for (std::size_t r = 0; r < blk.rows(); ++r)
                    for (std::size_t c = 0; c < blk.cols(); ++c) {
                        const PolyA& e = blk(r, c);
                        if (e.is_zero())
                            continue;
                        if (!e.constant_term().is_zero())
                            fail(rep.minimal, "nonzero constant entry" + at);
                        if (a < b || !e.is_homogeneous() || e.degree() != a - b)
                            fail(rep.homogeneous, "entry of block (" + std::to_string(a) + ", " + std::to_string(b)
                                                      + ") is not homogeneous of degree a - b" + at);
                    }
            }
        if (p + 1 < wc.p_hi) {
            const AMap& next = wc.differential(p + 1);
            if (next.matrix.cols() == d.matrix.rows() && !(next.matrix * d.matrix).is_zero())
                fail(rep.composition_zero, "d^{p+1} d^p != 0" + at);
        }
    }
    return rep;
}

ExteriorMap random_exterior_map(int dimW, const std::vector<Summand>& source, const std::vector<Summand>& target,
                                std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> coeff(-3, 3);
    ExteriorMap phi{FreeEModule(dimW, source), FreeEModule(dimW, target), {}};
    for (std::size_t s = 0; s < phi.source.summands().size(); ++s)
        for (std::size_t t = 0; t < phi.target.summands().size(); ++t) {
            const int k = phi.source.summands()[s].twist - phi.target.summands()[t].twist;
            if (k < 0 || k > dimW)
                continue;
            FormMatrix f(dimW, k, phi.target.summands()[t].multiplicity, phi.source.summands()[s].multiplicity);
            for (std::size_t r = 0; r < f.rows(); ++r)
                for (std::size_t c = 0; c < f.cols(); ++c)
                    for (auto& x : f.entry(r, c))
                        x = Rational(coeff(rng));
            phi.blocks.push_back({s, t, std::move(f)});
        }
    return phi;
}

ProbeResult functor_injectivity_probe(int a, int b, int ell, int dimW, int trials, std::uint64_t seed)
{
    if (!(0 <= b && b <= a && a <= ell) || a - b > dimW || trials < 0)
        throw InvalidInput("injectivity probe needs 0 <= b <= a <= ell and a - b <= dim W");
    std::vector<std::optional<std::string>> witness(static_cast<std::size_t>(trials));
    parallel_for(witness.size(), [&](std::size_t i) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(i)};
        std::mt19937_64 rng(seq);
        std::uniform_int_distribution<std::size_t> mult(1, 2);
        ExteriorMap phi;
        do
            phi = random_exterior_map(dimW, {{a, mult(rng)}}, {{b, mult(rng)}}, rng);
        while (phi.is_zero());
        if (w_on_map(phi, ell).matrix.is_zero())
            witness[i] = "trial " + std::to_string(i) + ": nonzero phi with W(phi) = 0";
    });
    ProbeResult out{true, trials, std::nullopt};
    for (auto& w : witness)
        if (w) {
            out.pass = false;
            out.witness = w;
            break;
        }
    return out;
}

nlohmann::json poly_to_json(const PolyA& p)
{
    auto terms = nlohmann::json::array();
    const int n = p.shape().num_vars();
    for (const auto& [m, c] : p.terms())
        terms.push_back({c.str(), m.dense(n)});
    return terms;
}

PolyA poly_from_json(const nlohmann::json& j, PolyShape shape)
{
    try {
        PolyA p(shape);
        for (const auto& t : j) {
            const auto exps = t.at(1).get<std::vector<int>>();
            if (exps.size() != static_cast<std::size_t>(shape.num_vars()))
                throw ParseError("exponent vector has the wrong length");
            std::vector<MonomialA::Factor> f;
            for (std::size_t v = 0; v < exps.size(); ++v) {
                if (exps[v] < 0)
                    throw ParseError("negative exponent");
                if (exps[v] > 0)
                    f.emplace_back(static_cast<std::uint16_t>(v), static_cast<std::uint16_t>(exps[v]));
            }
            p.add_term(MonomialA(std::move(f)), Rational::parse(t.at(0).get<std::string>()));
        }
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed polynomial: ") + e.what());
    }
}

nlohmann::json complex_to_json(const WeymanComplex& wc)
{
    nlohmann::json j;
    j["format"] = kComplexFormat;
    j["ell"] = wc.ell;
    j["dimW"] = wc.dimW;
    j["d_supp"] = wc.d_supp;
    auto terms = nlohmann::json::array();
    for (int p : wc.support()) {
        auto summands = nlohmann::json::array();
        const AFreeModule t = wc.term(p);
        for (std::size_t s = 0; s < t.summands().size(); ++s)
            summands.push_back({{"i", p + t.summands()[s].wedge},
                                {"twist", t.summands()[s].twist()},
                                {"rank", t.summand_rank(s)}});
        terms.push_back({{"p", p}, {"rank", t.rank()}, {"summands", std::move(summands)}});
    }
    j["terms"] = std::move(terms);
    auto maps = nlohmann::json::array();
    for (int p = wc.p_lo; p < wc.p_hi; ++p) {
        const AMap& d = wc.differential(p);
        if (d.source.is_zero() || d.target.is_zero())
            continue;
        auto blocks = nlohmann::json::array();
        for (std::size_t s = 0; s < d.source.summands().size(); ++s)
            for (std::size_t t = 0; t < d.target.summands().size(); ++t) {
                const PolyMatrix blk = d.block(s, t);
                if (blk.is_zero())
                    continue;
                auto rows = nlohmann::json::array();
                for (std::size_t r = 0; r < blk.rows(); ++r) {
                    auto row = nlohmann::json::array();
                    for (std::size_t c = 0; c < blk.cols(); ++c)
                        row.push_back(poly_to_json(blk(r, c)));
                    rows.push_back(std::move(row));
                }
                blocks.push_back(
                    {{"a", d.source.summands()[s].wedge}, {"b", d.target.summands()[t].wedge}, {"entries", std::move(rows)}});
            }
        maps.push_back({{"p", p}, {"blocks", std::move(blocks)}});
    }
    j["maps"] = std::move(maps);
    j["provenance"] = wc.provenance;
    return j;
}

}  // namespace weylith
