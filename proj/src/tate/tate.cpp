#include "weylith/tate/tate.hpp"

#include "weylith/algebra/generators.hpp"
#include "weylith/errors.hpp"

#include <algorithm>
#include <map>

namespace weylith {

const FreeEModule& TateSegment::term(int p) const
{
    if (p < p_lo || p > p_hi)
        throw WindowTooNarrow("term " + std::to_string(p) + " outside segment");
    return terms[static_cast<std::size_t>(p - p_lo)];
}

const ExteriorMap& TateSegment::differential(int p) const
{
    if (p < p_lo || p >= p_hi)
        throw WindowTooNarrow("differential " + std::to_string(p) + " outside segment");
    return maps[static_cast<std::size_t>(p - p_lo)];
}

namespace {

/// First internal degree where ker(out) != im(in), or nothing.
std::optional<int> inexact_degree(const ExteriorMap& in, const ExteriorMap& out)
{
    const FreeEModule& mid = out.source;
    for (int d = mid.lowest_degree(); d <= mid.highest_degree(); ++d) {
        const MatQ a = out.slice(d), b = in.slice(d);
        if (a.cols() - rank(a) != rank(b))
            return d;
    }
    return std::nullopt;
}

}  // namespace

ExteriorMap kernel_cover(const ExteriorMap& phi)
{
    const int n = phi.source.dimW();
    const auto ker = kernel_submodule(phi);
    const auto cover = e_minimal_generators(ker.module);
    const FreeEModule& target = phi.source;
    ExteriorMap out{cover.free_module(n), target, {}};
    for (const auto& block : cover.blocks) {
        const int deg = block.degree;
        const int j = n - deg;
        const std::size_t s = out.source.find_twist(j);
        const MatQ images = ker.basis[static_cast<std::size_t>(deg - ker.module.lo)] * block.elements;
        for (std::size_t b = 0; b < target.summands().size(); ++b) {
            const int k = j - target.summands()[b].twist;
            if (k < 0 || k > n)
                continue;
            FormMatrix forms(n, k, target.summands()[b].multiplicity, block.elements.cols());
            for (std::size_t hp = 0; hp < forms.rows(); ++hp) {
                const std::size_t row0 = target.offset(deg, b, hp);
                for (std::size_t h = 0; h < forms.cols(); ++h) {
                    auto e = forms.entry(hp, h);
                    for (std::size_t x = 0; x < e.size(); ++x)
                        e[x] = images(row0 + x, h);
                }
            }
            if (!forms.is_zero())
                out.blocks.push_back({s, b, std::move(forms)});
        }
    }
    return out;
}

TateSegment tate_segment(const SheafSpec& spec, const AmbientSpace& ambient, int p_lo, int p_hi)
{
    if (p_lo > p_hi)
        throw InvalidInput("empty Tate window");
    validate_sheaf(spec, ambient);
    const int r = effective_regularity(spec, ambient);
    const int check_hi = std::max(p_hi, r + 2);
    const DegreewiseSModule m = realize(spec, ambient, r, check_hi + 1);

    std::map<int, ExteriorMap> maps;
    for (int p = r; p <= check_hi; ++p)
        maps.emplace(p, bgg_term(m, p));
    for (int p = r + 1; p <= check_hi; ++p)
        if (auto d = inexact_degree(maps.at(p - 1), maps.at(p)))
            throw RegularityFailure(p, "R(M_{>=" + std::to_string(r) + "}) is not exact at p = " + std::to_string(p)
                                           + " (internal degree " + std::to_string(*d)
                                           + "); the regularity bound is too small");
    for (int p = r - 1; p >= p_lo; --p)
        maps.emplace(p, kernel_cover(maps.at(p + 1)));

    TateSegment seg{ambient.dimW(), p_lo, p_hi, r, {}, {}};
    for (int p = p_lo; p <= p_hi; ++p) {
        const ExteriorMap& d = maps.at(p);
        seg.terms.push_back(d.source);
        if (p < p_hi)
            seg.maps.push_back(d);
    }
    return seg;
}

std::vector<std::string> segment_failures(const TateSegment& seg)
{
    std::vector<std::string> out;
    const int n = seg.dimW;
    const auto count = static_cast<std::size_t>(seg.p_hi - seg.p_lo + 1);
    if (seg.terms.size() != count || seg.maps.size() + 1 != count) {
        out.push_back("segment has inconsistent term/map counts");
        return out;
    }
    for (int p = seg.p_lo; p <= seg.p_hi; ++p) {
        const FreeEModule& t = seg.term(p);
        const std::string at = " at p = " + std::to_string(p);
        if (t.dimW() != n && !t.is_zero())
            out.push_back("term ambient mismatch" + at);
        for (const auto& s : t.summands()) {
            const int i = p + s.twist;
            if (i < 0 || i > n - 1)
                out.push_back("twist " + std::to_string(s.twist) + " implies cohomological index " + std::to_string(i)
                              + at);
        }
        if (p >= seg.regularity && !(t.summands().empty() || (t.summands().size() == 1 && t.summands()[0].twist == -p)))
            out.push_back("term beyond the regularity is not hat-E(-p) (x) M_p" + at);
        if (p == seg.p_hi)
            continue;
        const ExteriorMap& d = seg.differential(p);
        if (!(d.source == t) || !(d.target == seg.term(p + 1))) {
            out.push_back("differential does not match its terms" + at);
            continue;
        }
        for (const auto& b : d.blocks) {
            if (b.forms.is_zero())
                continue;
            const int a = d.source.summands()[b.source].twist, c = d.target.summands()[b.target].twist;
            if (a - c < 1)
                out.push_back("non-minimal block hat-E(" + std::to_string(a) + ") -> hat-E(" + std::to_string(c) + ")"
                              + at);
            if (b.forms.degree() != a - c)
                out.push_back("block form degree disagrees with the twist drop" + at);
        }
        if (p + 1 < seg.p_hi && !compose(seg.differential(p + 1), d).is_zero())
            out.push_back("d^{p+1} o d^p != 0" + at);
    }
    return out;
}

CohomologyTable::CohomologyTable(int N, int p_lo, int p_hi) : N_(N), p_lo_(p_lo), p_hi_(p_hi) {}

bool CohomologyTable::known(int i, int k) const
{
    return i >= 0 && i <= N_ && k + i >= p_lo_ && k + i <= p_hi_;
}

std::size_t CohomologyTable::at(int i, int k) const
{
    if (!known(i, k))
        throw InvalidInput("h^" + std::to_string(i) + "(F(" + std::to_string(k) + ")) is outside the table");
    auto it = values_.find({i, k});
    return it == values_.end() ? 0 : it->second;
}

void CohomologyTable::set(int i, int k, std::size_t value)
{
    if (!known(i, k))
        throw InvalidInput("cohomology entry outside the table");
    if (value == 0)
        values_.erase({i, k});
    else
        values_[{i, k}] = value;
}

CohomologyTable cohomology_table(const TateSegment& seg)
{
    const int N = seg.dimW - 1;
    CohomologyTable table(N, seg.p_lo, seg.p_hi);
    for (int p = seg.p_lo; p <= seg.p_hi; ++p)
        for (const auto& s : seg.term(p).summands()) {
            const int i = p + s.twist;
            if (i < 0 || i > N)
                throw CorruptedSegment("summand hat-E(" + std::to_string(s.twist) + ") in T^" + std::to_string(p)
                                       + " implies cohomological index " + std::to_string(i));
            table.set(i, -s.twist, s.multiplicity);
        }
    return table;
}

FormMatrix extract_component(const TateSegment& seg, int p, int a, int b)
{
    const ExteriorMap& d = seg.differential(p);
    const std::size_t s = d.source.find_twist(a), t = d.target.find_twist(b);
    if (s == FreeEModule::npos || t == FreeEModule::npos)
        return FormMatrix();
    if (const ExteriorBlock* blk = d.find_block(a, b))
        return blk->forms;
    return FormMatrix(seg.dimW, a - b, d.target.summands()[t].multiplicity, d.source.summands()[s].multiplicity);
}

namespace {

nlohmann::json summands_json(const FreeEModule& f)
{
    auto arr = nlohmann::json::array();
    for (const auto& s : f.summands())
        arr.push_back({{"twist", s.twist}, {"multiplicity", s.multiplicity}});
    return arr;
}

FreeEModule summands_from(const nlohmann::json& arr, int dimW)
{
    std::vector<Summand> s;
    for (const auto& e : arr)
        s.push_back({e.at("twist").get<int>(), e.at("multiplicity").get<std::size_t>()});
    return FreeEModule(dimW, std::move(s));
}

}  // namespace

nlohmann::json segment_to_json(const TateSegment& seg)
{
    nlohmann::json j;
    j["format"] = kSegmentFormat;
    j["dimW"] = seg.dimW;
    j["p_lo"] = seg.p_lo;
    j["p_hi"] = seg.p_hi;
    j["regularity"] = seg.regularity;
    auto terms = nlohmann::json::array();
    for (int p = seg.p_lo; p <= seg.p_hi; ++p)
        terms.push_back({{"p", p}, {"summands", summands_json(seg.term(p))}});
    j["terms"] = std::move(terms);
    auto maps = nlohmann::json::array();
    for (int p = seg.p_lo; p < seg.p_hi; ++p) {
        const ExteriorMap& d = seg.differential(p);
        auto blocks = nlohmann::json::array();
        for (const auto& b : d.blocks) {
            auto rows = nlohmann::json::array();
            for (std::size_t r = 0; r < b.forms.rows(); ++r) {
                auto row = nlohmann::json::array();
                for (std::size_t c = 0; c < b.forms.cols(); ++c) {
                    auto coords = nlohmann::json::array();
                    for (const auto& x : b.forms.entry(r, c))
                        coords.push_back(x.str());
                    row.push_back(std::move(coords));
                }
                rows.push_back(std::move(row));
            }
            blocks.push_back({{"source_twist", d.source.summands()[b.source].twist},
                              {"target_twist", d.target.summands()[b.target].twist},
                              {"degree", b.forms.degree()},
                              {"entries", std::move(rows)}});
        }
        maps.push_back({{"p", p}, {"blocks", std::move(blocks)}});
    }
    j["maps"] = std::move(maps);
    return j;
}

TateSegment segment_from_json(const nlohmann::json& j)
{
    try {
        if (j.at("format").get<std::string>() != kSegmentFormat)
            throw ParseError("unsupported segment format");
        TateSegment seg;
        seg.dimW = j.at("dimW").get<int>();
        seg.p_lo = j.at("p_lo").get<int>();
        seg.p_hi = j.at("p_hi").get<int>();
        seg.regularity = j.at("regularity").get<int>();
        if (seg.dimW < 2 || seg.p_lo > seg.p_hi)
            throw ParseError("segment header out of range");
        const auto& terms = j.at("terms");
        const auto& maps = j.at("maps");
        const auto count = static_cast<std::size_t>(seg.p_hi - seg.p_lo + 1);
        if (terms.size() != count || maps.size() + 1 != count)
            throw ParseError("segment term/map counts do not match its range");
        for (std::size_t i = 0; i < count; ++i) {
            if (terms[i].at("p").get<int>() != seg.p_lo + static_cast<int>(i))
                throw ParseError("segment terms out of order");
            seg.terms.push_back(summands_from(terms[i].at("summands"), seg.dimW));
        }
        for (std::size_t i = 0; i + 1 < count; ++i) {
            if (maps[i].at("p").get<int>() != seg.p_lo + static_cast<int>(i))
                throw ParseError("segment maps out of order");
            ExteriorMap d{seg.terms[i], seg.terms[i + 1], {}};
            for (const auto& b : maps[i].at("blocks")) {
                const std::size_t s = d.source.find_twist(b.at("source_twist").get<int>());
                const std::size_t t = d.target.find_twist(b.at("target_twist").get<int>());
                if (s == FreeEModule::npos || t == FreeEModule::npos)
                    throw ParseError("block refers to a missing summand");
                const int degree = b.at("degree").get<int>();
                FormMatrix forms(seg.dimW, degree, d.target.summands()[t].multiplicity,
                                 d.source.summands()[s].multiplicity);
                const auto& rows = b.at("entries");
                if (rows.size() != forms.rows())
                    throw ParseError("block row count mismatch");
                for (std::size_t r = 0; r < forms.rows(); ++r) {
                    if (rows[r].size() != forms.cols())
                        throw ParseError("block column count mismatch");
                    for (std::size_t c = 0; c < forms.cols(); ++c) {
                        const auto& coords = rows[r][c];
                        auto e = forms.entry(r, c);
                        if (coords.size() != e.size())
                            throw ParseError("exterior form has the wrong number of coordinates");
                        for (std::size_t x = 0; x < e.size(); ++x)
                            e[x] = Rational::parse(coords[x].get<std::string>());
                    }
                }
                d.blocks.push_back({s, t, std::move(forms)});
            }
            seg.maps.push_back(std::move(d));
        }
        return seg;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed segment: ") + e.what());
    } catch (const InvalidInput& e) {
        throw ParseError(std::string("malformed segment: ") + e.what());
    }
}

nlohmann::json table_to_json(const CohomologyTable& table)
{
    nlohmann::json j;
    j["format"] = kTableFormat;
    j["N"] = table.N();
    j["p_lo"] = table.p_lo();
    j["p_hi"] = table.p_hi();
    auto rows = nlohmann::json::array();
    for (int i = 0; i <= table.N(); ++i) {
        auto entries = nlohmann::json::array();
        for (int k = table.p_lo() - i; k <= table.p_hi() - i; ++k)
            entries.push_back({{"k", k}, {"h", table.at(i, k)}});
        rows.push_back({{"i", i}, {"entries", std::move(entries)}});
    }
    j["h"] = std::move(rows);
    return j;
}

}  // namespace weylith
