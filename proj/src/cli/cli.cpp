#include "weylith/cli/cli.hpp"

#include "weylith/errors.hpp"
#include "weylith/weyman/weyman.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace weylith::cli {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 computation failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

fs::path resolve_cache_dir(const std::optional<std::string>& flag)
{
    if (flag)
        return *flag;
    if (const char* env = std::getenv("WEYLITH_CACHE_DIR"); env && *env)
        return env;
    return ".weylith-cache";
}

namespace {

/// Writes `text` to `path` through a uniquely named sibling and an atomic rename.
void atomic_write(const fs::path& path, const std::string& text)
{
    static std::atomic<unsigned> counter{0};
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    const fs::path tmp = dir / ("." + path.filename().string() + ".tmp-" + std::to_string(::getpid()) + "-"
                                + std::to_string(counter++));
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw Error("cannot write " + tmp.string());
        os << text;
        os.flush();
        if (!os)
            throw Error("write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error("cannot move " + tmp.string() + " into place: " + ec.message());
    }
}

bool is_temporary(const fs::path& p)
{
    return p.filename().string().find(".tmp") != std::string::npos;
}

}  // namespace

SegmentCache::SegmentCache(fs::path dir) : dir_(std::move(dir))
{
    fs::create_directories(dir_);
}

std::string SegmentCache::key(const SheafSpec& spec, int dimW, int p_lo, int p_hi)
{
    const nlohmann::json j{
        {"format", kSegmentFormat}, {"sheaf", sheaf_to_json(spec)}, {"dimW", dimW}, {"p_lo", p_lo}, {"p_hi", p_hi}};
    return sha256_hex(j.dump());
}

fs::path SegmentCache::entry_path(const std::string& key) const
{
    return dir_ / (key + ".json");
}

std::optional<TateSegment> SegmentCache::load(const std::string& key) const
{
    const fs::path path = entry_path(key);
    std::ifstream is(path, std::ios::binary);
    if (!is)
        return std::nullopt;
    try {
        nlohmann::json j = nlohmann::json::parse(is);
        TateSegment seg = segment_from_json(j);
        if (!segment_failures(seg).empty())
            return std::nullopt;
        std::error_code ec;
        fs::last_write_time(path, fs::file_time_type::clock::now(), ec);
        return seg;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void SegmentCache::store(const std::string& key, const TateSegment& seg) const
{
    atomic_write(entry_path(key), segment_to_json(seg).dump());
}

TateSegment cached_segment(const SegmentCache* cache, const SheafSpec& spec, const AmbientSpace& ambient, int p_lo,
                           int p_hi)
{
    if (!cache)
        return tate_segment(spec, ambient, p_lo, p_hi);
    const std::string key = SegmentCache::key(spec, ambient.dimW(), p_lo, p_hi);
    if (auto hit = cache->load(key))
        return std::move(*hit);
    TateSegment seg = tate_segment(spec, ambient, p_lo, p_hi);
    cache->store(key, seg);
    return seg;
}

nlohmann::json GcReport::to_json() const
{
    auto arr = nlohmann::json::array();
    for (const auto& [name, size] : removed)
        arr.push_back({{"entry", name}, {"bytes", size}});
    return {{"format", "weylith.cache-gc/1"}, {"removed", arr}, {"kept_bytes", kept_bytes}};
}

GcReport cache_gc(const fs::path& dir, std::uintmax_t max_bytes)
{
    if (!fs::is_directory(dir))
        throw InvalidInput("cache directory " + dir.string() + " does not exist");
    struct Entry {
        fs::path path;
        std::uintmax_t size;
        fs::file_time_type mtime;
    };
    std::vector<Entry> entries;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file() || is_temporary(e.path()) || e.path().extension() != ".json")
            continue;
        entries.push_back({e.path(), e.file_size(), e.last_write_time()});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.mtime != b.mtime ? a.mtime < b.mtime : a.path < b.path;
    });
    std::uintmax_t total = 0;
    for (const auto& e : entries)
        total += e.size;
    GcReport rep;
    for (const auto& e : entries) {
        if (total <= max_bytes)
            break;
        fs::remove(e.path);  // throws on permission failures
        total -= e.size;
        rep.removed.emplace_back(e.path.filename().string(), e.size);
    }
    rep.kept_bytes = total;
    return rep;
}

namespace {

std::string render_form(const std::span<const Rational> coords, int dimW, int degree)
{
    const auto basis = wedge_basis(dimW, degree);
    std::string s;
    for (std::size_t x = 0; x < coords.size(); ++x) {
        if (coords[x].is_zero())
            continue;
        std::string c = coords[x].str();
        if (!s.empty())
            s += c[0] == '-' ? " - " : " + ";
        else if (c[0] == '-')
            s += "-";
        if (c[0] == '-')
            c = c.substr(1);
        std::string mono;
        for (std::size_t i = 0; i < basis[x].size(); ++i)
            mono += (i ? "^" : "") + std::string("e") + std::to_string(basis[x][i]);
        if (mono.empty())
            s += c;
        else
            s += (c == "1" ? "" : c + "*") + mono;
    }
    return s.empty() ? "0" : s;
}

void print_grid(std::ostream& os, const std::vector<std::vector<std::string>>& cells)
{
    std::size_t width = 1;
    for (const auto& row : cells)
        for (const auto& c : row)
            width = std::max(width, c.size());
    for (const auto& row : cells) {
        os << "  [";
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "  " : " ") << std::string(width - row[i].size(), ' ') << row[i];
        os << " ]\n";
    }
}

std::string pretty_table(const CohomologyTable& t)
{
    std::ostringstream os;
    os << "h^i(F(k)), '.' = outside the segment\n";
    const int k_lo = t.p_lo() - t.N(), k_hi = t.p_hi();
    os << "k:   ";
    for (int k = k_lo; k <= k_hi; ++k)
        os << " " << std::setw(4) << k;
    os << "\n";
    for (int i = t.N(); i >= 0; --i) {
        os << "i=" << i << ": ";
        for (int k = k_lo; k <= k_hi; ++k)
            os << " " << std::setw(4) << (t.known(i, k) ? std::to_string(t.at(i, k)) : std::string("."));
        os << "\n";
    }
    return os.str();
}

std::string pretty_segment(const TateSegment& seg)
{
    std::ostringstream os;
    for (int p = seg.p_lo; p <= seg.p_hi; ++p) {
        os << "T^" << p << " =";
        const auto& s = seg.term(p).summands();
        if (s.empty())
            os << " 0";
        for (std::size_t i = 0; i < s.size(); ++i)
            os << (i ? " +" : "") << " E(" << s[i].twist << ")^" << s[i].multiplicity;
        os << "\n";
        if (p == seg.p_hi)
            continue;
        const ExteriorMap& d = seg.differential(p);
        for (const auto& b : d.blocks) {
            os << "d^" << p << ": E(" << d.source.summands()[b.source].twist << ") -> E("
               << d.target.summands()[b.target].twist << ")\n";
            std::vector<std::vector<std::string>> cells(b.forms.rows());
            for (std::size_t r = 0; r < b.forms.rows(); ++r)
                for (std::size_t c = 0; c < b.forms.cols(); ++c)
                    cells[r].push_back(render_form(b.forms.entry(r, c), seg.dimW, b.forms.degree()));
            print_grid(os, cells);
        }
    }
    return os.str();
}

std::string pretty_complex(const WeymanComplex& wc)
{
    std::ostringstream os;
    os << "ell = " << wc.ell << ", dim W = " << wc.dimW << ", d_supp = " << wc.d_supp << "\n";
    for (int p : wc.support()) {
        const AFreeModule t = wc.term(p);
        os << "W^" << p << " =";
        for (std::size_t s = 0; s < t.summands().size(); ++s)
            os << (s ? " +" : "") << " A(" << t.summands()[s].twist() << ")^" << t.summand_rank(s);
        os << "\n";
    }
    for (int p = wc.p_lo; p < wc.p_hi; ++p) {
        const AMap& d = wc.differential(p);
        if (d.source.is_zero() || d.target.is_zero())
            continue;
        os << "d^" << p << ":\n";
        std::vector<std::vector<std::string>> cells(d.matrix.rows());
        for (std::size_t r = 0; r < d.matrix.rows(); ++r)
            for (std::size_t c = 0; c < d.matrix.cols(); ++c)
                cells[r].push_back(d.matrix(r, c).str());
        print_grid(os, cells);
    }
    return os.str();
}

void emit(const JobSpec& job, std::ostream& out, const nlohmann::json& artifact, const std::string& pretty)
{
    const std::string text = artifact.dump(2) + "\n";
    if (job.output)
        atomic_write(*job.output, text);
    if (job.pretty)
        out << pretty;
    else if (!job.output)
        out << text;
}

int dim_for(const JobSpec& job)
{
    if (job.dimW)
        return *job.dimW;
    if (job.sheaf && job.sheaf->kind == SheafKind::Veronese)
        return job.sheaf->degree + 1;
    throw InvalidInput("--dimW is required for this sheaf");
}

const SheafSpec& need_sheaf(const JobSpec& job)
{
    if (!job.sheaf)
        throw InvalidInput("--sheaf is required");
    return *job.sheaf;
}

std::string rationals(const std::vector<Rational>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + v[i].str();
    return s;
}

int run_resultant(const JobSpec& job, std::ostream& out, std::ostream& err)
{
    if (job.f.empty() != job.g.empty())
        throw InvalidInput("--f and --g must be given together");
    if (job.f.empty() && job.trials == 0)
        throw InvalidInput("resultant needs --f/--g or --trials");
    const VeroneseResultant vr = veronese_resultant(job.degree);
    nlohmann::json j{{"format", "weylith.resultant/1"}, {"d", job.degree}, {"unit", vr.unit.str()}};
    std::ostringstream pretty;
    pretty << "d = " << job.degree << ", determinant of the complex = " << vr.unit.str() << " * Res\n";
    bool agree = true;
    if (!job.f.empty()) {
        if (job.f.size() != static_cast<std::size_t>(job.degree + 1) || job.g.size() != job.f.size())
            throw InvalidInput("binary forms of degree " + std::to_string(job.degree) + " need "
                               + std::to_string(job.degree + 1) + " coefficients");
        const Rational value = resultant_value(vr, job.f, job.g);
        const Rational oracle = sylvester_resultant<Rational>(job.f, job.g);
        agree = value == oracle;
        auto strs = [](const std::vector<Rational>& v) {
            auto a = nlohmann::json::array();
            for (const auto& x : v)
                a.push_back(x.str());
            return a;
        };
        j["f"] = strs(job.f);
        j["g"] = strs(job.g);
        j["resultant"] = value.str();
        j["sylvester"] = oracle.str();
        j["agree"] = agree;
        pretty << "Res(f = [" << rationals(job.f) << "], g = [" << rationals(job.g) << "]) = " << value.str()
               << " (Sylvester: " << oracle.str() << ")\n";
    }
    if (job.symbolic)
        j["determinant"] = poly_to_json(vr.determinant);
    if (job.symbolic)
        pretty << "det = " << vr.determinant.str() << "\n";
    if (job.trials > 0) {
        const auto rep = resultant_vanishing_probe(vr, job.trials, job.seed, job.field);
        j["probe"] = rep.to_json();
        agree = agree && rep.pass();
        pretty << "probe: " << rep.trials << " pairs, " << rep.singular << " singular, " << rep.disagreements
               << " disagreements (seed " << rep.seed << ")\n";
    }
    emit(job, out, j, pretty.str());
    if (!agree) {
        err << "error: determinant of the complex disagrees with the Sylvester resultant\n";
        return exit_code::invariant;
    }
    return exit_code::ok;
}

int run_unchecked(const JobSpec& job, std::ostream& out, std::ostream& err)
{
    if (job.command == Command::CacheGc) {
        const GcReport rep = cache_gc(resolve_cache_dir(job.cache_dir), job.max_bytes);
        std::ostringstream pretty;
        for (const auto& [name, size] : rep.removed)
            pretty << "removed " << name << " (" << size << " bytes)\n";
        pretty << "kept " << rep.kept_bytes << " bytes\n";
        emit(job, out, rep.to_json(), pretty.str());
        return exit_code::ok;
    }
    if (job.command == Command::Resultant)
        return run_resultant(job, out, err);

    const SheafSpec& spec = need_sheaf(job);
    const AmbientSpace ambient(dim_for(job));
    if (job.command == Command::Weyman || job.command == Command::Verify)
        check_ell(job.ell, ambient.dimW());
    validate_sheaf(spec, ambient);
    std::optional<SegmentCache> cache;
    if (!job.no_cache)
        cache.emplace(resolve_cache_dir(job.cache_dir));
    const SegmentCache* cp = cache ? &*cache : nullptr;

    if (job.command == Command::Cohomology || job.command == Command::Tate) {
        const int lo = job.p_lo.value_or(-ambient.dimW()), hi = job.p_hi.value_or(ambient.dimW());
        const TateSegment seg = cached_segment(cp, spec, ambient, lo, hi);
        if (const auto failures = segment_failures(seg); !failures.empty())
            throw InvariantViolation("Tate segment failed its checks: " + failures.front());
        if (job.command == Command::Tate) {
            nlohmann::json j = segment_to_json(seg);
            j["sheaf"] = sheaf_to_json(spec);
            emit(job, out, j, pretty_segment(seg));
        } else {
            const CohomologyTable table = cohomology_table(seg);
            nlohmann::json j = table_to_json(table);
            j["sheaf"] = sheaf_to_json(spec);
            emit(job, out, j, pretty_table(table));
        }
        return exit_code::ok;
    }

    const auto [lo, hi] = weyman_window(spec, ambient, job.ell);
    const TateSegment seg = cached_segment(cp, spec, ambient, lo, hi);
    const int d_supp = spec.support_dim.value_or(infer_support_dim(seg));
    WeymanComplex wc = weyman_complex_from_segment(seg, job.ell, d_supp);
    wc.provenance["sheaf"] = sheaf_to_json(spec);
    wc.provenance["support_dim_inferred"] = !spec.support_dim.has_value();
    wc.provenance["segment_sha256"] = sha256_hex(segment_to_json(seg).dump());
    const VerificationReport rep = verify_complex(wc);
    if (job.command == Command::Verify) {
        nlohmann::json j = rep.to_json();
        j["format"] = "weylith.verification/1";
        j["ell"] = wc.ell;
        j["dimW"] = wc.dimW;
        j["d_supp"] = wc.d_supp;
        j["support"] = wc.support();
        j["provenance"] = wc.provenance;
        std::ostringstream pretty;
        pretty << (rep.ok() ? "all checks passed" : "verification FAILED") << "\n";
        for (const auto& f : rep.failures)
            pretty << "  " << f << "\n";
        emit(job, out, j, pretty.str());
        if (!rep.ok()) {
            err << "error: complex failed verification\n";
            return exit_code::invariant;
        }
        return exit_code::ok;
    }
    if (!rep.ok())
        throw InvariantViolation("refusing to emit a complex that failed verification: " + rep.failures.front());
    emit(job, out, complex_to_json(wc), pretty_complex(wc));
    return exit_code::ok;
}

}  // namespace

int run(const JobSpec& job, std::ostream& out, std::ostream& err)
{
    try {
        return run_unchecked(job, out, err);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return exit_code::parse;
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << "\n";
        return exit_code::parse;
    } catch (const ExcludedCase& e) {
        err << "excluded case: " << e.what() << "\n";
        return exit_code::excluded;
    } catch (const RegularityFailure& e) {
        err << "regularity check failed at p = " << e.degree() << ": " << e.what() << "\n";
        return exit_code::regularity;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return exit_code::invariant;
    } catch (const CorruptedSegment& e) {
        err << "corrupted segment: " << e.what() << "\n";
        return exit_code::invariant;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::failure;
    }
}

namespace {

std::vector<Rational> parse_coefficients(const std::string& text)
{
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(Rational::parse(item));
    if (out.empty())
        throw ParseError("empty coefficient list");
    return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Tate resolutions, Weyman complexes and resultants over exact fields", "weylith"};
    app.require_subcommand(1);

    JobSpec job;
    std::string sheaf_text, f_text, g_text, field_text = "q";
    std::optional<int> regularity, dsupp;

    auto add_sheaf_options = [&](CLI::App* sub, bool with_window, bool with_ell) {
        sub->add_option("--sheaf", sheaf_text, "twist:D, omega:A, veronese:D[,T] or a JSON sheaf spec")->required();
        sub->add_option("--dimW", job.dimW, "dimension of W (defaults to d + 1 for veronese)");
        sub->add_option("--regularity", regularity, "regularity bound r");
        sub->add_option("--dsupp", dsupp, "override the inferred dimension of the support");
        if (with_window) {
            sub->add_option("--plo", job.p_lo, "lowest Tate position");
            sub->add_option("--phi", job.p_hi, "highest Tate position");
        }
        if (with_ell)
            sub->add_option("--ell", job.ell, "number of forms ell, 1 <= ell <= dimW - 1")->required();
        sub->add_option("--cache-dir", job.cache_dir, "segment cache directory");
        sub->add_flag("--no-cache", job.no_cache, "do not read or write the segment cache");
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--output,-o", job.output, "write the JSON artifact to this file");
        sub->add_flag("--pretty", job.pretty, "print matrices and tables as text");
    };

    auto* cohom = app.add_subcommand("cohomology", "cohomology table read off a Tate segment");
    add_sheaf_options(cohom, true, false);
    add_output(cohom);
    auto* tate = app.add_subcommand("tate", "a window of the Tate resolution");
    add_sheaf_options(tate, true, false);
    add_output(tate);
    auto* weyman = app.add_subcommand("weyman", "the ell-th Weyman complex");
    add_sheaf_options(weyman, false, true);
    add_output(weyman);
    auto* verify = app.add_subcommand("verify", "verification report for the ell-th Weyman complex");
    add_sheaf_options(verify, false, true);
    add_output(verify);
    auto* res = app.add_subcommand("resultant", "resultant of two binary forms via the Veronese Weyman complex");
    res->add_option("--veronese", job.degree, "degree d of the binary forms")->required();
    res->add_option("--f", f_text, "coefficients of f, low to high in x");
    res->add_option("--g", g_text, "coefficients of g, low to high in x");
    res->add_option("--trials", job.trials, "run the vanishing probe on this many random pairs");
    res->add_option("--field", field_text, "probe field: q (rationals) or p (prime field)")
        ->check(CLI::IsMember({"q", "p"}));
    res->add_option("--seed", job.seed, "root seed of the probe");
    res->add_flag("--symbolic", job.symbolic, "include the determinant as a polynomial");
    add_output(res);
    auto* gc = app.add_subcommand("cache-gc", "evict least recently used cache entries");
    gc->add_option("--cache-dir", job.cache_dir, "segment cache directory");
    gc->add_option("--max-bytes", job.max_bytes, "size cap in bytes")->required();
    add_output(gc);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_code::parse;
    }

    try {
        if (*cohom)
            job.command = Command::Cohomology;
        else if (*tate)
            job.command = Command::Tate;
        else if (*weyman)
            job.command = Command::Weyman;
        else if (*verify)
            job.command = Command::Verify;
        else if (*res)
            job.command = Command::Resultant;
        else
            job.command = Command::CacheGc;
        if (!sheaf_text.empty()) {
            job.sheaf = parse_sheaf_spec(sheaf_text);
            if (regularity)
                job.sheaf->regularity = regularity;
            if (dsupp)
                job.sheaf->support_dim = dsupp;
        }
        if (!f_text.empty())
            job.f = parse_coefficients(f_text);
        if (!g_text.empty())
            job.g = parse_coefficients(g_text);
        job.field = field_text == "p" ? FieldChoice::Prime : FieldChoice::Rational;
    } catch (const Error& e) {
        err << "parse error: " << e.what() << "\n";
        return exit_code::parse;
    }
    return run(job, out, err);
}

}  // namespace weylith::cli
