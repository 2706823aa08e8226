#include "weylith/resultant/resultant.hpp"

#include "weylith/kernel/parallel.hpp"

#include <random>

namespace weylith {

int two_term_position(const WeymanComplex& wc)
{
    const auto support = wc.support();
    if (support.size() != 2 || support[1] != support[0] + 1)
        throw InvalidInput("determinant needs exactly two adjacent nonzero terms, found "
                           + std::to_string(support.size()));
    if (wc.term(support[0]).rank() != wc.term(support[1]).rank())
        throw InvalidInput("two-term complex has unequal ranks " + std::to_string(wc.term(support[0]).rank()) + " and "
                           + std::to_string(wc.term(support[1]).rank()));
    return support[0];
}

PolyA det_two_term(const WeymanComplex& wc)
{
    const int p = two_term_position(wc);
    const auto rep = verify_complex(wc);
    if (!rep.ok())
        throw InvariantViolation("complex failed verification: "
                                 + (rep.failures.empty() ? std::string("unknown") : rep.failures.front()));
    return determinant(wc.differential(p).matrix);
}

PolyA symbolic_sylvester(int d)
{
    if (d < 1)
        throw InvalidInput("Sylvester resultant needs d >= 1");
    const PolyShape shape{2, d + 1};
    const std::size_t n = static_cast<std::size_t>(2 * d);
    PolyMatrix m(shape, n, n);
    for (int r = 0; r < d; ++r)
        for (int i = 0; i <= d; ++i) {
            m(static_cast<std::size_t>(r), static_cast<std::size_t>(r + i)) = PolyA::variable(shape, 0, d - i);
            m(static_cast<std::size_t>(d + r), static_cast<std::size_t>(r + i)) = PolyA::variable(shape, 1, d - i);
        }
    return determinant(m);
}

VeroneseResultant veronese_resultant(int d)
{
    if (d < 2)
        throw ExcludedCase("the resultant pipeline needs d >= 2 so that ell = 2 <= dim W - 1");
    VeroneseResultant vr;
    vr.d = d;
    vr.complex = weyman_complex(SheafSpec::make_veronese(d, 0), AmbientSpace(d + 1), 2);
    vr.position = two_term_position(vr.complex);
    vr.determinant = det_two_term(vr.complex);

    std::vector<Rational> f(static_cast<std::size_t>(d + 1), Rational(0)), g = f;
    f.back() = Rational(1);   // x^d
    g.front() = Rational(1);  // y^d
    const auto pt = binary_pair_point<Rational>(f, g);
    const Rational det = vr.determinant.evaluate<Rational>(std::span<const Rational>(pt.coords));
    const Rational res = sylvester_resultant<Rational>(f, g);
    if (det.is_zero() || res.is_zero())
        throw InvariantViolation("witness pair x^d, y^d gave a vanishing determinant");
    vr.unit = det / res;
    return vr;
}

Rational resultant_value(const VeroneseResultant& vr, std::span<const Rational> f, std::span<const Rational> g)
{
    if (f.size() != static_cast<std::size_t>(vr.d + 1) || g.size() != f.size())
        throw InvalidInput("binary forms must have degree " + std::to_string(vr.d));
    const auto pt = binary_pair_point<Rational>(f, g);
    const auto sc = specialize(vr.complex, pt);
    const auto idx = static_cast<std::size_t>(vr.position - sc.p_lo);
    return determinant(sc.maps[idx]) / vr.unit;
}

nlohmann::json VanishingReport::to_json() const
{
    nlohmann::json j{{"d", d},
                     {"field", field == FieldChoice::Rational ? "Q" : "Fp"},
                     {"seed", std::to_string(seed)},
                     {"trials", trials},
                     {"singular", singular},
                     {"disagreements", disagreements},
                     {"pass", pass()}};
    if (field == FieldChoice::Prime)
        j["modulus"] = std::to_string(Fp::modulus);
    if (witness)
        j["witness"] = *witness;
    return j;
}

namespace {

template <class F>
std::vector<F> times_linear(const std::vector<long>& q, long a, long b)
{
    // (a x + b y) * q where q has degree d - 1, low-to-high in x.
    std::vector<F> out(q.size() + 1, F(0));
    for (std::size_t i = 0; i < q.size(); ++i) {
        out[i] += F(b) * F(q[i]);
        out[i + 1] += F(a) * F(q[i]);
    }
    return out;
}

struct TrialOutcome {
    bool singular = false;
    bool agree = true;
    std::string pair;
};

template <class F>
TrialOutcome run_trial(const VeroneseResultant& vr, std::mt19937_64& rng)
{
    const int d = vr.d;
    const long bound = std::is_same_v<F, Rational> ? 9 : 2147483646L;
    std::uniform_int_distribution<long> coeff(-bound, bound);
    std::bernoulli_distribution shared(0.5);
    std::vector<F> f, g;
    std::string text;
    if (shared(rng)) {
        long a = 0, b = 0;
        while (a == 0 && b == 0) {
            a = coeff(rng);
            b = coeff(rng);
        }
        std::vector<long> qf(static_cast<std::size_t>(d)), qg(static_cast<std::size_t>(d));
        for (auto& x : qf)
            x = coeff(rng);
        for (auto& x : qg)
            x = coeff(rng);
        f = times_linear<F>(qf, a, b);
        g = times_linear<F>(qg, a, b);
        text = "shared factor ";
    } else {
        for (int i = 0; i <= d; ++i) {
            f.push_back(F(coeff(rng)));
            g.push_back(F(coeff(rng)));
        }
        text = "random ";
    }
    auto join = [](const std::vector<F>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + v[i].str();
        return s;
    };
    text += "f = " + join(f) + ", g = " + join(g);

    const auto pt = binary_pair_point<F>(f, g);
    const auto sc = specialize(vr.complex, pt);
    const auto& m = sc.maps[static_cast<std::size_t>(vr.position - sc.p_lo)];
    TrialOutcome out;
    out.singular = rank(m) < m.rows();
    const bool res_zero = sylvester_resultant<F>(f, g).is_zero();
    out.agree = out.singular == res_zero;
    out.pair = std::move(text);
    return out;
}

}  // namespace

VanishingReport resultant_vanishing_probe(const VeroneseResultant& vr, int trials, std::uint64_t seed, FieldChoice field)
{
    if (trials < 0)
        throw InvalidInput("negative trial count");
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
    parallel_for(outcomes.size(), [&](std::size_t i) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(i)};
        std::mt19937_64 rng(seq);
        outcomes[i] = field == FieldChoice::Rational ? run_trial<Rational>(vr, rng) : run_trial<Fp>(vr, rng);
    });
    VanishingReport rep;
    rep.d = vr.d;
    rep.field = field;
    rep.seed = seed;
    rep.trials = trials;
    for (const auto& o : outcomes) {
        rep.singular += o.singular;
        if (!o.agree) {
            ++rep.disagreements;
            if (!rep.witness)
                rep.witness = o.pair;
        }
    }
    return rep;
}

VanishingReport resultant_vanishing_probe(int d, int trials, std::uint64_t seed, FieldChoice field)
{
    return resultant_vanishing_probe(veronese_resultant(d), trials, seed, field);
}

}  // namespace weylith
