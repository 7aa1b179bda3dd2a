#pragma once

#include "weincalc/compositions.hpp"
#include "weincalc/manifold.hpp"
#include "weincalc/monte_carlo.hpp"
#include "weincalc/morphism.hpp"
#include "weincalc/serialize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace weincalc::verify {

using nlohmann::json;

/// Statistical acceptance band for every Monte Carlo check.
inline constexpr double sigma_band = 4.0;

struct SuiteOptions {
    bool quick = false; // brute force capped at k <= 4, Monte Carlo at 1e5 samples
    std::uint64_t seed = 20251016;
    unsigned workers = 0;
    // Closed form under test; replaceable so the suite's sensitivity can be exercised.
    std::function<BigInt(unsigned, unsigned)> moment_closed = moment_sum_closed;

    [[nodiscard]] std::uint64_t mc_samples() const { return quick ? 100'000 : 1'000'000; }
    [[nodiscard]] unsigned brute_cap(unsigned full) const { return quick ? std::min(full, 4U) : full; }
    [[nodiscard]] McOptions mc(std::uint64_t stream_tag) const {
        return {mc_samples(), seed ^ (stream_tag * 0x9e3779b97f4a7c15ULL), workers};
    }
};

struct CriterionResult {
    int id = 0;
    std::string name;
    unsigned checks = 0;
    std::vector<std::string> failures;
    json data = json::object();
    double seconds = 0.0;
    double budget_seconds = 0.0; // 0: no budget

    [[nodiscard]] bool within_budget() const { return budget_seconds == 0.0 || seconds < budget_seconds; }
    [[nodiscard]] bool pass() const { return failures.empty() && within_budget(); }

    void check(bool ok, const std::string& what) {
        ++checks;
        if (!ok) failures.push_back(what);
    }
};

namespace detail {

inline std::string mc_line(const McEstimate& e, double exact) {
    return "mean=" + std::to_string(e.mean) + " exact=" + std::to_string(exact) +
           " sigma=" + std::to_string(e.sigma_distance(exact));
}

inline json mc_json(const McEstimate& e, double exact) {
    // %.17g keeps the JSON byte-stable and exact for doubles.
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    return {{"mean", fmt(e.mean)},
            {"std_error", fmt(e.std_error)},
            {"exact", fmt(exact)},
            {"sigma_distance", fmt(e.sigma_distance(exact))},
            {"samples", e.samples},
            {"seed", e.seed}};
}

template <typename Body>
CriterionResult timed(int id, std::string name, double budget, Body body) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    r.budget_seconds = budget;
    const auto start = std::chrono::steady_clock::now();
    body(r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

} // namespace detail

/// 1. S_k by enumeration equals 2^k k! C(2k-1, k) for k <= 7.
inline CriterionResult identity_suite(const SuiteOptions& opt) {
    return detail::timed(1, "identity S_k = 2^k k! C(2k-1,k)", 60.0, [&](CriterionResult& r) {
        for (unsigned k = 1; k <= opt.brute_cap(7); ++k) {
            const BigInt brute = moment_sum_bruteforce(k, k);
            const BigInt closed = opt.moment_closed(k, k);
            r.check(brute == closed, "k=" + std::to_string(k) + ": brute " + brute.str() + " != closed " + closed.str());
            r.data["S"][std::to_string(k)] = brute.str();
        }
    });
}

/// 2. S(k,l) by enumeration equals 2^k k! C(k+l-1, k) for k, l <= 6.
inline CriterionResult general_moment_sum(const SuiteOptions& opt) {
    return detail::timed(2, "general moment sum S(k,l)", 60.0, [&](CriterionResult& r) {
        const unsigned cap = opt.brute_cap(6);
        for (unsigned k = 1; k <= cap; ++k)
            for (unsigned l = 1; l <= cap; ++l) {
                const BigInt brute = moment_sum_bruteforce(k, l);
                const BigInt closed = opt.moment_closed(k, l);
                r.check(brute == closed, "(k,l)=(" + std::to_string(k) + "," + std::to_string(l) + "): brute " +
                                             brute.str() + " != closed " + closed.str());
            }
    });
}

/// 3. Exact ball moments against polar-coordinate spot values, plus Monte Carlo
///    for n <= 3, l <= n, k <= 3.
inline CriterionResult ball_moments(const SuiteOptions& opt) {
    return detail::timed(3, "ball moment integrals", 120.0, [&](CriterionResult& r) {
        struct Spot {
            unsigned n, l, k;
            Rational coeff; // of pi^n
        };
        // int r^2 2 pi r dr = pi/2; half of int_{B^4} r^2 = pi^2/3; int r^4 2 pi r dr = pi/3
        const Spot spots[] = {{1, 1, 1, Rational(1, 2)}, {2, 1, 1, Rational(1, 6)}, {1, 1, 2, Rational(1, 3)}};
        for (const auto& s : spots) {
            const BallMoment m = ball_moment(s.n, s.l, s.k);
            r.check(m.coefficient == s.coeff && m.pi_exp == s.n,
                    "spot (n,l,k)=(" + std::to_string(s.n) + "," + std::to_string(s.l) + "," + std::to_string(s.k) +
                        "): " + m.coefficient.to_string() + " != " + s.coeff.to_string());
        }
        for (unsigned n = 1; n <= 3; ++n)
            for (unsigned l = 1; l <= n; ++l)
                for (unsigned k = 1; k <= 3; ++k) {
                    const BallMoment m = ball_moment(n, l, k);
                    const double exact = m.coefficient.to_double() * std::pow(std::numbers::pi, n);
                    const McEstimate e = mc_ball_moment(n, l, k, 1.0, opt.mc(100 * n + 10 * l + k));
                    const std::string tag = std::to_string(n) + "," + std::to_string(l) + "," + std::to_string(k);
                    r.check(e.sigma_distance(exact) < sigma_band, "MC (" + tag + "): " + detail::mc_line(e, exact));
                    r.data["mc"][tag] = detail::mc_json(e, exact);
                }
    });
}

/// 4. CP^n values for 1 <= k <= n <= 8: 0 < q < 1, not in the period lattice,
///    multi-index sum equals closed form, q(n,1) = 1/(n+1) with order n+1, q(n,n) = 1/2.
inline CriterionResult cpn_nontriviality(const SuiteOptions& opt) {
    return detail::timed(4, "CP^n values nontrivial", 10.0, [&](CriterionResult& r) {
        const unsigned n_max = opt.quick ? 4 : 8;
        for (unsigned n = 1; n <= n_max; ++n)
            for (unsigned k = 1; k <= n; ++k) {
                const std::string tag = "(" + std::to_string(n) + "," + std::to_string(k) + ")";
                const Rational q = cpn_coefficient(n, k);
                const Rational raw = cpn_weinstein_raw(n, k);
                r.check(q == raw, tag + ": closed " + q.to_string() + " != raw " + raw.to_string());
                r.check(Rational(0) < q && q < Rational(1), tag + ": q=" + q.to_string() + " outside (0,1)");
                CosetValue c{PiGradedValue::monomial(q / Rational(factorial(k)), k), cpn_lattice(k)};
                r.check(!c.is_trivial(), tag + ": value lies in the period lattice");
                if (k == 1) {
                    r.check(q == Rational(1, n + 1), tag + ": q(n,1)=" + q.to_string());
                    const OrderResult o = c.order();
                    r.check(o.is_finite() && o.order() == n + 1, tag + ": order " + o.to_string() + " != n+1");
                }
                if (k == n) r.check(q == Rational(1, 2), tag + ": q(n,n)=" + q.to_string());
                r.data["q"][std::to_string(n) + "," + std::to_string(k)] = q.to_string();
            }
    });
}

/// 5. Monte Carlo average through the ball embedding matches q pi^k / k! for n <= 3.
inline CriterionResult cpn_monte_carlo(const SuiteOptions& opt) {
    return detail::timed(5, "Monte Carlo CP^n morphism", 120.0, [&](CriterionResult& r) {
        for (unsigned n = 1; n <= 3; ++n)
            for (unsigned k = 1; k <= n; ++k) {
                const double exact =
                    cpn_coefficient(n, k).to_double() * std::pow(std::numbers::pi, k) / factorial(k).convert_to<double>();
                const McEstimate e = mc_cpn_average(n, k, opt.mc(500 + 10 * n + k));
                const std::string tag = std::to_string(n) + "," + std::to_string(k);
                r.check(e.sigma_distance(exact) < sigma_band, "MC (" + tag + "): " + detail::mc_line(e, exact));
                r.data["mc"][tag] = detail::mc_json(e, exact);
            }
    });
}

/// 6. Blow-up: Infinite for k < n <= 8, x = 0 gives the CP^n value, Monte Carlo
///    at rho = 1/2 for n <= 3, and k = n reported as Finite(2) with the flag set.
inline CriterionResult blowup_suite(const SuiteOptions& opt) {
    return detail::timed(6, "blow-up values and orders", 120.0, [&](CriterionResult& r) {
        const unsigned n_max = opt.quick ? 4 : 8;
        for (unsigned n = 1; n <= n_max; ++n)
            for (unsigned k = 1; k <= n; ++k) {
                const std::string tag = "(" + std::to_string(n) + "," + std::to_string(k) + ")";
                const BlowupValue b = blowup_weinstein(n, k);
                const OrderResult o = b.coset.order();
                if (k < n) r.check(!o.is_finite(), tag + ": expected Infinite, got " + o.to_string());
                if (k == n) {
                    r.check(o.is_finite() && o.order() == 2, tag + ": expected Finite(2), got " + o.to_string());
                    const auto flags = blowup_flags(n, k, o);
                    r.check(flags.size() == 1, tag + ": k = n flag not set");
                }
                const auto at_zero = b.coset.value.component(k).evaluate(Rational(0));
                const Rational cpn = cpn_weinstein(n, k).coset.value.component(k).num().coeff(0);
                r.check(at_zero && *at_zero == cpn, tag + ": x=0 specialization differs from the CP^n value");
                r.data["order"][std::to_string(n) + "," + std::to_string(k)] = o.to_string();
            }
        const Rational x(1, 4); // rho = 1/2
        for (unsigned n = 1; n <= 3; ++n)
            for (unsigned k = 1; k <= n; ++k) {
                const BlowupValue b = blowup_weinstein(n, k);
                const double exact = b.coset.value.component(k).evaluate(x)->to_double() * std::pow(std::numbers::pi, k);
                const McEstimate e = mc_blowup_average(n, k, 0.5, opt.mc(600 + 10 * n + k));
                const std::string tag = std::to_string(n) + "," + std::to_string(k);
                r.check(e.sigma_distance(exact) < sigma_band, "MC rho=1/2 (" + tag + "): " + detail::mc_line(e, exact));
                r.data["mc"][tag] = detail::mc_json(e, exact);
            }
    });
}

/// Synthetic 10-dimensional descriptor with rational periods in every even degree.
inline ManifoldDescriptor rational_period_descriptor() {
    return parse_manifold_descriptor(json::parse(R"({
        "dimension": 10,
        "trivial_odd_homotopy": [1, 3, 5, 7, 9],
        "periods": {"2": ["1"], "4": ["1/2", "1/3"], "6": ["1/6"], "8": ["2/7"], "10": ["1/120"]}
    })"));
}

/// 7. cpn(n,k) x trivial is nontrivial in CP^n x M for 1 <= k <= n <= 5, with
///    P_M + P_N inside P_{MxN} checked generator by generator.
inline CriterionResult product_suite(const SuiteOptions&) {
    return detail::timed(7, "products CP^n x M", 10.0, [&](CriterionResult& r) {
        const ManifoldDescriptor m = rational_period_descriptor();
        for (unsigned n = 1; n <= 5; ++n)
            for (unsigned k = 1; k <= n; ++k) {
                const std::string tag = "(" + std::to_string(n) + "," + std::to_string(k) + ")";
                const CpnValue c = cpn_weinstein(n, k);
                const Lattice full = product_cpn_lattice(n, k, m);
                const ClassValue a{2 * k - 1, c.coset.value, c.coset.lattice};
                const ClassValue b{2 * k - 1, PiGradedValue{}, m.period_lattice(k)};
                for (const auto& g : lattice_sum(a.lattice, b.lattice).generators())
                    r.check(lattice_member(PiGradedValue::monomial(g.coeff, g.pi_exp, g.x_exp), full),
                            tag + ": generator not contained in the product lattice");
                const CosetValue p = product_value(a, b, full);
                r.check(!p.is_trivial(), tag + ": product class reported trivial");
                r.check(p.value == c.coset.value && p.order() == c.coset.order(),
                        tag + ": product coset differs from the CP^n coset");
            }
    });
}

namespace detail {

// Exact integer model of one instance: every rational is scaled by a common
// denominator so the box search runs on machine integers.
struct BoxInstance {
    std::vector<LatticeGenerator> generators; // raw, uncollapsed
    PiGradedValue value;
};

inline Rational random_rational(Xoshiro256& rng, unsigned max_num, unsigned max_den) {
    const long long num = 1 + static_cast<long long>(rng() % max_num);
    const long long den = 1 + static_cast<long long>(rng() % max_den);
    return Rational(rng() % 2 ? num : -num, den);
}

inline long long random_int(Xoshiro256& rng, long long lo, long long hi) {
    return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline BoxInstance random_box_instance(Xoshiro256& rng) {
    BoxInstance inst;
    const unsigned r = 1 + static_cast<unsigned>(rng() % 3);
    for (unsigned i = 0; i < r; ++i)
        inst.generators.push_back(
            {random_rational(rng, 20, 20), static_cast<unsigned>(rng() % 2), static_cast<unsigned>(rng() % 2)});
    const unsigned kind = static_cast<unsigned>(rng() % 4);
    for (const auto& g : inst.generators) {
        Rational c = g.coeff * Rational(random_int(rng, -4, 4));
        if (kind == 1) c /= Rational(random_int(rng, 1, 4));
        inst.value += PiGradedValue::monomial(c, g.pi_exp, g.x_exp);
    }
    if (kind == 2) {
        // Perturb at a random monomial: a small fraction of an existing
        // generator there, or an arbitrary coefficient off the support.
        const unsigned a = static_cast<unsigned>(rng() % 3), b = static_cast<unsigned>(rng() % 3);
        Rational c = random_rational(rng, 20, 20);
        for (const auto& g : inst.generators)
            if (g.pi_exp == a && g.x_exp == b) c = g.coeff * Rational(random_int(rng, -4, 4), random_int(rng, 1, 6));
        inst.value += PiGradedValue::monomial(c, a, b);
    }
    if (kind == 3)
        inst.value += PiGradedValue::term(static_cast<unsigned>(rng() % 2),
                                          RatFuncQ::reduce(PolyQ(random_rational(rng, 20, 20)), PolyQ(1) + PolyQ::x()));
    return inst;
}

/// Smallest m >= 1 such that m * value = sum n_i g_i for some n in [-bound, bound]^r,
/// found by exhausting the box; nullopt if no box vector works.
inline std::optional<long long> box_search_order(const BoxInstance& inst, long long bound) {
    using Key = std::pair<unsigned, unsigned>;
    std::map<Key, Rational> target;
    for (const auto& [a, f] : inst.value.components()) {
        if (!f.is_polynomial()) return std::nullopt; // integer combinations of monomials are polynomials
        for (const auto& [b, c] : f.num().terms()) target[{a, b}] = c;
    }
    std::vector<Key> keys;
    for (const auto& [k, c] : target) keys.push_back(k);
    for (const auto& g : inst.generators)
        if (!target.count({g.pi_exp, g.x_exp})) {
            keys.push_back({g.pi_exp, g.x_exp});
            target[{g.pi_exp, g.x_exp}] = Rational(0);
        }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    BigInt den = 1;
    for (const auto& [k, c] : target) den = lcm(den, c.den());
    for (const auto& g : inst.generators) den = lcm(den, g.coeff.den());
    auto scaled = [&](const Rational& q) { return static_cast<__int128>((q.num() * (den / q.den())).convert_to<long long>()); };

    const std::size_t nk = keys.size(), r = inst.generators.size();
    std::vector<__int128> tgt(nk), gen(r * nk, 0);
    for (std::size_t i = 0; i < nk; ++i) tgt[i] = scaled(target[keys[i]]);
    for (std::size_t j = 0; j < r; ++j) {
        const Key key{inst.generators[j].pi_exp, inst.generators[j].x_exp};
        const std::size_t i = static_cast<std::size_t>(std::find(keys.begin(), keys.end(), key) - keys.begin());
        gen[j * nk + i] = scaled(inst.generators[j].coeff);
    }

    std::optional<long long> best;
    std::vector<long long> coef(r, -bound);
    std::vector<__int128> comb(nk);
    while (true) {
        std::fill(comb.begin(), comb.end(), 0);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < nk; ++i) comb[i] += coef[j] * gen[j * nk + i];
        // comb = m * tgt for a positive integer m?
        std::optional<__int128> m;
        bool ok = true;
        for (std::size_t i = 0; i < nk && ok; ++i) {
            if (tgt[i] == 0) {
                ok = comb[i] == 0;
                continue;
            }
            if (comb[i] % tgt[i] != 0) {
                ok = false;
                continue;
            }
            const __int128 q = comb[i] / tgt[i];
            if (q <= 0 || (m && *m != q)) ok = false;
            m = q;
        }
        if (ok && m && (!best || *m < *best)) best = static_cast<long long>(*m);
        if (ok && !m) best = 1; // zero value: the zero vector represents it
        std::size_t j = 0;
        while (j < r && coef[j] == bound) coef[j++] = -bound;
        if (j == r) break;
        ++coef[j];
    }
    return best;
}

} // namespace detail

/// 8. lattice_member / lattice_order agree with exhaustive search over integer
///    coefficient vectors in [-50, 50]^r on 200 random instances.
inline CriterionResult decision_oracle(const SuiteOptions& opt) {
    return detail::timed(8, "membership/order vs box search", 30.0, [&](CriterionResult& r) {
        Xoshiro256 rng(opt.seed, 8);
        const unsigned instances = 200;
        unsigned members = 0, infinite = 0;
        for (unsigned t = 0; t < instances; ++t) {
            const detail::BoxInstance inst = detail::random_box_instance(rng);
            const Lattice lattice(inst.generators);
            const OrderResult o = lattice_order(inst.value, lattice);
            const bool member = lattice_member(inst.value, lattice);
            const std::optional<long long> brute = detail::box_search_order(inst, 50);
            const std::string tag = "instance " + std::to_string(t) + " value " + inst.value.to_string() + " lattice " +
                                    lattice.to_string();
            r.check(member == (brute && *brute == 1), tag + ": membership disagrees");
            if (o.is_finite())
                r.check(brute && BigInt(*brute) == o.order(),
                        tag + ": order " + o.to_string() + " vs box " + (brute ? std::to_string(*brute) : "none"));
            else
                r.check(!brute, tag + ": Infinite but box found m=" + std::to_string(brute.value_or(0)));
            members += member;
            infinite += !o.is_finite();
        }
        r.data["instances"] = instances;
        r.data["members"] = members;
        r.data["infinite"] = infinite;
    });
}

/// 9. Monte Carlo estimates are bit-identical across repeated runs and worker counts.
inline CriterionResult determinism(const SuiteOptions& opt) {
    return detail::timed(9, "determinism", 0.0, [&](CriterionResult& r) {
        McOptions base = opt.mc(900);
        std::vector<McEstimate> runs;
        for (unsigned workers : {1U, 3U, 1U}) {
            McOptions o = base;
            o.workers = workers;
            runs.push_back(mc_cpn_average(2, 2, o));
        }
        for (std::size_t i = 1; i < runs.size(); ++i)
            r.check(std::memcmp(&runs[0].mean, &runs[i].mean, sizeof(double)) == 0 &&
                        std::memcmp(&runs[0].std_error, &runs[i].std_error, sizeof(double)) == 0,
                    "MC run " + std::to_string(i) + " differs from run 0");
        const auto a = serial::value_to_json(blowup_weinstein(3, 1).coset.value).dump();
        const auto b = serial::value_to_json(blowup_weinstein(3, 1).coset.value).dump();
        r.check(a == b, "exact serialization not stable");
    });
}

struct SuiteReport {
    std::vector<CriterionResult> criteria;
    [[nodiscard]] bool pass() const {
        return std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.pass(); });
    }
};

inline SuiteReport run_suite(const SuiteOptions& opt) {
    SuiteReport rep;
    rep.criteria.push_back(identity_suite(opt));
    rep.criteria.push_back(general_moment_sum(opt));
    rep.criteria.push_back(ball_moments(opt));
    rep.criteria.push_back(cpn_nontriviality(opt));
    rep.criteria.push_back(cpn_monte_carlo(opt));
    rep.criteria.push_back(blowup_suite(opt));
    rep.criteria.push_back(product_suite(opt));
    rep.criteria.push_back(decision_oracle(opt));
    rep.criteria.push_back(determinism(opt));
    return rep;
}

/// Timing-free JSON, byte-identical across runs with the same options.
inline json report_to_json(const SuiteReport& rep, const SuiteOptions& opt) {
    json out;
    out["schema"] = "weincalc/1";
    out["command"] = {{"name", "verify"}, {"quick", opt.quick}, {"seed", opt.seed}};
    json list = json::array();
    for (const auto& c : rep.criteria)
        list.push_back({{"id", c.id},
                        {"name", c.name},
                        {"pass", c.failures.empty()},
                        {"checks", c.checks},
                        {"failures", c.failures},
                        {"data", c.data}});
    out["criteria"] = list;
    out["status"] = rep.pass() ? "pass" : "fail";
    return out;
}

} // namespace weincalc::verify
