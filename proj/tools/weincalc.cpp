// weincalc: exact values of the generalized Weinstein morphism with
// brute-force and Monte Carlo cross-checks.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

#include "weincalc/compositions.hpp"
#include "weincalc/manifold.hpp"
#include "weincalc/monte_carlo.hpp"
#include "weincalc/morphism.hpp"
#include "weincalc/serialize.hpp"
#include "weincalc/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;
using namespace weincalc;

constexpr int exit_ok = 0;
constexpr int exit_verification = 1;
constexpr int exit_usage = 2;

/// Parameter violations detected after parsing; reported with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json envelope(const std::string& name, json args) {
    json out;
    out["schema"] = "weincalc/1";
    args["name"] = name;
    out["command"] = std::move(args);
    return out;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

std::string pi_power(unsigned a) {
    if (a == 0) return "1";
    return a == 1 ? "pi" : "pi^" + std::to_string(a);
}

/// f such that component k of `v` equals f * pi^k / k!.
RatFuncQ multiple_of_pi_k_over_k_factorial(const PiGradedValue& v, unsigned k) {
    return Rational(factorial(k)) * v.component(k);
}

json display_json(const PiGradedValue& v, unsigned k) {
    return {{"pi_basis", v.to_string()},
            {"multiple_of_pi_k_over_k_factorial", multiple_of_pi_k_over_k_factorial(v, k).to_string()},
            {"k", k}};
}

std::string order_line(const OrderResult& o) {
    std::string s = o.to_string();
    if (o.witness()) s += "  [" + o.witness()->reason + "]";
    return s;
}

Rational parse_rational_arg(const std::string& name, const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        throw UsageError("--" + name + ": " + e.what());
    }
}

void require_range(unsigned n, unsigned k) {
    if (n < 1) throw UsageError("--n must satisfy n >= 1 (got " + std::to_string(n) + ")");
    if (k < 1) throw UsageError("--k must satisfy k >= 1 (got " + std::to_string(k) + ")");
    if (k > n)
        throw UsageError("--k must satisfy k <= n (got k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
}

// ---------------------------------------------------------------- cpn

struct CpnArgs {
    unsigned n = 0, k = 0;
    bool json = false;
};

int run_cpn(const CpnArgs& a) {
    require_range(a.n, a.k);
    const CpnValue c = cpn_weinstein(a.n, a.k);
    const OrderResult o = c.coset.order();
    const bool nontrivial = !c.coset.is_trivial();
    const PiGradedValue rep = c.coset.representative();

    if (a.json) {
        json out = envelope("cpn", {{"n", a.n}, {"k", a.k}});
        out["result"] = {{"q", c.q.to_string()},
                         {"raw", c.raw.to_string()},
                         {"value", serial::value_to_json(c.coset.value)},
                         {"representative", serial::value_to_json(rep)},
                         {"lattice", serial::lattice_to_json(c.coset.lattice)},
                         {"display", display_json(rep, a.k)},
                         {"nontrivial", nontrivial}};
        out["order"] = serial::order_to_json(o);
        out["flags"] = json::array();
        out["status"] = "ok";
        emit(out);
        return exit_ok;
    }
    std::cout << "CP^" << a.n << ", k = " << a.k << "  (class in pi_" << 2 * a.k - 1 << " Ham)\n"
              << "  q(n,k)          = " << c.q << "   (multi-index sum: " << c.raw << ")\n"
              << "  value           = " << rep.to_string() << "  =  ("
              << multiple_of_pi_k_over_k_factorial(rep, a.k).to_string() << ") * pi^" << a.k << "/" << a.k << "!\n"
              << "  lattice         = " << c.coset.lattice.to_string() << '\n'
              << "  order           = " << order_line(o) << '\n'
              << "  verdict         = " << (nontrivial ? "nontrivial" : "trivial") << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------- blowup

struct BlowupArgs {
    unsigned n = 0, k = 0;
    std::string rho;
    bool json = false;
};

int run_blowup(const BlowupArgs& a) {
    require_range(a.n, a.k);
    std::optional<Rational> rho;
    if (!a.rho.empty()) {
        rho = parse_rational_arg("rho", a.rho);
        if (!(Rational(0) < *rho && *rho < Rational(1)))
            throw UsageError("--rho must satisfy 0 < rho < 1 (got " + rho->to_string() + ")");
    }
    const BlowupValue b = blowup_weinstein(a.n, a.k);
    const OrderResult o = b.coset.order();
    const auto flags = blowup_flags(a.n, a.k, o);

    std::optional<Rational> at_rho;
    double numeric = 0.0;
    if (rho) {
        at_rho = b.coset.value.component(a.k).evaluate(*rho * *rho);
        numeric = at_rho->to_double() * std::pow(std::numbers::pi, a.k);
    }

    if (a.json) {
        json args = {{"n", a.n}, {"k", a.k}};
        if (rho) args["rho"] = rho->to_string();
        json out = envelope("blowup", args);
        out["result"] = {{"q", b.q.to_string()},
                         {"variable", "x = rho^2"},
                         {"value", serial::value_to_json(b.coset.value)},
                         {"lattice", serial::lattice_to_json(b.coset.lattice)},
                         {"display", display_json(b.coset.value, a.k)},
                         {"nontrivial", !b.coset.is_trivial()}};
        if (rho)
            out["result"]["at_rho"] = {{"x", (*rho * *rho).to_string()},
                                       {"coefficient_of_pi_k", at_rho->to_string()},
                                       {"numeric", fmt_double(numeric)}};
        out["order"] = serial::order_to_json(o);
        json fl = json::array();
        for (const auto& f : flags) fl.push_back({{"id", f}, {"message", blowup_flag_message(f)}});
        out["flags"] = fl;
        out["status"] = "ok";
        emit(out);
        return exit_ok;
    }
    std::cout << "blow-up of CP^" << a.n << " (weight rho, x = rho^2), k = " << a.k << '\n'
              << "  value           = " << b.coset.value.to_string() << '\n'
              << "                  = (" << b.multiple.to_string() << ") * pi^" << a.k << "/" << a.k << "!\n"
              << "  lattice         = " << b.coset.lattice.to_string() << '\n'
              << "  order           = " << order_line(o) << '\n';
    for (const auto& f : flags) std::cout << "  FLAG " << f << ": " << blowup_flag_message(f) << '\n';
    if (rho)
        std::cout << "  at rho = " << *rho << "   = " << *at_rho << " * " << pi_power(a.k) << " = "
                  << fmt_double(numeric) << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------- moment

struct MomentArgs {
    unsigned n = 0, l = 0, k = 0;
    std::string r0 = "1";
    bool mc = false;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = McOptions{}.seed;
    unsigned workers = 0;
    bool json = false;
};

int run_moment(const MomentArgs& a) {
    if (a.n < 1) throw UsageError("--n must satisfy n >= 1");
    if (a.l < 1 || a.l > a.n)
        throw UsageError("--l must satisfy 1 <= l <= n (got l=" + std::to_string(a.l) + ", n=" + std::to_string(a.n) + ")");
    if (a.k < 1) throw UsageError("--k must satisfy k >= 1");

    std::optional<Rational> r0_exact;
    double r0 = 0.0;
    try {
        r0_exact = Rational::parse(a.r0);
        r0 = r0_exact->to_double();
    } catch (const std::exception&) {
        if (!a.mc) throw UsageError("--r0 must be a rational (p/q or decimal) unless --mc is given");
        try {
            r0 = std::stod(a.r0);
        } catch (const std::exception&) {
            throw UsageError("--r0: not a number: '" + a.r0 + "'");
        }
    }
    if (!(r0 > 0.0) || (r0_exact && r0_exact->sign() <= 0)) throw UsageError("--r0 must be > 0");

    const BallMoment m = ball_moment(a.n, a.l, a.k);
    std::optional<Rational> total;
    if (r0_exact) total = m.at_radius(*r0_exact);
    const double exact_numeric = m.coefficient.to_double() * std::pow(std::numbers::pi, m.pi_exp) *
                                 std::pow(r0, static_cast<double>(m.r0_exp));
    std::optional<McEstimate> est;
    if (a.mc) est = mc_ball_moment(a.n, a.l, a.k, r0, {a.samples, a.seed, a.workers});

    if (a.json) {
        json out = envelope("moment", {{"n", a.n}, {"l", a.l}, {"k", a.k}, {"r0", a.r0}, {"mc", a.mc}});
        out["result"] = {{"coefficient", m.coefficient.to_string()},
                         {"pi_exp", m.pi_exp},
                         {"r0_exp", m.r0_exp},
                         {"numeric", fmt_double(exact_numeric)}};
        if (total) out["result"]["coefficient_at_r0"] = total->to_string();
        if (est) out["mc"] = verify::detail::mc_json(*est, exact_numeric);
        out["flags"] = json::array();
        out["status"] = "ok";
        emit(out);
    } else {
        std::cout << "integral over B^" << 2 * a.n << "(r0) of (|z_1|^2+...+|z_" << a.l << "|^2)^" << a.k << '\n'
                  << "  exact           = " << m.coefficient << " * " << pi_power(m.pi_exp) << " * r0^" << m.r0_exp
                  << '\n';
        if (total) std::cout << "  at r0 = " << *r0_exact << "     = " << *total << " * " << pi_power(m.pi_exp) << '\n';
        std::cout << "  numeric         = " << fmt_double(exact_numeric) << '\n';
        if (est)
            std::cout << "  monte carlo     = " << fmt_double(est->mean) << " +/- " << fmt_double(est->std_error) << "  ("
                      << est->samples << " samples, seed " << est->seed << ", " << std::setprecision(3)
                      << est->sigma_distance(exact_numeric) << " sigma)\n";
    }
    if (est && !(est->sigma_distance(exact_numeric) < verify::sigma_band)) return exit_verification;
    return exit_ok;
}

// ---------------------------------------------------------------- identity

struct IdentityArgs {
    unsigned k_max = 0;
    bool json = false;
};

int run_identity(const IdentityArgs& a) {
    if (a.k_max < 1) throw UsageError("--k-max must be >= 1");
    const auto rows = verify_identity_va(a.k_max);
    bool all = true;
    for (const auto& r : rows) all = all && r.pass;
    if (a.json) {
        json out = envelope("identity", {{"k_max", a.k_max}});
        json table = json::array();
        for (const auto& r : rows)
            table.push_back({{"k", r.k}, {"brute_force", r.brute_force.str()}, {"closed_form", r.closed_form.str()}, {"pass", r.pass}});
        out["result"] = {{"rows", table}};
        out["flags"] = json::array();
        out["status"] = all ? "pass" : "fail";
        emit(out);
    } else {
        std::cout << std::setw(4) << "k" << std::setw(24) << "brute force" << std::setw(24) << "2^k k! C(2k-1,k)"
                  << "  result\n";
        for (const auto& r : rows)
            std::cout << std::setw(4) << r.k << std::setw(24) << r.brute_force.str() << std::setw(24)
                      << r.closed_form.str() << "  " << (r.pass ? "pass" : "FAIL") << '\n';
    }
    return all ? exit_ok : exit_verification;
}

// ---------------------------------------------------------------- product

struct ProductArgs {
    unsigned n = 0, k = 0;
    std::string manifold;
    std::string class_name;
    bool json = false;
};

int run_product(const ProductArgs& a) {
    require_range(a.n, a.k);
    std::ifstream in(a.manifold);
    if (!in) throw UsageError("--manifold: cannot open '" + a.manifold + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const std::exception& e) {
        throw UsageError("--manifold: invalid JSON: " + std::string(e.what()));
    }
    ManifoldDescriptor m;
    try {
        m = parse_manifold_descriptor(doc);
    } catch (const DescriptorError& e) {
        throw UsageError(std::string("descriptor ") + e.what());
    }
    const unsigned degree = 2 * a.k - 1;
    if (!m.trivial_odd_homotopy.count(degree))
        throw UsageError("descriptor trivial_odd_homotopy: must contain " + std::to_string(degree) +
                         " (pi_" + std::to_string(degree) + "(M) = 0 is required for the morphism to be defined)");
    if (a.k > m.half_dimension())
        throw UsageError("--k must satisfy k <= dim(M)/2 = " + std::to_string(m.half_dimension()));

    ClassValue b{degree, PiGradedValue{}, m.period_lattice(a.k)};
    std::string class_label = "trivial";
    if (!a.class_name.empty()) {
        auto it = m.classes.find(a.class_name);
        if (it == m.classes.end()) throw UsageError("descriptor classes." + a.class_name + ": no such class");
        if (it->second.degree != degree)
            throw UsageError("descriptor classes." + a.class_name + ".degree: is " + std::to_string(it->second.degree) +
                             ", expected " + std::to_string(degree));
        b.value = it->second.value;
        class_label = a.class_name;
    }
    const CpnValue c = cpn_weinstein(a.n, a.k);
    const ClassValue cls{degree, c.coset.value, c.coset.lattice};
    const Lattice full = product_cpn_lattice(a.n, a.k, m);
    CosetValue p;
    try {
        p = product_value(cls, b, full);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const OrderResult o = p.order();
    const bool nontrivial = !p.is_trivial();

    if (a.json) {
        json out = envelope("product", {{"n", a.n}, {"k", a.k}, {"manifold", a.manifold}, {"class", class_label}});
        out["result"] = {{"q", c.q.to_string()},
                         {"value", serial::value_to_json(p.value)},
                         {"lattice", serial::lattice_to_json(p.lattice)},
                         {"display", display_json(p.value, a.k)},
                         {"containment_checked", true},
                         {"member", !nontrivial},
                         {"nontrivial", nontrivial}};
        out["order"] = serial::order_to_json(o);
        out["flags"] = json::array();
        out["status"] = "ok";
        emit(out);
        return exit_ok;
    }
    std::cout << "CP^" << a.n << " x M (dim " << m.dimension << "), k = " << a.k << ", class on M: " << class_label << '\n'
              << "  value           = " << p.value.to_string() << '\n'
              << "  product lattice = " << p.lattice.to_string() << "   (contains P(CP^n) + P(M))\n"
              << "  order           = " << order_line(o) << '\n'
              << "  verdict         = " << (nontrivial ? "nontrivial" : "trivial") << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    bool quick = false;
    bool json = false;
    std::uint64_t seed = verify::SuiteOptions{}.seed;
    unsigned workers = 0;
};

int run_verify(const VerifyArgs& a) {
    verify::SuiteOptions opt;
    opt.quick = a.quick;
    opt.seed = a.seed;
    opt.workers = a.workers;
    const verify::SuiteReport rep = verify::run_suite(opt);
    if (a.json) {
        emit(verify::report_to_json(rep, opt));
    } else {
        for (const auto& c : rep.criteria) {
            std::cout << (c.pass() ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << "  (" << c.checks
                      << " checks, " << std::fixed << std::setprecision(2) << c.seconds << " s";
            if (c.budget_seconds > 0) std::cout << " / budget " << std::setprecision(0) << c.budget_seconds << " s";
            std::cout << ")\n" << std::defaultfloat;
            for (const auto& f : c.failures) std::cout << "       " << f << '\n';
            if (!c.within_budget()) std::cout << "       runtime budget exceeded\n";
        }
        std::cout << (rep.pass() ? "all criteria pass" : "verification FAILED") << '\n';
    }
    return rep.pass() ? exit_ok : exit_verification;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weincalc: exact values of the generalized Weinstein morphism with independent oracles"};
    app.require_subcommand(1);

    CpnArgs cpn;
    auto* cpn_cmd = app.add_subcommand("cpn", "value on the generator of pi_{2k-1}(Ham(CP^n))");
    cpn_cmd->add_option("--n", cpn.n, "complex dimension n")->required();
    cpn_cmd->add_option("--k", cpn.k, "degree index, 1 <= k <= n")->required();
    cpn_cmd->add_flag("--json", cpn.json, "emit JSON");

    BlowupArgs blowup;
    auto* blowup_cmd = app.add_subcommand("blowup", "value and order on the one-point blow-up of CP^n");
    blowup_cmd->add_option("--n", blowup.n)->required();
    blowup_cmd->add_option("--k", blowup.k)->required();
    blowup_cmd->add_option("--rho", blowup.rho, "weight as p/q or decimal, 0 < rho < 1");
    blowup_cmd->add_flag("--json", blowup.json);

    MomentArgs moment;
    auto* moment_cmd = app.add_subcommand("moment", "integral of (|z_1|^2+...+|z_l|^2)^k over B^{2n}(r0)");
    moment_cmd->add_option("--n", moment.n)->required();
    moment_cmd->add_option("--l", moment.l)->required();
    moment_cmd->add_option("--k", moment.k)->required();
    moment_cmd->add_option("--r0", moment.r0, "radius (p/q or decimal)")->capture_default_str();
    moment_cmd->add_flag("--mc", moment.mc, "also run the Monte Carlo estimate");
    moment_cmd->add_option("--samples", moment.samples)->capture_default_str();
    moment_cmd->add_option("--seed", moment.seed)->capture_default_str();
    moment_cmd->add_option("--workers", moment.workers, "0 = hardware concurrency");
    moment_cmd->add_flag("--json", moment.json);

    IdentityArgs identity;
    auto* identity_cmd = app.add_subcommand("identity", "check S_k by enumeration against 2^k k! C(2k-1,k)");
    identity_cmd->add_option("--k-max", identity.k_max)->required();
    identity_cmd->add_flag("--json", identity.json);

    ProductArgs product;
    auto* product_cmd = app.add_subcommand("product", "value on CP^n x M for a manifold descriptor");
    product_cmd->add_option("--n", product.n)->required();
    product_cmd->add_option("--k", product.k)->required();
    product_cmd->add_option("--manifold", product.manifold, "descriptor JSON file")->required();
    product_cmd->add_option("--class", product.class_name, "named class on M (default: trivial)");
    product_cmd->add_flag("--json", product.json);

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
    verify_cmd->add_flag("--quick", verify_args.quick, "brute force k <= 4, Monte Carlo 1e5 samples");
    verify_cmd->add_option("--seed", verify_args.seed)->capture_default_str();
    verify_cmd->add_option("--workers", verify_args.workers, "0 = hardware concurrency");
    verify_cmd->add_flag("--json", verify_args.json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*cpn_cmd) return run_cpn(cpn);
        if (*blowup_cmd) return run_blowup(blowup);
        if (*moment_cmd) return run_moment(moment);
        if (*identity_cmd) return run_identity(identity);
        if (*product_cmd) return run_product(product);
        if (*verify_cmd) return run_verify(verify_args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "verification failure: " << e.what() << '\n';
        return exit_verification;
    }
    return exit_usage;
}
