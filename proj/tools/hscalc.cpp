// hscalc: command-line front end for the H^s quadrature and minimal-norm
// extension library. Every subcommand emits a machine-readable report
// (JSON by default; CSV for the scan subcommands) and can re-run its
// independent oracle with --verify.

#include "report.hpp"

#include "hs/bump.hpp"
#include "hs/delta.hpp"
#include "hs/extension.hpp"
#include "hs/interval_norm.hpp"
#include "hs/kernels.hpp"
#include "hs/probe.hpp"
#include "hs/spectral.hpp"
#include "hs/version.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

using hs::cplx;
using hscli::Json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitToleranceBreach = 3;

struct Comparison {
    std::string name;
    double value = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Report {
    std::string subcommand;
    Json inputs = Json::object();
    Json results = Json::object();
    std::vector<Comparison> comparisons;
    std::vector<std::string> csv_lines; // header first; scan subcommands only

    void compare(const std::string& name, double value, double reference, double tol)
    {
        comparisons.push_back({name, value, reference, tol, std::abs(value - reference) <= tol});
    }
    void check(const std::string& name, bool ok, double value = 0.0)
    {
        comparisons.push_back({name, value, 0.0, 0.0, ok});
    }
    bool all_pass() const
    {
        for (const auto& c : comparisons)
            if (!c.pass)
                return false;
        return true;
    }
};

struct CommonOpts {
    std::string format = "json";
    std::string output;
    bool verify = false;
    double verify_tol = -1.0; // < 0: per-comparison defaults
    unsigned seed = 12345;
    bool no_simd = false;
    double grid_xi = 64.0;
    std::size_t grid_n = 4096;
};

void add_common(CLI::App* cmd, CommonOpts& o)
{
    cmd->add_option("--format", o.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output", o.output,
                    "Output path (relative paths resolve under $HSCALC_OUTPUT_DIR)");
    cmd->add_flag("--verify", o.verify, "Run the independent oracle alongside; exit 3 on breach");
    cmd->add_option("--verify-tol", o.verify_tol, "Override every verification tolerance");
    cmd->add_option("--seed", o.seed, "Seed for randomized probes");
    cmd->add_flag("--no-simd", o.no_simd, "Pin the compute kernels to the scalar reference path");
    cmd->add_option("--xi", o.grid_xi, "Spectral grid half-width")->check(CLI::PositiveNumber);
    cmd->add_option("--grid-n", o.grid_n, "Spectral grid size (power of two)");
}

hs::DeltaComb parse_comb(const std::string& spec)
{
    // "loc:weight[:order]" atoms separated by commas, e.g. "0:1,1:-0.3,2:0.09"
    std::vector<hs::DeltaAtom> atoms;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        hs::DeltaAtom atom;
        std::stringstream as(item);
        std::string field;
        if (!std::getline(as, field, ':'))
            throw hs::invalid_parameter("comb spec: missing location in '" + item + "'");
        atom.location = std::stod(field);
        if (std::getline(as, field, ':'))
            atom.weight = cplx{std::stod(field), 0.0};
        else
            atom.weight = cplx{1.0, 0.0};
        if (std::getline(as, field, ':'))
            atom.order = std::stoi(field);
        atoms.push_back(atom);
    }
    if (atoms.empty())
        throw hs::invalid_parameter("comb spec: no atoms in '" + spec + "'");
    return hs::DeltaComb(std::move(atoms));
}

Json comb_json(const hs::DeltaComb& comb)
{
    Json arr = Json::array();
    for (const auto& a : comb.atoms()) {
        Json atom = Json::object();
        atom.set("location", Json::number(a.location));
        atom.set("order", Json::integer(a.order));
        atom.set("weight_re", Json::number(a.weight.real()));
        atom.set("weight_im", Json::number(a.weight.imag()));
        arr.push(std::move(atom));
    }
    return arr;
}

Json tail_json(const hs::QuadResult& q)
{
    Json t = Json::object();
    t.set("tail_estimate", Json::number(q.tail_estimate));
    t.set("tail_flagged", Json::boolean(q.tail_flagged));
    return t;
}

double tol_or(const CommonOpts& o, double fallback)
{
    return o.verify_tol > 0.0 ? o.verify_tol : fallback;
}

// ---------------------------------------------------------------- subcommands

struct NormArgs {
    bool zero = false;
    double s = 0.0;
    double center = 0.0;
    double radius = 1.0;
};

void run_norm(const NormArgs& a, const CommonOpts& o, Report& rep)
{
    rep.inputs.set("s", Json::number(a.s));
    if (a.zero) {
        rep.inputs.set("input", Json::string("zero"));
        rep.results.set("norm", Json::number(0.0));
        return;
    }
    rep.inputs.set("input", Json::string("bump"));
    rep.inputs.set("center", Json::number(a.center));
    rep.inputs.set("radius", Json::number(a.radius));

    const hs::SpectralGrid grid = hs::make_grid(o.grid_xi, o.grid_n);
    const hs::GridFunction phi = hs::bump_function(a.center, a.radius, grid);
    const hs::SpectralFunction phihat = hs::fourier_transform(phi, grid);
    const hs::QuadResult inner = hs::hs_inner_full(phihat, phihat, hs::SobolevOrder(a.s));
    const double norm = std::sqrt(std::max(0.0, inner.value.real()));

    rep.results.set("norm", Json::number(norm));
    rep.results.set("norm_sq", Json::number(inner.value.real()));
    rep.results.set("tail", tail_json(inner));

    if (o.verify) {
        const double si = std::nearbyint(a.s);
        if (a.s == si && si >= 0.0 && si <= 3.0) {
            const double phys =
                hs::physical_inner_hm(phi, phi, static_cast<int>(si)).real();
            rep.compare("norm_sq vs physical derivative-sum quadrature", inner.value.real(),
                        phys, tol_or(o, 1e-8 * std::max(phys, 1e-30)));
        } else {
            rep.check("no physical-side oracle for non-integer s (skipped)", true);
        }
    }
}

struct InnerArgs {
    double s = 0.0;
    std::string comb_u, comb_v;
    double f_center = 0.0, f_radius = 1.0;
    double g_center = 0.0, g_radius = 1.0;
};

void run_inner(const InnerArgs& a, const CommonOpts& o, Report& rep)
{
    if (!a.comb_u.empty() || !a.comb_v.empty()) {
        if (a.comb_u.empty() || a.comb_v.empty())
            throw hs::invalid_parameter("inner: need both --comb-u and --comb-v");
        const hs::DeltaComb u = parse_comb(a.comb_u);
        const hs::DeltaComb v = parse_comb(a.comb_v);
        rep.inputs.set("mode", Json::string("comb"));
        rep.inputs.set("u", comb_json(u));
        rep.inputs.set("v", comb_json(v));
        rep.inputs.set("s", Json::number(-1.0));

        const cplx inner = hs::comb_inner_hminus1(u, v);
        rep.results.set("inner_re", Json::number(inner.real()));
        rep.results.set("inner_im", Json::number(inner.imag()));

        if (o.verify) {
            // spectral-representation quadrature on a wide grid
            const hs::SpectralGrid grid = hs::make_grid(16384.0, 1u << 19);
            const cplx quad = hs::hs_inner(hs::spectral_comb(u, grid),
                                           hs::spectral_comb(v, grid), hs::SobolevOrder(-1.0));
            rep.compare("closed form vs spectral quadrature (re)", inner.real(), quad.real(),
                        tol_or(o, 1e-6));
            rep.compare("closed form vs spectral quadrature (im)", inner.imag(), quad.imag(),
                        tol_or(o, 1e-6));
        }
        return;
    }

    rep.inputs.set("mode", Json::string("bump"));
    rep.inputs.set("s", Json::number(a.s));
    rep.inputs.set("f_center", Json::number(a.f_center));
    rep.inputs.set("f_radius", Json::number(a.f_radius));
    rep.inputs.set("g_center", Json::number(a.g_center));
    rep.inputs.set("g_radius", Json::number(a.g_radius));

    const hs::SpectralGrid grid = hs::make_grid(o.grid_xi, o.grid_n);
    const hs::GridFunction f = hs::bump_function(a.f_center, a.f_radius, grid);
    // shared physical grid for the pair
    const double lo = std::min(a.f_center - a.f_radius, a.g_center - a.g_radius) - 0.5;
    const double hi = std::max(a.f_center + a.f_radius, a.g_center + a.g_radius) + 0.5;
    const double dx = f.dx();
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / dx)) + 1;
    const auto fg = hs::GridFunction::sample(
        lo, dx, n,
        [&](double x) { return cplx{hs::mollifier((x - a.f_center) / a.f_radius), 0.0}; },
        a.f_center - a.f_radius, a.f_center + a.f_radius);
    const auto gg = hs::GridFunction::sample(
        lo, dx, n,
        [&](double x) { return cplx{hs::mollifier((x - a.g_center) / a.g_radius), 0.0}; },
        a.g_center - a.g_radius, a.g_center + a.g_radius);

    const hs::QuadResult inner = hs::hs_inner_full(hs::fourier_transform(fg, grid),
                                                   hs::fourier_transform(gg, grid),
                                                   hs::SobolevOrder(a.s));
    rep.results.set("inner_re", Json::number(inner.value.real()));
    rep.results.set("inner_im", Json::number(inner.value.imag()));
    rep.results.set("tail", tail_json(inner));

    if (o.verify) {
        const double si = std::nearbyint(a.s);
        if (a.s == si && si >= 0.0 && si <= 3.0) {
            const cplx phys = hs::physical_inner_hm(fg, gg, static_cast<int>(si));
            rep.compare("inner vs physical derivative-sum quadrature", inner.value.real(),
                        phys.real(), tol_or(o, 1e-8 * (1.0 + std::abs(phys))));
        } else {
            rep.check("no physical-side oracle for non-integer s (skipped)", true);
        }
    }
}

struct ExtendArgs {
    double a = 0.0, b = 1.0;
    double delta_at = std::numeric_limits<double>::quiet_NaN();
    std::string comb_u;
    int m = 1;
};

void run_extend(const ExtendArgs& a, const CommonOpts& o, Report& rep)
{
    hs::DeltaComb u;
    if (!a.comb_u.empty())
        u = parse_comb(a.comb_u);
    else if (std::isfinite(a.delta_at))
        u = hs::DeltaComb::delta(a.delta_at);
    else
        throw hs::invalid_parameter("extend: need --delta-at or --comb-u");

    const hs::IntervalDomain dom(a.a, a.b);
    rep.inputs.set("a", Json::number(dom.a));
    rep.inputs.set("b", Json::number(dom.b));
    rep.inputs.set("m", Json::integer(a.m));
    rep.inputs.set("u", comb_json(u));

    const hs::ExtensionResult ext = a.m == 1 ? hs::project_Qminus1(u, dom)
                                             : hs::project_Qminus_m(u, dom, a.m);

    rep.results.set("norm", Json::number(ext.norm));
    rep.results.set("norm_sq", Json::number(ext.norm * ext.norm));
    rep.results.set("boundary_comb", comb_json(ext.boundary_comb));
    rep.results.set("extended", comb_json(ext.extended));
    Json resid = Json::array();
    for (const auto& [y, mag] : ext.residuals) {
        Json row = Json::object();
        row.set("probe", Json::number(y));
        row.set("magnitude", Json::number(mag));
        resid.push(std::move(row));
    }
    rep.results.set("residuals", std::move(resid));
    if (a.m == 1 && !ext.boundary_comb.empty()) {
        const auto& atoms = ext.boundary_comb.atoms();
        rep.results.set("c_a", Json::number(atoms.front().weight.real()));
        rep.results.set("c_b", Json::number(atoms.back().weight.real()));
    }

    if (o.verify) {
        if (a.m == 1) {
            const auto [ca, cb] = hs::oracle_minimize_h1(u, dom);
            const auto [fa, fb] = hs::minimal_coeffs_h1(u, dom);
            rep.compare("c_a closed form vs 2x2 Gram oracle", fa.real(), ca.real(),
                        tol_or(o, 1e-12));
            rep.compare("c_b closed form vs 2x2 Gram oracle", fb.real(), cb.real(),
                        tol_or(o, 1e-12));
        }
        const double global_sq =
            a.m == 1 ? hs::comb_inner_hminus1(u, u).real()
                     : hs::comb_inner_hminus_m(u, u, a.m).real();
        rep.check("achieved norm does not exceed the trivial extension",
                  ext.norm * ext.norm <= global_sq + tol_or(o, 1e-10), ext.norm * ext.norm);
        double worst = 0.0;
        for (const auto& [y, mag] : ext.residuals)
            worst = std::max(worst, mag);
        const double rtol = tol_or(o, a.m == 1 ? 1e-12 : 1e-8);
        rep.check("residual orthogonality at exterior probes", worst <= rtol, worst);
    }
}

struct IntervalArgs {
    double a = 0.0, b = 1.0;
    int order = 1;
    std::string fn = "one";
    std::size_t samples = 4097;
    double halo = 20.0;
};

hs::IntervalFunction make_interval_fn(const IntervalArgs& a)
{
    const double len = a.b - a.a;
    if (a.fn == "one") {
        hs::TraceData t{cplx{1.0, 0.0}, cplx{1.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}};
        return hs::IntervalFunction::sample(a.a, a.b, a.samples,
                                            [](double) { return cplx{1.0, 0.0}; }, t);
    }
    if (a.fn == "linear") {
        hs::TraceData t{cplx{a.a, 0.0}, cplx{a.b, 0.0}, cplx{1.0, 0.0}, cplx{1.0, 0.0}};
        return hs::IntervalFunction::sample(a.a, a.b, a.samples,
                                            [](double x) { return cplx{x, 0.0}; }, t);
    }
    if (a.fn == "quadratic") {
        hs::TraceData t{cplx{a.a * a.a, 0.0}, cplx{a.b * a.b, 0.0}, cplx{2.0 * a.a, 0.0},
                        cplx{2.0 * a.b, 0.0}};
        return hs::IntervalFunction::sample(a.a, a.b, a.samples,
                                            [](double x) { return cplx{x * x, 0.0}; }, t);
    }
    if (a.fn == "sine") {
        const double w = std::numbers::pi / len;
        hs::TraceData t{cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{w, 0.0}, cplx{-w, 0.0}};
        return hs::IntervalFunction::sample(
            a.a, a.b, a.samples,
            [&](double x) { return cplx{std::sin(w * (x - a.a)), 0.0}; }, t);
    }
    if (a.fn == "bump") {
        const double c = 0.5 * (a.a + a.b), r = 0.75 * len;
        hs::TraceData t{cplx{hs::mollifier((a.a - c) / r), 0.0},
                        cplx{hs::mollifier((a.b - c) / r), 0.0},
                        cplx{hs::mollifier_deriv((a.a - c) / r) / r, 0.0},
                        cplx{hs::mollifier_deriv((a.b - c) / r) / r, 0.0}};
        return hs::IntervalFunction::sample(
            a.a, a.b, a.samples,
            [&](double x) { return cplx{hs::mollifier((x - c) / r), 0.0}; }, t);
    }
    throw hs::invalid_parameter("interval-norm: unknown --fn '" + a.fn +
                                "' (use one|linear|quadratic|sine|bump)");
}

void run_interval_norm(const IntervalArgs& a, const CommonOpts& o, Report& rep)
{
    rep.inputs.set("a", Json::number(a.a));
    rep.inputs.set("b", Json::number(a.b));
    rep.inputs.set("order", Json::integer(a.order));
    rep.inputs.set("fn", Json::string(a.fn));
    rep.inputs.set("samples", Json::integer(static_cast<long long>(a.samples)));

    const hs::IntervalFunction phi = make_interval_fn(a);
    if (a.order == 1) {
        const double val = hs::h1_interval_norm_sq(phi);
        rep.results.set("norm_sq", Json::number(val));
        if (o.verify) {
            IntervalArgs fine = a;
            fine.samples = 2 * a.samples - 1;
            const double coarse = hs::h1_extension_norm_sq_quadrature(phi, a.halo);
            const double refined =
                hs::h1_extension_norm_sq_quadrature(make_interval_fn(fine), a.halo);
            const double oracle = 2.0 * refined - coarse;
            rep.compare("formula vs extension quadrature oracle", val, oracle,
                        tol_or(o, 1e-6 * std::max(val, 1e-12)));
        }
    } else if (a.order == 2) {
        const double val = hs::h2_interval_norm_sq(phi);
        rep.results.set("norm_sq", Json::number(val));
        if (o.verify) {
            const double oracle = hs::h2_parametric_min_norm_sq(phi);
            rep.compare("formula vs parametric minimization oracle", val, oracle,
                        tol_or(o, 1e-4 * std::max(val, 1e-12)));
        }
    } else {
        throw hs::invalid_parameter("interval-norm: --order must be 1 or 2");
    }
}

struct PhiSeqArgs {
    double alpha = 0.25;
    int n_max = 5;
};

void run_phi_seq(const PhiSeqArgs& a, const CommonOpts& o, Report& rep)
{
    rep.inputs.set("alpha", Json::number(a.alpha));
    rep.inputs.set("n_max", Json::integer(a.n_max));
    if (a.n_max < 0)
        throw hs::invalid_parameter("phi-seq: --n-max must be nonnegative");

    Json rows = Json::array();
    rep.csv_lines.push_back("n,norm_sq,diff_closed_form,diff_from_sums");
    double prev = 0.0;
    for (int n = 0; n <= a.n_max; ++n) {
        const double nsq = hs::phi_norm_sq(a.alpha, n);
        const double dclosed = n >= 1 ? hs::phi_norm_diff(a.alpha, n) : 0.0;
        const double dsum = n >= 1 ? nsq - prev : 0.0;

        Json row = Json::object();
        row.set("n", Json::integer(n));
        row.set("norm_sq", Json::number(nsq));
        if (n >= 1) {
            row.set("diff_closed_form", Json::number(dclosed));
            row.set("diff_from_sums", Json::number(dsum));
        }
        rows.push(std::move(row));

        std::string line = std::to_string(n) + "," + hscli::format_double_17(nsq) + ",";
        if (n >= 1)
            line += hscli::format_double_17(dclosed) + "," + hscli::format_double_17(dsum);
        else
            line += ",";
        rep.csv_lines.push_back(line);

        if (o.verify && n >= 1) {
            rep.compare("norm diff closed form vs successive sums (n=" + std::to_string(n) + ")",
                        dclosed, dsum, tol_or(o, 1e-10 * std::abs(dclosed)));
            rep.check("norm strictly decreasing (n=" + std::to_string(n) + ")", nsq < prev, nsq);
        }
        if (o.verify) {
            // Gram quadratic form as the independent route
            const hs::DeltaComb comb = hs::phi_sequence(a.alpha, n);
            std::vector<double> pts;
            for (const auto& atom : comb.atoms())
                pts.push_back(atom.location);
            const hs::GramMatrix g = hs::delta_gram_h1(pts);
            cplx quad{0.0, 0.0};
            for (std::size_t i = 0; i < pts.size(); ++i)
                for (std::size_t j = 0; j < pts.size(); ++j)
                    quad += comb.atoms()[i].weight * std::conj(comb.atoms()[j].weight) *
                            g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            rep.compare("norm_sq vs Gram quadratic form (n=" + std::to_string(n) + ")", nsq,
                        quad.real(), tol_or(o, 1e-10 * std::max(std::abs(nsq), 1e-12)));
        }
        prev = nsq;
    }
    rep.results.set("rows", std::move(rows));
}

struct ChiArgs {
    double s = 0.0;
    double center = 0.0, radius = 1.0;
    double d_min = 3.0, d_max = 60.0;
    std::size_t points = 64;
    std::string spacing = "log";
};

void run_chi_scan(const ChiArgs& a, const CommonOpts& o, Report& rep)
{
    rep.inputs.set("s", Json::number(a.s));
    rep.inputs.set("center", Json::number(a.center));
    rep.inputs.set("radius", Json::number(a.radius));
    rep.inputs.set("d_min", Json::number(a.d_min));
    rep.inputs.set("d_max", Json::number(a.d_max));
    rep.inputs.set("points", Json::integer(static_cast<long long>(a.points)));

    if (!(a.d_min > 0.0) || !(a.d_max > a.d_min) || a.points < 2)
        throw hs::invalid_parameter("chi-scan: need 0 < d_min < d_max and at least 2 points");

    std::vector<double> ds(a.points);
    if (a.spacing == "log") {
        const double ratio = std::pow(a.d_max / a.d_min, 1.0 / static_cast<double>(a.points - 1));
        double v = a.d_min;
        for (auto& d : ds) {
            d = v;
            v *= ratio;
        }
    } else {
        const double step = (a.d_max - a.d_min) / static_cast<double>(a.points - 1);
        for (std::size_t i = 0; i < a.points; ++i)
            ds[i] = a.d_min + step * static_cast<double>(i);
    }

    const hs::SpectralGrid grid = hs::default_probe_grid(a.d_max);
    const hs::GridFunction phi = hs::bump_function(a.center, a.radius, grid);
    const hs::ChiScan scan = hs::chi_scan(phi, hs::SobolevOrder(a.s), ds, grid);

    rep.results.set("chi0", Json::number(scan.chi0.real()));
    Json rows = Json::array();
    rep.csv_lines.push_back("d,chi_re,chi_im,chi_abs");
    for (std::size_t i = 0; i < scan.d_values.size(); ++i) {
        Json row = Json::object();
        row.set("d", Json::number(scan.d_values[i]));
        row.set("chi_re", Json::number(scan.chi[i].real()));
        row.set("chi_im", Json::number(scan.chi[i].imag()));
        row.set("chi_abs", Json::number(std::abs(scan.chi[i])));
        rows.push(std::move(row));
        rep.csv_lines.push_back(hscli::format_double_17(scan.d_values[i]) + "," +
                                hscli::format_double_17(scan.chi[i].real()) + "," +
                                hscli::format_double_17(scan.chi[i].imag()) + "," +
                                hscli::format_double_17(std::abs(scan.chi[i])));
    }
    rep.results.set("rows", std::move(rows));

    if (o.verify) {
        // hermitian symmetry chi(-d) = conj(chi(d)) on a few distances
        const std::vector<double> probe{a.d_min, 0.5 * (a.d_min + a.d_max), a.d_max};
        std::vector<double> both;
        for (double d : probe) {
            both.push_back(d);
            both.push_back(-d);
        }
        const hs::ChiScan sym = hs::chi_scan(phi, hs::SobolevOrder(a.s), both, grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < probe.size(); ++i)
            worst = std::max(worst,
                             std::abs(sym.chi[2 * i] - std::conj(sym.chi[2 * i + 1])));
        rep.check("chi(-d) = conj(chi(d))", worst <= tol_or(o, 1e-12 * std::abs(scan.chi0)),
                  worst);
        // chi(0) equals the squared H^s norm of phi
        const hs::SpectralFunction phihat = hs::fourier_transform(phi, grid);
        const double nsq = hs::hs_inner(phihat, phihat, hs::SobolevOrder(a.s)).real();
        rep.compare("chi(0) vs ||phi||^2", scan.chi0.real(), nsq,
                    tol_or(o, 1e-10 * std::max(nsq, 1e-12)));
    }
}

struct DichotomyArgs {
    std::string orders = "0,1,2,0.5,-1";
    double center = 0.0, radius = 1.0;
    double d_min = 3.0;
};

void run_dichotomy(const DichotomyArgs& a, const CommonOpts& o, Report& rep)
{
    rep.inputs.set("orders", Json::string(a.orders));
    rep.inputs.set("center", Json::number(a.center));
    rep.inputs.set("radius", Json::number(a.radius));
    rep.inputs.set("d_min", Json::number(a.d_min));

    std::vector<double> orders;
    std::stringstream ss(a.orders);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            orders.push_back(std::stod(item));
    if (orders.empty())
        throw hs::invalid_parameter("dichotomy: no orders given");

    const hs::SpectralGrid grid = hs::default_probe_grid(20.0 * a.d_min);
    const hs::GridFunction phi = hs::bump_function(a.center, a.radius, grid);
    const auto rows = hs::dichotomy_report(phi, orders, a.d_min, grid);

    Json jrows = Json::array();
    rep.csv_lines.push_back("s,chi0,max_abs_chi,ratio,classification");
    for (const auto& r : rows) {
        Json row = Json::object();
        row.set("s", Json::number(r.s));
        row.set("chi0", Json::number(r.chi0));
        row.set("max_abs_chi", Json::number(r.max_abs_chi));
        row.set("ratio", Json::number(r.ratio));
        row.set("classification", Json::string(r.classification));
        jrows.push(std::move(row));
        rep.csv_lines.push_back(hscli::format_double_17(r.s) + "," +
                                hscli::format_double_17(r.chi0) + "," +
                                hscli::format_double_17(r.max_abs_chi) + "," +
                                hscli::format_double_17(r.ratio) + "," + r.classification);
        if (o.verify) {
            const bool is_nonneg_int = r.s >= 0.0 && r.s == std::nearbyint(r.s);
            const std::string expected = is_nonneg_int ? "orthogonal" : "non-orthogonal";
            rep.check("s=" + std::to_string(r.s) + " classifies " + expected,
                      r.classification == expected, r.ratio);
        }
    }
    rep.results.set("rows", std::move(jrows));
}

struct GapArgs {
    double a = 0.0, b = 1.0;
    double delta_at = std::numeric_limits<double>::quiet_NaN();
    std::string comb_u;
};

void run_gap(const GapArgs& a, const CommonOpts& o, Report& rep)
{
    hs::DeltaComb u;
    if (!a.comb_u.empty())
        u = parse_comb(a.comb_u);
    else if (std::isfinite(a.delta_at))
        u = hs::DeltaComb::delta(a.delta_at);
    else
        throw hs::invalid_parameter("gap: need --delta-at or --comb-u");

    const hs::IntervalDomain dom(a.a, a.b);
    rep.inputs.set("a", Json::number(dom.a));
    rep.inputs.set("b", Json::number(dom.b));
    rep.inputs.set("u", comb_json(u));

    const hs::GapResult g = hs::restriction_norm_gap(u, dom);
    rep.results.set("interior_norm", Json::number(g.interior_norm));
    rep.results.set("global_norm", Json::number(g.global_norm));
    rep.results.set("gap", Json::number(g.gap));

    if (o.verify) {
        rep.check("gap is nonnegative", g.gap >= -tol_or(o, 1e-12), g.gap);
        if (u.size() == 1 && std::abs(u.atoms().front().weight - cplx{1.0, 0.0}) == 0.0) {
            const double closed =
                hs::delta_interval_norm_sq(u.atoms().front().location, dom);
            rep.compare("interior norm^2 vs closed form", g.interior_norm * g.interior_norm,
                        closed, tol_or(o, 1e-12));
        }
    }
}

// ------------------------------------------------------------------- plumbing

std::string resolve_output_path(const std::string& path)
{
    if (path.empty())
        return path;
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("HSCALC_OUTPUT_DIR"))
            p = std::filesystem::path(dir) / p;
    }
    return p.string();
}

int emit(const Report& rep, const CommonOpts& o, double duration_ms)
{
    std::string text;
    if (o.format == "csv") {
        if (rep.csv_lines.empty())
            throw hs::invalid_parameter("--format csv is only available for the scan "
                                        "subcommands (phi-seq, chi-scan, dichotomy)");
        for (const auto& line : rep.csv_lines)
            text += line + "\n";
    } else {
        Json doc = Json::object();
        doc.set("subcommand", Json::string(rep.subcommand));
        doc.set("version", Json::string(hs::kVersion));
        doc.set("kernel_isa", Json::string(hs::kernels::isa_name(hs::kernels::active())));
        doc.set("inputs", rep.inputs);
        doc.set("results", rep.results);
        Json comps = Json::array();
        for (const auto& c : rep.comparisons) {
            Json jc = Json::object();
            jc.set("name", Json::string(c.name));
            jc.set("value", Json::number(c.value));
            jc.set("reference", Json::number(c.reference));
            jc.set("tolerance", Json::number(c.tolerance));
            jc.set("pass", Json::boolean(c.pass));
            comps.push(std::move(jc));
        }
        doc.set("comparisons", std::move(comps));
        doc.set("pass", Json::boolean(rep.all_pass()));
        doc.set("duration_ms", Json::number(duration_ms));
        text = doc.dump();
    }

    const std::string path = resolve_output_path(o.output);
    if (path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(path);
        if (!out)
            throw hs::invalid_parameter("cannot open output path: " + path);
        out << text;
    }
    return rep.all_pass() ? 0 : kExitToleranceBreach;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"H^s norms, delta-comb calculus and minimal-norm extensions"};
    app.set_version_flag("--version", hs::kVersion);
    app.require_subcommand(1);

    CommonOpts common;
    NormArgs norm_args;
    InnerArgs inner_args;
    ExtendArgs extend_args;
    IntervalArgs interval_args;
    PhiSeqArgs phi_args;
    ChiArgs chi_args;
    DichotomyArgs dich_args;
    GapArgs gap_args;

    CLI::App* c_norm = app.add_subcommand("norm", "H^s norm of a bump (or the zero function)");
    c_norm->add_flag("--zero", norm_args.zero, "Use the zero function");
    c_norm->add_option("--s", norm_args.s, "Sobolev order");
    c_norm->add_option("--center", norm_args.center, "Bump center");
    c_norm->add_option("--radius", norm_args.radius, "Bump radius")->check(CLI::PositiveNumber);
    add_common(c_norm, common);

    CLI::App* c_inner = app.add_subcommand("inner", "H^s inner product (bumps or delta combs)");
    c_inner->add_option("--s", inner_args.s, "Sobolev order (bump mode)");
    c_inner->add_option("--comb-u", inner_args.comb_u, "First comb 'loc:w[,loc:w...]' (H^-1)");
    c_inner->add_option("--comb-v", inner_args.comb_v, "Second comb");
    c_inner->add_option("--f-center", inner_args.f_center, "First bump center");
    c_inner->add_option("--f-radius", inner_args.f_radius, "First bump radius");
    c_inner->add_option("--g-center", inner_args.g_center, "Second bump center");
    c_inner->add_option("--g-radius", inner_args.g_radius, "Second bump radius");
    add_common(c_inner, common);

    CLI::App* c_extend = app.add_subcommand("extend", "Minimal-norm extension from (a,b)");
    c_extend->add_option("--a", extend_args.a, "Left endpoint");
    c_extend->add_option("--b", extend_args.b, "Right endpoint");
    c_extend->add_option("--delta-at", extend_args.delta_at, "Use U = delta_x");
    c_extend->add_option("--comb-u", extend_args.comb_u, "Use a general comb");
    c_extend->add_option("--m", extend_args.m, "Sobolev order -m")->check(CLI::Range(1, 3));
    add_common(c_extend, common);

    CLI::App* c_interval =
        app.add_subcommand("interval-norm", "H^1/H^2 interval norms with oracle");
    c_interval->add_option("--a", interval_args.a, "Left endpoint");
    c_interval->add_option("--b", interval_args.b, "Right endpoint");
    c_interval->add_option("--order", interval_args.order, "1 or 2")->check(CLI::Range(1, 2));
    c_interval->add_option("--fn", interval_args.fn, "one|linear|quadratic|sine|bump");
    c_interval->add_option("--samples", interval_args.samples, "Sample count");
    c_interval->add_option("--halo", interval_args.halo, "Extension halo (order 1 oracle)");
    add_common(c_interval, common);

    CLI::App* c_phi = app.add_subcommand("phi-seq", "Alternating delta comb norm table");
    c_phi->add_option("--alpha", phi_args.alpha, "Weight base, 0 < alpha < 1/e");
    c_phi->add_option("--n-max", phi_args.n_max, "Largest sequence index");
    add_common(c_phi, common);

    CLI::App* c_chi = app.add_subcommand("chi-scan", "Translate-correlation scan chi(d)");
    c_chi->add_option("--s", chi_args.s, "Sobolev order");
    c_chi->add_option("--center", chi_args.center, "Bump center");
    c_chi->add_option("--radius", chi_args.radius, "Bump radius")->check(CLI::PositiveNumber);
    c_chi->add_option("--d-min", chi_args.d_min, "Smallest distance");
    c_chi->add_option("--d-max", chi_args.d_max, "Largest distance");
    c_chi->add_option("--points", chi_args.points, "Number of scan points");
    c_chi->add_option("--spacing", chi_args.spacing, "log or lin")
        ->check(CLI::IsMember({"log", "lin"}));
    add_common(c_chi, common);

    CLI::App* c_dich = app.add_subcommand("dichotomy", "Orthogonality classification per order");
    c_dich->add_option("--orders", dich_args.orders, "Comma-separated Sobolev orders");
    c_dich->add_option("--center", dich_args.center, "Bump center");
    c_dich->add_option("--radius", dich_args.radius, "Bump radius")->check(CLI::PositiveNumber);
    c_dich->add_option("--d-min", dich_args.d_min, "Smallest distance (must clear the support)");
    add_common(c_dich, common);

    CLI::App* c_gap = app.add_subcommand("gap", "Restriction norm gap at s = -1");
    c_gap->add_option("--a", gap_args.a, "Left endpoint");
    c_gap->add_option("--b", gap_args.b, "Right endpoint");
    c_gap->add_option("--delta-at", gap_args.delta_at, "Use U = delta_x");
    c_gap->add_option("--comb-u", gap_args.comb_u, "Use a general comb");
    add_common(c_gap, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    }

    if (common.no_simd)
        hs::kernels::force_scalar(true);

    Report rep;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (c_norm->parsed()) {
            rep.subcommand = "norm";
            run_norm(norm_args, common, rep);
        } else if (c_inner->parsed()) {
            rep.subcommand = "inner";
            run_inner(inner_args, common, rep);
        } else if (c_extend->parsed()) {
            rep.subcommand = "extend";
            run_extend(extend_args, common, rep);
        } else if (c_interval->parsed()) {
            rep.subcommand = "interval-norm";
            run_interval_norm(interval_args, common, rep);
        } else if (c_phi->parsed()) {
            rep.subcommand = "phi-seq";
            run_phi_seq(phi_args, common, rep);
        } else if (c_chi->parsed()) {
            rep.subcommand = "chi-scan";
            run_chi_scan(chi_args, common, rep);
        } else if (c_dich->parsed()) {
            rep.subcommand = "dichotomy";
            run_dichotomy(dich_args, common, rep);
        } else if (c_gap->parsed()) {
            rep.subcommand = "gap";
            run_gap(gap_args, common, rep);
        }
    } catch (const hs::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: malformed numeric input: " << e.what() << "\n";
        return kExitValidation;
    }

    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    try {
        return emit(rep, common, ms);
    } catch (const hs::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
