#include "vortex/cli.hpp"

#include "output.hpp"
#include "vortex/admissibility.hpp"
#include "vortex/config.hpp"
#include "vortex/errors.hpp"
#include "vortex/flow.hpp"
#include "vortex/lemmas.hpp"
#include "vortex/linking.hpp"
#include "vortex/parallel.hpp"
#include "vortex/random.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>

namespace vortex::cli {

namespace fs = std::filesystem;
using out::Json;

namespace {

struct Options {
    std::string config;
    std::string out_dir = "out";
    std::string domain;
    std::string gamma;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::optional<std::size_t> samples;
    bool dry_run = false;
};

/// A check found a violated hypothesis or a computation did not reach its goal.
struct Finding {
    std::string what;
};

RunConfig resolve(const Options& o)
{
    RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
    if (!o.domain.empty()) {
        c.domain = parse_domain_flag(o.domain);
    }
    if (!o.gamma.empty()) {
        c.gamma = parse_gamma_list(o.gamma);
    }
    if (o.seed) {
        c.rng_seed = *o.seed;
    }
    if (o.threads) {
        c.threads = *o.threads;
    }
    if (o.samples) {
        c.audit.samples = *o.samples;
        c.scan.samples = *o.samples;
        c.lemma_samples = *o.samples;
    }
    if (c.domain.kind == DomainKind::annulus) {
        c.seeds.kind = SeedKind::annular;
    }
    c.seeds.n = std::max<std::size_t>(c.gamma.size(), 1);
    return c;
}

void require_gamma(const RunConfig& c)
{
    if (c.gamma.empty()) {
        throw SpecError("this subcommand needs a vorticity vector (--gamma or gamma = [...])");
    }
    check_vorticity(c.gamma);
}

Json domain_json(const DomainSpec& d)
{
    Json j;
    switch (d.kind) {
    case DomainKind::disk:
        j["kind"] = "disk";
        break;
    case DomainKind::annulus:
        j["kind"] = "annulus";
        j["inner_radius"] = d.inner_radius;
        break;
    case DomainKind::conformal: {
        j["kind"] = "conformal";
        Json a = Json::array();
        for (Point p : d.coeffs) {
            a.push_back(out::point(p));
        }
        j["coeffs"] = a;
        break;
    }
    }
    if (!d.periods.empty()) {
        j["periods"] = d.periods;
    }
    return j;
}

Json base_report(const std::string& command, const RunConfig& c)
{
    Json j;
    j["header"] = out::header(command, c.rng_seed);
    j["domain"] = domain_json(c.domain);
    if (!c.gamma.empty()) {
        j["gamma"] = c.gamma;
    }
    return j;
}

Configuration to_config(const std::vector<Point>& pts)
{
    Configuration z;
    z.points = pts;
    return z;
}

Configuration default_start(const Domain& dom, const RunConfig& c)
{
    if (!c.start.empty()) {
        return to_config(c.start);
    }
    return seed_grid(dom, c.seeds).front();
}

// ---------------------------------------------------------------------------

int cmd_check_gamma(const RunConfig& c, const fs::path& dir, std::ostream& os)
{
    require_gamma(c);
    const Domain dom = make_domain(c.domain);
    const AdmissibilityReport r = admissibility_report(c.gamma, dom);
    Json j = base_report("check-gamma", c);
    j["delta_ok"] = r.delta.ok;
    j["delta_witness"] = out::indices_1based(r.delta.witness);
    j["partial_ok"] = r.partial.ok;
    j["partial_variant"] = r.partial.strictly_convex_variant ? "strictly_convex" : "general";
    j["partial_witness"] = out::indices_1based(r.partial.witness);
    j["l_ok"] = to_string(r.l.kind);
    if (r.l.kind != LKind::none) {
        j["sigma"] = out::indices_1based(r.l.sigma.images());
        j["sign"] = r.l.sign;
        j["l_sequence"] = l_sequence(c.gamma, r.l);
    } else {
        j["sigma"] = nullptr;
    }
    j["theorem"] = to_string(r.theorem);
    if (c.gamma.size() <= 12) {
        const CollisionWeight w = collision_weight_constant(c.gamma);
        j["collision_weight"] = {{"value", w.value}, {"delta_admissible", w.delta_admissible}};
    }
    out::write_json(dir / "admissibility.json", j);
    os << fmt::format("theorem: {}\n", to_string(r.theorem));
    return kExitOk;
}

int cmd_audit(const RunConfig& c, const fs::path& dir, std::ostream& os)
{
    const Greens greens = make_greens(c.domain);
    const HypothesisAuditReport r = hypothesis_audit(greens, c.audit.samples, c.audit.eps, c.rng_seed, c.threads);
    Json j = base_report("audit-greens", c);
    j["eps"] = c.audit.eps;
    j["c0_hat"] = out::number(r.c0_hat);
    j["c1_hat"] = out::number(r.c1_hat);
    j["c2_hat"] = out::number(r.c2_hat);
    j["c3_hat"] = out::number(r.c3_hat);
    j["c4_hat"] = out::number(r.c4_hat);
    j["boundary_residual"] = r.boundary_residual;
    j["symmetry_residual"] = r.symmetry_residual;
    j["laplacian_residual"] = r.laplacian_residual;
    j["samples"] = r.samples;
    const bool ok = r.boundary_residual < 1e-8 && r.symmetry_residual < 1e-12 && r.laplacian_residual < 1e-4 &&
                    std::isfinite(r.c0_hat) && std::isfinite(r.c1_hat) && std::isfinite(r.c4_hat);
    j["pass"] = ok;
    out::write_json(dir / "audit.json", j);
    os << fmt::format("audit: {}\n", ok ? "pass" : "FAIL");
    return ok ? kExitOk : kExitFinding;
}

Json critical_json(const CriticalPointReport& r)
{
    Json j;
    j["converged"] = true;
    j["config"] = out::points(r.config);
    j["energy"] = r.energy;
    j["grad_norm"] = r.grad_norm;
    j["hessian_eigenvalues"] = std::vector<double>(r.hessian_eigenvalues.begin(), r.hessian_eigenvalues.end());
    j["morse_index"] = r.morse_index;
    j["newton_iterations"] = r.newton_iterations;
    j["flow_records"] = r.trace.size();
    return j;
}

int cmd_find_critical(const RunConfig& c, const fs::path& dir, std::ostream& os)
{
    require_gamma(c);
    const Greens greens = make_greens(c.domain);
    const Configuration z0 = default_start(greens.domain(), c);
    Json j = base_report("find-critical", c);
    j["start"] = out::points(z0);
    try {
        const CriticalPointReport r = find_critical_point(greens, c.gamma, z0, c.flow);
        j["result"] = critical_json(r);
        out::write_json(dir / "critical_point.json", j);
        out::write_trace_csv(dir / "trace.csv", r.trace.times, r.trace.configs, r.trace.energies,
                             r.trace.grad_norms);
        os << fmt::format("critical point: H = {:.12g}, |grad H| = {:.3g}, Morse index {}\n", r.energy,
                          r.grad_norm, r.morse_index);
        return kExitOk;
    } catch (const FlowTerminationError& e) {
        j["result"] = {{"converged", false}, {"reason", to_string(e.reason())}, {"message", e.what()},
                       {"last", out::points(e.last())}};
    } catch (const RefinementError& e) {
        j["result"] = {{"converged", false}, {"reason", "refinement"}, {"message", e.what()}};
    }
    out::write_json(dir / "critical_point.json", j);
    throw Finding{"critical point search did not converge"};
}

int cmd_sweep(const RunConfig& c, const fs::path& dir, std::ostream& os)
{
    require_gamma(c);
    const Greens greens = make_greens(c.domain);
    const std::vector<Configuration> seeds = seed_grid(greens.domain(), c.seeds);
    std::vector<double> seed_energy(seeds.size());
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        seed_energy[i] = energy(greens, c.gamma, seeds[i]);
    }
    const double seed_sup = *std::max_element(seed_energy.begin(), seed_energy.end());
    FlowParams params = c.flow;
    if (!std::isfinite(params.energy_cap)) {
        params.energy_cap = seed_sup + 10.0;
    }

    struct Outcome {
        std::string status = "converged";
        std::optional<CriticalPointReport> report;
    };
    std::vector<Outcome> res(seeds.size());
    parallel_for(seeds.size(), c.threads, [&](std::size_t i) {
        try {
            res[i].report = find_critical_point(greens, c.gamma, seeds[i], params);
        } catch (const FlowTerminationError& e) {
            res[i].status = to_string(e.reason());
        } catch (const Error& e) {
            res[i].status = "refinement_failed";
        }
    });

    const std::size_t n = c.gamma.size();
    std::string seeds_csv = "seed_index," + out::coordinate_header(n) + ",H\n";
    std::string sweep_csv = "seed_index,status,energy,grad_norm,morse_index,newton_iterations," +
                            out::coordinate_header(n) + "\n";
    struct Level {
        double energy;
        int morse;
        std::size_t count;
    };
    std::vector<Level> levels;
    std::size_t converged = 0;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        seeds_csv += fmt::format("{},{},{}\n", i, out::coordinate_row(seeds[i]), out::num(seed_energy[i]));
        if (!res[i].report) {
            sweep_csv += fmt::format("{},{},,,,,{}\n", i, res[i].status, std::string(2 * n - 1, ','));
            continue;
        }
        const CriticalPointReport& r = *res[i].report;
        ++converged;
        sweep_csv += fmt::format("{},converged,{},{},{},{},{}\n", i, out::num(r.energy), out::num(r.grad_norm),
                                 r.morse_index, r.newton_iterations, out::coordinate_row(r.config));
        auto it = std::find_if(levels.begin(), levels.end(),
                               [&](const Level& l) { return std::abs(l.energy - r.energy) <= 1e-6; });
        if (it == levels.end()) {
            levels.push_back({r.energy, r.morse_index, 1});
        } else {
            ++it->count;
        }
    }
    std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) { return a.energy < b.energy; });
    out::write_text(dir / "seeds.csv", seeds_csv);
    out::write_text(dir / "sweep.csv", sweep_csv);

    Json j = base_report("sweep", c);
    j["seed_kind"] = c.seeds.kind == SeedKind::concentric ? "concentric" : "annular";
    j["seeds"] = seeds.size();
    j["seed_energy_sup"] = seed_sup;
    j["energy_cap"] = out::number(params.energy_cap);
    j["converged"] = converged;
    Json lv = Json::array();
    for (const Level& l : levels) {
        lv.push_back({{"energy", l.energy}, {"morse_index", l.morse}, {"count", l.count}});
    }
    j["critical_levels"] = lv;
    out::write_json(dir / "sweep.json", j);
    os << fmt::format("sweep: {}/{} seeds converged, {} distinct critical levels\n", converged, seeds.size(),
                      levels.size());
    if (converged == 0) {
        throw Finding{"no seed converged"};
    }
    return kExitOk;
}

Configuration dynamics_start(const Domain& dom, const RunConfig& c)
{
    if (!c.dynamics.start.empty()) {
        return to_config(c.dynamics.start);
    }
    Rng rng(derive_seed(c.rng_seed, 0xd1u));
    return sample_configuration(dom, rng, c.gamma.size(), 0.1, 0.1);
}

int cmd_simulate(const RunConfig& c, const fs::path& dir, std::ostream& os)
{
    require_gamma(c);
    const Greens greens = make_greens(c.domain);
    const Configuration z0 = dynamics_start(greens.domain(), c);
    const Trajectory t =
        integrate_dynamics(greens, c.gamma, z0, c.dynamics.horizon, c.dynamics.tol, c.dynamics.collision_delta);
    out::write_trace_csv(dir / "trajectory.csv", t.times, t.configs, t.energies, t.grad_norms);
    Json j = base_report("simulate", c);
    j["start"] = out::points(z0);
    j["horizon"] = c.dynamics.horizon;
    j["tol"] = c.dynamics.tol;
    j["records"] = t.times.size();
    j["final_time"] = t.times.back();
    j["max_drift"] = t.max_drift;
    j["halted"] = t.halted;
    j["reason"] = t.reason;
    out::write_json(dir / "simulate.json", j);
    os << fmt::format("simulate: t = {:.6g}, max relative energy drift {:.3g}{}\n", t.times.back(), t.max_drift,
                      t.halted ? " (halted: " + t.reason + ")" : "");
    return kExitOk;
}

int cmd_scan(const RunConfig& c, const fs::path& dir, std::ostream& os)
{
    require_gamma(c);
    const Greens greens = make_greens(c.domain);
    const MDeltaScan s = m_delta_scan(greens, c.gamma, c.scan.delta, c.scan.samples, c.rng_seed, c.threads);
    Json j = base_report("scan-mdelta", c);
    j["delta"] = c.scan.delta;
    j["samples"] = s.samples;
    j["min_grad_norm"] = out::number(s.min_grad_norm);
    j["argmin"] = out::points(s.argmin);
    j["exceeds_one"] = s.min_grad_norm > 1.0;
    out::write_json(dir / "mdelta.json", j);
    os << fmt::format("scan: min |grad H| on M_delta = {:.6g} over {} samples\n", s.min_grad_norm, s.samples);
    return kExitOk;
}

// verify-lemmas -------------------------------------------------------------

std::vector<double> pick(const RunConfig& c, std::vector<double> fallback)
{
    return c.gamma.empty() ? fallback : c.gamma;
}

int cmd_verify(const RunConfig& c, const fs::path& dir, std::ostream& os)
{
    const Greens greens = make_greens(c.domain);
    const Domain& dom = greens.domain();
    const std::size_t s = std::max<std::size_t>(c.lemma_samples, 100);
    const std::uint64_t seed = c.rng_seed;
    Json j = base_report("verify-lemmas", c);
    j["samples"] = s;
    bool all = true;
    auto verdict = [&](Json& node, bool ok) {
        node["pass"] = ok;
        all = all && ok;
    };

    {
        const ProjectionCheck p = check_projection_derivative(dom, s, derive_seed(seed, 1), c.threads);
        Json n{{"samples", p.samples}, {"max_rel_error", p.max_rel_error}};
        verdict(n, p.max_rel_error < 1e-5);
        j["projection_derivative"] = n;
    }
    {
        const DistanceInequalities d = check_distance_inequalities(dom, s, derive_seed(seed, 2), c.threads);
        Json n{{"pairs", d.pairs},
               {"lower_violations", d.lower_violations},
               {"upper_violations", d.upper_violations},
               {"c6", out::number(d.c6)},
               {"c7", out::number(d.c7)},
               {"c8", out::number(d.c8)}};
        verdict(n, d.ok());
        j["distance_inequalities"] = n;
    }
    {
        const std::vector<double> levels{1e-2, 1e-3, 1e-4};
        const InteractionCheck b =
            check_boundary_interaction(greens, levels, std::max<std::size_t>(s / 10, 100), derive_seed(seed, 3),
                                       c.threads);
        Json lv = Json::array();
        for (const auto& l : b.levels) {
            lv.push_back({{"d", l.d}, {"max_error", l.max_error}, {"max_abs", l.max_abs}, {"min", l.min_value}});
        }
        Json n{{"pairs_per_level", b.pairs_per_level},
               {"levels", lv},
               {"rate_ok", b.rate_ok},
               {"bound_ok", b.bound_ok},
               {"convex_ok", b.convex_ok}};
        verdict(n, b.ok());
        j["boundary_interaction"] = n;
    }
    {
        Json n;
        const std::vector<double> g = pick(c, {-1.0, 2.0, -3.0});
        const LResult l = is_l_admissible(g);
        n["gamma"] = g;
        if (l.kind == LKind::strict && g.size() >= 2) {
            const std::vector<double> ordered = permute(l.sigma, std::span<const double>(g));
            const LineBoundCheck lb = check_line_bound(greens, ordered, 10 * s, 20, derive_seed(seed, 4), c.threads);
            n["applicable"] = true;
            n["ordered_gamma"] = ordered;
            n["samples"] = lb.samples;
            n["sup_energy"] = out::number(lb.sup_energy);
            n["min_energy"] = out::number(lb.min_energy);
            n["sequences"] = lb.sequences;
            n["sequences_below"] = lb.sequences_below;
            Json e = Json::array();
            for (double v : lb.sequence_energy) {
                e.push_back(out::number(v));
            }
            n["sequence_energy"] = e;
            verdict(n, lb.ok());
        } else {
            n["applicable"] = false;
        }
        j["line_bound"] = n;
    }
    auto floor_json = [](const FloorCheck& f) {
        return Json{{"threshold", f.threshold},
                    {"constant", f.constant},
                    {"verified", f.verified},
                    {"violations", f.violations},
                    {"worst_margin", out::number(f.worst_margin)}};
    };
    {
        Json n;
        const std::vector<double> g = pick(c, {1.0, -2.0, 3.0});
        n["gamma"] = g;
        if (g.size() >= 2 && g.size() <= 12 && is_delta_admissible(g).ok) {
            const FloorCheck f =
                check_interior_collision(greens, g, std::max<std::size_t>(s / 50, 20), derive_seed(seed, 5), c.threads);
            n.update(floor_json(f));
            n["applicable"] = true;
            verdict(n, f.ok());
        } else {
            n["applicable"] = false;
        }
        j["interior_collision"] = n;
    }
    {
        Json n;
        const std::vector<double> g = pick(c, {1.0, -2.0});
        n["gamma"] = g;
        if (g.size() <= kMaxSubsetN && is_partial_admissible(g, dom.strictly_convex()).ok) {
            const FloorCheck f =
                check_boundary_pairing(greens, g, std::max<std::size_t>(s / 50, 20), derive_seed(seed, 6), c.threads);
            n.update(floor_json(f));
            n["applicable"] = true;
            verdict(n, f.ok());
        } else {
            n["applicable"] = false;
        }
        j["boundary_pairing"] = n;
    }
    if (dom.kind() == DomainKind::annulus) {
        const std::vector<double> g = pick(c, {1.0, 2.0});
        const SpokeBound sb = check_spoke_bound(greens, g, s, derive_seed(seed, 7));
        Json n{{"gamma", g}, {"samples", sb.samples}, {"sup_energy", out::number(sb.sup_energy)}};
        verdict(n, std::isfinite(sb.sup_energy));
        j["spoke_bound"] = n;
    }
    {
        Json rows = Json::array();
        bool ok = true;
        for (std::size_t n = 3; n <= 12; ++n) {
            const double d = jacobian_determinant_h0(n, 1.0);
            rows.push_back({{"n", n}, {"determinant", d}});
            ok = ok && d != 0.0;
        }
        ok = ok && std::abs(jacobian_determinant_h0(3, 1.0) - 2.0) < 1e-12 &&
             std::abs(jacobian_determinant_h0(4, 1.0) - 6.0) < 1e-12;
        Json n{{"rho", 1.0}, {"values", rows}};
        verdict(n, ok);
        j["jacobian_h0"] = n;
    }
    j["pass"] = all;
    out::write_json(dir / "lemmas.json", j);
    os << fmt::format("verify-lemmas: {}\n", all ? "all checks pass" : "FAIL");
    if (!all) {
        throw Finding{"a lemma check failed"};
    }
    return kExitOk;
}

int cmd_plot(const RunConfig& c, const fs::path& dir, std::ostream& os)
{
    require_gamma(c);
    const Greens greens = make_greens(c.domain);
    const Domain& dom = greens.domain();
    const Trajectory t = integrate_dynamics(greens, c.gamma, dynamics_start(dom, c), c.dynamics.horizon,
                                            c.dynamics.tol, c.dynamics.collision_delta);
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::vector<out::SvgLayer> layers;
    for (std::size_t i = 0; i < c.gamma.size(); ++i) {
        out::SvgLayer l;
        l.color = palette[i % 6];
        std::vector<Point> path;
        for (const auto& z : t.configs) {
            path.push_back(z[i]);
        }
        l.polylines.push_back(path);
        l.dots.push_back(path.front());
        layers.push_back(l);
    }
    out::write_text(dir / "trajectory.svg", out::domain_svg(dom, layers));
    out::write_text(dir / "energy.svg", out::curve_svg(t.times, t.energies, "t", "H"));
    std::size_t files = 2;
    try {
        out::SvgLayer seeds;
        seeds.color = "#d62728";
        for (const auto& z : seed_grid(dom, c.seeds)) {
            seeds.dots.insert(seeds.dots.end(), z.points.begin(), z.points.end());
        }
        out::write_text(dir / "seeds.svg", out::domain_svg(dom, {seeds}));
        ++files;
    } catch (const Error&) {
        // No seed family for this domain and N; the seed plot is optional.
    }
    os << fmt::format("plot: wrote {} SVG files\n", files);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& os, std::ostream& err)
{
    CLI::App app{"Critical points and dynamics of point vortices in bounded planar domains.\n"
                 "Thread count: --threads, else the VORTEX_THREADS environment variable, else all cores.",
                 "vortex-kr"};
    app.require_subcommand(1);
    Options o;
    auto common = [&o](CLI::App* sub) {
        sub->add_option("--config", o.config, "TOML run configuration")->check(CLI::ExistingFile);
        sub->add_option("--out", o.out_dir, "output directory (created if missing)")->capture_default_str();
        sub->add_option("--seed", o.seed, "RNG seed (overrides rng_seed)");
        sub->add_option("--threads", o.threads, "worker threads (0: VORTEX_THREADS or all cores)");
        sub->add_option("--gamma", o.gamma, "vorticities, comma separated, e.g. 1,-2");
        sub->add_option("--domain", o.domain, "disk | annulus:R | conformal:FILE (FILE: 're im' per line)");
        sub->add_option("--samples", o.samples, "sample count for audits, scans and lemma checks");
        sub->add_flag("--dry-run", o.dry_run, "validate the configuration and exit");
    };
    struct Sub {
        const char* name;
        const char* help;
        int (*fn)(const RunConfig&, const fs::path&, std::ostream&);
    };
    static const Sub subs[] = {
        {"check-gamma", "admissibility report for gamma (admissibility.json)", cmd_check_gamma},
        {"audit-greens", "sampled audit of the Green's function hypotheses (audit.json)", cmd_audit},
        {"find-critical", "gradient flow + Newton from one start (critical_point.json, trace.csv)",
         cmd_find_critical},
        {"sweep", "critical point search from every seed of the torus grid (seeds.csv, sweep.csv, sweep.json)",
         cmd_sweep},
        {"simulate", "vortex dynamics up to the horizon (trajectory.csv, simulate.json)", cmd_simulate},
        {"scan-mdelta", "minimum |grad H| on sampled M_delta configurations (mdelta.json)", cmd_scan},
        {"verify-lemmas", "sampled checks of the quantitative lemmas (lemmas.json)", cmd_verify},
        {"plot", "SVG plots of a trajectory, its energy and the seed grid", cmd_plot},
    };
    const Sub* chosen = nullptr;
    std::vector<std::pair<CLI::App*, const Sub*>> apps;
    for (const Sub& s : subs) {
        CLI::App* a = app.add_subcommand(s.name, s.help);
        common(a);
        apps.emplace_back(a, &s);
    }
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, os, err) == 0 ? kExitOk : kExitUsage;
    }
    for (const auto& [a, s] : apps) {
        if (a->parsed()) {
            chosen = s;
        }
    }

    RunConfig cfg;
    try {
        cfg = resolve(o);
        // Validate what can be validated cheaply before any computation.
        (void)make_greens(cfg.domain);
        if (!cfg.gamma.empty()) {
            check_vorticity(cfg.gamma);
        }
        cfg.flow.check();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (o.dry_run) {
        os << "configuration ok\n" << to_toml(cfg);
        return kExitOk;
    }
    try {
        const fs::path dir(o.out_dir);
        fs::create_directories(dir);
        out::write_text(dir / "run_config.toml", to_toml(cfg));
        return chosen->fn(cfg, dir, os);
    } catch (const Finding& f) {
        err << "finding: " << f.what << "\n";
        return kExitFinding;
    } catch (const SpecError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigurationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFinding;
    }
}

int run(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace vortex::cli
