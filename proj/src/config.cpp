#include "vortex/config.hpp"

#include "vortex/errors.hpp"

#include <fmt/format.h>
#include <toml.hpp>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace vortex {

namespace {

[[noreturn]] void fail(const std::string& what) { throw SpecError("config: " + what); }

void allow_keys(const toml::table& t, std::string_view where, std::initializer_list<std::string_view> keys)
{
    for (const auto& [k, v] : t) {
        (void)v;
        if (std::find(keys.begin(), keys.end(), k.str()) == keys.end()) {
            fail(fmt::format("unknown key '{}' in {}", k.str(), where));
        }
    }
}

double get_double(const toml::node& n, std::string_view key)
{
    if (auto v = n.value<double>()) {
        return *v;
    }
    fail(fmt::format("'{}' must be a number", key));
}

template <class T>
void read(const toml::table& t, std::string_view key, T& out)
{
    const toml::node* n = t.get(key);
    if (!n) {
        return;
    }
    if constexpr (std::is_same_v<T, double>) {
        out = get_double(*n, key);
    } else if constexpr (std::is_same_v<T, std::string>) {
        auto v = n->value<std::string>();
        if (!v) {
            fail(fmt::format("'{}' must be a string", key));
        }
        out = *v;
    } else {
        auto v = n->value<std::int64_t>();
        if (!v || *v < 0) {
            fail(fmt::format("'{}' must be a non-negative integer", key));
        }
        out = static_cast<T>(*v);
    }
}

std::vector<double> read_numbers(const toml::table& t, std::string_view key)
{
    std::vector<double> out;
    const toml::node* n = t.get(key);
    if (!n) {
        return out;
    }
    const toml::array* a = n->as_array();
    if (!a) {
        fail(fmt::format("'{}' must be an array of numbers", key));
    }
    for (const auto& e : *a) {
        out.push_back(get_double(e, key));
    }
    return out;
}

std::vector<Point> read_points(const toml::table& t, std::string_view key)
{
    std::vector<Point> out;
    const toml::node* n = t.get(key);
    if (!n) {
        return out;
    }
    const toml::array* a = n->as_array();
    if (!a) {
        fail(fmt::format("'{}' must be an array of [x, y] pairs", key));
    }
    for (const auto& e : *a) {
        const toml::array* p = e.as_array();
        if (!p || p->size() != 2) {
            fail(fmt::format("'{}' must be an array of [x, y] pairs", key));
        }
        out.emplace_back(get_double((*p)[0], key), get_double((*p)[1], key));
    }
    return out;
}

const toml::table* section(const toml::table& root, std::string_view name)
{
    const toml::node* n = root.get(name);
    if (!n) {
        return nullptr;
    }
    if (!n->is_table()) {
        fail(fmt::format("'{}' must be a table", name));
    }
    return n->as_table();
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string num_list(const std::vector<double>& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + num(v[i]);
    }
    return s + "]";
}

std::string point_list(const std::vector<Point>& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += fmt::format("{}[{}, {}]", i ? ", " : "", num(v[i].real()), num(v[i].imag()));
    }
    return s + "]";
}

std::string kind_name(DomainKind k)
{
    switch (k) {
    case DomainKind::disk:
        return "disk";
    case DomainKind::annulus:
        return "annulus";
    default:
        return "conformal";
    }
}

std::vector<Point> read_coefficient_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        fail("cannot open coefficient file " + path);
    }
    std::vector<Point> out;
    std::string line;
    while (std::getline(in, line)) {
        line = line.substr(0, line.find('#'));
        std::istringstream ls(line);
        double re = 0.0;
        double im = 0.0;
        if (!(ls >> re)) {
            continue;
        }
        if (!(ls >> im)) {
            fail("coefficient lines need a real and an imaginary part: " + path);
        }
        out.emplace_back(re, im);
    }
    if (out.size() < 2) {
        fail("coefficient file needs at least two coefficients: " + path);
    }
    return out;
}

}  // namespace

RunConfig parse_config(std::string_view text)
{
    toml::table root;
    try {
        root = toml::parse(text);
    } catch (const toml::parse_error& e) {
        fail(fmt::format("{} (line {})", e.description(), e.source().begin.line));
    }
    allow_keys(root, "top level",
               {"rng_seed", "threads", "gamma", "domain", "flow", "seeds", "start", "scan", "dynamics", "audit",
                "lemmas"});
    RunConfig c;
    read(root, "rng_seed", c.rng_seed);
    read(root, "threads", c.threads);
    c.gamma = read_numbers(root, "gamma");

    if (const auto* d = section(root, "domain")) {
        allow_keys(*d, "[domain]", {"kind", "inner_radius", "coeffs", "coefficient_file", "periods"});
        std::string kind = "disk";
        read(*d, "kind", kind);
        if (kind == "disk") {
            c.domain.kind = DomainKind::disk;
        } else if (kind == "annulus") {
            c.domain.kind = DomainKind::annulus;
        } else if (kind == "conformal") {
            c.domain.kind = DomainKind::conformal;
        } else {
            fail("domain kind must be disk, annulus or conformal");
        }
        read(*d, "inner_radius", c.domain.inner_radius);
        c.domain.coeffs = read_points(*d, "coeffs");
        std::string file;
        read(*d, "coefficient_file", file);
        if (!file.empty()) {
            c.domain.coeffs = read_coefficient_file(file);
        }
        c.domain.periods = read_numbers(*d, "periods");
        if (c.domain.kind == DomainKind::conformal && c.domain.coeffs.size() < 2) {
            fail("conformal domains need coeffs or coefficient_file");
        }
    }
    if (const auto* f = section(root, "flow")) {
        allow_keys(*f, "[flow]",
                   {"dt_init", "dt_min", "dt_max", "grad_tol", "max_time", "collision_delta", "energy_cap", "tol",
                    "max_steps"});
        read(*f, "dt_init", c.flow.dt_init);
        read(*f, "dt_min", c.flow.dt_min);
        read(*f, "dt_max", c.flow.dt_max);
        read(*f, "grad_tol", c.flow.grad_tol);
        read(*f, "max_time", c.flow.max_time);
        read(*f, "collision_delta", c.flow.collision_delta);
        read(*f, "energy_cap", c.flow.energy_cap);
        read(*f, "tol", c.flow.tol);
        read(*f, "max_steps", c.flow.max_steps);
        try {
            c.flow.check();
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }
    if (const auto* s = section(root, "seeds")) {
        allow_keys(*s, "[seeds]", {"kind", "rho", "levels", "angles"});
        std::string kind = "concentric";
        read(*s, "kind", kind);
        if (kind == "concentric") {
            c.seeds.kind = SeedKind::concentric;
        } else if (kind == "annular") {
            c.seeds.kind = SeedKind::annular;
        } else {
            fail("seed kind must be concentric or annular");
        }
        read(*s, "rho", c.seeds.rho);
        c.seeds.levels = read_numbers(*s, "levels");
        std::size_t angles = static_cast<std::size_t>(c.seeds.angles);
        read(*s, "angles", angles);
        if (angles < 1 || angles > 4096) {
            fail("seed angles must lie in 1..4096");
        }
        c.seeds.angles = static_cast<int>(angles);
    } else if (c.domain.kind == DomainKind::annulus) {
        c.seeds.kind = SeedKind::annular;
    }
    if (const auto* s = section(root, "start")) {
        allow_keys(*s, "[start]", {"points"});
        c.start = read_points(*s, "points");
    }
    if (const auto* s = section(root, "scan")) {
        allow_keys(*s, "[scan]", {"delta", "samples"});
        read(*s, "delta", c.scan.delta);
        read(*s, "samples", c.scan.samples);
    }
    if (const auto* s = section(root, "dynamics")) {
        allow_keys(*s, "[dynamics]", {"horizon", "tol", "collision_delta", "points"});
        read(*s, "horizon", c.dynamics.horizon);
        read(*s, "tol", c.dynamics.tol);
        read(*s, "collision_delta", c.dynamics.collision_delta);
        c.dynamics.start = read_points(*s, "points");
    }
    if (const auto* s = section(root, "audit")) {
        allow_keys(*s, "[audit]", {"samples", "eps"});
        read(*s, "samples", c.audit.samples);
        read(*s, "eps", c.audit.eps);
    }
    if (const auto* s = section(root, "lemmas")) {
        allow_keys(*s, "[lemmas]", {"samples"});
        read(*s, "samples", c.lemma_samples);
    }
    c.seeds.n = std::max<std::size_t>(c.gamma.size(), 1);
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        fail("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_toml(const RunConfig& c)
{
    std::string s;
    s += fmt::format("rng_seed = {}\nthreads = {}\ngamma = {}\n", c.rng_seed, c.threads, num_list(c.gamma));
    s += fmt::format("\n[domain]\nkind = \"{}\"\ninner_radius = {}\ncoeffs = {}\nperiods = {}\n",
                     kind_name(c.domain.kind), num(c.domain.inner_radius), point_list(c.domain.coeffs),
                     num_list(c.domain.periods));
    s += fmt::format(
        "\n[flow]\ndt_init = {}\ndt_min = {}\ndt_max = {}\ngrad_tol = {}\nmax_time = {}\ncollision_delta = {}\n"
        "energy_cap = {}\ntol = {}\nmax_steps = {}\n",
        num(c.flow.dt_init), num(c.flow.dt_min), num(c.flow.dt_max), num(c.flow.grad_tol), num(c.flow.max_time),
        num(c.flow.collision_delta), num(c.flow.energy_cap), num(c.flow.tol), c.flow.max_steps);
    s += fmt::format("\n[seeds]\nkind = \"{}\"\nrho = {}\nlevels = {}\nangles = {}\n",
                     c.seeds.kind == SeedKind::concentric ? "concentric" : "annular", num(c.seeds.rho),
                     num_list(c.seeds.levels), c.seeds.angles);
    s += fmt::format("\n[start]\npoints = {}\n", point_list(c.start));
    s += fmt::format("\n[scan]\ndelta = {}\nsamples = {}\n", num(c.scan.delta), c.scan.samples);
    s += fmt::format("\n[dynamics]\nhorizon = {}\ntol = {}\ncollision_delta = {}\npoints = {}\n",
                     num(c.dynamics.horizon), num(c.dynamics.tol), num(c.dynamics.collision_delta),
                     point_list(c.dynamics.start));
    s += fmt::format("\n[audit]\nsamples = {}\neps = {}\n", c.audit.samples, num(c.audit.eps));
    s += fmt::format("\n[lemmas]\nsamples = {}\n", c.lemma_samples);
    return s;
}

DomainSpec parse_domain_flag(const std::string& flag)
{
    DomainSpec d;
    if (flag == "disk") {
        return d;
    }
    if (flag.rfind("annulus:", 0) == 0) {
        d.kind = DomainKind::annulus;
        try {
            std::size_t used = 0;
            const std::string r = flag.substr(8);
            d.inner_radius = std::stod(r, &used);
            if (used != r.size()) {
                throw std::invalid_argument(r);
            }
        } catch (const std::exception&) {
            fail("annulus radius must be a number: " + flag);
        }
        return d;
    }
    if (flag.rfind("conformal:", 0) == 0) {
        d.kind = DomainKind::conformal;
        d.coeffs = read_coefficient_file(flag.substr(10));
        return d;
    }
    fail("domain must be disk, annulus:R or conformal:FILE, got '" + flag + "'");
}

std::vector<double> parse_gamma_list(const std::string& csv)
{
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            fail("gamma entries must be numbers: '" + item + "'");
        }
    }
    if (out.empty()) {
        fail("gamma list is empty");
    }
    return out;
}

Domain make_domain(const DomainSpec& spec)
{
    switch (spec.kind) {
    case DomainKind::disk:
        return Domain::unit_disk();
    case DomainKind::annulus:
        return Domain::annulus(spec.inner_radius);
    default:
        return Domain::conformal(spec.coeffs);
    }
}

Greens make_greens(const DomainSpec& spec)
{
    Domain d = make_domain(spec);
    if (!spec.periods.empty()) {
        return Greens(std::move(d), PeriodVector{spec.periods});
    }
    return Greens(std::move(d));
}

}  // namespace vortex
