// Command-line front end: verification suites, kernel grids, lattice
// enumeration, truncated Green sums, CM counts, orbit reports.
//
// Exit codes: 0 all checks pass, 1 usage/config error, 2 check failure.
#include "greenlift/errors.hpp"
#include "greenlift/green.hpp"
#include "greenlift/kernels.hpp"
#include "greenlift/lattice.hpp"
#include "greenlift/quadrature.hpp"
#include "greenlift/quat.hpp"
#include "greenlift/ratlin.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace greenlift;

namespace {

constexpr const char* kSchemaVersion = "1";

struct RunConfig {
    std::string command;
    std::string suite = "all";
    std::string algebra = "preset6";
    std::string format = "json";
    std::string out;
    std::string gram;
    long disc = 0;
    long t = 1, n = 5;
    long norm = 2;
    double s = 3.0;
    double bound = 10.0;
    unsigned long long seed = 0;
    std::vector<double> radius;
    std::map<std::string, double> tol;
};

// ---------------------------------------------------------------- config file

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Minimal TOML subset: key = value with numbers, quoted strings, and flat
// arrays; [section] headers prefix the keys with "section.".
std::map<std::string, std::string> parse_toml(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line, section;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("malformed config line: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"')
            val = val.substr(1, val.size() - 2);
        if (val.size() >= 2 && val.front() == '[' && val.back() == ']')
            val = trim(val.substr(1, val.size() - 2));
        kv[section.empty() ? key : section + "." + key] = val;
    }
    return kv;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv,
                  const std::set<std::string>& given) {
    auto take = [&](const char* key) -> std::optional<std::string> {
        if (given.count(key)) return std::nullopt;  // flags override the file
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };
    if (auto v = take("command")) cfg.command = *v;
    if (auto v = take("suite")) cfg.suite = *v;
    if (auto v = take("algebra")) cfg.algebra = *v;
    if (auto v = take("format")) cfg.format = *v;
    if (auto v = take("out")) cfg.out = *v;
    if (auto v = take("gram")) cfg.gram = *v;
    if (auto v = take("disc")) cfg.disc = std::stol(*v);
    if (auto v = take("t")) cfg.t = std::stol(*v);
    if (auto v = take("n")) cfg.n = std::stol(*v);
    if (auto v = take("norm")) cfg.norm = std::stol(*v);
    if (auto v = take("s")) cfg.s = std::stod(*v);
    if (auto v = take("bound")) cfg.bound = std::stod(*v);
    if (auto v = take("seed")) cfg.seed = std::stoull(*v);
    if (auto v = take("radius")) cfg.radius = parse_doubles(*v);
    for (const auto& [key, val] : kv)
        if (key.rfind("tolerances.", 0) == 0) {
            std::string name = key.substr(11);
            if (!cfg.tol.count(name)) cfg.tol[name] = std::stod(val);
        }
}

// --------------------------------------------------------------------- output

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void csv_flatten(const json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            csv_flatten(v, prefix.empty() ? k : prefix + "." + k, os);
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i)
            csv_flatten(j[i], prefix + "." + std::to_string(i), os);
    } else {
        std::string val = j.is_string() ? j.get<std::string>() : j.dump();
        os << csv_quote(prefix) << "," << csv_quote(val) << "\r\n";
    }
}

void emit(const json& report, const RunConfig& cfg) {
    std::ostringstream body;
    if (cfg.format == "csv") {
        body << "key,value\r\n";
        csv_flatten(report, "", body);
    } else {
        body << report.dump(2) << "\n";
    }
    if (cfg.out.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(cfg.out);
        if (!f) throw std::runtime_error("cannot open output file: " + cfg.out);
        f << body.str();
    }
}

json report_header(const RunConfig& cfg) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = cfg.command;
    j["seed"] = cfg.seed;
    return j;
}

// ------------------------------------------------------------------- algebras

QuaternionAlgebra algebra_from_spec(const std::string& spec) {
    if (spec == "preset6") return QuaternionAlgebra::make(-1, 3);
    if (spec == "preset10") return QuaternionAlgebra::make(-2, 5);
    auto parts = parse_doubles(spec);
    if (parts.size() == 2)
        return QuaternionAlgebra::make(Rat((long)parts[0]), Rat((long)parts[1]));
    throw std::runtime_error("unknown algebra: " + spec +
                             " (expected preset6, preset10, or a,b)");
}

PlanePoint default_order_plane(const QuadSpace& qs) {
    // generic negative-definite plane in order coordinates, away from the
    // divisors of the small norm fibers for both presets
    Eigen::VectorXd u1(4), u2(4);
    u1 << -0.97, 0.74, -0.21, 0.34;
    u2 << 0.06, -0.34, 0.35, 0.39;
    return make_plane(qs, u1, u2);
}

// ------------------------------------------------------------- verify suites

struct CheckAccum {
    json checks = json::array();
    bool all_pass = true;

    void add(const std::string& name, double value, double tol) {
        bool pass = value < tol;
        checks.push_back({{"name", name}, {"value", value}, {"tol", tol},
                          {"pass", pass}});
        all_pass = all_pass && pass;
    }
};

double tol_or(const RunConfig& cfg, const std::string& name, double dflt) {
    auto it = cfg.tol.find(name);
    return it == cfg.tol.end() ? dflt : it->second;
}

RatMat diag_gram(std::vector<Rat> d) {
    RatMat g(d.size(), RatVec(d.size(), 0));
    for (size_t i = 0; i < d.size(); ++i) g[i][i] = d[i];
    return g;
}

void suite_kernels(const RunConfig& cfg, CheckAccum& acc) {
    auto space = QuadSpace::make(diag_gram({2, 2, -2, -2}));
    RatVec v = {1, 0, 0, 0}, w1 = {0, 1, 0, 0}, w2 = {Rat(1, 2), 2, Rat(3, 2), 0};
    double worst = 0.0;
    for (double s : {2.0, 3.0})
        for (double qp : {1.5, 2.0, 4.0})
            for (const auto& w : {w1, w2}) {
                double t = std::sqrt(1.0 - 1.0 / qp);
                Eigen::VectorXd b1(4), b2(4);
                b1 << t, 0, 1, 0;
                b2 << 0, 0, 0, 1;
                auto z = make_plane(space, b1, b2);
                auto r = laplace_check(space, v, w, z, KernelParams(cplx(s), 2));
                worst = std::max(worst, r.rel_err);
            }
    acc.add("laplace_identity", worst, tol_or(cfg, "laplace", 1e-8));

    worst = 0.0;
    for (int n : {2, 4}) {
        KernelParams p(cplx((n + 1) / 2.0 + 1.0), n);
        for (double a : {1.0, 3.0}) {
            double kap = p.kappa();
            double total = integrate_zero_to_inf([&](double y) {
                return w_kernel(a, y, p) * std::pow(y, 0.5 * kap) *
                       std::exp(-2.0 * M_PI * a * y) / (y * y);
            });
            worst = std::max(worst, std::fabs(total - 1.0));
        }
    }
    acc.add("weight_normalization", worst, tol_or(cfg, "wa", 1e-10));

    KernelParams p2(cplx(2.0), 2);
    MomentMatrix mt{1, Rat(1, 2), 2};
    double worst_fd = 0.0, worst_c = 0.0;
    for (cplx tau : {cplx(0.0, 0.7), cplx(0.4, 1.2), cplx(-0.3, 2.0)}) {
        cplx closed = m_t_tilde(mt, tau, p2);
        worst_fd = std::max(worst_fd, std::abs(closed - m_t_tilde_fd(mt, tau, p2)) /
                                          std::abs(closed));
        double beta = 4.0 * M_PI * to_double(mt.det()) / to_double(mt.c);
        cplx ct = closed / (std::pow(tau.imag(), 1.0 - 0.5 * p2.k()) *
                            whittaker_m(1.0 - 0.5 * p2.k(), 0.5 * p2.sr(),
                                        beta * tau.imag()) *
                            std::exp(2.0 * M_PI * 0.25 * tau.imag() / 2.0) *
                            std::exp(cplx(0.0, -2.0 * M_PI * tau.real())));
        cplx want = cplx(0.0, M_PI) * c_const(mt, p2) * (p2.s + p2.s0());
        worst_c = std::max(worst_c, std::abs(ct - want) / std::abs(want));
    }
    acc.add("m_tilde_derivative", worst_fd, tol_or(cfg, "mtilde", 1e-6));
    acc.add("m_tilde_constant", worst_c, tol_or(cfg, "mtilde_const", 1e-12));

    // scalar lift factorization, one pinned configuration
    Eigen::VectorXd b1(4), b2(4);
    b1 << 0.5, 0.3, 1, 0;
    b2 << 0.2, -0.4, 0, 1;
    auto z = make_plane(space, b1, b2);
    auto lift = scalar_lift_check(space, v, w1, z, p2);
    acc.add("lift_factorization", lift.rel_err, tol_or(cfg, "lift", 1e-6));
}

void suite_specfun(const RunConfig& cfg, CheckAccum& acc) {
    const double h = 1e-4;
    double worst = 0.0;
    for (double s : {2.0, 3.0, 4.5})
        for (double s0 : {0.5, 1.0, 1.5}) {
            double a = 0.5 * (s + s0), b = 0.5 * (s - s0) + 1.0, c = s + 1.0;
            for (double x : {0.2, 0.5, 0.8}) {
                auto f = [&](double xx) { return hyp2f1(a, b, c, xx); };
                double f0 = f(x);
                double d1 = (f(x + h) - f(x - h)) / (2 * h);
                double d2 = (f(x + h) - 2 * f0 + f(x - h)) / (h * h);
                double resid =
                    x * (1 - x) * d2 + (c - (a + b + 1) * x) * d1 - a * b * f0;
                double scale = std::max(1.0, std::fabs(x * (1 - x) * d2) +
                                                 std::fabs((c - (a + b + 1) * x) * d1) +
                                                 std::fabs(a * b * f0));
                worst = std::max(worst, std::fabs(resid) / scale);
            }
            double mu = 0.5 * s, nu = -0.5 * (1.0 - s0);
            for (double z : {1.0, 5.0, 20.0}) {
                auto f = [&](double zz) { return whittaker_m(nu, mu, zz); };
                double f0 = f(z);
                double d2 = (f(z + h) - 2 * f0 + f(z - h)) / (h * h);
                double resid =
                    d2 + (-0.25 + nu / z + (0.25 - mu * mu) / (z * z)) * f0;
                worst = std::max(worst,
                                 std::fabs(resid) / std::max(1.0, std::fabs(d2) +
                                                                      std::fabs(f0)));
            }
        }
    acc.add("ode_residuals", worst, tol_or(cfg, "ode", 1e-6));

    double worst_small = 0.0;
    for (double mu : {1.0, 1.5, 2.25})
        worst_small = std::max(
            worst_small,
            std::fabs(whittaker_m(-0.25, mu, 1e-6) / std::pow(1e-6, mu + 0.5) - 1.0));
    acc.add("whittaker_small_z", worst_small, tol_or(cfg, "small_z", 1e-4));
}

void suite_lattice(const RunConfig& cfg, CheckAccum& acc) {
    (void)cfg;
    Lattice hex{2, {{2, 1}, {1, 2}}};
    auto v = short_vectors(hex, 2);
    bool ok = v.size() == 6 && std::is_sorted(v.begin(), v.end()) &&
              short_vectors(hex, 2) == v;
    acc.add("hexagonal_minimum", ok ? 0.0 : 1.0, 0.5);
}

int run_verify(RunConfig& cfg) {
    CheckAccum acc;
    if (cfg.suite == "kernels" || cfg.suite == "all") suite_kernels(cfg, acc);
    if (cfg.suite == "specfun" || cfg.suite == "all") suite_specfun(cfg, acc);
    if (cfg.suite == "lattice" || cfg.suite == "all") suite_lattice(cfg, acc);
    if (acc.checks.empty())
        throw std::runtime_error("unknown suite: " + cfg.suite +
                                 " (expected kernels, specfun, lattice, all)");
    json rep = report_header(cfg);
    rep["suite"] = cfg.suite;
    rep["checks"] = acc.checks;
    rep["pass"] = acc.all_pass;
    emit(rep, cfg);
    return acc.all_pass ? 0 : 2;
}

// --------------------------------------------------------------- other modes

int run_kernel(RunConfig& cfg) {
    KernelParams p(cplx(cfg.s), 2);
    json rows = json::array();
    for (int k = 1; k <= 19; ++k) {
        double r = 0.05 * k;
        rows.push_back({{"ratio", r},
                        {"phi_hyp", phi_hyp(r, cfg.s, p.rho0())},
                        {"phi_hyp_sub", phi_hyp(r, cfg.s, p.s0())}});
    }
    json rep = report_header(cfg);
    rep["s"] = cfg.s;
    rep["n"] = 2;
    rep["grid"] = rows;
    emit(rep, cfg);
    return 0;
}

int run_enumerate(RunConfig& cfg) {
    RatMat gram;
    if (cfg.gram.empty()) {
        gram = order_norm_gram(maximal_order(algebra_from_spec(cfg.algebra)));
    } else {
        auto vals = parse_doubles(cfg.gram);
        int n = (int)std::lround(std::sqrt((double)vals.size()));
        if ((size_t)(n * n) != vals.size())
            throw std::runtime_error("gram must be a square row-major matrix");
        gram.assign(n, RatVec(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) gram[i][j] = Rat((long)vals[i * n + j]);
    }
    Lattice latt{(int)gram.size(), gram};
    auto vecs = short_vectors(latt, Rat((long)std::lround(cfg.bound)));
    json rows = json::array();
    for (const auto& v : vecs) {
        json row = json::array();
        for (long c : v) row.push_back(c);
        rows.push_back(row);
    }
    json rep = report_header(cfg);
    rep["rank"] = latt.rank;
    rep["bound"] = cfg.bound;
    rep["count"] = vecs.size();
    rep["vectors"] = rows;
    emit(rep, cfg);
    return 0;
}

int run_green(RunConfig& cfg) {
    auto o = maximal_order(algebra_from_spec(cfg.algebra));
    auto qs = QuadSpace::make(order_norm_gram(o));
    auto z = default_order_plane(qs);
    Eigen::MatrixXd mg = majorant_gram(qs, z);
    auto fiber = vectors_of_norm(order_norm_gram(o), mg, cfg.norm, 60.0);
    if (fiber.empty())
        throw std::runtime_error("no lattice vector of the requested norm");
    RatVec v = to_ratvec(fiber.front());
    if (cfg.radius.empty()) cfg.radius = {15.0, 30.0, 60.0};
    auto [sum, rep] =
        green_truncated(qs, rat_identity(4), v, z, KernelParams(cplx(cfg.s), 2),
                        cfg.radius);
    json out = report_header(cfg);
    out["algebra"] = cfg.algebra;
    out["norm"] = cfg.norm;
    out["s"] = cfg.s;
    out["value"] = sum;
    out["schedule"] = rep.schedule;
    out["partial_sums"] = rep.partial_sums;
    out["tail_estimates"] = rep.tail_estimates;
    out["converged"] = rep.converged;
    emit(out, cfg);
    return rep.converged ? 0 : 2;
}

int run_cm(RunConfig& cfg) {
    if (cfg.disc >= 0 || !is_fundamental_discriminant(cfg.disc))
        throw std::runtime_error("disc must be a negative fundamental discriminant");
    auto alg = algebra_from_spec(cfg.algebra);
    long t = (((cfg.disc % 2) + 2) % 2 == 0) ? 0 : 1;
    long n = (t * t - cfg.disc) / 4;
    long expected = class_number(cfg.disc) * (1L << ramified_set(alg.a, alg.b).size());
    bool embeds = field_embeds(alg, cfg.disc);
    long count = 0;
    double radius = cfg.radius.empty() ? 120.0 : cfg.radius.back();
    if (embeds) {
        auto o = maximal_order(alg);
        count = cm_set(o, t, n, radius).count;
    }
    bool match = embeds && count == expected;
    json rep = report_header(cfg);
    rep["algebra"] = cfg.algebra;
    rep["disc"] = cfg.disc;
    rep["t"] = t;
    rep["n"] = n;
    rep["radius"] = radius;
    rep["embeds"] = embeds;
    rep["class_number"] = class_number(cfg.disc);
    rep["expected"] = expected;
    rep["count"] = count;
    rep["match"] = match;
    emit(rep, cfg);
    return match ? 0 : 2;
}

int run_orbits(RunConfig& cfg) {
    auto o = maximal_order(algebra_from_spec(cfg.algebra));
    MomentMatrix t{1, Rat(cfg.t, 2), Rat(cfg.n)};
    if (!t.positive_definite())
        throw std::runtime_error("moment matrix [[1,t/2],[t/2,n]] must be positive definite");
    double radius = cfg.radius.empty() ? 120.0 : cfg.radius.back();
    auto cyc = weighted_cycle_count(t, o, radius);
    auto iot = iota_pair_report(t, o, std::min(radius, 60.0));
    json rep = report_header(cfg);
    rep["algebra"] = cfg.algebra;
    rep["t"] = cfg.t;
    rep["n"] = cfg.n;
    rep["radius"] = radius;
    rep["pair_count"] = cyc.pair_count;
    rep["class_count"] = cyc.class_count;
    rep["expected_coset"] = cyc.expected_coset;
    rep["expected_degree"] = cyc.expected_degree;
    rep["cm_class_count"] = cyc.cm_class_count;
    rep["degree_match"] = cyc.degree_match;
    rep["iota"] = {{"count", iot.count},
                   {"bijection_exact", iot.bijection_exact},
                   {"v_norm_matches", iot.v_norm_matches},
                   {"iota_v_norm_matches", iot.iota_v_norm_matches}};
    emit(rep, cfg);
    return (cyc.degree_match && iot.bijection_exact) ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for regularized theta lifts and "
                 "quaternionic cycle counts"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::vector<std::string> tol_args;
    std::string radius_arg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "TOML config file");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--seed", cfg.seed, "seed recorded in the report");
        sub->add_option("--tol", tol_args, "tolerance override name=value");
        sub->add_option("--radius", radius_arg, "radius schedule r1,r2,...");
        sub->add_option("--algebra", cfg.algebra, "preset6|preset10|a,b");
    };

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", cfg.suite, "kernels|specfun|lattice|all");
    add_common(verify);

    auto* kernel = app.add_subcommand("kernel", "hypergeometric kernel grid");
    kernel->add_option("--s", cfg.s, "spectral parameter");
    add_common(kernel);

    auto* enumerate = app.add_subcommand("enumerate", "short-vector enumeration");
    enumerate->add_option("--gram", cfg.gram, "row-major gram entries");
    enumerate->add_option("--bound", cfg.bound, "norm bound");
    add_common(enumerate);

    auto* green = app.add_subcommand("green", "truncated Green orbit sum");
    green->add_option("--s", cfg.s, "spectral parameter");
    green->add_option("--norm", cfg.norm, "norm of the summed fiber");
    add_common(green);

    auto* cm = app.add_subcommand("cm", "CM class count report");
    cm->add_option("--disc", cfg.disc, "negative fundamental discriminant")
        ->required();
    add_common(cm);

    auto* orbits = app.add_subcommand("orbits", "cycle classes and swap report");
    orbits->add_option("--t", cfg.t, "trace of the embedded generator");
    orbits->add_option("--n", cfg.n, "norm of the embedded generator");
    add_common(orbits);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        cfg.command = sub->get_name();
        std::set<std::string> given;
        for (const auto* opt : sub->get_options())
            if (opt->count() > 0 && opt->get_lnames().size() == 1)
                given.insert(opt->get_lnames()[0]);
        if (!config_path.empty()) apply_config(cfg, parse_toml(config_path), given);
        for (const auto& a : tol_args) {
            size_t eq = a.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("--tol expects name=value, got: " + a);
            double val = std::stod(a.substr(eq + 1));
            if (val <= 0) throw std::runtime_error("tolerances must be positive");
            cfg.tol[a.substr(0, eq)] = val;
        }
        if (!radius_arg.empty()) cfg.radius = parse_doubles(radius_arg);
        for (size_t i = 1; i < cfg.radius.size(); ++i)
            if (cfg.radius[i] <= cfg.radius[i - 1])
                throw std::runtime_error("radius schedule must be increasing");

        if (cfg.command == "verify") return run_verify(cfg);
        if (cfg.command == "kernel") return run_kernel(cfg);
        if (cfg.command == "enumerate") return run_enumerate(cfg);
        if (cfg.command == "green") return run_green(cfg);
        if (cfg.command == "cm") return run_cm(cfg);
        if (cfg.command == "orbits") return run_orbits(cfg);
        std::cerr << "unknown command: " << cfg.command << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
