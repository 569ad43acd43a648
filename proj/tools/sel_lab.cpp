// sel_lab: command-line front end for the sel library.
#include "sel/errors.hpp"
#include "sel/evolve.hpp"
#include "sel/forms.hpp"
#include "sel/oscillate.hpp"
#include "sel/params.hpp"
#include "sel/resolvent.hpp"
#include "sel/specfun.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

using json = nlohmann::ordered_json;
using namespace sel;

namespace {

constexpr const char* kSchema = "sel-lab/1";

// Finite doubles as numbers, the rest as strings, so documents stay valid JSON.
json num(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

json interval_json(const std::optional<Interval>& iv) {
    if (!iv) return nullptr;
    return {{"lo", num(iv->lo)}, {"hi", num(iv->hi)}, {"lo_closed", iv->lo_closed}, {"hi_closed", iv->hi_closed}};
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::size_t thread_cap() {
    if (const char* env = std::getenv("SEL_LAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs f(0..n-1) on up to SEL_LAB_THREADS threads; results keep input order and the
// exception of the lowest failing index is rethrown.
template <class F>
auto parallel_map(std::size_t n, F f) -> std::vector<decltype(f(std::size_t{}))> {
    using R = decltype(f(std::size_t{}));
    std::vector<std::optional<R>> out(n);
    std::vector<std::exception_ptr> errs(n);
    std::size_t next = 0;
    std::mutex mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard lock(mu);
                if (next >= n) return;
                i = next++;
            }
            try {
                out[i].emplace(f(i));
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    const std::size_t k = std::min(thread_cap(), n);
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < k; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    std::vector<R> res;
    res.reserve(n);
    for (auto& o : out) res.push_back(std::move(*o));
    return res;
}

struct Common {
    std::string N = "3", alpha = "0", b = "0", c = "0";
    std::string format = "json", output, config;
    std::uint64_t seed = 7;
};

void add_common(CLI::App* sub, Common& o, bool with_params = true) {
    if (with_params) {
        sub->add_option("-N,--N", o.N, "dimension")->capture_default_str();
        sub->add_option("-a,--alpha", o.alpha, "alpha")->capture_default_str();
        sub->add_option("-b,--b", o.b, "b")->capture_default_str();
        sub->add_option("-c,--c", o.c, "c")->capture_default_str();
    }
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--output,-o", o.output, "write to this path instead of stdout");
    sub->add_option("--config", o.config, "key=value file; command-line flags win");
    sub->add_option("--seed", o.seed, "seed for randomized suites")->capture_default_str();
}

double parse_number(const std::string& name, const std::string& text) {
    if (auto q = parse_rational(text)) return to_double(*q);
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos == text.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw InvalidInput(name + ": not a number: '" + text + "'");
}

int parse_dimension(const std::string& text) {
    const double v = parse_number("N", text);
    if (v != std::floor(v) || v < 1 || v > 1000) throw InvalidInput("N must be a positive integer");
    return static_cast<int>(v);
}

OperatorParams params_of(const Common& o) {
    OperatorParams prm{parse_dimension(o.N), parse_number("alpha", o.alpha), parse_number("b", o.b),
                       parse_number("c", o.c)};
    prm.validate();
    return prm;
}

json params_json(const OperatorParams& p) {
    return {{"N", p.N}, {"alpha", num(p.alpha)}, {"b", num(p.b)}, {"c", num(p.c)}};
}

// key=value lines, '#' comments
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw InvalidInput("config line " + std::to_string(lineno) + ": expected key=value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void apply_config(CLI::App* sub, const std::string& path) {
    if (path.empty()) return;
    for (const auto& [key, value] : read_config(path)) {
        if (key == "config") continue;
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (!opt) opt = sub->get_option_no_throw("-" + key);
        if (!opt) throw InvalidInput("config: unknown key '" + key + "'");
        if (opt->count() > 0) continue;
        opt->add_result(value);
        opt->run_callback();
    }
}


void emit(const Common& o, const std::string& command, json config, json results, const std::string& csv) {
    std::string text;
    if (o.format == "csv") {
        text = csv;
    } else {
        config["format"] = o.format;
        config["seed"] = o.seed;
        json doc = {{"schema", kSchema}, {"command", command}, {"config", std::move(config)}, {"results", std::move(results)}};
        text = doc.dump(2) + "\n";
    }
    if (o.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.output, std::ios::binary);
        if (!out) throw InvalidInput("cannot write '" + o.output + "'");
        out << text;
    }
}

LogGrid grid_for(double alpha, double s_min, double s_max, std::size_t nodes) {
    LogGrid g = LogGrid::default_for(alpha, nodes);
    if (!std::isnan(s_min)) g.s_min = s_min;
    if (!std::isnan(s_max)) g.s_max = s_max;
    return LogGrid::make(g.s_min, g.s_max, nodes);
}

// ---------------------------------------------------------------- classify

struct ClassifyOpts {
    Common common;
    std::vector<std::string> p{"2"};
    std::string domain = "whole";
};

void run_classify(const ClassifyOpts& o) {
    const auto dom = parse_domain_kind(o.domain);
    if (!dom) throw InvalidInput("domain must be whole, ball or exterior");
    const auto qN = parse_rational(o.common.N), qa = parse_rational(o.common.alpha), qb = parse_rational(o.common.b),
               qc = parse_rational(o.common.c);
    const OperatorParams prm = params_of(o.common);
    auto results = parallel_map(o.p.size(), [&](std::size_t i) {
        const auto qp = parse_rational(o.p[i]);
        if (qN && qa && qb && qc && qp) {
            RationalParams rp{prm.N, *qa, *qb, *qc};
            return classify_exact(rp, *qp, *dom);
        }
        return classify(prm, parse_number("p", o.p[i]), *dom);
    });
    json arr = json::array();
    std::string csv = "p,verdict,generates,n_over_p,interval_lo,interval_hi,lint_equals_min,lint_equals_max\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const Classification& c = results[i];
        const double p = parse_number("p", o.p[i]);
        json theta0 = c.theta0 ? num(*c.theta0) : json(nullptr);
        json sa = c.selfadjoint ? json(*c.selfadjoint) : json(nullptr);
        arr.push_back({{"p", num(p)},
                       {"verdict", to_string(c.verdict)},
                       {"domain", to_string(c.domain_kind)},
                       {"generates", c.generates},
                       {"all_p", c.all_p},
                       {"n_over_p", num(c.n_over_p)},
                       {"interval", interval_json(c.interval)},
                       {"min_interval", interval_json(c.min_interval)},
                       {"max_interval", interval_json(c.max_interval)},
                       {"theta_interval", interval_json(c.theta_interval)},
                       {"theta0", theta0},
                       {"lint_equals_min", c.lint_equals_min},
                       {"lint_equals_max", c.lint_equals_max},
                       {"selfadjoint", sa},
                       {"endpoint_tie", c.endpoint_tie},
                       {"exact", c.exact}});
        csv += fmt(p) + "," + to_string(c.verdict) + "," + (c.generates ? "true" : "false") + "," + fmt(c.n_over_p) + ",";
        csv += (c.interval ? fmt(c.interval->lo) + "," + fmt(c.interval->hi) : std::string(","));
        csv += std::string(",") + (c.lint_equals_min ? "true" : "false") + "," + (c.lint_equals_max ? "true" : "false") + "\n";
    }
    json cfg = {{"params", params_json(prm)}, {"p", o.p}, {"domain", to_string(*dom)}};
    emit(o.common, "classify", cfg, arr, csv);
}

// ---------------------------------------------------------------- solve

struct SolveOpts {
    Common common;
    double p = 2.0;
    std::vector<double> lambdas{1.0};
    double arg = 0.0;
    std::string method = "both", bc = "decaying";
    double epsilon = 0.1;
    std::vector<double> thetas;
    double data_lo = 1.0, data_hi = 2.0;
    double s_min = NAN, s_max = NAN;
    std::size_t nodes = 4000, stride = 40;
};

void run_solve(const SolveOpts& o) {
    const OperatorParams prm = params_of(o.common);
    if (!(o.p > 1.0)) throw InvalidInput("p must be > 1");
    if (!(o.data_lo > 0 && o.data_hi > o.data_lo)) throw InvalidInput("need 0 < data-lo < data-hi");
    if (o.stride == 0) throw InvalidInput("stride must be >= 1");
    const LogGrid grid = grid_for(prm.alpha, o.s_min, o.s_max, o.nodes);
    const GridFunction f = sample(grid, [&](double r) { return bump(r, o.data_lo, o.data_hi); }, prm.N, o.p);
    const BoundaryMode mode = o.bc == "annulus" ? BoundaryMode::annulus(o.epsilon) : BoundaryMode::decaying();
    const bool complex_lambda = o.arg != 0.0;
    if (complex_lambda && o.method != "fd") throw InvalidInput("complex lambda (arg != 0) needs --method fd");
    if (o.bc == "annulus" && o.method != "fd") throw InvalidInput("--bc annulus needs --method fd");

    auto reports = parallel_map(o.lambdas.size(), [&](std::size_t i) {
        const double lam = o.lambdas[i];
        if (o.method == "green") return green_solve(prm, lam, f, o.thetas);
        if (o.method == "fd") return fd_solve(prm, std::polar(lam, o.arg), f, mode, o.thetas);
        return cross_check(prm, lam, f, o.thetas);
    });
    json arr = json::array();
    std::string csv = "lambda_re,lambda_im,r,u_re,u_im\n";
    for (const ResolventReport& rep : reports) {
        json wn = json::array();
        for (auto [th, v] : rep.weighted_norms) wn.push_back({{"theta", num(th)}, {"norm", num(v)}});
        json r = json::array(), ure = json::array(), uim = json::array();
        for (std::size_t i = 0; i < rep.solution.size(); i += o.stride) {
            r.push_back(num(rep.solution.r(i)));
            ure.push_back(num(rep.solution.values[i].real()));
            uim.push_back(num(rep.solution.values[i].imag()));
            csv += fmt(rep.lambda.real()) + "," + fmt(rep.lambda.imag()) + "," + fmt(rep.solution.r(i)) + "," +
                   fmt(rep.solution.values[i].real()) + "," + fmt(rep.solution.values[i].imag()) + "\n";
        }
        arr.push_back({{"lambda", {num(rep.lambda.real()), num(rep.lambda.imag())}},
                       {"method", to_string(rep.method)},
                       {"norm_p", num(rep.norm_p)},
                       {"weighted_norms", wn},
                       {"discrepancy", rep.discrepancy ? num(*rep.discrepancy) : json(nullptr)},
                       {"profile", {{"r", r}, {"u_re", ure}, {"u_im", uim}}}});
    }
    json cfg = {{"params", params_json(prm)}, {"p", num(o.p)}, {"lambda", o.lambdas}, {"arg", num(o.arg)},
                {"method", o.method}, {"bc", o.bc}, {"epsilon", num(o.epsilon)}, {"theta", o.thetas},
                {"data", {num(o.data_lo), num(o.data_hi)}},
                {"grid", {{"s_min", num(grid.s_min)}, {"s_max", num(grid.s_max)}, {"nodes", grid.n}}},
                {"stride", o.stride}};
    emit(o.common, "solve", cfg, arr, csv);
}

// ---------------------------------------------------------------- evolve

struct EvolveOpts {
    Common common;
    double p = 2.0, dt = 1e-3, T = 1.0;
    std::string scheme = "implicit-euler";
    double data_lo = 0.5, data_hi = 2.0;
    double s_min = NAN, s_max = NAN;
    std::size_t nodes = 4000, record_every = 10;
};

void run_evolve(const EvolveOpts& o) {
    const OperatorParams prm = params_of(o.common);
    const auto scheme = parse_time_scheme(o.scheme);
    if (!scheme) throw InvalidInput("scheme must be implicit-euler or crank-nicolson");
    if (!(o.data_lo > 0 && o.data_hi > o.data_lo)) throw InvalidInput("need 0 < data-lo < data-hi");
    const LogGrid grid = grid_for(prm.alpha, o.s_min, o.s_max, o.nodes);
    const GridFunction u0 = sample(grid, [&](double r) { return bump(r, o.data_lo, o.data_hi); }, prm.N, o.p);
    EvolveOptions eo;
    eo.record_every = o.record_every;
    eo.assert_positive = *scheme == TimeScheme::ImplicitEuler;
    const EvolutionRun run = evolve(prm, o.p, u0, o.dt, o.T, *scheme, eo);
    std::string csv = "t,norm,min\n";
    json t = json::array(), nrm = json::array(), mn = json::array();
    for (std::size_t k = 0; k < run.times.size(); ++k) {
        t.push_back(num(run.times[k]));
        nrm.push_back(num(run.norm_history[k]));
        mn.push_back(num(run.min_history[k]));
        csv += fmt(run.times[k]) + "," + fmt(run.norm_history[k]) + "," + fmt(run.min_history[k]) + "\n";
    }
    json res = {{"scheme", to_string(run.scheme)},
                {"T", num(run.T)},
                {"positive", run.positive},
                {"bound_exponent", run.bound_exponent ? num(*run.bound_exponent) : json(nullptr)},
                {"worst_bound_ratio", run.bound_exponent ? num(run.worst_bound_ratio) : json(nullptr)},
                {"bound_ok", run.bound_ok},
                {"times", t},
                {"norm_history", nrm},
                {"min_history", mn}};
    json cfg = {{"params", params_json(prm)}, {"p", num(o.p)}, {"dt", num(o.dt)}, {"T", num(o.T)},
                {"scheme", to_string(*scheme)}, {"data", {num(o.data_lo), num(o.data_hi)}},
                {"grid", {{"s_min", num(grid.s_min)}, {"s_max", num(grid.s_max)}, {"nodes", grid.n}}},
                {"record_every", o.record_every}};
    emit(o.common, "evolve", cfg, res, csv);
}

// ---------------------------------------------------------------- oscillate

struct OscillateOpts {
    Common common;
    double lambda = 1.0;
    double s_far = NAN;
    std::string phi_csv;
    std::size_t stride = 10;
};

void run_oscillate(const OscillateOpts& o) {
    const OperatorParams prm = params_of(o.common);
    if (o.stride == 0) throw InvalidInput("stride must be >= 1");
    OscillationRun run = std::isnan(o.s_far) ? integrate_homogeneous(prm, o.lambda)
                                             : integrate_homogeneous(prm, o.lambda, o.s_far);
    run = build_counterexample(std::move(run));
    std::string csv = "index,s,gap\n";
    json zeros = json::array();
    for (std::size_t i = 0; i < run.zeros.size(); ++i) {
        const double gap = i == 0 ? NAN : std::abs(run.zeros[i] - run.zeros[i - 1]);
        zeros.push_back({{"index", i}, {"s", num(run.zeros[i])}, {"gap", num(gap)}});
        csv += std::to_string(i) + "," + fmt(run.zeros[i]) + "," + (i == 0 ? std::string() : fmt(gap)) + "\n";
    }
    json pr = json::array(), pv = json::array();
    std::string phi = "r,phi\n";
    for (std::size_t i = 0; i < run.phi_r.size(); i += o.stride) {
        pr.push_back(num(run.phi_r[i]));
        pv.push_back(num(run.phi_values[i]));
    }
    for (std::size_t i = 0; i < run.phi_r.size(); ++i) phi += fmt(run.phi_r[i]) + "," + fmt(run.phi_values[i]) + "\n";
    if (!o.phi_csv.empty()) {
        std::ofstream out(o.phi_csv, std::ios::binary);
        if (!out) throw InvalidInput("cannot write '" + o.phi_csv + "'");
        out << phi;
    }
    json res = {{"k", num(run.coeffs.k)},
                {"rate", num(run.coeffs.rate)},
                {"m", num(run.coeffs.m)},
                {"s_far", num(run.s_far)},
                {"wronskian_defect", num(run.pair.wronskian_defect())},
                {"sign_changes", zeros},
                {"sign_changes_u2", run.zeros_u2.size()},
                {"counterexample",
                 {{"window", {num(run.window_lo), num(run.window_hi)}},
                  {"witness_s", num(run.witness_s)},
                  {"witness_value", num(run.witness_value)},
                  {"witness_value_source", num(run.witness_value_source)},
                  {"phi", {{"r", pr}, {"values", pv}}}}}};
    json cfg = {{"params", params_json(prm)}, {"lambda", num(o.lambda)}, {"s_far", num(run.s_far)},
                {"stride", o.stride}, {"phi_csv", o.phi_csv}};
    emit(o.common, "oscillate", cfg, res, csv);
}

// ---------------------------------------------------------------- verify

struct VerifyOpts {
    Common common;
    double p = 2.0;
    std::string suite = "dissipativity";
    std::size_t count = 0;  // 0: suite default
};

json suite_json(const SuiteResult& s) {
    return {{"suite", s.name}, {"draws", s.draws}, {"passes", s.passes}, {"worst", num(s.worst)}, {"ok", s.ok()}};
}

void run_verify(const VerifyOpts& o) {
    const OperatorParams prm = params_of(o.common);
    if (!(o.p > 1.0)) throw InvalidInput("p must be > 1");
    const std::vector<std::string> known{"dissipativity", "violation", "coercivity", "log-hardy", "interpolation"};
    std::vector<std::string> names;
    if (o.suite == "all")
        names = known;
    else if (std::find(known.begin(), known.end(), o.suite) != known.end())
        names = {o.suite};
    else
        throw InvalidInput("unknown suite '" + o.suite + "'");
    const std::uint64_t seed = o.common.seed;
    auto cards = parallel_map(names.size(), [&](std::size_t i) -> json {
        const std::string& n = names[i];
        if (n == "dissipativity") return suite_json(dissipativity_suite(prm, o.p, seed, o.count ? o.count : 200));
        if (n == "coercivity") {
            const double M = f_eval(prm, prm.N / o.p + prm.alpha - 2);
            if (!(M > 0)) return {{"suite", n}, {"skipped", "M = f(N/p + alpha - 2) <= 0"}, {"M", num(M)}};
            json j = suite_json(coercivity_suite(prm, o.p, seed, o.count ? o.count : 20));
            j["M"] = num(M);
            return j;
        }
        if (n == "log-hardy") {
            json j = suite_json(log_hardy_suite(o.p, seed, o.count ? o.count : 50, prm.N));
            j["constant"] = num((o.p - 1) / (o.p * o.p));
            return j;
        }
        if (n == "violation") {
            const ViolationSweep v = violation_sweep(prm, o.p);
            json rows = json::array();
            for (std::size_t k = 0; k < v.deltas.size(); ++k)
                rows.push_back({{"delta", num(v.deltas[k])}, {"ratio", num(v.reports[k].real_part / v.reports[k].scale)}});
            return {{"suite", n},
                    {"margin", num(v.reports.front().margin_used)},
                    {"found", v.first_violation.has_value()},
                    {"delta", v.first_violation ? num(*v.first_violation) : json(nullptr)},
                    {"min_ratio", num(v.min_ratio)},
                    {"sweep", rows}};
        }
        const auto corpus = interpolation_corpus(LogGrid::make(-8, 8, 3201), o.count ? o.count : 50, seed, prm.N, o.p);
        const InterpolationReport r = interpolation_probe(prm, o.p, corpus);
        json rows = json::array();
        for (std::size_t k = 0; k < r.epsilons.size(); ++k)
            rows.push_back({{"epsilon", num(r.epsilons[k])}, {"max_constant", num(r.max_constant[k])}});
        return {{"suite", n}, {"profiles", corpus.size()}, {"bounded", r.bounded}, {"constants", rows}};
    });
    std::string csv = "suite,draws,passes,ok\n";
    for (const json& c : cards) {
        if (c.contains("draws"))
            csv += c["suite"].get<std::string>() + "," + std::to_string(c["draws"].get<std::size_t>()) + "," +
                   std::to_string(c["passes"].get<std::size_t>()) + "," + (c["ok"].get<bool>() ? "true" : "false") + "\n";
        else
            csv += c["suite"].get<std::string>() + ",,,\n";
    }
    json cfg = {{"params", params_json(prm)}, {"p", num(o.p)}, {"suite", o.suite}, {"count", o.count}};
    emit(o.common, "verify", cfg, cards, csv);
}

// ---------------------------------------------------------------- bessel

struct BesselOpts {
    Common common;
    std::vector<double> nu{0.0}, x{1.0};
};

void run_bessel(const BesselOpts& o) {
    std::vector<std::pair<double, double>> pts;
    for (double n : o.nu)
        for (double x : o.x) pts.emplace_back(n, x);
    auto evals = parallel_map(pts.size(), [&](std::size_t i) { return bessel_eval(pts[i].first, pts[i].second); });
    json arr = json::array();
    std::string csv = "nu,x,I,K,dI,dK\n";
    for (const BesselEval& e : evals) {
        arr.push_back({{"nu", num(e.nu)}, {"x", num(e.x)}, {"I", num(e.value_i)}, {"K", num(e.value_k)},
                       {"dI", num(e.deriv_i)}, {"dK", num(e.deriv_k)}});
        csv += fmt(e.nu) + "," + fmt(e.x) + "," + fmt(e.value_i) + "," + fmt(e.value_k) + "," + fmt(e.deriv_i) + "," +
               fmt(e.deriv_k) + "\n";
    }
    emit(o.common, "bessel", {{"nu", o.nu}, {"x", o.x}}, arr, csv);
}

void print_error(const char* kind, const std::string& msg) {
    json doc = {{"schema", kSchema}, {"error", {{"kind", kind}, {"message", msg}}}};
    std::cerr << doc.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sel_lab: generation theory lab for |x|^a Laplacian-type operators"};
    app.require_subcommand(1);

    ClassifyOpts co;
    auto* cl = app.add_subcommand("classify", "semigroup-generation verdict");
    add_common(cl, co.common);
    cl->add_option("-p,--p", co.p, "one or more exponents (exact rationals allowed)")->delimiter(',');
    cl->add_option("--domain", co.domain, "whole, ball or exterior")->capture_default_str();

    SolveOpts so;
    auto* sv = app.add_subcommand("solve", "radial resolvent for bump data");
    add_common(sv, so.common);
    sv->add_option("-p,--p", so.p)->capture_default_str();
    sv->add_option("--lambda", so.lambdas, "one or more |lambda|")->delimiter(',');
    sv->add_option("--arg", so.arg, "argument of lambda (fd only)")->capture_default_str();
    sv->add_option("--method", so.method)->check(CLI::IsMember({"green", "fd", "both"}))->capture_default_str();
    sv->add_option("--bc", so.bc)->check(CLI::IsMember({"decaying", "annulus"}))->capture_default_str();
    sv->add_option("--epsilon", so.epsilon, "annulus eps")->capture_default_str();
    sv->add_option("--theta", so.thetas, "weighted-norm exponents")->delimiter(',');
    sv->add_option("--data-lo", so.data_lo)->capture_default_str();
    sv->add_option("--data-hi", so.data_hi)->capture_default_str();
    sv->add_option("--s-min", so.s_min);
    sv->add_option("--s-max", so.s_max);
    sv->add_option("--nodes", so.nodes)->capture_default_str();
    sv->add_option("--stride", so.stride, "profile subsampling")->capture_default_str();

    EvolveOpts eo;
    auto* ev = app.add_subcommand("evolve", "time stepping of u_t = L u");
    add_common(ev, eo.common);
    ev->add_option("-p,--p", eo.p)->capture_default_str();
    ev->add_option("--dt", eo.dt)->capture_default_str();
    ev->add_option("--T", eo.T)->capture_default_str();
    ev->add_option("--scheme", eo.scheme, "implicit-euler or crank-nicolson")->capture_default_str();
    ev->add_option("--data-lo", eo.data_lo)->capture_default_str();
    ev->add_option("--data-hi", eo.data_hi)->capture_default_str();
    ev->add_option("--s-min", eo.s_min);
    ev->add_option("--s-max", eo.s_max);
    ev->add_option("--nodes", eo.nodes)->capture_default_str();
    ev->add_option("--record-every", eo.record_every)->capture_default_str();

    OscillateOpts oo;
    auto* os = app.add_subcommand("oscillate", "oscillation and the nonnegative counterexample");
    add_common(os, oo.common);
    os->add_option("--lambda", oo.lambda)->capture_default_str();
    os->add_option("--s-far", oo.s_far, "far end of the integration window");
    os->add_option("--phi-csv", oo.phi_csv, "write the phi profile as CSV");
    os->add_option("--stride", oo.stride, "phi subsampling in JSON")->capture_default_str();

    VerifyOpts vo;
    auto* vf = app.add_subcommand("verify", "form-inequality suites");
    add_common(vf, vo.common);
    vf->add_option("-p,--p", vo.p)->capture_default_str();
    vf->add_option("--suite", vo.suite, "dissipativity, violation, coercivity, log-hardy, interpolation or all")
        ->capture_default_str();
    vf->add_option("--count", vo.count, "draws (0: suite default)")->capture_default_str();

    BesselOpts bo;
    auto* bs = app.add_subcommand("bessel", "modified Bessel functions I and K");
    add_common(bs, bo.common, false);
    bs->add_option("--nu", bo.nu)->delimiter(',');
    bs->add_option("--x", bo.x)->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("invalid_input", e.what());
        return 2;
    }

    try {
        if (cl->parsed()) {
            apply_config(cl, co.common.config);
            run_classify(co);
        } else if (sv->parsed()) {
            apply_config(sv, so.common.config);
            run_solve(so);
        } else if (ev->parsed()) {
            apply_config(ev, eo.common.config);
            run_evolve(eo);
        } else if (os->parsed()) {
            apply_config(os, oo.common.config);
            run_oscillate(oo);
        } else if (vf->parsed()) {
            apply_config(vf, vo.common.config);
            run_verify(vo);
        } else if (bs->parsed()) {
            apply_config(bs, bo.common.config);
            run_bessel(bo);
        }
    } catch (const InvalidInput& e) {
        print_error("invalid_input", e.what());
        return 2;
    } catch (const CLI::ParseError& e) {
        print_error("invalid_input", e.what());
        return 2;
    } catch (const NumericalFailure& e) {
        print_error("numerical_failure", e.what());
        return 3;
    } catch (const std::exception& e) {
        print_error("numerical_failure", e.what());
        return 3;
    }
    return 0;
}
