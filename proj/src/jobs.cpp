#include "klpoly/jobs.hpp"

#include <cmath>
#include <cstdlib>
#include <future>
#include <iostream>
#include <json.hpp>

#include "klpoly/audit_suites.hpp"
#include "klpoly/io.hpp"
#include "klpoly/parse.hpp"
#include "klpoly/thsolver.hpp"
#include "klpoly/watson.hpp"

namespace klpoly {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::string* find(const JobSpec& job, const std::string& key) {
    const auto it = job.params.find(key);
    return it == job.params.end() ? nullptr : &it->second;
}

std::string require(const JobSpec& job, const std::string& key) {
    const std::string* v = find(job, key);
    if (!v) throw DomainError("missing required parameter --" + key);
    return *v;
}

double number_param(const JobSpec& job, const std::string& key, double fallback) {
    const std::string* v = find(job, key);
    if (!v) return fallback;
    try {
        std::size_t used = 0;
        const double out = std::stod(*v, &used);
        if (used != v->size()) throw std::invalid_argument(*v);
        return out;
    } catch (const std::exception&) {
        throw DomainError("parameter --" + key + " is not a number: " + *v);
    }
}

QuadratureConfig config_of(const JobSpec& job) {
    QuadratureConfig cfg;
    cfg.abs_tol = number_param(job, "tol", cfg.abs_tol);
    cfg.rel_tol = number_param(job, "rel-tol", cfg.rel_tol);
    cfg.tail_epsilon = number_param(job, "tail-eps", cfg.tail_epsilon);
    cfg.validate();
    return cfg;
}

std::vector<double> comma_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string piece =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!piece.empty()) {
            try {
                out.push_back(std::stod(piece));
            } catch (const std::exception&) {
                throw DomainError("bad " + what + " entry: " + piece);
            }
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw DomainError("empty " + what + " list");
    return out;
}

void emit(const JobSpec& job, const std::string& content) {
    const std::string* out = find(job, "out");
    if (out && !out->empty())
        write_text_atomic(*out, content);
    else
        std::cout << content;
}

// every numeric output carries 12 significant digits, JSON included
double out12(double v) { return std::stod(format_double(v)); }

std::vector<double> out12(std::vector<double> v) {
    for (double& x : v) x = out12(x);
    return v;
}

std::string csv_of(const SampledFunction& s, const char* xname, const char* vname) {
    std::vector<std::vector<double>> rows;
    const auto pts = s.grid.points();
    for (int i = 0; i < s.grid.n; ++i) rows.push_back({pts[i], s.values[i]});
    return render_csv({xname, vname}, rows);
}

ordered_json json_of(const SampledFunction& s, const char* xname, const char* vname) {
    ordered_json j;
    j[xname] = out12(s.grid.points());
    j[vname] = out12(s.values);
    return j;
}

ordered_json json_of(const InequalityReport& r, const QuadratureConfig& cfg) {
    ordered_json j;
    j["lhs"] = out12(r.lhs);
    j["rhs"] = out12(r.rhs);
    j["constant"] = out12(r.constant_used);
    j["margin"] = out12(r.margin);
    j["pass"] = r.pass;
    j["detail"] = r.detail;
    j["config"] = {{"abs_tol", cfg.abs_tol},
                   {"rel_tol", cfg.rel_tol},
                   {"tail_epsilon", cfg.tail_epsilon}};
    return j;
}

// ---- commands ----

int cmd_transform(const JobSpec& job) {
    const QuadratureConfig cfg = config_of(job);
    const std::string kind = require(job, "kind");
    const FunctionExpr f = parse_function(require(job, "f"));
    const GridSpec ygrid =
        find(job, "ygrid") ? parse_grid(*find(job, "ygrid")) : default_ygrid();

    TransformResult r;
    if (kind == "sine") {
        r = fourier_sine(f, ygrid, cfg);
    } else if (kind == "cosine") {
        r = fourier_cosine(f, ygrid, cfg);
    } else if (kind == "kl") {
        r = kl_transform(f, ygrid, cfg, number_param(job, "lower-cut", 1e-6));
    } else {
        throw DomainError("transform kind must be sine, cosine, or kl");
    }

    if (find(job, "format") && *find(job, "format") == "json") {
        ordered_json j = json_of(r.spectrum, "y", "value");
        j["max_error_estimate"] = out12(r.max_error_estimate);
        emit(job, j.dump(2) + "\n");
    } else {
        emit(job, csv_of(r.spectrum, "y", "value"));
    }
    return 0;
}

int cmd_polyconv(const JobSpec& job) {
    const QuadratureConfig cfg = config_of(job);
    QuadratureConfig direct_cfg = cfg;
    direct_cfg.abs_tol = std::max(cfg.abs_tol, 1e-8);
    direct_cfg.rel_tol = std::max(cfg.rel_tol, 1e-7);

    const PolyconvInput in{parse_function(require(job, "f")), parse_function(require(job, "g")),
                           parse_function(require(job, "h")),
                           number_param(job, "beta", 0.5)};
    const std::vector<double> xs =
        comma_list(find(job, "x") ? *find(job, "x") : "0.5,1,2,4,8", "x");

    std::vector<std::string> paths{"direct", "spectral", "composed"};
    if (find(job, "paths")) {
        paths.clear();
        std::string text = *find(job, "paths");
        std::size_t start = 0;
        while (start <= text.size()) {
            const std::size_t comma = text.find(',', start);
            const std::string p = text.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!p.empty()) paths.push_back(p);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }

    std::map<std::string, std::vector<double>> columns;
    for (const std::string& p : paths) {
        if (p == "direct") {
            std::vector<double> col;
            for (double x : xs) col.push_back(polyconv_direct(in, x, direct_cfg));
            columns[p] = col;
        } else if (p == "spectral") {
            columns[p] = polyconv_spectral_curve(in, xs, cfg).vs;
        } else if (p == "composed") {
            columns[p] = polyconv_composed_curve(in, xs, cfg).vs;
        } else {
            throw DomainError("unknown polyconvolution path: " + p);
        }
    }

    std::vector<std::string> header{"x"};
    for (const std::string& p : paths) header.push_back(p);
    header.push_back("max_pairwise_dev");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<double> row{xs[i]};
        double lo = 1e300, hi = -1e300;
        for (const std::string& p : paths) {
            const double v = columns[p][i];
            row.push_back(v);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        row.push_back(paths.size() > 1 ? hi - lo : 0.0);
        rows.push_back(row);
    }
    emit(job, render_csv(header, rows));
    return 0;
}

int cmd_watson(const JobSpec& job) {
    const QuadratureConfig cfg = config_of(job);
    const FunctionExpr f = parse_function(require(job, "f"));
    const GridSpec xgrid =
        find(job, "grid") ? parse_grid(*find(job, "grid")) : default_xgrid();
    const std::string mode = find(job, "mode") ? *find(job, "mode") : "spectral";

    SampledFunction phi;
    if (find(job, "synthetic")) {
        if (mode != "spectral")
            throw DomainError("the synthetic multiplier supports only the spectral mode");
        phi = watson_apply_spectral(f, MultiplierTheta::identity(), xgrid, cfg);
    } else {
        const WatsonPair pair{parse_function(require(job, "g0")),
                              parse_function(require(job, "h0")),
                              number_param(job, "beta", 0.5)};
        if (mode == "spectral") {
            phi = watson_apply_spectral(f, pair, xgrid, cfg);
        } else if (mode == "direct") {
            QuadratureConfig dcfg = cfg;
            dcfg.abs_tol = std::max(cfg.abs_tol, 1e-9);
            phi = watson_apply_direct(f, pair, xgrid, number_param(job, "fd-step", 1e-2), dcfg);
        } else {
            throw DomainError("watson mode must be spectral or direct");
        }
    }
    if (find(job, "format") && *find(job, "format") == "json")
        emit(job, json_of(phi, "x", "phi").dump(2) + "\n");
    else
        emit(job, csv_of(phi, "x", "phi"));
    return 0;
}

FunctionExpr expr_field(const ordered_json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_string())
        throw ParseError("audit entry needs string field '" + key + "'");
    return parse_function(j[key].get<std::string>());
}

double num_field(const ordered_json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ParseError("audit entry needs numeric field '" + key + "'");
    return j[key].get<double>();
}

// explicit batch config: a JSON array of {kind, functions, exponents,
// parameters} entries
std::vector<InequalityReport> run_audit_config(const std::string& path,
                                               const QuadratureConfig& cfg) {
    const ordered_json arr = ordered_json::parse(read_text_file(path));
    if (!arr.is_array()) throw ParseError("audit config must be a JSON array");
    std::vector<InequalityReport> out;
    for (const auto& j : arr) {
        const std::string kind = j.value("kind", std::string{});
        if (kind == "young") {
            const auto exps = ExponentTuple::young(num_field(j, "p"), num_field(j, "q"),
                                                   num_field(j, "r"), num_field(j, "s"));
            out.push_back(young_audit(expr_field(j, "f"), expr_field(j, "g"),
                                      expr_field(j, "h"), expr_field(j, "k"), exps,
                                      num_field(j, "beta"), cfg));
        } else if (kind == "young-norm") {
            const auto exps = ExponentTuple::young_norm(num_field(j, "p"), num_field(j, "q"),
                                                        num_field(j, "r"), num_field(j, "s"));
            out.push_back(young_norm_audit(expr_field(j, "f"), expr_field(j, "g"),
                                           expr_field(j, "h"), exps, num_field(j, "beta"),
                                           cfg));
        } else if (kind == "linfty") {
            out.push_back(linfty_audit(expr_field(j, "f"), expr_field(j, "g"),
                                       expr_field(j, "h"), num_field(j, "p"),
                                       num_field(j, "q"), num_field(j, "r"),
                                       num_field(j, "beta"), cfg));
        } else if (kind == "threeparam") {
            out.push_back(threeparam_audit(
                expr_field(j, "f"), expr_field(j, "g"), expr_field(j, "h"), num_field(j, "p"),
                num_field(j, "q"), num_field(j, "r"), num_field(j, "s"),
                num_field(j, "alpha1"), num_field(j, "beta1"), num_field(j, "gamma1"),
                num_field(j, "beta"), cfg));
        } else if (kind == "saitoh") {
            auto rho = [&j](const char* key) -> std::optional<FunctionExpr> {
                if (!j.contains(key) || j[key].is_null()) return std::nullopt;
                return parse_function(j[key].get<std::string>());
            };
            out.push_back(saitoh_audit(expr_field(j, "F1"), expr_field(j, "F2"),
                                       expr_field(j, "F3"), rho("rho1"), rho("rho2"),
                                       rho("rho3"), num_field(j, "p"), cfg));
        } else if (kind == "kernel") {
            const std::string which = j.value("integral", std::string("i1"));
            KernelBoundKind kb = KernelBoundKind::i1_dx;
            if (which == "i2") kb = KernelBoundKind::i2_du;
            else if (which == "i3") kb = KernelBoundKind::i3_dv;
            else if (which == "i4") kb = KernelBoundKind::i4_dw;
            else if (which != "i1") throw ParseError("kernel integral must be i1..i4");
            out.push_back(kernel_bound_audit(kb, num_field(j, "c1"), num_field(j, "c2"),
                                             num_field(j, "c3"), cfg));
        } else {
            throw ParseError("unknown audit kind: " + kind);
        }
    }
    return out;
}

int cmd_audit(const JobSpec& job) {
    const QuadratureConfig cfg = config_of(job);
    const std::string suite = find(job, "suite") ? *find(job, "suite") : "all";
    const unsigned seed = static_cast<unsigned>(number_param(job, "seed", 7));
    const std::size_t count = static_cast<std::size_t>(number_param(job, "count", 20));

    const auto reports = find(job, "config") ? run_audit_config(*find(job, "config"), cfg)
                                             : audit_suite(suite, seed, count, cfg);
    ordered_json arr = ordered_json::array();
    bool all_pass = true;
    for (const auto& r : reports) {
        arr.push_back(json_of(r, cfg));
        all_pass = all_pass && r.pass;
    }
    emit(job, arr.dump(2) + "\n");
    return all_pass ? 0 : 1;
}

int cmd_solve_th(const JobSpec& job) {
    const QuadratureConfig cfg = config_of(job);
    const GridSpec xgrid = find(job, "grid") ? parse_grid(*find(job, "grid"))
                                             : GridSpec::log_uniform(1e-3, 40.0, 800);
    const SolveReport rep =
        solve_th(parse_function(require(job, "xi")), parse_function(require(job, "phi")),
                 parse_function(require(job, "h")), number_param(job, "beta", 0.5), xgrid,
                 cfg, number_param(job, "delta", 1e-8));

    if (find(job, "solution-out"))
        write_text_atomic(*find(job, "solution-out"), csv_of(rep.solution, "x", "f"));
    if (find(job, "ell-out") && rep.has_ell_function)
        write_text_atomic(*find(job, "ell-out"), csv_of(rep.ell_function, "x", "ell"));

    ordered_json j;
    j["residual_linf"] = out12(rep.residual_linf);
    j["residual_l1"] = out12(rep.residual_l1);
    j["l1_bound_lhs"] = out12(rep.l1_bound_lhs);
    j["l1_bound_rhs"] = out12(rep.l1_bound_rhs);
    j["l1_bound_pass"] = rep.l1_bound_lhs <= rep.l1_bound_rhs + 1e-9;
    j["symbol_min_modulus"] = out12(rep.symbol_min_modulus);
    j["solution"] = json_of(rep.solution, "x", "f");
    j["ell_spectrum"] = json_of(rep.ell_spectrum, "y", "fc_ell");
    if (rep.has_ell_function) j["ell"] = json_of(rep.ell_function, "x", "ell");
    emit(job, j.dump(2) + "\n");
    return 0;
}

int cmd_plancherel(const JobSpec& job) {
    const QuadratureConfig cfg = config_of(job);
    const FunctionExpr f = parse_function(require(job, "f"));
    const std::vector<double> ns =
        comma_list(find(job, "N") ? *find(job, "N") : "1,2,4,8", "N");

    std::vector<double> devs;
    if (find(job, "synthetic")) {
        devs = plancherel_sequence(f, MultiplierTheta::identity(), ns, cfg);
    } else {
        const WatsonPair pair{parse_function(require(job, "g0")),
                              parse_function(require(job, "h0")),
                              number_param(job, "beta", 0.5)};
        devs = plancherel_sequence(f, pair, ns, cfg);
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < ns.size(); ++i) rows.push_back({ns[i], devs[i]});
    emit(job, render_csv({"N", "deviation"}, rows));
    return 0;
}

int dispatch(const JobSpec& job) {
    if (job.command == "transform") return cmd_transform(job);
    if (job.command == "polyconv") return cmd_polyconv(job);
    if (job.command == "watson") return cmd_watson(job);
    if (job.command == "audit") return cmd_audit(job);
    if (job.command == "solve-th") return cmd_solve_th(job);
    if (job.command == "plancherel") return cmd_plancherel(job);
    throw DomainError("unknown command: " + job.command);
}

JobSpec job_from_json(const ordered_json& j) {
    JobSpec spec;
    if (!j.contains("command") || !j["command"].is_string())
        throw ParseError("job object needs a string 'command'");
    spec.command = j["command"].get<std::string>();
    for (const auto& [key, value] : j.items()) {
        if (key == "command" || key == "jobs") continue;
        if (value.is_string())
            spec.params[key] = value.get<std::string>();
        else if (value.is_boolean())
            spec.params[key] = value.get<bool>() ? "1" : "";
        else if (value.is_number())
            spec.params[key] = format_double(value.get<double>());
        else
            throw ParseError("job parameter '" + key + "' must be scalar");
    }
    return spec;
}

} // namespace

int run_job(const JobSpec& job) {
    try {
        return dispatch(job);
    } catch (const ParseError& e) {
        std::cerr << "error: input: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: input: " << e.what() << "\n";
        return 2;
    } catch (const SingularSymbolError& e) {
        std::cerr << "error: numeric: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        // remaining engine failures are numeric (non-convergence, tails, ...)
        std::cerr << "error: numeric: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_job_file(const std::string& path) {
    ordered_json j;
    try {
        j = ordered_json::parse(read_text_file(path));
    } catch (const std::exception& e) {
        std::cerr << "error: input: cannot parse job file: " << e.what() << "\n";
        return 2;
    }
    try {
        if (j.contains("jobs")) {
            std::vector<JobSpec> jobs;
            for (const auto& item : j["jobs"]) jobs.push_back(job_from_json(item));

            std::size_t workers = 1;
            if (const char* env = std::getenv("KLPOLY_THREADS")) {
                const long n = std::strtol(env, nullptr, 10);
                if (n > 1) workers = static_cast<std::size_t>(n);
            }
            int code = 0;
            for (std::size_t base = 0; base < jobs.size(); base += workers) {
                std::vector<std::future<int>> batch;
                const std::size_t end = std::min(jobs.size(), base + workers);
                for (std::size_t i = base; i < end; ++i)
                    batch.push_back(std::async(workers > 1 ? std::launch::async
                                                           : std::launch::deferred,
                                               [&jobs, i] { return run_job(jobs[i]); }));
                for (auto& f : batch) code = std::max(code, f.get());
            }
            return code;
        }
        return run_job(job_from_json(j));
    } catch (const ParseError& e) {
        std::cerr << "error: input: " << e.what() << "\n";
        return 2;
    }
}

} // namespace klpoly
