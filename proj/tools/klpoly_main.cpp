// klpoly: polyconvolution engine for the Fourier sine/cosine and
// Kontorovich-Lebedev transform family; see README.md for usage.
#include <CLI11.hpp>

#include "klpoly/jobs.hpp"

namespace {

void add_common(CLI::App* cmd, klpoly::JobSpec& spec) {
    auto bind = [cmd, &spec](const std::string& flag, const std::string& help) {
        cmd->add_option_function<std::string>(
            "--" + flag, [&spec, flag](const std::string& v) { spec.params[flag] = v; }, help);
    };
    bind("tol", "absolute quadrature tolerance (default 1e-10)");
    bind("rel-tol", "relative quadrature tolerance (default 1e-8)");
    bind("tail-eps", "tail truncation threshold (default 1e-12)");
    bind("out", "output file (stdout when omitted); written atomically");
    bind("format", "csv (default) or json");
}

void bind_param(CLI::App* cmd, klpoly::JobSpec& spec, const std::string& flag,
                const std::string& help, bool required = false) {
    auto* opt = cmd->add_option_function<std::string>(
        "--" + flag, [&spec, flag](const std::string& v) { spec.params[flag] = v; }, help);
    if (required) opt->required();
}

void bind_flag(CLI::App* cmd, klpoly::JobSpec& spec, const std::string& flag,
               const std::string& help) {
    cmd->add_flag_callback(
        "--" + flag, [&spec, flag] { spec.params[flag] = "1"; }, help);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical engine for the Fourier sine/cosine - Kontorovich-Lebedev "
                 "polyconvolution, its inequalities, and the Toeplitz-Hankel solver"};
    app.require_subcommand(0, 1);
    // --h is a function flag on several subcommands, so help is --help only
    app.set_help_flag("--help", "print help");

    std::string job_path;
    app.add_option("--job", job_path, "run a JSON job file (single job or {\"jobs\": [...]})");

    klpoly::JobSpec spec;

    auto* transform = app.add_subcommand("transform", "Fourier sine/cosine or KL transform");
    transform->set_help_flag("--help", "print help");
    bind_param(transform, spec, "kind", "sine | cosine | kl", true);
    bind_param(transform, spec, "f", "function expression", true);
    bind_param(transform, spec, "ygrid", "frequency grid lo:hi:n[:log]");
    bind_param(transform, spec, "lower-cut", "KL lower cut (default 1e-6)");
    add_common(transform, spec);

    auto* polyconv = app.add_subcommand("polyconv", "three-route polyconvolution");
    polyconv->set_help_flag("--help", "print help");
    bind_param(polyconv, spec, "f", "F_s slot function", true);
    bind_param(polyconv, spec, "g", "F_c slot function", true);
    bind_param(polyconv, spec, "h", "KL slot function", true);
    bind_param(polyconv, spec, "beta", "weight parameter in (0, 1] (default 0.5)");
    bind_param(polyconv, spec, "paths", "comma list from direct,spectral,composed");
    bind_param(polyconv, spec, "x", "comma list of evaluation points");
    add_common(polyconv, spec);

    auto* watson = app.add_subcommand("watson", "Watson-type operator application");
    watson->set_help_flag("--help", "print help");
    bind_param(watson, spec, "f", "input function", true);
    bind_param(watson, spec, "g0", "fixed cosine-slot kernel");
    bind_param(watson, spec, "h0", "fixed KL-slot kernel");
    bind_param(watson, spec, "beta", "weight parameter (default 0.5)");
    bind_param(watson, spec, "grid", "output grid lo:hi:n[:log]");
    bind_param(watson, spec, "mode", "spectral (default) or direct");
    bind_param(watson, spec, "fd-step", "second-difference step (default 1e-2)");
    bind_flag(watson, spec, "synthetic", "use the unitary synthetic multiplier Theta = 1");
    add_common(watson, spec);

    auto* audit = app.add_subcommand("audit", "inequality audit suites");
    audit->set_help_flag("--help", "print help");
    bind_param(audit, spec, "suite",
               "young | young-norm | linfty | threeparam | saitoh | kernel | all");
    bind_param(audit, spec, "seed", "test-family seed (default 7)");
    bind_param(audit, spec, "count", "number of triples (default 20)");
    bind_param(audit, spec, "config", "JSON array of explicit audit entries");
    add_common(audit, spec);

    auto* solve = app.add_subcommand("solve-th", "Toeplitz-Hankel equation solver");
    solve->set_help_flag("--help", "print help");
    bind_param(solve, spec, "xi", "right-side generator xi", true);
    bind_param(solve, spec, "phi", "kernel function phi", true);
    bind_param(solve, spec, "h", "KL-slot function h", true);
    bind_param(solve, spec, "beta", "weight parameter (default 0.5)");
    bind_param(solve, spec, "grid", "solution grid lo:hi:n[:log]");
    bind_param(solve, spec, "delta", "solvability floor on |1 + F_c phi| (default 1e-8)");
    bind_param(solve, spec, "solution-out", "also write the solution curve as CSV");
    bind_param(solve, spec, "ell-out", "also write the recovered ell as CSV");
    add_common(solve, spec);

    auto* plan = app.add_subcommand("plancherel", "truncation convergence sequence");
    plan->set_help_flag("--help", "print help");
    bind_param(plan, spec, "f", "input function", true);
    bind_param(plan, spec, "N", "comma list of truncation points (default 1,2,4,8)");
    bind_param(plan, spec, "g0", "fixed cosine-slot kernel");
    bind_param(plan, spec, "h0", "fixed KL-slot kernel");
    bind_param(plan, spec, "beta", "weight parameter (default 0.5)");
    bind_flag(plan, spec, "synthetic", "use the unitary synthetic multiplier Theta = 1");
    add_common(plan, spec);

    CLI11_PARSE(app, argc, argv);

    if (!job_path.empty()) return klpoly::run_job_file(job_path);

    for (CLI::App* sub : {transform, polyconv, watson, audit, solve, plan}) {
        if (sub->parsed()) {
            spec.command = sub->get_name();
            return klpoly::run_job(spec);
        }
    }
    std::cout << app.help();
    return 2;
}
