#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ach/report.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounded unification modulo a homomorphism over an AC operator"};
    app.require_subcommand(1);

    std::string file;
    std::string format = "text";
    unsigned bound = 0;
    bool have_bound = false;
    bool check = false;
    bool minimize = false;
    std::size_t max_branches = 100000;
    long timeout_ms = -1;

    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one problem file");
    solve_cmd->add_option("file", file, "problem file")->required();
    solve_cmd->add_option("--bound", bound, "h-depth bound (overrides the file header)")
        ->each([&](const std::string&) { have_bound = true; });
    solve_cmd->add_option("--format", format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    solve_cmd->add_flag("--check", check, "verify every unifier with the brute-force checker");
    solve_cmd->add_flag("--minimize", minimize, "drop unifiers that are instances of others");
    solve_cmd->add_option("--max-branches", max_branches, "live branch limit");
    solve_cmd->add_option("--timeout-ms", timeout_ms, "wall-clock limit");

    std::string dir;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Run a corpus directory");
    bench_cmd->add_option("dir", dir, "corpus directory")->required();
    bench_cmd->add_option("--format", format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) {
            ach::ProblemFile pf = ach::parse_problem(read_file(file));
            ach::RunOptions opts;
            if (have_bound)
                opts.bound_override = bound;
            opts.check = check;
            opts.minimize = minimize;
            opts.limits.max_branches = max_branches;
            opts.limits.timeout_ms = timeout_ms;
            ach::SolveReport report = ach::run_solve(pf, opts);
            std::cout << (format == "json" ? ach::report_json(report)
                                           : ach::report_text(report));
            return ach::exit_code(report.status);
        }
        ach::BenchReport report = ach::bench_dir(dir);
        std::cout << (format == "json" ? ach::bench_json(report) : ach::bench_text(report));
        return report.all_ok ? 0 : 1;
    } catch (const ach::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const ach::SoundnessError& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
