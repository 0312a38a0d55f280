// latsamp: decide tightness / orthogonality of sampling on unions of shifted
// lattices, with optional independent numeric verification.
//
// Exit codes: 0 property holds, 1 property fails (witness emitted),
// 2 input error, 3 analytic/oracle disagreement beyond tolerance.

#include <CLI11.hpp>

#include "latsamp/problem.hpp"

#include <iostream>
#include <string>

namespace {

struct CommonOpts {
    std::string path;
    std::string format = "text";
    latsamp::RunFlags flags;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("spec", o.path, "problem-spec JSON file")->required();
    cmd->add_option("--format", o.format, "output format: text|machine")
        ->check(CLI::IsMember({"text", "machine"}));
}

void add_oracle(CLI::App* cmd, CommonOpts& o) {
    auto set = [](auto& slot) {
        return [&slot](const auto& v) { slot = v; };
    };
    cmd->add_option_function<long>("--radius", set(o.flags.radius),
                                   "truncation radius (sup-norm bound on z)");
    cmd->add_option_function<int>("--trials", set(o.flags.trials), "random spectra per check");
    cmd->add_option_function<std::uint64_t>("--seed", set(o.flags.seed), "oracle seed");
    cmd->add_option_function<double>("--tol", set(o.flags.tol), "oracle tolerance");
}

int run_command(const CommonOpts& o) {
    try {
        latsamp::ProblemSpec spec = latsamp::parse_spec(o.path);
        latsamp::Report rep = latsamp::run(spec, o.flags);
        if (o.format == "machine")
            std::cout << latsamp::report_to_json(rep);
        else
            std::cout << latsamp::report_to_text(rep);
        return latsamp::exit_code(rep);
    } catch (const latsamp::SpecError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const latsamp::UnsupportedSystemError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sampling on unions of shifted lattices: tightness and orthogonality"};
    app.require_subcommand(1);

    CommonOpts check_opts, verify_opts;
    CLI::App* check = app.add_subcommand("check", "analytic verdict only");
    add_common(check, check_opts);

    CLI::App* verify = app.add_subcommand("verify", "analytic verdict plus numeric oracle");
    add_common(verify, verify_opts);
    add_oracle(verify, verify_opts);
    verify_opts.flags.verify = true;

    CLI11_PARSE(app, argc, argv);

    if (check->parsed()) return run_command(check_opts);
    return run_command(verify_opts);
}
