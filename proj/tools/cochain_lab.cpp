// cochain-lab: batch front end over the cochain/homotopy library.
// Usage: cochain-lab <task> --config <file> [--mode exact|float] [--seed N]
//                    [--out <file>] [--format json|table]
// Exit codes: 0 pass, 1 fail, 2 config error, 3 budget exhausted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cochainlab/tasks.hpp"

namespace {

struct Options {
    std::string config_path;
    std::string mode;
    std::string out_path;
    std::string format = "json";
    long long seed = -1;
};

int run(const std::string& task, const Options& opt) {
    using namespace cochainlab;
    try {
        std::ifstream f(opt.config_path);
        if (!f) {
            std::cerr << "E_PARSE: cannot open config file: " << opt.config_path << "\n";
            return 2;
        }
        std::stringstream buf;
        buf << f.rdbuf();
        Json j;
        try {
            j = Json::parse(buf.str());
        } catch (const std::exception& e) {
            std::cerr << "E_PARSE: not valid JSON: " << e.what() << "\n";
            return 2;
        }
        if (!j.is_object()) {
            std::cerr << "E_PARSE: config must be a JSON object\n";
            return 2;
        }
        if (j.contains("task") && j.at("task").get<std::string>() != task) {
            std::cerr << "E_TASK: config task '" << j.at("task").get<std::string>()
                      << "' does not match subcommand '" << task << "'\n";
            return 2;
        }
        j["task"] = task;
        if (!opt.mode.empty()) j["mode"] = opt.mode;
        if (opt.seed >= 0) j["seed"] = static_cast<std::uint64_t>(opt.seed);
        TaskConfig cfg = parse_config(j.dump());
        Report rep = run_task(cfg);
        std::string text = emit_report(rep, opt.format);
        if (!opt.out_path.empty()) {
            std::ofstream out(opt.out_path);
            out << text;
        } else {
            std::cout << text;
        }
        std::cerr << "elapsed: " << rep.seconds << " s\n";
        return rep.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cochain-lab: cohomology of group actions on finite-dimensional p-normed modules"};
    app.require_subcommand(1);
    Options opt;
    std::string chosen;
    for (const auto& task : cochainlab::known_tasks()) {
        auto* sub = app.add_subcommand(task, "run the " + task + " task");
        sub->add_option("--config", opt.config_path, "task config file (JSON)")->required();
        sub->add_option("--mode", opt.mode, "exact|float");
        sub->add_option("--seed", opt.seed, "seed for randomized tasks");
        sub->add_option("--out", opt.out_path, "write the report to a file");
        sub->add_option("--format", opt.format, "json|table");
        sub->callback([task, &chosen]() { chosen = task; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return run(chosen, opt);
}
