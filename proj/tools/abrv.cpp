#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "abrv/errors.hpp"
#include "abrv/generators.hpp"
#include "abrv/monitor.hpp"
#include "abrv/observation.hpp"
#include "abrv/tba.hpp"

namespace {

enum Exit { Ok = 0, Failure = 1, BadInput = 2, RejectedQuery = 3 };

struct RunOptions {
    std::string assumption;
    std::string property;
    std::string negated_property;
    std::string observations = "-";
    bool per_element = false;
    bool latency = false;
};

std::vector<abrv::Rational> parse_csv(const std::string& text) {
    std::vector<abrv::Rational> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(abrv::parse_rational(item, true));
    return out;
}

int run(const RunOptions& opt) {
    abrv::Tba assumption, property, negated;
    try {
        assumption = abrv::load_tba(opt.assumption);
        property = abrv::load_tba(opt.property);
        negated = abrv::load_tba(opt.negated_property);
    } catch (const abrv::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return BadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Failure;
    }

    std::ifstream file;
    std::istream* in = &std::cin;
    if (opt.observations != "-") {
        file.open(opt.observations);
        if (!file) {
            std::cerr << "error: cannot read " << opt.observations << "\n";
            return Failure;
        }
        in = &file;
    }

    try {
        abrv::Monitor monitor(assumption, property, negated);
        std::string line;
        std::size_t line_no = 0, elements = 0;
        while (std::getline(*in, line)) {
            ++line_no;
            auto item = abrv::parse_stream_line(line, assumption, line_no);
            if (!item) continue;
            if (auto* q = std::get_if<abrv::Query>(&*item)) {
                try {
                    std::cout << abrv::to_string(monitor.verdict_at(q->time)) << std::endl;
                } catch (const abrv::QueryError& e) {
                    std::cerr << "error: line " << line_no << ": " << e.what() << "\n";
                    return RejectedQuery;
                }
                continue;
            }
            auto begin = std::chrono::steady_clock::now();
            monitor.observe(std::get<abrv::ObservationElement>(*item));
            ++elements;
            if (!opt.per_element) continue;
            abrv::Verdict v = monitor.verdict_at(monitor.last_sup());
            auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - begin);
            std::cout << elements << "," << abrv::to_string(monitor.last_sup()) << "," << abrv::to_string(v);
            if (opt.latency) std::cout << "," << ns.count();
            std::cout << std::endl;
        }
    } catch (const abrv::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return BadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Failure;
    }
    return Ok;
}

void write_observation(const std::vector<abrv::ObservationElement>& obs, const abrv::Tba& a,
                       const std::filesystem::path& path, const std::string& query) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const auto& e : obs) out << abrv::to_string(e, a) << "\n";
    out << "? " << query << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Assumption-based runtime verification of timed properties"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run_cmd = app.add_subcommand("run", "Monitor an observation stream");
    run_cmd->add_option("--assumption", run_opt.assumption, "Assumption automaton (JSON)")->required();
    run_cmd->add_option("--property", run_opt.property, "Property automaton (JSON)")->required();
    run_cmd->add_option("--neg-property", run_opt.negated_property, "Negated property automaton (JSON)")->required();
    run_cmd->add_option("--obs", run_opt.observations, "Observation stream file, '-' for standard input");
    run_cmd->add_flag("--per-element", run_opt.per_element, "Print index,time,verdict after every element");
    run_cmd->add_flag("--latency", run_opt.latency, "Append the update latency in nanoseconds (with --per-element)");

    auto* gen = app.add_subcommand("gen", "Generate benchmark instances");
    gen->require_subcommand(1);
    std::string out_dir;

    std::size_t k = 10;
    std::string lower = "50", upper = "100", bound = "675";
    auto* task = gen->add_subcommand("task-seq", "Task sequence with bounded response property");
    task->add_option("--k", k, "Number of tasks")->check(CLI::Range(2, 100000));
    task->add_option("--l", lower, "Lower delays, one value or k-1 comma-separated values");
    task->add_option("--u", upper, "Upper delays, one value or k-1 comma-separated values");
    task->add_option("--bound", bound, "Response bound B");
    task->add_option("--out", out_dir, "Output directory")->required();

    auto* belt = gen->add_subcommand("conveyor", "Conveyor belt with unobservable faults");
    belt->add_option("--out", out_dir, "Output directory")->required();

    std::size_t n = 1;
    auto* shop = gen->add_subcommand("jobshop", "Jobshop scheduling with n+1 jobs");
    shop->add_option("--n", n, "Number of jobs minus one")->check(CLI::Range(1, 11));
    shop->add_option("--out", out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Ok : BadInput;
    }

    if (*run_cmd) return run(run_opt);

    try {
        std::filesystem::path dir(out_dir);
        if (*task) {
            auto expand = [&](const std::string& csv) {
                auto v = parse_csv(csv);
                if (v.size() == 1) v.assign(k - 1, v.front());
                return v;
            };
            abrv::write_instance(abrv::task_sequence(k, expand(lower), expand(upper), abrv::parse_rational(bound, true)), dir);
        } else if (*belt) {
            auto inst = abrv::conveyor();
            abrv::write_instance(inst, dir);
            write_observation(abrv::conveyor_fault_observation(inst.assumption), inst.assumption,
                              dir / "fault_observation.obs", "18");
            write_observation(abrv::conveyor_ambiguous_observation(inst.assumption), inst.assumption,
                              dir / "ambiguous_observation.obs", "9");
        } else if (*shop) {
            auto inst = abrv::jobshop(n);
            abrv::write_instance(inst, dir);
            write_observation(abrv::jobshop_satisfying_observation(inst.assumption, n), inst.assumption,
                              dir / "satisfying_observation.obs", std::to_string(n));
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return BadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Failure;
    }
    return Ok;
}
