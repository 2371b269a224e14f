// slc — check, run, inspect, and enumerate syntactic theories.
//
// Exit codes: 0 success, 1 any diagnosed error, 2 step-limit reached.

#include <cstdio>
#include <functional>
#include <iostream>
#include <pthread.h>
#include <sstream>

#include "CLI11.hpp"

#include "sl/corpus.hpp"
#include "sl/dump.hpp"
#include "sl/engine.hpp"
#include "sl/parser.hpp"

namespace {

// Deeply recursive auxiliary functions are legitimate (the recursion
// cutoff defaults to 100000 frames), so all real work runs on a thread
// with a large stack instead of the default one.
constexpr size_t kWorkerStack = 512u << 20;

struct WorkerBox {
    std::function<int()> fn;
    int result = 1;
};

extern "C" void* worker_entry(void* p) {
    auto* box = static_cast<WorkerBox*>(p);
    box->result = box->fn();
    return nullptr;
}

int run_on_big_stack(std::function<int()> fn) {
    WorkerBox box{std::move(fn), 1};
    pthread_attr_t attr;
    if (pthread_attr_init(&attr) != 0) return box.fn();
    pthread_attr_setstacksize(&attr, kWorkerStack);
    pthread_t tid;
    if (pthread_create(&tid, &attr, worker_entry, &box) != 0) {
        pthread_attr_destroy(&attr);
        return box.fn();
    }
    pthread_join(tid, nullptr);
    pthread_attr_destroy(&attr);
    return box.result;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    return sl::read_text_file(path);
}

/// Parses and checks a specification file; on any diagnostic, renders it
/// to stderr and returns nullopt. Warnings render but do not fail.
std::optional<sl::CheckResult> load_spec(const std::string& path) {
    std::string src = sl::read_text_file(path);
    std::vector<sl::Diagnostic> warnings;
    sl::Spec spec;
    try {
        spec = sl::parse_spec(src, &warnings);
    } catch (const sl::ParseError& e) {
        for (const auto& w : warnings) std::cerr << sl::render_diag(w, path) << "\n";
        std::cerr << sl::render_diag(e.diag, path) << "\n";
        return std::nullopt;
    }
    for (const auto& w : warnings) std::cerr << sl::render_diag(w, path) << "\n";
    sl::CheckResult res = sl::check_spec(std::move(spec));
    if (!res.ok()) {
        for (const auto& d : res.diags) std::cerr << sl::render_diag(d, path) << "\n";
        return std::nullopt;
    }
    return res;
}

/// Parses the input term against the specification's start type.
sl::TermPtr load_term(const sl::CheckedSpec& checked, const std::string& path) {
    std::string src = read_input(path);
    const sl::Signature& sig = checked.spec.sig;
    sl::ObjTypePtr expected;
    if (!sig.start_type.empty()) expected = sl::ObjType::named(sig.start_type);
    try {
        return sl::parse_term(sig, src, expected);
    } catch (const sl::ParseError& e) {
        std::cerr << sl::render_diag(e.diag, path == "-" ? "<stdin>" : path) << "\n";
        return nullptr;
    }
}

int cmd_check(const std::string& spec_path) {
    auto res = load_spec(spec_path);
    if (!res) return 1;
    const sl::CheckedSpec& c = res->checked;
    for (const auto& d : c.spec.dynamics)
        std::cout << "dynamic " << d.name << " : "
                  << sl::type_to_string(c.dynamic_types.at(d.name)) << "\n";
    for (const auto& cd : c.spec.contexts)
        std::cout << "context " << cd.name << " : "
                  << sl::context_type_to_string(c.context_types.at(cd.name)) << "\n";
    for (size_t i = 0; i < c.spec.rules.size(); ++i)
        std::cout << "rule " << c.spec.rules[i].name << " : "
                  << sl::type_to_string(c.rule_subjects[i]) << "\n";
    return 0;
}

int cmd_dump(const std::string& spec_path) {
    auto res = load_spec(spec_path);
    if (!res) return 1;
    sl::CompiledSpec cs = sl::compile_spec(std::move(res->checked));
    std::cout << sl::dump_spec(cs);
    return 0;
}

int cmd_run(const std::string& spec_path, const std::string& term_path, std::uint64_t seed,
            int max_steps, bool quiet) {
    auto res = load_spec(spec_path);
    if (!res) return 1;
    sl::CompiledSpec cs = sl::compile_spec(std::move(res->checked));
    sl::TermPtr t = load_term(cs.checked, term_path);
    if (!t) return 1;
    sl::Engine engine(cs);
    sl::RunOptions opts;
    opts.seed = seed;
    opts.max_steps = max_steps;
    sl::Trace trace = engine.evaluate(t, opts);
    if (quiet) {
        const sl::TermPtr& last = trace.steps.empty() ? trace.initial : trace.steps.back().term;
        std::cout << sl::pretty_term(last) << "\n";
    } else {
        std::cout << sl::render_trace(trace);
    }
    if (trace.hit_step_limit) {
        std::cerr << "error: stopped after " << max_steps << " steps\n";
        return 2;
    }
    return 0;
}

int cmd_enumerate(const std::string& spec_path, const std::string& term_path,
                  std::uint64_t seed) {
    auto res = load_spec(spec_path);
    if (!res) return 1;
    sl::CompiledSpec cs = sl::compile_spec(std::move(res->checked));
    sl::TermPtr t = load_term(cs.checked, term_path);
    if (!t) return 1;
    sl::Engine engine(cs);
    sl::RunOptions opts;
    opts.seed = seed;
    for (const auto& s : engine.enumerate_steps(t, opts))
        std::cout << sl::pretty_term(s.term) << "  [" << s.label << "]\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"compiler and execution engine for syntactic theories"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string term_path;
    std::uint64_t seed = 0;
    int max_steps = 10000;
    bool quiet = false;

    CLI::App* check = app.add_subcommand("check", "type-check a specification");
    check->add_option("spec", spec_path, "specification file")->required();

    CLI::App* dump = app.add_subcommand("dump", "print the compiled matching automata");
    dump->add_option("spec", spec_path, "specification file")->required();

    CLI::App* run = app.add_subcommand("run", "evaluate a term, printing the trace");
    run->add_option("spec", spec_path, "specification file")->required();
    run->add_option("term", term_path, "term file ('-' for stdin)")->required();
    run->add_option("--seed", seed, "random seed for rule-choice order");
    run->add_option("--max-steps", max_steps, "step cutoff before giving up");
    run->add_flag("--quiet", quiet, "print only the final term");

    CLI::App* enumerate = app.add_subcommand("enumerate", "print all one-step successors");
    enumerate->add_option("spec", spec_path, "specification file")->required();
    enumerate->add_option("term", term_path, "term file ('-' for stdin)")->required();
    enumerate->add_option("--seed", seed, "random seed for exploration order");

    CLI11_PARSE(app, argc, argv);

    std::function<int()> work;
    if (check->parsed()) {
        work = [&] { return cmd_check(spec_path); };
    } else if (dump->parsed()) {
        work = [&] { return cmd_dump(spec_path); };
    } else if (run->parsed()) {
        work = [&] { return cmd_run(spec_path, term_path, seed, max_steps, quiet); };
    } else {
        work = [&] { return cmd_enumerate(spec_path, term_path, seed); };
    }

    return run_on_big_stack([&]() -> int {
        try {
            return work();
        } catch (const sl::EvalError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    });
}
