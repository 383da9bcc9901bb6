// {{{ MIT License
//
// Copyright 2026 The flingo-tools authors
//
// Permission is hereby granted, free of charge, to any person obtaining a copy
// of this software and associated documentation files (the "Software"), to
// deal in the Software without restriction, including without limitation the
// rights to use, copy, modify, merge, publish, distribute, sublicense, and/or
// sell copies of the Software, and to permit persons to whom the Software is
// furnished to do so, subject to the following conditions:
//
// The above copyright notice and this permission notice shall be included in
// all copies or substantial portions of the Software.
//
// THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
// IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
// FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
// AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
// LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
// FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS
// IN THE SOFTWARE.
//
// }}}

#include <flingo/difftest.hh>
#include <flingo/emitter.hh>
#include <flingo/parser.hh>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace Flingo;
using nlohmann::json;

enum Status : int {
    status_ok = 0,
    status_error = 1,
    status_budget = 2,
    status_internal = 3,
    status_unsat = 20,
};

struct Config {
    std::vector<std::string> inputs;
    Int min_int{-8};
    Int max_int{8};
    std::size_t models{0};
    std::string format{"text"};
    bool trace{false};
    bool readable{false};
    bool directives{false};
    bool pipeline{false};
    bool corpus{false};
    double budget{1e7};
    std::uint64_t seed{1};
    std::size_t count{100};
    std::vector<std::string> features;
    std::vector<int> disabled_steps;
};

auto read_input(std::string const &path) -> std::string {
    std::stringstream buf;
    if (path.empty() || path == "-") {
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in{path};
    if (!in) {
        throw Error("cannot open " + path);
    }
    buf << in.rdbuf();
    return buf.str();
}

auto signature(Config const &cfg) -> Signature {
    Signature sig;
    sig.min_int = cfg.min_int;
    sig.max_int = cfg.max_int;
    sig.validate();
    return sig;
}

auto engine_options(Config const &cfg) -> EngineOptions {
    EngineOptions opts;
    opts.budget = cfg.budget;
    return opts;
}

auto diff_options(Config const &cfg) -> DiffOptions {
    DiffOptions opts;
    opts.engine = engine_options(cfg);
    opts.pipeline.disabled_steps.insert(cfg.disabled_steps.begin(), cfg.disabled_steps.end());
    return opts;
}

auto json_models(std::vector<Valuation> const &ms) -> json { return json::parse(emit_models(ms, ModelFormat::json)); }

// {{{1 translate

auto cmd_translate(Config const &cfg) -> int {
    auto p = parse_program(read_input(cfg.inputs.empty() ? "-" : cfg.inputs.front()));
    auto sig = signature(cfg);
    PipelineOptions popts;
    popts.disabled_steps.insert(cfg.disabled_steps.begin(), cfg.disabled_steps.end());
    auto tr = translate(p, sig, popts);
    EmitOptions eopts;
    eopts.style = cfg.readable ? EmitOptions::Surrogates::readable : EmitOptions::Surrogates::numbered;
    eopts.domain_directives = cfg.directives;
    eopts.min_int = tr.signature.min_int;
    eopts.max_int = tr.signature.max_int;
    for (auto const &[x, b] : tr.signature.bounds) {
        eopts.min_int = std::min(eopts.min_int, b.lo);
        eopts.max_int = std::max(eopts.max_int, b.hi);
    }
    auto text = p.rules.empty() ? std::string{} : emit_clingcon(tr.program, eopts);
    if (cfg.format == "json") {
        json out{{"program", text}};
        if (cfg.trace) {
            auto &arr = out["trace"] = json::array();
            for (auto const &[name, prog] : tr.trace.snapshots) {
                arr.push_back({{"step", name}, {"program", render_program(prog)}});
            }
        }
        std::cout << out.dump() << "\n";
        return status_ok;
    }
    if (cfg.trace) {
        std::cout << render_trace(tr.trace);
        std::cout << "% [" << tr.trace.snapshots.size() << "] emitted\n";
    }
    std::cout << text;
    return status_ok;
}

// {{{1 solve

auto cmd_solve(Config const &cfg) -> int {
    auto p = parse_program(read_input(cfg.inputs.empty() ? "-" : cfg.inputs.front()));
    auto sig = signature(cfg);
    auto own = signature_of(p, sig.min_int, sig.max_int);
    sig.prop_vars = own.prop_vars;
    sig.int_vars = own.int_vars;
    std::vector<Valuation> models;
    if (cfg.pipeline) {
        auto tr = translate(p, sig);
        for (auto const &m : stable_models(tau_translate(tr.program, tr.signature), engine_options(cfg))) {
            models.emplace_back(project_model(m, sig));
        }
    }
    else {
        auto opts = engine_options(cfg);
        opts.engine = EngineOptions::Engine::exhaustive;
        models = stable_models(mu_translate(expand_abbreviations(p, sig), sig), opts);
    }
    std::sort(models.begin(), models.end(),
              [](auto const &a, auto const &b) { return model_line(a) < model_line(b); });
    models.erase(std::unique(models.begin(), models.end()), models.end());
    if (cfg.models > 0 && models.size() > cfg.models) {
        models.resize(cfg.models);
    }
    std::cout << emit_models(models, cfg.format == "json" ? ModelFormat::json : ModelFormat::text);
    return models.empty() ? status_unsat : status_ok;
}

// {{{1 check and fuzz

void print_report(std::string const &name, DiffReport const &rep) {
    std::cout << name << ": " << to_string(rep.verdict);
    if (!rep.note.empty()) {
        std::cout << " (" << rep.note << ")";
    }
    std::cout << "\n";
    if (rep.verdict != Verdict::mismatch) {
        return;
    }
    std::cout << "  expected:\n" << emit_models(rep.expected, ModelFormat::text);
    std::cout << "  actual:\n" << emit_models(rep.actual, ModelFormat::text);
    if (rep.reproducer) {
        std::cout << "  reproducer:\n" << render_program(*rep.reproducer);
    }
}

auto report_json(std::string const &name, DiffReport const &rep) -> json {
    json out{{"name", name},
             {"verdict", to_string(rep.verdict)},
             {"expected", json_models(rep.expected)},
             {"actual", json_models(rep.actual)}};
    if (rep.reproducer) {
        out["reproducer"] = render_program(*rep.reproducer);
    }
    if (!rep.trace.empty()) {
        out["trace"] = rep.trace;
    }
    return out;
}

auto cmd_check(Config const &cfg) -> int {
    std::vector<std::tuple<std::string, Program, Signature, DiffOptions>> cases;
    auto opts = diff_options(cfg);
    if (cfg.corpus) {
        for (auto const &e : curated_corpus()) {
            Signature sig;
            sig.min_int = e.min_int;
            sig.max_int = e.max_int;
            auto o = opts;
            o.engine.budget = std::max(o.engine.budget, e.budget);
            cases.emplace_back(e.name, parse_program(e.text), sig, o);
        }
    }
    auto inputs = cfg.inputs;
    if (inputs.empty() && !cfg.corpus) {
        inputs.emplace_back("-");
    }
    for (auto const &path : inputs) {
        cases.emplace_back(path == "-" ? "<stdin>" : path, parse_program(read_input(path)), signature(cfg), opts);
    }
    bool mismatch = false;
    bool skipped = false;
    auto arr = json::array();
    for (auto const &[name, prog, sig, o] : cases) {
        auto rep = diff_check(prog, sig, o);
        mismatch = mismatch || rep.verdict == Verdict::mismatch;
        skipped = skipped || rep.verdict == Verdict::budget_skip;
        if (cfg.format == "json") {
            arr.push_back(report_json(name, rep));
        }
        else {
            print_report(name, rep);
        }
    }
    if (cfg.format == "json") {
        std::cout << arr.dump() << "\n";
    }
    if (mismatch) {
        return status_error;
    }
    return skipped ? status_budget : status_ok;
}

auto parse_features(std::vector<std::string> const &names) -> unsigned {
    if (names.empty()) {
        return feature_all;
    }
    static std::map<std::string, unsigned> const table{
        {"sum", feature_sum},       {"sus", feature_sus},       {"min", feature_min},
        {"max", feature_max},       {"df", feature_df},         {"in", feature_in},
        {"assign", feature_assign}, {"conditional", feature_conditional},
        {"negation", feature_negation}, {"choice", feature_choice}, {"all", feature_all}};
    unsigned mask = 0;
    for (auto const &n : names) {
        auto it = table.find(n);
        if (it == table.end()) {
            throw Error("unknown feature: " + n);
        }
        mask |= it->second;
    }
    return mask;
}

auto cmd_fuzz(Config const &cfg) -> int {
    GenParams params;
    params.seed = cfg.seed;
    params.min_int = cfg.min_int;
    params.max_int = cfg.max_int;
    params.features = parse_features(cfg.features);
    auto sum = fuzz(params, cfg.count, diff_options(cfg));
    if (cfg.format == "json") {
        json out{{"count", cfg.count},
                 {"matches", sum.matches},
                 {"mismatches", sum.mismatches},
                 {"skipped", sum.skipped}};
        auto &arr = out["failures"] = json::array();
        for (auto const &f : sum.failures) {
            auto rep = report_json("seed " + std::to_string(f.seed), f.report);
            rep["program"] = render_program(f.program);
            arr.push_back(std::move(rep));
        }
        std::cout << out.dump() << "\n";
    }
    else {
        for (auto const &f : sum.failures) {
            print_report("seed " + std::to_string(f.seed), f.report);
        }
        std::cout << "fuzz: " << cfg.count << " programs, " << sum.matches << " match, " << sum.mismatches
                  << " mismatch, " << sum.skipped << " skipped\n";
    }
    return sum.mismatches > 0 ? status_error : status_ok;
}

} // namespace

auto main(int argc, char **argv) -> int {
    CLI::App app{"flingo: compile ground flingo programs to the clingcon fragment and check them against a reference "
                 "semantics.\nDefault integer bounds are [-8,8] (clingcon uses +-(2^30-1)); the reference engine "
                 "is exhaustive, so keep domains small."};
    app.require_subcommand(1);
    Config cfg;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--min-int", cfg.min_int, "smallest integer value")->capture_default_str();
        sub->add_option("--max-int", cfg.max_int, "largest integer value")->capture_default_str();
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
        sub->add_option("--budget", cfg.budget, "statespace budget of the reference engine")->capture_default_str();
        sub->add_option("--disable-step", cfg.disabled_steps, "skip a rewriting step (test hook)")
            ->group("")
            ->check(CLI::Range(1, 8));
    };

    auto *translate_cmd = app.add_subcommand("translate", "emit the clingcon translation");
    common(translate_cmd);
    translate_cmd->add_option("input", cfg.inputs, "program file (default: stdin)")->expected(0, 1);
    translate_cmd->add_flag("--trace", cfg.trace, "print the program after every step");
    translate_cmd->add_flag("--readable", cfg.readable, "descriptive surrogate names");
    translate_cmd->add_flag("--domain-directives", cfg.directives, "append recommended solver flags as a comment");

    auto *solve_cmd = app.add_subcommand("solve", "enumerate stable models with the reference semantics");
    common(solve_cmd);
    solve_cmd->add_option("input", cfg.inputs, "program file (default: stdin)")->expected(0, 1);
    solve_cmd->add_option("--models", cfg.models, "print at most N models (0: all)")->capture_default_str();
    solve_cmd->add_flag("--pipeline", cfg.pipeline, "solve the translated program instead and project its models");

    auto *check_cmd = app.add_subcommand("check", "compare reference and translated semantics");
    common(check_cmd);
    check_cmd->add_option("inputs", cfg.inputs, "program files (default: stdin)");
    check_cmd->add_flag("--corpus", cfg.corpus, "check the built-in curated corpus");

    auto *fuzz_cmd = app.add_subcommand("fuzz", "check random programs");
    common(fuzz_cmd);
    fuzz_cmd->add_option("--seed", cfg.seed, "first seed")->capture_default_str();
    fuzz_cmd->add_option("--count", cfg.count, "number of programs")->capture_default_str();
    fuzz_cmd->add_option("--features", cfg.features, "enabled constructs (default: all)")->delimiter(',');
    fuzz_cmd->get_option("--min-int")->default_str("-2");
    fuzz_cmd->get_option("--max-int")->default_str("2");

    try {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const &e) {
        auto ret = app.exit(e);
        return ret == 0 ? status_ok : status_error;
    }
    if (*fuzz_cmd) {
        if (fuzz_cmd->count("--min-int") == 0) {
            cfg.min_int = -2;
        }
        if (fuzz_cmd->count("--max-int") == 0) {
            cfg.max_int = 2;
        }
    }

    try {
        if (*translate_cmd) {
            return cmd_translate(cfg);
        }
        if (*solve_cmd) {
            return cmd_solve(cfg);
        }
        if (*check_cmd) {
            return cmd_check(cfg);
        }
        return cmd_fuzz(cfg);
    }
    catch (BudgetExceeded const &e) {
        std::cerr << "flingo: " << e.what() << "\n";
        return status_budget;
    }
    catch (ParseError const &e) {
        std::cerr << "flingo: " << e.what() << "\n";
        return status_error;
    }
    catch (SolverCrash const &e) {
        std::cerr << "flingo: " << e.what() << "\n" << e.diagnostics();
        return status_error;
    }
    catch (Error const &e) {
        std::cerr << "flingo: error: " << e.what() << "\n";
        return status_error;
    }
    catch (std::exception const &e) {
        std::cerr << "flingo: internal error: " << e.what() << "\n";
        return status_internal;
    }
}
