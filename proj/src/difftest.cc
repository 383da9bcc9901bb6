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

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

namespace Flingo {

auto project_model(Valuation const &m, Signature const &original) -> Valuation {
    Valuation out;
    auto copy = [&](Name const &x) {
        auto it = m.find(x);
        out.emplace(x, it == m.end() ? ExtValue::undef() : it->second);
    };
    for (auto const &x : original.prop_vars) {
        copy(x);
    }
    for (auto const &x : original.int_vars) {
        copy(x);
        // compiled models give every variable a value and track definedness in def(x)
        if (auto it = m.find(def_name(x)); it != m.end() && !it->second.is_truth()) {
            out[x] = ExtValue::undef();
        }
    }
    return out;
}

auto to_string(Verdict v) -> char const * {
    switch (v) {
        case Verdict::match: return "match";
        case Verdict::mismatch: return "mismatch";
        case Verdict::budget_skip: return "budget-skip";
    }
    return "";
}

namespace {

auto full_signature(Program const &p, Signature const &sig) -> Signature {
    auto own = signature_of(p, sig.min_int, sig.max_int);
    auto out = sig;
    out.prop_vars.insert(own.prop_vars.begin(), own.prop_vars.end());
    out.int_vars.insert(own.int_vars.begin(), own.int_vars.end());
    return out;
}

auto as_set(std::vector<Valuation> ms) -> std::vector<Valuation> {
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    return ms;
}

auto compare(Program const &p, Signature const &sig, DiffOptions const &opts) -> DiffReport {
    DiffReport rep;
    auto orig = full_signature(p, sig);
    try {
        auto ref_opts = opts.engine;
        ref_opts.engine = EngineOptions::Engine::exhaustive;
        auto theory = mu_translate(expand_abbreviations(p, orig), orig);
        for (auto const &m : stable_models(theory, ref_opts)) {
            rep.expected.emplace_back(project_model(m, orig));
        }
        rep.expected = as_set(std::move(rep.expected));

        auto tr = translate(p, orig, opts.pipeline);
        for (auto const &m : stable_models(tau_translate(tr.program, tr.signature), opts.engine)) {
            rep.actual.emplace_back(project_model(m, orig));
        }
        rep.actual = as_set(std::move(rep.actual));
    }
    catch (BudgetExceeded const &e) {
        rep.verdict = Verdict::budget_skip;
        rep.note = e.what();
        return rep;
    }
    rep.verdict = rep.expected == rep.actual ? Verdict::match : Verdict::mismatch;
    if (rep.verdict == Verdict::mismatch) {
        rep.trace = render_trace(translate(p, orig, opts.pipeline).trace);
    }
    return rep;
}

} // namespace

auto minimize_rules(Program const &p, std::function<bool(Program const &)> const &keep) -> Program {
    auto cur = p;
    std::size_t chunk = std::max<std::size_t>(cur.rules.size() / 2, 1);
    while (true) {
        bool removed = false;
        for (std::size_t i = 0; i < cur.rules.size() && cur.rules.size() > 1;) {
            auto cand = cur;
            auto end = std::min(i + chunk, cand.rules.size());
            cand.rules.erase(cand.rules.begin() + static_cast<std::ptrdiff_t>(i),
                             cand.rules.begin() + static_cast<std::ptrdiff_t>(end));
            if (keep(cand)) {
                cur = std::move(cand);
                removed = true;
            }
            else {
                i += chunk;
            }
        }
        if (chunk == 1 && !removed) {
            return cur;
        }
        if (!removed) {
            chunk = std::max<std::size_t>(chunk / 2, 1);
        }
    }
}

auto diff_check(Program const &p, Signature const &sig, DiffOptions const &opts) -> DiffReport {
    auto rep = compare(p, sig, opts);
    if (rep.verdict == Verdict::mismatch && opts.minimize) {
        rep.reproducer = minimize_rules(p, [&](Program const &q) {
            // the original domain is kept so that variables dropped with their rules still count
            return compare(q, sig, opts).verdict == Verdict::mismatch;
        });
    }
    return rep;
}

// {{{1 random programs

namespace {

class Generator {
public:
    explicit Generator(GenParams const &params)
    : par_{params}
    , rng_{params.seed} {
        static char const *const props[] = {"a", "b", "c", "d", "e", "f"};
        static char const *const ints[] = {"x", "y", "z", "w", "v", "u"};
        for (std::size_t i = 0; i < std::min<std::size_t>(par_.prop_vars, 6); ++i) {
            props_.emplace_back(props[i]);
        }
        for (std::size_t i = 0; i < std::min<std::size_t>(par_.int_vars, 6); ++i) {
            ints_.emplace_back(ints[i]);
        }
        for (auto op : {feature_sum, feature_sus, feature_min, feature_max}) {
            if (has(op)) {
                ops_.push_back(op == feature_sum ? Op::sum : op == feature_sus ? Op::sus : op == feature_min ? Op::min : Op::max);
            }
        }
    }

    auto program() -> Program {
        Program p;
        for (std::size_t i = 0; i < par_.rules; ++i) {
            p.rules.emplace_back(make_rule());
        }
        return p;
    }

private:
    [[nodiscard]] auto has(unsigned f) const -> bool { return (par_.features & f) != 0; }
    auto chance(double pr) -> bool { return std::bernoulli_distribution{pr}(rng_); }
    auto uniform(Int lo, Int hi) -> Int { return std::uniform_int_distribution<Int>{lo, hi}(rng_); }
    template <typename T> auto pick(std::vector<T> const &v) -> T const & {
        return v[static_cast<std::size_t>(uniform(0, static_cast<Int>(v.size()) - 1))];
    }

    auto constant() -> ProductTerm { return ProductTerm::constant(uniform(par_.min_int, par_.max_int)); }
    auto product() -> ProductTerm {
        if (ints_.empty() || chance(0.3)) {
            return constant();
        }
        static std::vector<Int> const coefs{1, 1, 1, -1, 2};
        return ProductTerm::var(pick(ints_), pick(coefs));
    }
    auto negation() -> Negation {
        if (!has(feature_negation) || chance(0.6)) {
            return Negation::none;
        }
        return chance(0.7) ? Negation::single : Negation::dbl;
    }
    auto term() -> FlingoTerm {
        auto s = product();
        if (has(feature_conditional) && !props_.empty() && chance(0.3)) {
            std::vector<Literal> c{lit(prop(pick(props_)), negation())};
            return ConditionalTerm{s, std::move(c)};
        }
        return s;
    }
    auto relation() -> Relation {
        static std::vector<Relation> const rels{Relation::le, Relation::eq, Relation::ne,
                                                Relation::lt, Relation::gt, Relation::ge};
        return pick(rels);
    }
    auto fun_atom() -> ConstraintAtom {
        std::vector<FlingoTerm> elems;
        auto n = uniform(1, static_cast<Int>(std::max<std::size_t>(par_.max_elements, 1)));
        for (Int i = 0; i < n; ++i) {
            elems.emplace_back(term());
        }
        auto rhs = !ints_.empty() && chance(0.3) ? ProductTerm::var(pick(ints_)) : constant();
        return catom(pick(ops_), std::move(elems), relation(), rhs);
    }
    auto body_literal() -> Literal {
        if (props_.empty() || (!ops_.empty() && chance(0.5))) {
            if (has(feature_df) && !ints_.empty() && chance(0.2)) {
                return lit(df_atom(pick(ints_)), negation());
            }
            if (!ops_.empty()) {
                return lit(fun_atom(), negation());
            }
        }
        return lit(prop(props_.empty() ? "a" : pick(props_)), negation());
    }
    auto make_rule() -> Rule {
        std::vector<Literal> body;
        auto n = uniform(0, static_cast<Int>(par_.max_body));
        for (Int i = 0; i < n; ++i) {
            body.emplace_back(body_literal());
        }
        auto k = uniform(0, 99);
        if (k < 10) {
            return constraint(std::move(body));
        }
        if (k < 25 && has(feature_choice) && !props_.empty()) {
            return choice(pick(props_), std::move(body));
        }
        if (k < 45 && !props_.empty()) {
            return rule(prop(pick(props_)), std::move(body));
        }
        if (!ints_.empty() && k < 55 && has(feature_in)) {
            auto lo = uniform(par_.min_int, par_.max_int);
            auto hi = uniform(lo, par_.max_int);
            return rule(in_atom(ProductTerm::constant(lo), ProductTerm::constant(hi), pick(ints_)), std::move(body));
        }
        if (!ints_.empty() && k < 65 && has(feature_assign) && !ops_.empty()) {
            auto a = fun_atom();
            return rule(assign_atom(a.op, a.elements, ProductTerm::var(pick(ints_))), std::move(body));
        }
        if (ops_.empty()) {
            return constraint(std::move(body));
        }
        return rule(fun_atom(), std::move(body));
    }

    GenParams par_;
    std::mt19937_64 rng_;
    std::vector<Name> props_;
    std::vector<Name> ints_;
    std::vector<Op> ops_;
};

} // namespace

auto random_program(GenParams const &params) -> Program { return Generator{params}.program(); }

auto fuzz(GenParams params, std::size_t count, DiffOptions const &opts) -> FuzzSummary {
    FuzzSummary sum;
    auto base = params.seed;
    for (std::size_t i = 0; i < count; ++i) {
        params.seed = base + i;
        auto p = random_program(params);
        Signature sig;
        sig.min_int = params.min_int;
        sig.max_int = params.max_int;
        auto rep = diff_check(p, sig, opts);
        switch (rep.verdict) {
            case Verdict::match: ++sum.matches; break;
            case Verdict::budget_skip: ++sum.skipped; break;
            case Verdict::mismatch:
                ++sum.mismatches;
                sum.failures.push_back({params.seed, std::move(p), std::move(rep)});
                break;
        }
    }
    return sum;
}

// {{{1 curated corpus

auto curated_corpus() -> std::vector<CorpusEntry> {
    return {
        {"choice-guarded-sum", "{a}.\n&sum{x} = 1 :- a.\n", -5, 5},
        {"sum-body-undefined", "a :- &sum{x : p} = 0.\np.\n", -8, 8},
        {"sus-body-undefined", "a :- &sus{x : p} = 0.\np.\n", -8, 8},
        {"assign-both-given", "&sus{x; y} =: z.\n&sum{x} = 1.\n&sum{y} = 2.\n", -8, 8},
        {"assign-one-given", "&sus{x; y} =: z.\n&sum{x} = 1.\n", -8, 8},
        {"assign-result-given", "&sus{x; y} =: z.\n&sum{x} = 1.\n&sum{z} = 5.\n", -8, 8},
        {"nonmonotonic-sus", "&sum{x} = 1 :- &sus{y} = 1.\n", -8, 8},
        {"nonmonotonic-sus-fact", "&sum{x} = 1 :- &sus{y} = 1.\n&sus{y} = 1.\n", -8, 8},
        {"in-range", "&in{1..3} =: x.\n", -4, 4},
        {"in-guarded", "{a}.\n&in{0..2} =: x :- a.\n&in{x..2} =: y.\n", -3, 3},
        {"conditional-head", "{p}.\n&sum{x : p; 1} = 2.\n", -3, 3},
        {"conditional-sus-head", "{p}.\n&sum{x} = 1.\n&sus{x : p; y} = 1.\n", -3, 3},
        {"df-body", "{a}.\n&sum{x} = 1 :- a.\nb :- &df{x}.\nc :- not &df{x}.\n", -3, 3},
        {"max-body", "&in{0..2} =: x.\n&in{-1..1} =: y.\na :- &max{x; y} >= 2.\n", -3, 3},
        {"max-head", "&in{0..2} =: x.\n&max{x; 1} = 2.\n", -3, 3},
        {"min-body", "{a}.\n&in{0..2} =: x :- a.\nb :- &min{x; 1} <= 0.\n", -3, 3},
        {"min-head", "&in{0..2} =: x.\n&in{0..2} =: y.\n&min{x; y} >= 1.\n", -3, 3},
        {"sum-assign-conditional", "{p}.\n{q}.\n&sum{1 : p; 2 : q} =: z.\n", -4, 4},
        {"double-negation-choice", "a :- not not a.\n&sum{x} = 2 :- a.\n", -3, 3},
        {"tariff",
         "sales(steel,eu).\n"
         "sales(aircraft,eu).\n"
         "sales(food,eu).\n"
         "&sus{tariff(steel,eu)} = 0.\n"
         "&sum{tariff(aircraft,eu)} = 25.\n"
         "&sum{tariff(steel,eu)} = 15 :- sales(steel,eu), not &sus{tariff(steel,eu)} != 15.\n"
         "&sum{tariff(aircraft,eu)} = 15 :- sales(aircraft,eu), not &sus{tariff(aircraft,eu)} != 15.\n"
         "&sum{tariff(food,eu)} = 15 :- sales(food,eu), not &sus{tariff(food,eu)} != 15.\n"
         "&sum{tariff(steel,eu) : sales(steel,eu); tariff(aircraft,eu) : sales(aircraft,eu);"
         " tariff(food,eu) : sales(food,eu)} =: taxincome.\n",
         0, 40, 1e9},
    };
}

// {{{1 external solver

SolverCrash::SolverCrash(int status, std::string diagnostics)
: Error("external solver failed with status " + std::to_string(status))
, status_{status}
, diagnostics_{std::move(diagnostics)} {}

auto parse_solver_output(std::string const &out) -> std::vector<Valuation> {
    std::vector<Valuation> models;
    std::istringstream in{out};
    std::string line;
    bool expect_atoms = false;
    while (std::getline(in, line)) {
        if (line.rfind("Answer:", 0) == 0) {
            models.emplace_back();
            expect_atoms = true;
            continue;
        }
        if (models.empty()) {
            continue;
        }
        bool assignment = line.rfind("Assignment:", 0) == 0;
        if (!expect_atoms && !assignment) {
            continue;
        }
        std::istringstream toks{assignment ? line.substr(11) : line};
        std::string tok;
        while (toks >> tok) {
            auto eq = tok.rfind('=');
            if (assignment && eq != std::string::npos) {
                models.back()[tok.substr(0, eq)] = ExtValue::integer(std::stoll(tok.substr(eq + 1)));
            }
            else if (!assignment) {
                models.back()[tok] = ExtValue::truth();
            }
        }
        expect_atoms = false;
    }
    return models;
}

auto run_external_solver(std::string const &text, Int min_int, Int max_int) -> std::optional<std::vector<Valuation>> {
    char const *solver = std::getenv("FLINGO_CLINGCON");
    if (solver == nullptr || *solver == '\0') {
        return std::nullopt;
    }
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path();
    auto stem = "flingo-" + std::to_string(std::random_device{}());
    auto input = dir / (stem + ".lp");
    auto errors = dir / (stem + ".err");
    std::ofstream{input} << text;
    auto cmd = std::string{solver} + " --min-int=" + std::to_string(min_int) + " --max-int=" +
               std::to_string(max_int) + " 0 < '" + input.string() + "' 2> '" + errors.string() + "'";
    std::string out;
    int status = -1;
    if (FILE *pipe = popen(cmd.c_str(), "r"); pipe != nullptr) {
        char buf[4096];
        std::size_t n = 0;
        while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) {
            out.append(buf, n);
        }
        status = pclose(pipe);
    }
    std::stringstream diag;
    diag << std::ifstream{errors}.rdbuf();
    std::error_code ec;
    fs::remove(input, ec);
    fs::remove(errors, ec);
    int code = status != -1 && WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (code != 0 && code != 10 && code != 20 && code != 30) {
        throw SolverCrash(code, diag.str());
    }
    return parse_solver_output(out);
}

} // namespace Flingo
