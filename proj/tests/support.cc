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

#include "support.hh"

#include <flingo/emitter.hh>
#include <flingo/parser.hh>
#include <flingo/rewriter.hh>

#include <algorithm>
#include <random>

namespace Flingo::Test {

namespace {

auto exhaustive() -> EngineOptions {
    EngineOptions opts;
    opts.engine = EngineOptions::Engine::exhaustive;
    opts.budget = 1e8;
    return opts;
}

auto lines(std::vector<Valuation> const &models) -> std::vector<std::string> {
    std::vector<std::string> out;
    for (auto const &m : models) {
        out.emplace_back(model_line(m));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

auto show(Valuation const &v) -> std::string { return "{" + model_line(v) + "}"; }

auto show(HtInterpretation const &i) -> std::string { return "<" + show(i.h) + "," + show(i.t) + ">"; }

class Random {
public:
    explicit Random(std::uint64_t seed)
    : rng_{seed} {}

    auto chance(double pr) -> bool { return std::bernoulli_distribution{pr}(rng_); }
    auto uniform(Int lo, Int hi) -> Int { return std::uniform_int_distribution<Int>{lo, hi}(rng_); }
    template <typename T> auto pick(std::vector<T> const &v) -> T const & {
        return v[static_cast<std::size_t>(uniform(0, static_cast<Int>(v.size()) - 1))];
    }

    //! A total valuation `t` and a random `h` with pairs(h) a subset of pairs(t); `keep` stays defined in h.
    auto interpretation(Signature const &sig, std::vector<Name> const &keep) -> HtInterpretation {
        HtInterpretation out;
        for (auto const &p : sig.prop_vars) {
            if (chance(0.5)) {
                out.t[p] = ExtValue::truth();
            }
        }
        for (auto const &x : sig.int_vars) {
            bool forced = std::find(keep.begin(), keep.end(), x) != keep.end();
            if (forced || chance(0.75)) {
                out.t[x] = ExtValue::integer(uniform(sig.min_int, sig.max_int));
            }
        }
        for (auto const &[x, val] : out.t) {
            bool forced = std::find(keep.begin(), keep.end(), x) != keep.end();
            if (forced || chance(0.5)) {
                out.h[x] = val;
            }
        }
        return out;
    }

private:
    std::mt19937_64 rng_;
};

auto fresh_signature(std::vector<Name> const &props, std::vector<Name> const &ints, Int lo, Int hi) -> Signature {
    Signature sig;
    sig.prop_vars.insert(props.begin(), props.end());
    sig.int_vars.insert(ints.begin(), ints.end());
    sig.min_int = lo;
    sig.max_int = hi;
    return sig;
}

auto random_product(Random &rnd, std::vector<Name> const &ints, Int lo, Int hi) -> ProductTerm {
    if (rnd.chance(0.3)) {
        return ProductTerm::constant(rnd.uniform(lo, hi));
    }
    static std::vector<Int> const coefs{1, 1, 2, -1, -2, 3};
    return ProductTerm::var(rnd.pick(ints), rnd.pick(coefs));
}

auto random_relation(Random &rnd) -> Relation {
    static std::vector<Relation> const rels{Relation::le, Relation::eq, Relation::ne,
                                            Relation::lt, Relation::gt, Relation::ge};
    return rnd.pick(rels);
}

//! Formulas over propositional atoms only.
auto random_prop_formula(Random &rnd, std::vector<Name> const &props, int depth) -> HtcFormula {
    if (depth == 0 || rnd.chance(0.4)) {
        return rnd.chance(0.1) ? Htc::falsity() : Htc::prop(rnd.pick(props));
    }
    auto a = random_prop_formula(rnd, props, depth - 1);
    auto b = random_prop_formula(rnd, props, depth - 1);
    switch (rnd.uniform(0, 3)) {
        case 0: return Htc::conj(a, b);
        case 1: return Htc::disj(a, b);
        case 2: return Htc::impl(a, b);
        default: return Htc::neg(a);
    }
}

auto random_strict_formula(Random &rnd, Signature const &sig, int depth) -> HtcFormula {
    std::vector<Name> props(sig.prop_vars.begin(), sig.prop_vars.end());
    std::vector<Name> ints(sig.int_vars.begin(), sig.int_vars.end());
    if (depth == 0 || rnd.chance(0.3)) {
        switch (rnd.uniform(0, 4)) {
            case 0: return Htc::prop(rnd.pick(props));
            case 1: return Htc::df(rnd.pick(ints));
            case 2: return Htc::falsity();
            default: {
                std::vector<HtcTerm> elems;
                auto n = rnd.uniform(0, 3);
                for (Int i = 0; i < n; ++i) {
                    auto s = random_product(rnd, ints, sig.min_int, sig.max_int);
                    if (rnd.chance(0.3)) {
                        elems.emplace_back(HtcConditional{s, std::nullopt, random_prop_formula(rnd, props, 2)});
                    }
                    else {
                        elems.emplace_back(s);
                    }
                }
                return Htc::linear(HtcAtom::Kind::sus, std::move(elems), random_relation(rnd),
                                   random_product(rnd, ints, sig.min_int, sig.max_int));
            }
        }
    }
    auto a = random_strict_formula(rnd, sig, depth - 1);
    auto b = random_strict_formula(rnd, sig, depth - 1);
    switch (rnd.uniform(0, 3)) {
        case 0: return Htc::conj(a, b);
        case 1: return Htc::disj(a, b);
        case 2: return Htc::impl(a, b);
        default: return Htc::neg(a);
    }
}

auto includes(std::set<Valuation> const &big, std::set<Valuation> const &small, std::string &witness) -> bool {
    for (auto const &m : small) {
        if (big.count(m) == 0) {
            witness = show(m);
            return false;
        }
    }
    return true;
}

auto includes(std::set<HtInterpretation> const &big, std::set<HtInterpretation> const &small, std::string &witness)
    -> bool {
    for (auto const &m : small) {
        if (big.count(m) == 0) {
            witness = show(m);
            return false;
        }
    }
    return true;
}

void record(PropertyReport &rep, Program const &p, std::string const &what) {
    ++rep.violations;
    if (rep.witness.empty()) {
        rep.witness = what + " in\n" + render_program(p);
    }
}

} // namespace

auto signature(Program const &p, Int min_int, Int max_int) -> Signature { return signature_of(p, min_int, max_int); }

auto reference_models(std::string const &text, Int min_int, Int max_int) -> std::vector<std::string> {
    auto p = parse_program(text);
    auto sig = signature_of(p, min_int, max_int);
    EngineOptions opts;
    opts.budget = 1e9;
    return lines(stable_models(mu_translate(expand_abbreviations(p, sig), sig), opts));
}

auto pipeline_models(std::string const &text, Int min_int, Int max_int, PipelineOptions const &opts)
    -> std::vector<std::string> {
    auto p = parse_program(text);
    auto sig = signature_of(p, min_int, max_int);
    auto tr = translate(p, sig, opts);
    std::vector<Valuation> out;
    for (auto const &m : stable_models(tau_translate(tr.program, tr.signature))) {
        out.emplace_back(project_model(m, sig));
    }
    return lines(out);
}

auto stable_set(HtcTheory const &theory) -> std::set<Valuation> {
    std::set<Valuation> out;
    for (auto const &m : stable_models(theory, exhaustive())) {
        out.insert(defined_pairs(m));
    }
    return out;
}

auto ht_set(HtcTheory const &theory) -> std::set<HtInterpretation> {
    std::set<HtInterpretation> out;
    for (auto const &i : ht_models(theory, exhaustive())) {
        out.insert({defined_pairs(i.h), defined_pairs(i.t)});
    }
    return out;
}

auto star(Program const &p) -> Program {
    auto out = p;
    auto fix = [](Atom &a) {
        if (auto *ca = std::get_if<ConstraintAtom>(&a); ca != nullptr && ca->op == Op::sum) {
            ca->op = Op::sus;
        }
    };
    for (auto &r : out.rules) {
        if (r.head) {
            fix(*r.head);
        }
        for (auto &l : r.body) {
            fix(l.atom);
        }
    }
    return out;
}

auto int_choice_facts(Signature const &sig) -> Program {
    Program out;
    for (auto const &x : sig.int_vars) {
        out.rules.emplace_back(fact(catom(Op::sum, {ProductTerm::var(x)}, Relation::eq, ProductTerm::var(x))));
    }
    return out;
}

auto concat(Program const &a, Program const &b) -> Program {
    auto out = a;
    out.rules.insert(out.rules.end(), b.rules.begin(), b.rules.end());
    return out;
}

auto random_cl_program(std::uint64_t seed, std::size_t prop_vars, std::size_t int_vars, std::size_t rules) -> Program {
    GenParams params;
    params.seed = seed;
    params.prop_vars = prop_vars;
    params.int_vars = int_vars;
    params.rules = rules;
    params.min_int = -2;
    params.max_int = 2;
    params.features = feature_sum | feature_negation | feature_choice;
    return random_program(params);
}

auto check_sum_sus_agreement(std::uint64_t seed, std::size_t count, bool conditional) -> PropertyReport {
    PropertyReport rep;
    Random rnd{seed};
    std::vector<Name> const props{"a", "b", "c"};
    std::vector<Name> const ints{"x", "y", "z"};
    auto sig = fresh_signature(props, ints, -3, 3);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<FlingoTerm> elems;
        auto n = rnd.uniform(0, 3);
        for (Int k = 0; k < n; ++k) {
            auto s = random_product(rnd, ints, sig.min_int, sig.max_int);
            if (conditional && rnd.chance(0.4)) {
                std::vector<Literal> c;
                auto m = rnd.uniform(1, 2);
                for (Int j = 0; j < m; ++j) {
                    static std::vector<Negation> const negs{Negation::none, Negation::none, Negation::single,
                                                            Negation::dbl};
                    c.emplace_back(lit(prop(rnd.pick(props)), rnd.pick(negs)));
                }
                elems.emplace_back(cond(s, std::move(c)));
            }
            else {
                elems.emplace_back(s);
            }
        }
        auto c1 = catom(Op::sum, elems, random_relation(rnd), random_product(rnd, ints, sig.min_int, sig.max_int));
        auto c2 = c1;
        c2.op = Op::sus;
        auto in = rnd.interpretation(sig, int_vars_of(c1));
        bool s1 = satisfies(in.h, in.t, mu_atom(c1, sig), sig);
        bool s2 = satisfies(in.h, in.t, mu_atom(c2, sig), sig);
        ++rep.cases;
        rep.premises += s1 ? 1 : 0;
        if (s1 != s2) {
            ++rep.violations;
            if (rep.witness.empty()) {
                rep.witness = to_string(c1) + " at " + show(in);
            }
        }
    }
    return rep;
}

auto check_cl_ht_in_fl(std::uint64_t seed, std::size_t count) -> PropertyReport {
    PropertyReport rep;
    for (std::size_t i = 0; i < count; ++i) {
        auto p = random_cl_program(seed + i, 2, 2, 3);
        auto sig = signature(p, -2, 2);
        auto cl = ht_set(tau_translate(p, sig));
        auto fl = ht_set(mu_translate(star(p), sig));
        ++rep.cases;
        rep.premises += cl.size();
        std::string w;
        if (!includes(fl, cl, w)) {
            record(rep, p, "ht-model of cl(P) missing in fl(P*): " + w);
        }
    }
    return rep;
}

auto check_fl_total_stable_in_cl(std::uint64_t seed, std::size_t count) -> PropertyReport {
    PropertyReport rep;
    for (std::size_t i = 0; i < count; ++i) {
        auto p = random_cl_program(seed + i, 2, 2, 3);
        auto sig = signature(p, -2, 2);
        auto cl = stable_set(tau_translate(p, sig));
        std::set<Valuation> total;
        for (auto const &m : stable_set(mu_translate(star(p), sig))) {
            if (std::all_of(sig.int_vars.begin(), sig.int_vars.end(), [&](auto const &x) { return m.count(x) != 0; })) {
                total.insert(m);
            }
        }
        ++rep.cases;
        rep.premises += total.size();
        std::string w;
        if (!includes(cl, total, w)) {
            record(rep, p, "stable model of fl(P*) missing in cl(P): " + w);
        }
    }
    return rep;
}

auto check_int_choice_coincidence(std::uint64_t seed, std::size_t count) -> PropertyReport {
    PropertyReport rep;
    for (std::size_t i = 0; i < count; ++i) {
        auto p = random_cl_program(seed + i, 2, 2, 3);
        auto sig = signature(p, -2, 2);
        auto f = int_choice_facts(sig);
        auto cl = tau_translate(p, sig);
        auto fl_star = mu_translate(concat(star(p), f), sig);
        auto fl = mu_translate(concat(p, f), sig);
        ++rep.cases;
        auto ht_cl = ht_set(cl);
        rep.premises += ht_cl.size();
        if (ht_cl != ht_set(fl_star) || ht_cl != ht_set(fl)) {
            record(rep, p, "ht-models differ");
        }
        else if (stable_set(cl) != stable_set(fl_star) || stable_set(cl) != stable_set(fl)) {
            record(rep, p, "stable models differ");
        }
    }
    return rep;
}

auto check_integer_monotonicity(std::uint64_t seed, std::size_t count) -> PropertyReport {
    PropertyReport rep;
    for (std::size_t i = 0; i < count; ++i) {
        auto p = random_cl_program(seed + i, 2, 2, 3);
        auto f = random_cl_program(seed + i + 0x9e3779b97f4a7c15ULL, 0, 2, 2);
        auto pf = concat(p, f);
        auto sig = signature(pf, -2, 2);
        auto big = stable_set(tau_translate(pf, sig));
        auto small = stable_set(tau_translate(p, sig));
        ++rep.cases;
        rep.premises += big.size();
        std::string w;
        if (!includes(small, big, w)) {
            record(rep, pf, "stable model of cl(P+F) missing in cl(P): " + w);
        }
    }
    return rep;
}

auto check_strict_persistence(std::uint64_t seed, std::size_t count) -> PropertyReport {
    PropertyReport rep;
    Random rnd{seed};
    auto sig = fresh_signature({"a", "b"}, {"x", "y"}, -2, 2);
    for (std::size_t i = 0; i < count; ++i) {
        auto f = random_strict_formula(rnd, sig, 3);
        auto in = rnd.interpretation(sig, {});
        ++rep.cases;
        if (satisfies(in.h, in.t, f, sig)) {
            ++rep.premises;
            if (!satisfies(in.t, in.t, f, sig)) {
                ++rep.violations;
                if (rep.witness.empty()) {
                    rep.witness = to_string(f) + " at " + show(in);
                }
            }
        }
    }
    return rep;
}

} // namespace Flingo::Test
