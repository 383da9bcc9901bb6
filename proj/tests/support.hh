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

#ifndef FLINGO_TESTS_SUPPORT_HH
#define FLINGO_TESTS_SUPPORT_HH

#include <flingo/difftest.hh>
#include <flingo/htc.hh>

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace Flingo::Test {

auto signature(Program const &p, Int min_int, Int max_int) -> Signature;

//! Model lines of the stable models of fl(P) after expanding abbreviations, sorted.
auto reference_models(std::string const &text, Int min_int, Int max_int) -> std::vector<std::string>;

//! Model lines of the projected stable models of the compiled program, sorted.
auto pipeline_models(std::string const &text, Int min_int, Int max_int, PipelineOptions const &opts = {})
    -> std::vector<std::string>;

//! Exhaustive stable models in the defined-pairs view.
auto stable_set(HtcTheory const &theory) -> std::set<Valuation>;
//! Exhaustive ht-models in the defined-pairs view.
auto ht_set(HtcTheory const &theory) -> std::set<HtInterpretation>;

//! Replaces `&sum` by `&sus`.
auto star(Program const &p) -> Program;
//! Facts `&sum{x} = x` for every integer variable of `sig`.
auto int_choice_facts(Signature const &sig) -> Program;
auto concat(Program const &a, Program const &b) -> Program;

//! A random clingcon-fragment program: propositional and plain `&sum` atoms.
auto random_cl_program(std::uint64_t seed, std::size_t prop_vars, std::size_t int_vars, std::size_t rules) -> Program;

struct PropertyReport {
    std::size_t cases{0};
    std::size_t violations{0};
    //! Cases in which the premise of an implication held.
    std::size_t premises{0};
    std::string witness;
};

//! Equivalence of mu(&sum ...) and mu(&sus ...) when all integer variables of the atoms are defined in h.
//!
//! With `conditional` set, elements may carry propositional conditions.
auto check_sum_sus_agreement(std::uint64_t seed, std::size_t count, bool conditional) -> PropertyReport;
//! ht-models of cl(P) are ht-models of fl(P*).
auto check_cl_ht_in_fl(std::uint64_t seed, std::size_t count) -> PropertyReport;
//! Stable models of fl(P*) without undefined integers are stable models of cl(P).
auto check_fl_total_stable_in_cl(std::uint64_t seed, std::size_t count) -> PropertyReport;
//! cl(P), fl(P* + F) and fl(P + F) have the same ht- and stable models.
auto check_int_choice_coincidence(std::uint64_t seed, std::size_t count) -> PropertyReport;
//! Stable models of cl(P + F) are stable models of cl(P) if F has no propositional variables.
auto check_integer_monotonicity(std::uint64_t seed, std::size_t count) -> PropertyReport;
//! Persistence of formulas over propositional, `&df` and `&sus` atoms.
auto check_strict_persistence(std::uint64_t seed, std::size_t count) -> PropertyReport;

} // namespace Flingo::Test

#endif // FLINGO_TESTS_SUPPORT_HH
