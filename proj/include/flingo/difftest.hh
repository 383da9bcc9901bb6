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

#ifndef FLINGO_DIFFTEST_HH
#define FLINGO_DIFFTEST_HH

#include <flingo/htc.hh>
#include <flingo/rewriter.hh>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace Flingo {

//! Restricts a model to the symbols of `original`; missing symbols become undefined.
//!
//! An integer variable whose `def(x)` atom is present but false is undefined.
auto project_model(Valuation const &m, Signature const &original) -> Valuation;

enum class Verdict { match, mismatch, budget_skip };

auto to_string(Verdict v) -> char const *;

struct DiffOptions {
    EngineOptions engine;
    PipelineOptions pipeline;
    //! Shrink mismatching programs by rule removal.
    bool minimize{true};
};

struct DiffReport {
    Verdict verdict{Verdict::match};
    //! Stable models of the reference translation of the expanded program.
    std::vector<Valuation> expected;
    //! Projected stable models of the compiled program.
    std::vector<Valuation> actual;
    //! A rule-minimal program that still mismatches.
    std::optional<Program> reproducer;
    //! Rendered pipeline snapshots of the mismatching program.
    std::string trace;
    std::string note;
};

//! Compares the reference semantics of `p` with the compiled pipeline.
auto diff_check(Program const &p, Signature const &sig, DiffOptions const &opts = {}) -> DiffReport;

//! Removes rules while `keep` holds for the remainder.
auto minimize_rules(Program const &p, std::function<bool(Program const &)> const &keep) -> Program;

enum Feature : unsigned {
    feature_sum = 1U << 0U,
    feature_sus = 1U << 1U,
    feature_min = 1U << 2U,
    feature_max = 1U << 3U,
    feature_df = 1U << 4U,
    feature_in = 1U << 5U,
    feature_assign = 1U << 6U,
    feature_conditional = 1U << 7U,
    feature_negation = 1U << 8U,
    feature_choice = 1U << 9U,
    feature_all = (1U << 10U) - 1U,
};

struct GenParams {
    std::uint64_t seed{0};
    std::size_t prop_vars{3};
    std::size_t int_vars{2};
    std::size_t rules{4};
    std::size_t max_body{2};
    std::size_t max_elements{2};
    Int min_int{-2};
    Int max_int{2};
    unsigned features{feature_all};
};

//! A deterministic random ground program.
auto random_program(GenParams const &params) -> Program;

struct FuzzCase {
    std::uint64_t seed;
    Program program;
    DiffReport report;
};

struct FuzzSummary {
    std::size_t matches{0};
    std::size_t mismatches{0};
    std::size_t skipped{0};
    //! Mismatching cases only.
    std::vector<FuzzCase> failures;
};

//! Runs `count` cases with seeds `params.seed`, `params.seed + 1`, ...
auto fuzz(GenParams params, std::size_t count, DiffOptions const &opts = {}) -> FuzzSummary;

struct CorpusEntry {
    std::string name;
    std::string text;
    Int min_int;
    Int max_int;
    //! Exhaustive budget for the reference side.
    double budget{1e7};
};

//! Hand-written programs covering every construct.
auto curated_corpus() -> std::vector<CorpusEntry>;

//! The external solver exited with a status other than 0, 10, 20 or 30.
class SolverCrash : public Error {
public:
    SolverCrash(int status, std::string diagnostics);
    [[nodiscard]] auto status() const -> int { return status_; }
    [[nodiscard]] auto diagnostics() const -> std::string const & { return diagnostics_; }

private:
    int status_;
    std::string diagnostics_;
};

//! Parses `Answer:` blocks (an atom line and an optional `Assignment:` line).
auto parse_solver_output(std::string const &out) -> std::vector<Valuation>;

//! Runs the solver named by `FLINGO_CLINGCON` on emitted text; nullopt if the variable is unset.
auto run_external_solver(std::string const &text, Int min_int, Int max_int) -> std::optional<std::vector<Valuation>>;

} // namespace Flingo

#endif // FLINGO_DIFFTEST_HH
