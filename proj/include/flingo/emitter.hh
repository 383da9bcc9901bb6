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

#ifndef FLINGO_EMITTER_HH
#define FLINGO_EMITTER_HH

#include <flingo/htc.hh>

namespace Flingo {

struct EmitOptions {
    enum class Surrogates { numbered, readable };

    Surrogates style{Surrogates::numbered};
    //! Append a comment with the recommended `--min-int`/`--max-int` flags.
    bool domain_directives{false};
    Int min_int{0};
    Int max_int{0};
};

//! Surrogate names for the tagged atoms of a program, injective in both styles.
auto surrogate_names(Program const &p, EmitOptions::Surrogates style) -> std::vector<std::pair<Name, ConstraintAtom>>;

//! Replaces tagged atoms by propositional atoms.
auto substitute_surrogates(Program const &p, std::vector<std::pair<Name, ConstraintAtom>> const &names) -> Program;

//! Renders a clingcon-fragment program with a surrogate legend; throws NotClingconFragment.
auto emit_clingcon(Program const &p, EmitOptions const &opts = {}) -> std::string;

enum class ModelFormat { text, json };

//! `a x=1`: true atoms and defined integers, sorted by name.
auto model_line(Valuation const &v) -> std::string;

//! One line per model, or `UNSATISFIABLE`; a JSON array in json mode.
auto emit_models(std::vector<Valuation> const &models, ModelFormat format) -> std::string;

} // namespace Flingo

#endif // FLINGO_EMITTER_HH
