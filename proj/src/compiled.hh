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

#ifndef FLINGO_COMPILED_HH
#define FLINGO_COMPILED_HH

#include <flingo/htc.hh>

#include <limits>
#include <unordered_map>

namespace Flingo::Detail {

//! Encoding of values in compiled valuations.
inline constexpr Int UNDEF = std::numeric_limits<Int>::min();
inline constexpr Int TRUTH = 1;

using Value = __int128;

//! Adds with overflow detection.
inline auto checked_add(Value a, Value b) -> Value {
    Value r = 0;
    if (__builtin_add_overflow(a, b, &r)) {
        throw Error("arithmetic overflow in constraint evaluation");
    }
    return r;
}

struct CProduct {
    Int coef{0};
    int var{-1};
};

struct CTerm {
    bool conditional{false};
    CProduct s;
    bool has_then{false};
    bool has_else{false};
    CProduct then_term;
    CProduct else_term;
    int cond{-1};
};

struct CAtom {
    HtcAtom::Kind kind{HtcAtom::Kind::prop};
    int var{-1};
    std::vector<CTerm> terms;
    Relation rel{Relation::eq};
    CProduct rhs;
};

struct CNode {
    HtcNode::Kind kind{HtcNode::Kind::falsity};
    int atom{-1};
    int lhs{-1};
    int rhs{-1};
};

//! Variables are indexed densely; integers use UNDEF for undefined, propositions UNDEF or TRUTH.
struct VarTable {
    std::vector<Name> names;
    std::vector<bool> is_int;
    std::vector<Bounds> bounds;
    std::unordered_map<Name, int> index;

    explicit VarTable(Signature const &sig);
    [[nodiscard]] auto find(Name const &x) const -> int;
};

//! Formulas compiled against a VarTable.
class Compiled {
public:
    Compiled(VarTable const &vars, Signature const &sig);

    //! Adds a formula and returns its root node.
    auto add(HtcFormula const &f) -> int;

    [[nodiscard]] auto sat(Int const *h, Int const *t, int node) const -> bool;
    [[nodiscard]] auto atom_holds(Int const *v, CAtom const &a) const -> bool;

    //! Variables occurring in a node, including conditions.
    void collect_vars(int node, std::vector<int> &out) const;

    [[nodiscard]] auto nodes() const -> std::vector<CNode> const & { return nodes_; }
    [[nodiscard]] auto atoms() const -> std::vector<CAtom> const & { return atoms_; }

private:
    auto compile_product(ProductTerm const &s) -> CProduct;
    auto sat_atom(Int const *w, Int const *t, CAtom const &a) const -> bool;
    [[nodiscard]] auto product_value(Int const *v, CProduct const &s, bool &defined) const -> Value;

    VarTable const &vars_;
    Int min_int_;
    Int max_int_;
    std::vector<CNode> nodes_;
    std::vector<CAtom> atoms_;
};

//! Converts a compiled valuation back, total over the table.
auto to_valuation(VarTable const &vars, Int const *v) -> Valuation;
//! Converts a valuation to the compiled encoding; values outside a domain are kept as given.
auto from_valuation(VarTable const &vars, Valuation const &v) -> std::vector<Int>;

//! Sorts and removes duplicates.
void canonicalize(std::vector<Valuation> &models);

auto stable_models_exhaustive(HtcTheory const &theory, EngineOptions const &opts) -> std::vector<Valuation>;
auto ht_models_exhaustive(HtcTheory const &theory, EngineOptions const &opts) -> std::vector<HtInterpretation>;
auto stable_models_casp(HtcTheory const &theory, EngineOptions const &opts) -> std::vector<Valuation>;

} // namespace Flingo::Detail

#endif // FLINGO_COMPILED_HH
