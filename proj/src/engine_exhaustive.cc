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

#include "compiled.hh"

#include <algorithm>

namespace Flingo::Detail {

namespace {

//! Depth-first enumeration of valuations.
//!
//! Variables are decided in order of first occurrence; a formula is checked
//! as soon as all of its variables are decided.
class Exhaustive {
public:
    explicit Exhaustive(HtcTheory const &theory)
    : vars_{theory.signature}
    , comp_{vars_, theory.signature}
    , ready_(vars_.names.size()) {
        std::vector<int> roots;
        for (auto const &f : theory.formulas) {
            roots.emplace_back(comp_.add(f));
        }
        std::vector<std::vector<int>> occ;
        for (auto root : roots) {
            std::vector<int> vs;
            comp_.collect_vars(root, vs);
            for (auto v : vs) {
                if (std::find(order_.begin(), order_.end(), v) == order_.end()) {
                    order_.push_back(v);
                }
            }
            occ.emplace_back(std::move(vs));
        }
        for (int v = 0; v < static_cast<int>(vars_.names.size()); ++v) {
            if (std::find(order_.begin(), order_.end(), v) == order_.end()) {
                order_.push_back(v);
            }
        }
        std::vector<int> pos(order_.size());
        for (std::size_t i = 0; i < order_.size(); ++i) {
            pos[order_[i]] = static_cast<int>(i);
        }
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (occ[i].empty()) {
                initial_.push_back(roots[i]);
                continue;
            }
            int last = 0;
            for (auto v : occ[i]) {
                last = std::max(last, pos[v]);
            }
            ready_[last].push_back(roots[i]);
        }
    }

    auto stable_models() -> std::vector<Valuation> {
        std::vector<Valuation> out;
        t_.assign(vars_.names.size(), UNDEF);
        if (!check(initial_, t_.data())) {
            return out;
        }
        enumerate_t(0, true, [&] {
            if (minimal()) {
                out.emplace_back(to_valuation(vars_, t_.data()));
            }
        });
        canonicalize(out);
        return out;
    }

    auto ht_models() -> std::vector<HtInterpretation> {
        std::vector<HtInterpretation> out;
        t_.assign(vars_.names.size(), UNDEF);
        enumerate_t(0, false, [&] {
            h_.assign(vars_.names.size(), UNDEF);
            if (!check(initial_, h_.data())) {
                return;
            }
            enumerate_h(0, 0, true, [&] {
                out.push_back({to_valuation(vars_, h_.data()), to_valuation(vars_, t_.data())});
                return false;
            });
        });
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    [[nodiscard]] auto check(std::vector<int> const &fs, Int const *h) const -> bool {
        return std::all_of(fs.begin(), fs.end(), [&](int f) { return comp_.sat(h, t_.data(), f); });
    }

    template <typename F> void enumerate_t(std::size_t d, bool prune, F const &leaf) {
        if (d == order_.size()) {
            leaf();
            return;
        }
        auto v = order_[d];
        auto try_value = [&](Int x) {
            t_[v] = x;
            if (!prune || check(ready_[d], t_.data())) {
                enumerate_t(d + 1, prune, leaf);
            }
        };
        try_value(UNDEF);
        for (auto x = vars_.bounds[v].lo; x <= vars_.bounds[v].hi; ++x) {
            try_value(x);
        }
        t_[v] = UNDEF;
    }

    //! Enumerates h ⊆ t with ⟨h,t⟩ ⊨ the decided formulas; stops when `leaf` returns true.
    template <typename F> auto enumerate_h(std::size_t d, std::size_t dropped, bool allow_equal, F const &leaf) -> bool {
        if (d == order_.size()) {
            return (allow_equal || dropped > 0) && leaf();
        }
        auto v = order_[d];
        auto try_value = [&](Int x, std::size_t drop) {
            h_[v] = x;
            return check(ready_[d], h_.data()) && enumerate_h(d + 1, dropped + drop, allow_equal, leaf);
        };
        bool found = false;
        if (t_[v] == UNDEF) {
            found = try_value(UNDEF, 0);
        }
        else {
            found = try_value(UNDEF, 1) || try_value(t_[v], 0);
        }
        h_[v] = UNDEF;
        return found;
    }

    //! No h ⊂ t satisfies the theory.
    auto minimal() -> bool {
        h_.assign(vars_.names.size(), UNDEF);
        if (!check(initial_, h_.data())) {
            return true;
        }
        return !enumerate_h(0, 0, false, [] { return true; });
    }

    VarTable vars_;
    Compiled comp_;
    std::vector<int> order_;
    std::vector<int> initial_;
    std::vector<std::vector<int>> ready_;
    std::vector<Int> t_;
    std::vector<Int> h_;
};

void guard_budget(HtcTheory const &theory, EngineOptions const &opts) {
    auto est = statespace_estimate(theory);
    if (est > opts.budget) {
        throw BudgetExceeded(est);
    }
}

} // namespace

auto stable_models_exhaustive(HtcTheory const &theory, EngineOptions const &opts) -> std::vector<Valuation> {
    guard_budget(theory, opts);
    return Exhaustive{theory}.stable_models();
}

auto ht_models_exhaustive(HtcTheory const &theory, EngineOptions const &opts) -> std::vector<HtInterpretation> {
    guard_budget(theory, opts);
    return Exhaustive{theory}.ht_models();
}

} // namespace Flingo::Detail
