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

#include <flingo/emitter.hh>
#include <flingo/parser.hh>
#include <flingo/rewriter.hh>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <set>

namespace Flingo {

namespace {

auto readable_stem(ConstraintAtom const &a) -> std::string {
    std::string out = std::string{RESERVED_PREFIX} + to_string(a.op) + (a.tag == Tag::head ? "_head" : "_body");
    auto text = to_string(a);
    auto body = text.substr(text.find('{'));
    bool sep = true;
    for (char c : body) {
        if (std::isalnum(static_cast<unsigned char>(c)) != 0) {
            if (sep) {
                out += '_';
            }
            out += c;
            sep = false;
            continue;
        }
        char const *word = nullptr;
        switch (c) {
            case '-': word = "neg"; break;
            case '<': word = "lt"; break;
            case '>': word = "gt"; break;
            case '=': word = "eq"; break;
            case '!': word = "not"; break;
            case '*': word = "times"; break;
            default: break;
        }
        if (word != nullptr) {
            out += '_';
            out += word;
        }
        sep = true;
    }
    return out;
}

} // namespace

auto surrogate_names(Program const &p, EmitOptions::Surrogates style)
    -> std::vector<std::pair<Name, ConstraintAtom>> {
    std::vector<std::pair<Name, ConstraintAtom>> out;
    std::set<Name> used;
    for_each_atom(p, [&](Atom const &a) {
        auto const *ca = std::get_if<ConstraintAtom>(&a);
        if (ca == nullptr || ca->tag == Tag::none) {
            return;
        }
        if (std::any_of(out.begin(), out.end(), [&](auto const &e) { return e.second == *ca; })) {
            return;
        }
        Name name;
        if (style == EmitOptions::Surrogates::numbered) {
            name = std::string{RESERVED_PREFIX} + to_string(ca->op) + (ca->tag == Tag::head ? "_head_" : "_body_") +
                   std::to_string(out.size() + 1);
        }
        else {
            name = readable_stem(*ca);
            if (used.count(name) != 0) {
                char buf[17];
                std::snprintf(buf, sizeof(buf), "%08zx", std::hash<std::string>{}(to_string(*ca)) & 0xffffffffU);
                auto base = name + "_" + buf;
                name = base;
                for (std::size_t i = 2; used.count(name) != 0; ++i) {
                    name = base + "_" + std::to_string(i);
                }
            }
        }
        used.insert(name);
        out.emplace_back(name, *ca);
    });
    return out;
}

auto substitute_surrogates(Program const &p, std::vector<std::pair<Name, ConstraintAtom>> const &names) -> Program {
    auto replace = [&](Atom &a) {
        auto const *ca = std::get_if<ConstraintAtom>(&a);
        if (ca == nullptr || ca->tag == Tag::none) {
            return;
        }
        auto it = std::find_if(names.begin(), names.end(), [&](auto const &e) { return e.second == *ca; });
        if (it == names.end()) {
            throw Error("no surrogate for " + to_string(*ca));
        }
        a = prop(it->first);
    };
    auto out = p;
    for (auto &r : out.rules) {
        if (r.head) {
            replace(*r.head);
        }
        for (auto &l : r.body) {
            replace(l.atom);
        }
    }
    return out;
}

auto emit_clingcon(Program const &p, EmitOptions const &opts) -> std::string {
    check_clingcon_fragment(p);
    auto names = surrogate_names(p, opts.style);
    std::string out;
    for (auto const &[name, atom] : names) {
        out += "% " + name + " := " + to_string(atom) + "\n";
    }
    out += render_program(substitute_surrogates(p, names));
    if (opts.domain_directives) {
        out += "% clingcon --min-int=" + std::to_string(opts.min_int) + " --max-int=" + std::to_string(opts.max_int) +
               "\n";
    }
    return out;
}

auto model_line(Valuation const &v) -> std::string {
    std::string out;
    for (auto const &[x, val] : v) {
        if (!val.defined()) {
            continue;
        }
        if (!out.empty()) {
            out += ' ';
        }
        out += x;
        if (val.is_integer()) {
            out += "=" + std::to_string(val.value());
        }
    }
    return out;
}

auto emit_models(std::vector<Valuation> const &models, ModelFormat format) -> std::string {
    std::vector<std::string> lines;
    lines.reserve(models.size());
    for (auto const &m : models) {
        lines.emplace_back(model_line(m));
    }
    std::vector<std::size_t> order(models.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return lines[a] < lines[b]; });
    if (format == ModelFormat::json) {
        auto arr = nlohmann::json::array();
        for (auto i : order) {
            nlohmann::json props = nlohmann::json::array();
            nlohmann::json ints = nlohmann::json::object();
            for (auto const &[x, val] : models[i]) {
                if (val.is_truth()) {
                    props.push_back(x);
                }
                else if (val.is_integer()) {
                    ints[x] = val.value();
                }
            }
            arr.push_back({{"props", props}, {"ints", ints}});
        }
        return arr.dump() + "\n";
    }
    if (models.empty()) {
        return "UNSATISFIABLE\n";
    }
    std::string out;
    for (auto i : order) {
        out += lines[i];
        out += '\n';
    }
    return out;
}

} // namespace Flingo
