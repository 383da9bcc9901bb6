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

#include <flingo/ast.hh>
#include <flingo/parser.hh>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace Flingo;

TEST_CASE("signature", "[ast]") {
    SECTION("choice and sum") {
        auto sig = signature_of(parse_program("{a}. &sum{x}=1 :- a."), -5, 5);
        REQUIRE(sig.prop_vars == std::set<Name>{"a"});
        REQUIRE(sig.int_vars == std::set<Name>{"x"});
        REQUIRE(sig.min_int == -5);
        REQUIRE(sig.max_int == 5);
    }
    SECTION("empty") {
        auto sig = signature_of(Program{}, 0, 1);
        REQUIRE(sig.prop_vars.empty());
        REQUIRE(sig.int_vars.empty());
    }
    SECTION("condition atoms are propositional") {
        auto sig = signature_of(parse_program("a :- &sum{x:p}=0. p."), -8, 8);
        REQUIRE(sig.prop_vars == std::set<Name>{"a", "p"});
        REQUIRE(sig.int_vars == std::set<Name>{"x"});
    }
    SECTION("structured names") {
        auto sig = signature_of(parse_program("&sus{tariff(steel,eu)} = 0."), 0, 40);
        REQUIRE(sig.int_vars == std::set<Name>{"tariff(steel,eu)"});
    }
    SECTION("kind conflict") {
        REQUIRE_THROWS_AS(signature_of(parse_program("x. &sum{x}=1."), 0, 1), KindConflict);
        try {
            signature_of(parse_program("a :- &sum{y:x}=0. &sum{x}=1."), 0, 1);
            FAIL("no exception");
        }
        catch (KindConflict const &e) {
            REQUIRE(e.name() == "x");
        }
    }
    SECTION("order independent") {
        auto p = parse_program("{a}. b :- &sum{x; 2*y} > z, not c. &in{0..1} =: w.");
        auto q = p;
        std::reverse(q.rules.begin(), q.rules.end());
        REQUIRE(signature_of(p, -2, 2) == signature_of(q, -2, 2));
    }
    SECTION("invalid bounds") {
        Signature sig;
        sig.min_int = 1;
        sig.max_int = 0;
        REQUIRE_THROWS_AS(sig.validate(), Error);
    }
}

TEST_CASE("negate product", "[ast]") {
    REQUIRE(negate_product(ProductTerm::var("x", 3)) == ProductTerm::var("x", -3));
    REQUIRE(negate_product(ProductTerm::constant(0)) == ProductTerm::constant(0));
    REQUIRE(negate_product(ProductTerm::var("x")) == ProductTerm::var("x", -1));
    for (auto s : {ProductTerm::constant(-7), ProductTerm::var("y", 2), ProductTerm::var("z", -1)}) {
        REQUIRE(negate_product(negate_product(s)) == s);
    }
}

TEST_CASE("relations", "[ast]") {
    REQUIRE(dual_relation(Relation::le) == Relation::ge);
    REQUIRE(dual_relation(Relation::eq) == Relation::eq);
    REQUIRE(dual_relation(Relation::lt) == Relation::gt);
    REQUIRE(dual_relation(Relation::ne) == Relation::ne);
    for (auto r : {Relation::le, Relation::eq, Relation::ne, Relation::lt, Relation::gt, Relation::ge}) {
        REQUIRE(dual_relation(dual_relation(r)) == r);
        for (int a = -2; a <= 2; ++a) {
            for (int b = -2; b <= 2; ++b) {
                REQUIRE(holds(complement_relation(r), a, b) == !holds(r, a, b));
                REQUIRE(holds(dual_relation(r), -a, -b) == holds(r, a, b));
            }
        }
    }
}

TEST_CASE("neutral elements", "[ast]") {
    REQUIRE(neutral_element(Op::sum, -3, 5) == 0);
    REQUIRE(neutral_element(Op::min, -3, 5) == 5);
    REQUIRE(neutral_element(Op::max, -3, 5) == -3);
}

TEST_CASE("variables of atoms", "[ast]") {
    auto a = catom(Op::sum, {ProductTerm::var("x", 2), cond(ProductTerm::var("y"), {lit(prop("p"))}), ProductTerm::constant(1)},
                   Relation::le, ProductTerm::var("z"));
    REQUIRE(int_vars_of(a) == std::vector<Name>{"x", "y", "z"});
    REQUIRE(is_conditional(a.elements[1]));
    REQUIRE(term_product(a.elements[1]) == ProductTerm::var("y"));
}

TEST_CASE("surrogate table", "[ast]") {
    auto a = catom(Op::sus, {ProductTerm::var("x")}, Relation::eq, ProductTerm::constant(1));
    auto head = a;
    head.tag = Tag::head;
    auto body = a;
    body.tag = Tag::body;
    Program p;
    p.rules.emplace_back(fact(head));
    p.rules.emplace_back(rule(prop("q"), {lit(body)}));
    p.rules.emplace_back(rule(prop("r"), {lit(body)}));
    SurrogateTable table{p};
    REQUIRE(table.name(head) == "__flingo_sus_head_1");
    REQUIRE(table.name(body) == "__flingo_sus_body_2");
    REQUIRE(table.legend().size() == 2);
}
