#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "enactlab/interaction.hpp"
#include "enactlab/rng.hpp"

using namespace enactlab;

TEST_CASE("only four primitives exist; turn failures are rejected") {
    InteractionStore store;
    CHECK(store.primitive(Experiment::Step, Result::Failure) == 0);
    CHECK(store.primitive(Experiment::Step, Result::Success) == 1);
    CHECK(store.primitive(Experiment::TurnLeft, Result::Success) == 2);
    CHECK(store.primitive(Experiment::TurnRight, Result::Success) == 3);
    CHECK_THROWS_AS(store.primitive(Experiment::TurnLeft, Result::Failure),
                    std::invalid_argument);
    CHECK_THROWS_AS(store.primitive(Experiment::TurnRight, Result::Failure),
                    std::invalid_argument);
}

TEST_CASE("pre/post invert construction; lengths add") {
    InteractionStore store;
    const InteractionId a = store.primitive(Experiment::Step, Result::Success);
    const InteractionId b = store.primitive(Experiment::TurnLeft, Result::Success);
    const InteractionId ab = store.composite(a, b);
    CHECK(store.pre(ab) == a);
    CHECK(store.post(ab) == b);
    CHECK(store.length(a) == 1);
    CHECK(store.length(ab) == 2);
    const InteractionId ab_ab = store.composite(ab, ab);
    CHECK(store.length(ab_ab) == 4);
    CHECK(store.pre(ab_ab) == ab);

    // Interning: structural equality is id equality.
    CHECK(store.composite(a, b) == ab);
    CHECK(store.composite(b, a) != ab);
}

TEST_CASE("structural order: primitives first, then recursive (pre, post)") {
    InteractionStore store;
    const InteractionId sf = 0, so = 1, tl = 2, tr = 3;
    CHECK(store.compare(sf, so) < 0);
    CHECK(store.compare(so, tl) < 0);
    CHECK(store.compare(tl, tr) < 0);
    CHECK(store.compare(tr, tr) == 0);

    const InteractionId c1 = store.composite(so, tl);
    const InteractionId c2 = store.composite(so, tr);
    const InteractionId c3 = store.composite(tl, sf);
    CHECK(store.compare(so, c1) < 0);   // any primitive before any composite
    CHECK(store.compare(c1, c2) < 0);   // same pre, post decides
    CHECK(store.compare(c2, c3) < 0);   // pre decides
    CHECK(store.compare(store.composite(c1, so), store.composite(c2, sf)) < 0);
}

TEST_CASE("valence: paper values for primitives, additive for composites") {
    InteractionStore store;
    const MotivationModel m;
    const InteractionId step_ok = store.primitive(Experiment::Step, Result::Success);
    const InteractionId step_fail = store.primitive(Experiment::Step, Result::Failure);
    const InteractionId turnl = store.primitive(Experiment::TurnLeft, Result::Success);
    const InteractionId turnr = store.primitive(Experiment::TurnRight, Result::Success);

    CHECK(m.valence(store, step_ok) == doctest::Approx(10.0));
    CHECK(m.valence(store, step_fail) == doctest::Approx(-1.0));
    CHECK(m.valence(store, turnl) == doctest::Approx(-0.3));
    CHECK(m.valence(store, turnr) == doctest::Approx(-0.3));

    // 10 + (-0.3) = 9.7
    const InteractionId c = store.composite(step_ok, turnl);
    CHECK(m.valence(store, c) == doctest::Approx(9.7));

    // Valence is a leaf-count dot product, so nesting does not matter.
    const InteractionId deep = store.composite(c, store.composite(step_fail, step_ok));
    CHECK(m.valence(store, deep) == doctest::Approx(10 - 0.3 - 1 + 10));
}

TEST_CASE("sexpr rendering matches the dump format") {
    InteractionStore store;
    const InteractionId so = store.primitive(Experiment::Step, Result::Success);
    const InteractionId tl = store.primitive(Experiment::TurnLeft, Result::Success);
    CHECK(store.to_sexpr(so) == "(step ok)");
    CHECK(store.to_sexpr(store.primitive(Experiment::Step, Result::Failure)) == "(step fail)");
    CHECK(store.to_sexpr(store.composite(so, tl)) == "((step ok) (turnl ok))");
}

TEST_CASE("sexpr round-trip on random structures") {
    InteractionStore store;
    Rng rng(11);
    std::vector<InteractionId> pool{0, 1, 2, 3};
    for (int i = 0; i < 200; ++i) {
        const InteractionId a = pool[rng.below(pool.size())];
        const InteractionId b = pool[rng.below(pool.size())];
        pool.push_back(store.composite(a, b));
    }
    for (const InteractionId id : pool) {
        CHECK(store.parse_sexpr(store.to_sexpr(id)) == id);
    }
    CHECK_THROWS_AS(store.parse_sexpr("(step)"), std::invalid_argument);
    CHECK_THROWS_AS(store.parse_sexpr("(walk ok)"), std::invalid_argument);
    CHECK_THROWS_AS(store.parse_sexpr("(step ok"), std::invalid_argument);
}
