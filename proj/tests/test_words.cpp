#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "obk/errors.hpp"
#include "obk/words.hpp"
#include "helpers.hpp"

using namespace obk;
using namespace obk::words;

namespace {

Word W(const std::string& s) { return Word::parse(s); }

PresMove mv(MoveKind k) {
    PresMove m;
    m.kind = k;
    return m;
}

}  // namespace

TEST_CASE("word parsing and printing") {
    CHECK(W("a b A B").to_string() == "abAB");
    CHECK(W("g1 G2").to_string() == "g1 G2");
    CHECK(W("a^-1").to_string() == "A");
    CHECK(W("1").empty());
    CHECK(W("a").inverse().to_string() == "A");
    CHECK((W("a b") * W("B c")).to_string() == "abBc");
    CHECK_THROWS_AS(W("3x"), SyntaxError);
}

TEST_CASE("free reduction") {
    CHECK(free_reduce(W("a A")).empty());
    CHECK(free_reduce(W("a b B A")).empty());
    CHECK(free_reduce(W("a b B c")).to_string() == "ac");
    CHECK(free_reduce(W("a B b B")).to_string() == "aB");
    CHECK(free_reduce(Word()).empty());
}

TEST_CASE("exponent sums and substitution") {
    CHECK(W("a b a B").exponent_sum("a") == 2);
    CHECK(W("a b a B").exponent_sum("b") == 0);
    CHECK(W("a b A").substituted("b", W("c c")).to_string() == "accA");
    CHECK(W("b B a").substituted("b", W("a")).to_string() == "a");
}

TEST_CASE("presentation parsing") {
    Presentation p = Presentation::parse("<a,b | ab, b>");
    CHECK(p.generators == std::vector<std::string>{"a", "b"});
    REQUIRE(p.relations.size() == 2);
    CHECK(p.relations[0] == W("a b"));
    CHECK(p.relations[1] == W("b"));
    CHECK(p.to_string() == "<a,b | ab, b>");

    CHECK(Presentation::parse("< | >") == Presentation{});
    CHECK(Presentation::parse("<g | g>").to_string() == "<g | g>");
    CHECK(Presentation::parse("<x,y | xxxYYYY, xyxYXY>").relations[0].size() == 7);
    CHECK(Presentation::parse("<a | 1>").relations[0].empty());
    CHECK_THROWS_AS(Presentation::parse("a | a"), SyntaxError);
    CHECK_THROWS_AS(Presentation::parse("<a | q>"), SyntaxError);
    CHECK_THROWS_AS(Presentation::parse("<a,a | >"), SyntaxError);
}

TEST_CASE("tietze moves") {
    Presentation p = Presentation::parse("<a,b | ab, b>");

    SUBCASE("double a relation") {
        PresMove m = mv(MoveKind::T1Double);
        m.index = 0;
        Presentation q = apply_pres_move(p, m);
        REQUIRE(q.relations.size() == 3);
        CHECK(q.relations[2] == W("a b"));
        m.exp = -1;
        q = apply_pres_move(p, m);
        CHECK(q.relations[2] == W("B A"));
    }
    SUBCASE("conjugate keeps the uncancelled form") {
        PresMove m = mv(MoveKind::T1Conjugate);
        m.index = 1;
        m.gen = "a";
        m.exp = 1;
        CHECK(apply_pres_move(p, m).relations[1] == W("a b A"));
    }
    SUBCASE("multiply with and without conjugator") {
        PresMove m = mv(MoveKind::T1Multiply);
        m.target = 0;
        m.source = 1;
        m.exp = -1;
        CHECK(apply_pres_move(p, m).relations[0] == W("a"));
        m.word = W("a");
        CHECK(apply_pres_move(p, m).relations[0] == W("a b a B A"));
        m.source = 0;
        CHECK_THROWS_AS(apply_pres_move(p, m), IllegalMove);
    }
    SUBCASE("add and remove a generator") {
        PresMove add = mv(MoveKind::T2Add);
        add.gen = "c";
        add.word = W("a b");
        Presentation q = apply_pres_move(p, add);
        CHECK(q.generators.size() == 3);
        CHECK(q.relations.back() == W("c B A"));

        PresMove rem = mv(MoveKind::T2Remove);
        rem.gen = "c";
        rem.index = 2;
        Presentation r = apply_pres_move(q, rem);
        CHECK(r == p);

        rem.index = 0;
        CHECK_THROWS_AS(apply_pres_move(q, rem), IllegalMove);
    }
    SUBCASE("remove substitutes in the other relations") {
        Presentation q = Presentation::parse("<a,b | ab, bab>");
        PresMove rem = mv(MoveKind::T2Remove);
        rem.gen = "a";
        rem.index = 0;
        // a = b^-1, so bab becomes b b^-1 b = b.
        Presentation r = apply_pres_move(q, rem);
        CHECK(r.to_string() == "<b | b>");
    }
}

TEST_CASE("balanced moves require balance") {
    Presentation p = Presentation::parse("<a,b | ab>");
    PresMove m = mv(MoveKind::AC1);
    m.index = 0;
    CHECK_THROWS_AS(apply_pres_move(p, m), UnbalancedInput);

    Presentation q = Presentation::parse("<a | a>");
    PresMove rm = mv(MoveKind::AC4Remove);
    rm.gen = "a";
    CHECK(apply_pres_move(q, rm) == Presentation{});

    // AC4Remove refuses when the generator still occurs elsewhere.
    Presentation r = Presentation::parse("<a,b | a, ba>");
    rm.gen = "a";
    CHECK_THROWS_AS(apply_pres_move(r, rm), IllegalMove);
}

TEST_CASE("extended moves are gated") {
    Presentation p = Presentation::parse("<a,b | ab>");
    PresMove m = mv(MoveKind::ExtGenMult);
    m.gen = "a";
    m.by = "b";
    m.exp = -1;
    CHECK_THROWS_AS(apply_pres_move(p, m), IllegalMove);
    MoveOptions opts;
    opts.extended = true;
    CHECK(apply_pres_move(p, m, opts).relations[0] == W("a"));

    PresMove inv = mv(MoveKind::ExtGenInv);
    inv.gen = "a";
    CHECK(apply_pres_move(p, inv, opts).relations[0] == W("A b"));
}

TEST_CASE("shipped trivialization traces replay") {
    MoveTrace tg;
    tg.initial = Presentation::parse("<g | g>");
    PresMove rm = mv(MoveKind::AC4Remove);
    rm.gen = "g";
    tg.steps = {rm};
    tg.final = Presentation{};
    CHECK(verify_trace(tg).accepted);

    MoveTrace tab;
    tab.initial = Presentation::parse("<a,b | ab, b>");
    PresMove m1 = mv(MoveKind::AC3);
    m1.target = 0;
    m1.source = 1;
    m1.exp = -1;
    PresMove m2 = mv(MoveKind::AC4Remove);
    m2.gen = "a";
    PresMove m3 = mv(MoveKind::AC4Remove);
    m3.gen = "b";
    tab.steps = {m1, m2, m3};
    tab.final = Presentation{};
    CHECK(verify_trace(tab).accepted);

    SUBCASE("single-step corruptions are rejected") {
        MoveTrace bad = tab;
        bad.steps[0].exp = 1;  // multiplies instead of cancelling
        TraceReport rep = verify_trace(bad);
        CHECK_FALSE(rep.accepted);

        bad = tab;
        bad.steps[1].gen = "b";  // b then gets removed twice
        rep = verify_trace(bad);
        CHECK_FALSE(rep.accepted);
        CHECK(rep.failed_step == 2);

        bad = tab;
        bad.steps[1].gen = "q";  // unknown generator
        rep = verify_trace(bad);
        CHECK_FALSE(rep.accepted);
        CHECK(rep.failed_step == 1);

        bad = tab;
        bad.final = Presentation::parse("<a | a>");
        rep = verify_trace(bad);
        CHECK_FALSE(rep.accepted);
        CHECK(rep.failed_step == bad.steps.size());
    }
}

TEST_CASE("ac search finds short trivializations") {
    SearchLimits lim;
    lim.max_depth = 4;
    SearchOutcome out = ac_search(Presentation::parse("<a,b | ab, b>"), lim);
    REQUIRE(out.status == SearchStatus::Found);
    REQUIRE(out.trace.has_value());
    CHECK(out.trace->steps.size() <= 4);
    CHECK(verify_trace(*out.trace).accepted);

    out = ac_search(Presentation::parse("<g | g>"), lim);
    REQUIRE(out.status == SearchStatus::Found);
    CHECK(out.trace->steps.size() == 1);

    out = ac_search(Presentation{}, lim);
    CHECK(out.status == SearchStatus::Found);
    CHECK(out.trace->steps.empty());
}

TEST_CASE("ac search is deterministic and bounded") {
    SearchLimits lim;
    lim.max_depth = 3;
    lim.max_relation_length = 6;
    lim.max_states = 5000;
    Presentation p = Presentation::parse("<a,b | abab, ba>");
    SearchOutcome a = ac_search(p, lim);
    SearchOutcome b = ac_search(p, lim);
    CHECK(a.status == b.status);
    CHECK(a.states_explored == b.states_explored);
    if (a.status == SearchStatus::Found) {
        CHECK(a.trace->steps.size() == b.trace->steps.size());
        CHECK(verify_trace(*a.trace).accepted);
    }
}

TEST_CASE("akbulut-kirby style presentation resists shallow search") {
    Presentation ak = Presentation::parse("<x,y | xxxYYYY, xyxYXY>");
    CHECK(abelianization(ak).is_trivial());
    SearchLimits lim;
    lim.max_depth = 3;
    lim.max_relation_length = 9;
    lim.max_states = 20000;
    SearchOutcome out = ac_search(ak, lim);
    CHECK(out.status != SearchStatus::Found);
}

TEST_CASE("abelianization") {
    CHECK(abelianization(Presentation::parse("<a | aaaaa>")) == zalg::AbelianGroup{0, {Int(5)}});
    CHECK(abelianization(Presentation::parse("<a,b | >")) == zalg::AbelianGroup{2, {}});
    CHECK(abelianization(Presentation::parse("<a,b | ab, b>")).is_trivial());
    CHECK(abelianization(Presentation{}) == zalg::AbelianGroup{0, {}});
    CHECK(abelianization(Presentation::parse("<a,b | abAB>")) == zalg::AbelianGroup{2, {}});
}

TEST_CASE("moves preserve the abelianization") {
    auto rng = test_rng(11);
    std::uniform_int_distribution<int> coin(0, 1);
    Presentation p = Presentation::parse("<a,b,c | abc, bC, caa>");
    zalg::AbelianGroup g0 = abelianization(p);
    MoveOptions opts;
    opts.extended = true;

    int applied = 0;
    while (applied < 300) {
        PresMove m;
        switch (std::uniform_int_distribution<int>(0, 7)(rng)) {
            case 0:
                m.kind = MoveKind::AC1;
                m.index = std::uniform_int_distribution<std::size_t>(0, p.relations.size() - 1)(rng);
                break;
            case 1:
                m.kind = MoveKind::AC2;
                m.index = std::uniform_int_distribution<std::size_t>(0, p.relations.size() - 1)(rng);
                m.gen = p.generators[std::uniform_int_distribution<std::size_t>(
                    0, p.generators.size() - 1)(rng)];
                m.exp = coin(rng) ? 1 : -1;
                break;
            case 2:
                m.kind = MoveKind::AC3;
                m.target = std::uniform_int_distribution<std::size_t>(0, p.relations.size() - 1)(rng);
                m.source = std::uniform_int_distribution<std::size_t>(0, p.relations.size() - 1)(rng);
                m.exp = coin(rng) ? 1 : -1;
                break;
            case 3:
                m.kind = MoveKind::AC4Add;
                m.gen = "t" + std::to_string(applied);
                break;
            case 4:
                m.kind = MoveKind::T1Double;
                m.index = std::uniform_int_distribution<std::size_t>(0, p.relations.size() - 1)(rng);
                m.exp = coin(rng) ? 1 : -1;
                break;
            case 5:
                m.kind = MoveKind::T2Add;
                m.gen = "u" + std::to_string(applied);
                m.word = p.relations[0];
                break;
            case 6:
                m.kind = MoveKind::ExtGenMult;
                m.gen = p.generators[std::uniform_int_distribution<std::size_t>(
                    0, p.generators.size() - 1)(rng)];
                m.by = p.generators[std::uniform_int_distribution<std::size_t>(
                    0, p.generators.size() - 1)(rng)];
                m.exp = coin(rng) ? 1 : -1;
                break;
            default:
                m.kind = MoveKind::ExtGenInv;
                m.gen = p.generators[std::uniform_int_distribution<std::size_t>(
                    0, p.generators.size() - 1)(rng)];
                break;
        }
        try {
            p = apply_pres_move(p, m, opts);
        } catch (const IllegalMove&) {
            continue;
        }
        ++applied;
        REQUIRE(abelianization(p) == g0);
        // Keep the state small enough to stay fast.
        if (p.relations.size() > 8) p = Presentation::parse("<a,b,c | abc, bC, caa>");
    }
}
