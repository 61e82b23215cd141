#include <doctest.h>

#include "semcom/errors.hpp"
#include "semcom/selection.hpp"
#include "semcom/wire.hpp"
#include "testutil.hpp"

using namespace semcom;

namespace {

CandidatePool pool_of(const char* text) { return CandidatePool{parse_program(text).clauses}; }

const double kInf = std::numeric_limits<double>::infinity();

double wire_length(const Clause& m) { return static_cast<double>(message_length(m)); }

}  // namespace

TEST_CASE("select_for_kb: informative fact beats the noise fact") {
    Program kb = parse_program("0.3::b.\n0.5::a :- b.\n");
    SelectionOutcome out =
        select_for_kb(kb, pool_of("0.2::m.\n0.9::b.\n"), AssimilationPolicy::Union);
    CHECK(canonical(out.chosen) == "0.9::b.");
    CHECK(out.score == doctest::Approx(0.681).epsilon(1e-3));
    REQUIRE(out.ranking.size() == 2);
    CHECK(out.ranking[1].second == doctest::Approx(0.738).epsilon(1e-3));
}

TEST_CASE("select_for_kb: singleton pool and certainty beating a coin flip") {
    SelectionOutcome single =
        select_for_kb(Program{}, pool_of("0.4::x.\n"), AssimilationPolicy::Union);
    CHECK(canonical(single.chosen) == "0.4::x.");

    SelectionOutcome certain =
        select_for_kb(Program{}, pool_of("0.5::a.\n1.0::a.\n"), AssimilationPolicy::Union);
    CHECK(canonical(certain.chosen) == "1.0::a.");
    CHECK(certain.score == 0.0);
    CHECK(certain.ranking[1].second == 1.0);

    CHECK_THROWS_AS(select_for_kb(Program{}, CandidatePool{}, AssimilationPolicy::Union),
                    EmptyPoolError);
}

TEST_CASE("select_expected: degenerate and two-hypothesis beliefs") {
    Program kb = parse_program("0.3::b.\n0.5::a :- b.\n");
    CandidatePool pool = pool_of("0.9::b.\n0.2::m.\n");

    SenderBelief degenerate;
    degenerate.hypotheses.push_back({kb, 1.0});
    SelectionOutcome expected = select_expected(degenerate, pool, AssimilationPolicy::Union);
    SelectionOutcome exact = select_for_kb(kb, pool, AssimilationPolicy::Union);
    CHECK(canonical(expected.chosen) == canonical(exact.chosen));
    CHECK(expected.score == doctest::Approx(exact.score).epsilon(1e-12));

    SenderBelief two;
    two.hypotheses.push_back({kb, 0.5});
    two.hypotheses.push_back({Program{}, 0.5});
    SelectionOutcome out = select_expected(two, pool, AssimilationPolicy::Union);
    CHECK(canonical(out.chosen) == "0.9::b.");
    // 0.5*U(K u {0.9::b}) + 0.5*H2(0.9) vs 0.5*U(K u {0.2::m}) + 0.5*H2(0.2)
    CHECK(out.score == doctest::Approx(0.5750943357409154).epsilon(1e-9));
    CHECK(out.ranking[1].second == doctest::Approx(0.7298072639160904).epsilon(1e-9));
}

TEST_CASE("select_expected: identical hypotheses collapse to exact selection") {
    Program kb = parse_program("0.3::b.\n0.5::a :- b.\n");
    CandidatePool pool = pool_of("0.9::b.\n0.2::m.\n");
    SenderBelief belief;
    belief.hypotheses.push_back({kb, 0.25});
    belief.hypotheses.push_back({kb, 0.5});
    belief.hypotheses.push_back({kb, 0.25});
    SelectionOutcome expected = select_expected(belief, pool, AssimilationPolicy::Union);
    SelectionOutcome exact = select_for_kb(kb, pool, AssimilationPolicy::Union);
    CHECK(canonical(expected.chosen) == canonical(exact.chosen));
    CHECK(expected.score == doctest::Approx(exact.score).epsilon(1e-12));
}

TEST_CASE("select_expected: belief validation") {
    SenderBelief bad;
    bad.hypotheses.push_back({Program{}, 0.4});
    CHECK_THROWS_AS(select_expected(bad, pool_of("0.5::a.\n"), AssimilationPolicy::Union),
                    InvalidBeliefError);
    bad.hypotheses.push_back({Program{}, -0.1});
    CHECK_THROWS_AS(select_expected(bad, pool_of("0.5::a.\n"), AssimilationPolicy::Union),
                    InvalidBeliefError);
}

TEST_CASE("select_for_query: the missing premise wins") {
    Program kb = parse_program(
        "0.8::mark(tom,75).\n1.0::pass(X) :- mark(X,M), pass_score(S), M >= S.\n");
    SelectionOutcome out =
        select_for_query(kb, pool_of("0.9::pass_score(70).\n0.9::irrelevant.\n"),
                         parse_atom("pass(tom)"), AssimilationPolicy::Union);
    CHECK(canonical(out.chosen) == "0.9::pass_score(70).");
    CHECK(out.score == doctest::Approx(binary_entropy(0.8 * 0.9)).epsilon(1e-9));
    CHECK(out.ranking[1].second == 1.0);  // irrelevant leaves the query unmatched
}

TEST_CASE("select_for_query: all-tie falls back to canonical order") {
    Program kb = parse_program("0.5::a.\n");
    SelectionOutcome out = select_for_query(kb, pool_of("0.7::z.\n0.7::m.\n"), parse_atom("a"),
                                            AssimilationPolicy::Union);
    CHECK(canonical(out.chosen) == "0.7::m.");

    SelectionOutcome certain = select_for_query(Program{}, pool_of("1.0::a.\n0.5::a.\n"),
                                                parse_atom("a"), AssimilationPolicy::Union);
    CHECK(canonical(certain.chosen) == "1.0::a.");
}

TEST_CASE("select_for_query_constrained: length bound") {
    Program kb;
    Atom q = parse_atom("a");
    // "0.95::a." is 8 bytes -> 96 bits; "0.5::a." is 7 bytes -> 88 bits.
    CandidatePool pool = pool_of("0.95::a.\n0.5::a.\n");

    SelectionOutcome best = select_for_query_constrained(kb, pool, q, kInf, wire_length,
                                                         AssimilationPolicy::Union);
    CHECK(canonical(best.chosen) == "0.95::a.");
    CHECK(best.feasible_count == 2);

    SelectionOutcome constrained = select_for_query_constrained(kb, pool, q, 88.0, wire_length,
                                                                AssimilationPolicy::Union);
    CHECK(canonical(constrained.chosen) == "0.5::a.");
    CHECK(constrained.feasible_count == 1);

    CHECK_THROWS_AS(
        select_for_query_constrained(kb, pool, q, 80.0, wire_length, AssimilationPolicy::Union),
        NoFeasibleMessageError);
}

TEST_CASE("selection: argmin matches semantic content over random pools") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 100; ++i) {
        Program kb = testutil::random_program(rng);
        CandidatePool pool;
        int n = 2 + static_cast<int>(rng() % 3);
        for (int j = 0; j < n; ++j) pool.messages.push_back(testutil::random_clause(rng));

        SelectionOutcome out = select_for_kb(kb, pool, AssimilationPolicy::Union);
        double chosen_content = semantic_content(kb, out.chosen, AssimilationPolicy::Union);
        for (const auto& m : pool.messages)
            CHECK(chosen_content <=
                  semantic_content(kb, m, AssimilationPolicy::Union) + 1e-12);

        // Ranking is ascending and its head is the chosen score.
        for (std::size_t r = 1; r < out.ranking.size(); ++r)
            CHECK(out.ranking[r - 1].second <= out.ranking[r].second);
        CHECK(out.score == out.ranking.front().second);
    }
}

TEST_CASE("selection: belief weight rescaling leaves the argmin unchanged") {
    std::mt19937_64 rng(67);
    Program a1 = parse_program("0.3::b.\n0.5::a :- b.\n");
    Program a2 = parse_program("0.6::c.\n");
    CandidatePool pool = pool_of("0.9::b.\n0.2::m.\n0.8::c.\n");

    SenderBelief belief;
    belief.hypotheses.push_back({a1, 0.25});
    belief.hypotheses.push_back({a2, 0.75});
    SelectionOutcome base = select_expected(belief, pool, AssimilationPolicy::Union);

    // Same ratios expressed with different (renormalized) weights.
    SenderBelief scaled;
    scaled.hypotheses.push_back({a1, 0.2 / 0.8});
    scaled.hypotheses.push_back({a2, 0.6 / 0.8});
    SelectionOutcome out = select_expected(scaled, pool, AssimilationPolicy::Union);
    CHECK(canonical(out.chosen) == canonical(base.chosen));
}

TEST_CASE("selection: relaxing the length bound never hurts") {
    Program kb = parse_program("0.3::b.\n0.5::a :- b.\n");
    CandidatePool pool = pool_of("0.9::b.\n0.95::abcdefg.\n0.2::m.\n");
    Atom q = parse_atom("a");

    double previous = std::numeric_limits<double>::infinity();
    for (double l_max : {88.0, 96.0, 104.0, 1000.0}) {
        SelectionOutcome out = select_for_query_constrained(kb, pool, q, l_max, wire_length,
                                                            AssimilationPolicy::Union);
        CHECK(out.score <= previous + 1e-12);
        previous = out.score;
    }
}
