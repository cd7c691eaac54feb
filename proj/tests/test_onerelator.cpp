#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "whitehead/onerelator.hpp"
#include "whitehead/serialization.hpp"

#include "oracles.hpp"

using namespace whitehead;

TEST_CASE("relators classify by their minimal core", "[onerelator]") {
    const Alphabet f2(2);

    const auto rigid = classify_relator(parse_word("aabaBB", f2), f2);
    CHECK(rigid.sm);
    CHECK(rigid.ts);
    CHECK(rigid.z);
    CHECK_FALSE(rigid.proper_power);
    CHECK_FALSE(rigid.primitive);
    CHECK(rigid.generic_conditional);
    CHECK(to_string(rigid.core.word(), f2) == "aabaBB");

    // Conjugating the relator does not change the classification.
    const auto conjugated = classify_relator(parse_word("baabaBBB", f2), f2);
    CHECK(to_string(conjugated.word, f2) == "baabaBBB");
    CHECK(to_string(conjugated.core.word(), f2) == "aabaBB");
    CHECK(conjugated.z);

    const auto squared = classify_relator(parse_word("abab", f2), f2);
    CHECK(squared.proper_power);
    CHECK_FALSE(squared.sm);
    CHECK_FALSE(squared.primitive);
    CHECK_FALSE(squared.generic_conditional);

    const auto primitive = classify_relator(parse_word("abA", f2), f2);
    CHECK(primitive.primitive);
    CHECK_FALSE(primitive.proper_power);
    CHECK_FALSE(primitive.sm);

    CHECK_THROWS_AS(classify_relator(Word(), f2), std::invalid_argument);
}

TEST_CASE("generic isomorphism recovers the planted data", "[onerelator]") {
    const Alphabet f2(2);
    std::mt19937 gen(7);
    const auto relabelings = enumerate_relabelings(f2);

    for (int trial = 0; trial < 20; ++trial) {
        const CyclicWord w =
            sample_cyclically_reduced(f2, {100, 9001, static_cast<std::uint64_t>(trial)});
        REQUIRE(is_z(w, f2));
        const Word u = w.word();
        const CyclicWord core = cyclic_reduce(u).core;

        const Relabeling& tau = relabelings[gen() % relabelings.size()];
        const bool inverted = gen() & 1;
        const std::size_t rotation = gen() % 100;
        Word planted = Word::from_reduced(oracle::rotate_left(core.letters(), rotation));
        planted = tau.apply(planted);
        if (inverted) planted = planted.inverse();
        const Word g = oracle::random_reduced(f2, static_cast<int>(gen() % 9), gen);

        std::vector<Letter> raw(g.letters());
        raw.insert(raw.end(), planted.letters().begin(), planted.letters().end());
        const Word gi = g.inverse();
        raw.insert(raw.end(), gi.letters().begin(), gi.letters().end());
        const Word v = free_reduce(raw);

        const auto decision = isomorphic_generic(u, v, f2);
        REQUIRE(decision.verdict == IsoVerdict::isomorphic);
        REQUIRE(decision.relabeling.has_value());
        CHECK(to_json(*decision.relabeling, f2) == to_json(tau, f2));
        CHECK(decision.inverted == inverted);

        // The reported triple reconstructs the minimized v exactly.
        const Word image = decision.relabeling->apply(core.word());
        const Word target = decision.inverted ? decision.v_minimal.inverse() : decision.v_minimal;
        CHECK(oracle::rotate_left(image.letters(), decision.rotation) == target.letters());

        // Words in Z leave no second solution.
        int solutions = 0;
        for (const auto& rho : relabelings) {
            const Word candidate = rho.apply(core.word());
            if (rotation_offset(candidate.span(), decision.v_minimal.letters())) ++solutions;
            if (rotation_offset(candidate.span(), decision.v_minimal.inverse().letters()))
                ++solutions;
        }
        CHECK(solutions == 1);
    }
}

TEST_CASE("isomorphism separates and refuses as documented", "[onerelator]") {
    const Alphabet f2(2);

    // Two rigid relators of the same length in different classes.
    const auto separated =
        isomorphic_generic(parse_word("aaabaBB", f2), parse_word("aaabAbb", f2), f2);
    CHECK(separated.verdict == IsoVerdict::not_isomorphic);
    CHECK_FALSE(separated.relabeling.has_value());

    // Different minimal lengths are separated immediately.
    const auto shorter =
        isomorphic_generic(parse_word("aabaBB", f2), parse_word("aaa", f2), f2);
    CHECK(shorter.verdict == IsoVerdict::not_isomorphic);
    CHECK(shorter.v_minimal.size() == 3);

    // Outside Z the classification is refused, not guessed.
    for (const char* text : {"abAB", "aaabbb", "abab"}) {
        const auto refused = isomorphic_generic(parse_word(text, f2), parse_word(text, f2), f2);
        CHECK(refused.verdict == IsoVerdict::undecided);
        CHECK(refused.note == "relator is not in Z; the generic classification does not apply");
        CHECK_FALSE(refused.relabeling.has_value());
    }

    CHECK_THROWS_AS(isomorphic_generic(Word(), parse_word("a", f2), f2),
                    std::invalid_argument);
    CHECK_THROWS_AS(isomorphic_generic(parse_word("a", f2), Word(), f2),
                    std::invalid_argument);
}

TEST_CASE("relator classes are counted exactly at small lengths", "[onerelator]") {
    const Alphabet f2(2);

    const auto one = count_relator_classes(1, f2);
    CHECK(one.words == BigInt(4));
    CHECK(one.classes == 1);
    CHECK(one.exact);

    const auto two = count_relator_classes(2, f2);
    CHECK(two.words == BigInt(12));
    CHECK(two.classes == 2); // squares and primitive pairs
    CHECK(two.exact);

    const auto three = count_relator_classes(3, f2);
    CHECK(three.words == BigInt(28));
    CHECK(three.classes == 2); // cubes and primitives
    CHECK(three.exact);

    const auto four = count_relator_classes(4, f2);
    CHECK(four.words == BigInt(84));
    CHECK(four.classes == 5);
    CHECK(four.exact);

    // A starved budget degrades to an inexact overcount, and says so.
    const auto starved = count_relator_classes(4, f2, 2);
    CHECK_FALSE(starved.exact);
    CHECK(starved.classes == 8);

    CHECK_THROWS_AS(count_relator_classes(0, f2), std::invalid_argument);
    CHECK_THROWS_AS(count_relator_classes(-3, f2), std::invalid_argument);
}

TEST_CASE("relator class counts match the orbit partition", "[onerelator]") {
    const Alphabet f2(2);
    const int length = 3;
    oracle::OrbitPartition partition(f2, length);

    // Merge each orbit class with the class of its inverses, then count the
    // classes populated at the target length.
    std::map<std::size_t, std::size_t> merge;
    const auto root = [&](std::size_t c) {
        while (merge.count(c) && merge.at(c) != c) c = merge.at(c);
        return c;
    };
    std::set<std::string> seen;
    std::vector<CyclicWord> words;
    for (const auto& w : oracle::all_cyclic_words(f2, length)) {
        const std::string key = oracle::text_key(oracle::least_rotation(w.letters()), f2);
        if (!seen.insert(key).second) continue;
        words.push_back(w);
        const std::size_t direct = partition.class_of(w, f2);
        const std::size_t inverse = partition.class_of(w.inverse(), f2);
        merge.emplace(direct, direct);
        merge.emplace(inverse, inverse);
        merge[root(direct)] = root(inverse);
    }
    std::set<std::size_t> classes;
    for (const auto& w : words) classes.insert(root(partition.class_of(w, f2)));

    CHECK(classes.size() == count_relator_classes(length, f2).classes);
}
