#include "doctest.h"

#include "ncdomain/words.hpp"

using namespace ncdomain;

TEST_CASE("graded-lex enumeration is ordered and indexed consistently") {
    auto words = enumerate_words(2, 3);
    CHECK(words.size() == 15);
    CHECK(count_words(2, 3) == 15);
    CHECK(words.front().is_empty());
    for (std::size_t i = 0; i + 1 < words.size(); ++i) CHECK(words[i] < words[i + 1]);
    for (std::size_t i = 0; i < words.size(); ++i)
        CHECK(word_index(2, words[i]) == i);
    CHECK(count_words(3, 5) == 1 + 3 + 9 + 27 + 81 + 243);
}

TEST_CASE("concat and reversal") {
    Word u({0, 1}), v({1});
    CHECK(u.concat(v) == Word({0, 1, 1}));
    CHECK(u.reversed() == Word({1, 0}));
    CHECK(u.reversed().reversed() == u);
    CHECK(Word::empty().reversed() == Word::empty());
}

TEST_CASE("prefix splits cover all factorizations with nonempty head") {
    Word g({0, 1, 0});
    auto splits = prefix_splits(g);
    CHECK(splits.size() == 3);
    for (const auto& [beta, alpha] : splits) {
        CHECK(beta.length() >= 1);
        CHECK(beta.concat(alpha) == g);
    }
    CHECK(splits.front().first == Word({0}));
    CHECK(splits.back().first == g);
}

TEST_CASE("suffix splits cover all factorizations with nonempty tail") {
    Word g({0, 1, 0});
    auto splits = suffix_splits(g);
    CHECK(splits.size() == 3);
    for (const auto& [beta, alpha] : splits) {
        CHECK(beta.length() >= 1);
        CHECK(alpha.concat(beta) == g);
    }
}

TEST_CASE("degree classes partition each level") {
    auto cls = degree_class({1, 1});
    CHECK(cls.members.size() == 2);
    CHECK(cls.members[0] == Word({0, 1}));
    CHECK(cls.members[1] == Word({1, 0}));

    auto all = multidegrees_up_to(2, 3);
    CHECK(all.size() == 10); // (k+1) multidegrees at total degree k, k <= 3
    std::size_t total = 0;
    for (const auto& k : all) total += degree_class(k).members.size();
    CHECK(total == count_words(2, 3));
    CHECK(multidegree_of(2, Word({1, 0, 1})) == std::vector<int>{1, 2});
}

TEST_CASE("hash agrees on equal words") {
    WordHash h;
    CHECK(h(Word({0, 1})) == h(Word({0, 1})));
    CHECK(h(Word({0, 1})) != h(Word({1, 0})));
}
