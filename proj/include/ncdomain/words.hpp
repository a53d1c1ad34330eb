#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace ncdomain {

// A word in the unital free semigroup on n generators.  Letters are
// 0-based generator indices; the empty word is the identity.
struct Word {
    std::vector<int> letters;

    Word() = default;
    explicit Word(std::vector<int> l) : letters(std::move(l)) {}

    static Word empty() { return Word{}; }

    std::size_t length() const { return letters.size(); }
    bool is_empty() const { return letters.empty(); }

    Word concat(const Word& other) const;
    Word reversed() const;

    bool operator==(const Word& other) const = default;
    // Graded-lexicographic: by length first, then letter-wise.  This is
    // the canonical basis order for every matrix in the library.
    bool operator<(const Word& other) const;
};

struct WordHash {
    std::size_t operator()(const Word& w) const;
};

std::string to_string(const Word& w);

// All words of length <= max_len over n generators, in graded-lex order.
// The empty word comes first; total count is sum_{k<=max_len} n^k.
std::vector<Word> enumerate_words(int n, int max_len);

std::size_t count_words(int n, int max_len);

// Position of w in the graded-lex enumeration for generator count n.
std::size_t word_index(int n, const Word& w);

// All factorizations g = beta * alpha with |beta| >= 1, ordered by
// |beta| ascending.  Rejects the empty word.
std::vector<std::pair<Word, Word>> prefix_splits(const Word& g);

// All factorizations g = alpha * beta with |beta| >= 1, returned as
// (beta, alpha) pairs ordered by |beta| ascending.
std::vector<std::pair<Word, Word>> suffix_splits(const Word& g);

// The set of words whose letter-count histogram equals the multidegree k.
struct DegreeClass {
    std::vector<int> multidegree;
    std::vector<Word> members; // graded-lex order
};

DegreeClass degree_class(const std::vector<int>& k);

// All multidegrees k in N_0^n with |k| <= m, graded-lex ordered.
std::vector<std::vector<int>> multidegrees_up_to(int n, int m);

// Letter-count histogram of a word.
std::vector<int> multidegree_of(int n, const Word& w);

} // namespace ncdomain
