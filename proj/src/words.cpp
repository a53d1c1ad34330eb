#include "ncdomain/words.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "ncdomain/errors.hpp"

namespace ncdomain {

Word Word::concat(const Word& other) const {
    std::vector<int> out = letters;
    out.insert(out.end(), other.letters.begin(), other.letters.end());
    return Word(std::move(out));
}

Word Word::reversed() const {
    std::vector<int> out(letters.rbegin(), letters.rend());
    return Word(std::move(out));
}

bool Word::operator<(const Word& other) const {
    if (letters.size() != other.letters.size())
        return letters.size() < other.letters.size();
    return letters < other.letters;
}

std::size_t WordHash::operator()(const Word& w) const {
    std::size_t h = 1469598103934665603ull;
    for (int l : w.letters) {
        h ^= static_cast<std::size_t>(l) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    return h;
}

std::string to_string(const Word& w) {
    if (w.is_empty()) return "e";
    std::ostringstream os;
    os << "g";
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (i) os << ".g";
        os << w.letters[i];
    }
    return os.str();
}

std::vector<Word> enumerate_words(int n, int max_len) {
    if (n < 1) throw ValidationError("generator count must be >= 1");
    if (max_len < 0) throw ValidationError("max length must be >= 0");
    std::vector<Word> out;
    out.reserve(count_words(n, max_len));
    out.push_back(Word::empty());
    std::size_t level_begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        std::size_t level_end = out.size();
        for (std::size_t j = level_begin; j < level_end; ++j) {
            for (int i = 0; i < n; ++i) {
                std::vector<int> l = out[j].letters;
                l.push_back(i);
                out.emplace_back(std::move(l));
            }
        }
        level_begin = level_end;
    }
    return out;
}

std::size_t count_words(int n, int max_len) {
    std::size_t total = 0, level = 1;
    for (int k = 0; k <= max_len; ++k) {
        total += level;
        level *= static_cast<std::size_t>(n);
    }
    return total;
}

std::size_t word_index(int n, const Word& w) {
    // offset of the length-|w| level, plus the base-n value of the word
    std::size_t offset = 0, level = 1;
    for (std::size_t k = 0; k < w.length(); ++k) {
        offset += level;
        level *= static_cast<std::size_t>(n);
    }
    std::size_t value = 0;
    for (int l : w.letters)
        value = value * static_cast<std::size_t>(n) + static_cast<std::size_t>(l);
    return offset + value;
}

std::vector<std::pair<Word, Word>> prefix_splits(const Word& g) {
    if (g.is_empty()) throw ValidationError("prefix_splits: empty word has no splits");
    std::vector<std::pair<Word, Word>> out;
    out.reserve(g.length());
    for (std::size_t cut = 1; cut <= g.length(); ++cut) {
        Word beta(std::vector<int>(g.letters.begin(), g.letters.begin() + cut));
        Word alpha(std::vector<int>(g.letters.begin() + cut, g.letters.end()));
        out.emplace_back(std::move(beta), std::move(alpha));
    }
    return out;
}

std::vector<std::pair<Word, Word>> suffix_splits(const Word& g) {
    if (g.is_empty()) throw ValidationError("suffix_splits: empty word has no splits");
    std::vector<std::pair<Word, Word>> out;
    out.reserve(g.length());
    for (std::size_t cut = 1; cut <= g.length(); ++cut) {
        Word alpha(std::vector<int>(g.letters.begin(), g.letters.end() - cut));
        Word beta(std::vector<int>(g.letters.end() - cut, g.letters.end()));
        out.emplace_back(std::move(beta), std::move(alpha));
    }
    return out;
}

DegreeClass degree_class(const std::vector<int>& k) {
    for (int c : k)
        if (c < 0) throw ValidationError("degree_class: negative multidegree component");
    const int n = static_cast<int>(k.size());
    DegreeClass dc;
    dc.multidegree = k;
    std::vector<int> remaining = k;
    std::vector<int> current;
    std::function<void()> rec = [&]() {
        if (std::all_of(remaining.begin(), remaining.end(), [](int c) { return c == 0; })) {
            dc.members.emplace_back(current);
            return;
        }
        for (int i = 0; i < n; ++i) {
            if (remaining[i] == 0) continue;
            --remaining[i];
            current.push_back(i);
            rec();
            current.pop_back();
            ++remaining[i];
        }
    };
    rec();
    std::sort(dc.members.begin(), dc.members.end());
    return dc;
}

std::vector<std::vector<int>> multidegrees_up_to(int n, int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> k(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int pos, int budget) {
        if (pos == n) {
            out.push_back(k);
            return;
        }
        for (int c = 0; c <= budget; ++c) {
            k[static_cast<std::size_t>(pos)] = c;
            rec(pos + 1, budget - c);
        }
        k[static_cast<std::size_t>(pos)] = 0;
    };
    rec(0, m);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int sa = 0, sb = 0;
        for (int c : a) sa += c;
        for (int c : b) sb += c;
        if (sa != sb) return sa < sb;
        return a < b;
    });
    return out;
}

std::vector<int> multidegree_of(int n, const Word& w) {
    std::vector<int> k(static_cast<std::size_t>(n), 0);
    for (int l : w.letters) ++k[static_cast<std::size_t>(l)];
    return k;
}

} // namespace ncdomain
