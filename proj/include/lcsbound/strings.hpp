// strings.hpp -- d-tuples of fixed-length words over a small alphabet

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lcsbound {

/// A character of the alphabet {0, ..., sigma-1}.
using Symbol = int;

/// A word in list-of-characters form; index 0 is the head.
using Word = std::vector<Symbol>;

/// Dimensions of the tuple space: alphabet size, number of words, word
/// length.  Every vector indexed by tuples has exactly states() entries.
struct Shape {
    int sigma = 2;
    int d = 2;
    int l = 1;

    /// Builds a shape and rejects sigma < 2, d < 2, l < 1 or a tuple space
    /// that does not fit in 62 bits.
    static Shape checked(int sigma, int d, int l);

    std::uint64_t words() const;   ///< sigma^l
    std::uint64_t states() const;  ///< sigma^(l*d)

    bool operator==(const Shape&) const = default;
};

/// Integer power with overflow detection; returns false if the result
/// exceeds `limit`.
bool checked_pow(std::uint64_t base, int exp, std::uint64_t limit,
                 std::uint64_t& out);

/// A d-tuple of length-l words.  Words are kept as their big-endian
/// integer codes (head is the most significant digit).
class TupleState {
public:
    TupleState(Shape shape, std::vector<std::uint64_t> codes);

    /// Builds a state from explicit words; every word must have length
    /// shape.l and characters below shape.sigma.
    static TupleState from_words(Shape shape, const std::vector<Word>& words);

    const Shape& shape() const { return shape_; }
    const std::vector<std::uint64_t>& codes() const { return codes_; }
    std::uint64_t code(int i) const { return codes_.at(i); }

    Word word(int i) const;
    std::vector<Word> words() const;
    Symbol head(int i) const;

    bool operator==(const TupleState&) const = default;

private:
    Shape shape_;
    std::vector<std::uint64_t> codes_;
};

/// Indices (0-based) of the words whose head differs from `z`.
struct HeadSet {
    Symbol z = 0;
    std::vector<int> indices;

    bool empty() const { return indices.empty(); }
    std::size_t size() const { return indices.size(); }
};

/// Assignment of one appended character per shifted word, keyed by word
/// index.  Its key set must equal the HeadSet it completes.
using Completion = std::map<int, Symbol>;

std::uint64_t word_code(const Word& word, int sigma);
Word word_from_code(std::uint64_t code, int sigma, int l);

std::uint64_t encode(const TupleState& state);
TupleState decode(std::uint64_t index, const Shape& shape);

Symbol head(const Word& word);
Word tail(const Word& word);

HeadSet n_z(const TupleState& state, Symbol z);

/// Shifts every word whose head is not `z` one step left and appends the
/// character chosen by `c`.  Words starting with `z` are left untouched.
TupleState tau_z(const TupleState& state, Symbol z, const Completion& c);

bool all_heads_equal(const TupleState& state);

// Text syntax: a word is a run of digits "0".."9", a tuple is a
// comma-separated list of words.

Word parse_word(std::string_view text, int sigma);
TupleState parse_tuple(std::string_view text, int sigma);
std::string format_word(const Word& word);
std::string format_tuple(const TupleState& state);

}  // namespace lcsbound
