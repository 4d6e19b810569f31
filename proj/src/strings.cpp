#include "lcsbound/strings.hpp"

#include <stdexcept>

namespace lcsbound {

namespace {

constexpr std::uint64_t kMaxStates = std::uint64_t{1} << 62;

void check_symbol(Symbol c, int sigma) {
    if (c < 0 || c >= sigma) {
        throw std::invalid_argument("character " + std::to_string(c) +
                                    " outside alphabet of size " +
                                    std::to_string(sigma));
    }
}

}  // namespace

bool checked_pow(std::uint64_t base, int exp, std::uint64_t limit,
                 std::uint64_t& out) {
    std::uint64_t acc = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && acc > limit / base) return false;
        acc *= base;
    }
    if (acc > limit) return false;
    out = acc;
    return true;
}

Shape Shape::checked(int sigma, int d, int l) {
    if (sigma < 2) throw std::invalid_argument("alphabet size must be >= 2");
    if (d < 2) throw std::invalid_argument("need at least two words (d >= 2)");
    if (l < 1) throw std::invalid_argument("word length must be >= 1");
    std::uint64_t n = 0;
    if (static_cast<long long>(l) * d > 62 ||
        !checked_pow(static_cast<std::uint64_t>(sigma),
                     l * d, kMaxStates, n)) {
        throw std::invalid_argument("tuple space sigma^(l*d) too large");
    }
    return Shape{sigma, d, l};
}

std::uint64_t Shape::words() const {
    std::uint64_t n = 1;
    for (int i = 0; i < l; ++i) n *= static_cast<std::uint64_t>(sigma);
    return n;
}

std::uint64_t Shape::states() const {
    const std::uint64_t w = words();
    std::uint64_t n = 1;
    for (int i = 0; i < d; ++i) n *= w;
    return n;
}

TupleState::TupleState(Shape shape, std::vector<std::uint64_t> codes)
    : shape_(shape), codes_(std::move(codes)) {
    if (codes_.size() != static_cast<std::size_t>(shape_.d)) {
        throw std::invalid_argument("tuple must hold exactly d words");
    }
    const std::uint64_t w = shape_.words();
    for (auto c : codes_) {
        if (c >= w) throw std::invalid_argument("word code out of range");
    }
}

TupleState TupleState::from_words(Shape shape, const std::vector<Word>& words) {
    if (words.size() != static_cast<std::size_t>(shape.d)) {
        throw std::invalid_argument("tuple must hold exactly d words");
    }
    std::vector<std::uint64_t> codes;
    codes.reserve(words.size());
    for (const auto& w : words) {
        if (w.size() != static_cast<std::size_t>(shape.l)) {
            throw std::invalid_argument("word length differs from l");
        }
        codes.push_back(word_code(w, shape.sigma));
    }
    return TupleState(shape, std::move(codes));
}

Word TupleState::word(int i) const {
    return word_from_code(codes_.at(i), shape_.sigma, shape_.l);
}

std::vector<Word> TupleState::words() const {
    std::vector<Word> out;
    out.reserve(codes_.size());
    for (int i = 0; i < shape_.d; ++i) out.push_back(word(i));
    return out;
}

Symbol TupleState::head(int i) const {
    return static_cast<Symbol>(codes_.at(i) / (shape_.words() / shape_.sigma));
}

std::uint64_t word_code(const Word& word, int sigma) {
    std::uint64_t code = 0;
    for (Symbol c : word) {
        check_symbol(c, sigma);
        code = code * static_cast<std::uint64_t>(sigma) + static_cast<std::uint64_t>(c);
    }
    return code;
}

Word word_from_code(std::uint64_t code, int sigma, int l) {
    Word w(static_cast<std::size_t>(l));
    for (int j = l - 1; j >= 0; --j) {
        w[j] = static_cast<Symbol>(code % sigma);
        code /= sigma;
    }
    return w;
}

std::uint64_t encode(const TupleState& state) {
    const std::uint64_t w = state.shape().words();
    std::uint64_t index = 0;
    for (auto c : state.codes()) index = index * w + c;
    return index;
}

TupleState decode(std::uint64_t index, const Shape& shape) {
    if (index >= shape.states()) {
        throw std::out_of_range("tuple index " + std::to_string(index) +
                                " outside [0, sigma^(l*d))");
    }
    const std::uint64_t w = shape.words();
    std::vector<std::uint64_t> codes(static_cast<std::size_t>(shape.d));
    for (int i = shape.d - 1; i >= 0; --i) {
        codes[i] = index % w;
        index /= w;
    }
    return TupleState(shape, std::move(codes));
}

Symbol head(const Word& word) {
    if (word.empty()) throw std::invalid_argument("head of empty word");
    return word.front();
}

Word tail(const Word& word) {
    if (word.empty()) throw std::invalid_argument("tail of empty word");
    return Word(word.begin() + 1, word.end());
}

HeadSet n_z(const TupleState& state, Symbol z) {
    check_symbol(z, state.shape().sigma);
    HeadSet hs{z, {}};
    for (int i = 0; i < state.shape().d; ++i) {
        if (state.head(i) != z) hs.indices.push_back(i);
    }
    return hs;
}

TupleState tau_z(const TupleState& state, Symbol z, const Completion& c) {
    const HeadSet hs = n_z(state, z);
    if (c.size() != hs.size()) {
        throw std::invalid_argument("completion domain differs from N_z");
    }
    const Shape& s = state.shape();
    const std::uint64_t rest = s.words() / s.sigma;
    std::vector<std::uint64_t> codes = state.codes();
    for (int i : hs.indices) {
        auto it = c.find(i);
        if (it == c.end()) {
            throw std::invalid_argument("completion domain differs from N_z");
        }
        check_symbol(it->second, s.sigma);
        codes[i] = (codes[i] % rest) * s.sigma + static_cast<std::uint64_t>(it->second);
    }
    return TupleState(s, std::move(codes));
}

bool all_heads_equal(const TupleState& state) {
    const Symbol h = state.head(0);
    for (int i = 1; i < state.shape().d; ++i) {
        if (state.head(i) != h) return false;
    }
    return true;
}

Word parse_word(std::string_view text, int sigma) {
    if (sigma > 10) {
        throw std::invalid_argument("text syntax supports alphabets up to 10");
    }
    Word w;
    w.reserve(text.size());
    for (char ch : text) {
        if (ch < '0' || ch > '9') {
            throw std::invalid_argument("invalid character '" + std::string(1, ch) +
                                        "' in word");
        }
        const Symbol c = ch - '0';
        check_symbol(c, sigma);
        w.push_back(c);
    }
    return w;
}

TupleState parse_tuple(std::string_view text, int sigma) {
    std::vector<Word> words;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        words.push_back(parse_word(text.substr(start, comma - start), sigma));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    const int l = static_cast<int>(words.front().size());
    const Shape shape = Shape::checked(sigma, static_cast<int>(words.size()), l);
    return TupleState::from_words(shape, words);
}

std::string format_word(const Word& word) {
    std::string s;
    s.reserve(word.size());
    for (Symbol c : word) {
        if (c < 0 || c > 9) throw std::invalid_argument("character not printable");
        s.push_back(static_cast<char>('0' + c));
    }
    return s;
}

std::string format_tuple(const TupleState& state) {
    std::string s;
    for (int i = 0; i < state.shape().d; ++i) {
        if (i) s.push_back(',');
        s += format_word(state.word(i));
    }
    return s;
}

}  // namespace lcsbound
