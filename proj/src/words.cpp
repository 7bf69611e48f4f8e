#include "wordeq/words.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wordeq {

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) {
        return std::to_string(r.numerator());
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_integer(std::string_view text) {
    std::int64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    }
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

Rational max_value(const std::map<char, Rational>& values) {
    Rational best = 0;
    for (const auto& [symbol, value] : values) {
        best = std::max(best, value);
    }
    return best;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text));
    }
    auto den = parse_integer(text.substr(slash + 1));
    if (den == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(parse_integer(text.substr(0, slash)), den);
}

// ---------------------------------------------------------------------------
// Alphabet

Alphabet Alphabet::with_default_values(std::string_view symbols) {
    Alphabet result;
    std::int64_t next = 1;
    for (char c : symbols) {
        if (!result.contains(c)) {
            result.set(c, Rational(next++));
        }
    }
    return result;
}

Alphabet Alphabet::parse(std::string_view text) {
    Alphabet result;
    text = trim(text);
    while (!text.empty()) {
        auto comma = text.find(',');
        auto item = trim(text.substr(0, comma));
        auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("expected letter=value, got '" + std::string(item) + "'");
        }
        auto letter = trim(item.substr(0, eq));
        if (letter.size() != 1 || letter[0] < 'a' || letter[0] > 'z') {
            throw std::invalid_argument("bad letter '" + std::string(letter) + "'");
        }
        if (result.contains(letter[0])) {
            throw std::invalid_argument(std::string("letter valued twice: ") + letter[0]);
        }
        result.set(letter[0], parse_rational(item.substr(eq + 1)));
        if (comma == std::string_view::npos) {
            break;
        }
        text = trim(text.substr(comma + 1));
    }
    return result;
}

void Alphabet::set(char symbol, Rational value) {
    for (const auto& [other, v] : values_) {
        if (other != symbol && v == value) {
            throw std::invalid_argument(std::string("letters '") + other + "' and '" + symbol +
                                        "' would share the value " + wordeq::to_string(value));
        }
    }
    values_[symbol] = value;
}

Rational Alphabet::value(char symbol) const {
    auto it = values_.find(symbol);
    if (it == values_.end()) {
        throw std::out_of_range(std::string("letter '") + symbol + "' has no value");
    }
    return it->second;
}

bool Alphabet::covers(std::string_view w) const {
    return std::all_of(w.begin(), w.end(), [this](char c) { return contains(c); });
}

std::string Alphabet::symbols() const {
    std::string out;
    for (const auto& [symbol, value] : values_) {
        out.push_back(symbol);
    }
    return out;
}

Alphabet Alphabet::negated() const {
    Alphabet result;
    for (const auto& [symbol, value] : values_) {
        result.values_[symbol] = -value;
    }
    return result;
}

Alphabet Alphabet::extended_by(std::string_view w) const {
    Alphabet result = *this;
    Rational next = max_value(values_) + 1;
    std::string missing(w);
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    for (char c : missing) {
        if (!result.contains(c)) {
            result.values_[c] = next;
            next += 1;
        }
    }
    return result;
}

std::string Alphabet::to_string() const {
    std::string out;
    for (const auto& [symbol, value] : values_) {
        if (!out.empty()) {
            out.push_back(',');
        }
        out.push_back(symbol);
        out.push_back('=');
        out += wordeq::to_string(value);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Height

Rational Height::value() const {
    if (!value_) {
        throw std::logic_error("height of the empty word has no rational value");
    }
    return *value_;
}

std::string Height::to_string() const {
    return value_ ? wordeq::to_string(*value_) : "-inf";
}

std::strong_ordering operator<=>(const Height& a, const Height& b) {
    if (a.is_bottom() || b.is_bottom()) {
        return b.is_bottom() <=> a.is_bottom();
    }
    if (*a.value_ < *b.value_) {
        return std::strong_ordering::less;
    }
    if (*b.value_ < *a.value_) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Sums

Rational word_sum(std::string_view w, const Alphabet& alphabet) {
    Rational sum = 0;
    for (char c : w) {
        sum += alphabet.value(c);
    }
    return sum;
}

PrefixSumWord psw(std::string_view w, const Alphabet& alphabet, Rational offset) {
    PrefixSumWord out;
    out.reserve(w.size());
    Rational running = offset;
    for (char c : w) {
        running += alphabet.value(c);
        out.push_back(running);
    }
    return out;
}

Height height(std::string_view w, const Alphabet& alphabet) {
    if (w.empty()) {
        return Height::bottom();
    }
    auto sums = psw(w, alphabet);
    return Height(*std::max_element(sums.begin(), sums.end()));
}

Rational area(std::string_view w, const Alphabet& alphabet) {
    auto sums = psw(w, alphabet);
    return std::accumulate(sums.begin(), sums.end(), Rational(0));
}

Word highest_prefix(std::string_view w, const Alphabet& alphabet) {
    if (w.empty()) {
        return {};
    }
    auto sums = psw(w, alphabet);
    auto top = std::max_element(sums.begin(), sums.end());  // first maximum
    return Word(w.substr(0, static_cast<std::size_t>(top - sums.begin()) + 1));
}

Alphabet normalize_alphabet(std::string_view w, const Alphabet& current) {
    if (w.empty()) {
        throw std::invalid_argument("normalize_alphabet: empty word");
    }
    if (current.covers(w) && word_sum(w, current) == Rational(0)) {
        return current;
    }

    std::map<char, std::int64_t> counts;
    for (char c : w) {
        ++counts[c];
    }
    char pivot = counts.begin()->first;
    for (const auto& [symbol, count] : counts) {
        if (count <= counts[pivot]) {
            pivot = symbol;
        }
    }

    std::map<char, Rational> values;
    std::int64_t next = 1;
    Rational balance = 0;
    for (const auto& [symbol, count] : counts) {
        if (symbol == pivot) {
            continue;
        }
        values[symbol] = Rational(next);
        balance += Rational(next * count);
        ++next;
    }
    values[pivot] = -balance / counts[pivot];

    std::int64_t scale = 1;
    for (const auto& [symbol, value] : values) {
        scale = std::lcm(scale, value.denominator());
    }
    Alphabet result;
    for (const auto& [symbol, value] : values) {
        result.set(symbol, value * scale);
    }
    std::string others;
    for (const auto& [symbol, value] : current.values()) {
        if (!counts.count(symbol)) {
            others.push_back(symbol);
        }
    }
    return result.extended_by(others);
}

std::vector<Word> zero_sum_factorize(std::string_view w, const Alphabet& alphabet) {
    std::vector<Word> factors;
    Rational running = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        running += alphabet.value(w[i]);
        if (running == Rational(0)) {
            factors.emplace_back(w.substr(start, i + 1 - start));
            start = i + 1;
        }
    }
    if (start != w.size()) {
        throw std::invalid_argument("zero_sum_factorize: '" + std::string(w) + "' is not zero-sum");
    }
    return factors;
}

// ---------------------------------------------------------------------------
// Periodicity

PrimitiveRoot primitive_root(std::string_view w) {
    const std::size_t n = w.size();
    if (n == 0) {
        throw std::invalid_argument("primitive_root: empty word");
    }
    // KMP border table; the smallest period is n - border(w).
    std::vector<std::size_t> border(n + 1, 0);
    for (std::size_t i = 1, k = 0; i < n; ++i) {
        while (k > 0 && w[i] != w[k]) {
            k = border[k];
        }
        if (w[i] == w[k]) {
            ++k;
        }
        border[i + 1] = k;
    }
    std::size_t period = n - border[n];
    if (n % period != 0) {
        period = n;
    }
    return {Word(w.substr(0, period)), n / period};
}

bool is_primitive(std::string_view w) {
    return !w.empty() && primitive_root(w).exponent == 1;
}

Word power(std::string_view w, std::size_t k) {
    Word out;
    out.reserve(w.size() * k);
    for (std::size_t i = 0; i < k; ++i) {
        out += w;
    }
    return out;
}

bool is_prefix(std::string_view prefix, std::string_view w) {
    return prefix.size() <= w.size() && w.substr(0, prefix.size()) == prefix;
}

bool is_suffix(std::string_view suffix, std::string_view w) {
    return suffix.size() <= w.size() && w.substr(w.size() - suffix.size()) == suffix;
}

bool shortlex_less(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) {
        return a.size() < b.size();
    }
    return a < b;
}

}  // namespace wordeq
