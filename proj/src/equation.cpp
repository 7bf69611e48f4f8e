#include "wordeq/equation.hpp"

#include <algorithm>
#include <cctype>

namespace wordeq {

namespace {

std::size_t count_variable(std::string_view side) {
    return static_cast<std::size_t>(std::count(side.begin(), side.end(), kVariable));
}

// Splits a token side into the constant blocks between variable occurrences.
std::vector<Word> blocks_of(std::string_view side) {
    std::vector<Word> blocks(1);
    for (char c : side) {
        if (c == kVariable) {
            blocks.emplace_back();
        } else {
            blocks.back().push_back(c);
        }
    }
    return blocks;
}

std::string join_blocks(const std::vector<Word>& blocks) {
    std::string out = blocks.front();
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        out.push_back(kVariable);
        out += blocks[i];
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// OneVarEquation

std::size_t OneVarEquation::lhs_occurrences() const { return count_variable(lhs); }
std::size_t OneVarEquation::rhs_occurrences() const { return count_variable(rhs); }

std::string OneVarEquation::constants() const {
    std::string out;
    for (char c : lhs + rhs) {
        if (c != kVariable) {
            out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::pair<std::string, std::string> parse_sides(std::string_view text, bool (*accept)(char)) {
    std::string sides[2];
    int side = 0;
    bool separator_seen = false;
    std::size_t first = 0;
    std::size_t last = text.size();
    while (first < last && std::isspace(static_cast<unsigned char>(text[first]))) {
        ++first;
    }
    while (last > first && std::isspace(static_cast<unsigned char>(text[last - 1]))) {
        --last;
    }
    if (first < last && text[first] == '(') {
        if (text[last - 1] != ')') {
            throw ParseError("unbalanced '('", first);
        }
        ++first;
        --last;
    }
    for (std::size_t pos = first; pos < last; ++pos) {
        char c = text[pos];
        if (std::isspace(static_cast<unsigned char>(c))) {
            continue;
        }
        if (c == '=' || c == ',') {
            if (separator_seen) {
                throw ParseError("second '=' separator", pos);
            }
            if (sides[0].empty()) {
                throw ParseError("empty left side", pos);
            }
            separator_seen = true;
            side = 1;
            continue;
        }
        if (accept(c)) {
            sides[side].push_back(c);
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
    if (!separator_seen) {
        throw ParseError("missing '='", last);
    }
    if (sides[1].empty()) {
        throw ParseError("empty right side", last);
    }
    return {sides[0], sides[1]};
}

OneVarEquation parse_equation(std::string_view text) {
    auto [lhs, rhs] = parse_sides(text, [](char c) { return c == kVariable || (c >= 'a' && c <= 'z'); });
    return {std::move(lhs), std::move(rhs)};
}

Word substitute(std::string_view side, std::string_view x) {
    Word out;
    out.reserve(side.size() + count_variable(side) * x.size());
    for (char c : side) {
        if (c == kVariable) {
            out += x;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

bool substitute_check(const OneVarEquation& equation, std::string_view x) {
    // Walks both substituted sides in lockstep without materializing them.
    const auto lhs_x = equation.lhs_occurrences();
    const auto rhs_x = equation.rhs_occurrences();
    const auto lhs_len = equation.lhs.size() - lhs_x + lhs_x * x.size();
    const auto rhs_len = equation.rhs.size() - rhs_x + rhs_x * x.size();
    if (lhs_len != rhs_len) {
        return false;
    }
    struct Cursor {
        std::string_view side;
        std::string_view x;
        std::size_t token = 0;
        std::size_t offset = 0;

        void skip_empty() {
            while (token < side.size() && side[token] == kVariable && offset == x.size()) {
                ++token;
                offset = 0;
            }
        }
        bool done() {
            skip_empty();
            return token == side.size();
        }
        char next() {
            skip_empty();
            if (side[token] != kVariable) {
                return side[token++];
            }
            char c = x[offset++];
            if (offset == x.size()) {
                ++token;
                offset = 0;
            }
            return c;
        }
    };
    Cursor left{equation.lhs, x};
    Cursor right{equation.rhs, x};
    while (!left.done()) {
        if (right.done() || left.next() != right.next()) {
            return false;
        }
    }
    return right.done();
}

// ---------------------------------------------------------------------------
// AlignedEquation

AlignedEquation::AlignedEquation(std::vector<Word> u, std::vector<Word> v) : u_(std::move(u)), v_(std::move(v)) {
    if (u_.empty() || u_.size() != v_.size()) {
        throw std::invalid_argument("aligned equation needs the same number (>= 1) of blocks on both sides");
    }
    if (prefix_u(static_cast<std::ptrdiff_t>(n())) != prefix_v(static_cast<std::ptrdiff_t>(n()))) {
        throw std::invalid_argument("aligned equation needs equal total constant length on both sides");
    }
}

std::size_t AlignedEquation::prefix_u(std::ptrdiff_t i) const {
    std::size_t total = 0;
    for (std::ptrdiff_t k = 0; k <= i; ++k) {
        total += u_.at(static_cast<std::size_t>(k)).size();
    }
    return total;
}

std::size_t AlignedEquation::prefix_v(std::ptrdiff_t i) const {
    std::size_t total = 0;
    for (std::ptrdiff_t k = 0; k <= i; ++k) {
        total += v_.at(static_cast<std::size_t>(k)).size();
    }
    return total;
}

Word AlignedEquation::u_concat(std::size_t first, std::size_t last) const {
    Word out;
    for (std::size_t k = first; k < last; ++k) {
        out += u_.at(k);
    }
    return out;
}

Word AlignedEquation::v_concat(std::size_t first, std::size_t last) const {
    Word out;
    for (std::size_t k = first; k < last; ++k) {
        out += v_.at(k);
    }
    return out;
}

std::size_t AlignedEquation::length() const { return 2 * constant_length() + 2 * n(); }

OneVarEquation AlignedEquation::to_equation() const { return {join_blocks(u_), join_blocks(v_)}; }

bool substitute_check(const AlignedEquation& equation, std::string_view x) {
    return substitute_check(equation.to_equation(), x);
}

AlignedEquation align(const OneVarEquation& equation) {
    const auto left = equation.lhs_occurrences();
    const auto right = equation.rhs_occurrences();
    if (left != right) {
        throw AlignError(AlignError::Kind::unequal_occurrences,
                         "sides have " + std::to_string(left) + " and " + std::to_string(right) + " occurrences of X");
    }
    if (left == 0) {
        throw AlignError(AlignError::Kind::no_variable, "equation has no variable");
    }
    if (equation.lhs.size() != equation.rhs.size()) {
        throw AlignError(AlignError::Kind::unequal_constant_length, "sides have different constant lengths");
    }
    return AlignedEquation(blocks_of(equation.lhs), blocks_of(equation.rhs));
}

std::vector<AlignedEquation> split_by_alignment(const AlignedEquation& equation) {
    struct CutPoint {
        std::size_t k;  // X's consumed on each side
        std::size_t a;  // letters consumed from u_k
        std::size_t b;  // letters consumed from v_k
    };
    std::vector<CutPoint> cuts;
    for (std::size_t k = 0; k <= equation.n(); ++k) {
        const auto before_u = equation.prefix_u(static_cast<std::ptrdiff_t>(k) - 1);
        const auto before_v = equation.prefix_v(static_cast<std::ptrdiff_t>(k) - 1);
        for (std::size_t a = 0; a <= equation.u(k).size(); ++a) {
            const auto reach = before_u + a;
            if (reach < before_v || reach - before_v > equation.v(k).size()) {
                continue;
            }
            cuts.push_back({k, a, reach - before_v});
        }
    }

    std::vector<AlignedEquation> components;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const auto& from = cuts[c];
        const auto& to = cuts[c + 1];
        std::vector<Word> u;
        std::vector<Word> v;
        for (std::size_t k = from.k; k <= to.k; ++k) {
            const std::size_t ua = (k == from.k) ? from.a : 0;
            const std::size_t ub = (k == to.k) ? to.a : equation.u(k).size();
            const std::size_t va = (k == from.k) ? from.b : 0;
            const std::size_t vb = (k == to.k) ? to.b : equation.v(k).size();
            u.push_back(equation.u(k).substr(ua, ub - ua));
            v.push_back(equation.v(k).substr(va, vb - va));
        }
        AlignedEquation component(std::move(u), std::move(v));
        if (component.is_trivial()) {
            continue;
        }
        if (component.n() > 0 && component.u(0).size() > component.v(0).size()) {
            component = component.swapped();
        }
        components.push_back(std::move(component));
    }
    return components;
}

AlignedEquation combine_system(std::span<const AlignedEquation> system) {
    if (system.empty()) {
        throw std::invalid_argument("combine_system: empty system");
    }
    std::vector<Word> u = system.front().u();
    std::vector<Word> v = system.front().v();
    for (std::size_t c = 1; c < system.size(); ++c) {
        const auto& next = system[c];
        u.back() += next.u(0);
        v.back() += next.v(0);
        u.insert(u.end(), next.u().begin() + 1, next.u().end());
        v.insert(v.end(), next.v().begin() + 1, next.v().end());
    }
    return AlignedEquation(std::move(u), std::move(v));
}

// ---------------------------------------------------------------------------
// SolutionSet

SolutionSet SolutionSet::all_words() {
    SolutionSet s;
    s.kind_ = Kind::all;
    return s;
}

SolutionSet SolutionSet::finite(std::vector<Word> solutions) {
    std::sort(solutions.begin(), solutions.end(), shortlex_less);
    solutions.erase(std::unique(solutions.begin(), solutions.end()), solutions.end());
    SolutionSet s;
    s.kind_ = Kind::finite;
    s.solutions_ = std::move(solutions);
    return s;
}

SolutionSet SolutionSet::family(Word p, Word q) {
    if (!is_primitive(p + q)) {
        throw std::invalid_argument("solution family needs pq primitive, got p='" + p + "' q='" + q + "'");
    }
    SolutionSet s;
    s.kind_ = Kind::infinite;
    s.p_ = std::move(p);
    s.q_ = std::move(q);
    return s;
}

bool SolutionSet::contains(std::string_view x) const {
    switch (kind_) {
        case Kind::all:
            return true;
        case Kind::finite:
            return std::find(solutions_.begin(), solutions_.end(), x) != solutions_.end();
        case Kind::infinite: {
            const auto period = p_.size() + q_.size();
            if (x.size() < p_.size() || (x.size() - p_.size()) % period != 0) {
                return false;
            }
            return x == power(p_ + q_, (x.size() - p_.size()) / period) + p_;
        }
    }
    return false;
}

std::vector<Word> SolutionSet::members_up_to(std::size_t max_len) const {
    std::vector<Word> out;
    switch (kind_) {
        case Kind::all:
            throw std::logic_error("members_up_to: the set of all words is not enumerated");
        case Kind::finite:
            for (const auto& w : solutions_) {
                if (w.size() <= max_len) {
                    out.push_back(w);
                }
            }
            break;
        case Kind::infinite: {
            Word member = p_;
            const Word period = p_ + q_;
            while (member.size() <= max_len) {
                out.push_back(member);
                member = period + member;
            }
            break;
        }
    }
    return out;
}

std::optional<std::size_t> SolutionSet::nonempty_count() const {
    if (kind_ != Kind::finite) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(
        std::count_if(solutions_.begin(), solutions_.end(), [](const Word& w) { return !w.empty(); }));
}

namespace {
std::string show(const Word& w) { return w.empty() ? "ε" : w; }
}  // namespace

std::string SolutionSet::describe() const {
    switch (kind_) {
        case Kind::all:
            return "all words";
        case Kind::finite: {
            std::string out = "finite, " + std::to_string(solutions_.size()) + " solution(s): {";
            for (std::size_t i = 0; i < solutions_.size(); ++i) {
                out += (i ? ", " : "") + show(solutions_[i]);
            }
            return out + "}";
        }
        case Kind::infinite:
            return "infinite family (pq)^i p with p=" + show(p_) + ", q=" + show(q_);
    }
    return {};
}

nlohmann::json SolutionSet::to_json() const {
    switch (kind_) {
        case Kind::all:
            return {{"kind", "all"}};
        case Kind::finite:
            return {{"kind", "finite"}, {"solutions", solutions_}};
        case Kind::infinite:
            return {{"kind", "infinite"}, {"p", p_}, {"q", q_}};
    }
    return {};
}

SolutionSet SolutionSet::from_json(const nlohmann::json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "all") {
        return all_words();
    }
    if (kind == "finite") {
        return finite(j.at("solutions").get<std::vector<Word>>());
    }
    if (kind == "infinite") {
        return family(j.at("p").get<Word>(), j.at("q").get<Word>());
    }
    throw std::invalid_argument("unknown solution set kind '" + kind + "'");
}

}  // namespace wordeq
