#include "wordeq/normal_form.hpp"

#include <stdexcept>

namespace wordeq {

namespace {

using Blocks = std::vector<Word>;

// |b_0 ... b_i|, 0 for i = -1.
std::size_t prefix_len(const Blocks& b, std::ptrdiff_t i) {
    std::size_t total = 0;
    for (std::ptrdiff_t k = 0; k <= i; ++k) {
        total += b[static_cast<std::size_t>(k)].size();
    }
    return total;
}

std::optional<std::size_t> find_merge(const Blocks& u, const Blocks& v) {
    const auto n = u.size() - 1;
    for (std::size_t j = 0; j < n; ++j) {
        const auto sj = static_cast<std::ptrdiff_t>(j);
        if (prefix_len(u, sj) == prefix_len(v, sj)) {
            return j;
        }
    }
    return std::nullopt;
}

void apply_merge(Blocks& u, Blocks& v, std::size_t j) {
    u[j] += u[j + 1];
    u.erase(u.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    v[j] += v[j + 1];
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(j) + 1);
}

// Index i where u_i = pq, v_i = qr with |u_0..u_{i-1} p| = |v_0..v_{i-1}|
// and q nonempty.
std::optional<std::size_t> find_overlap(const Blocks& u, const Blocks& v) {
    const auto n = u.size() - 1;
    for (std::size_t i = 0; i <= n; ++i) {
        const auto si = static_cast<std::ptrdiff_t>(i);
        const auto pu_prev = prefix_len(u, si - 1);
        const auto pv_prev = prefix_len(v, si - 1);
        const auto pu = prefix_len(u, si);
        if (pu > pv_prev && pu_prev <= pv_prev && pu <= prefix_len(v, si)) {
            return i;
        }
    }
    return std::nullopt;
}

void apply_overlap(Blocks& u, Blocks& v, std::size_t i) {
    const auto si = static_cast<std::ptrdiff_t>(i);
    const auto p_len = prefix_len(v, si - 1) - prefix_len(u, si - 1);
    const Word q = u[i].substr(p_len);
    if (!is_prefix(q, v[i])) {
        // Cannot happen while the empty word is a solution.
        throw std::logic_error("overlap rule: block mismatch at index " + std::to_string(i));
    }
    u[i].resize(p_len);
    v[i].erase(0, q.size());
}

void apply_rotate(Blocks& u, Blocks& v, std::size_t j) {
    const auto sj = static_cast<std::ptrdiff_t>(j);
    const auto p_len = prefix_len(v, sj) - prefix_len(u, sj - 1);
    const Word p = u[j].substr(0, p_len);
    const Word q = u[j].substr(p_len);
    Blocks nu(u.begin(), u.begin() + sj);
    nu.push_back(p);
    nu.insert(nu.end(), v.begin() + sj + 1, v.end());
    Blocks nv(v.begin(), v.begin() + sj);
    nv.push_back(v[j] + q);
    nv.insert(nv.end(), u.begin() + sj + 1, u.end());
    u = std::move(nu);
    v = std::move(nv);
}

}  // namespace

std::string to_string(RewriteStep::Rule rule) {
    switch (rule) {
        case RewriteStep::Rule::swap:
            return "swap";
        case RewriteStep::Rule::merge:
            return "merge";
        case RewriteStep::Rule::overlap:
            return "overlap";
        case RewriteStep::Rule::rotate:
            return "rotate";
    }
    return "?";
}

nlohmann::json NormalFormResult::to_json() const {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& step : log) {
        steps.push_back({{"rule", to_string(step.rule)}, {"index", step.index}, {"equation", step.result.to_string()}});
    }
    return {{"equation", equation.base.to_string()},
            {"witness", equation.witness},
            {"valuation", equation.valuation.to_string()},
            {"rewrites", steps}};
}

AlignedEquation shift_to_empty(const AlignedEquation& equation, const Word& x0) {
    if (!substitute_check(equation, x0)) {
        throw std::invalid_argument("shift_to_empty: '" + x0 + "' is not a solution of " + equation.to_string());
    }
    auto u = equation.u();
    auto v = equation.v();
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        u[i] += x0;
        v[i] += x0;
    }
    return AlignedEquation(std::move(u), std::move(v));
}

std::size_t first_non_dominated(const AlignedEquation& equation) {
    for (std::size_t j = 0; j < equation.n(); ++j) {
        const auto sj = static_cast<std::ptrdiff_t>(j);
        if (equation.prefix_u(sj) >= equation.prefix_v(sj)) {
            return j;
        }
    }
    return equation.n();
}

NormalFormResult to_normal_form(const AlignedEquation& equation, const Word& witness, const Alphabet& valuation) {
    if (equation.is_trivial()) {
        throw std::invalid_argument("to_normal_form: trivial equation");
    }
    if (!substitute_check(equation, "")) {
        throw std::invalid_argument("to_normal_form: the empty word does not solve " + equation.to_string());
    }
    if (witness.empty() || !substitute_check(equation, witness)) {
        throw std::invalid_argument("to_normal_form: witness '" + witness + "' is not a nonempty solution");
    }

    NormalFormResult result{{equation, witness, normalize_alphabet(witness, valuation)}, {}};
    result.equation.valuation = result.equation.valuation.extended_by(equation.constants());

    Blocks u = equation.u();
    Blocks v = equation.v();
    auto record = [&](RewriteStep::Rule rule, std::size_t index) {
        result.log.push_back({rule, index, AlignedEquation(u, v)});
    };
    if (u[0].size() > v[0].size()) {
        std::swap(u, v);
        record(RewriteStep::Rule::swap, 0);
    }
    while (true) {
        if (auto j = find_merge(u, v)) {
            apply_merge(u, v, *j);
            record(RewriteStep::Rule::merge, *j);
        } else if (auto i = find_overlap(u, v)) {
            apply_overlap(u, v, *i);
            record(RewriteStep::Rule::overlap, *i);
        } else {
            const auto j = first_non_dominated(AlignedEquation(u, v));
            if (j == u.size() - 1) {
                break;
            }
            apply_rotate(u, v, j);
            record(RewriteStep::Rule::rotate, j);
        }
    }
    result.equation.base = AlignedEquation(std::move(u), std::move(v));
    return result;
}

NormalFormReport check_normal_form(const AlignedEquation& equation, const Word& witness, const Alphabet& valuation) {
    NormalFormReport report;
    report.n1 = substitute_check(equation, "") && !witness.empty() && valuation.covers(witness) &&
                word_sum(witness, valuation) == Rational(0) && substitute_check(equation, witness);

    const auto n = equation.n();
    for (std::size_t i = 0; i < n && !report.n2_failure; ++i) {
        const auto si = static_cast<std::ptrdiff_t>(i);
        if (equation.prefix_u(si) >= equation.prefix_v(si)) {
            report.n2_failure = i;
        }
    }
    for (std::size_t i = 0; i <= n && !report.n3_failure; ++i) {
        const auto si = static_cast<std::ptrdiff_t>(i);
        if (equation.prefix_u(si) > equation.prefix_v(si - 1)) {
            report.n3_failure = i;
        }
    }
    report.n2 = !report.n2_failure;
    report.n3 = !report.n3_failure;
    return report;
}

}  // namespace wordeq
