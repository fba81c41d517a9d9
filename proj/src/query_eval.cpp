#include <algorithm>
#include <set>

#include "seanet/query.hpp"

namespace seanet::query {

namespace {

using Binding = std::vector<std::pair<std::string, rdf::Term>>;

const rdf::Term* lookup(const Binding& b, const std::string& name) {
    for (const auto& [n, t] : b)
        if (n == name) return &t;
    return nullptr;
}

/// Constant or already-bound positions of a pattern under a set of known
/// variables; used both for planning and for probing.
struct Skeleton {
    std::optional<rdf::Term> s, p, o;
    int bound = 0;
};

Skeleton skeleton_of(const TriplePattern& pattern, const std::set<std::string>& known) {
    Skeleton sk;
    auto fill = [&](const PatternTerm& t, std::optional<rdf::Term>& slot) {
        if (auto* term = std::get_if<rdf::Term>(&t)) {
            slot = *term;
            ++sk.bound;
        } else if (known.count(std::get<Variable>(t).name)) {
            ++sk.bound; // value known at plan time, not at hand here
        }
    };
    fill(pattern.s, sk.s);
    fill(pattern.p, sk.p);
    fill(pattern.o, sk.o);
    return sk;
}

/// Greedy selectivity order: most bound positions first, then the smallest
/// index-estimated candidate set, then the original position.
std::vector<std::size_t> plan(const Query& q, const rdf::Graph& g) {
    std::vector<std::size_t> order;
    std::vector<bool> used(q.patterns.size(), false);
    std::set<std::string> known;
    while (order.size() < q.patterns.size()) {
        std::size_t best = q.patterns.size();
        int best_bound = -1;
        std::size_t best_estimate = 0;
        for (std::size_t i = 0; i < q.patterns.size(); ++i) {
            if (used[i]) continue;
            Skeleton sk = skeleton_of(q.patterns[i], known);
            std::size_t estimate = g.estimate_matches(sk.s, sk.p, sk.o);
            if (sk.bound > best_bound ||
                (sk.bound == best_bound && estimate < best_estimate)) {
                best = i;
                best_bound = sk.bound;
                best_estimate = estimate;
            }
        }
        used[best] = true;
        order.push_back(best);
        for (const auto* t : {&q.patterns[best].s, &q.patterns[best].p, &q.patterns[best].o})
            if (auto* v = std::get_if<Variable>(t)) known.insert(v->name);
    }
    return order;
}

bool satisfies(const Constraint& c, const Binding& b) {
    const rdf::Term* lhs = lookup(b, c.var);
    const rdf::Term* rhs = std::holds_alternative<rdf::Term>(c.rhs)
                               ? &std::get<rdf::Term>(c.rhs)
                               : lookup(b, std::get<Variable>(c.rhs).name);
    bool equal = *lhs == *rhs;
    return c.op == Constraint::Op::Eq ? equal : !equal;
}

void join(const Query& q, const rdf::Graph& g, const std::vector<std::size_t>& order,
          std::size_t depth, Binding& binding, std::vector<Binding>& out) {
    if (depth == order.size()) {
        out.push_back(binding);
        return;
    }
    const TriplePattern& pattern = q.patterns[order[depth]];

    std::optional<rdf::Term> probe[3];
    const PatternTerm* slots[3] = {&pattern.s, &pattern.p, &pattern.o};
    for (int i = 0; i < 3; ++i) {
        if (auto* term = std::get_if<rdf::Term>(slots[i]))
            probe[i] = *term;
        else if (const rdf::Term* v = lookup(binding, std::get<Variable>(*slots[i]).name))
            probe[i] = *v;
    }

    for (const rdf::Triple& t : g.match(probe[0], probe[1], probe[2])) {
        const rdf::Term* values[3] = {&t.subject, &t.predicate, &t.object};
        std::size_t added = 0;
        bool consistent = true;
        for (int i = 0; i < 3 && consistent; ++i) {
            if (probe[i]) continue; // matched exactly
            const auto& name = std::get<Variable>(*slots[i]).name;
            if (const rdf::Term* bound = lookup(binding, name)) {
                // repeated fresh variable within this pattern
                consistent = *bound == *values[i];
            } else {
                binding.emplace_back(name, *values[i]);
                ++added;
            }
        }
        if (consistent) join(q, g, order, depth + 1, binding, out);
        for (std::size_t k = 0; k < added; ++k) binding.pop_back();
    }
}

} // namespace

BindingSet evaluate(const Query& q, const rdf::Graph& g) {
    std::vector<Binding> bindings;
    Binding scratch;
    join(q, g, plan(q, g), 0, scratch, bindings);

    BindingSet result;
    result.variables = q.wildcard ? q.pattern_variables() : q.projection;

    for (const Binding& b : bindings) {
        bool keep = true;
        for (const Constraint& c : q.filters)
            if (!satisfies(c, b)) {
                keep = false;
                break;
            }
        if (!keep) continue;
        std::vector<rdf::Term> row;
        row.reserve(result.variables.size());
        for (const auto& name : result.variables) row.push_back(*lookup(b, name));
        result.rows.push_back(std::move(row));
    }

    // deterministic order: sort rows by term serialization
    std::vector<std::pair<std::vector<std::string>, std::size_t>> keys;
    keys.reserve(result.rows.size());
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        std::vector<std::string> key;
        key.reserve(result.rows[i].size());
        for (const auto& t : result.rows[i]) key.push_back(t.ntriples());
        keys.emplace_back(std::move(key), i);
    }
    std::sort(keys.begin(), keys.end());
    if (q.distinct)
        keys.erase(std::unique(keys.begin(), keys.end(),
                               [](const auto& a, const auto& b) { return a.first == b.first; }),
                   keys.end());

    std::vector<std::vector<rdf::Term>> ordered;
    ordered.reserve(keys.size());
    for (const auto& [key, idx] : keys) ordered.push_back(std::move(result.rows[idx]));
    result.rows = std::move(ordered);
    return result;
}

} // namespace seanet::query
