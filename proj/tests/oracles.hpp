// Independent oracles and random-instance generators shared by the unit and
// acceptance suites. Nothing here may call the code path it is used to check:
// the match oracle is a plain scan over a mirrored triple list, the query
// oracle enumerates variable assignments over the term universe, the triple
// counter re-derives the snapshot schema from the network structure, and the
// distance oracle runs BFS on the raw network rather than the knowledge graph.
#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "seanet/netsim.hpp"
#include "seanet/query.hpp"
#include "seanet/rdf.hpp"

namespace oracles {

using seanet::netsim::Network;
using seanet::rdf::Term;
using seanet::rdf::Triple;

using Rng = std::mt19937_64;

// ---------------------------------------------------------------------------
// linear-scan match oracle
// ---------------------------------------------------------------------------

inline std::vector<Triple> scan_match(const std::vector<Triple>& triples,
                                      const std::optional<Term>& s,
                                      const std::optional<Term>& p,
                                      const std::optional<Term>& o) {
    std::vector<Triple> out;
    for (const Triple& t : triples) {
        if (s && t.subject != *s) continue;
        if (p && t.predicate != *p) continue;
        if (o && t.object != *o) continue;
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// all-assignments query oracle
// ---------------------------------------------------------------------------

// Enumerates every assignment of graph terms to the query's variables,
// pruning a branch only once some fully-assigned pattern is absent from the
// triple set. Feasible for the small universes the generators produce.
inline seanet::query::BindingSet brute_force_evaluate(const seanet::query::Query& q,
                                                      const std::vector<Triple>& triples) {
    namespace query = seanet::query;

    std::vector<Term> universe;
    {
        std::set<Term> terms;
        for (const Triple& t : triples) {
            terms.insert(t.subject);
            terms.insert(t.predicate);
            terms.insert(t.object);
        }
        universe.assign(terms.begin(), terms.end());
    }
    std::set<Triple> member(triples.begin(), triples.end());

    std::set<std::string> var_set;
    for (const auto& p : q.patterns)
        for (const auto* pt : {&p.s, &p.p, &p.o})
            if (auto* v = std::get_if<query::Variable>(pt)) var_set.insert(v->name);
    std::vector<std::string> vars(var_set.begin(), var_set.end());

    // depth at which each pattern becomes fully assigned
    auto var_index = [&](const std::string& name) {
        return static_cast<std::size_t>(
            std::find(vars.begin(), vars.end(), name) - vars.begin());
    };
    std::vector<std::size_t> ready_at(q.patterns.size(), 0);
    for (std::size_t i = 0; i < q.patterns.size(); ++i)
        for (const auto* pt : {&q.patterns[i].s, &q.patterns[i].p, &q.patterns[i].o})
            if (auto* v = std::get_if<query::Variable>(pt))
                ready_at[i] = std::max(ready_at[i], var_index(v->name) + 1);

    std::map<std::string, Term> assignment;
    auto resolve = [&](const query::PatternTerm& pt) -> Term {
        if (auto* t = std::get_if<Term>(&pt)) return *t;
        return assignment.at(std::get<query::Variable>(pt).name);
    };
    auto pattern_holds = [&](std::size_t i) {
        Term s = resolve(q.patterns[i].s);
        Term p = resolve(q.patterns[i].p);
        if (!s.is_iri() || !p.is_iri()) return false;
        return member.count(Triple(s, p, resolve(q.patterns[i].o))) > 0;
    };

    std::vector<std::map<std::string, Term>> solutions;
    auto descend = [&](auto&& self, std::size_t depth) -> void {
        for (std::size_t i = 0; i < q.patterns.size(); ++i)
            if (ready_at[i] == depth && !pattern_holds(i)) return;
        if (depth == vars.size()) {
            solutions.push_back(assignment);
            return;
        }
        for (const Term& candidate : universe) {
            assignment.insert_or_assign(vars[depth], candidate);
            self(self, depth + 1);
        }
        assignment.erase(vars[depth]);
    };
    descend(descend, 0);

    // filters, projection, dedup and ordering, re-derived from scratch
    query::BindingSet result;
    if (q.wildcard) {
        std::set<std::string> seen;
        for (const auto& p : q.patterns)
            for (const auto* pt : {&p.s, &p.p, &p.o})
                if (auto* v = std::get_if<query::Variable>(pt))
                    if (seen.insert(v->name).second) result.variables.push_back(v->name);
    } else {
        result.variables = q.projection;
    }

    std::vector<std::pair<std::vector<std::string>, std::vector<Term>>> keyed;
    for (const auto& sol : solutions) {
        bool keep = true;
        for (const auto& f : q.filters) {
            Term lhs = sol.at(f.var);
            Term rhs = std::holds_alternative<Term>(f.rhs)
                           ? std::get<Term>(f.rhs)
                           : sol.at(std::get<query::Variable>(f.rhs).name);
            bool equal = lhs == rhs;
            if ((f.op == query::Constraint::Op::Eq) != equal) keep = false;
        }
        if (!keep) continue;
        std::vector<Term> row;
        std::vector<std::string> key;
        for (const auto& name : result.variables) {
            row.push_back(sol.at(name));
            key.push_back(sol.at(name).ntriples());
        }
        keyed.emplace_back(std::move(key), std::move(row));
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (q.distinct)
        keyed.erase(std::unique(keyed.begin(), keyed.end(),
                                [](const auto& a, const auto& b) { return a.first == b.first; }),
                    keyed.end());
    for (auto& [key, row] : keyed) result.rows.push_back(std::move(row));
    return result;
}

// ---------------------------------------------------------------------------
// snapshot schema counting oracle
// ---------------------------------------------------------------------------

inline std::size_t count_snapshot_triples(const Network& net) {
    std::size_t count = 0;
    for (const auto& id : net.node_ids()) {
        count += 5; // type, location, long, lat, mac-or-dpid
        count += 3 * net.node(id).ports.size();
    }
    count += 2 * net.link_ids().size();
    for (const auto& sw : net.switch_ids()) {
        for (const auto& e : net.flow_table(sw)) {
            count += 8; // hasFlow, type, priority, cookie, tableId, flags, both timeouts
            if (e.match.in_port) ++count;
            if (e.match.dst_mac) ++count;
            if (e.match.ethertype) ++count;
            count += e.action.kind == seanet::netsim::ActionKind::Output ? 3 : 2;
        }
    }
    return count;
}

// ---------------------------------------------------------------------------
// raw-network BFS distance oracle
// ---------------------------------------------------------------------------

inline std::optional<std::size_t> network_distance(const Network& net, const std::string& a,
                                                   const std::string& b) {
    std::map<std::string, std::vector<std::string>> adjacent;
    for (const auto& lid : net.link_ids()) {
        const auto& l = net.link(lid);
        const std::string& na = net.port(l.port_a).owner;
        const std::string& nb = net.port(l.port_b).owner;
        adjacent[na].push_back(nb);
        adjacent[nb].push_back(na);
    }
    std::map<std::string, std::size_t> dist{{a, 0}};
    std::deque<std::string> frontier{a};
    while (!frontier.empty()) {
        std::string at = frontier.front();
        frontier.pop_front();
        if (at == b) return dist[at];
        for (const auto& next : adjacent[at])
            if (!dist.count(next)) {
                dist[next] = dist[at] + 1;
                frontier.push_back(next);
            }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// random instances
// ---------------------------------------------------------------------------

struct TermPool {
    std::vector<Term> subjects;
    std::vector<Term> predicates;
    std::vector<Term> objects;
};

inline TermPool make_pool(std::size_t n_subjects, std::size_t n_predicates,
                          std::size_t n_objects) {
    TermPool pool;
    for (std::size_t i = 0; i < n_subjects; ++i)
        pool.subjects.push_back(Term::iri("http://test.example/s" + std::to_string(i)));
    for (std::size_t i = 0; i < n_predicates; ++i)
        pool.predicates.push_back(Term::iri("http://test.example/p" + std::to_string(i)));
    for (std::size_t i = 0; i < n_objects; ++i) {
        switch (i % 4) {
        case 0: pool.objects.push_back(Term::iri("http://test.example/o" + std::to_string(i))); break;
        case 1: pool.objects.push_back(Term::literal("value " + std::to_string(i))); break;
        case 2:
            pool.objects.push_back(Term::literal(
                std::to_string(i), "http://www.w3.org/2001/XMLSchema#integer"));
            break;
        default:
            // escaping stress: quotes, backslashes, newlines
            pool.objects.push_back(Term::literal("q\"uo\\te\n" + std::to_string(i)));
        }
    }
    return pool;
}

inline const Term& pick(Rng& rng, const std::vector<Term>& terms) {
    return terms[rng() % terms.size()];
}

inline Triple random_triple(Rng& rng, const TermPool& pool) {
    return Triple(pick(rng, pool.subjects), pick(rng, pool.predicates), pick(rng, pool.objects));
}

// Graph plus a mirrored triple list the scan oracle works from.
inline std::pair<seanet::rdf::Graph, std::vector<Triple>>
random_graph(Rng& rng, const TermPool& pool, std::size_t max_triples) {
    seanet::rdf::Graph g;
    std::vector<Triple> mirror;
    std::size_t target = max_triples == 0 ? 0 : rng() % (max_triples + 1);
    for (std::size_t attempts = 0; g.size() < target && attempts < 4 * target + 16; ++attempts) {
        Triple t = random_triple(rng, pool);
        if (g.insert(t)) mirror.push_back(std::move(t));
    }
    return {std::move(g), std::move(mirror)};
}

// One of the 8 wildcard shapes, biased toward terms present in the graph.
struct ProbePattern {
    std::optional<Term> s, p, o;
};

inline ProbePattern random_probe(Rng& rng, const TermPool& pool,
                                 const std::vector<Triple>& mirror, unsigned shape) {
    auto position_term = [&](int position) -> Term {
        if (!mirror.empty() && rng() % 4 != 0) {
            const Triple& t = mirror[rng() % mirror.size()];
            return position == 0 ? t.subject : position == 1 ? t.predicate : t.object;
        }
        return position == 0   ? pick(rng, pool.subjects)
               : position == 1 ? pick(rng, pool.predicates)
                               : pick(rng, pool.objects);
    };
    ProbePattern probe;
    if (shape & 1u) probe.s = position_term(0);
    if (shape & 2u) probe.p = position_term(1);
    if (shape & 4u) probe.o = position_term(2);
    return probe;
}

// Random SELECT query over the mirrored triples: up to `max_patterns`
// patterns over a small variable pool, up to `max_filters` filters, DISTINCT
// half the time. Projection and filter variables always occur in patterns,
// matching the Query invariant.
inline seanet::query::Query random_query(Rng& rng, const TermPool& pool,
                                         const std::vector<Triple>& mirror,
                                         std::size_t max_patterns, std::size_t max_vars,
                                         std::size_t max_filters) {
    namespace query = seanet::query;
    static const std::vector<std::string> var_names = {"a", "b", "c", "d"};
    std::size_t n_vars = 1 + rng() % std::min(max_vars, var_names.size());
    std::size_t n_patterns = 1 + rng() % max_patterns;

    auto var = [&] { return query::Variable{var_names[rng() % n_vars]}; };
    auto constant = [&](int position) -> Term {
        if (!mirror.empty() && rng() % 4 != 0) {
            const Triple& t = mirror[rng() % mirror.size()];
            return position == 0 ? t.subject : position == 1 ? t.predicate : t.object;
        }
        return position == 0   ? pick(rng, pool.subjects)
               : position == 1 ? pick(rng, pool.predicates)
                               : pick(rng, pool.objects);
    };

    query::Query q;
    for (std::size_t i = 0; i < n_patterns; ++i) {
        auto slot = [&](int position) -> query::PatternTerm {
            if (rng() % 2 == 0) return var();
            return constant(position);
        };
        q.patterns.push_back(query::TriplePattern{slot(0), slot(1), slot(2)});
    }

    std::vector<std::string> occurring;
    {
        std::set<std::string> seen;
        for (const auto& p : q.patterns)
            for (const auto* pt : {&p.s, &p.p, &p.o})
                if (auto* v = std::get_if<query::Variable>(pt))
                    if (seen.insert(v->name).second) occurring.push_back(v->name);
    }

    if (occurring.empty() || rng() % 4 == 0) {
        q.wildcard = true;
    } else {
        std::size_t n_proj = 1 + rng() % occurring.size();
        std::vector<std::string> shuffled = occurring;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        q.projection.assign(shuffled.begin(), shuffled.begin() + n_proj);
    }

    if (!occurring.empty()) {
        std::size_t n_filters = rng() % (max_filters + 1);
        for (std::size_t i = 0; i < n_filters; ++i) {
            query::Constraint c;
            c.var = occurring[rng() % occurring.size()];
            c.op = rng() % 2 == 0 ? query::Constraint::Op::Eq : query::Constraint::Op::Ne;
            if (rng() % 2 == 0)
                c.rhs = query::Variable{occurring[rng() % occurring.size()]};
            else
                c.rhs = constant(rng() % 3);
            q.filters.push_back(std::move(c));
        }
    }
    q.distinct = rng() % 2 == 0;
    return q;
}

} // namespace oracles
