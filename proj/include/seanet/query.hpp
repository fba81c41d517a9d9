#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "seanet/rdf.hpp"

namespace seanet::query {

struct Variable {
    std::string name;
    bool operator==(const Variable&) const = default;
};

using PatternTerm = std::variant<Variable, rdf::Term>;

struct TriplePattern {
    PatternTerm s;
    PatternTerm p;
    PatternTerm o;
};

struct Constraint {
    enum class Op { Eq, Ne };
    std::string var;
    Op op = Op::Eq;
    std::variant<Variable, rdf::Term> rhs;
};

/// Parsed SELECT query: BGP plus =/!= filters. Every projected and filter
/// variable is guaranteed to occur in some pattern.
struct Query {
    bool distinct = false;
    bool wildcard = false;
    std::vector<std::string> projection; // empty iff wildcard
    std::vector<TriplePattern> patterns;
    std::vector<Constraint> filters;
    std::map<std::string, std::string> prefixes; // local PREFIX declarations

    /// Variables in order of first occurrence across patterns.
    std::vector<std::string> pattern_variables() const;
};

/// Grammar:
///   PREFIX p: <iri> ...
///   SELECT [DISTINCT] (?v ... | *)
///   WHERE { tp ( . tp )* ( FILTER( ?v (=|!=) term ) )* }
/// CURIEs resolve against local PREFIX lines, then the ontology defaults.
/// Throws SyntaxError / UnknownPrefix.
Query parse_query(std::string_view text);

struct BindingSet {
    std::vector<std::string> variables;
    std::vector<std::vector<rdf::Term>> rows; // deterministic order

    bool operator==(const BindingSet&) const = default;
};

/// Standard BGP semantics with filters, projection, optional DISTINCT and a
/// deterministic row order. Patterns are reordered by estimated selectivity
/// before an index-backed nested-loop join. Read-only: any number of
/// evaluations may run concurrently against one immutable graph.
BindingSet evaluate(const Query& q, const rdf::Graph& g);

/// Query with every occurrence of ?var replaced by a constant term.
Query substitute(const Query& q, const std::string& var, const rdf::Term& value);

} // namespace seanet::query
