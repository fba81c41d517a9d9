#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace seanet::rdf {

/// An RDF term: either an IRI or a literal with an optional datatype IRI.
/// Construct through the factories; they enforce the term grammar.
class Term {
public:
    static Term iri(std::string value);
    static Term literal(std::string lexical, std::optional<std::string> datatype = {});

    bool is_iri() const { return kind_ == Kind::Iri; }
    bool is_literal() const { return kind_ == Kind::Literal; }

    /// IRI string for IRIs, lexical form for literals.
    const std::string& text() const { return text_; }
    const std::optional<std::string>& datatype() const { return datatype_; }

    /// N-Triples rendering: `<iri>` or `"escaped"^^<datatype>`.
    std::string ntriples() const;

    bool operator==(const Term& other) const {
        return kind_ == other.kind_ && text_ == other.text_ && datatype_ == other.datatype_;
    }
    bool operator!=(const Term& other) const { return !(*this == other); }

    /// Canonical total order: IRIs before literals, then text, then datatype.
    int compare(const Term& other) const;
    bool operator<(const Term& other) const { return compare(other) < 0; }

    std::size_t hash() const;

private:
    enum class Kind { Iri, Literal };
    Term(Kind kind, std::string text, std::optional<std::string> datatype)
        : kind_(kind), text_(std::move(text)), datatype_(std::move(datatype)) {}

    Kind kind_;
    std::string text_;
    std::optional<std::string> datatype_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// (subject, predicate, object); subject and predicate must be IRIs.
struct Triple {
    Triple(Term s, Term p, Term o);

    Term subject;
    Term predicate;
    Term object;

    bool operator==(const Triple& other) const {
        return subject == other.subject && predicate == other.predicate &&
               object == other.object;
    }
    bool operator!=(const Triple& other) const { return !(*this == other); }
    bool operator<(const Triple& other) const;
};

struct TripleHash {
    std::size_t operator()(const Triple& t) const;
};

/// In-memory triple set with hash indexes by subject, (predicate,object) and
/// (subject,predicate). Pattern probes that bind one of those key shapes are
/// answered from the index; predicate-only and object-only probes filter a
/// full scan.
///
/// Single-writer: mutation must not race with reads. Once a graph stops
/// changing it can be shared across threads freely.
class Graph {
public:
    Graph() = default;
    Graph(const Graph& other);
    Graph& operator=(const Graph& other);
    Graph(Graph&&) noexcept = default;
    Graph& operator=(Graph&&) noexcept = default;

    /// Returns true iff the triple was newly added.
    bool insert(const Triple& t);
    /// Returns true iff the triple was present.
    bool remove(const Triple& t);

    bool contains(const Triple& t) const { return triples_.count(t) > 0; }
    std::size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }

    /// All triples satisfying the bound positions, in canonical (sorted) order.
    std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Term>& p,
                              const std::optional<Term>& o) const;

    /// Upper bound on the number of matches, from index bucket sizes alone.
    /// Used for join ordering; never touches triple contents.
    std::size_t estimate_matches(const std::optional<Term>& s, const std::optional<Term>& p,
                                 const std::optional<Term>& o) const;

    const std::unordered_set<Triple, TripleHash>& triples() const { return triples_; }

    bool operator==(const Graph& other) const { return triples_ == other.triples_; }

private:
    using Bucket = std::vector<const Triple*>;
    struct TermPair {
        Term first;
        Term second;
        bool operator==(const TermPair& other) const {
            return first == other.first && second == other.second;
        }
    };
    struct TermPairHash {
        std::size_t operator()(const TermPair& p) const;
    };

    static void bucket_erase(Bucket& bucket, const Triple* t);

    std::unordered_set<Triple, TripleHash> triples_;
    std::unordered_map<Term, Bucket, TermHash> by_s_;
    std::unordered_map<TermPair, Bucket, TermPairHash> by_po_;
    std::unordered_map<TermPair, Bucket, TermPairHash> by_sp_;
};

/// Canonical N-Triples: one line per triple, lexicographically sorted.
/// Equal graphs serialize to identical bytes.
std::string serialize_ntriples(const Graph& g);

/// Inverse of serialize_ntriples; throws ParseError on the first bad line.
Graph parse_ntriples(std::string_view text);

} // namespace seanet::rdf
