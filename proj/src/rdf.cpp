#include "seanet/rdf.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "seanet/errors.hpp"

namespace seanet::rdf {

namespace {

bool valid_iri(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c == '<' || c == '>' || c == ' ' || c == '\t' || c == '\n' || c == '\r')
            return false;
    }
    return true;
}

void escape_into(std::string& out, const std::string& s) {
    for (char c : s) {
        switch (c) {
        case '\\': out += "\\\\"; break;
        case '"': out += "\\\""; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        default: out += c;
        }
    }
}

std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

Term Term::iri(std::string value) {
    if (!valid_iri(value))
        throw std::invalid_argument("malformed IRI: '" + value + "'");
    return Term(Kind::Iri, std::move(value), std::nullopt);
}

Term Term::literal(std::string lexical, std::optional<std::string> datatype) {
    if (datatype && !valid_iri(*datatype))
        throw std::invalid_argument("malformed datatype IRI: '" + *datatype + "'");
    return Term(Kind::Literal, std::move(lexical), std::move(datatype));
}

std::string Term::ntriples() const {
    std::string out;
    if (is_iri()) {
        out.reserve(text_.size() + 2);
        out += '<';
        out += text_;
        out += '>';
        return out;
    }
    out += '"';
    escape_into(out, text_);
    out += '"';
    if (datatype_) {
        out += "^^<";
        out += *datatype_;
        out += '>';
    }
    return out;
}

int Term::compare(const Term& other) const {
    if (kind_ != other.kind_) return kind_ == Kind::Iri ? -1 : 1;
    if (int c = text_.compare(other.text_); c != 0) return c < 0 ? -1 : 1;
    if (datatype_.has_value() != other.datatype_.has_value())
        return datatype_.has_value() ? 1 : -1;
    if (datatype_) {
        if (int c = datatype_->compare(*other.datatype_); c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
}

std::size_t Term::hash() const {
    std::size_t h = std::hash<std::string>{}(text_);
    h = hash_combine(h, kind_ == Kind::Iri ? 0x11 : 0x22);
    if (datatype_) h = hash_combine(h, std::hash<std::string>{}(*datatype_));
    return h;
}

Triple::Triple(Term s, Term p, Term o)
    : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
    if (!subject.is_iri()) throw std::invalid_argument("triple subject must be an IRI");
    if (!predicate.is_iri()) throw std::invalid_argument("triple predicate must be an IRI");
}

bool Triple::operator<(const Triple& other) const {
    if (int c = subject.compare(other.subject); c != 0) return c < 0;
    if (int c = predicate.compare(other.predicate); c != 0) return c < 0;
    return object.compare(other.object) < 0;
}

std::size_t TripleHash::operator()(const Triple& t) const {
    std::size_t h = t.subject.hash();
    h = hash_combine(h, t.predicate.hash());
    h = hash_combine(h, t.object.hash());
    return h;
}

std::size_t Graph::TermPairHash::operator()(const TermPair& p) const {
    return hash_combine(p.first.hash(), p.second.hash());
}

Graph::Graph(const Graph& other) {
    for (const Triple& t : other.triples_) insert(t);
}

Graph& Graph::operator=(const Graph& other) {
    if (this != &other) {
        Graph copy(other);
        *this = std::move(copy);
    }
    return *this;
}

bool Graph::insert(const Triple& t) {
    auto [it, added] = triples_.insert(t);
    if (!added) return false;
    const Triple* p = &*it;
    by_s_[p->subject].push_back(p);
    by_po_[TermPair{p->predicate, p->object}].push_back(p);
    by_sp_[TermPair{p->subject, p->predicate}].push_back(p);
    return true;
}

void Graph::bucket_erase(Bucket& bucket, const Triple* t) {
    auto it = std::find(bucket.begin(), bucket.end(), t);
    if (it != bucket.end()) {
        *it = bucket.back();
        bucket.pop_back();
    }
}

bool Graph::remove(const Triple& t) {
    auto it = triples_.find(t);
    if (it == triples_.end()) return false;
    const Triple* p = &*it;

    auto drop = [](auto& index, const auto& key, const Triple* tp) {
        auto bit = index.find(key);
        bucket_erase(bit->second, tp);
        if (bit->second.empty()) index.erase(bit);
    };
    drop(by_s_, p->subject, p);
    drop(by_po_, TermPair{p->predicate, p->object}, p);
    drop(by_sp_, TermPair{p->subject, p->predicate}, p);
    triples_.erase(it);
    return true;
}

std::vector<Triple> Graph::match(const std::optional<Term>& s, const std::optional<Term>& p,
                                 const std::optional<Term>& o) const {
    std::vector<Triple> out;

    auto keep = [&](const Triple& t) {
        return (!s || t.subject == *s) && (!p || t.predicate == *p) && (!o || t.object == *o);
    };
    auto from_bucket = [&](const auto& index, const auto& key) {
        auto it = index.find(key);
        if (it == index.end()) return;
        out.reserve(it->second.size());
        for (const Triple* t : it->second)
            if (keep(*t)) out.push_back(*t);
    };

    if (s && p && o) {
        // literal subjects/predicates cannot occur in any triple
        if (s->is_iri() && p->is_iri()) {
            Triple t(*s, *p, *o);
            if (contains(t)) out.push_back(std::move(t));
        }
    } else if (s && p) {
        from_bucket(by_sp_, TermPair{*s, *p});
    } else if (p && o) {
        from_bucket(by_po_, TermPair{*p, *o});
    } else if (s) {
        from_bucket(by_s_, *s);
    } else {
        // predicate-only, object-only, or all-wildcard: full scan
        for (const Triple& t : triples_)
            if (keep(t)) out.push_back(t);
    }

    std::sort(out.begin(), out.end());
    return out;
}

std::size_t Graph::estimate_matches(const std::optional<Term>& s, const std::optional<Term>& p,
                                    const std::optional<Term>& o) const {
    auto bucket_size = [](const auto& index, const auto& key) -> std::size_t {
        auto it = index.find(key);
        return it == index.end() ? 0 : it->second.size();
    };
    if (s && p && o) {
        if (!s->is_iri() || !p->is_iri()) return 0;
        return contains(Triple(*s, *p, *o)) ? 1 : 0;
    }
    if (s && p) return bucket_size(by_sp_, TermPair{*s, *p});
    if (p && o) return bucket_size(by_po_, TermPair{*p, *o});
    if (s) return bucket_size(by_s_, *s);
    return size();
}

std::string serialize_ntriples(const Graph& g) {
    std::vector<std::string> lines;
    lines.reserve(g.size());
    for (const Triple& t : g.triples()) {
        std::string line = t.subject.ntriples();
        line += ' ';
        line += t.predicate.ntriples();
        line += ' ';
        line += t.object.ntriples();
        line += " .\n";
        lines.push_back(std::move(line));
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    std::size_t total = 0;
    for (const auto& l : lines) total += l.size();
    out.reserve(total);
    for (const auto& l : lines) out += l;
    return out;
}

namespace {

// Line-scoped recursive-descent parser for the serialization dialect.
class LineParser {
public:
    LineParser(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

    Triple parse_triple() {
        skip_ws();
        Term s = parse_term();
        skip_ws();
        Term p = parse_term();
        skip_ws();
        Term o = parse_term();
        skip_ws();
        if (!eat('.')) fail("expected terminal ' .'");
        skip_ws();
        if (pos_ != line_.size()) fail("trailing characters after '.'");
        if (!s.is_iri()) fail("subject must be an IRI");
        if (!p.is_iri()) fail("predicate must be an IRI");
        return Triple(std::move(s), std::move(p), std::move(o));
    }

private:
    [[noreturn]] void fail(const std::string& reason) const {
        throw ParseError(line_no_, reason);
    }

    void skip_ws() {
        while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
    }

    bool eat(char c) {
        if (pos_ < line_.size() && line_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Term parse_term() {
        if (pos_ >= line_.size()) fail("unexpected end of line");
        if (line_[pos_] == '<') return parse_iri();
        if (line_[pos_] == '"') return parse_literal();
        fail("expected '<' or '\"'");
    }

    Term parse_iri() {
        ++pos_; // '<'
        std::string value;
        while (pos_ < line_.size() && line_[pos_] != '>') value += line_[pos_++];
        if (!eat('>')) fail("unterminated IRI");
        try {
            return Term::iri(std::move(value));
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }

    Term parse_literal() {
        ++pos_; // '"'
        std::string lexical;
        bool closed = false;
        while (pos_ < line_.size()) {
            char c = line_[pos_++];
            if (c == '"') {
                closed = true;
                break;
            }
            if (c == '\\') {
                if (pos_ >= line_.size()) fail("dangling escape");
                char e = line_[pos_++];
                switch (e) {
                case '\\': lexical += '\\'; break;
                case '"': lexical += '"'; break;
                case 'n': lexical += '\n'; break;
                case 'r': lexical += '\r'; break;
                default: fail(std::string("unknown escape '\\") + e + "'");
                }
            } else {
                lexical += c;
            }
        }
        if (!closed) fail("unterminated literal");
        std::optional<std::string> datatype;
        if (pos_ + 1 < line_.size() && line_[pos_] == '^' && line_[pos_ + 1] == '^') {
            pos_ += 2;
            if (!eat('<')) fail("expected '<' after '^^'");
            std::string dt;
            while (pos_ < line_.size() && line_[pos_] != '>') dt += line_[pos_++];
            if (!eat('>')) fail("unterminated datatype IRI");
            datatype = std::move(dt);
        }
        try {
            return Term::literal(std::move(lexical), std::move(datatype));
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }

    std::string_view line_;
    std::size_t line_no_;
    std::size_t pos_ = 0;
};

} // namespace

Graph parse_ntriples(std::string_view text) {
    Graph g;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        if (start == text.size()) break;
        std::size_t end = text.find('\n', start);
        std::string_view line =
            end == std::string_view::npos ? text.substr(start) : text.substr(start, end - start);
        ++line_no;
        bool blank = true;
        for (char c : line)
            if (c != ' ' && c != '\t' && c != '\r') blank = false;
        if (!blank) {
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            g.insert(LineParser(line, line_no).parse_triple());
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return g;
}

} // namespace seanet::rdf
