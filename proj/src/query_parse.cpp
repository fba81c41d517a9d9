#include <cctype>
#include <set>

#include "seanet/errors.hpp"
#include "seanet/ontology.hpp"
#include "seanet/query.hpp"

namespace seanet::query {

namespace {

bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool curie_local_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Query parse() {
        while (at_keyword("PREFIX")) parse_prefix();
        expect_keyword("SELECT");
        if (at_keyword("DISTINCT")) {
            eat_keyword("DISTINCT");
            q_.distinct = true;
        }
        parse_projection();
        expect_keyword("WHERE");
        expect('{');
        parse_group();
        expect('}');
        skip_ws();
        if (pos_ != text_.size()) fail("end of query");
        check_variable_scope();
        return std::move(q_);
    }

private:
    [[noreturn]] void fail(const std::string& expected) const {
        throw SyntaxError(pos_, expected);
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool at_keyword(std::string_view kw) {
        skip_ws();
        if (pos_ + kw.size() > text_.size()) return false;
        for (std::size_t i = 0; i < kw.size(); ++i)
            if (std::toupper(static_cast<unsigned char>(text_[pos_ + i])) != kw[i]) return false;
        std::size_t end = pos_ + kw.size();
        return end == text_.size() || !name_char(text_[end]);
    }

    void eat_keyword(std::string_view kw) { pos_ += kw.size(); }

    void expect_keyword(std::string_view kw) {
        if (!at_keyword(kw)) fail(std::string(kw));
        eat_keyword(kw);
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("'") + c + "'");
        ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void parse_prefix() {
        eat_keyword("PREFIX");
        skip_ws();
        std::string prefix;
        while (pos_ < text_.size() && name_char(text_[pos_])) prefix += text_[pos_++];
        expect(':');
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != '<') fail("'<iri>'");
        q_.prefixes[prefix] = parse_iri_body();
    }

    std::string parse_iri_body() {
        ++pos_; // '<'
        std::string iri;
        while (pos_ < text_.size() && text_[pos_] != '>') iri += text_[pos_++];
        if (pos_ >= text_.size()) fail("'>'");
        ++pos_;
        return iri;
    }

    void parse_projection() {
        skip_ws();
        if (peek('*')) {
            ++pos_;
            q_.wildcard = true;
            return;
        }
        while (peek('?')) q_.projection.push_back(parse_variable().name);
        if (q_.projection.empty()) fail("'*' or projection variables");
    }

    Variable parse_variable() {
        expect('?');
        std::string name;
        while (pos_ < text_.size() && name_char(text_[pos_])) name += text_[pos_++];
        if (name.empty()) fail("variable name");
        return Variable{name};
    }

    void parse_group() {
        skip_ws();
        if (peek('}')) return; // empty basic graph pattern
        if (!at_keyword("FILTER")) {
            q_.patterns.push_back(parse_pattern());
            while (peek('.')) {
                ++pos_;
                skip_ws();
                if (peek('}') || at_keyword("FILTER")) break; // tolerate trailing '.'
                q_.patterns.push_back(parse_pattern());
            }
        }
        while (at_keyword("FILTER")) {
            eat_keyword("FILTER");
            parse_filter();
        }
    }

    TriplePattern parse_pattern() {
        PatternTerm s = parse_pattern_term();
        if (auto* t = std::get_if<rdf::Term>(&s); t != nullptr && !t->is_iri())
            fail("IRI or variable in subject position");
        PatternTerm p = parse_pattern_term();
        if (auto* t = std::get_if<rdf::Term>(&p); t != nullptr && !t->is_iri())
            fail("IRI or variable in predicate position");
        PatternTerm o = parse_pattern_term();
        return TriplePattern{std::move(s), std::move(p), std::move(o)};
    }

    PatternTerm parse_pattern_term() {
        skip_ws();
        if (pos_ >= text_.size()) fail("term or variable");
        if (text_[pos_] == '?') return parse_variable();
        return parse_term();
    }

    rdf::Term parse_term() {
        skip_ws();
        if (pos_ >= text_.size()) fail("term");
        char c = text_[pos_];
        if (c == '<') {
            try {
                return rdf::Term::iri(parse_iri_body());
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
        }
        if (c == '"') return parse_literal();
        return parse_curie();
    }

    rdf::Term parse_literal() {
        ++pos_; // '"'
        std::string lexical;
        bool closed = false;
        while (pos_ < text_.size()) {
            char c = text_[pos_++];
            if (c == '"') {
                closed = true;
                break;
            }
            if (c == '\\') {
                if (pos_ >= text_.size()) fail("escape character");
                char e = text_[pos_++];
                switch (e) {
                case '\\': lexical += '\\'; break;
                case '"': lexical += '"'; break;
                case 'n': lexical += '\n'; break;
                case 'r': lexical += '\r'; break;
                default: fail("valid escape");
                }
            } else {
                lexical += c;
            }
        }
        if (!closed) fail("closing '\"'");
        std::optional<std::string> datatype;
        if (pos_ + 1 < text_.size() && text_[pos_] == '^' && text_[pos_ + 1] == '^') {
            pos_ += 2;
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '<')
                datatype = parse_iri_body();
            else
                datatype = expand_curie_text().text();
        }
        return rdf::Term::literal(std::move(lexical), std::move(datatype));
    }

    rdf::Term parse_curie() { return expand_curie_text(); }

    rdf::Term expand_curie_text() {
        skip_ws();
        std::string prefix;
        while (pos_ < text_.size() && name_char(text_[pos_])) prefix += text_[pos_++];
        if (pos_ >= text_.size() || text_[pos_] != ':') fail("':' in prefixed name");
        ++pos_;
        std::string local;
        while (pos_ < text_.size() && curie_local_char(text_[pos_])) local += text_[pos_++];
        auto it = q_.prefixes.find(prefix);
        if (it != q_.prefixes.end()) return rdf::Term::iri(it->second + local);
        return ontology::vocab().expand(prefix + ":" + local);
    }

    void parse_filter() {
        expect('(');
        Constraint c;
        c.var = parse_variable().name;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '=') {
            ++pos_;
            c.op = Constraint::Op::Eq;
        } else if (pos_ + 1 < text_.size() && text_[pos_] == '!' && text_[pos_ + 1] == '=') {
            pos_ += 2;
            c.op = Constraint::Op::Ne;
        } else {
            fail("'=' or '!='");
        }
        skip_ws();
        if (peek('?'))
            c.rhs = parse_variable();
        else
            c.rhs = parse_term();
        expect(')');
        q_.filters.push_back(std::move(c));
    }

    void check_variable_scope() const {
        std::set<std::string> in_patterns;
        for (const auto& p : q_.patterns)
            for (const auto* t : {&p.s, &p.p, &p.o})
                if (auto* v = std::get_if<Variable>(t)) in_patterns.insert(v->name);
        auto require = [&](const std::string& name) {
            if (!in_patterns.count(name))
                throw SyntaxError(pos_, "variable ?" + name + " bound by some pattern");
        };
        for (const auto& name : q_.projection) require(name);
        for (const auto& f : q_.filters) {
            require(f.var);
            if (auto* v = std::get_if<Variable>(&f.rhs)) require(v->name);
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Query q_;
};

} // namespace

std::vector<std::string> Query::pattern_variables() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& p : patterns)
        for (const auto* t : {&p.s, &p.p, &p.o})
            if (auto* v = std::get_if<Variable>(t))
                if (seen.insert(v->name).second) out.push_back(v->name);
    return out;
}

Query parse_query(std::string_view text) { return Parser(text).parse(); }

Query substitute(const Query& q, const std::string& var, const rdf::Term& value) {
    Query out = q;
    auto replace = [&](PatternTerm& t) {
        if (auto* v = std::get_if<Variable>(&t); v != nullptr && v->name == var) t = value;
    };
    for (auto& p : out.patterns) {
        replace(p.s);
        replace(p.p);
        replace(p.o);
    }
    for (auto& f : out.filters)
        if (auto* v = std::get_if<Variable>(&f.rhs); v != nullptr && v->name == var)
            f.rhs = value;
    return out;
}

} // namespace seanet::query
