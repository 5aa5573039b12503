#include "emdm/schema_text.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace emdm {

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
    enum class Kind { Ident, Int, Dec, Str, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int64_t ival = 0;
    double dval = 0.0;
    SourceSpan span;
};

struct Lexer {
    std::string_view src;
    size_t pos = 0;
    int line = 1, col = 1;
    std::vector<ParseError> *errors;

    void advance(size_t n = 1) {
        for (size_t i = 0; i < n && pos < src.size(); ++i) {
            if (src[pos] == '\n') { ++line; col = 1; }
            else ++col;
            ++pos;
        }
    }

    void skip_ws() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '#') {
                while (pos < src.size() && src[pos] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Token next() {
        skip_ws();
        Token t;
        t.span = {line, col, 1};
        if (pos >= src.size()) return t;
        char c = src[pos];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
                advance();
            t.kind = Token::Kind::Ident;
            t.text = std::string(src.substr(start, pos - start));
            t.span.length = static_cast<int>(t.text.size());
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos + 1 < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[pos + 1])))) {
            size_t start = pos;
            advance(); // sign or first digit
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
                advance();
            bool is_dec = false;
            if (pos + 1 < src.size() && src[pos] == '.' &&
                std::isdigit(static_cast<unsigned char>(src[pos + 1]))) {
                is_dec = true;
                advance();
                while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
                    advance();
            }
            std::string text(src.substr(start, pos - start));
            t.span.length = static_cast<int>(text.size());
            t.text = text;
            if (is_dec) {
                t.kind = Token::Kind::Dec;
                t.dval = std::stod(text);
            } else {
                t.kind = Token::Kind::Int;
                t.ival = std::stoll(text);
            }
            return t;
        }
        if (c == '"') {
            advance();
            std::string out;
            while (pos < src.size() && src[pos] != '"') {
                if (src[pos] == '\\' && pos + 1 < src.size()) {
                    advance();
                    char e = src[pos];
                    out += e == 'n' ? '\n' : (e == 't' ? '\t' : e);
                    advance();
                } else {
                    out += src[pos];
                    advance();
                }
            }
            if (pos < src.size()) advance(); // closing quote
            else if (errors)
                errors->push_back({t.span, "unterminated string", {"\""}});
            t.kind = Token::Kind::Str;
            t.text = out;
            t.span.length = static_cast<int>(out.size()) + 2;
            return t;
        }
        // UTF-8 negation sign
        if (static_cast<unsigned char>(c) == 0xC2 && pos + 1 < src.size() &&
            static_cast<unsigned char>(src[pos + 1]) == 0xAC) {
            advance(2);
            t.kind = Token::Kind::Punct;
            t.text = "!";
            return t;
        }
        static const char *two_char[] = {"::", "..", ":-", "->", "<=", ">=", "!="};
        for (const char *p : two_char) {
            if (src.substr(pos, 2) == p) {
                advance(2);
                t.kind = Token::Kind::Punct;
                t.text = p;
                t.span.length = 2;
                return t;
            }
        }
        advance();
        t.kind = Token::Kind::Punct;
        t.text = std::string(1, c);
        return t;
    }
};

// ---------------------------------------------------------------------------
// Statement AST

struct OperandItem { // generic constraint operand before shape fitting
    bool is_literal = false;
    Path path;
    Value literal;
    SourceSpan span;
};

struct ConstraintStmt {
    std::string name; // empty = auto
    std::string tag;
    std::vector<OperandItem> items;
    std::optional<HornClause> clause;
    SourceSpan span;
};

// literals written in the DSL take the base of the spec they feed
Value coerce_literal(const Value &v, ValueBase base) {
    if (base == ValueBase::Date && v.kind() == Value::Kind::Text && is_iso_date(v.as_text()))
        return Value::date(v.as_text());
    if (base == ValueBase::Decimal && v.kind() == Value::Kind::Integer)
        return Value::decimal(static_cast<double>(v.as_int()));
    return v;
}

struct Parser {
    std::vector<Token> toks;
    size_t at = 0;
    std::vector<ParseError> errors;

    // declarations in file order
    std::vector<SetDef> sets;
    std::vector<MappingDef> mappings;
    std::vector<DiagramDef> diagrams;
    std::vector<DatalogProgramDef> programs;
    std::vector<ConstraintStmt> constraint_stmts;
    std::string db_name;

    const Token &peek(size_t k = 0) const {
        static const Token kEnd;
        return at + k < toks.size() ? toks[at + k] : kEnd;
    }
    const Token &take() {
        const Token &t = peek();
        if (at < toks.size()) ++at;
        return t;
    }
    bool at_punct(const std::string &p) const {
        return peek().kind == Token::Kind::Punct && peek().text == p;
    }
    bool eat_punct(const std::string &p) {
        if (!at_punct(p)) return false;
        ++at;
        return true;
    }
    void error(const std::string &msg, std::vector<std::string> expected = {}) {
        errors.push_back({peek().span, msg, std::move(expected)});
    }
    void sync_to_semicolon() {
        int depth = 0;
        while (peek().kind != Token::Kind::End) {
            if (at_punct("{")) ++depth;
            if (at_punct("}")) --depth;
            if (at_punct(";") && depth <= 0) { ++at; return; }
            ++at;
        }
    }
    bool expect_punct(const std::string &p) {
        if (eat_punct(p)) return true;
        error("expected '" + p + "'", {p});
        return false;
    }
    std::string expect_ident(const std::string &what) {
        if (peek().kind == Token::Kind::Ident) return take().text;
        error("expected " + what, {"identifier"});
        return "";
    }

    std::optional<Value> parse_literal() {
        const Token &t = peek();
        switch (t.kind) {
        case Token::Kind::Int: ++at; return Value::integer(t.ival);
        case Token::Kind::Dec: ++at; return Value::decimal(t.dval);
        case Token::Kind::Str: ++at; return Value::text(t.text);
        case Token::Kind::Ident:
            if (t.text == "true") { ++at; return Value::boolean(true); }
            if (t.text == "false") { ++at; return Value::boolean(false); }
            return std::nullopt;
        default: return std::nullopt;
        }
    }

    Path parse_path() {
        Path p;
        std::string first = expect_ident("mapping name");
        if (first.empty()) return p;
        if (eat_punct("::")) {
            std::string name = expect_ident("mapping name after '::'");
            p.push_back({first, name});
        } else {
            p.push_back({"", first});
        }
        while (eat_punct(".")) {
            std::string step = expect_ident("mapping name after '.'");
            if (step.empty()) break;
            p.push_back({"", step});
        }
        return p;
    }

    // ----- statements -----

    void parse_database() {
        db_name = expect_ident("database name");
        expect_punct(";");
    }

    void parse_entity() {
        SetDef s;
        s.name = expect_ident("entity name");
        s.kind = SetKind::Entity;
        expect_punct(";");
        if (!s.name.empty()) sets.push_back(std::move(s));
    }

    void parse_relationship() {
        SetDef s;
        s.name = expect_ident("relationship name");
        s.kind = SetKind::Relationship;
        expect_punct("(");
        do {
            RelSort rs;
            rs.role = expect_ident("role name");
            expect_punct(":");
            rs.target = expect_ident("role target set");
            if (!rs.role.empty()) s.rel_sorts.push_back(std::move(rs));
        } while (eat_punct(","));
        expect_punct(")");
        expect_punct(";");
        if (s.rel_sorts.size() < 2)
            error("relationship " + s.name + " needs at least 2 roles");
        else if (!s.name.empty())
            sets.push_back(std::move(s));
    }

    void parse_valueset() {
        SetDef s;
        s.name = expect_ident("value set name");
        s.kind = SetKind::Value;
        expect_punct(":");
        std::string base = expect_ident("base type");
        ValueTypeSpec spec;
        if (auto b = value_base_by_name(base)) {
            spec.base = *b;
        } else {
            error("unknown base type " + base, {"bool", "int", "dec", "text", "date"});
        }
        if (eat_punct("[")) {
            if (!at_punct("..")) {
                if (auto v = parse_literal()) spec.min = coerce_literal(*v, spec.base);
                else error("expected bound literal");
            }
            expect_punct("..");
            if (!at_punct("]")) {
                if (auto v = parse_literal()) spec.max = coerce_literal(*v, spec.base);
                else error("expected bound literal");
            }
            expect_punct("]");
        }
        if (peek().kind == Token::Kind::Ident && peek().text == "in") {
            ++at;
            expect_punct("{");
            do {
                if (auto v = parse_literal()) spec.enumeration.push_back(coerce_literal(*v, spec.base));
                else { error("expected enumeration literal"); break; }
            } while (eat_punct(","));
            expect_punct("}");
        }
        if (peek().kind == Token::Kind::Ident && peek().text == "pattern") {
            ++at;
            if (peek().kind == Token::Kind::Str) spec.pattern = take().text;
            else error("expected pattern string");
        }
        expect_punct(";");
        s.value_spec = std::move(spec);
        if (!s.name.empty()) sets.push_back(std::move(s));
    }

    void parse_computed_set() {
        SetDef s;
        s.name = expect_ident("computed set name");
        s.kind = SetKind::Computed;
        expect_punct("=");
        if (peek().kind == Token::Kind::Str) s.computed_formula = take().text;
        else error("expected formula string");
        expect_punct(";");
        if (!s.name.empty()) sets.push_back(std::move(s));
    }

    void parse_mapping(MappingKind kind) {
        MappingDef m;
        m.kind = kind;
        m.name = expect_ident("mapping name");
        expect_punct(":");
        m.domain = expect_ident("domain set");
        expect_punct("->");
        m.codomain = expect_ident("codomain set");
        if (kind == MappingKind::Computed) {
            expect_punct("=");
            if (peek().kind == Token::Kind::Str) m.computed_formula = take().text;
            else error("expected formula string");
        }
        if (peek().kind == Token::Kind::Ident && peek().text == "default") {
            ++at;
            if (auto v = parse_literal()) m.default_value = *v;
            else error("expected default literal");
        }
        expect_punct(";");
        if (!m.name.empty()) mappings.push_back(std::move(m));
    }

    void parse_diagram() {
        DiagramDef d;
        d.name = expect_ident("diagram name");
        expect_punct("(");
        do {
            std::string s = expect_ident("object set");
            if (!s.empty()) d.member_sets.push_back(std::move(s));
        } while (eat_punct(","));
        expect_punct(")");
        expect_punct(";");
        if (!d.name.empty()) diagrams.push_back(std::move(d));
    }

    // ----- constraints -----

    datalog::CmpOp parse_cmp() {
        static const std::map<std::string, datalog::CmpOp> kOps = {
            {"=", datalog::CmpOp::Eq},  {"!=", datalog::CmpOp::Ne},
            {"<", datalog::CmpOp::Lt},  {"<=", datalog::CmpOp::Le},
            {">", datalog::CmpOp::Gt},  {">=", datalog::CmpOp::Ge}};
        if (peek().kind == Token::Kind::Punct) {
            auto it = kOps.find(peek().text);
            if (it != kOps.end()) { ++at; return it->second; }
        }
        error("expected comparison operator", {"=", "!=", "<", "<=", ">", ">="});
        return datalog::CmpOp::Eq;
    }

    HornTerm parse_horn_term() {
        HornTerm t;
        if (auto v = parse_literal()) {
            t.is_path = false;
            t.constant = *v;
        } else if (peek().kind == Token::Kind::Ident) {
            t.is_path = true;
            t.path = parse_path();
        } else {
            error("expected path or literal");
            ++at;
        }
        return t;
    }

    HornClause parse_horn_clause(const std::string &anchor) {
        HornClause cl;
        cl.anchor_set = anchor;
        do {
            HornLiteral lit;
            lit.positive = !eat_punct("!");
            lit.lhs = parse_horn_term();
            lit.op = parse_cmp();
            lit.rhs = parse_horn_term();
            cl.literals.push_back(std::move(lit));
        } while (eat_punct("|"));
        // clause paths are anchor-rooted; drop an explicit anchor qualifier
        for (auto &lit : cl.literals)
            for (HornTerm *t : {&lit.lhs, &lit.rhs})
                if (t->is_path && !t->path.empty() && t->path.front().qualifier == anchor)
                    t->path.front().qualifier.clear();
        return cl;
    }

    void parse_constraint() {
        ConstraintStmt st;
        st.span = peek().span;
        std::string first = expect_ident("constraint tag");
        if (eat_punct(":")) {
            st.name = first;
            st.tag = expect_ident("constraint tag");
        } else {
            st.tag = first;
        }
        expect_punct("(");
        if (st.tag == "horn" || st.tag == "gencomm") {
            std::string anchor = expect_ident("anchor set");
            expect_punct(":");
            st.clause = parse_horn_clause(anchor);
        } else if (!at_punct(")")) {
            do {
                OperandItem item;
                item.span = peek().span;
                if (auto v = parse_literal()) {
                    item.is_literal = true;
                    item.literal = *v;
                } else if (peek().kind == Token::Kind::Ident) {
                    item.path = parse_path();
                } else {
                    error("expected operand");
                    break;
                }
                st.items.push_back(std::move(item));
            } while (eat_punct(","));
        }
        expect_punct(")");
        expect_punct(";");
        constraint_stmts.push_back(std::move(st));
    }

    // ----- datalog -----

    datalog::Term parse_dl_term() {
        const Token &t = peek();
        if (t.kind == Token::Kind::Int) { ++at; return datalog::Term::integer(t.ival); }
        if (t.kind == Token::Kind::Str) { ++at; return datalog::Term::text(t.text); }
        if (t.kind == Token::Kind::Ident) {
            ++at;
            if (std::isupper(static_cast<unsigned char>(t.text[0])))
                return datalog::Term::variable(t.text);
            // lowercase identifiers are text constants, souffle-style
            return datalog::Term::text(t.text);
        }
        error("expected term");
        ++at;
        return datalog::Term::integer(0);
    }

    datalog::Atom parse_dl_atom() {
        datalog::Atom a;
        a.predicate = expect_ident("predicate");
        expect_punct("(");
        if (!at_punct(")")) {
            do {
                a.args.push_back(parse_dl_term());
            } while (eat_punct(","));
        }
        expect_punct(")");
        return a;
    }

    bool starts_comparison() {
        // term cmp term: next token is a term and the one after a comparator
        size_t save = at;
        if (peek().kind == Token::Kind::Punct && !at_punct("!")) return false;
        if (at_punct("!")) return false;
        if (peek(1).kind == Token::Kind::Punct) {
            const std::string &p = peek(1).text;
            if (p == "=" || p == "!=" || p == "<" || p == "<=" || p == ">" || p == ">=")
                return true;
        }
        (void)save;
        return false;
    }

    datalog::Rule parse_rule() {
        datalog::Rule r;
        r.head = parse_dl_atom();
        if (eat_punct(":-")) {
            do {
                datalog::Literal lit;
                if (eat_punct("!")) {
                    lit.kind = datalog::Literal::Kind::Negated;
                    lit.atom = parse_dl_atom();
                } else if (starts_comparison()) {
                    lit.kind = datalog::Literal::Kind::Compare;
                    lit.lhs = parse_dl_term();
                    lit.op = parse_cmp();
                    lit.rhs = parse_dl_term();
                } else {
                    lit.kind = datalog::Literal::Kind::Positive;
                    lit.atom = parse_dl_atom();
                }
                r.body.push_back(std::move(lit));
            } while (eat_punct(","));
        }
        expect_punct(";");
        return r;
    }

    void parse_program() {
        DatalogProgramDef p;
        p.name = expect_ident("program name");
        expect_punct("{");
        while (!at_punct("}") && peek().kind != Token::Kind::End) {
            if (peek().kind == Token::Kind::Ident && peek().text == "rule") {
                ++at;
                p.rules.push_back(parse_rule());
            } else {
                error("expected 'rule' inside program block", {"rule", "}"});
                sync_to_semicolon();
            }
        }
        expect_punct("}");
        expect_punct(";");
        if (!p.name.empty()) programs.push_back(std::move(p));
    }

    void run() {
        while (peek().kind != Token::Kind::End) {
            size_t before_errors = errors.size();
            if (peek().kind != Token::Kind::Ident) {
                error("expected a declaration keyword");
                sync_to_semicolon();
                continue;
            }
            std::string kw = take().text;
            if (kw == "database") parse_database();
            else if (kw == "entity") parse_entity();
            else if (kw == "relationship") parse_relationship();
            else if (kw == "valueset") parse_valueset();
            else if (kw == "computed") parse_computed_set();
            else if (kw == "attr") parse_mapping(MappingKind::Attribute);
            else if (kw == "fn") parse_mapping(MappingKind::StructuralFunction);
            else if (kw == "computedfn") parse_mapping(MappingKind::Computed);
            else if (kw == "constraint") parse_constraint();
            else if (kw == "diagram") parse_diagram();
            else if (kw == "program") parse_program();
            else {
                error("unknown declaration keyword '" + kw + "'",
                      {"database", "entity", "relationship", "valueset", "computed", "attr",
                       "fn", "computedfn", "constraint", "diagram", "program"});
                sync_to_semicolon();
            }
            if (errors.size() > before_errors) sync_to_semicolon();
        }
    }
};

// ---------------------------------------------------------------------------
// Shape fitting: turn generic operand items into typed ConstraintOperands for
// the best-fitting registry tag of an abbreviation.

bool item_is_bare(const OperandItem &it) {
    return !it.is_literal && it.path.size() == 1 && it.path[0].qualifier.empty();
}

bool names_known_set(const Catalog &c, const OperandItem &it) {
    return item_is_bare(it) && c.find_set(it.path[0].name) != nullptr;
}

bool names_known_mapping(const Catalog &c, const OperandItem &it) {
    if (!item_is_bare(it)) return false;
    const std::string &n = it.path[0].name;
    for (const auto &m : c.mappings())
        if (m.name == n) return true;
    for (const auto &s : c.sets())
        for (const auto &rs : s.rel_sorts)
            if (rs.role == n) return true;
    return false;
}

std::optional<std::pair<Ctype, ConstraintOperands>>
fit_constraint(const Catalog &c, const ConstraintStmt &st) {
    if (st.clause) {
        ConstraintOperands ops;
        ops.clause = st.clause;
        Ctype t = st.tag == "gencomm" ? Ctype::FdGeneralizedCommutativity
                                      : Ctype::ObjectConstraint;
        return std::make_pair(t, std::move(ops));
    }
    for (Ctype t : ctypes_by_abbrev(st.tag)) {
        OperandShape sh = operand_shape(t);
        int n = static_cast<int>(st.items.size());
        int lit_count = sh.has_default ? 1 : 0;
        int path_count = n - sh.set_count - lit_count;
        if (path_count < sh.path_min) continue;
        if (sh.path_max >= 0 && path_count > sh.path_max) continue;
        if (sh.has_clause) continue;
        bool ok = true;
        ConstraintOperands ops;
        for (int i = 0; i < sh.set_count && ok; ++i) {
            const OperandItem &it = st.items[i];
            // a name known to be a mapping (and not a set) rejects set slots
            if (!item_is_bare(it) ||
                (names_known_mapping(c, it) && !names_known_set(c, it))) {
                ok = false;
                break;
            }
            ops.sets.push_back(it.path[0].name);
        }
        for (int i = sh.set_count; i < sh.set_count + path_count && ok; ++i) {
            const OperandItem &it = st.items[i];
            if (it.is_literal) { ok = false; break; }
            // a name known to be a set (and not a mapping) rejects path slots
            if (names_known_set(c, it) && !names_known_mapping(c, it)) { ok = false; break; }
            ops.paths.push_back(it.path);
        }
        if (ok && sh.has_default) {
            const OperandItem &it = st.items[n - 1];
            if (!it.is_literal) ok = false;
            else ops.default_value = it.literal;
        }
        if (ok) return std::make_pair(t, std::move(ops));
    }
    return std::nullopt;
}

std::string auto_constraint_name(const Catalog &c, Ctype t, const ConstraintOperands &ops) {
    std::string base = std::string(ctype_info(t).abbrev) + "_";
    std::string sig = ops.to_string();
    for (char &ch : sig)
        if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
    // compact runs of underscores
    std::string compact;
    for (char ch : sig)
        if (ch != '_' || (compact.size() && compact.back() != '_')) compact += ch;
    while (!compact.empty() && compact.back() == '_') compact.pop_back();
    base += compact;
    if (!c.find_constraint(base)) return base;
    for (int i = 2;; ++i) {
        std::string probe = base + "_" + std::to_string(i);
        if (!c.find_constraint(probe)) return probe;
    }
}

} // namespace

ParseResult parse_schema(std::string_view text) {
    Parser p;
    Lexer lex{text, 0, 1, 1, &p.errors};
    for (Token t = lex.next();; t = lex.next()) {
        bool end = t.kind == Token::Kind::End;
        p.toks.push_back(std::move(t));
        if (end) break;
    }
    p.run();

    ParseResult res;
    if (!p.errors.empty()) {
        res.errors = std::move(p.errors);
        return res;
    }

    Catalog c(p.db_name.empty() ? "db" : p.db_name);
    try {
        for (auto &s : p.sets) {
            // coerce date-typed specs declared with text literals
            c.add_set_unchecked(std::move(s));
        }
        for (auto &m : p.mappings) {
            if (m.default_value)
                if (const ValueTypeSpec *spec = codomain_spec(c, m.codomain))
                    m.default_value = coerce_literal(*m.default_value, spec->base);
            c.add_mapping_unchecked(std::move(m));
        }
        for (auto &d : p.diagrams) c.add_diagram(std::move(d));
        for (auto &pr : p.programs) c.add_program(std::move(pr));
        for (const auto &st : p.constraint_stmts) {
            auto fitted = fit_constraint(c, st);
            if (!fitted) {
                res.errors.push_back({st.span,
                                      "no constraint type named '" + st.tag +
                                          "' accepts these operands",
                                      {}});
                continue;
            }
            ConstraintDef def;
            def.ctype = fitted->first;
            def.operands = std::move(fitted->second);
            // resolve paths now so that stored form is canonical; failures stay
            // as written and surface via validate()
            std::vector<Defect> sink;
            for (auto &path : def.operands.paths) path = c.resolve_path(path, sink, st.tag);
            if (def.ctype == Ctype::DefaultValue && def.operands.default_value &&
                def.operands.paths.size() == 1 && !def.operands.paths[0].empty()) {
                const PathStep &last = def.operands.paths[0].back();
                if (const MappingDef *m = c.find_mapping(last.qualifier, last.name))
                    if (const ValueTypeSpec *spec = codomain_spec(c, m->codomain))
                        def.operands.default_value =
                            coerce_literal(*def.operands.default_value, spec->base);
            }
            def.name = st.name.empty() ? auto_constraint_name(c, def.ctype, def.operands)
                                       : st.name;
            def.origin = ConstraintOrigin::Declared;
            c.add_constraint_unchecked(std::move(def));
        }
    } catch (const Error &e) {
        res.errors.push_back({{1, 1, 1}, e.what(), {}});
        return res;
    }
    if (!res.errors.empty()) return res;
    res.catalog = std::move(c);
    return res;
}

// ---------------------------------------------------------------------------
// Canonical serialization

namespace {

std::string quote(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string literal_text(const Value &v) {
    switch (v.kind()) {
    case Value::Kind::Text: return quote(v.as_text());
    case Value::Kind::Date: return quote(v.as_text());
    default: return v.to_string();
    }
}

std::string spec_text(const ValueTypeSpec &spec) {
    std::string out = value_base_name(spec.base);
    if (spec.min || spec.max) {
        out += " [";
        if (spec.min) out += literal_text(*spec.min);
        out += " .. ";
        if (spec.max) out += literal_text(*spec.max);
        out += "]";
    }
    if (!spec.enumeration.empty()) {
        out += " in {";
        for (size_t i = 0; i < spec.enumeration.size(); ++i) {
            if (i) out += ", ";
            out += literal_text(spec.enumeration[i]);
        }
        out += "}";
    }
    if (spec.pattern) out += " pattern " + quote(*spec.pattern);
    return out;
}

std::string horn_text(const HornClause &cl) {
    std::string out = cl.anchor_set + ": ";
    for (size_t i = 0; i < cl.literals.size(); ++i) {
        if (i) out += " | ";
        const HornLiteral &lit = cl.literals[i];
        if (!lit.positive) out += "!";
        auto term = [&](const HornTerm &t) {
            return t.is_path ? path_to_string(t.path) : literal_text(t.constant);
        };
        out += term(lit.lhs) + " " + datalog::cmp_op_text(lit.op) + " " + term(lit.rhs);
    }
    return out;
}

std::string constraint_operand_text(const Catalog &c, const ConstraintDef &k) {
    if (k.operands.clause) return horn_text(*k.operands.clause);
    std::string out;
    bool first = true;
    auto sep = [&] {
        if (!first) out += ", ";
        first = false;
    };
    for (const auto &s : k.operands.sets) { sep(); out += s; }
    std::vector<Defect> sink;
    for (const auto &p : k.operands.paths) {
        sep();
        out += path_to_string(c.resolve_path(p, sink, k.name));
    }
    if (k.operands.default_value) { sep(); out += literal_text(*k.operands.default_value); }
    return out;
}

} // namespace

std::string serialize_schema(const Catalog &catalog) {
    if (!catalog.validate().empty())
        throw Error(Errc::IllFormedCatalog, "serialize_schema needs a well-formed catalog");

    std::ostringstream out;
    out << "database " << catalog.db_name() << ";\n";

    auto sorted_sets = [&](SetKind k) {
        std::vector<const SetDef *> v;
        for (const auto &s : catalog.sets())
            if (s.kind == k) v.push_back(&s);
        std::sort(v.begin(), v.end(),
                  [](const SetDef *a, const SetDef *b) { return a->name < b->name; });
        return v;
    };
    for (const SetDef *s : sorted_sets(SetKind::Value))
        out << "valueset " << s->name << ": " << spec_text(*s->value_spec) << ";\n";
    for (const SetDef *s : sorted_sets(SetKind::Computed))
        out << "computed " << s->name << " = " << quote(s->computed_formula) << ";\n";
    for (const SetDef *s : sorted_sets(SetKind::Entity)) out << "entity " << s->name << ";\n";
    for (const SetDef *s : sorted_sets(SetKind::Relationship)) {
        out << "relationship " << s->name << "(";
        for (size_t i = 0; i < s->rel_sorts.size(); ++i) {
            if (i) out << ", ";
            out << s->rel_sorts[i].role << ": " << s->rel_sorts[i].target;
        }
        out << ");\n";
    }

    std::vector<const MappingDef *> maps;
    for (const auto &m : catalog.mappings()) maps.push_back(&m);
    std::sort(maps.begin(), maps.end(), [](const MappingDef *a, const MappingDef *b) {
        if (a->kind != b->kind) return static_cast<int>(a->kind) < static_cast<int>(b->kind);
        if (a->domain != b->domain) return a->domain < b->domain;
        return a->name < b->name;
    });
    for (const MappingDef *m : maps) {
        switch (m->kind) {
        case MappingKind::Attribute: out << "attr "; break;
        case MappingKind::StructuralFunction: out << "fn "; break;
        case MappingKind::Computed: out << "computedfn "; break;
        case MappingKind::System: continue;
        }
        out << m->name << ": " << m->domain << " -> " << m->codomain;
        if (m->kind == MappingKind::Computed) out << " = " << quote(m->computed_formula);
        if (m->default_value) out << " default " << literal_text(*m->default_value);
        out << ";\n";
    }

    std::vector<const DiagramDef *> diags;
    for (const auto &d : catalog.diagrams()) diags.push_back(&d);
    std::sort(diags.begin(), diags.end(),
              [](const DiagramDef *a, const DiagramDef *b) { return a->name < b->name; });
    for (const DiagramDef *d : diags) {
        out << "diagram " << d->name << "(";
        for (size_t i = 0; i < d->member_sets.size(); ++i) {
            if (i) out << ", ";
            out << d->member_sets[i];
        }
        out << ");\n";
    }

    std::vector<const ConstraintDef *> cons;
    for (const auto &k : catalog.constraints()) cons.push_back(&k);
    std::sort(cons.begin(), cons.end(),
              [](const ConstraintDef *a, const ConstraintDef *b) { return a->name < b->name; });
    for (const ConstraintDef *k : cons) {
        out << "constraint " << k->name << ": " << ctype_info(k->ctype).abbrev << "("
            << constraint_operand_text(catalog, *k) << ");\n";
    }

    std::vector<const DatalogProgramDef *> progs;
    for (const auto &pr : catalog.programs()) progs.push_back(&pr);
    std::sort(progs.begin(), progs.end(),
              [](const DatalogProgramDef *a, const DatalogProgramDef *b) {
                  return a->name < b->name;
              });
    for (const DatalogProgramDef *pr : progs) {
        out << "program " << pr->name << " {\n";
        for (const auto &r : pr->rules) out << "  rule " << r.to_string() << ";\n";
        out << "};\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Instance JSON

namespace {

using nlohmann::json;

std::optional<Value> json_to_value(const json &j, const Catalog::Column &col,
                                   const Catalog &catalog, std::string &why) {
    if (j.is_null()) return Value::null();
    if (!col.is_attribute) { // reference column (role or structural function)
        if (j.is_number_integer()) return Value::ref(j.get<int64_t>());
        why = "expected a row id (integer) or null";
        return std::nullopt;
    }
    const ValueTypeSpec *spec = codomain_spec(catalog, col.codomain);
    ValueBase base = spec ? spec->base : ValueBase::Text;
    switch (base) {
    case ValueBase::Boolean:
        if (j.is_boolean()) return Value::boolean(j.get<bool>());
        why = "expected a boolean";
        return std::nullopt;
    case ValueBase::Integer:
        if (j.is_number_integer()) return Value::integer(j.get<int64_t>());
        why = "expected an integer";
        return std::nullopt;
    case ValueBase::Decimal:
        if (j.is_number()) return Value::decimal(j.get<double>());
        why = "expected a number";
        return std::nullopt;
    case ValueBase::Text:
        if (j.is_string()) return Value::text(j.get<std::string>());
        why = "expected a string";
        return std::nullopt;
    case ValueBase::Date:
        if (j.is_string() && is_iso_date(j.get<std::string>()))
            return Value::date(j.get<std::string>());
        why = "expected an ISO date string (yyyy-mm-dd)";
        return std::nullopt;
    }
    why = "unsupported value";
    return std::nullopt;
}

} // namespace

InstanceParseResult parse_instance(std::string_view json_text, const Catalog &catalog) {
    InstanceParseResult res;
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error &e) {
        res.errors.push_back({"JsonSyntax", "", 0, "", e.what()});
        return res;
    }
    if (!root.is_object()) {
        res.errors.push_back({"JsonSyntax", "", 0, "", "instance file must be a JSON object"});
        return res;
    }
    InstanceDB db;
    for (auto it = root.begin(); it != root.end(); ++it) {
        const std::string &set_name = it.key();
        const SetDef *sd = catalog.find_set(set_name);
        if (!sd) {
            res.errors.push_back({"UnknownSet", set_name, 0, "", "not declared in the schema"});
            continue;
        }
        if (!it.value().is_object() || !it.value().contains("rows") ||
            !it.value()["rows"].is_array()) {
            res.errors.push_back(
                {"JsonSyntax", set_name, 0, "", "set entry must be {\"rows\": [...]}"});
            continue;
        }
        auto cols = catalog.columns_of(set_name);
        SetInstance si;
        for (const auto &jrow : it.value()["rows"]) {
            if (!jrow.is_object() || !jrow.contains("id") || !jrow["id"].is_number_integer() ||
                jrow["id"].get<int64_t>() <= 0) {
                res.errors.push_back(
                    {"BadId", set_name, 0, "", "every row needs a positive integer id"});
                continue;
            }
            Row row;
            row.id = jrow["id"].get<int64_t>();
            if (si.has_id(row.id)) {
                res.errors.push_back(
                    {"DuplicateId", set_name, row.id, "", "row id repeats within the set"});
                continue;
            }
            for (auto f = jrow.begin(); f != jrow.end(); ++f) {
                if (f.key() == "id") continue;
                auto col = std::find_if(cols.begin(), cols.end(),
                                        [&](const auto &c) { return c.name == f.key(); });
                if (col == cols.end()) {
                    res.errors.push_back({"UnknownColumn", set_name, row.id, f.key(),
                                          "no such mapping or role on " + set_name});
                    continue;
                }
                std::string why;
                auto v = json_to_value(f.value(), *col, catalog, why);
                if (!v) {
                    res.errors.push_back({"TypeMismatch", set_name, row.id, f.key(), why});
                    continue;
                }
                if (col->is_attribute && !v->is_null()) {
                    if (const ValueTypeSpec *spec = codomain_spec(catalog, col->codomain))
                        if (auto reason = spec->check(*v)) {
                            res.errors.push_back(
                                {"TypeMismatch", set_name, row.id, f.key(), *reason});
                            continue;
                        }
                }
                row.values[f.key()] = *v;
            }
            si.rows.push_back(std::move(row));
        }
        std::sort(si.rows.begin(), si.rows.end(),
                  [](const Row &a, const Row &b) { return a.id < b.id; });
        db.sets[set_name] = std::move(si);
    }
    // referential integrity with coordinates
    for (const auto &[set_name, si] : db.sets) {
        auto cols = catalog.columns_of(set_name);
        for (const auto &col : cols) {
            if (col.is_attribute) continue;
            const SetInstance *target = db.find(col.codomain);
            for (const auto &row : si.rows) {
                const Value &v = row.get(col.name);
                if (v.kind() == Value::Kind::Ref &&
                    (!target || !target->has_id(v.as_int())))
                    res.errors.push_back({"DanglingRef", set_name, row.id, col.name,
                                          "no row " + std::to_string(v.as_int()) + " in " +
                                              col.codomain});
            }
        }
    }
    if (!res.errors.empty()) return res;
    res.instance = std::move(db);
    return res;
}

std::string instance_to_json(const InstanceDB &db) {
    json root = json::object();
    for (const auto &[set_name, si] : db.sets) {
        json rows = json::array();
        std::vector<const Row *> ordered;
        for (const auto &r : si.rows) ordered.push_back(&r);
        std::sort(ordered.begin(), ordered.end(),
                  [](const Row *a, const Row *b) { return a->id < b->id; });
        for (const Row *r : ordered) {
            json jr;
            jr["id"] = r->id;
            for (const auto &[col, v] : r->values) {
                switch (v.kind()) {
                case Value::Kind::Null: jr[col] = nullptr; break;
                case Value::Kind::Boolean: jr[col] = v.as_bool(); break;
                case Value::Kind::Integer: jr[col] = v.as_int(); break;
                case Value::Kind::Decimal: jr[col] = v.as_decimal(); break;
                case Value::Kind::Text:
                case Value::Kind::Date: jr[col] = v.as_text(); break;
                case Value::Kind::Ref: jr[col] = v.as_int(); break;
                }
            }
            rows.push_back(std::move(jr));
        }
        root[set_name] = {{"rows", std::move(rows)}};
    }
    return root.dump(2) + "\n";
}

} // namespace emdm
