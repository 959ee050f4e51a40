#include "bigrel/brs_file.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "bigrel/ccs.hpp"
#include "bigrel/encode.hpp"
#include "bigrel/validity.hpp"

namespace bigrel {
namespace brs {

namespace {

struct Tok {
    enum class Kind { ident, number, string, punct, end } kind;
    std::string text;
    std::uint64_t number = 0;
    int line = 1, col = 1;
};

struct Lexer {
    const std::string& s;
    std::size_t i = 0;
    int line = 1, col = 1;
    Tok cur;

    explicit Lexer(const std::string& text) : s(text) { advance(); }

    void bump(char c) {
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    }

    void skip_ws() {
        while (i < s.size()) {
            if (s[i] == '#') {
                while (i < s.size() && s[i] != '\n') bump(s[i]);
            } else if (std::isspace(static_cast<unsigned char>(s[i]))) {
                bump(s[i]);
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& msg) const { throw BrsParseError(msg, cur.line, cur.col); }

    void advance() {
        skip_ws();
        cur.line = line;
        cur.col = col;
        if (i >= s.size()) {
            cur.kind = Tok::Kind::end;
            cur.text.clear();
            return;
        }
        char c = s[i];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string t;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
                t += s[i];
                bump(s[i]);
            }
            cur.kind = Tok::Kind::ident;
            cur.text = std::move(t);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string t;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                t += s[i];
                bump(s[i]);
            }
            cur.kind = Tok::Kind::number;
            cur.text = t;
            cur.number = std::stoull(t);
            return;
        }
        if (c == '"') {
            bump(c);
            std::string t;
            while (i < s.size() && s[i] != '"') {
                t += s[i];
                bump(s[i]);
            }
            if (i >= s.size()) throw BrsParseError("unterminated string", cur.line, cur.col);
            bump('"');
            cur.kind = Tok::Kind::string;
            cur.text = std::move(t);
            return;
        }
        if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            bump('-');
            bump('>');
            cur.kind = Tok::Kind::punct;
            cur.text = "->";
            return;
        }
        cur.kind = Tok::Kind::punct;
        cur.text = std::string(1, c);
        bump(c);
    }
};

struct Parser {
    Lexer lx;
    std::string base_dir;

    explicit Parser(const std::string& text, std::string base) : lx(text), base_dir(std::move(base)) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw BrsParseError(msg, lx.cur.line, lx.cur.col);
    }

    bool at_ident(const char* kw) const {
        return lx.cur.kind == Tok::Kind::ident && lx.cur.text == kw;
    }
    bool at_punct(const char* p) const {
        return lx.cur.kind == Tok::Kind::punct && lx.cur.text == p;
    }
    void expect_punct(const char* p) {
        if (!at_punct(p)) fail(std::string("'") + p + "' expected");
        lx.advance();
    }
    void expect_kw(const char* kw) {
        if (!at_ident(kw)) fail(std::string("'") + kw + "' expected");
        lx.advance();
    }
    std::string ident() {
        if (lx.cur.kind != Tok::Kind::ident) fail("identifier expected");
        std::string t = lx.cur.text;
        lx.advance();
        return t;
    }
    std::uint64_t number() {
        if (lx.cur.kind != Tok::Kind::number) fail("number expected");
        std::uint64_t n = lx.cur.number;
        lx.advance();
        return n;
    }

    Signature signature_block() {
        Signature sig;
        expect_punct("{");
        while (!at_punct("}")) {
            std::string control = ident();
            expect_punct(":");
            sig.declare(control, static_cast<int>(number()));
        }
        expect_punct("}");
        return sig;
    }

    // node <id> <control> [{ children }] | site <index>
    void place_entry(Bigraph& b, const Signature& sig, const Place& parent,
                     std::set<int>& sites_seen) {
        if (at_ident("node")) {
            lx.advance();
            std::string id = ident();
            std::string control = ident();
            if (!sig.has(control)) fail("undeclared control " + control);
            if (b.nodes.count(id)) fail("duplicate node " + id);
            b.nodes.insert(id);
            b.ctrl[id] = control;
            b.prnt[NodeRef{id}] = parent;
            if (at_punct("{")) {
                lx.advance();
                while (!at_punct("}")) place_entry(b, sig, NodeRef{id}, sites_seen);
                expect_punct("}");
            }
        } else if (at_ident("site")) {
            lx.advance();
            int s = static_cast<int>(number());
            if (!sites_seen.insert(s).second) fail("duplicate site " + std::to_string(s));
            b.prnt[SiteRef{s}] = parent;
        } else {
            fail("'node' or 'site' expected");
        }
    }

    Bigraph bigraph_literal(const Signature& sig) {
        expect_kw("bigraph");
        expect_punct("{");
        Bigraph b;
        b.sig = sig;
        std::set<int> sites_seen;
        std::set<std::string> outer_decl, edge_decl;
        struct LinkEntry {
            Point point;
            std::string target;
            int line, col;
        };
        std::vector<LinkEntry> links;

        while (!at_punct("}")) {
            if (at_ident("names")) {
                lx.advance();
                expect_punct("{");
                while (!at_punct("}")) {
                    std::string kind = ident();
                    expect_punct(":");
                    while (lx.cur.kind == Tok::Kind::ident && lx.cur.text != "inner" &&
                           lx.cur.text != "outer" && lx.cur.text != "edges") {
                        std::string n = ident();
                        if (kind == "inner")
                            b.inner.names.insert(n);
                        else if (kind == "outer")
                            outer_decl.insert(n);
                        else if (kind == "edges")
                            edge_decl.insert(n);
                        else
                            fail("name kind must be inner, outer or edges");
                    }
                    if (kind != "inner" && kind != "outer" && kind != "edges")
                        fail("name kind must be inner, outer or edges");
                }
                expect_punct("}");
            } else if (at_ident("root")) {
                lx.advance();
                Place root = RootRef{b.outer.width};
                b.outer.width += 1;
                expect_punct("{");
                while (!at_punct("}")) place_entry(b, sig, root, sites_seen);
                expect_punct("}");
            } else if (at_ident("links")) {
                lx.advance();
                expect_punct("{");
                while (!at_punct("}")) {
                    int ln = lx.cur.line, co = lx.cur.col;
                    Point pt = InnerRef{""};
                    if (at_ident("port")) {
                        lx.advance();
                        expect_punct("(");
                        std::string node = ident();
                        expect_punct(",");
                        int ix = static_cast<int>(number());
                        expect_punct(")");
                        pt = Port{node, ix};
                    } else if (at_ident("inner")) {
                        lx.advance();
                        expect_punct("(");
                        pt = InnerRef{ident()};
                        expect_punct(")");
                    } else {
                        fail("'port(node,index)' or 'inner(name)' expected");
                    }
                    expect_punct("->");
                    links.push_back(LinkEntry{pt, ident(), ln, co});
                }
                expect_punct("}");
            } else {
                fail("'names', 'root' or 'links' expected");
            }
        }
        expect_punct("}");

        b.outer.names = outer_decl;
        b.edges = edge_decl;
        b.inner.width = static_cast<int>(sites_seen.size());
        for (int s = 0; s < b.inner.width; ++s)
            if (!sites_seen.count(s)) fail("site indices must be contiguous from 0");

        for (const auto& e : links) {
            bool is_outer = outer_decl.count(e.target) != 0;
            bool is_edge = edge_decl.count(e.target) != 0;
            if (is_outer && is_edge)
                throw BrsParseError("link target " + e.target + " is declared both outer and edge",
                                    e.line, e.col);
            if (!is_outer && !is_edge)
                throw BrsParseError("link target " + e.target + " is not declared", e.line, e.col);
            b.link[e.point] = is_outer ? Target{OuterRef{e.target}} : Target{EdgeRef{e.target}};
        }

        auto d = well_formed(b);
        if (!d.ok()) fail("bigraph literal is not well formed: " + d.violations.front());
        return b;
    }

    void agent_clause(BrsSpec& out) {
        if (at_ident("ccs")) {
            lx.advance();
            if (lx.cur.kind != Tok::Kind::string) fail("quoted CCS term expected");
            std::string text = lx.cur.text;
            int ln = lx.cur.line, co = lx.cur.col;
            lx.advance();
            try {
                out.agent = ccs::ccs_to_bigraph(ccs::parse_ccs(text));
            } catch (const ccs::ParseError& e) {
                throw BrsParseError(std::string("in ccs term: ") + e.what(), ln, co);
            }
            return;
        }
        if (at_ident("atoms")) {
            lx.advance();
            if (lx.cur.kind != Tok::Kind::string) fail("quoted file path expected");
            std::string path = base_dir + "/" + lx.cur.text;
            int ln = lx.cur.line, co = lx.cur.col;
            lx.advance();
            std::ifstream in(path);
            if (!in) throw BrsParseError("cannot open atoms file " + path, ln, co);
            std::stringstream buf;
            buf << in.rdbuf();
            try {
                out.agent_atoms = rel::multiset_from_text(buf.str());
            } catch (const std::exception& e) {
                throw BrsParseError(std::string("in atoms file: ") + e.what(), ln, co);
            }
            // Decoding may fail; `validate` still works on the raw form.
            try {
                out.agent = rel::interpret(*out.agent_atoms, out.sig);
            } catch (const rel::InvalidMultiset&) {
                out.agent_ok = false;
            }
            return;
        }
        out.agent = bigraph_literal(out.sig);
    }

    BrsSpec spec() {
        expect_kw("brs");
        if (number() != 1) fail("unsupported brs format version");

        BrsSpec out;
        bool have_sig = false, have_agent = false;
        while (lx.cur.kind != Tok::Kind::end) {
            if (at_ident("signature")) {
                lx.advance();
                out.sig = signature_block();
                have_sig = true;
            } else if (at_ident("agent")) {
                if (!have_sig) fail("signature must precede the agent");
                lx.advance();
                agent_clause(out);
                if (out.agent_ok) {
                    out.sig = Signature::merge(out.sig, out.agent.sig);
                    out.agent.sig = out.sig;
                }
                have_agent = true;
            } else if (at_ident("rule")) {
                if (!have_sig) fail("signature must precede rules");
                lx.advance();
                std::string label = ident();
                int ln = lx.cur.line, co = lx.cur.col;
                expect_punct("{");
                expect_kw("redex");
                Bigraph redex = bigraph_literal(out.sig);
                expect_kw("reactum");
                Bigraph reactum = bigraph_literal(out.sig);
                std::map<int, int> eta;
                if (at_ident("eta")) {
                    lx.advance();
                    expect_punct("{");
                    while (!at_punct("}")) {
                        int y = static_cast<int>(number());
                        expect_punct("->");
                        int s = static_cast<int>(number());
                        if (!eta.emplace(y, s).second)
                            fail("eta maps reactum site " + std::to_string(y) + " twice");
                    }
                    expect_punct("}");
                }
                expect_punct("}");
                ParametricReactionRule rule{label, std::move(redex), std::move(reactum),
                                            std::move(eta)};
                try {
                    validate_reaction_rule(rule);
                } catch (const std::invalid_argument& e) {
                    throw BrsParseError(e.what(), ln, co);
                }
                out.rules.push_back(std::move(rule));
            } else if (at_ident("options")) {
                lx.advance();
                expect_punct("{");
                while (!at_punct("}")) {
                    std::string key = ident();
                    std::uint64_t val = number();
                    if (key == "seed")
                        out.seed = val;
                    else if (key == "steps")
                        out.max_steps = val;
                    else if (key == "states")
                        out.max_states = static_cast<std::size_t>(val);
                    else
                        fail("unknown option " + key);
                }
                expect_punct("}");
            } else {
                fail("'signature', 'agent', 'rule' or 'options' expected");
            }
        }
        if (!have_sig) fail("missing signature block");
        if (!have_agent) fail("missing agent block");
        if (out.agent_ok && !is_ground(out.agent)) fail("agent must be ground");
        return out;
    }
};

}  // namespace

BrsSpec parse_spec_text(const std::string& text, const std::string& base_dir) {
    Parser p(text, base_dir);
    return p.spec();
}

BrsSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    auto slash = path.find_last_of('/');
    return parse_spec_text(buf.str(), slash == std::string::npos ? "." : path.substr(0, slash));
}

}  // namespace brs
}  // namespace bigrel
