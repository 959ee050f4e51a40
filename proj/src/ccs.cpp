#include "bigrel/ccs.hpp"

#include <cctype>

namespace bigrel {
namespace ccs {

CcsTerm CcsTerm::send(std::string ch, CcsTerm cont) {
    CcsTerm t;
    t.kind = Kind::send;
    t.channel = std::move(ch);
    t.parts.push_back(std::move(cont));
    return t;
}

CcsTerm CcsTerm::get(std::string ch, CcsTerm cont) {
    CcsTerm t;
    t.kind = Kind::get;
    t.channel = std::move(ch);
    t.parts.push_back(std::move(cont));
    return t;
}

CcsTerm CcsTerm::sum(std::vector<CcsTerm> alts) {
    CcsTerm t;
    t.kind = Kind::sum;
    t.parts = std::move(alts);
    return t;
}

CcsTerm CcsTerm::par(std::vector<CcsTerm> comps) {
    CcsTerm t;
    t.kind = Kind::par;
    t.parts = std::move(comps);
    return t;
}

std::string CcsTerm::to_string() const {
    switch (kind) {
        case Kind::nil: return "0";
        case Kind::send:
        case Kind::get: {
            std::string s = (kind == Kind::send ? "'" : "") + channel;
            if (!(parts[0].kind == Kind::nil)) {
                const CcsTerm& c = parts[0];
                bool wrap = c.kind == Kind::sum || c.kind == Kind::par;
                s += "." + std::string(wrap ? "(" : "") + c.to_string() + (wrap ? ")" : "");
            }
            return s;
        }
        case Kind::sum: {
            std::string s;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (i) s += " + ";
                s += parts[i].to_string();
            }
            return s;
        }
        case Kind::par: {
            std::string s;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (i) s += " | ";
                bool wrap = parts[i].kind == Kind::sum;
                s += std::string(wrap ? "(" : "") + parts[i].to_string() + (wrap ? ")" : "");
            }
            return s;
        }
    }
    return {};
}

namespace {

struct Parser {
    const std::string& s;
    std::size_t i = 0;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool peek(char c) {
        ws();
        return i < s.size() && s[i] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, i); }

    std::string name() {
        ws();
        std::size_t start = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        if (start == i) fail("channel name expected");
        if (std::isdigit(static_cast<unsigned char>(s[start]))) fail("channel name expected");
        return s.substr(start, i - start);
    }

    // atom := '0' | ['] name ['.' atom] | '(' par ')'
    CcsTerm atom() {
        ws();
        if (eat('0')) return CcsTerm::nil();
        if (eat('(')) {
            CcsTerm t = par();
            if (!eat(')')) fail("')' expected");
            return t;
        }
        bool out = eat('\'');
        std::string ch = name();
        CcsTerm cont = CcsTerm::nil();
        if (eat('.')) cont = atom();
        return out ? CcsTerm::send(ch, std::move(cont)) : CcsTerm::get(ch, std::move(cont));
    }

    CcsTerm sum() {
        std::vector<CcsTerm> alts{atom()};
        while (eat('+')) alts.push_back(atom());
        if (alts.size() == 1) return std::move(alts[0]);
        for (const auto& a : alts)
            if (a.kind != CcsTerm::Kind::send && a.kind != CcsTerm::Kind::get)
                fail("sum alternatives must be prefixes");
        return CcsTerm::sum(std::move(alts));
    }

    CcsTerm par() {
        std::vector<CcsTerm> comps{sum()};
        while (eat('|')) comps.push_back(sum());
        if (comps.size() == 1) return std::move(comps[0]);
        return CcsTerm::par(std::move(comps));
    }

    CcsTerm top() {
        CcsTerm t = par();
        ws();
        if (i != s.size()) fail("unexpected input");
        return t;
    }
};

void collect_names(const CcsTerm& t, std::set<std::string>& out) {
    if (t.kind == CcsTerm::Kind::send || t.kind == CcsTerm::Kind::get) out.insert(t.channel);
    for (const auto& p : t.parts) collect_names(p, out);
}

void flatten_par(const CcsTerm& t, std::vector<const CcsTerm*>& out) {
    if (t.kind == CcsTerm::Kind::par)
        for (const auto& p : t.parts) flatten_par(p, out);
    else
        out.push_back(&t);
}

struct Compiler {
    Bigraph& b;
    int counter = 0;

    std::string fresh(const std::string& hint) { return hint + std::to_string(counter++); }

    void prefix_node(const CcsTerm& t, const Place& parent) {
        std::string v = fresh(t.kind == CcsTerm::Kind::send ? "snd" : "get");
        b.nodes.insert(v);
        b.ctrl[v] = t.kind == CcsTerm::Kind::send ? "send" : "get";
        b.prnt[NodeRef{v}] = parent;
        b.link[Port{v, 1}] = OuterRef{t.channel};
        const CcsTerm& cont = t.parts[0];
        if (cont.kind != CcsTerm::Kind::nil) process(cont, NodeRef{v});
    }

    // Wraps one parallel component in its alternation node.
    void component(const CcsTerm& t, const Place& parent) {
        std::string v = fresh("sum");
        b.nodes.insert(v);
        b.ctrl[v] = "sum";
        b.prnt[NodeRef{v}] = parent;
        if (t.kind == CcsTerm::Kind::nil) return;  // empty alternation
        if (t.kind == CcsTerm::Kind::sum) {
            for (const auto& alt : t.parts) prefix_node(alt, NodeRef{v});
        } else {
            prefix_node(t, NodeRef{v});  // unary alternation
        }
    }

    void process(const CcsTerm& t, const Place& parent) {
        std::vector<const CcsTerm*> comps;
        flatten_par(t, comps);
        for (const CcsTerm* c : comps) component(*c, parent);
    }
};

Signature ccs_sig() {
    Signature sig;
    sig.declare("sum", 0);
    sig.declare("get", 1);
    sig.declare("send", 1);
    return sig;
}

}  // namespace

CcsTerm parse_ccs(const std::string& text) {
    Parser p{text};
    return p.top();
}

std::set<std::string> free_names(const CcsTerm& t) {
    std::set<std::string> out;
    collect_names(t, out);
    return out;
}

Bigraph ccs_to_bigraph(const CcsTerm& t) {
    Bigraph b;
    b.sig = ccs_sig();
    b.outer.width = 1;
    b.outer.names = free_names(t);
    Compiler c{b};
    c.process(t, RootRef{0});
    auto d = well_formed(b);
    if (!d.ok()) throw std::logic_error("ccs_to_bigraph: " + d.to_string());
    return b;
}

ParametricReactionRule tau_rule() {
    Signature sig = ccs_sig();

    // L: two sums under one root; one side offers a get on the shared
    // name with its continuation as site 0 and the remaining
    // alternatives as site 1, the other a send with sites 2 and 3.
    Bigraph L;
    L.sig = sig;
    L.outer.width = 1;
    L.outer.names = {"ch"};
    L.inner.width = 4;
    for (const auto& v : {"sum_get", "sum_snd"}) {
        L.nodes.insert(v);
        L.ctrl[v] = "sum";
        L.prnt[NodeRef{v}] = RootRef{0};
    }
    L.nodes.insert("pre_get");
    L.ctrl["pre_get"] = "get";
    L.prnt[NodeRef{"pre_get"}] = NodeRef{"sum_get"};
    L.link[Port{"pre_get", 1}] = OuterRef{"ch"};
    L.nodes.insert("pre_snd");
    L.ctrl["pre_snd"] = "send";
    L.prnt[NodeRef{"pre_snd"}] = NodeRef{"sum_snd"};
    L.link[Port{"pre_snd", 1}] = OuterRef{"ch"};
    L.prnt[SiteRef{0}] = NodeRef{"pre_get"};
    L.prnt[SiteRef{1}] = NodeRef{"sum_get"};
    L.prnt[SiteRef{2}] = NodeRef{"pre_snd"};
    L.prnt[SiteRef{3}] = NodeRef{"sum_snd"};

    // R: the two continuations side by side under the root; the shared
    // name goes idle.
    Bigraph R;
    R.sig = sig;
    R.outer.width = 1;
    R.outer.names = {"ch"};
    R.inner.width = 2;
    R.prnt[SiteRef{0}] = RootRef{0};
    R.prnt[SiteRef{1}] = RootRef{0};

    ParametricReactionRule rule{"tau", std::move(L), std::move(R), {{0, 0}, {1, 2}}};
    validate_reaction_rule(rule);
    return rule;
}

}  // namespace ccs
}  // namespace bigrel
