#include "bigrel/encode.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace bigrel {
namespace rel {

Term node_term(const std::string& id) { return Term::sym(Ns::node, id); }
Term edge_term(const std::string& id) { return Term::sym(Ns::edge, id); }
Term name_term(const std::string& id) { return Term::sym(Ns::name, id); }
Term ctrl_term(const std::string& id) { return Term::sym(Ns::ctrl, id); }
Term bigraph_term(const std::string& id) { return Term::sym(Ns::bigraph, id); }
Term root_term(int index) { return Term::nat(static_cast<std::uint64_t>(index)); }
Term site_term(int index) { return Term::nat(static_cast<std::uint64_t>(index)); }
Term port_term(const std::string& node, int index) {
    return Term::app("port", {node_term(node), Term::nat(static_cast<std::uint64_t>(index))});
}

Term src_n(Term t) { return Term::app("src_n", {std::move(t)}); }
Term src_s(Term t) { return Term::app("src_s", {std::move(t)}); }
Term src_p(Term t) { return Term::app("src_p", {std::move(t)}); }
Term src_i(Term t) { return Term::app("src_i", {std::move(t)}); }
Term dst_n(Term t) { return Term::app("dst_n", {std::move(t)}); }
Term dst_r(Term t) { return Term::app("dst_r", {std::move(t)}); }
Term dst_o(Term t) { return Term::app("dst_o", {std::move(t)}); }
Term dst_e(Term t) { return Term::app("dst_e", {std::move(t)}); }

Term place_term(const Place& p) {
    if (std::holds_alternative<RootRef>(p)) return dst_r(root_term(std::get<RootRef>(p).index));
    return dst_n(node_term(std::get<NodeRef>(p).id));
}
Term child_term(const Child& c) {
    if (std::holds_alternative<SiteRef>(c)) return src_s(site_term(std::get<SiteRef>(c).index));
    return src_n(node_term(std::get<NodeRef>(c).id));
}
Term point_term(const Point& p) {
    if (std::holds_alternative<InnerRef>(p)) return src_i(name_term(std::get<InnerRef>(p).name));
    const Port& q = std::get<Port>(p);
    return src_p(port_term(q.node, q.index));
}
Term target_term(const Target& t) {
    if (std::holds_alternative<OuterRef>(t)) return dst_o(name_term(std::get<OuterRef>(t).name));
    return dst_e(edge_term(std::get<EdgeRef>(t).id));
}

PredicateTable relational_predicates() {
    PredicateTable t;
    t.declare(p_is_root, 2);
    t.declare(p_is_node, 2);
    t.declare(p_is_site, 2);
    t.declare(p_is_port, 2);
    t.declare(p_is_o_name, 2);
    t.declare(p_is_i_name, 2);
    t.declare(p_is_e_name, 2);
    t.declare(p_prnt, 3);
    t.declare(p_link, 3);
    t.declare(p_lc, 3);
    t.declare(p_lp, 3);
    t.declare(p_has_child_p, 3);
    t.declare(p_has_child_l, 3);
    t.declare(p_vp, 3);
    return t;
}

Multiset encode(const Bigraph& b, const std::string& id) {
    auto d = well_formed(b);
    if (!d.ok()) throw std::invalid_argument("encode: bigraph is not well formed:\n" + d.to_string());

    Term beta = bigraph_term(id);
    Multiset s;
    auto emit = [&](const char* pred, std::vector<Term> args) {
        args.push_back(beta);
        s.add(Atom{pred, std::move(args)});
    };

    std::map<Place, std::uint64_t> place_children;
    for (const auto& [c, p] : b.prnt) place_children[p] += 1;
    std::map<Target, std::uint64_t> target_points;
    for (const auto& [pt, t] : b.link) target_points[t] += 1;

    for (const auto& v : b.nodes) {
        emit(p_is_node, {node_term(v)});
        emit(p_lc, {node_term(v), ctrl_term(b.ctrl.at(v))});
        emit(p_prnt, {src_n(node_term(v)), place_term(b.prnt.at(Child{NodeRef{v}}))});
        emit(p_has_child_p, {dst_n(node_term(v)), Term::nat(place_children[Place{NodeRef{v}}])});
    }
    for (const auto& e : b.edges) {
        emit(p_is_e_name, {edge_term(e)});
        emit(p_has_child_l, {dst_e(edge_term(e)), Term::nat(target_points[Target{EdgeRef{e}}])});
    }
    for (const auto& y : b.outer.names) {
        emit(p_is_o_name, {name_term(y)});
        emit(p_has_child_l, {dst_o(name_term(y)), Term::nat(target_points[Target{OuterRef{y}}])});
    }
    for (const auto& q : b.ports()) {
        emit(p_is_port, {port_term(q.node, q.index)});
        emit(p_lp, {port_term(q.node, q.index), node_term(q.node)});
        emit(p_link, {src_p(port_term(q.node, q.index)), target_term(b.link.at(Point{q}))});
    }
    for (int i = 0; i < b.inner.width; ++i) {
        emit(p_is_site, {site_term(i)});
        emit(p_prnt, {src_s(site_term(i)), place_term(b.prnt.at(Child{SiteRef{i}}))});
    }
    for (const auto& x : b.inner.names) {
        emit(p_is_i_name, {name_term(x)});
        emit(p_link, {src_i(name_term(x)), target_term(b.link.at(Point{InnerRef{x}}))});
    }
    for (int r = 0; r < b.outer.width; ++r) {
        emit(p_is_root, {root_term(r)});
        emit(p_has_child_p, {dst_r(root_term(r)), Term::nat(place_children[Place{RootRef{r}}])});
    }
    return s;
}

// ---------------------------------------------------------------------
// Text form

namespace {

std::string term_text(const Term& t) {
    switch (t.kind()) {
        case Term::Kind::nat: return std::to_string(t.nat_value());
        case Term::Kind::sym: return t.symbol().id;
        case Term::Kind::var: return "?" + t.var_name();
        case Term::Kind::app: {
            std::string s = t.fn();
            s += '(';
            for (std::size_t i = 0; i < t.args().size(); ++i) {
                if (i) s += ',';
                s += term_text(t.args()[i]);
            }
            s += ')';
            return s;
        }
    }
    return {};
}

// Untyped parse tree for the text form.
struct Raw {
    std::string head;
    bool is_number = false;
    std::uint64_t number = 0;
    std::vector<Raw> args;
};

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    int line;

    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("atoms line " + std::to_string(line) + ": " + msg);
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' ||
                                s[i] == '\'' || s[i] == '#'))
            ++i;
        if (start == i) fail("identifier expected");
        return s.substr(start, i - start);
    }
    Raw term() {
        skip_ws();
        Raw r;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            std::size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            r.is_number = true;
            r.number = std::stoull(s.substr(start, i - start));
            return r;
        }
        r.head = ident();
        if (eat('(')) {
            if (!eat(')')) {
                do r.args.push_back(term());
                while (eat(','));
                if (!eat(')')) fail("')' expected");
            }
        }
        return r;
    }
};

enum class Role { node, edge, name, ctrl, nat, port, child, place, point, target };

const std::map<std::string, std::vector<Role>>& roles() {
    static const std::map<std::string, std::vector<Role>> table = {
        {p_is_root, {Role::nat}},
        {p_is_site, {Role::nat}},
        {p_is_node, {Role::node}},
        {p_is_port, {Role::port}},
        {p_is_o_name, {Role::name}},
        {p_is_i_name, {Role::name}},
        {p_is_e_name, {Role::edge}},
        {p_prnt, {Role::child, Role::place}},
        {p_link, {Role::point, Role::target}},
        {p_lc, {Role::node, Role::ctrl}},
        {p_lp, {Role::port, Role::node}},
        {p_has_child_p, {Role::place, Role::nat}},
        {p_has_child_l, {Role::target, Role::nat}},
        {p_vp, {Role::node, Role::nat}},
    };
    return table;
}

Term typed(const Raw& r, Role role, Cursor& at);

Term typed_sym(const Raw& r, Ns ns, Cursor& at) {
    if (r.is_number || !r.args.empty()) at.fail("name expected");
    return Term::sym(ns, r.head);
}

Term typed_nat(const Raw& r, Cursor& at) {
    if (r.is_number) return Term::nat(r.number);
    if (r.head == "z" && r.args.empty()) return Term::nat(0);
    if (r.head == "s" && r.args.size() == 1) {
        Term inner = typed_nat(r.args[0], at);
        return Term::nat(inner.nat_value() + 1);
    }
    at.fail("natural expected (decimal or s/z)");
}

Term typed_inj(const Raw& r, Cursor& at, const char* fn, Role inner) {
    if (r.args.size() != 1) at.fail(std::string(fn) + " takes one argument");
    return Term::app(fn, {typed(r.args[0], inner, at)});
}

Term typed(const Raw& r, Role role, Cursor& at) {
    switch (role) {
        case Role::node: return typed_sym(r, Ns::node, at);
        case Role::edge: return typed_sym(r, Ns::edge, at);
        case Role::name: return typed_sym(r, Ns::name, at);
        case Role::ctrl: return typed_sym(r, Ns::ctrl, at);
        case Role::nat: return typed_nat(r, at);
        case Role::port:
            if (r.head != "port" || r.args.size() != 2) at.fail("port(node,index) expected");
            return Term::app("port", {typed_sym(r.args[0], Ns::node, at), typed_nat(r.args[1], at)});
        case Role::child:
            if (r.head == "src_n") return typed_inj(r, at, "src_n", Role::node);
            if (r.head == "src_s") return typed_inj(r, at, "src_s", Role::nat);
            at.fail("src_n/src_s expected");
        case Role::place:
            if (r.head == "dst_n") return typed_inj(r, at, "dst_n", Role::node);
            if (r.head == "dst_r") return typed_inj(r, at, "dst_r", Role::nat);
            at.fail("dst_n/dst_r expected");
        case Role::point:
            if (r.head == "src_p") return typed_inj(r, at, "src_p", Role::port);
            if (r.head == "src_i") return typed_inj(r, at, "src_i", Role::name);
            at.fail("src_p/src_i expected");
        case Role::target:
            if (r.head == "dst_o") return typed_inj(r, at, "dst_o", Role::name);
            if (r.head == "dst_e") return typed_inj(r, at, "dst_e", Role::edge);
            at.fail("dst_o/dst_e expected");
    }
    at.fail("unreachable role");
}

}  // namespace

std::string to_text(const Multiset& s) {
    std::ostringstream os;
    for (const auto& [a, n] : s.counts()) {
        for (std::int64_t k = 0; k < n; ++k) {
            os << a.pred << '(';
            // Final argument is the bigraph identifier, rendered as @id.
            std::size_t last = a.args.size() - 1;
            for (std::size_t i = 0; i < last; ++i) {
                if (i) os << ',';
                os << term_text(a.args[i]);
            }
            os << ")@" << a.args[last].symbol().id << '\n';
        }
    }
    return os.str();
}

Multiset multiset_from_text(const std::string& text) {
    Multiset out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        // Optional format header ("atoms 1"). No comment syntax here:
        // fresh names contain '#'.
        if (lineno == 1 && line.rfind("atoms ", 0) == 0) continue;
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;

        Cursor cur{line, 0, lineno};
        std::string pred = cur.ident();
        auto it = roles().find(pred);
        if (it == roles().end()) cur.fail("unknown predicate " + pred);
        std::vector<Raw> raws;
        if (!cur.eat('(')) cur.fail("'(' expected");
        if (!cur.eat(')')) {
            do raws.push_back(cur.term());
            while (cur.eat(','));
            if (!cur.eat(')')) cur.fail("')' expected");
        }
        if (!cur.eat('@')) cur.fail("'@bigraph' suffix expected");
        std::string big = cur.ident();
        cur.skip_ws();
        if (cur.i != line.size()) cur.fail("trailing characters");

        const auto& rs = it->second;
        if (raws.size() != rs.size())
            cur.fail(pred + " expects " + std::to_string(rs.size()) + " arguments");
        Atom a{pred, {}};
        for (std::size_t i = 0; i < raws.size(); ++i) a.args.push_back(typed(raws[i], rs[i], cur));
        a.args.push_back(bigraph_term(big));
        out.add(std::move(a));
    }
    return out;
}

}  // namespace rel
}  // namespace bigrel
