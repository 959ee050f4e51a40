#include "bigrel/bigraph.hpp"

#include <algorithm>
#include <sstream>

namespace bigrel {

void Signature::declare(const std::string& control, int arity) {
    if (arity < 0) throw std::invalid_argument("negative arity for control " + control);
    auto [it, inserted] = arity_.emplace(control, arity);
    if (!inserted && it->second != arity)
        throw std::invalid_argument("control " + control + " redeclared with different arity");
}

int Signature::arity(const std::string& control) const {
    auto it = arity_.find(control);
    if (it == arity_.end()) throw std::invalid_argument("unknown control " + control);
    return it->second;
}

Signature Signature::merge(const Signature& a, const Signature& b) {
    Signature out = a;
    for (const auto& [k, n] : b.arity_) out.declare(k, n);
    return out;
}

std::string to_string(const Place& p) {
    if (std::holds_alternative<RootRef>(p))
        return "root " + std::to_string(std::get<RootRef>(p).index);
    return "node " + std::get<NodeRef>(p).id;
}
std::string to_string(const Child& c) {
    if (std::holds_alternative<SiteRef>(c))
        return "site " + std::to_string(std::get<SiteRef>(c).index);
    return "node " + std::get<NodeRef>(c).id;
}
std::string to_string(const Point& p) {
    if (std::holds_alternative<InnerRef>(p)) return "inner " + std::get<InnerRef>(p).name;
    const Port& q = std::get<Port>(p);
    return "port(" + q.node + "," + std::to_string(q.index) + ")";
}
std::string to_string(const Target& t) {
    if (std::holds_alternative<OuterRef>(t)) return "outer " + std::get<OuterRef>(t).name;
    return "edge " + std::get<EdgeRef>(t).id;
}

int Bigraph::arity_of(const std::string& node) const {
    auto it = ctrl.find(node);
    if (it == ctrl.end()) throw std::invalid_argument("node without control: " + node);
    return sig.arity(it->second);
}

std::vector<Port> Bigraph::ports() const {
    std::vector<Port> out;
    for (const auto& v : nodes) {
        int a = arity_of(v);
        for (int i = 1; i <= a; ++i) out.push_back(Port{v, i});
    }
    return out;
}

std::vector<Child> Bigraph::children_of(const Place& p) const {
    std::vector<Child> out;
    for (const auto& [c, q] : prnt)
        if (q == p) out.push_back(c);
    return out;
}

std::vector<Point> Bigraph::points_of(const Target& t) const {
    std::vector<Point> out;
    for (const auto& [p, u] : link)
        if (u == t) out.push_back(p);
    return out;
}

std::string Diagnostics::to_string() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v << '\n';
    return os.str();
}

Diagnostics well_formed(const Bigraph& b) {
    Diagnostics d;
    auto fail = [&](const std::string& msg) { d.violations.push_back(msg); };

    if (b.inner.width < 0) fail("inner width negative");
    if (b.outer.width < 0) fail("outer width negative");

    // Interface name sets disjoint within the bigraph.
    for (const auto& x : b.inner.names)
        if (b.outer.names.count(x)) fail("name " + x + " is both inner and outer");

    // ctrl total on nodes, controls declared.
    for (const auto& v : b.nodes) {
        auto it = b.ctrl.find(v);
        if (it == b.ctrl.end())
            fail("node " + v + " has no control");
        else if (!b.sig.has(it->second))
            fail("control " + it->second + " of node " + v + " not in signature");
    }
    for (const auto& [v, k] : b.ctrl)
        if (!b.nodes.count(v)) fail("ctrl defined on unknown node " + v);

    // prnt total on sites + nodes, nothing else; codomain in nodes + roots.
    std::set<Child> prnt_dom;
    for (int i = 0; i < b.inner.width; ++i) prnt_dom.insert(SiteRef{i});
    for (const auto& v : b.nodes) prnt_dom.insert(NodeRef{v});
    for (const auto& c : prnt_dom)
        if (!b.prnt.count(c)) fail("prnt undefined on " + to_string(c));
    for (const auto& [c, p] : b.prnt) {
        if (!prnt_dom.count(c)) fail("prnt defined on foreign " + to_string(c));
        if (std::holds_alternative<RootRef>(p)) {
            int r = std::get<RootRef>(p).index;
            if (r < 0 || r >= b.outer.width) fail("prnt target root " + std::to_string(r) + " out of range");
        } else if (!b.nodes.count(std::get<NodeRef>(p).id)) {
            fail("prnt target " + to_string(p) + " is not a node of the bigraph");
        }
    }

    // link total on inner names + ports, nothing else; codomain in edges + outer names.
    std::set<Point> link_dom;
    for (const auto& x : b.inner.names) link_dom.insert(InnerRef{x});
    bool ports_ok = true;
    for (const auto& v : b.nodes) {
        auto it = b.ctrl.find(v);
        if (it == b.ctrl.end() || !b.sig.has(it->second)) {
            ports_ok = false;
            continue;
        }
        for (int i = 1; i <= b.sig.arity(it->second); ++i) link_dom.insert(Port{v, i});
    }
    if (ports_ok)
        for (const auto& p : link_dom)
            if (!b.link.count(p)) fail("link undefined on " + to_string(p));
    for (const auto& [p, t] : b.link) {
        if (!link_dom.count(p)) fail("link defined on foreign " + to_string(p));
        if (std::holds_alternative<OuterRef>(t)) {
            if (!b.outer.names.count(std::get<OuterRef>(t).name))
                fail("link target " + to_string(t) + " not an outer name");
        } else if (!b.edges.count(std::get<EdgeRef>(t).id)) {
            fail("link target " + to_string(t) + " not an edge of the bigraph");
        }
    }

    // prnt restricted to nodes is acyclic (the place graph is a forest).
    std::map<std::string, int> state;  // 0 unseen, 1 in progress, 2 done
    for (const auto& start : b.nodes) {
        std::string v = start;
        std::vector<std::string> path;
        while (true) {
            if (!b.nodes.count(v)) break;
            int& st = state[v];
            if (st == 2) break;
            if (st == 1) {
                fail("prnt cycle through node " + v);
                break;
            }
            st = 1;
            path.push_back(v);
            auto it = b.prnt.find(Child{NodeRef{v}});
            if (it == b.prnt.end() || std::holds_alternative<RootRef>(it->second)) break;
            v = std::get<NodeRef>(it->second).id;
        }
        for (const auto& u : path) state[u] = 2;
    }

    return d;
}

namespace {

void require_disjoint_support(const Bigraph& g, const Bigraph& f) {
    for (const auto& v : f.nodes)
        if (g.nodes.count(v)) throw NameClash("node " + v + " occurs in both bigraphs");
    for (const auto& e : f.edges)
        if (g.edges.count(e)) throw NameClash("edge " + e + " occurs in both bigraphs");
}

}  // namespace

Bigraph compose(const Bigraph& g, const Bigraph& f) {
    if (!(g.inner == f.outer))
        throw InterfaceMismatch("compose: inner interface of context does not match outer interface of argument");
    require_disjoint_support(g, f);

    Bigraph b;
    b.sig = Signature::merge(g.sig, f.sig);
    b.nodes = g.nodes;
    b.nodes.insert(f.nodes.begin(), f.nodes.end());
    b.edges = g.edges;
    b.edges.insert(f.edges.begin(), f.edges.end());
    b.ctrl = g.ctrl;
    b.ctrl.insert(f.ctrl.begin(), f.ctrl.end());
    b.inner = f.inner;
    b.outer = g.outer;

    for (const auto& [c, p] : f.prnt) {
        if (std::holds_alternative<RootRef>(p)) {
            // Root j of F is site j of G.
            auto it = g.prnt.find(Child{SiteRef{std::get<RootRef>(p).index}});
            if (it == g.prnt.end()) throw InterfaceMismatch("compose: context site missing");
            b.prnt[c] = it->second;
        } else {
            b.prnt[c] = p;
        }
    }
    for (const auto& [c, p] : g.prnt) {
        if (std::holds_alternative<SiteRef>(c)) continue;  // consumed by composition
        b.prnt[c] = p;
    }

    for (const auto& [pt, t] : f.link) {
        if (std::holds_alternative<OuterRef>(t)) {
            auto it = g.link.find(Point{InnerRef{std::get<OuterRef>(t).name}});
            if (it == g.link.end()) throw InterfaceMismatch("compose: context inner name missing");
            b.link[pt] = it->second;
        } else {
            b.link[pt] = t;
        }
    }
    for (const auto& [pt, t] : g.link) {
        if (std::holds_alternative<InnerRef>(pt)) continue;
        b.link[pt] = t;
    }
    return b;
}

Bigraph juxtapose(const Bigraph& g, const Bigraph& f) {
    require_disjoint_support(g, f);
    auto clash = [](const std::set<std::string>& a, const std::set<std::string>& b,
                    const char* what) {
        for (const auto& x : b)
            if (a.count(x)) throw NameClash(std::string(what) + " name " + x + " occurs in both bigraphs");
    };
    clash(g.inner.names, f.inner.names, "inner");
    clash(g.outer.names, f.outer.names, "outer");

    int site_shift = f.inner.width;
    int root_shift = f.outer.width;

    Bigraph b;
    b.sig = Signature::merge(g.sig, f.sig);
    b.nodes = g.nodes;
    b.nodes.insert(f.nodes.begin(), f.nodes.end());
    b.edges = g.edges;
    b.edges.insert(f.edges.begin(), f.edges.end());
    b.ctrl = g.ctrl;
    b.ctrl.insert(f.ctrl.begin(), f.ctrl.end());
    b.inner.width = f.inner.width + g.inner.width;
    b.outer.width = f.outer.width + g.outer.width;
    b.inner.names = f.inner.names;
    b.inner.names.insert(g.inner.names.begin(), g.inner.names.end());
    b.outer.names = f.outer.names;
    b.outer.names.insert(g.outer.names.begin(), g.outer.names.end());

    b.prnt = f.prnt;
    for (const auto& [c, p] : g.prnt) {
        Child c2 = c;
        if (std::holds_alternative<SiteRef>(c2))
            c2 = SiteRef{std::get<SiteRef>(c2).index + site_shift};
        Place p2 = p;
        if (std::holds_alternative<RootRef>(p2))
            p2 = RootRef{std::get<RootRef>(p2).index + root_shift};
        b.prnt[c2] = p2;
    }

    b.link = f.link;
    for (const auto& [pt, t] : g.link) b.link[pt] = t;
    return b;
}

bool is_ground(const Bigraph& b) { return b.inner.width == 0 && b.inner.names.empty(); }

Bigraph empty_bigraph(const Signature& sig) {
    Bigraph b;
    b.sig = sig;
    return b;
}

Bigraph identity(const Signature& sig, const Interface& iface) {
    Bigraph b;
    b.sig = sig;
    b.inner = iface;
    b.outer = iface;
    for (int i = 0; i < iface.width; ++i) b.prnt[SiteRef{i}] = RootRef{i};
    for (const auto& x : iface.names) b.link[InnerRef{x}] = OuterRef{x};
    return b;
}

namespace {

std::string mapped(const std::map<std::string, std::string>& m, const std::string& k) {
    auto it = m.find(k);
    return it == m.end() ? k : it->second;
}

}  // namespace

Bigraph rename_support(const Bigraph& b, const std::map<std::string, std::string>& node_map,
                       const std::map<std::string, std::string>& edge_map) {
    Bigraph r;
    r.sig = b.sig;
    r.inner = b.inner;
    r.outer = b.outer;
    for (const auto& v : b.nodes) r.nodes.insert(mapped(node_map, v));
    if (r.nodes.size() != b.nodes.size()) throw NameClash("node renaming is not injective");
    for (const auto& e : b.edges) r.edges.insert(mapped(edge_map, e));
    if (r.edges.size() != b.edges.size()) throw NameClash("edge renaming is not injective");
    for (const auto& [v, k] : b.ctrl) r.ctrl[mapped(node_map, v)] = k;

    auto ren_child = [&](Child c) {
        if (std::holds_alternative<NodeRef>(c))
            return Child{NodeRef{mapped(node_map, std::get<NodeRef>(c).id)}};
        return c;
    };
    auto ren_place = [&](Place p) {
        if (std::holds_alternative<NodeRef>(p))
            return Place{NodeRef{mapped(node_map, std::get<NodeRef>(p).id)}};
        return p;
    };
    auto ren_point = [&](Point p) {
        if (std::holds_alternative<Port>(p)) {
            Port q = std::get<Port>(p);
            q.node = mapped(node_map, q.node);
            return Point{q};
        }
        return p;
    };
    auto ren_target = [&](Target t) {
        if (std::holds_alternative<EdgeRef>(t))
            return Target{EdgeRef{mapped(edge_map, std::get<EdgeRef>(t).id)}};
        return t;
    };
    for (const auto& [c, p] : b.prnt) r.prnt[ren_child(c)] = ren_place(p);
    for (const auto& [pt, t] : b.link) r.link[ren_point(pt)] = ren_target(t);
    return r;
}

Bigraph drop_idle_outer_names(const Bigraph& b) {
    std::set<std::string> used;
    for (const auto& [pt, t] : b.link)
        if (std::holds_alternative<OuterRef>(t)) used.insert(std::get<OuterRef>(t).name);
    Bigraph r = b;
    r.outer.names = used;
    return r;
}

}  // namespace bigrel
