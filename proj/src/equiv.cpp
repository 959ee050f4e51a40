#include "bigrel/equiv.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace bigrel {

namespace {

// Structural signature of the place subtree under a node: control, the
// exact site indices below it, and the sorted child signatures. Used to
// prune candidates before the backtracking search; links are checked
// separately.
std::map<std::string, std::string> shape_signatures(const Bigraph& b) {
    std::map<Place, std::vector<Child>> kids;
    for (const auto& [c, p] : b.prnt) kids[p].push_back(c);

    std::map<std::string, std::string> sig;
    std::function<std::string(const std::string&)> of = [&](const std::string& v) -> std::string {
        auto it = sig.find(v);
        if (it != sig.end()) return it->second;
        std::vector<std::string> parts;
        auto k = kids.find(Place{NodeRef{v}});
        if (k != kids.end()) {
            for (const auto& c : k->second) {
                if (std::holds_alternative<SiteRef>(c))
                    parts.push_back("s" + std::to_string(std::get<SiteRef>(c).index));
                else
                    parts.push_back(of(std::get<NodeRef>(c).id));
            }
        }
        std::sort(parts.begin(), parts.end());
        std::string s = b.ctrl.at(v) + "[";
        for (const auto& p : parts) s += p + ",";
        s += "]";
        sig[v] = s;
        return s;
    };
    for (const auto& v : b.nodes) of(v);
    return sig;
}

struct Search {
    const Bigraph& b;
    const Bigraph& g;
    std::map<std::string, std::string> sig_b, sig_g;
    std::map<Place, std::vector<std::string>> g_node_children;  // node children per place in g
    std::vector<std::string> order;                             // b nodes, parents first
    std::map<std::string, std::string> node_map;                // b -> g
    std::set<std::string> g_used;

    explicit Search(const Bigraph& b_, const Bigraph& g_) : b(b_), g(g_) {
        sig_b = shape_signatures(b);
        sig_g = shape_signatures(g);
        for (const auto& v : g.nodes) {
            auto p = g.prnt.at(Child{NodeRef{v}});
            g_node_children[p].push_back(v);
        }
        // BFS from the roots so a node's parent is mapped before the node.
        std::vector<std::string> frontier;
        std::map<Place, std::vector<std::string>> b_children;
        for (const auto& v : b.nodes) b_children[b.prnt.at(Child{NodeRef{v}})].push_back(v);
        for (int r = 0; r < b.outer.width; ++r)
            for (const auto& v : b_children[Place{RootRef{r}}]) frontier.push_back(v);
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            order.push_back(frontier[i]);
            for (const auto& v : b_children[Place{NodeRef{frontier[i]}}]) frontier.push_back(v);
        }
    }

    // Builds the edge bijection forced by node_map; nullopt on conflict.
    std::optional<std::map<std::string, std::string>> link_witness() const {
        std::map<std::string, std::string> emap;          // b edge -> g edge
        std::map<std::string, std::string> emap_inv;
        auto bind_edge = [&](const std::string& eb, const std::string& eg) {
            auto it = emap.find(eb);
            if (it != emap.end()) return it->second == eg;
            auto jt = emap_inv.find(eg);
            if (jt != emap_inv.end()) return false;
            emap[eb] = eg;
            emap_inv[eg] = eb;
            return true;
        };
        auto correspond = [&](const Target& tb, const Target& tg) {
            if (std::holds_alternative<OuterRef>(tb))
                return tg == tb;  // identity on outer names
            if (!std::holds_alternative<EdgeRef>(tg)) return false;
            return bind_edge(std::get<EdgeRef>(tb).id, std::get<EdgeRef>(tg).id);
        };
        for (const auto& [pt, tb] : b.link) {
            Point pg = pt;
            if (std::holds_alternative<Port>(pt)) {
                Port q = std::get<Port>(pt);
                q.node = node_map.at(q.node);
                pg = q;
            }
            auto it = g.link.find(pg);
            if (it == g.link.end()) return std::nullopt;
            if (!correspond(tb, it->second)) return std::nullopt;
        }
        // Pair the remaining (idle) edges canonically.
        std::vector<std::string> rest_b, rest_g;
        for (const auto& e : b.edges)
            if (!emap.count(e)) rest_b.push_back(e);
        for (const auto& e : g.edges)
            if (!emap_inv.count(e)) rest_g.push_back(e);
        if (rest_b.size() != rest_g.size()) return std::nullopt;
        for (std::size_t i = 0; i < rest_b.size(); ++i) emap[rest_b[i]] = rest_g[i];
        return emap;
    }

    std::optional<LeanWitness> finish() const {
        // Sites must have corresponding parents.
        for (int s = 0; s < b.inner.width; ++s) {
            Place pb = b.prnt.at(Child{SiteRef{s}});
            auto it = g.prnt.find(Child{SiteRef{s}});
            if (it == g.prnt.end()) return std::nullopt;
            Place pg = it->second;
            if (std::holds_alternative<RootRef>(pb)) {
                if (!(pg == pb)) return std::nullopt;
            } else {
                if (!std::holds_alternative<NodeRef>(pg)) return std::nullopt;
                if (node_map.at(std::get<NodeRef>(pb).id) != std::get<NodeRef>(pg).id)
                    return std::nullopt;
            }
        }
        auto emap = link_witness();
        if (!emap) return std::nullopt;
        return LeanWitness{node_map, *emap};
    }

    std::optional<LeanWitness> go(std::size_t i) {
        if (i == order.size()) return finish();
        const std::string& v = order[i];
        Place pb = b.prnt.at(Child{NodeRef{v}});
        Place pg;
        if (std::holds_alternative<RootRef>(pb)) {
            pg = pb;
        } else {
            pg = Place{NodeRef{node_map.at(std::get<NodeRef>(pb).id)}};
        }
        auto it = g_node_children.find(pg);
        if (it == g_node_children.end()) return std::nullopt;
        for (const auto& w : it->second) {
            if (g_used.count(w)) continue;
            if (sig_b.at(v) != sig_g.at(w)) continue;
            node_map[v] = w;
            g_used.insert(w);
            if (auto res = go(i + 1)) return res;
            node_map.erase(v);
            g_used.erase(w);
        }
        return std::nullopt;
    }
};

std::multiset<std::string> control_counts(const Bigraph& b) {
    std::multiset<std::string> out;
    for (const auto& [v, k] : b.ctrl) out.insert(k);
    return out;
}

}  // namespace

std::optional<LeanWitness> lean_equiv(const Bigraph& b, const Bigraph& g) {
    if (!(b.inner == g.inner) || !(b.outer == g.outer)) return std::nullopt;
    if (b.nodes.size() != g.nodes.size() || b.edges.size() != g.edges.size()) return std::nullopt;
    if (control_counts(b) != control_counts(g)) return std::nullopt;
    try {
        Search s(b, g);
        if (s.order.size() != b.nodes.size()) return std::nullopt;  // unreachable nodes
        return s.go(0);
    } catch (const std::out_of_range&) {
        return std::nullopt;  // partial maps: not comparable
    }
}

LeanWitness invert(const LeanWitness& w) {
    LeanWitness out;
    for (const auto& [a, b] : w.node_map) out.node_map[b] = a;
    for (const auto& [a, b] : w.edge_map) out.edge_map[b] = a;
    return out;
}

LeanWitness chain(const LeanWitness& ab, const LeanWitness& bc) {
    LeanWitness out;
    for (const auto& [a, b] : ab.node_map) out.node_map[a] = bc.node_map.at(b);
    for (const auto& [a, b] : ab.edge_map) out.edge_map[a] = bc.edge_map.at(b);
    return out;
}

bool check_witness(const Bigraph& b, const Bigraph& g, const LeanWitness& w) {
    if (!(b.inner == g.inner) || !(b.outer == g.outer)) return false;
    if (w.node_map.size() != b.nodes.size() || w.edge_map.size() != b.edges.size()) return false;
    std::set<std::string> imgv, imge;
    for (const auto& [a, c] : w.node_map) {
        if (!b.nodes.count(a) || !g.nodes.count(c)) return false;
        imgv.insert(c);
        if (b.ctrl.at(a) != g.ctrl.at(c)) return false;
    }
    if (imgv.size() != g.nodes.size()) return false;
    for (const auto& [a, c] : w.edge_map) {
        if (!b.edges.count(a) || !g.edges.count(c)) return false;
        imge.insert(c);
    }
    if (imge.size() != g.edges.size()) return false;

    auto map_place = [&](const Place& p) {
        if (std::holds_alternative<RootRef>(p)) return p;
        return Place{NodeRef{w.node_map.at(std::get<NodeRef>(p).id)}};
    };
    for (const auto& [c, p] : b.prnt) {
        Child cg = c;
        if (std::holds_alternative<NodeRef>(c))
            cg = NodeRef{w.node_map.at(std::get<NodeRef>(c).id)};
        auto it = g.prnt.find(cg);
        if (it == g.prnt.end() || !(it->second == map_place(p))) return false;
    }
    auto map_target = [&](const Target& t) {
        if (std::holds_alternative<OuterRef>(t)) return t;
        return Target{EdgeRef{w.edge_map.at(std::get<EdgeRef>(t).id)}};
    };
    for (const auto& [pt, t] : b.link) {
        Point pg = pt;
        if (std::holds_alternative<Port>(pt)) {
            Port q = std::get<Port>(pt);
            q.node = w.node_map.at(q.node);
            pg = q;
        }
        auto it = g.link.find(pg);
        if (it == g.link.end() || !(it->second == map_target(t))) return false;
    }
    return true;
}

}  // namespace bigrel
