#include "bigrel/reaction.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <sstream>

#include "bigrel/equiv.hpp"

namespace bigrel {

void validate_reaction_rule(const ParametricReactionRule& r) {
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("rule " + r.label + ": " + msg);
    };
    auto dl = well_formed(r.redex);
    if (!dl.ok()) fail("redex is not well formed:\n" + dl.to_string());
    auto dr = well_formed(r.reactum);
    if (!dr.ok()) fail("reactum is not well formed:\n" + dr.to_string());
    if (!(r.redex.outer == r.reactum.outer)) fail("redex and reactum must share the outer interface");
    if (!r.redex.inner.names.empty() || !r.reactum.inner.names.empty())
        fail("link-graph inner faces must be empty");

    // eta: total on the reactum's sites, into the redex's sites.
    if (static_cast<int>(r.eta.size()) != r.reactum.inner.width)
        fail("eta must be total on reactum sites");
    for (const auto& [y, i] : r.eta) {
        if (y < 0 || y >= r.reactum.inner.width) fail("eta defined on unknown reactum site");
        if (i < 0 || i >= r.redex.inner.width) fail("eta maps to unknown redex site");
    }

    // Solidity of the redex.
    if (r.redex.nodes.empty()) fail("redex needs at least one node");
    for (int s = 0; s < r.redex.inner.width; ++s)
        if (!std::holds_alternative<NodeRef>(r.redex.prnt.at(Child{SiteRef{s}})))
            fail("redex sites must sit under nodes");
    for (int j = 0; j < r.redex.outer.width; ++j) {
        bool has_child = false;
        for (const auto& [c, p] : r.redex.prnt)
            if (p == Place{RootRef{j}}) has_child = true;
        if (!has_child) fail("redex root " + std::to_string(j) + " is idle");
    }
    std::map<Target, int> pts;
    for (const auto& [pt, t] : r.redex.link) pts[t] += 1;
    for (const auto& y : r.redex.outer.names)
        if (pts[Target{OuterRef{y}}] == 0) fail("outer name " + y + " has no redex point");
    for (const auto& e : r.redex.edges)
        if (pts[Target{EdgeRef{e}}] == 0) fail("redex edge " + e + " is idle");
}

ParametricReactionRule lift(const GroundReactionRule& r) {
    if (!is_ground(r.redex) || !is_ground(r.reactum))
        throw std::invalid_argument("rule " + r.label + ": ground rule sides must be ground");
    ParametricReactionRule p{r.label, r.redex, r.reactum, {}};
    validate_reaction_rule(p);
    return p;
}

std::string Occurrence::canonical_key() const {
    std::ostringstream os;
    for (const auto& [a, b] : node_map) os << a << '>' << b << ';';
    os << '|';
    for (const auto& [j, p] : root_place) os << j << '>' << to_string(p) << ';';
    os << '|';
    for (const auto& [s, tops] : site_params) {
        os << s << '>';
        for (const auto& t : tops) os << t << ',';
        os << ';';
    }
    return os.str();
}

namespace {

struct AgentIndex {
    std::map<Place, std::vector<std::string>> node_children;
    std::map<Target, int> point_count;

    explicit AgentIndex(const Bigraph& agent) {
        for (const auto& [c, p] : agent.prnt)
            if (std::holds_alternative<NodeRef>(c))
                node_children[p].push_back(std::get<NodeRef>(c).id);
        for (const auto& [pt, t] : agent.link) point_count[t] += 1;
    }
};

// Backtracking occurrence search, anchored on the redex roots.
struct MatchSearch {
    const Bigraph& agent;
    const Bigraph& L;
    AgentIndex idx;

    std::vector<std::string> order;  // L nodes, parents before children
    std::map<std::string, std::vector<std::string>> l_node_children;
    std::map<std::string, std::vector<int>> l_node_sites;
    std::map<int, std::vector<std::string>> l_root_children;
    std::map<std::string, int> l_point_count;  // per redex edge

    std::map<std::string, std::string> node_map;
    std::set<std::string> used;
    std::map<int, Place> root_place;
    std::set<Place> root_place_used;
    std::map<std::string, Target> name_map;       // J name -> agent link
    std::map<std::string, std::string> edge_map;  // L edge -> agent edge
    std::map<std::string, std::string> edge_inv;
    int inner_width;

    std::vector<Occurrence> found;

    MatchSearch(const Bigraph& agent_, const Bigraph& redex)
        : agent(agent_), L(redex), idx(agent_), inner_width(redex.inner.width) {
        for (const auto& [c, p] : L.prnt) {
            if (std::holds_alternative<NodeRef>(c)) {
                const std::string& v = std::get<NodeRef>(c).id;
                if (std::holds_alternative<RootRef>(p))
                    l_root_children[std::get<RootRef>(p).index].push_back(v);
                else
                    l_node_children[std::get<NodeRef>(p).id].push_back(v);
            } else {
                l_node_sites[std::get<NodeRef>(p).id].push_back(std::get<SiteRef>(c).index);
            }
        }
        for (const auto& [pt, t] : L.link)
            if (std::holds_alternative<EdgeRef>(t)) l_point_count[std::get<EdgeRef>(t).id] += 1;

        for (int j = 0; j < L.outer.width; ++j)
            for (const auto& v : l_root_children[j]) order.push_back(v);
        for (std::size_t i = 0; i < order.size(); ++i)
            for (const auto& v : l_node_children[order[i]]) order.push_back(v);
    }

    // Port compatibility of candidate w for L-node v; extends name_map
    // and edge_map, recording additions for undo.
    bool bind_ports(const std::string& v, const std::string& w, std::vector<std::string>& added_names,
                    std::vector<std::string>& added_edges) {
        int a = L.arity_of(v);
        for (int i = 1; i <= a; ++i) {
            Target lt = L.link.at(Point{Port{v, i}});
            Target at = agent.link.at(Point{Port{w, i}});
            if (std::holds_alternative<OuterRef>(lt)) {
                const std::string& y = std::get<OuterRef>(lt).name;
                auto it = name_map.find(y);
                if (it == name_map.end()) {
                    name_map.emplace(y, at);
                    added_names.push_back(y);
                } else if (!(it->second == at)) {
                    return false;
                }
            } else {
                const std::string& e = std::get<EdgeRef>(lt).id;
                if (!std::holds_alternative<EdgeRef>(at)) return false;
                const std::string& ae = std::get<EdgeRef>(at).id;
                auto it = edge_map.find(e);
                if (it == edge_map.end()) {
                    if (edge_inv.count(ae)) return false;  // edges stay distinct
                    edge_map.emplace(e, ae);
                    edge_inv.emplace(ae, e);
                    added_edges.push_back(e);
                } else if (it->second != ae) {
                    return false;
                }
            }
        }
        return true;
    }

    void unbind(const std::vector<std::string>& added_names,
                const std::vector<std::string>& added_edges) {
        for (const auto& y : added_names) name_map.erase(y);
        for (const auto& e : added_edges) {
            edge_inv.erase(edge_map.at(e));
            edge_map.erase(e);
        }
    }

    bool counts_ok(const std::string& v, const std::string& w) const {
        auto it = idx.node_children.find(Place{NodeRef{w}});
        std::size_t agent_children = it == idx.node_children.end() ? 0 : it->second.size();
        std::size_t l_children = 0;
        if (auto jt = l_node_children.find(v); jt != l_node_children.end())
            l_children = jt->second.size();
        return l_node_sites.count(v) ? agent_children >= l_children : agent_children == l_children;
    }

    void try_node(std::size_t i, const std::string& v, const std::string& w,
                  std::optional<int> new_root) {
        if (used.count(w)) return;
        if (agent.ctrl.at(w) != L.ctrl.at(v)) return;
        if (!counts_ok(v, w)) return;

        Place wp = agent.prnt.at(Child{NodeRef{w}});
        if (new_root && root_place_used.count(wp)) return;  // roots land on distinct places

        std::vector<std::string> an, ae;
        if (!bind_ports(v, w, an, ae)) {
            unbind(an, ae);
            return;
        }
        node_map[v] = w;
        used.insert(w);
        if (new_root) {
            root_place[*new_root] = wp;
            root_place_used.insert(wp);
        }
        go(i + 1);
        if (new_root) {
            root_place_used.erase(wp);
            root_place.erase(*new_root);
        }
        used.erase(w);
        node_map.erase(v);
        unbind(an, ae);
    }

    void go(std::size_t i) {
        if (i == order.size()) {
            finish();
            return;
        }
        const std::string& v = order[i];
        Place lp = L.prnt.at(Child{NodeRef{v}});
        if (std::holds_alternative<NodeRef>(lp)) {
            const std::string& parent_img = node_map.at(std::get<NodeRef>(lp).id);
            auto it = idx.node_children.find(Place{NodeRef{parent_img}});
            if (it == idx.node_children.end()) return;
            for (const auto& w : it->second) try_node(i, v, w, std::nullopt);
        } else {
            int j = std::get<RootRef>(lp).index;
            auto rp = root_place.find(j);
            if (rp != root_place.end()) {
                auto it = idx.node_children.find(rp->second);
                if (it == idx.node_children.end()) return;
                for (const auto& w : it->second) try_node(i, v, w, std::nullopt);
            } else {
                // First node under root j anchors the root's place.
                for (const auto& w : agent.nodes) try_node(i, v, w, j);
            }
        }
    }

    void finish() {
        // Closed links are matched exactly: no context point may share
        // a claimed edge.
        for (const auto& [e, ae] : edge_map)
            if (idx.point_count.at(Target{EdgeRef{ae}}) != l_point_count.at(e)) return;

        // Residual children below each node image; they must be absorbed
        // by that node's sites.
        std::map<std::string, std::vector<std::string>> residual;
        for (const auto& [v, w] : node_map) {
            std::set<std::string> taken;
            if (auto it = l_node_children.find(v); it != l_node_children.end())
                for (const auto& c : it->second) taken.insert(node_map.at(c));
            std::vector<std::string> rest;
            if (auto it = idx.node_children.find(Place{NodeRef{w}}); it != idx.node_children.end())
                for (const auto& c : it->second)
                    if (!taken.count(c)) rest.push_back(c);
            if (!rest.empty() && !l_node_sites.count(v)) return;
            residual[v] = std::move(rest);
        }

        std::vector<std::pair<std::string, std::vector<int>>> slots;
        for (const auto& [v, sites] : l_node_sites) {
            auto s = sites;
            std::sort(s.begin(), s.end());
            slots.emplace_back(v, std::move(s));
        }

        Occurrence base;
        base.node_map = node_map;
        base.edge_map = edge_map;
        base.name_map = name_map;
        base.root_place = root_place;
        for (int s = 0; s < inner_width; ++s) base.site_params[s] = {};

        // Every split of the residual forests over the sites is its own
        // occurrence.
        std::function<void(std::size_t, Occurrence&)> assign = [&](std::size_t k, Occurrence& occ) {
            if (k == slots.size()) {
                found.push_back(occ);
                return;
            }
            const auto& [v, sites] = slots[k];
            const auto& tops = residual.at(v);
            std::function<void(std::size_t)> place_top = [&](std::size_t t) {
                if (t == tops.size()) {
                    assign(k + 1, occ);
                    return;
                }
                for (int s : sites) {
                    occ.site_params[s].push_back(tops[t]);
                    place_top(t + 1);
                    occ.site_params[s].pop_back();
                }
            };
            place_top(0);
        };
        assign(0, base);
    }
};

std::set<std::string> subtree_nodes(const AgentIndex& idx, const std::vector<std::string>& tops) {
    std::set<std::string> out;
    std::vector<std::string> stack(tops.begin(), tops.end());
    while (!stack.empty()) {
        std::string v = stack.back();
        stack.pop_back();
        if (!out.insert(v).second) continue;
        auto it = idx.node_children.find(Place{NodeRef{v}});
        if (it != idx.node_children.end())
            for (const auto& c : it->second) stack.push_back(c);
    }
    return out;
}

}  // namespace

std::vector<Decomposition> find_matches(const Bigraph& agent, const ParametricReactionRule& rule) {
    validate_reaction_rule(rule);
    if (!is_ground(agent)) throw std::invalid_argument("find_matches: agent must be ground");
    auto da = well_formed(agent);
    if (!da.ok()) throw std::invalid_argument("find_matches: agent not well formed");

    MatchSearch search(agent, rule.redex);
    search.go(0);

    std::sort(search.found.begin(), search.found.end(),
              [](const Occurrence& a, const Occurrence& b) {
                  return a.canonical_key() < b.canonical_key();
              });

    AgentIndex idx(agent);
    const Bigraph& L = rule.redex;
    std::vector<Decomposition> out;

    for (const auto& occ : search.found) {
        std::set<std::string> redex_nodes;
        for (const auto& [v, w] : occ.node_map) redex_nodes.insert(w);
        std::vector<std::string> all_tops;
        for (const auto& [s, tops] : occ.site_params)
            all_tops.insert(all_tops.end(), tops.begin(), tops.end());
        std::set<std::string> param_nodes = subtree_nodes(idx, all_tops);

        std::set<std::string> context_nodes;
        for (const auto& v : agent.nodes)
            if (!redex_nodes.count(v) && !param_nodes.count(v)) context_nodes.insert(v);

        // Every glue place must survive into the context; a root landing
        // inside the redex or a parameter is not a decomposition.
        bool ok = true;
        for (const auto& [j, p] : occ.root_place)
            if (std::holds_alternative<NodeRef>(p) && !context_nodes.count(std::get<NodeRef>(p).id))
                ok = false;
        if (!ok) continue;

        std::set<std::string> claimed;
        for (const auto& [e, ae] : occ.edge_map) claimed.insert(ae);
        std::set<std::string> param_edges;
        for (const auto& e : agent.edges) {
            if (claimed.count(e)) continue;
            auto pts = agent.points_of(Target{EdgeRef{e}});
            if (pts.empty()) continue;  // idle edges stay with the context
            bool all_param = true;
            for (const auto& pt : pts)
                if (!param_nodes.count(std::get<Port>(pt).node)) all_param = false;
            if (all_param) param_edges.insert(e);
        }

        // Links from the parameters to anything outside pass through D
        // under carrier names.
        std::set<Target> pass_targets;
        for (const auto& v : param_nodes) {
            for (int i = 1; i <= agent.arity_of(v); ++i) {
                Target t = agent.link.at(Point{Port{v, i}});
                bool internal =
                    std::holds_alternative<EdgeRef>(t) && param_edges.count(std::get<EdgeRef>(t).id);
                if (!internal) pass_targets.insert(t);
            }
        }
        std::map<Target, std::string> carrier;
        int wi = 0;
        for (const auto& t : pass_targets) carrier[t] = "w#" + std::to_string(wi++);

        // The parameter: one root per redex site.
        Bigraph param;
        param.sig = agent.sig;
        param.outer.width = L.inner.width;
        for (const auto& [t, w] : carrier) param.outer.names.insert(w);
        for (const auto& v : param_nodes) {
            param.nodes.insert(v);
            param.ctrl[v] = agent.ctrl.at(v);
        }
        param.edges = param_edges;
        for (const auto& [s, tops] : occ.site_params)
            for (const auto& t : tops) param.prnt[NodeRef{t}] = RootRef{s};
        for (const auto& v : param_nodes)
            if (!param.prnt.count(NodeRef{v})) param.prnt[NodeRef{v}] = agent.prnt.at(Child{NodeRef{v}});
        for (const auto& v : param_nodes) {
            for (int i = 1; i <= agent.arity_of(v); ++i) {
                Target t = agent.link.at(Point{Port{v, i}});
                bool internal =
                    std::holds_alternative<EdgeRef>(t) && param_edges.count(std::get<EdgeRef>(t).id);
                param.link[Port{v, i}] = internal ? t : Target{OuterRef{carrier.at(t)}};
            }
        }

        Interface w_iface;
        for (const auto& [t, w] : carrier) w_iface.names.insert(w);
        Bigraph wiring = identity(agent.sig, w_iface);

        Bigraph redex_image = rename_support(L, occ.node_map, occ.edge_map);

        Bigraph context;
        context.sig = agent.sig;
        context.outer = agent.outer;
        context.inner.width = L.outer.width;
        context.inner.names = L.outer.names;
        for (const auto& [t, w] : carrier) context.inner.names.insert(w);
        context.nodes = context_nodes;
        for (const auto& v : context_nodes) context.ctrl[v] = agent.ctrl.at(v);
        for (const auto& e : agent.edges)
            if (!claimed.count(e) && !param_edges.count(e)) context.edges.insert(e);
        for (const auto& v : context_nodes) context.prnt[NodeRef{v}] = agent.prnt.at(Child{NodeRef{v}});
        for (const auto& [j, p] : occ.root_place) context.prnt[SiteRef{j}] = p;
        for (const auto& v : context_nodes)
            for (int i = 1; i <= agent.arity_of(v); ++i)
                context.link[Port{v, i}] = agent.link.at(Point{Port{v, i}});
        for (const auto& y : L.outer.names) context.link[InnerRef{y}] = occ.name_map.at(y);
        for (const auto& [t, w] : carrier) context.link[InnerRef{w}] = t;

        Decomposition dec{occ, std::move(context), std::move(wiring), std::move(redex_image),
                          std::move(param)};

        // Recomposition is the certificate that this really is a match.
        Bigraph mid = compose(juxtapose(dec.wiring, dec.redex_image), dec.parameter);
        Bigraph rec = compose(dec.context, mid);
        if (!(rec == agent) && !lean_equiv(rec, agent))
            throw std::logic_error("find_matches: recomposition does not restore the agent");
        out.push_back(std::move(dec));
    }
    return out;
}

Bigraph instantiate_eta(const std::map<int, int>& eta, int reactum_width, const Bigraph& parameter,
                        NameSupply& names) {
    if (!is_ground(parameter))
        throw std::invalid_argument("instantiate_eta: parameter must be ground");
    AgentIndex idx(parameter);

    std::map<int, std::vector<int>> preimage;  // redex site -> reactum sites
    for (const auto& [y, i] : eta) {
        if (y < 0 || y >= reactum_width)
            throw std::invalid_argument("instantiate_eta: eta domain exceeds the reactum width");
        if (i < 0 || i >= parameter.outer.width)
            throw std::invalid_argument("instantiate_eta: eta range exceeds the parameter width");
        preimage[i].push_back(y);
    }

    Bigraph out;
    out.sig = parameter.sig;
    out.outer.width = reactum_width;
    out.outer.names = parameter.outer.names;  // copies share outer names
    out.edges = parameter.edges;              // and edges; orphaned ones stay idle

    for (int i = 0; i < parameter.outer.width; ++i) {
        auto it = preimage.find(i);
        if (it == preimage.end()) continue;  // cardinality 0: deleted
        std::vector<std::string> tops;
        for (const auto& [c, p] : parameter.prnt)
            if (p == Place{RootRef{i}}) tops.push_back(std::get<NodeRef>(c).id);
        std::set<std::string> nodes = subtree_nodes(idx, tops);
        std::sort(it->second.begin(), it->second.end());

        bool move_only = it->second.size() == 1;
        for (int y : it->second) {
            std::map<std::string, std::string> ren;
            if (!move_only)
                for (const auto& v : nodes) ren[v] = names.fresh(Ns::node).id;
            auto nm = [&](const std::string& v) {
                auto r = ren.find(v);
                return r == ren.end() ? v : r->second;
            };
            for (const auto& v : nodes) {
                out.nodes.insert(nm(v));
                out.ctrl[nm(v)] = parameter.ctrl.at(v);
                Place p = parameter.prnt.at(Child{NodeRef{v}});
                if (p == Place{RootRef{i}})
                    out.prnt[NodeRef{nm(v)}] = RootRef{y};
                else
                    out.prnt[NodeRef{nm(v)}] = NodeRef{nm(std::get<NodeRef>(p).id)};
                for (int k = 1; k <= parameter.arity_of(v); ++k)
                    out.link[Port{nm(v), k}] = parameter.link.at(Point{Port{v, k}});
            }
        }
    }
    return out;
}

Bigraph apply_reaction(const Bigraph& agent, const ParametricReactionRule& rule,
                       const Decomposition& dec, NameSupply& names) {
    std::map<std::string, std::string> nren, eren;
    for (const auto& v : rule.reactum.nodes) nren[v] = names.fresh(Ns::node).id;
    for (const auto& e : rule.reactum.edges) eren[e] = names.fresh(Ns::edge).id;
    Bigraph reactum_image = rename_support(rule.reactum, nren, eren);

    Bigraph inst = instantiate_eta(rule.eta, rule.reactum.inner.width, dec.parameter, names);
    Bigraph result = compose(dec.context, compose(juxtapose(dec.wiring, reactum_image), inst));

    auto d = well_formed(result);
    if (!d.ok()) throw std::logic_error("apply_reaction: result not well formed:\n" + d.to_string());
    if (!is_ground(result)) throw std::logic_error("apply_reaction: result not ground");
    (void)agent;
    return result;
}

namespace {

std::string state_fingerprint(const Bigraph& b) {
    std::multiset<std::string> ctrls;
    for (const auto& [v, k] : b.ctrl) ctrls.insert(k);
    std::ostringstream os;
    os << b.outer.width << '/' << b.nodes.size() << '/' << b.edges.size() << '/';
    for (const auto& k : ctrls) os << k << ',';
    os << '/';
    for (const auto& y : b.outer.names) os << y << ',';
    return os.str();
}

}  // namespace

BrsTrace run_brs(const Bigraph& agent, const std::vector<ParametricReactionRule>& rules,
                 const BrsOptions& opts) {
    BrsTrace trace;
    trace.states.push_back(agent);

    NameSupply names;
    auto matches_of = [&](const Bigraph& state) {
        std::vector<std::pair<std::size_t, Decomposition>> out;
        for (std::size_t ri = 0; ri < rules.size(); ++ri)
            for (auto& d : find_matches(state, rules[ri])) out.emplace_back(ri, std::move(d));
        return out;
    };

    if (opts.strategy == BrsStrategy::all) {
        std::vector<std::string> fingerprints{state_fingerprint(agent)};
        std::vector<std::size_t> frontier{0};
        for (std::uint64_t depth = 0; depth < opts.max_steps && !frontier.empty(); ++depth) {
            std::vector<std::size_t> next;
            for (std::size_t si : frontier) {
                auto ms = matches_of(trace.states[si]);
                if (ms.empty()) {
                    trace.terminal.push_back(si);
                    continue;
                }
                for (auto& [ri, dec] : ms) {
                    Bigraph succ = apply_reaction(trace.states[si], rules[ri], dec, names);
                    std::string fp = state_fingerprint(succ);
                    std::optional<std::size_t> existing;
                    for (std::size_t k = 0; k < trace.states.size(); ++k)
                        if (fingerprints[k] == fp && lean_equiv(trace.states[k], succ)) {
                            existing = k;
                            break;
                        }
                    std::size_t to;
                    if (existing) {
                        to = *existing;
                    } else {
                        if (trace.states.size() >= opts.max_states) {
                            trace.state_bound_hit = true;
                            continue;
                        }
                        trace.states.push_back(std::move(succ));
                        fingerprints.push_back(fp);
                        to = trace.states.size() - 1;
                        next.push_back(to);
                    }
                    trace.steps.push_back(BrsStep{si, to, rules[ri].label});
                }
            }
            frontier = std::move(next);
            if (depth + 1 == opts.max_steps && !frontier.empty()) trace.step_bound_hit = true;
        }
        return trace;
    }

    std::mt19937_64 rng(opts.seed);
    std::size_t current = 0;
    for (std::uint64_t step = 0;; ++step) {
        auto ms = matches_of(trace.states[current]);
        if (ms.empty()) {
            trace.terminal.push_back(current);
            break;
        }
        if (step == opts.max_steps) {
            trace.step_bound_hit = true;
            break;
        }
        std::size_t pick = 0;
        if (opts.strategy == BrsStrategy::random) {
            pick = std::uniform_int_distribution<std::size_t>(0, ms.size() - 1)(rng);
        } else if (opts.strategy == BrsStrategy::callback) {
            std::vector<std::pair<std::string, const Decomposition*>> view;
            view.reserve(ms.size());
            for (const auto& [ri, d] : ms) view.emplace_back(rules[ri].label, &d);
            auto c = opts.choose(trace.states[current], view);
            if (!c) break;
            if (*c >= ms.size()) throw std::out_of_range("interactive choice");
            pick = *c;
        }
        auto& [ri, dec] = ms[pick];
        Bigraph succ = apply_reaction(trace.states[current], rules[ri], dec, names);
        trace.states.push_back(std::move(succ));
        trace.steps.push_back(BrsStep{current, trace.states.size() - 1, rules[ri].label});
        current = trace.states.size() - 1;
    }
    return trace;
}

}  // namespace bigrel
