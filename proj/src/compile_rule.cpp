#include "bigrel/compile_rule.hpp"

#include <algorithm>

namespace bigrel {
namespace rel {

namespace {

Term v(const std::string& name) { return Term::var(name); }

Term succ_tower(int k, Term base) {
    for (int i = 0; i < k; ++i) base = Term::succ(std::move(base));
    return base;
}

// Structure of one side of the rule, indexed for atom generation.
struct SideInfo {
    std::map<std::string, int> node_children;  // node -> # node children
    std::map<int, int> root_children;          // root -> # node children
    std::map<std::string, std::vector<int>> node_sites;
    std::map<std::string, int> name_points;  // outer name -> # ports
    std::map<std::string, int> edge_points;  // edge -> # ports

    explicit SideInfo(const Bigraph& b) {
        for (int j = 0; j < b.outer.width; ++j) root_children[j] = 0;
        for (const auto& y : b.outer.names) name_points[y] = 0;
        for (const auto& e : b.edges) edge_points[e] = 0;
        for (const auto& [c, p] : b.prnt) {
            if (std::holds_alternative<NodeRef>(c)) {
                if (std::holds_alternative<RootRef>(p))
                    root_children[std::get<RootRef>(p).index] += 1;
                else
                    node_children[std::get<NodeRef>(p).id] += 1;
            } else if (std::holds_alternative<NodeRef>(p)) {
                node_sites[std::get<NodeRef>(p).id].push_back(std::get<SiteRef>(c).index);
            }
        }
        for (const auto& [pt, t] : b.link) {
            if (std::holds_alternative<OuterRef>(t))
                name_points[std::get<OuterRef>(t).name] += 1;
            else
                edge_points[std::get<EdgeRef>(t).id] += 1;
        }
    }
};

// All partitions of the name list into aliasing classes.
void partitions_of(const std::vector<std::string>& names, std::size_t i,
                   std::vector<std::vector<std::string>>& current,
                   std::vector<std::vector<std::vector<std::string>>>& out) {
    if (i == names.size()) {
        out.push_back(current);
        return;
    }
    for (std::size_t k = 0; k < current.size(); ++k) {
        current[k].push_back(names[i]);
        partitions_of(names, i + 1, current, out);
        current[k].pop_back();
    }
    current.push_back({names[i]});
    partitions_of(names, i + 1, current, out);
    current.pop_back();
}

struct Generator {
    const ParametricReactionRule& rule;
    const Signature& sig;
    SideInfo L;
    SideInfo R;
    std::string pfx;

    Generator(const ParametricReactionRule& r, const Signature& s)
        : rule(r), sig(s), L(r.redex), R(r.reactum), pfx(r.label + ":") {}

    Term bi() const { return v("Bi"); }

    Atom at(const std::string& pred, std::vector<Term> args) const {
        args.push_back(bi());
        return Atom{pred, std::move(args)};
    }

    static std::string xvar(const std::string& lnode) { return "X_" + lnode; }
    static std::string wvar(const std::string& rnode) { return "W_" + rnode; }
    static std::string evar(const std::string& ledge) { return "E_" + ledge; }
    static std::string fvar(const std::string& redge) { return "F_" + redge; }
    static std::string dvar(int root) { return "D_" + std::to_string(root); }
    static std::string mvar(int root) { return "M_" + std::to_string(root); }
    static std::string cvar(const std::string& lnode) { return "C_" + lnode; }

    Term l_parent(const std::string& nodeid) const {
        Place p = rule.redex.prnt.at(Child{NodeRef{nodeid}});
        if (std::holds_alternative<RootRef>(p)) return v(dvar(std::get<RootRef>(p).index));
        return dst_n(v(xvar(std::get<NodeRef>(p).id)));
    }

    Term r_parent(const std::string& nodeid) const {
        Place p = rule.reactum.prnt.at(Child{NodeRef{nodeid}});
        if (std::holds_alternative<RootRef>(p)) return v(dvar(std::get<RootRef>(p).index));
        return dst_n(v(wvar(std::get<NodeRef>(p).id)));
    }

    // Place term receiving reactum site y.
    Term destination(int y) const {
        Place p = rule.reactum.prnt.at(Child{SiteRef{y}});
        if (std::holds_alternative<RootRef>(p)) return v(dvar(std::get<RootRef>(p).index));
        return dst_n(v(wvar(std::get<NodeRef>(p).id)));
    }

    RewriteRule make_trigger(const std::vector<std::vector<std::string>>& alias,
                             const std::string& suffix) const {
        RewriteRule t;
        t.label = rule.label + "/trigger" + suffix;

        std::map<std::string, std::size_t> cls_of;
        for (std::size_t q = 0; q < alias.size(); ++q)
            for (const auto& y : alias[q]) cls_of[y] = q;
        auto lvar = [](std::size_t q) { return "L_" + std::to_string(q); };
        auto nqvar = [](std::size_t q) { return "NQ_" + std::to_string(q); };

        auto link_target = [&](const Bigraph& side, const std::string& node, int i,
                               bool redex) -> Term {
            Target tg = side.link.at(Point{Port{node, i}});
            if (std::holds_alternative<OuterRef>(tg))
                return v(lvar(cls_of.at(std::get<OuterRef>(tg).name)));
            const std::string& e = std::get<EdgeRef>(tg).id;
            return dst_e(v(redex ? evar(e) : fvar(e)));
        };

        // Left-hand side: the redex occurrence. Nodes are emitted parents
        // first and counters after the structure, so matching narrows
        // each variable as soon as possible.
        std::vector<std::string> bfs;
        {
            std::map<std::string, std::vector<std::string>> kids;
            for (const auto& [c, p] : rule.redex.prnt)
                if (std::holds_alternative<NodeRef>(c) && std::holds_alternative<NodeRef>(p))
                    kids[std::get<NodeRef>(p).id].push_back(std::get<NodeRef>(c).id);
            for (const auto& [j, cs] : L.root_children) {
                for (const auto& [c, p] : rule.redex.prnt)
                    if (std::holds_alternative<NodeRef>(c) && p == Place{RootRef{j}})
                        bfs.push_back(std::get<NodeRef>(c).id);
            }
            for (std::size_t i = 0; i < bfs.size(); ++i)
                for (const auto& c : kids[bfs[i]]) bfs.push_back(c);
        }
        for (const auto& nd : bfs) {
            Term x = v(xvar(nd));
            t.lhs.push_back(at(p_lc, {x, ctrl_term(rule.redex.ctrl.at(nd))}));
            t.lhs.push_back(at(p_is_node, {x}));
            t.lhs.push_back(at(p_prnt, {src_n(x), l_parent(nd)}));
            int nc = L.node_children.count(nd) ? L.node_children.at(nd) : 0;
            Term cnt = L.node_sites.count(nd) ? succ_tower(nc, v(cvar(nd)))
                                              : Term::nat(static_cast<std::uint64_t>(nc));
            t.lhs.push_back(at(p_has_child_p, {dst_n(x), cnt}));
            for (int i = 1; i <= rule.redex.arity_of(nd); ++i) {
                Term port = Term::app("port", {x, Term::nat(static_cast<std::uint64_t>(i))});
                t.lhs.push_back(at(p_is_port, {port}));
                t.lhs.push_back(at(p_lp, {port, x}));
                t.lhs.push_back(at(p_link, {src_p(port), link_target(rule.redex, nd, i, true)}));
            }
        }
        for (const auto& [j, nc] : L.root_children)
            t.lhs.push_back(at(p_has_child_p, {v(dvar(j)), succ_tower(nc, v(mvar(j)))}));
        for (const auto& [e, pc] : L.edge_points) {
            t.lhs.push_back(at(p_is_e_name, {v(evar(e))}));
            t.lhs.push_back(
                at(p_has_child_l, {dst_e(v(evar(e))), Term::nat(static_cast<std::uint64_t>(pc))}));
        }
        for (std::size_t q = 0; q < alias.size(); ++q) {
            int consumed = 0;
            for (const auto& y : alias[q]) consumed += L.name_points.at(y);
            t.lhs.push_back(at(p_has_child_l, {v(lvar(q)), succ_tower(consumed, v(nqvar(q)))}));
        }

        // Right-hand side: the reactum, counters adjusted, tokens armed.
        for (const auto& [j, nc] : R.root_children)
            t.rhs.push_back(at(p_has_child_p, {v(dvar(j)), succ_tower(nc, v(mvar(j)))}));
        for (std::size_t q = 0; q < alias.size(); ++q) {
            int produced = 0;
            for (const auto& y : alias[q])
                produced += R.name_points.count(y) ? R.name_points.at(y) : 0;
            t.rhs.push_back(at(p_has_child_l, {v(lvar(q)), succ_tower(produced, v(nqvar(q)))}));
        }
        for (const auto& nd : rule.reactum.nodes) {
            Term w = v(wvar(nd));
            t.fresh.emplace_back(wvar(nd), Ns::node);
            t.rhs.push_back(at(p_is_node, {w}));
            t.rhs.push_back(at(p_lc, {w, ctrl_term(rule.reactum.ctrl.at(nd))}));
            t.rhs.push_back(at(p_prnt, {src_n(w), r_parent(nd)}));
            int nc = R.node_children.count(nd) ? R.node_children.at(nd) : 0;
            t.rhs.push_back(
                at(p_has_child_p, {dst_n(w), Term::nat(static_cast<std::uint64_t>(nc))}));
            for (int i = 1; i <= rule.reactum.arity_of(nd); ++i) {
                Term port = Term::app("port", {w, Term::nat(static_cast<std::uint64_t>(i))});
                t.rhs.push_back(at(p_is_port, {port}));
                t.rhs.push_back(at(p_lp, {port, w}));
                t.rhs.push_back(at(p_link, {src_p(port), link_target(rule.reactum, nd, i, false)}));
            }
        }
        for (const auto& [e, pc] : R.edge_points) {
            t.fresh.emplace_back(fvar(e), Ns::edge);
            t.rhs.push_back(at(p_is_e_name, {v(fvar(e))}));
            t.rhs.push_back(
                at(p_has_child_l, {dst_e(v(fvar(e))), Term::nat(static_cast<std::uint64_t>(pc))}));
        }

        // One task token per redex site.
        std::map<int, std::vector<int>> preimage;
        for (const auto& [y, i] : rule.eta) preimage[i].push_back(y);
        for (int i = 0; i < rule.redex.inner.width; ++i) {
            std::string parent;  // the unique node holding site i
            for (const auto& [nd, sites] : L.node_sites)
                for (int s : sites)
                    if (s == i) parent = nd;
            Term source = dst_n(v(xvar(parent)));
            Term count = v(cvar(parent));
            auto it = preimage.find(i);
            if (it == preimage.end()) {
                t.rhs.push_back(at(pfx + "del", {source, count}));
            } else if (it->second.size() == 1) {
                t.rhs.push_back(at(pfx + "move", {source, destination(it->second[0]), count}));
            } else {
                // Destinations grouped; multiplicities live in the
                // generated copy_node rule, not in the token.
                std::map<std::string, Term> groups;
                for (int y : it->second) {
                    Term d = destination(y);
                    groups.emplace(d.to_string(), d);
                }
                std::vector<Term> args{source};
                for (const auto& [key, d] : groups) args.push_back(d);
                args.push_back(count);
                t.rhs.push_back(at(pfx + "copy/t" + std::to_string(i), args));
            }
        }

        validate_rule(t);
        return t;
    }

    // --- stage rules ---------------------------------------------------

    std::function<bool(Subst&)> arity_guard() const {
        Signature s = sig;
        return [s](Subst& sub) {
            const Term* k = sub.lookup("K");
            if (!k || !k->is_sym() || !s.has(k->symbol().id)) return false;
            return sub.bind("A", Term::nat(static_cast<std::uint64_t>(s.arity(k->symbol().id))));
        };
    }

    void delete_rules(std::vector<RewriteRule>& out) const {
        RewriteRule step;
        step.label = pfx + "del/step";
        step.lhs = {at(pfx + "del", {v("S"), Term::succ(v("N"))}),
                    at(p_prnt, {src_n(v("X")), v("S")})};
        step.rhs = {at(pfx + "del", {v("S"), v("N")}), at(pfx + "del_node", {v("X")})};
        out.push_back(std::move(step));

        RewriteRule done;
        done.label = pfx + "del/done";
        done.lhs = {at(pfx + "del", {v("S"), Term::nat(0)})};
        out.push_back(std::move(done));

        RewriteRule node;
        node.label = pfx + "del_node";
        node.lhs = {at(pfx + "del_node", {v("X")}), at(p_is_node, {v("X")}),
                    at(p_lc, {v("X"), v("K")}), at(p_has_child_p, {dst_n(v("X")), v("C")})};
        node.rhs = {at(pfx + "del", {dst_n(v("X")), v("C")}),
                    at(pfx + "del_ports", {v("X"), v("A")})};
        node.guard = arity_guard();
        node.guard_binds = {"A"};
        out.push_back(std::move(node));

        RewriteRule pstep;
        pstep.label = pfx + "del_ports/step";
        Term port = Term::app("port", {v("X"), Term::succ(v("I"))});
        pstep.lhs = {at(pfx + "del_ports", {v("X"), Term::succ(v("I"))}), at(p_is_port, {port}),
                     at(p_lp, {port, v("X")}), at(p_link, {src_p(port), v("T")}),
                     at(p_has_child_l, {v("T"), Term::succ(v("N"))})};
        pstep.rhs = {at(pfx + "del_ports", {v("X"), v("I")}), at(p_has_child_l, {v("T"), v("N")})};
        out.push_back(std::move(pstep));

        RewriteRule pdone;
        pdone.label = pfx + "del_ports/done";
        pdone.lhs = {at(pfx + "del_ports", {v("X"), Term::nat(0)})};
        out.push_back(std::move(pdone));
    }

    void move_rules(std::vector<RewriteRule>& out) const {
        RewriteRule step;
        step.label = pfx + "move/step";
        step.lhs = {at(pfx + "move", {v("S"), v("D"), Term::succ(v("N"))}),
                    at(p_prnt, {src_n(v("X")), v("S")}), at(p_has_child_p, {v("D"), v("M")})};
        step.rhs = {at(pfx + "move", {v("S"), v("D"), v("N")}),
                    at(p_prnt, {src_n(v("X")), v("D")}),
                    at(p_has_child_p, {v("D"), Term::succ(v("M"))})};
        out.push_back(std::move(step));

        RewriteRule done;
        done.label = pfx + "move/done";
        done.lhs = {at(pfx + "move", {v("S"), v("D"), Term::nat(0)})};
        out.push_back(std::move(done));
    }

    // Copy stage for one destination-group shape. The original tree is
    // consumed while the copies grow, so no restore pass is needed and
    // shared counters are adjusted exactly once per port.
    void copy_rules(const std::string& shape, const std::vector<int>& mults, bool top_sweep,
                    std::vector<RewriteRule>& out) const {
        int g = static_cast<int>(mults.size());
        int c = 0;
        for (int m : mults) c += m;
        std::string unif = "u" + std::to_string(c);

        std::vector<Term> ds;
        for (int k = 0; k < g; ++k) ds.push_back(v("D" + std::to_string(k)));
        std::vector<Term> xs;
        for (int k = 0; k < c; ++k) xs.push_back(v("Y" + std::to_string(k)));

        if (top_sweep) {
            RewriteRule sweep;
            sweep.label = pfx + "copy/" + shape + "/step";
            std::vector<Term> tok{v("S")};
            tok.insert(tok.end(), ds.begin(), ds.end());
            std::vector<Term> tok_sn = tok, tok_n = tok, tok_z = tok;
            tok_sn.push_back(Term::succ(v("N")));
            tok_n.push_back(v("N"));
            tok_z.push_back(Term::nat(0));
            sweep.lhs = {at(pfx + "copy/" + shape, tok_sn), at(p_prnt, {src_n(v("X")), v("S")})};
            std::vector<Term> spawn{v("X")};
            spawn.insert(spawn.end(), ds.begin(), ds.end());
            sweep.rhs = {at(pfx + "copy/" + shape, tok_n), at(pfx + "copy_node/" + shape, spawn)};
            out.push_back(std::move(sweep));

            RewriteRule done;
            done.label = pfx + "copy/" + shape + "/done";
            done.lhs = {at(pfx + "copy/" + shape, tok_z)};
            out.push_back(std::move(done));
        }

        // copy_node: consume the original node, mint the copies, bump
        // the destination counters, recurse on children and ports.
        RewriteRule node;
        node.label = pfx + "copy_node/" + shape;
        std::vector<Term> tok{v("X")};
        tok.insert(tok.end(), ds.begin(), ds.end());
        node.lhs = {at(pfx + "copy_node/" + shape, tok), at(p_is_node, {v("X")}),
                    at(p_lc, {v("X"), v("K")}), at(p_has_child_p, {dst_n(v("X")), v("C")})};
        for (int k = 0; k < g; ++k)
            node.lhs.push_back(at(p_has_child_p, {ds[k], v("M" + std::to_string(k))}));
        node.guard = arity_guard();
        node.guard_binds = {"A"};
        for (int k = 0; k < c; ++k) node.fresh.emplace_back("Y" + std::to_string(k), Ns::node);
        for (int k = 0; k < g; ++k)
            node.rhs.push_back(
                at(p_has_child_p, {ds[k], succ_tower(mults[k], v("M" + std::to_string(k)))}));
        int copy_ix = 0;
        for (int k = 0; k < g; ++k) {
            for (int m = 0; m < mults[k]; ++m, ++copy_ix) {
                const Term& y = xs[static_cast<std::size_t>(copy_ix)];
                node.rhs.push_back(at(p_is_node, {y}));
                node.rhs.push_back(at(p_lc, {y, v("K")}));
                node.rhs.push_back(at(p_prnt, {src_n(y), ds[k]}));
                node.rhs.push_back(at(p_has_child_p, {dst_n(y), Term::nat(0)}));
            }
        }
        std::vector<Term> kid_tok{v("X")};
        kid_tok.insert(kid_tok.end(), xs.begin(), xs.end());
        std::vector<Term> kid_tok_c = kid_tok, port_tok = kid_tok;
        kid_tok_c.push_back(v("C"));
        port_tok.push_back(v("A"));
        node.rhs.push_back(at(pfx + "copy_kids/" + unif, kid_tok_c));
        node.rhs.push_back(at(pfx + "copy_ports/" + unif, port_tok));
        out.push_back(std::move(node));
    }

    // Child sweep and port loop, shared by every shape with c copies.
    void copy_uniform_rules(int c, std::vector<RewriteRule>& out) const {
        std::string unif = "u" + std::to_string(c);
        std::vector<Term> xs;
        for (int k = 0; k < c; ++k) xs.push_back(v("Y" + std::to_string(k)));

        std::vector<Term> tok{v("X")};
        tok.insert(tok.end(), xs.begin(), xs.end());

        RewriteRule kstep;
        kstep.label = pfx + "copy_kids/" + unif + "/step";
        std::vector<Term> tok_sn = tok, tok_n = tok, tok_z = tok;
        tok_sn.push_back(Term::succ(v("N")));
        tok_n.push_back(v("N"));
        tok_z.push_back(Term::nat(0));
        kstep.lhs = {at(pfx + "copy_kids/" + unif, tok_sn),
                     at(p_prnt, {src_n(v("Ch")), dst_n(v("X"))})};
        std::vector<Term> spawn{v("Ch")};
        for (int k = 0; k < c; ++k) spawn.push_back(dst_n(xs[static_cast<std::size_t>(k)]));
        kstep.rhs = {at(pfx + "copy_kids/" + unif, tok_n), at(pfx + "copy_node/" + unif, spawn)};
        out.push_back(std::move(kstep));

        RewriteRule kdone;
        kdone.label = pfx + "copy_kids/" + unif + "/done";
        kdone.lhs = {at(pfx + "copy_kids/" + unif, tok_z)};
        out.push_back(std::move(kdone));

        RewriteRule pstep;
        pstep.label = pfx + "copy_ports/" + unif + "/step";
        Term port = Term::app("port", {v("X"), Term::succ(v("I"))});
        std::vector<Term> ptok_si = tok, ptok_i = tok, ptok_z = tok;
        ptok_si.push_back(Term::succ(v("I")));
        ptok_i.push_back(v("I"));
        ptok_z.push_back(Term::nat(0));
        pstep.lhs = {at(pfx + "copy_ports/" + unif, ptok_si), at(p_is_port, {port}),
                     at(p_lp, {port, v("X")}), at(p_link, {src_p(port), v("T")}),
                     at(p_has_child_l, {v("T"), Term::succ(v("N"))})};
        pstep.rhs = {at(pfx + "copy_ports/" + unif, ptok_i),
                     at(p_has_child_l, {v("T"), succ_tower(c, v("N"))})};
        for (int k = 0; k < c; ++k) {
            Term cport = Term::app("port", {xs[static_cast<std::size_t>(k)], Term::succ(v("I"))});
            pstep.rhs.push_back(at(p_is_port, {cport}));
            pstep.rhs.push_back(at(p_lp, {cport, xs[static_cast<std::size_t>(k)]}));
            pstep.rhs.push_back(at(p_link, {src_p(cport), v("T")}));
        }
        out.push_back(std::move(pstep));

        RewriteRule pdone;
        pdone.label = pfx + "copy_ports/" + unif + "/done";
        pdone.lhs = {at(pfx + "copy_ports/" + unif, ptok_z)};
        out.push_back(std::move(pdone));
    }
};

}  // namespace

CompiledProgram compile_reaction(const ParametricReactionRule& rule, const Signature& sig) {
    validate_reaction_rule(rule);

    // The token scheme addresses parameters through their consumed
    // source node; two sites on one node cannot be told apart there.
    {
        std::map<std::string, int> sites_per_node;
        for (int s = 0; s < rule.redex.inner.width; ++s) {
            Place p = rule.redex.prnt.at(Child{SiteRef{s}});
            if (++sites_per_node[std::get<NodeRef>(p).id] > 1)
                throw std::invalid_argument(
                    "rule " + rule.label + ": compiled path needs at most one site per redex node");
        }
    }

    Generator gen(rule, sig);
    CompiledProgram prog;
    prog.label = rule.label;

    std::vector<std::string> names(rule.redex.outer.names.begin(), rule.redex.outer.names.end());
    std::vector<std::vector<std::vector<std::string>>> alias_patterns;
    std::vector<std::vector<std::string>> current;
    partitions_of(names, 0, current, alias_patterns);
    for (std::size_t i = 0; i < alias_patterns.size(); ++i)
        prog.triggers.push_back(gen.make_trigger(
            alias_patterns[i], alias_patterns.size() == 1 ? "" : "/a" + std::to_string(i)));

    // Emit only the stage groups the rule actually uses.
    std::map<int, std::vector<int>> preimage;
    for (const auto& [y, i] : rule.eta) preimage[i].push_back(y);
    bool need_del = false, need_move = false;
    std::map<int, std::vector<int>> copy_shapes;  // redex site -> group multiplicities
    std::set<int> copy_cs;
    for (int i = 0; i < rule.redex.inner.width; ++i) {
        auto it = preimage.find(i);
        if (it == preimage.end()) {
            need_del = true;
        } else if (it->second.size() == 1) {
            need_move = true;
        } else {
            std::map<std::string, int> groups;
            for (int y : it->second) groups[gen.destination(y).to_string()] += 1;
            std::vector<int> mults;
            for (const auto& [d, m] : groups) mults.push_back(m);
            copy_shapes[i] = mults;
            copy_cs.insert(static_cast<int>(it->second.size()));
        }
    }
    if (need_del) gen.delete_rules(prog.stages);
    if (need_move) gen.move_rules(prog.stages);
    for (const auto& [site, mults] : copy_shapes)
        gen.copy_rules("t" + std::to_string(site), mults, true, prog.stages);
    for (int c : copy_cs) {
        std::vector<int> unit(static_cast<std::size_t>(c), 1);
        gen.copy_rules("u" + std::to_string(c), unit, false, prog.stages);
        gen.copy_uniform_rules(c, prog.stages);
    }

    for (const auto& r : prog.stages) validate_rule(r);
    return prog;
}

std::vector<Multiset> kernel_successors(const Multiset& state, const CompiledProgram& program,
                                        Engine& engine) {
    std::vector<Multiset> out;
    std::string token_prefix = program.label + ":";
    auto jammed = [&](const Multiset& s) {
        for (const auto& [a, n] : s.counts())
            if (a.pred.rfind(token_prefix, 0) == 0) return true;
        return false;
    };

    for (const auto& trigger : program.triggers) {
        for (const auto& m : engine.match_rule(trigger, state)) {
            Multiset fired = engine.apply(trigger, state, m);
            std::uint64_t fuel = 1000 + 50 * static_cast<std::uint64_t>(state.size());
            auto res = engine.run(program.stages, std::move(fired), Strategy::first(), fuel);
            if (res.trace.fuel_exhausted || jammed(res.state)) continue;
            out.push_back(std::move(res.state));
        }
    }
    return out;
}

}  // namespace rel
}  // namespace bigrel
