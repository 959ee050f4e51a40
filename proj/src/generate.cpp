#include "bigrel/generate.hpp"

#include <algorithm>
#include <cassert>

namespace bigrel {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Signature random_signature(std::mt19937_64& rng, const GenParams& p) {
    Signature sig;
    int n = std::max(1, pick(rng, 1, p.max_controls));
    for (int i = 0; i < n; ++i) sig.declare("k" + std::to_string(i), pick(rng, 0, p.max_arity));
    return sig;
}

std::vector<std::string> controls_of(const Signature& sig) {
    std::vector<std::string> out;
    for (const auto& [k, a] : sig.arities()) out.push_back(k);
    return out;
}

// Links every port (and inner name) to a random target, creating an edge
// when there is nothing to link to.
void wire_links(std::mt19937_64& rng, Bigraph& b, const std::string& prefix) {
    std::vector<Target> targets;
    for (const auto& y : b.outer.names) targets.push_back(OuterRef{y});
    for (const auto& e : b.edges) targets.push_back(EdgeRef{e});

    std::vector<Point> points;
    for (const auto& pt : b.ports()) points.push_back(pt);
    for (const auto& x : b.inner.names) points.push_back(InnerRef{x});

    if (!points.empty() && targets.empty()) {
        std::string e = prefix + "e_auto";
        b.edges.insert(e);
        targets.push_back(EdgeRef{e});
    }
    for (const auto& pt : points)
        b.link[pt] = targets[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(targets.size()) - 1))];
}

Bigraph random_structure(std::mt19937_64& rng, const GenParams& p,
                         const std::optional<Interface>& forced_outer, bool plug_shaped) {
    Bigraph b;
    b.sig = p.sig ? *p.sig : random_signature(rng, p);
    auto ctrls = controls_of(b.sig);

    if (forced_outer) {
        b.outer = *forced_outer;
    } else {
        b.outer.width = pick(rng, 1, std::max(1, p.max_roots));
        int ny = pick(rng, 0, p.max_outer);
        for (int i = 0; i < ny; ++i) b.outer.names.insert(p.prefix + "y" + std::to_string(i));
    }

    std::vector<Place> places;
    for (int r = 0; r < b.outer.width; ++r) places.push_back(RootRef{r});

    int nn = pick(rng, 0, p.max_nodes);
    if (b.outer.width == 0) nn = 0;  // no place to put them
    if (plug_shaped && b.outer.width > 0) nn = std::max(nn, b.outer.width);
    std::vector<std::string> made;
    for (int i = 0; i < nn; ++i) {
        std::string v = p.prefix + "v" + std::to_string(i);
        b.nodes.insert(v);
        b.ctrl[v] = ctrls[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(ctrls.size()) - 1))];
        Place parent;
        if (plug_shaped) {
            // First one node per root, then only nodes as parents.
            if (i < b.outer.width)
                parent = RootRef{i};
            else
                parent = NodeRef{made[static_cast<std::size_t>(
                    pick(rng, 0, static_cast<int>(made.size()) - 1))]};
        } else {
            parent = places[static_cast<std::size_t>(
                pick(rng, 0, static_cast<int>(places.size()) - 1))];
        }
        b.prnt[NodeRef{v}] = parent;
        places.push_back(NodeRef{v});
        made.push_back(v);
    }

    if (!p.ground) {
        int ns = pick(rng, 0, p.max_sites);
        if (places.empty() || (plug_shaped && made.empty())) ns = 0;
        for (int s = 0; s < ns; ++s) {
            // Plug-shaped bigraphs keep their roots unary: sites go under
            // nodes only.
            int lo = plug_shaped ? b.outer.width : 0;
            b.prnt[SiteRef{s}] = places[static_cast<std::size_t>(
                pick(rng, lo, static_cast<int>(places.size()) - 1))];
        }
        b.inner.width = ns;
        int nx = pick(rng, 0, p.max_inner);
        for (int i = 0; i < nx; ++i) b.inner.names.insert(p.prefix + "x" + std::to_string(i));
    }

    int ne = pick(rng, 0, p.max_edges);
    for (int i = 0; i < ne; ++i) b.edges.insert(p.prefix + "e" + std::to_string(i));

    if (plug_shaped) {
        // Every outer name gets exactly one point; remaining points go to
        // edges.
        std::vector<Point> points;
        for (const auto& pt : b.ports()) points.push_back(pt);
        std::shuffle(points.begin(), points.end(), rng);
        std::vector<std::string> names(b.outer.names.begin(), b.outer.names.end());
        std::size_t i = 0;
        for (; i < names.size(); ++i) {
            if (i < points.size()) {
                b.link[points[i]] = OuterRef{names[i]};
            } else {
                std::string x = p.prefix + "xc" + std::to_string(i);
                b.inner.names.insert(x);
                b.link[InnerRef{x}] = OuterRef{names[i]};
            }
        }
        std::vector<Target> rest;
        for (const auto& e : b.edges) rest.push_back(EdgeRef{e});
        if (i < points.size() && rest.empty()) {
            std::string e = p.prefix + "e_auto";
            b.edges.insert(e);
            rest.push_back(EdgeRef{e});
        }
        for (; i < points.size(); ++i)
            b.link[points[i]] =
                rest[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(rest.size()) - 1))];
        for (const auto& x : b.inner.names)
            if (!b.link.count(InnerRef{x})) {
                if (rest.empty()) {
                    std::string e = p.prefix + "e_auto";
                    b.edges.insert(e);
                    rest.push_back(EdgeRef{e});
                }
                b.link[InnerRef{x}] = rest[static_cast<std::size_t>(
                    pick(rng, 0, static_cast<int>(rest.size()) - 1))];
            }
    } else {
        wire_links(rng, b, p.prefix);
    }

    assert(well_formed(b).ok());
    return b;
}

}  // namespace

Bigraph random_bigraph(std::mt19937_64& rng, const GenParams& params) {
    return random_structure(rng, params, std::nullopt, false);
}

std::pair<Bigraph, Bigraph> random_composable_pair(std::mt19937_64& rng, bool plug_shaped) {
    if (!plug_shaped) {
        GenParams gp;
        gp.prefix = "g";
        gp.max_sites = 3;
        Bigraph g = random_structure(rng, gp, std::nullopt, false);

        GenParams fp;
        fp.prefix = "f";
        fp.sig = &g.sig;
        Bigraph f = random_structure(rng, fp, g.inner, false);
        return {std::move(g), std::move(f)};
    }

    // Plugging discipline (composition as multiset union): the inner
    // bigraph is built first with unary roots, outer names carried by
    // exactly one port each, sites under nodes only, and inner names
    // wired to edges only.
    GenParams base;
    Signature sig = random_signature(rng, base);

    Bigraph f;
    f.sig = sig;
    f.outer.width = pick(rng, 1, 3);
    auto ctrls = controls_of(sig);
    std::vector<std::string> made;
    int nn = std::max(pick(rng, 0, base.max_nodes), f.outer.width);
    for (int i = 0; i < nn; ++i) {
        std::string v = "fv" + std::to_string(i);
        f.nodes.insert(v);
        f.ctrl[v] = ctrls[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(ctrls.size()) - 1))];
        f.prnt[NodeRef{v}] = i < f.outer.width
                                 ? Place{RootRef{i}}
                                 : Place{NodeRef{made[static_cast<std::size_t>(
                                       pick(rng, 0, static_cast<int>(made.size()) - 1))]}};
        made.push_back(v);
    }
    int ns = made.empty() ? 0 : pick(rng, 0, base.max_sites);
    f.inner.width = ns;
    for (int s = 0; s < ns; ++s)
        f.prnt[SiteRef{s}] = NodeRef{made[static_cast<std::size_t>(
            pick(rng, 0, static_cast<int>(made.size()) - 1))]};

    std::vector<Point> ports;
    for (const auto& q : f.ports()) ports.push_back(q);
    std::shuffle(ports.begin(), ports.end(), rng);
    std::size_t names_n = ports.empty() ? 0 : static_cast<std::size_t>(
        pick(rng, 0, static_cast<int>(std::min<std::size_t>(ports.size(), 3))));
    std::size_t pi = 0;
    for (; pi < names_n; ++pi) {
        std::string y = "fy" + std::to_string(pi);
        f.outer.names.insert(y);
        f.link[ports[pi]] = OuterRef{y};
    }
    int nx = pick(rng, 0, base.max_inner);
    for (int i = 0; i < nx; ++i) f.inner.names.insert("fx" + std::to_string(i));
    if (pi < ports.size() || nx > 0) f.edges.insert("fe0");
    if (pick(rng, 0, 1)) f.edges.insert("fe1");
    std::vector<Target> erest;
    for (const auto& e : f.edges) erest.push_back(EdgeRef{e});
    for (; pi < ports.size(); ++pi)
        f.link[ports[pi]] =
            erest[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(erest.size()) - 1))];
    for (const auto& x : f.inner.names)
        f.link[InnerRef{x}] =
            erest[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(erest.size()) - 1))];

    // The context: random body, then the forced inner interface.
    GenParams gp;
    gp.prefix = "g";
    gp.sig = &sig;
    gp.ground = true;
    Bigraph g = random_structure(rng, gp, std::nullopt, false);
    g.inner.width = f.outer.width;
    std::vector<Place> gplaces;
    for (int r = 0; r < g.outer.width; ++r) gplaces.push_back(RootRef{r});
    for (const auto& v : g.nodes) gplaces.push_back(NodeRef{v});
    for (int s = 0; s < g.inner.width; ++s)
        g.prnt[SiteRef{s}] = gplaces[static_cast<std::size_t>(
            pick(rng, 0, static_cast<int>(gplaces.size()) - 1))];
    g.inner.names = f.outer.names;
    std::vector<Target> gtargets;
    for (const auto& y : g.outer.names) gtargets.push_back(OuterRef{y});
    for (const auto& e : g.edges) gtargets.push_back(EdgeRef{e});
    if (gtargets.empty() && !g.inner.names.empty()) {
        g.edges.insert("ge_auto");
        gtargets.push_back(EdgeRef{"ge_auto"});
    }
    for (const auto& x : g.inner.names)
        g.link[InnerRef{x}] =
            gtargets[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(gtargets.size()) - 1))];

    assert(well_formed(f).ok());
    assert(well_formed(g).ok());
    return {std::move(g), std::move(f)};
}

std::pair<Bigraph, Bigraph> random_juxtaposable_pair(std::mt19937_64& rng) {
    GenParams gp;
    gp.prefix = "g";
    Bigraph g = random_structure(rng, gp, std::nullopt, false);
    GenParams fp;
    fp.prefix = "f";
    fp.sig = &g.sig;
    Bigraph f = random_structure(rng, fp, std::nullopt, false);
    return {std::move(g), std::move(f)};
}

std::tuple<Bigraph, Bigraph, Bigraph> random_composable_triple(std::mt19937_64& rng) {
    GenParams gp;
    gp.prefix = "g";
    gp.max_sites = 2;
    Bigraph g = random_structure(rng, gp, std::nullopt, false);

    GenParams fp;
    fp.prefix = "f";
    fp.sig = &g.sig;
    fp.max_sites = 2;
    Bigraph f = random_structure(rng, fp, g.inner, false);

    GenParams ep;
    ep.prefix = "h";
    ep.sig = &g.sig;
    ep.ground = pick(rng, 0, 1) == 0;
    Bigraph e = random_structure(rng, ep, f.inner, false);
    return {std::move(g), std::move(f), std::move(e)};
}

}  // namespace bigrel
