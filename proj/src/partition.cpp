#include "bigrel/partition.hpp"

#include <stdexcept>

namespace bigrel {
namespace rel {

namespace {

bool has_fn(const Term& t, const char* fn) { return t.is_app() && t.fn() == fn; }

}  // namespace

Partition partition(const Bigraph& c, const std::string& id) {
    Partition p;
    Multiset enc = encode(c, id);
    for (const auto& [a, n] : enc.counts()) {
        const auto& args = a.args;
        bool inn = false, out = false;
        if (a.pred == p_is_site || a.pred == p_is_i_name) {
            inn = true;
        } else if (a.pred == p_prnt) {
            // A site-to-root prnt atom belongs to the inner part: the
            // site vanishes under composition, the atom with it.
            if (has_fn(args[0], "src_s"))
                inn = true;
            else if (has_fn(args[1], "dst_r"))
                out = true;
        } else if (a.pred == p_link) {
            if (has_fn(args[0], "src_i"))
                inn = true;
            else if (has_fn(args[1], "dst_o"))
                out = true;
        } else if (a.pred == p_is_root || a.pred == p_is_o_name) {
            out = true;
        } else if (a.pred == p_has_child_p) {
            out = has_fn(args[0], "dst_r");
        } else if (a.pred == p_has_child_l) {
            out = has_fn(args[0], "dst_o");
        }
        (inn ? p.inn : out ? p.out : p.core).add(a, n);
    }
    return p;
}

Multiset eq_set(const Bigraph& c, const Bigraph& cp, const std::string& id) {
    if (!(c.inner == cp.outer))
        throw InterfaceMismatch("eq_set: inner interface of c does not match outer interface of cp");

    Term beta = bigraph_term(id);
    Multiset glue;

    // Place glue: children of root r in cp re-parent onto the parent of
    // site r in c.
    for (int r = 0; r < cp.outer.width; ++r) {
        Term dst = place_term(c.prnt.at(Child{SiteRef{r}}));
        for (const auto& [ch, pl] : cp.prnt) {
            if (!(pl == Place{RootRef{r}})) continue;
            glue.add(Atom{p_prnt, {child_term(ch), dst, beta}});
        }
    }
    // Link glue: points on outer name o in cp re-target onto the link of
    // inner name o in c.
    for (const auto& o : cp.outer.names) {
        Term dst = target_term(c.link.at(Point{InnerRef{o}}));
        for (const auto& [pt, tg] : cp.link) {
            if (!(tg == Target{OuterRef{o}})) continue;
            glue.add(Atom{p_link, {point_term(pt), dst, beta}});
        }
    }
    return glue;
}

Multiset shift_places(const Multiset& s, int site_offset, int root_offset) {
    auto shift_nat = [](const Term& t, int by) {
        return Term::nat(t.nat_value() + static_cast<std::uint64_t>(by));
    };
    Multiset out;
    for (const auto& [a, n] : s.counts()) {
        Atom b = a;
        if (a.pred == p_is_root) {
            b.args[0] = shift_nat(a.args[0], root_offset);
        } else if (a.pred == p_is_site) {
            b.args[0] = shift_nat(a.args[0], site_offset);
        } else {
            for (auto& t : b.args) {
                if (has_fn(t, "dst_r")) t = dst_r(shift_nat(t.args()[0], root_offset));
                else if (has_fn(t, "src_s")) t = src_s(shift_nat(t.args()[0], site_offset));
            }
        }
        out.add(std::move(b), n);
    }
    return out;
}

}  // namespace rel
}  // namespace bigrel
