#include "bigrel/dot.hpp"

#include <sstream>

namespace bigrel {

namespace {

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string place_id(const Place& p) {
    if (std::holds_alternative<RootRef>(p))
        return "root" + std::to_string(std::get<RootRef>(p).index);
    return "n_" + std::get<NodeRef>(p).id;
}

}  // namespace

std::string bigraph_dot(const Bigraph& b, const std::string& title) {
    std::ostringstream os;
    os << "// bigrel dot 1\n";
    os << "digraph \"" << esc(title) << "\" {\n";
    os << "  rankdir=TB;\n";

    for (int r = 0; r < b.outer.width; ++r)
        os << "  root" << r << " [shape=house,label=\"root " << r << "\"];\n";
    for (const auto& v : b.nodes)
        os << "  n_" << v << " [shape=ellipse,label=\"" << esc(v) << ":" << esc(b.ctrl.at(v))
           << "\"];\n";
    for (int s = 0; s < b.inner.width; ++s)
        os << "  site" << s << " [shape=box,style=dashed,label=\"site " << s << "\"];\n";

    for (const auto& [c, p] : b.prnt) {
        std::string child = std::holds_alternative<SiteRef>(c)
                                ? "site" + std::to_string(std::get<SiteRef>(c).index)
                                : "n_" + std::get<NodeRef>(c).id;
        os << "  " << place_id(p) << " -> " << child << ";\n";
    }

    // Link graph: one junction vertex per target, dashed fan-out.
    for (const auto& y : b.outer.names)
        os << "  o_" << y << " [shape=diamond,label=\"" << esc(y) << "\"];\n";
    for (const auto& e : b.edges)
        os << "  e_" << e << " [shape=point,label=\"\",xlabel=\"" << esc(e) << "\"];\n";
    for (const auto& x : b.inner.names)
        os << "  i_" << x << " [shape=invtriangle,label=\"" << esc(x) << "\"];\n";

    for (const auto& [pt, t] : b.link) {
        std::string src;
        std::string attrs = "style=dashed";
        if (std::holds_alternative<InnerRef>(pt)) {
            src = "i_" + std::get<InnerRef>(pt).name;
        } else {
            const Port& q = std::get<Port>(pt);
            src = "n_" + q.node;
            attrs += ",taillabel=\"" + std::to_string(q.index) + "\"";
        }
        std::string dst = std::holds_alternative<OuterRef>(t)
                              ? "o_" + std::get<OuterRef>(t).name
                              : "e_" + std::get<EdgeRef>(t).id;
        os << "  " << src << " -> " << dst << " [" << attrs << "];\n";
    }

    os << "}\n";
    return os.str();
}

std::string state_graph_dot(const BrsTrace& trace) {
    std::ostringstream os;
    os << "// bigrel dot 1\n";
    os << "digraph states {\n";
    for (std::size_t i = 0; i < trace.states.size(); ++i) {
        const Bigraph& b = trace.states[i];
        os << "  s" << i << " [shape=" << (i == 0 ? "doublecircle" : "circle") << ",label=\"" << i
           << "\\n" << b.nodes.size() << " nodes\"];\n";
    }
    for (const auto& st : trace.steps)
        os << "  s" << st.from << " -> s" << st.to << " [label=\"" << esc(st.rule) << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace bigrel
