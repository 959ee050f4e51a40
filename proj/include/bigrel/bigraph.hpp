#ifndef BIGREL_BIGRAPH_HPP
#define BIGREL_BIGRAPH_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace bigrel {

// Signature: control set plus arity map.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::map<std::string, int> arities) : arity_(std::move(arities)) {}

    void declare(const std::string& control, int arity);
    bool has(const std::string& control) const { return arity_.count(control) != 0; }
    int arity(const std::string& control) const;
    const std::map<std::string, int>& arities() const { return arity_; }
    // Least common extension; throws on conflicting arities.
    static Signature merge(const Signature& a, const Signature& b);

    friend bool operator==(const Signature& a, const Signature& b) {
        return a.arity_ == b.arity_;
    }

private:
    std::map<std::string, int> arity_;
};

// An interface <width, names>: ordinal of places plus a finite name set.
struct Interface {
    int width = 0;
    std::set<std::string> names;

    friend bool operator==(const Interface& a, const Interface& b) {
        return a.width == b.width && a.names == b.names;
    }
};

struct RootRef {
    int index = 0;
    friend bool operator==(const RootRef& a, const RootRef& b) { return a.index == b.index; }
    friend bool operator<(const RootRef& a, const RootRef& b) { return a.index < b.index; }
};
struct SiteRef {
    int index = 0;
    friend bool operator==(const SiteRef& a, const SiteRef& b) { return a.index == b.index; }
    friend bool operator<(const SiteRef& a, const SiteRef& b) { return a.index < b.index; }
};
struct NodeRef {
    std::string id;
    friend bool operator==(const NodeRef& a, const NodeRef& b) { return a.id == b.id; }
    friend bool operator<(const NodeRef& a, const NodeRef& b) { return a.id < b.id; }
};
struct EdgeRef {
    std::string id;
    friend bool operator==(const EdgeRef& a, const EdgeRef& b) { return a.id == b.id; }
    friend bool operator<(const EdgeRef& a, const EdgeRef& b) { return a.id < b.id; }
};
struct InnerRef {
    std::string name;
    friend bool operator==(const InnerRef& a, const InnerRef& b) { return a.name == b.name; }
    friend bool operator<(const InnerRef& a, const InnerRef& b) { return a.name < b.name; }
};
struct OuterRef {
    std::string name;
    friend bool operator==(const OuterRef& a, const OuterRef& b) { return a.name == b.name; }
    friend bool operator<(const OuterRef& a, const OuterRef& b) { return a.name < b.name; }
};

// Ports are 1-based: index runs over 1..arity(ctrl(node)).
struct Port {
    std::string node;
    int index = 1;
    friend bool operator==(const Port& a, const Port& b) {
        return a.node == b.node && a.index == b.index;
    }
    friend bool operator<(const Port& a, const Port& b) {
        if (a.node != b.node) return a.node < b.node;
        return a.index < b.index;
    }
};

using Place = std::variant<RootRef, NodeRef>;     // prnt codomain
using Child = std::variant<SiteRef, NodeRef>;     // prnt domain
using Point = std::variant<InnerRef, Port>;       // link domain
using Target = std::variant<OuterRef, EdgeRef>;   // link codomain

std::string to_string(const Place& p);
std::string to_string(const Child& c);
std::string to_string(const Point& p);
std::string to_string(const Target& t);

// The six-tuple structure between two interfaces. Construct freely;
// well_formed reports violations instead of throwing so invalid values
// can be built and inspected in tests and diagnostics.
struct Bigraph {
    Signature sig;
    std::set<std::string> nodes;
    std::set<std::string> edges;
    std::map<std::string, std::string> ctrl;  // node -> control
    std::map<Child, Place> prnt;
    std::map<Point, Target> link;
    Interface inner;  // <m, X>: sites and inner names
    Interface outer;  // <n, Y>: roots and outer names

    int arity_of(const std::string& node) const;
    std::vector<Port> ports() const;                      // sorted
    std::vector<Child> children_of(const Place& p) const; // sorted
    std::vector<Point> points_of(const Target& t) const;  // sorted

    friend bool operator==(const Bigraph& a, const Bigraph& b) {
        return a.sig == b.sig && a.nodes == b.nodes && a.edges == b.edges && a.ctrl == b.ctrl &&
               a.prnt == b.prnt && a.link == b.link && a.inner == b.inner && a.outer == b.outer;
    }
};

struct Diagnostics {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

// Checks every structural invariant: totality of ctrl/prnt/link on their
// domains, exact port sets, index ranges, name-set disjointness inside
// each interface, and acyclicity of prnt on nodes.
Diagnostics well_formed(const Bigraph& b);

class BigraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class InterfaceMismatch : public BigraphError {
public:
    using BigraphError::BigraphError;
};
class NameClash : public BigraphError {
public:
    using BigraphError::BigraphError;
};

// G o F: plugs F's roots into G's sites and F's outer names into G's
// inner names. Requires inner(G) == outer(F) and disjoint nodes/edges.
Bigraph compose(const Bigraph& g, const Bigraph& f);

// G (x) F: F keeps its site/root indices, G's are shifted past them.
// Nodes, edges and interface names must be disjoint. (The sharing
// variant of juxtaposition that instantiation needs - copies keeping
// common edges and outer names - is realised inside instantiate_eta.)
Bigraph juxtapose(const Bigraph& g, const Bigraph& f);

bool is_ground(const Bigraph& b);

Bigraph empty_bigraph(const Signature& sig);
// Identity bigraph on an interface: site i under root i, inner name x
// wired to outer name x.
Bigraph identity(const Signature& sig, const Interface& iface);

// Explicit renaming for disjointness: applies maps to node/edge ids
// (missing entries keep their names). Interface names are untouched.
Bigraph rename_support(const Bigraph& b, const std::map<std::string, std::string>& node_map,
                       const std::map<std::string, std::string>& edge_map);

// Drops outer names with no points (used when comparing reaction results
// against freshly compiled agents, whose name sets are minimal).
Bigraph drop_idle_outer_names(const Bigraph& b);

}  // namespace bigrel

#endif
