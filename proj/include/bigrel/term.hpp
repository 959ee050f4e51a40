#ifndef BIGREL_TERM_HPP
#define BIGREL_TERM_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace bigrel {

// Name universes. Keeping nodes, edges, link names, controls and bigraph
// identifiers in separate namespaces makes the disjointness requirements on
// the corresponding sets hold by construction.
enum class Ns : std::uint8_t { node, edge, name, ctrl, bigraph };

const char* ns_tag(Ns ns);

struct NameSym {
    Ns ns = Ns::node;
    std::string id;

    friend bool operator==(const NameSym& a, const NameSym& b) {
        return a.ns == b.ns && a.id == b.id;
    }
    friend bool operator<(const NameSym& a, const NameSym& b) {
        if (a.ns != b.ns) return a.ns < b.ns;
        return a.id < b.id;
    }
};

// First-order terms: naturals (stored as machine integers, printed and
// matched as s/z towers), symbols, variables and constructor applications.
// Ground terms never contain variables; "s" applications normalise away.
class Term {
public:
    enum class Kind : std::uint8_t { nat, sym, var, app };

    Term() : kind_(Kind::nat) {}

    static Term nat(std::uint64_t n);
    static Term sym(Ns ns, std::string id);
    static Term sym(NameSym s);
    static Term var(std::string name);
    static Term app(std::string fn, std::vector<Term> args);
    static Term succ(Term t);  // app("s", {t}), folded when t is a nat

    Kind kind() const { return kind_; }
    bool is_nat() const { return kind_ == Kind::nat; }
    bool is_sym() const { return kind_ == Kind::sym; }
    bool is_var() const { return kind_ == Kind::var; }
    bool is_app() const { return kind_ == Kind::app; }

    std::uint64_t nat_value() const { return nat_; }
    const NameSym& symbol() const { return sym_; }
    const std::string& var_name() const { return str_; }
    const std::string& fn() const { return str_; }
    const std::vector<Term>& args() const { return args_; }

    bool is_ground() const;
    void collect_vars(std::set<std::string>& out) const;

    std::string to_string() const;

    int cmp(const Term& o) const;
    friend bool operator==(const Term& a, const Term& b) { return a.cmp(b) == 0; }
    friend bool operator!=(const Term& a, const Term& b) { return a.cmp(b) != 0; }
    friend bool operator<(const Term& a, const Term& b) { return a.cmp(b) < 0; }

private:
    Kind kind_;
    std::uint64_t nat_ = 0;
    NameSym sym_{};
    std::string str_;         // var name or constructor symbol
    std::vector<Term> args_;  // app arguments
};

// Finite map from variables to ground terms.
class Subst {
public:
    const Term* lookup(const std::string& var) const;
    // Binds var to t; returns false when var is already bound to a
    // different term.
    bool bind(const std::string& var, Term t);
    // Instantiates a template term. Throws std::logic_error on unbound
    // variables; folds successor applications of naturals.
    Term apply(const Term& tmpl) const;

    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    const std::map<std::string, Term>& entries() const { return map_; }
    std::string to_string() const;

    int cmp(const Subst& o) const;
    friend bool operator==(const Subst& a, const Subst& b) { return a.cmp(b) == 0; }
    friend bool operator<(const Subst& a, const Subst& b) { return a.cmp(b) < 0; }

private:
    std::map<std::string, Term> map_;
};

// One-way matching of a pattern against a ground term, extending s.
bool match_term(const Term& pattern, const Term& ground, Subst& s);

}  // namespace bigrel

#endif
