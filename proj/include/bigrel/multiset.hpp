#ifndef BIGREL_MULTISET_HPP
#define BIGREL_MULTISET_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bigrel/term.hpp"

namespace bigrel {

// A ground or pattern fact: predicate symbol plus an ordered argument list.
struct Atom {
    std::string pred;
    std::vector<Term> args;

    bool is_ground() const;
    void collect_vars(std::set<std::string>& out) const;
    std::string to_string() const;

    int cmp(const Atom& o) const;
    friend bool operator==(const Atom& a, const Atom& b) { return a.cmp(b) == 0; }
    friend bool operator<(const Atom& a, const Atom& b) { return a.cmp(b) < 0; }
};

Atom make_atom(std::string pred, std::vector<Term> args);

// Declared argument counts per predicate symbol.
class PredicateTable {
public:
    void declare(const std::string& pred, std::size_t arity);
    bool known(const std::string& pred) const;
    std::size_t arity(const std::string& pred) const;
    // Throws std::invalid_argument when the atom uses an undeclared
    // predicate or the wrong number of arguments.
    void check(const Atom& a) const;

private:
    std::map<std::string, std::size_t> arity_;
};

// Finite multiset of ground atoms. Iteration is in canonical order
// (predicate symbol, then lexicographic term order).
class Multiset {
public:
    using Counts = std::map<Atom, std::int64_t>;

    Multiset() = default;

    void add(Atom a, std::int64_t n = 1);
    // Removes n copies; returns false (and leaves the multiset unchanged)
    // when fewer than n copies are present.
    bool remove(const Atom& a, std::int64_t n = 1);

    std::int64_t count(const Atom& a) const;
    std::int64_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    std::size_t distinct() const { return counts_.size(); }

    bool includes(const Multiset& sub) const;
    Multiset& operator+=(const Multiset& o);
    // Multiset difference; returns false when o is not included.
    bool subtract(const Multiset& o);

    const Counts& counts() const { return counts_; }
    // Every copy listed individually, canonical order.
    std::vector<Atom> expand() const;

    friend bool operator==(const Multiset& a, const Multiset& b) {
        return a.counts_ == b.counts_;
    }
    friend Multiset operator+(Multiset a, const Multiset& b) {
        a += b;
        return a;
    }

    std::uint64_t digest() const;
    std::string to_text() const;  // one atom copy per line

private:
    Counts counts_;
    std::int64_t size_ = 0;
};

}  // namespace bigrel

#endif
