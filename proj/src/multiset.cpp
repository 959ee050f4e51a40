#include "bigrel/multiset.hpp"

#include <sstream>
#include <stdexcept>

namespace bigrel {

bool Atom::is_ground() const {
    for (const auto& a : args)
        if (!a.is_ground()) return false;
    return true;
}

void Atom::collect_vars(std::set<std::string>& out) const {
    for (const auto& a : args) a.collect_vars(out);
}

std::string Atom::to_string() const {
    std::string s = pred;
    s += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) s += ',';
        s += args[i].to_string();
    }
    s += ')';
    return s;
}

int Atom::cmp(const Atom& o) const {
    if (int c = pred.compare(o.pred); c != 0) return c;
    if (args.size() != o.args.size()) return args.size() < o.args.size() ? -1 : 1;
    for (std::size_t i = 0; i < args.size(); ++i)
        if (int c = args[i].cmp(o.args[i]); c != 0) return c;
    return 0;
}

Atom make_atom(std::string pred, std::vector<Term> args) {
    return Atom{std::move(pred), std::move(args)};
}

void PredicateTable::declare(const std::string& pred, std::size_t arity) {
    auto [it, inserted] = arity_.emplace(pred, arity);
    if (!inserted && it->second != arity)
        throw std::invalid_argument("predicate " + pred + " redeclared with different arity");
}

bool PredicateTable::known(const std::string& pred) const {
    return arity_.count(pred) != 0;
}

std::size_t PredicateTable::arity(const std::string& pred) const {
    auto it = arity_.find(pred);
    if (it == arity_.end()) throw std::invalid_argument("unknown predicate " + pred);
    return it->second;
}

void PredicateTable::check(const Atom& a) const {
    auto it = arity_.find(a.pred);
    if (it == arity_.end()) throw std::invalid_argument("unknown predicate " + a.pred);
    if (it->second != a.args.size())
        throw std::invalid_argument("arity mismatch for " + a.pred + ": expected " +
                                    std::to_string(it->second) + ", got " +
                                    std::to_string(a.args.size()));
}

void Multiset::add(Atom a, std::int64_t n) {
    if (n <= 0) {
        if (n == 0) return;
        throw std::invalid_argument("negative multiplicity");
    }
    counts_[std::move(a)] += n;
    size_ += n;
}

bool Multiset::remove(const Atom& a, std::int64_t n) {
    auto it = counts_.find(a);
    if (it == counts_.end() || it->second < n) return false;
    it->second -= n;
    size_ -= n;
    if (it->second == 0) counts_.erase(it);
    return true;
}

std::int64_t Multiset::count(const Atom& a) const {
    auto it = counts_.find(a);
    return it == counts_.end() ? 0 : it->second;
}

bool Multiset::includes(const Multiset& sub) const {
    for (const auto& [a, n] : sub.counts_)
        if (count(a) < n) return false;
    return true;
}

Multiset& Multiset::operator+=(const Multiset& o) {
    for (const auto& [a, n] : o.counts_) {
        counts_[a] += n;
        size_ += n;
    }
    return *this;
}

bool Multiset::subtract(const Multiset& o) {
    if (!includes(o)) return false;
    for (const auto& [a, n] : o.counts_) {
        auto it = counts_.find(a);
        it->second -= n;
        size_ -= n;
        if (it->second == 0) counts_.erase(it);
    }
    return true;
}

std::vector<Atom> Multiset::expand() const {
    std::vector<Atom> out;
    out.reserve(static_cast<std::size_t>(size_));
    for (const auto& [a, n] : counts_)
        for (std::int64_t i = 0; i < n; ++i) out.push_back(a);
    return out;
}

std::uint64_t Multiset::digest() const {
    // FNV-1a over the canonical text form.
    std::uint64_t h = 1469598103934665603ull;
    for (char c : to_text()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

std::string Multiset::to_text() const {
    std::ostringstream os;
    for (const auto& [a, n] : counts_)
        for (std::int64_t i = 0; i < n; ++i) os << a.to_string() << '\n';
    return os.str();
}

}  // namespace bigrel
