#include "bigrel/term.hpp"

#include <sstream>
#include <stdexcept>

namespace bigrel {

const char* ns_tag(Ns ns) {
    switch (ns) {
        case Ns::node: return "node";
        case Ns::edge: return "edge";
        case Ns::name: return "name";
        case Ns::ctrl: return "ctrl";
        case Ns::bigraph: return "bigraph";
    }
    return "?";
}

Term Term::nat(std::uint64_t n) {
    Term t;
    t.kind_ = Kind::nat;
    t.nat_ = n;
    return t;
}

Term Term::sym(Ns ns, std::string id) {
    Term t;
    t.kind_ = Kind::sym;
    t.sym_ = NameSym{ns, std::move(id)};
    return t;
}

Term Term::sym(NameSym s) {
    Term t;
    t.kind_ = Kind::sym;
    t.sym_ = std::move(s);
    return t;
}

Term Term::var(std::string name) {
    Term t;
    t.kind_ = Kind::var;
    t.str_ = std::move(name);
    return t;
}

Term Term::app(std::string fn, std::vector<Term> args) {
    Term t;
    t.kind_ = Kind::app;
    t.str_ = std::move(fn);
    t.args_ = std::move(args);
    return t;
}

Term Term::succ(Term t) {
    if (t.is_nat()) return Term::nat(t.nat_value() + 1);
    return Term::app("s", {std::move(t)});
}

bool Term::is_ground() const {
    switch (kind_) {
        case Kind::var: return false;
        case Kind::app:
            for (const auto& a : args_)
                if (!a.is_ground()) return false;
            return true;
        default: return true;
    }
}

void Term::collect_vars(std::set<std::string>& out) const {
    if (kind_ == Kind::var) {
        out.insert(str_);
    } else if (kind_ == Kind::app) {
        for (const auto& a : args_) a.collect_vars(out);
    }
}

std::string Term::to_string() const {
    switch (kind_) {
        case Kind::nat: return std::to_string(nat_);
        case Kind::sym: return sym_.id;
        case Kind::var: return "?" + str_;
        case Kind::app: {
            std::string s = str_;
            s += '(';
            for (std::size_t i = 0; i < args_.size(); ++i) {
                if (i) s += ',';
                s += args_[i].to_string();
            }
            s += ')';
            return s;
        }
    }
    return {};
}

int Term::cmp(const Term& o) const {
    if (kind_ != o.kind_) return kind_ < o.kind_ ? -1 : 1;
    switch (kind_) {
        case Kind::nat:
            if (nat_ != o.nat_) return nat_ < o.nat_ ? -1 : 1;
            return 0;
        case Kind::sym:
            if (sym_.ns != o.sym_.ns) return sym_.ns < o.sym_.ns ? -1 : 1;
            return sym_.id.compare(o.sym_.id);
        case Kind::var:
            return str_.compare(o.str_);
        case Kind::app: {
            if (int c = str_.compare(o.str_); c != 0) return c;
            if (args_.size() != o.args_.size())
                return args_.size() < o.args_.size() ? -1 : 1;
            for (std::size_t i = 0; i < args_.size(); ++i)
                if (int c = args_[i].cmp(o.args_[i]); c != 0) return c;
            return 0;
        }
    }
    return 0;
}

const Term* Subst::lookup(const std::string& var) const {
    auto it = map_.find(var);
    return it == map_.end() ? nullptr : &it->second;
}

bool Subst::bind(const std::string& var, Term t) {
    auto it = map_.find(var);
    if (it != map_.end()) return it->second == t;
    map_.emplace(var, std::move(t));
    return true;
}

Term Subst::apply(const Term& tmpl) const {
    switch (tmpl.kind()) {
        case Term::Kind::nat:
        case Term::Kind::sym:
            return tmpl;
        case Term::Kind::var: {
            const Term* t = lookup(tmpl.var_name());
            if (!t) throw std::logic_error("unbound variable " + tmpl.var_name());
            return *t;
        }
        case Term::Kind::app: {
            std::vector<Term> args;
            args.reserve(tmpl.args().size());
            for (const auto& a : tmpl.args()) args.push_back(apply(a));
            if (tmpl.fn() == "s" && args.size() == 1 && args[0].is_nat())
                return Term::nat(args[0].nat_value() + 1);
            return Term::app(tmpl.fn(), std::move(args));
        }
    }
    return tmpl;
}

std::string Subst::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, t] : map_) {
        if (!first) os << ' ';
        first = false;
        os << v << '=' << t.to_string();
    }
    return os.str();
}

int Subst::cmp(const Subst& o) const {
    auto a = map_.begin(), b = o.map_.begin();
    for (; a != map_.end() && b != o.map_.end(); ++a, ++b) {
        if (int c = a->first.compare(b->first); c != 0) return c;
        if (int c = a->second.cmp(b->second); c != 0) return c;
    }
    if (a != map_.end()) return 1;
    if (b != o.map_.end()) return -1;
    return 0;
}

bool match_term(const Term& pattern, const Term& ground, Subst& s) {
    switch (pattern.kind()) {
        case Term::Kind::var:
            return s.bind(pattern.var_name(), ground);
        case Term::Kind::nat:
            return ground.is_nat() && ground.nat_value() == pattern.nat_value();
        case Term::Kind::sym:
            return ground.is_sym() && ground.symbol() == pattern.symbol();
        case Term::Kind::app: {
            // Successor patterns peel one off a ground natural.
            if (pattern.fn() == "s" && pattern.args().size() == 1 && ground.is_nat()) {
                if (ground.nat_value() == 0) return false;
                return match_term(pattern.args()[0], Term::nat(ground.nat_value() - 1), s);
            }
            if (!ground.is_app() || ground.fn() != pattern.fn() ||
                ground.args().size() != pattern.args().size())
                return false;
            for (std::size_t i = 0; i < pattern.args().size(); ++i)
                if (!match_term(pattern.args()[i], ground.args()[i], s)) return false;
            return true;
        }
    }
    return false;
}

}  // namespace bigrel
