#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "ach/term.hpp"

namespace ach {

/// Finite map from variables to terms. The engine keeps substitutions
/// idempotent: no domain variable occurs in any range term.
class Substitution {
public:
    Substitution() = default;

    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    bool binds(const std::string& var) const { return map_.count(var) != 0; }
    const Term* find(const std::string& var) const {
        auto it = map_.find(var);
        return it == map_.end() ? nullptr : &it->second;
    }

    /// Inserts a binding without touching existing ranges. The variable must
    /// be unbound.
    void bind(const std::string& var, const Term& t);
    void unbind(const std::string& var) { map_.erase(var); }

    /// Homomorphic application followed by re-canonicalization. Variables
    /// outside the domain are left untouched.
    Term apply(const Term& t) const;

    /// Variable-elimination composition: replaces `var` by `t` in every
    /// range term, then adds the binding var -> t. Preconditions: `var` is
    /// unbound and does not occur in `t` (the caller has occur-checked).
    void compose_with(const std::string& var, const Term& t);

    Substitution restricted(const std::set<std::string>& keep) const;

    const std::map<std::string, Term>& bindings() const { return map_; }

    friend bool operator==(const Substitution& a, const Substitution& b);

private:
    std::map<std::string, Term> map_;
};

inline bool operator!=(const Substitution& a, const Substitution& b) { return !(a == b); }

/// Value-returning form of Substitution::compose_with.
Substitution compose(Substitution sigma, const std::string& var, const Term& t);

std::string to_string(const Substitution& s);

} // namespace ach
