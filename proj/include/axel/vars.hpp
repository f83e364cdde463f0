#ifndef AXEL_VARS_HPP
#define AXEL_VARS_HPP

#include <memory>
#include <string>
#include <vector>
#include <stdexcept>

namespace axel {

// Role of a symbol inside a variable table.  Constant symbols span the
// constants field; Base is the distinguished variable t; ExpGen are the
// exponential generators u_j; Param are variety parameters w_j; Formal is
// a free indeterminate (the X of univariate polynomial identities).
enum class VarKind { Constant, Base, ExpGen, Param, Formal };

struct VarTable {
    std::vector<std::string> names;
    std::vector<VarKind> kinds;

    std::size_t size() const { return names.size(); }

    int index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return static_cast<int>(i);
        return -1;
    }

    bool operator==(const VarTable& o) const {
        return names == o.names && kinds == o.kinds;
    }
};

using VarsPtr = std::shared_ptr<const VarTable>;

inline VarsPtr make_vars(std::vector<std::string> names, std::vector<VarKind> kinds) {
    if (names.size() != kinds.size())
        throw std::invalid_argument("names/kinds size mismatch");
    auto t = std::make_shared<VarTable>();
    t->names = std::move(names);
    t->kinds = std::move(kinds);
    return t;
}

// Extends a table by appending a variable; existing indices are preserved.
inline VarsPtr append_var(const VarsPtr& v, const std::string& name, VarKind kind) {
    if (v->index_of(name) >= 0)
        throw std::invalid_argument("variable already present: " + name);
    auto t = std::make_shared<VarTable>(*v);
    t->names.push_back(name);
    t->kinds.push_back(kind);
    return t;
}

inline bool same_vars(const VarsPtr& a, const VarsPtr& b) {
    return a == b || *a == *b;
}

} // namespace axel

#endif
