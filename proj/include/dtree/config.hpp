#pragma once

#include "multiindex.hpp"
#include "rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtree {

struct EdgeKind {
    std::string name;
    Rational degree = 0;
    bool integration = false;
};

// Everything a value is validated against: d+1, the scaling s, the declared
// edge kinds S' (ids are declaration positions) and node generators S.
struct Session {
    int dim = 1;
    std::vector<int> scaling{1};
    std::vector<EdgeKind> kinds{{"t", 2, true}};
    std::vector<std::string> generators;

    static Session with_kinds(std::vector<std::string> names, int dim = 1)
    {
        Session s;
        s.dim = dim;
        s.scaling.assign(static_cast<size_t>(dim), 1);
        s.kinds.clear();
        for (auto& n : names) s.kinds.push_back({std::move(n), 2, true});
        s.validate();
        return s;
    }

    void validate() const
    {
        if (dim < 1 || dim > kMaxDim)
            throw std::invalid_argument("dimension must be between 1 and " + std::to_string(kMaxDim));
        if (static_cast<int>(scaling.size()) != dim)
            throw std::invalid_argument("scaling length must equal the dimension");
        for (int w : scaling)
            if (w < 1) throw std::invalid_argument("scaling weights must be >= 1");
        if (kinds.empty()) throw std::invalid_argument("at least one edge kind is required");
        for (size_t i = 0; i < kinds.size(); ++i)
            for (size_t j = i + 1; j < kinds.size(); ++j)
                if (kinds[i].name == kinds[j].name)
                    throw std::invalid_argument("duplicate edge kind: " + kinds[i].name);
    }

    std::optional<int> kind_id(const std::string& name) const
    {
        for (size_t i = 0; i < kinds.size(); ++i)
            if (kinds[i].name == name) return static_cast<int>(i);
        return std::nullopt;
    }
    std::optional<int> generator_id(const std::string& name) const
    {
        for (size_t i = 0; i < generators.size(); ++i)
            if (generators[i] == name) return static_cast<int>(i);
        return std::nullopt;
    }

    MultiIndex zero() const { return MultiIndex(dim); }
    MultiIndex constant(int c) const
    {
        MultiIndex m(dim);
        for (int i = 0; i < dim; ++i) m[i] = c;
        return m;
    }
    long grade(const MultiIndex& k) const { return k.weighted(scaling); }
};

} // namespace dtree
