#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "supergeo/errors.hpp"

namespace supergeo {

enum class Parity : int { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return (a == b) ? Parity::Even : Parity::Odd;
}

inline const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

/// Declares the generators of one supercommutative coordinate ring:
/// even (commuting, Laurent-invertible) variables, odd (anticommuting,
/// square-zero) variables, and formal parameters.  Parameters commute,
/// carry nonnegative exponents only, and are never inverted.
///
/// Contexts are immutable and shared by pointer; equality is by content,
/// so independently built identical contexts interoperate.
class GeneratorContext {
public:
    GeneratorContext(std::vector<std::string> even_names,
                     std::vector<std::string> odd_names,
                     std::vector<std::string> param_names)
        : even_(std::move(even_names)),
          odd_(std::move(odd_names)),
          params_(std::move(param_names)) {
        if (odd_.size() > 64)
            throw ConstraintViolationError("at most 64 odd generators supported");
        check_distinct();
    }

    const std::vector<std::string>& even_names() const { return even_; }
    const std::vector<std::string>& odd_names() const { return odd_; }
    const std::vector<std::string>& param_names() const { return params_; }

    std::size_t even_count() const { return even_.size(); }
    std::size_t odd_count() const { return odd_.size(); }
    std::size_t param_count() const { return params_.size(); }

    // -1 when absent.
    int even_index(const std::string& name) const { return find(even_, name); }
    int odd_index(const std::string& name) const { return find(odd_, name); }
    int param_index(const std::string& name) const { return find(params_, name); }

    bool operator==(const GeneratorContext& o) const {
        return even_ == o.even_ && odd_ == o.odd_ && params_ == o.params_;
    }
    bool operator!=(const GeneratorContext& o) const { return !(*this == o); }

private:
    static int find(const std::vector<std::string>& v, const std::string& name) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] == name) return static_cast<int>(i);
        return -1;
    }

    void check_distinct() const {
        std::vector<std::string> all;
        all.insert(all.end(), even_.begin(), even_.end());
        all.insert(all.end(), odd_.begin(), odd_.end());
        all.insert(all.end(), params_.begin(), params_.end());
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                if (all[i] == all[j])
                    throw ConstraintViolationError("duplicate generator name: " + all[i]);
    }

    std::vector<std::string> even_, odd_, params_;
};

using ContextPtr = std::shared_ptr<const GeneratorContext>;

inline ContextPtr make_context(std::vector<std::string> even_names,
                               std::vector<std::string> odd_names,
                               std::vector<std::string> param_names = {"lambda"}) {
    return std::make_shared<const GeneratorContext>(
        std::move(even_names), std::move(odd_names), std::move(param_names));
}

inline bool same_context(const ContextPtr& a, const ContextPtr& b) {
    return a == b || (a && b && *a == *b);
}

inline void require_same_context(const ContextPtr& a, const ContextPtr& b,
                                 const char* where) {
    if (!same_context(a, b))
        throw ContextMismatchError(std::string(where) + ": operands use different contexts");
}

}  // namespace supergeo
