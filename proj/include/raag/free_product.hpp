#pragma once

#include <utility>
#include <variant>
#include <vector>

namespace raag {

// Words in a free product L * R are alternating sequences of nontrivial
// syllables, each drawn from one factor.  The factor ops types supply the
// word problem and the multiplication:
//
//   bool trivial(const T&) const;
//   T mul(const T&, const T&) const;
//
// Exceptions thrown by the ops propagate unchanged.
template <class L, class R>
using FreeProductWord = std::vector<std::variant<L, R>>;

// Drops trivial syllables and merges adjacent same-factor syllables until
// neither applies.  The result is empty iff the input represents the
// identity; a single stack pass suffices because the stack stays alternating
// and trivial-free throughout.
template <class L, class R, class LOps, class ROps>
FreeProductWord<L, R> free_product_reduce(const FreeProductWord<L, R>& word,
                                          const LOps& left_ops,
                                          const ROps& right_ops) {
    auto trivial = [&](const std::variant<L, R>& s) {
        return s.index() == 0 ? left_ops.trivial(std::get<0>(s))
                              : right_ops.trivial(std::get<1>(s));
    };
    auto merge = [&](const std::variant<L, R>& a, const std::variant<L, R>& b) {
        if (a.index() == 0) {
            return std::variant<L, R>(std::in_place_index<0>,
                                      left_ops.mul(std::get<0>(a), std::get<0>(b)));
        }
        return std::variant<L, R>(std::in_place_index<1>,
                                  right_ops.mul(std::get<1>(a), std::get<1>(b)));
    };

    FreeProductWord<L, R> out;
    for (const auto& s : word) {
        if (trivial(s)) continue;
        if (!out.empty() && out.back().index() == s.index()) {
            auto m = merge(out.back(), s);
            out.pop_back();
            if (!trivial(m)) out.push_back(std::move(m));
        } else {
            out.push_back(s);
        }
    }
    return out;
}

}  // namespace raag
