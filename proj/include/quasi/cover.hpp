#pragma once

/** @file cover.hpp
 *  @brief Exact minimum-weight set cover over up to 64 elements.
 *
 *  Members and targets are 64-bit element masks with nonnegative costs.
 *  A cover is a subcollection of members, without repetition, whose union
 *  contains the target. Among minimum-cost covers the reported witness is
 *  the irredundant one (no member can be dropped) whose ascending index list
 *  is lexicographically smallest. Every minimum-cost cover can be pruned to
 *  an irredundant one of the same cost, so this choice always exists.
 *
 *  Cost may be an exact type (Rational) or a floating type; floating
 *  comparisons go through CostTraits with a relative tolerance.
 */

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <unordered_map>
#include <vector>

namespace quasi {

using ElementMask = std::uint64_t;

template <class Cost>
struct CostTraits {
  static bool less(const Cost& a, const Cost& b) { return a < b; }
  static bool equal(const Cost& a, const Cost& b) { return a == b; }
};

template <class Cost>
  requires std::is_floating_point_v<Cost>
struct CostTraits<Cost> {
  static Cost slack(const Cost& a, const Cost& b) {
    return 64 * std::numeric_limits<Cost>::epsilon() * (1 + std::fabs(a) + std::fabs(b));
  }
  static bool less(const Cost& a, const Cost& b) { return a < b - slack(a, b); }
  static bool equal(const Cost& a, const Cost& b) { return std::fabs(a - b) <= slack(a, b); }
};

template <class Cost>
struct CoverResult {
  std::vector<std::size_t> chosen;  // ascending member indices
  Cost cost{};
};

namespace detail {

template <class Cost>
bool irredundant(const std::vector<std::size_t>& chosen, const std::vector<ElementMask>& members,
                 ElementMask target) {
  for (std::size_t skip = 0; skip < chosen.size(); ++skip) {
    ElementMask rest = 0;
    for (std::size_t k = 0; k < chosen.size(); ++k) {
      if (k != skip) rest |= members[chosen[k]];
    }
    if ((target & ~rest) == 0) return false;
  }
  return true;
}

}  // namespace detail

/// Branch-and-bound solver for one fixed member family. The optimal cost of
/// every still-uncovered mask is memoized, so a solver reused across many
/// targets amortizes the search.
template <class Cost>
class MinCoverSolver {
 public:
  MinCoverSolver() = default;
  MinCoverSolver(std::vector<ElementMask> members, std::vector<Cost> costs)
      : members_(std::move(members)), costs_(std::move(costs)) {
    if (members_.size() != costs_.size()) throw std::invalid_argument("member/cost size mismatch");
    for (const auto& c : costs_) {
      if (c < Cost(0)) throw std::invalid_argument("negative cover cost");
    }
    suffix_union_.assign(members_.size() + 1, 0);
    for (std::size_t i = members_.size(); i-- > 0;) {
      suffix_union_[i] = suffix_union_[i + 1] | members_[i];
    }
  }

  const std::vector<ElementMask>& members() const noexcept { return members_; }
  const std::vector<Cost>& costs() const noexcept { return costs_; }

  /// Minimum cost to cover `uncovered`, or nullopt if the members cannot.
  std::optional<Cost> min_cost(ElementMask uncovered) {
    if (uncovered == 0) return Cost(0);
    if (auto it = memo_.find(uncovered); it != memo_.end()) return it->second;

    // Branch on the lowest uncovered element: some chosen member must hold it.
    const ElementMask low = uncovered & (~uncovered + 1);
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (members_[i] & low) candidates.push_back(i);
    }
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      return std::popcount(members_[a] & uncovered) > std::popcount(members_[b] & uncovered);
    });

    std::optional<Cost> best;
    for (std::size_t i : candidates) {
      if (best && !CostTraits<Cost>::less(costs_[i], *best)) continue;
      auto rest = min_cost(uncovered & ~members_[i]);
      if (!rest) continue;
      Cost total = costs_[i] + *rest;
      if (!best || CostTraits<Cost>::less(total, *best)) best = total;
    }
    memo_.emplace(uncovered, best);
    return best;
  }

  std::optional<CoverResult<Cost>> solve(ElementMask target) {
    auto opt = min_cost(target);
    if (!opt) return std::nullopt;
    CoverResult<Cost> result;
    result.cost = *opt;
    if (target == 0) return result;

    std::vector<std::size_t> chosen;
    bool found = false;
    // Depth-first in ascending index order visits index lists in
    // lexicographic order, so the first irredundant optimum found wins.
    auto dfs = [&](auto&& self, std::size_t start, ElementMask covered, const Cost& cost) -> void {
      if ((target & ~covered) == 0) {
        if (CostTraits<Cost>::equal(cost, *opt) && detail::irredundant<Cost>(chosen, members_, target)) {
          result.chosen = chosen;
          result.cost = cost;
          found = true;
        }
        return;
      }
      for (std::size_t i = start; i < members_.size() && !found; ++i) {
        if ((target & ~(covered | suffix_union_[i])) != 0) break;
        const ElementMask gain = members_[i] & target & ~covered;
        if (gain == 0) continue;
        const ElementMask next = covered | members_[i];
        Cost next_cost = cost + costs_[i];
        auto bound = min_cost(target & ~next);
        if (!bound || CostTraits<Cost>::less(*opt, next_cost + *bound)) continue;
        chosen.push_back(i);
        self(self, i + 1, next, next_cost);
        chosen.pop_back();
      }
    };
    dfs(dfs, 0, 0, Cost(0));
    if (!found) throw std::logic_error("cover witness search failed to reach the optimum");
    return result;
  }

 private:
  std::vector<ElementMask> members_;
  std::vector<Cost> costs_;
  std::vector<ElementMask> suffix_union_;
  std::unordered_map<ElementMask, std::optional<Cost>> memo_;
};

inline constexpr std::size_t kMaxExhaustiveMembers = 20;

/// Enumerates all 2^k subcollections. Same contract as MinCoverSolver::solve;
/// kept free of any shared code path so it can serve as its oracle.
template <class Cost>
std::optional<CoverResult<Cost>> min_cover_exhaustive(ElementMask target,
                                                      const std::vector<ElementMask>& members,
                                                      const std::vector<Cost>& costs) {
  const std::size_t k = members.size();
  if (k > kMaxExhaustiveMembers) throw std::length_error("too many members for exhaustive enumeration");
  std::optional<CoverResult<Cost>> best;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << k); ++pick) {
    ElementMask uni = 0;
    Cost sum(0);
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < k; ++i) {
      if ((pick >> i) & 1u) {
        uni |= members[i];
        sum = sum + costs[i];
        chosen.push_back(i);
      }
    }
    if ((target & ~uni) != 0) continue;
    if (!detail::irredundant<Cost>(chosen, members, target)) continue;
    if (!best || CostTraits<Cost>::less(sum, best->cost) ||
        (CostTraits<Cost>::equal(sum, best->cost) && chosen < best->chosen)) {
      best = CoverResult<Cost>{std::move(chosen), sum};
    }
  }
  return best;
}

}  // namespace quasi
