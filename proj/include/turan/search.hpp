#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace turan {

/// Outcome of a certificate search. `free` is only ever reported after the
/// whole space was exhausted; a search cut short by its node budget is
/// `inconclusive`.
enum class Verdict { certificate, free, inconclusive };

constexpr std::string_view name(Verdict v)
{
    switch (v) {
    case Verdict::certificate:
        return "certificate";
    case Verdict::free:
        return "free";
    case Verdict::inconclusive:
        return "inconclusive";
    }
    return "?";
}

/// Result of searching one top-level branch with a node cap.
struct BranchOutcome {
    bool found = false;
    bool exhausted = false; ///< branch fully explored without a solution
    std::uint64_t nodes = 0;
};

struct BatchDecision {
    enum class State { undecided, success, out_of_budget } state = State::undecided;
    std::size_t index = 0;   ///< winning branch within the batch when state == success
    std::uint64_t nodes = 0; ///< nodes charged, as a sequential search would have spent them
    std::size_t branches = 0;
};

/// Folds a batch of branch outcomes (each searched with cap >= remaining)
/// in branch order, reproducing exactly what a sequential search with
/// `remaining` nodes left would have concluded. This keeps verdicts and
/// certificates independent of how many workers explored the batch.
BatchDecision decide_batch(std::span<const BranchOutcome> batch, std::uint64_t remaining);

} // namespace turan
