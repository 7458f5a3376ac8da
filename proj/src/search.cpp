#include "turan/search.hpp"

namespace turan {

BatchDecision decide_batch(std::span<const BranchOutcome> batch, std::uint64_t remaining)
{
    BatchDecision d;
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const auto& b = batch[i];
        ++d.branches;
        if (b.nodes > remaining - d.nodes) {
            d.state = BatchDecision::State::out_of_budget;
            d.nodes = remaining;
            return d;
        }
        d.nodes += b.nodes;
        if (b.found) {
            d.state = BatchDecision::State::success;
            d.index = i;
            return d;
        }
        if (!b.exhausted) {
            d.state = BatchDecision::State::out_of_budget;
            return d;
        }
    }
    return d;
}

} // namespace turan
