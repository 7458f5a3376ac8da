#include "turan/table.hpp"

namespace turan {

std::vector<TableEntry> bounds_table()
{
    const auto q = [](long long p, long long r) { return Rational(p, r); };
    std::vector<TableEntry> rows = {
        {"k4minus", "K₄⁽³⁾⁻", "tournament", Notion::vvv, q(1, 4), Verdict::free},
        {"k4", "K₄⁽³⁾", "roedl", Notion::vvv, q(1, 2), Verdict::free},
        {"k4", "K₄⁽³⁾", "roedl", Notion::ev, q(1, 2), Verdict::free},
        {"k5", "K₅⁽³⁾", "roedl:3", Notion::vvv, q(2, 3), Verdict::free},
        {"k6", "K₆⁽³⁾", "roedl:4", Notion::vvv, q(3, 4), Verdict::free},
        {"k6", "K₆⁽³⁾", "ramsey6", Notion::vvv, q(3, 4), Verdict::free},
        {"s4", "S₄", "star4", Notion::vvv, q(1, 3), Verdict::free},
        {"c5", "C₅⁽³⁾", "cycle5", Notion::vvv, q(4, 27), Verdict::free},
        {"k5", "K₅⁽³⁾", "ee5", Notion::ee, q(1, 3), Verdict::free},
        {"k6", "K₆⁽³⁾", "ee6", Notion::ee, q(1, 2), Verdict::free},
        {"k5", "K₅⁽³⁾", "ee6", Notion::ee, q(1, 2), Verdict::certificate},
        {"k10", "K₁₀⁽³⁾", "ee11", Notion::ee, q(2, 3), Verdict::certificate},
        {"fano", "Fano", "rainbow", Notion::vvv, q(1, 27), Verdict::certificate},
    };
    const char* subscripts[] = {"₁₁", "₁₂", "₁₃", "₁₄", "₁₅", "₁₆"};
    for (int t = 11; t <= 16; ++t)
        rows.push_back({"k" + std::to_string(t), std::string("K") + subscripts[t - 11] + "⁽³⁾", "ee11", Notion::ee,
                        q(2, 3), Verdict::free});
    return rows;
}

TableRow run_table_entry(const TableEntry& entry, const SearchOptions& options)
{
    TableRow row;
    row.entry = entry;
    const auto p = builtin(entry.palette).palette;
    row.density = density(p, entry.notion);
    row.result = representable(named(entry.family), p, std::nullopt, options);
    row.pending = row.result.verdict == Verdict::inconclusive;
    row.matches = row.density == entry.density && (row.pending || row.result.verdict == entry.expected);

    const std::string pi = "π" + std::string(symbol(entry.notion)) + "(" + entry.display + ")";
    if (row.pending)
        row.statement = pi + " ≥ " + to_string(entry.density) + " pending (budget)";
    else if (row.result.verdict == Verdict::free)
        row.statement = pi + " ≥ " + to_string(row.density) + " certified";
    else if (entry.palette == "rainbow")
        row.statement = entry.display + " has a rainbow reading, consistent with " + pi + " = 0";
    else
        row.statement = entry.display + " is representable in " + entry.palette + ": no bound";
    return row;
}

} // namespace turan
