#pragma once

#include "turan/notion.hpp"
#include "turan/palette.hpp"
#include "turan/rational.hpp"
#include "turan/search.hpp"

#include <string>
#include <vector>

namespace turan {

/// One lower-bound row: palette P with density d in notion * and F not
/// representable in P give pi_*(F) >= d. Rows expecting a certificate
/// instead record that P does not bound F.
struct TableEntry {
    std::string family;  ///< name understood by named()
    std::string display; ///< e.g. "K₄⁽³⁾⁻"
    std::string palette; ///< builtin name
    Notion notion;
    Rational density;         ///< expected palette density in `notion`
    Verdict expected;         ///< free for a bound, certificate otherwise
};

struct TableRow {
    TableEntry entry;
    Rational density; ///< measured
    RepresentabilityResult result;
    bool pending = false;  ///< budget ran out before a verdict
    bool matches = false;  ///< measured density and verdict agree with the entry (pending counts as agreeing)
    std::string statement; ///< e.g. "π⋯(K₄⁽³⁾⁻) ≥ 1/4 certified"
};

/// Known lower bounds and witnesses, one row per (family, palette, notion).
std::vector<TableEntry> bounds_table();

TableRow run_table_entry(const TableEntry& entry, const SearchOptions& options = {});

} // namespace turan
