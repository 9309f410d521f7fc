#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bumpfn {

// Shortest decimal string that round-trips to the same double.
// Non-finite values print as "inf", "-inf" and "nan".
std::string format_double(double x);

// Left-aligned text table with two-space column gaps.
void write_table(std::ostream& os, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows);

}  // namespace bumpfn
