#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blf::cli {

/// Runs the blform command line. Exit 0 for positive outcomes (SUFFICIENT,
/// CONSISTENT, valid certificate, computed values), 2 for certified negative
/// or unvalidated findings (NECESSARY_FAIL, UNBOUNDED_WITNESS, violated
/// condition sets, INCONCLUSIVE), 1 for input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blf::cli
