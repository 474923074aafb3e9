#ifndef CDW_HARNESS_HPP
#define CDW_HARNESS_HPP

#include <string>

#include "cdw/config.hpp"

namespace cdw {

struct RunOutcome {
    int exit_status = 0;     // 0 on success; first failing child's class otherwise
    std::string out_dir;
    std::string error;       // empty on success
};

// Executes one experiment (or a sweep of children), writing the module CSVs
// plus meta.txt into the output directory. Never throws for module-level
// failures; those end up in the outcome and in <out>/error.txt.
RunOutcome run(const RunConfig& config);

// Library version string recorded in meta.txt.
std::string version_string();

} // namespace cdw

#endif
