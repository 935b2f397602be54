#pragma once

// The concc command line. Every subcommand produces a versioned JSON report
// (format "concc-report") with per-check statuses, exact results, embedded
// certificates and a separate "timings" object.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace concc::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 2;
inline constexpr int exit_unknown = 3;
inline constexpr int exit_usage = 64;

using Json = nlohmann::ordered_json;

// Runs a full command line (args exclude the program name). The report goes
// to `out` unless --out is given.
int run(std::vector<std::string> const& args, std::ostream& out,
        std::ostream& err);

// Subcommand bodies; each returns a complete report.
Json verify_hyp_spec_gen(std::size_t scale);
Json tower_build(std::string const& mode, std::size_t classes,
                 std::size_t stages, long long bound, bool gadget);
Json tower_verify(Json const& file);
Json check_klein_bottle();
Json check_bs12();
Json relpaths_audit(std::uint64_t seed, std::size_t instances);
Json smallcanc_pieces(std::string const& presentation, std::size_t scale);
// Replays the certificates embedded in a report or tower file.
Json reverify(Json const& file);

// 0 pass, 2 any fail, 3 unknown without fail.
int exit_code(Json const& report);
// The report without its "timings" object, for determinism checks.
Json without_timings(Json report);

}  // namespace concc::cli
