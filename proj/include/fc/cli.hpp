#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace fc {

struct RunConfig {
    std::string command;
    std::string gamma;  // empty: the command's default literal
    std::string mode = "certified";
    std::string manifest = "bundled";
    int parallelism = 1;
    std::optional<std::uint64_t> seed;
    std::string output_dir = "fc-out";
    int refine = 0;
};

inline constexpr int exit_usage = 64;

// Parses argv, runs one subcommand, writes reports under the output directory and a one-line
// summary to out. Returns the process exit code.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fc
