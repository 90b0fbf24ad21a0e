///////////////////////////////////////////////////////////////////////////////
// cli.hpp: simulate / track / evaluate / sweep subcommands.
// Exit codes: 0 ok, 2 usage or validation error, 3 runtime error.
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace radtrack::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;

void cmd_simulate(const std::filesystem::path& config, const std::filesystem::path& out_dir);

void cmd_track(const std::filesystem::path& frames, const std::optional<std::filesystem::path>& ego,
               const std::filesystem::path& config, const std::filesystem::path& out);

void cmd_evaluate(const std::filesystem::path& tracks, const std::filesystem::path& gt,
                  const std::filesystem::path& config, const std::filesystem::path& report);

/// Grid CSV header: w_dis,w_vel,w_area,w_overlap,w_amp,gate
void cmd_sweep(const std::filesystem::path& frames, const std::optional<std::filesystem::path>& ego,
               const std::filesystem::path& gt, const std::filesystem::path& config,
               const std::filesystem::path& grid, const std::filesystem::path& out);

/// Parses `args` (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace radtrack::cli
