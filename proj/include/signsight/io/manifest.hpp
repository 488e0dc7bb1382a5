#pragma once

#include <filesystem>
#include <optional>

#include "signsight/pipeline.hpp"

namespace signsight::io {

/// Environment variable naming the default sign-library directory.
inline constexpr const char* kLibraryEnv = "SIGNSIGHT_LIBRARY";

/// Reads `library.toml` in `dir`: one `[[type]]` per sign type with `name`,
/// `panel` (point-cloud file), and optional `sd_design_speeds` / `sd_values`
/// rows. Standard areas are computed with `params`.
SignLibrary load_sign_library(const std::filesystem::path& dir, const ModelParams& params);

/// Applies `key = value` lines (values may carry unit tags, '#' comments
/// allowed) on top of `params`. Errors carry file:line.
void apply_params_file(const std::filesystem::path& path, ModelParams& params);

/// Loads and validates a scene manifest. `params_file`, when given, is
/// applied after the manifest's own settings.
Scene load_scene(const std::filesystem::path& manifest,
                 const std::optional<std::filesystem::path>& params_file = std::nullopt);

}  // namespace signsight::io
