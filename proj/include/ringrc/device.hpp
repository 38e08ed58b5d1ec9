#pragma once

#include <filesystem>
#include <string>

#include "ringrc/kv_config.hpp"
#include "ringrc/physics.hpp"

namespace ringrc {

/// Reads every MrrParams field (SI units) from a device file. All keys are
/// required except delta_omega (default 0) and absorption_fraction
/// (default 1). The result is validated.
MrrParams device_from(const KeyValueFile& file);

MrrParams load_device(const std::filesystem::path& path);

/// Writes the parameters back in device-file syntax.
std::string device_to_toml(const MrrParams& params);

}  // namespace ringrc
