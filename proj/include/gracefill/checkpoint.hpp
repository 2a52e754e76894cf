#pragma once

#include <filesystem>

#include "gracefill/train.hpp"

namespace gracefill {

/// Model checkpoint: versioned flat binary holding a config echo plus
/// every parameter array with its shape. Doubles are raw little-endian
/// IEEE 754, so save/load round-trips bit-exactly and identical runs
/// produce identical files.
struct Checkpoint {
    TrainConfig config;
    ModelParams params;
};

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace gracefill
