#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gracefill/train.hpp"
#include "gracefill/types.hpp"

namespace gracefill {

/// Format a double with 17 significant digits (round-trippable).
std::string format_g17(double v);

/// `index,value` series dump; rereads to the same values bit-exactly.
void write_series_csv(const std::vector<double>& values, const std::filesystem::path& path);
std::vector<double> read_series_csv(const std::filesystem::path& path);

/// `epoch,loss,mae,val_loss,val_mae`
void write_history_csv(const TrainHistory& history, const std::filesystem::path& path);
TrainHistory read_history_csv(const std::filesystem::path& path);

}  // namespace gracefill
