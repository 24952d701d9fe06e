#pragma once

#include <filesystem>
#include <iosfwd>

#include "mpmm/tuner.hpp"

namespace mpmm {

// Line-oriented tuning table, version 1:
//
//   mpmmtune v1
//   host <free text>
//   total_time <hex>
//   prediction_phase_time <hex>
//   <kind,bits> <n> <threads> <best_nmin> <t_block> <t_predphase> <t_predicted> <reldiff> <t_simple|-> <t_strassen> <winner>
//   threshold <kind,bits> <threads> <n*|none>
//   gap <kind,bits> <n> <threads> <reason...>
//
// Times are C99 hex floats so values round-trip bit-exactly. Blank lines
// and lines starting with '#' are ignored. Winner is written as in
// to_string(AlgorithmChoice).
inline constexpr const char* kTuningTableHeader = "mpmmtune v1";

void write_table(std::ostream& out, const TuningTable& table);
// Throws FormatError on a bad header, unknown version, or malformed line.
TuningTable read_table(std::istream& in);

// Throw IoError when the file cannot be opened or written.
void save_table(const TuningTable& table, const std::filesystem::path& path);
TuningTable load_table(const std::filesystem::path& path);

}  // namespace mpmm
