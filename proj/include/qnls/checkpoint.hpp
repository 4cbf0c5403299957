#pragma once

#include <filesystem>
#include <vector>

#include "qnls/field.hpp"

namespace qnls {

/// Parameter header stored next to the field data.
struct CheckpointMeta {
  double kappa = 1.0;
  double omega = 0.0;
  std::vector<double> c;
};

struct Checkpoint {
  FieldPair pair;
  CheckpointMeta meta;
};

inline constexpr char kCheckpointMagic[6] = {'Q', 'N', 'L', 'S', 'F', '1'};
inline constexpr unsigned short kCheckpointVersion = 1;

/// Layout (little-endian): "QNLSF1", u16 version, u8 d, d x u64 points,
/// d x f64 box, f64 kappa, f64 omega, d x f64 c, u8 gauge, then u and v as
/// interleaved (re, im) f64 pairs.
void save_pair(const FieldPair& p, const CheckpointMeta& meta, const std::filesystem::path& path);
Checkpoint load_pair(const std::filesystem::path& path,
                     std::size_t max_points = Grid::kDefaultMaxPoints);

}  // namespace qnls
