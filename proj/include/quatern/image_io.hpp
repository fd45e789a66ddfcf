#pragma once

#include <string>

#include "quatern/cur.hpp"

namespace quatern {

/// Binary PPM (P6, maxval 255). Channels are scaled to [0,1] on read and
/// rounded back with clamping on write.
QuatImage read_ppm(const std::string& path);
void write_ppm(const std::string& path, const QuatImage& img);

/// Binary PGM (P5, maxval 255) observation masks: 0 = missing, nonzero =
/// observed. Written as 0/255.
Eigen::MatrixXd read_pgm_mask(const std::string& path);
void write_pgm_mask(const std::string& path, const Eigen::MatrixXd& mask);

}  // namespace quatern
