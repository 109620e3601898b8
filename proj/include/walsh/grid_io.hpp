#pragma once

// Grid file formats.
//
// Text v1:   "walsh-grid <dims> N=<bits>" (or "walsh-spec ..."), then one row
//            per line of space-separated decimals, row-major for 2D.
// Binary:    16-byte header, 8-byte magic "WALSHGRD" / "WALSHSPC", uint32 dims,
//            uint32 N (little endian), followed by little-endian float64 values.

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "walsh/dyadic.hpp"
#include "walsh/transform.hpp"

namespace walsh::io {

enum class Payload { grid, spectrum };
enum class Encoding { text, binary };

struct GridFile {
  Payload payload = Payload::grid;
  int dims = 2;
  Resolution resolution;
  std::vector<double> values;

  Grid1D as_grid1d() const;
  Grid2D as_grid2d() const;
};

GridFile from(const Grid1D& g);
GridFile from(const Grid2D& g);
GridFile from(const Spectrum1D& s);
GridFile from(const Spectrum2D& s);

void write_text(std::ostream& os, const GridFile& f);
void write_binary(std::ostream& os, const GridFile& f);
/// Detects the encoding from the first bytes.
GridFile read(std::istream& is);

void save(const std::filesystem::path& path, const GridFile& f, Encoding enc);
GridFile load(const std::filesystem::path& path);

}  // namespace walsh::io
