#include "walsh/grid_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace walsh::io {
namespace {

constexpr std::array<char, 8> kGridMagic{'W', 'A', 'L', 'S', 'H', 'G', 'R', 'D'};
constexpr std::array<char, 8> kSpecMagic{'W', 'A', 'L', 'S', 'H', 'S', 'P', 'C'};

static_assert(std::endian::native == std::endian::little, "binary grid I/O assumes a little-endian host");

std::size_t expected_count(int dims, Resolution r) { return dims == 1 ? r.cells() : r.cells() * r.cells(); }

void check_shape(const GridFile& f) {
  if (f.dims != 1 && f.dims != 2) throw std::invalid_argument("grid dims must be 1 or 2");
  if (f.values.size() != expected_count(f.dims, f.resolution)) throw std::invalid_argument("grid payload size mismatch");
}

void put_u32(std::ostream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), sizeof v); }

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw std::runtime_error("truncated grid header");
  return v;
}

GridFile read_binary(std::istream& is) {
  std::array<char, 8> magic{};
  if (!is.read(magic.data(), magic.size())) throw std::runtime_error("truncated grid header");
  GridFile f;
  if (magic == kGridMagic)
    f.payload = Payload::grid;
  else if (magic == kSpecMagic)
    f.payload = Payload::spectrum;
  else
    throw std::runtime_error("bad grid magic");
  f.dims = static_cast<int>(get_u32(is));
  const auto bits = get_u32(is);
  if (bits > static_cast<std::uint32_t>(kMaxResolution)) throw std::runtime_error("grid resolution out of range");
  f.resolution = Resolution(static_cast<int>(bits));
  if (f.dims != 1 && f.dims != 2) throw std::runtime_error("grid dims must be 1 or 2");
  f.values.resize(expected_count(f.dims, f.resolution));
  if (!is.read(reinterpret_cast<char*>(f.values.data()), static_cast<std::streamsize>(f.values.size() * sizeof(double))))
    throw std::runtime_error("truncated grid payload");
  return f;
}

GridFile read_text(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("empty grid file");
  std::istringstream hs(header);
  std::string tag, dims_tok, n_tok;
  hs >> tag >> dims_tok >> n_tok;
  GridFile f;
  if (tag == "walsh-grid")
    f.payload = Payload::grid;
  else if (tag == "walsh-spec")
    f.payload = Payload::spectrum;
  else
    throw std::runtime_error("unknown grid header tag: " + tag);
  if (dims_tok != "1" && dims_tok != "2") throw std::runtime_error("grid dims must be 1 or 2");
  f.dims = dims_tok[0] - '0';
  if (n_tok.rfind("N=", 0) != 0) throw std::runtime_error("grid header lacks N=<resolution>");
  const int bits = std::stoi(n_tok.substr(2));
  if (bits < 0 || bits > kMaxResolution) throw std::runtime_error("grid resolution out of range");
  f.resolution = Resolution(bits);

  const std::size_t rows = f.dims == 1 ? 1 : f.resolution.cells();
  const std::size_t cols = f.resolution.cells();
  f.values.reserve(rows * cols);
  std::string line;
  for (std::size_t r = 0; r < rows; ++r) {
    if (!std::getline(is, line)) throw std::runtime_error("grid file has too few rows");
    std::istringstream ls(line);
    double v = 0.0;
    std::size_t count = 0;
    while (ls >> v) {
      f.values.push_back(v);
      ++count;
    }
    if (count != cols) throw std::runtime_error("grid row " + std::to_string(r) + " has wrong length");
  }
  return f;
}

}  // namespace

Grid1D GridFile::as_grid1d() const {
  if (dims != 1) throw std::invalid_argument("file holds a 2D payload");
  return Grid1D(resolution, values);
}

Grid2D GridFile::as_grid2d() const {
  if (dims != 2) throw std::invalid_argument("file holds a 1D payload");
  return Grid2D(resolution, values);
}

GridFile from(const Grid1D& g) { return {Payload::grid, 1, g.resolution(), {g.values().begin(), g.values().end()}}; }
GridFile from(const Grid2D& g) { return {Payload::grid, 2, g.resolution(), {g.values().begin(), g.values().end()}}; }
GridFile from(const Spectrum1D& s) { return {Payload::spectrum, 1, s.resolution, s.coeffs}; }
GridFile from(const Spectrum2D& s) { return {Payload::spectrum, 2, s.resolution, s.coeffs}; }

void write_text(std::ostream& os, const GridFile& f) {
  check_shape(f);
  os << (f.payload == Payload::grid ? "walsh-grid " : "walsh-spec ") << f.dims << " N=" << f.resolution.bits << '\n';
  const std::size_t cols = f.resolution.cells();
  char buf[32];
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", f.values[i]);
    os << buf << ((i + 1) % cols == 0 ? '\n' : ' ');
  }
}

void write_binary(std::ostream& os, const GridFile& f) {
  check_shape(f);
  const auto& magic = f.payload == Payload::grid ? kGridMagic : kSpecMagic;
  os.write(magic.data(), magic.size());
  put_u32(os, static_cast<std::uint32_t>(f.dims));
  put_u32(os, static_cast<std::uint32_t>(f.resolution.bits));
  os.write(reinterpret_cast<const char*>(f.values.data()), static_cast<std::streamsize>(f.values.size() * sizeof(double)));
}

GridFile read(std::istream& is) {
  const int first = is.peek();
  if (first == 'W') return read_binary(is);
  if (first == 'w') return read_text(is);
  throw std::runtime_error("unrecognised grid file");
}

void save(const std::filesystem::path& path, const GridFile& f, Encoding enc) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  if (enc == Encoding::text)
    write_text(os, f);
  else
    write_binary(os, f);
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

GridFile load(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return read(is);
}

}  // namespace walsh::io
