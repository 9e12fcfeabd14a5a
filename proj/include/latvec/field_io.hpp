#pragma once

// Field dump format, for cross-implementation checks. One ASCII header line
//
//   LQCDFLD1 <kind:spinor|gauge> <prec:f64|f32> <Lx> <Ly> <Lz> <Lt>\n
//
// followed by the raw reals little-endian in scalar lexicographic order
// (site-major x-fastest; spinor: spin, color, re, im; gauge: direction,
// row-major 3x3, re, im).

#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "latvec/fields.hpp"
#include "latvec/simd.hpp"

namespace latvec {

struct DumpHeader {
  std::string kind; // "spinor" or "gauge"
  ElemKind prec = ElemKind::f64;
  std::array<int, 4> dims{};
};

namespace detail {

template <typename T>
void write_real_le(std::ostream& os, T v) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U bits = std::bit_cast<U>(v);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    os.put(static_cast<char>(bits & 0xff));
    bits >>= 8;
  }
}

template <typename T>
T read_real_le(std::istream& is) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    const int ch = is.get();
    if (ch < 0) throw std::runtime_error("field dump truncated");
    bits |= static_cast<U>(static_cast<unsigned char>(ch)) << (8 * i);
  }
  return std::bit_cast<T>(bits);
}

template <typename T>
void write_dump(std::ostream& os, const char* kind, const Geometry& g,
                const std::vector<std::complex<T>>& data) {
  os << "LQCDFLD1 " << kind << ' ' << to_string(kind_of<T>()) << ' ' << g.dims[0] << ' '
     << g.dims[1] << ' ' << g.dims[2] << ' ' << g.dims[3] << '\n';
  for (const auto& z : data) {
    write_real_le(os, z.real());
    write_real_le(os, z.imag());
  }
  if (!os) throw std::runtime_error("field dump write failed");
}

} // namespace detail

inline DumpHeader read_dump_header(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("field dump missing header");
  std::istringstream ss(line);
  std::string magic, kind, prec;
  DumpHeader h;
  ss >> magic >> kind >> prec >> h.dims[0] >> h.dims[1] >> h.dims[2] >> h.dims[3];
  if (!ss || magic != "LQCDFLD1" || (kind != "spinor" && kind != "gauge") ||
      (prec != "f64" && prec != "f32"))
    throw std::runtime_error("not a field dump: bad header line");
  h.kind = kind;
  h.prec = prec == "f64" ? ElemKind::f64 : ElemKind::f32;
  return h;
}

template <typename T>
void write_spinor_dump(std::ostream& os, const SpinorField<T>& psi) {
  detail::write_dump(os, "spinor", psi.geometry, psi.data);
}

template <typename T>
void write_gauge_dump(std::ostream& os, const GaugeField<T>& u) {
  detail::write_dump(os, "gauge", u.geometry, u.data);
}

template <typename T>
SpinorField<T> read_spinor_dump(std::istream& is) {
  const DumpHeader h = read_dump_header(is);
  if (h.kind != "spinor" || h.prec != kind_of<T>())
    throw std::runtime_error("field dump kind or precision mismatch");
  SpinorField<T> psi(make_geometry(h.dims));
  for (auto& z : psi.data)
    z = {detail::read_real_le<T>(is), detail::read_real_le<T>(is)};
  return psi;
}

template <typename T>
GaugeField<T> read_gauge_dump(std::istream& is) {
  const DumpHeader h = read_dump_header(is);
  if (h.kind != "gauge" || h.prec != kind_of<T>())
    throw std::runtime_error("field dump kind or precision mismatch");
  GaugeField<T> u(make_geometry(h.dims));
  for (auto& z : u.data)
    z = {detail::read_real_le<T>(is), detail::read_real_le<T>(is)};
  return u;
}

template <typename T>
void write_spinor_dump_file(const std::string& path, const SpinorField<T>& psi) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open dump file for writing: " + path);
  write_spinor_dump(os, psi);
}

template <typename T>
SpinorField<T> read_spinor_dump_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open dump file: " + path);
  return read_spinor_dump<T>(is);
}

template <typename T>
void write_gauge_dump_file(const std::string& path, const GaugeField<T>& u) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open dump file for writing: " + path);
  write_gauge_dump(os, u);
}

template <typename T>
GaugeField<T> read_gauge_dump_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open dump file: " + path);
  return read_gauge_dump<T>(is);
}

} // namespace latvec
