#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "biphoton/core/errors.hpp"
#include "biphoton/core/field.hpp"

// Matrix container format (little-endian):
//   bytes  0..11  magic "BIPHFIELD2D\0"
//   bytes 12..15  uint32 version (currently 1)
//   bytes 16..23  uint64 n_a (rows)
//   bytes 24..31  uint64 n_b (columns)
//   then n_a*n_b row-major float64 pairs (re, im); real matrices store im = 0.
// Axis metadata travels in a JSON sidecar next to the binary.

namespace biphoton::field_io {

static_assert(std::endian::native == std::endian::little,
              "field binary format is little-endian; big-endian hosts are unsupported");

inline constexpr char magic[12] = {'B', 'I', 'P', 'H', 'F', 'I', 'E', 'L', 'D', '2', 'D', '\0'};
inline constexpr std::uint32_t format_version = 1;

template <class T>
void write_field(const std::filesystem::path& path, const Field2D<T>& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path.string());
    os.write(magic, sizeof(magic));
    std::uint32_t v = format_version;
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
    std::uint64_t na = f.na(), nb = f.nb();
    os.write(reinterpret_cast<const char*>(&na), sizeof(na));
    os.write(reinterpret_cast<const char*>(&nb), sizeof(nb));
    for (const T& val : f.values) {
        complexd c(val);
        double re = c.real(), im = c.imag();
        os.write(reinterpret_cast<const char*>(&re), sizeof(re));
        os.write(reinterpret_cast<const char*>(&im), sizeof(im));
    }
    if (!os) throw IoError("write failed: " + path.string());
}

struct RawField {
    std::uint64_t na = 0, nb = 0;
    std::vector<complexd> values;
};

inline RawField read_raw(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open for reading: " + path.string());
    char m[12];
    is.read(m, sizeof(m));
    if (!is || std::memcmp(m, magic, sizeof(magic)) != 0)
        throw IoError("bad magic in " + path.string());
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (v != format_version)
        throw IoError("unsupported field format version " + std::to_string(v) + " in " +
                      path.string());
    RawField out;
    is.read(reinterpret_cast<char*>(&out.na), sizeof(out.na));
    is.read(reinterpret_cast<char*>(&out.nb), sizeof(out.nb));
    if (!is) throw IoError("truncated header in " + path.string());
    out.values.resize(out.na * out.nb);
    for (auto& c : out.values) {
        double re, im;
        is.read(reinterpret_cast<char*>(&re), sizeof(re));
        is.read(reinterpret_cast<char*>(&im), sizeof(im));
        c = complexd(re, im);
    }
    if (!is) throw IoError("truncated data in " + path.string());
    return out;
}

inline nlohmann::json axis_to_json(const Axis& a) {
    return {{"n", a.n},
            {"spacing", a.spacing},
            {"center", a.center},
            {"domain", axis_domain_name(a.domain)}};
}

inline Axis axis_from_json(const nlohmann::json& j) {
    Axis a;
    a.n = j.at("n").get<int>();
    a.spacing = j.at("spacing").get<double>();
    a.center = j.at("center").get<double>();
    std::string d = j.at("domain").get<std::string>();
    if (d == "frequency") a.domain = AxisDomain::frequency;
    else if (d == "time") a.domain = AxisDomain::time;
    else if (d == "position") a.domain = AxisDomain::position;
    else if (d == "momentum") a.domain = AxisDomain::momentum;
    else throw IoError("unknown axis domain '" + d + "'");
    return a;
}

inline ComplexField2D read_complex_field(const std::filesystem::path& path, Axis a, Axis b) {
    RawField raw = read_raw(path);
    if (raw.na != static_cast<std::uint64_t>(a.n) || raw.nb != static_cast<std::uint64_t>(b.n))
        throw IoError("field dims in " + path.string() + " do not match sidecar axes");
    return ComplexField2D(a, b, std::move(raw.values));
}

inline RealField2D read_real_field(const std::filesystem::path& path, Axis a, Axis b) {
    ComplexField2D c = read_complex_field(path, a, b);
    RealField2D out(a, b);
    for (size_t k = 0; k < c.values.size(); ++k) out.values[k] = c.values[k].real();
    return out;
}

/// Lossy CSV for inspection: complex fields emit interleaved re,im columns.
template <class T>
void export_csv(const std::filesystem::path& path, const Field2D<T>& f) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path.string());
    os << "# axis_a n=" << f.axis_a.n << " spacing=" << f.axis_a.spacing
       << " center=" << f.axis_a.center << " domain=" << axis_domain_name(f.axis_a.domain)
       << "\n";
    os << "# axis_b n=" << f.axis_b.n << " spacing=" << f.axis_b.spacing
       << " center=" << f.axis_b.center << " domain=" << axis_domain_name(f.axis_b.domain)
       << "\n";
    constexpr bool is_complex = std::is_same_v<T, complexd>;
    os.precision(9);
    for (int i = 0; i < f.na(); ++i) {
        for (int j = 0; j < f.nb(); ++j) {
            if (j) os << ',';
            if constexpr (is_complex)
                os << f.at(i, j).real() << ',' << f.at(i, j).imag();
            else
                os << f.at(i, j);
        }
        os << '\n';
    }
    if (!os) throw IoError("write failed: " + path.string());
}

}  // namespace biphoton::field_io
