// Shared file framing: one JSON manifest line, then length-prefixed raw blocks
// of little-endian f32 (8-byte little-endian element count before each block).

#pragma once

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ogcb::io {

static_assert(std::endian::native == std::endian::little,
              "file formats assume a little-endian host");

struct truncated_error : std::runtime_error {
    explicit truncated_error(const std::string& what) : std::runtime_error(what) {}
};

struct version_error : std::runtime_error {
    explicit version_error(const std::string& what) : std::runtime_error(what) {}
};

struct shape_error : std::runtime_error {
    explicit shape_error(const std::string& what) : std::runtime_error(what) {}
};

void write_block_f32(std::ostream& out, const float* data, std::uint64_t count);

// Reads one block; throws shape_error when the stored count differs from
// expected, truncated_error when the stream ends early.
std::vector<float> read_block_f32(std::istream& in, std::uint64_t expected_count);

// Reads the manifest line (without the newline); throws truncated_error on EOF.
std::string read_manifest_line(std::istream& in);

// Throws shape_error if any bytes remain.
void expect_eof(std::istream& in);

} // namespace ogcb::io
