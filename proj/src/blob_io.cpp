#include "ogcb/blob_io.hpp"

#include <cstring>
#include <istream>
#include <ostream>

namespace ogcb::io {

void write_block_f32(std::ostream& out, const float* data, std::uint64_t count) {
    out.write(reinterpret_cast<const char*>(&count), sizeof(count));
    out.write(reinterpret_cast<const char*>(data),
              static_cast<std::streamsize>(count * sizeof(float)));
}

std::vector<float> read_block_f32(std::istream& in, std::uint64_t expected_count) {
    std::uint64_t count = 0;
    in.read(reinterpret_cast<char*>(&count), sizeof(count));
    if (in.gcount() != sizeof(count))
        throw truncated_error("block header truncated");
    if (count != expected_count)
        throw shape_error("block length " + std::to_string(count) +
                          " does not match expected " +
                          std::to_string(expected_count));
    std::vector<float> data(count);
    if (count > 0) {
        const std::streamsize bytes =
            static_cast<std::streamsize>(count * sizeof(float));
        in.read(reinterpret_cast<char*>(data.data()), bytes);
        if (in.gcount() != bytes)
            throw truncated_error("block data truncated");
    }
    return data;
}

std::string read_manifest_line(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw truncated_error("missing manifest line");
    return line;
}

void expect_eof(std::istream& in) {
    char c;
    in.read(&c, 1);
    if (in.gcount() != 0)
        throw shape_error("unexpected trailing bytes");
}

} // namespace ogcb::io
