// SPDX-License-Identifier: Apache-2.0
#include "comerge/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <string>

namespace comerge {

namespace {

constexpr std::array<char, 4> k_magic = {'C', 'R', 'M', 'G'};
constexpr std::uint8_t k_version = 1;

std::uint64_t decode_u64le(const unsigned char* p) {
    std::uint64_t x = 0;
    for (int i = 7; i >= 0; --i)
        x = (x << 8) | p[i];
    return x;
}

void encode_u64le(std::uint64_t x, unsigned char* p) {
    for (int i = 0; i < 8; ++i) {
        p[i] = static_cast<unsigned char>(x & 0xff);
        x >>= 8;
    }
}

std::vector<key_t> parse_text(const std::string& contents, const std::filesystem::path& path) {
    std::vector<key_t> keys;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < contents.size()) {
        std::size_t eol = contents.find('\n', pos);
        if (eol == std::string::npos)
            eol = contents.size();
        ++line_no;
        std::size_t end = eol;
        if (end > pos && contents[end - 1] == '\r')
            --end;
        if (end > pos) {  // blank lines are tolerated
            key_t value = 0;
            const char* first = contents.data() + pos;
            const char* last = contents.data() + end;
            const auto [parse_end, ec] = std::from_chars(first, last, value);
            if (ec != std::errc{} || parse_end != last)
                throw io_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected one unsigned decimal integer per line");
            keys.push_back(value);
        }
        pos = eol + 1;
    }
    return keys;
}

std::vector<key_t> parse_binary(const std::string& contents, const std::filesystem::path& path) {
    constexpr std::size_t header_size = 4 + 1 + 1 + 8;
    if (contents.size() < header_size)
        throw io_error(path.string() + ": truncated header");
    const auto* bytes = reinterpret_cast<const unsigned char*>(contents.data());
    if (bytes[4] != k_version)
        throw io_error(path.string() + ": unsupported format version " +
                       std::to_string(bytes[4]));
    const std::uint64_t count = decode_u64le(bytes + 6);
    const std::uint64_t payload = contents.size() - header_size;
    if (payload % 8 != 0 || payload / 8 != count)
        throw io_error(path.string() + ": declared key count does not match payload length");
    std::vector<key_t> keys(static_cast<std::size_t>(count));
    for (std::size_t t = 0; t < keys.size(); ++t)
        keys[t] = decode_u64le(bytes + header_size + 8 * t);
    return keys;
}

}  // namespace

key_file read_key_file(const std::filesystem::path& path, bool validate) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error(path.string() + ": cannot open for reading");
    std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw io_error(path.string() + ": read failed");

    key_file result;
    const bool is_binary =
        contents.size() >= k_magic.size() &&
        std::memcmp(contents.data(), k_magic.data(), k_magic.size()) == 0;
    if (is_binary) {
        result.format = file_format::binary;
        result.keys = parse_binary(contents, path);
    } else {
        result.format = file_format::text;
        result.keys = parse_text(contents, path);
    }
    if (validate && !std::ranges::is_sorted(result.keys))
        throw std::invalid_argument(path.string() + ": keys are not nondecreasing");
    return result;
}

void write_key_file(const std::filesystem::path& path, std::span<const key_t> keys,
                    file_format format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw io_error(path.string() + ": cannot open for writing");

    if (format == file_format::binary) {
        std::array<unsigned char, 14> header{};
        std::memcpy(header.data(), k_magic.data(), k_magic.size());
        header[4] = k_version;
        header[5] = 0;  // flags
        encode_u64le(keys.size(), header.data() + 6);
        out.write(reinterpret_cast<const char*>(header.data()),
                  static_cast<std::streamsize>(header.size()));
        std::array<unsigned char, 8> word{};
        for (const key_t k : keys) {
            encode_u64le(k, word.data());
            out.write(reinterpret_cast<const char*>(word.data()), word.size());
        }
    } else {
        std::array<char, 24> digits{};
        for (const key_t k : keys) {
            const auto [end, ec] = std::to_chars(digits.data(), digits.data() + digits.size(), k);
            *end = '\n';
            out.write(digits.data(), end + 1 - digits.data());
        }
    }
    out.flush();
    if (!out)
        throw io_error(path.string() + ": write failed");
}

}  // namespace comerge
