// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "comerge/keys.hpp"

// Key files come in two formats:
//
//   text     one decimal integer per line, newline-delimited
//   binary   magic "CRMG" | version u8 (=1) | flags u8 | count u64 LE
//            | count keys, u64 LE each
//
// Readers detect the format from the magic bytes. Keys must be
// nondecreasing; loading validates that unless told not to.
//
// Malformed or unreadable files raise io_error; unsorted key data raises
// std::invalid_argument.

namespace comerge {

enum class file_format { text, binary };

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct key_file {
    std::vector<key_t> keys;
    file_format format = file_format::text;
};

key_file read_key_file(const std::filesystem::path& path, bool validate = true);

void write_key_file(const std::filesystem::path& path, std::span<const key_t> keys,
                    file_format format);

}  // namespace comerge
