#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "apnlab/functions.hpp"

namespace apnlab {

class TableFormatError : public std::runtime_error {
public:
    TableFormatError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct TableFile {
    FunctionTable table;
    unsigned k = 0;  // 0 when the table has no family provenance
    std::optional<std::uint32_t> alpha;
};

// APNTBL v1: one ASCII header line
//   APNTBL v1 m=<m> k=<k> alpha=<hex>|-
// followed by 2^(2m) lines "<hex_f1> <hex_f2>" in index order. Hex values are
// lowercase without a 0x prefix or leading zeros; k=0 and alpha=- mark tables
// without family provenance. The encoding is bit-exact: writing and re-reading
// reproduces the byte stream.
void write_table(std::ostream& os, const FunctionTable& t, unsigned k = 0,
                 std::optional<std::uint32_t> alpha = std::nullopt);

// Throws TableFormatError with a 1-based line number on malformed input.
TableFile read_table(std::istream& is);

void write_table_file(const std::string& path, const FunctionTable& t,
                      unsigned k = 0,
                      std::optional<std::uint32_t> alpha = std::nullopt);
TableFile read_table_file(const std::string& path);

}  // namespace apnlab
