#include "apnlab/table_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace apnlab {

namespace {

void put_hex(std::ostream& os, std::uint32_t v) {
    static const char* digits = "0123456789abcdef";
    char buf[9];
    int i = 8;
    do {
        buf[--i] = digits[v & 0xf];
        v >>= 4;
    } while (v);
    os.write(buf + i, 8 - i);
}

bool parse_hex(const std::string& s, std::uint32_t& out) {
    if (s.empty() || s.size() > 8) return false;
    std::uint32_t v = 0;
    for (char c : s) {
        std::uint32_t d;
        if (c >= '0' && c <= '9') d = static_cast<std::uint32_t>(c - '0');
        else if (c >= 'a' && c <= 'f') d = static_cast<std::uint32_t>(c - 'a' + 10);
        else return false;
        v = (v << 4) | d;
    }
    out = v;
    return true;
}

}  // namespace

void write_table(std::ostream& os, const FunctionTable& t, unsigned k,
                 std::optional<std::uint32_t> alpha) {
    os << "APNTBL v1 m=" << t.m << " k=" << k << " alpha=";
    if (alpha) put_hex(os, *alpha);
    else os << '-';
    os << '\n';
    for (std::uint32_t v : t.values) {
        put_hex(os, pair_lo(t.m, v));
        os << ' ';
        put_hex(os, pair_hi(t.m, v));
        os << '\n';
    }
}

TableFile read_table(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw TableFormatError(1, "empty input");

    std::istringstream hdr(line);
    std::string magic, version, mf, kf, af;
    hdr >> magic >> version >> mf >> kf >> af;
    if (magic != "APNTBL" || version != "v1") {
        throw TableFormatError(1, "expected header 'APNTBL v1 ...'");
    }
    std::string rest;
    if (hdr >> rest) throw TableFormatError(1, "trailing header field '" + rest + "'");
    if (mf.rfind("m=", 0) != 0 || kf.rfind("k=", 0) != 0 || af.rfind("alpha=", 0) != 0) {
        throw TableFormatError(1, "header fields must be m=<m> k=<k> alpha=<hex>|-");
    }

    TableFile out;
    try {
        out.table.m = static_cast<unsigned>(std::stoul(mf.substr(2)));
        out.k = static_cast<unsigned>(std::stoul(kf.substr(2)));
    } catch (const std::exception&) {
        throw TableFormatError(1, "bad integer in header");
    }
    if (out.table.m < 2 || out.table.m > 16) {
        throw TableFormatError(1, "m=" + mf.substr(2) + " out of range [2, 16]");
    }
    const std::string astr = af.substr(6);
    if (astr != "-") {
        std::uint32_t a;
        if (!parse_hex(astr, a)) throw TableFormatError(1, "bad alpha '" + astr + "'");
        out.alpha = a;
    }

    const unsigned m = out.table.m;
    const std::uint64_t count = std::uint64_t{1} << (2 * m);
    const std::uint32_t bound = 1u << m;
    out.table.values.reserve(count);
    std::size_t lineno = 1;
    for (std::uint64_t i = 0; i < count; ++i) {
        ++lineno;
        if (!std::getline(is, line)) {
            throw TableFormatError(lineno, "unexpected end of file; expected " +
                                               std::to_string(count) + " entries");
        }
        const std::size_t sp = line.find(' ');
        if (sp == std::string::npos || line.find(' ', sp + 1) != std::string::npos) {
            throw TableFormatError(lineno, "expected '<hex_f1> <hex_f2>'");
        }
        std::uint32_t f1, f2;
        if (!parse_hex(line.substr(0, sp), f1) || !parse_hex(line.substr(sp + 1), f2)) {
            throw TableFormatError(lineno, "bad hex value");
        }
        if (f1 >= bound || f2 >= bound) {
            throw TableFormatError(lineno, "output coordinate exceeds 2^m - 1");
        }
        out.table.values.push_back(pack_pair(m, f1, f2));
    }
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty()) throw TableFormatError(lineno, "trailing data after table");
    }
    return out;
}

void write_table_file(const std::string& path, const FunctionTable& t, unsigned k,
                      std::optional<std::uint32_t> alpha) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_table(os, t, k, alpha);
    if (!os) throw std::runtime_error("write to '" + path + "' failed");
}

TableFile read_table_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open '" + path + "'");
    return read_table(is);
}

}  // namespace apnlab
