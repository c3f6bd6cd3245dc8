#ifndef TDFF_DETAIL_BINARY_HPP
#define TDFF_DETAIL_BINARY_HPP

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "tdff/errors.hpp"

namespace tdff::detail {

// Little-endian primitives. Values are assembled byte by byte so the on
// disk layout does not depend on host endianness.

/// Upper bound on vector dims accepted from files. Far above any real
/// embedding size; a corrupt dim field fails as a parse error instead of
/// a giant allocation.
inline constexpr std::uint32_t kMaxPlausibleDim = 1u << 24;

inline void put_bytes(std::ostream& os, const void* p, std::size_t n) {
    os.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
    if (!os) throw IoError("write failed");
}

template <typename UInt>
inline void write_uint_le(std::ostream& os, UInt v) {
    unsigned char buf[sizeof(UInt)];
    for (std::size_t i = 0; i < sizeof(UInt); ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    put_bytes(os, buf, sizeof(UInt));
}

inline void write_u16(std::ostream& os, std::uint16_t v) { write_uint_le(os, v); }
inline void write_u32(std::ostream& os, std::uint32_t v) { write_uint_le(os, v); }
inline void write_u64(std::ostream& os, std::uint64_t v) { write_uint_le(os, v); }

inline void write_f32(std::ostream& os, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    write_u32(os, bits);
}

inline void write_f64(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    write_u64(os, bits);
}

inline void write_lp_string(std::ostream& os, const std::string& s) {
    write_u32(os, static_cast<std::uint32_t>(s.size()));
    if (!s.empty()) put_bytes(os, s.data(), s.size());
}

/// Tracks the byte offset so truncation errors can name the exact
/// position at which the data ran out.
class Reader {
public:
    explicit Reader(std::istream& is) : is_(is) {}

    std::uint64_t offset() const { return offset_; }

    void read_exact(void* p, std::size_t n, const char* what) {
        is_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
        const auto got = static_cast<std::size_t>(is_.gcount());
        if (got != n) throw TruncatedError(offset_ + got, what);
        offset_ += n;
    }

    template <typename UInt>
    UInt read_uint_le(const char* what) {
        unsigned char buf[sizeof(UInt)];
        read_exact(buf, sizeof(UInt), what);
        UInt v = 0;
        for (std::size_t i = 0; i < sizeof(UInt); ++i) v |= static_cast<UInt>(buf[i]) << (8 * i);
        return v;
    }

    std::uint16_t read_u16(const char* what) { return read_uint_le<std::uint16_t>(what); }
    std::uint32_t read_u32(const char* what) { return read_uint_le<std::uint32_t>(what); }
    std::uint64_t read_u64(const char* what) { return read_uint_le<std::uint64_t>(what); }

    float read_f32(const char* what) {
        const std::uint32_t bits = read_u32(what);
        float v;
        std::memcpy(&v, &bits, sizeof(v));
        return v;
    }

    double read_f64(const char* what) {
        const std::uint64_t bits = read_u64(what);
        double v;
        std::memcpy(&v, &bits, sizeof(v));
        return v;
    }

    std::string read_lp_string(const char* what) {
        // identifiers are short; a corrupt length field must not turn
        // into a giant allocation before the truncation check fires
        static constexpr std::uint32_t kMaxIdBytes = 1u << 20;
        const std::uint32_t n = read_u32(what);
        if (n > kMaxIdBytes) {
            throw ParseError(std::string(what) + ": implausible string length " + std::to_string(n));
        }
        std::string s(n, '\0');
        if (n > 0) read_exact(s.data(), n, what);
        return s;
    }

    bool at_eof() {
        return is_.peek() == std::istream::traits_type::eof();
    }

private:
    std::istream& is_;
    std::uint64_t offset_ = 0;
};

}  // namespace tdff::detail

#endif  // TDFF_DETAIL_BINARY_HPP
