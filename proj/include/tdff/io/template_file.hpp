#ifndef TDFF_IO_TEMPLATE_FILE_HPP
#define TDFF_IO_TEMPLATE_FILE_HPP

#include <cstdint>
#include <fstream>
#include <string>

#include "tdff/detail/binary.hpp"
#include "tdff/errors.hpp"
#include "tdff/media.hpp"

namespace tdff::io {

// Template record (little-endian): magic "TTPL", version u16,
// template_id, subject_id, encoding count u64, then per encoding:
// source u8 (0 image / 1 pooled video), source_id, frame_count u32,
// dim u32, dim x f64. Vectors are stored as f64 so round-trips are
// bit-exact and encoding order is preserved.

inline constexpr char kTemplateMagic[4] = {'T', 'T', 'P', 'L'};
inline constexpr std::uint16_t kTemplateVersion = 1;

inline void write_template(std::ostream& os, const Template& t) {
    detail::put_bytes(os, kTemplateMagic, 4);
    detail::write_u16(os, kTemplateVersion);
    detail::write_lp_string(os, t.template_id);
    detail::write_lp_string(os, t.subject_id);
    detail::write_u64(os, static_cast<std::uint64_t>(t.encodings.size()));
    for (const MediaEncoding& e : t.encodings) {
        os.put(e.source == EncodingSource::SingleImage ? '\0' : '\1');
        if (!os) throw IoError("write failed");
        detail::write_lp_string(os, e.source_id);
        detail::write_u32(os, e.frame_count);
        detail::write_u32(os, static_cast<std::uint32_t>(e.vector.size()));
        for (double x : e.vector) detail::write_f64(os, x);
    }
}

inline Template read_template(detail::Reader& r) {
    char magic[4];
    r.read_exact(magic, 4, "template magic");
    if (std::memcmp(magic, kTemplateMagic, 4) != 0) throw BadMagicError("template record: bad magic");
    const std::uint16_t version = r.read_u16("template version");
    if (version != kTemplateVersion) {
        throw UnsupportedVersionError("template record: version " + std::to_string(version));
    }
    Template t;
    t.template_id = r.read_lp_string("template id");
    t.subject_id = r.read_lp_string("subject id");
    const std::uint64_t count = r.read_u64("encoding count");
    t.encodings.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        unsigned char src;
        r.read_exact(&src, 1, "encoding source");
        MediaEncoding e;
        e.source = src == 0 ? EncodingSource::SingleImage : EncodingSource::PooledVideo;
        e.source_id = r.read_lp_string("encoding source id");
        e.frame_count = r.read_u32("frame count");
        const std::uint32_t dim = r.read_u32("encoding dim");
        if (dim > detail::kMaxPlausibleDim) {
            throw ParseError("template record: implausible dim " + std::to_string(dim));
        }
        e.vector.resize(dim);
        for (std::uint32_t k = 0; k < dim; ++k) e.vector[k] = r.read_f64("encoding value");
        t.encodings.push_back(std::move(e));
    }
    return t;
}

inline void save_template(const std::string& path, const Template& t) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    write_template(os, t);
}

inline Template load_template(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path);
    detail::Reader r(is);
    return read_template(r);
}

}  // namespace tdff::io

#endif  // TDFF_IO_TEMPLATE_FILE_HPP
