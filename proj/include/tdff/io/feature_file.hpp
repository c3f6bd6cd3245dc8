#ifndef TDFF_IO_FEATURE_FILE_HPP
#define TDFF_IO_FEATURE_FILE_HPP

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "tdff/detail/binary.hpp"
#include "tdff/embedding.hpp"
#include "tdff/errors.hpp"

namespace tdff::io {

// Feature file layout (all integers little-endian):
//
//   magic   4 bytes  "TDFF"
//   version u16      currently 1
//   dim     u32      > 0
//   count   u64
//   records count x { id_len u32, id bytes (UTF-8), dim x float32 }
//
// Records are written in ascending media id order so that equal maps
// produce byte-identical files.

inline constexpr char kFeatureMagic[4] = {'T', 'D', 'F', 'F'};
inline constexpr std::uint16_t kFeatureVersion = 1;

using FeatureMap = std::map<std::string, EmbeddingVector>;

inline void write_feature_file(std::ostream& os, const FeatureMap& features, std::uint32_t dim) {
    if (dim == 0) throw Error("feature file: dim must be > 0");
    detail::put_bytes(os, kFeatureMagic, 4);
    detail::write_u16(os, kFeatureVersion);
    detail::write_u32(os, dim);
    detail::write_u64(os, static_cast<std::uint64_t>(features.size()));
    for (const auto& [media_id, vec] : features) {
        if (vec.size() != dim) {
            throw DimMismatchError("feature file: media " + media_id + " has dim " +
                                   std::to_string(vec.size()) + ", file dim " + std::to_string(dim));
        }
        detail::write_lp_string(os, media_id);
        for (double x : vec) detail::write_f32(os, static_cast<float>(x));
    }
}

inline void write_feature_file(const std::string& path, const FeatureMap& features, std::uint32_t dim) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    write_feature_file(os, features, dim);
}

struct FeatureFileContents {
    std::uint32_t dim = 0;
    FeatureMap features;
};

inline FeatureFileContents read_feature_file(std::istream& is) {
    detail::Reader r(is);
    char magic[4];
    r.read_exact(magic, 4, "magic");
    if (std::memcmp(magic, kFeatureMagic, 4) != 0) {
        throw BadMagicError("feature file: bad magic");
    }
    const std::uint16_t version = r.read_u16("version");
    if (version != kFeatureVersion) {
        throw UnsupportedVersionError("feature file: version " + std::to_string(version));
    }
    FeatureFileContents out;
    out.dim = r.read_u32("dim");
    if (out.dim == 0) throw ParseError("feature file: dim is 0");
    if (out.dim > detail::kMaxPlausibleDim) {
        throw ParseError("feature file: implausible dim " + std::to_string(out.dim));
    }
    const std::uint64_t count = r.read_u64("count");
    for (std::uint64_t i = 0; i < count; ++i) {
        std::string id = r.read_lp_string("media id");
        EmbeddingVector vec(out.dim);
        for (std::uint32_t k = 0; k < out.dim; ++k) {
            vec[k] = static_cast<double>(r.read_f32("feature value"));
        }
        auto [it, inserted] = out.features.emplace(std::move(id), std::move(vec));
        if (!inserted) throw DuplicateMediaIdError("feature file: duplicate media id " + it->first);
    }
    if (!r.at_eof()) throw ParseError("feature file: trailing data after declared records");
    return out;
}

inline FeatureFileContents read_feature_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path);
    return read_feature_file(is);
}

}  // namespace tdff::io

#endif  // TDFF_IO_FEATURE_FILE_HPP
