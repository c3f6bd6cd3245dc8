#ifndef TDFF_IO_MODEL_FILE_HPP
#define TDFF_IO_MODEL_FILE_HPP

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tdff/detail/binary.hpp"
#include "tdff/errors.hpp"
#include "tdff/svm.hpp"

namespace tdff::io {

// Model record layout (little-endian):
//   magic "TSVM", version u16, dim u32, weights dim x f64, bias f64,
//   owner_template lp-string.
// Round-trips bit-exactly.

inline constexpr char kModelMagic[4] = {'T', 'S', 'V', 'M'};
inline constexpr std::uint16_t kModelVersion = 1;

inline void write_svm_model(std::ostream& os, const SvmModel& m) {
    detail::put_bytes(os, kModelMagic, 4);
    detail::write_u16(os, kModelVersion);
    detail::write_u32(os, static_cast<std::uint32_t>(m.weights.size()));
    for (double w : m.weights) detail::write_f64(os, w);
    detail::write_f64(os, m.bias);
    detail::write_lp_string(os, m.owner_template);
}

inline SvmModel read_svm_model(detail::Reader& r) {
    char magic[4];
    r.read_exact(magic, 4, "model magic");
    if (std::memcmp(magic, kModelMagic, 4) != 0) throw BadMagicError("model record: bad magic");
    const std::uint16_t version = r.read_u16("model version");
    if (version != kModelVersion) {
        throw UnsupportedVersionError("model record: version " + std::to_string(version));
    }
    const std::uint32_t dim = r.read_u32("model dim");
    if (dim > detail::kMaxPlausibleDim) {
        throw ParseError("model record: implausible dim " + std::to_string(dim));
    }
    SvmModel m;
    m.weights.resize(dim);
    for (std::uint32_t k = 0; k < dim; ++k) m.weights[k] = r.read_f64("model weight");
    m.bias = r.read_f64("model bias");
    m.owner_template = r.read_lp_string("owner template");
    return m;
}

inline void save_svm_model(const std::string& path, const SvmModel& m) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    write_svm_model(os, m);
}

inline SvmModel load_svm_model(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path);
    detail::Reader r(is);
    return read_svm_model(r);
}

// A model bundle holds every model of one split, each tagged with the
// negative-set role it was trained under.

inline constexpr char kBundleMagic[4] = {'T', 'S', 'V', 'B'};
inline constexpr std::uint16_t kBundleVersion = 1;

/// (role, owner_template) -> model. Ordered so bundles serialize
/// deterministically.
using ModelBundle = std::map<std::pair<int, std::string>, SvmModel>;

inline void write_model_bundle(const std::string& path, const ModelBundle& bundle) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    detail::put_bytes(os, kBundleMagic, 4);
    detail::write_u16(os, kBundleVersion);
    detail::write_u64(os, static_cast<std::uint64_t>(bundle.size()));
    for (const auto& [key, model] : bundle) {
        os.put(static_cast<char>(key.first));
        if (!os) throw IoError("write failed");
        write_svm_model(os, model);
    }
}

inline ModelBundle read_model_bundle(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path);
    detail::Reader r(is);
    char magic[4];
    r.read_exact(magic, 4, "bundle magic");
    if (std::memcmp(magic, kBundleMagic, 4) != 0) throw BadMagicError("model bundle: bad magic");
    const std::uint16_t version = r.read_u16("bundle version");
    if (version != kBundleVersion) {
        throw UnsupportedVersionError("model bundle: version " + std::to_string(version));
    }
    const std::uint64_t count = r.read_u64("bundle count");
    ModelBundle bundle;
    for (std::uint64_t i = 0; i < count; ++i) {
        unsigned char role;
        r.read_exact(&role, 1, "model role");
        SvmModel m = read_svm_model(r);
        std::string owner = m.owner_template;
        bundle.emplace(std::make_pair(static_cast<int>(role), std::move(owner)), std::move(m));
    }
    return bundle;
}

}  // namespace tdff::io

#endif  // TDFF_IO_MODEL_FILE_HPP
