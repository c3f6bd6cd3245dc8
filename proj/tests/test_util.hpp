#ifndef TDFF_TESTS_TEST_UTIL_HPP
#define TDFF_TESTS_TEST_UTIL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tdff/detail/rng.hpp"
#include "tdff/fusion.hpp"
#include "tdff/media.hpp"

namespace testutil {

inline tdff::EmbeddingVector random_vector(tdff::detail::Rng& rng, std::size_t dim, double scale = 1.0) {
    tdff::EmbeddingVector v(dim);
    for (double& x : v) x = scale * rng.gaussian();
    return v;
}

inline tdff::EmbeddingVector random_unit_vector(tdff::detail::Rng& rng, std::size_t dim) {
    return tdff::l2_normalize(random_vector(rng, dim));
}

inline tdff::MediaEncoding image_encoding(std::string id, tdff::EmbeddingVector v) {
    tdff::MediaEncoding e;
    e.source = tdff::EncodingSource::SingleImage;
    e.source_id = std::move(id);
    e.frame_count = 1;
    e.vector = std::move(v);
    return e;
}

inline tdff::Template random_template(tdff::detail::Rng& rng, std::string template_id,
                                      std::string subject_id, std::size_t n_encodings,
                                      std::size_t dim) {
    tdff::Template t;
    t.template_id = std::move(template_id);
    t.subject_id = std::move(subject_id);
    for (std::size_t i = 0; i < n_encodings; ++i) {
        t.encodings.push_back(
            image_encoding(t.template_id + "_e" + std::to_string(i), random_unit_vector(rng, dim)));
    }
    return t;
}

}  // namespace testutil

#endif  // TDFF_TESTS_TEST_UTIL_HPP
