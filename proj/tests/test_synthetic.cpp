#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tdff/synthetic.hpp"
#include "oracles.hpp"

namespace {

std::map<std::string, std::vector<std::string>> media_by_subject(const tdff::SyntheticDataset& data) {
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& row : data.metadata) out[row.record.subject_id].push_back(row.record.media_id);
    return out;
}

}  // namespace

TEST_CASE("zero noise collapses every media onto the class mean") {
    tdff::SyntheticSpec spec;
    spec.n_subjects = 6;
    spec.media_per_subject = 5;
    spec.frames_per_video = 2;
    spec.dim = 16;
    spec.noise_sigma = 0.0;
    spec.seed = 5;
    const auto data = tdff::generate_synthetic(spec);

    for (const auto& [subject, media] : media_by_subject(data)) {
        const auto& first = data.features.at(media.front());
        for (const auto& id : media) {
            REQUIRE(data.features.at(id) == first);
        }
    }
}

TEST_CASE("same seed gives byte-identical outputs") {
    tdff::SyntheticSpec spec;
    spec.n_subjects = 8;
    spec.media_per_subject = 4;
    spec.dim = 12;
    spec.seed = 77;

    const auto a = tdff::generate_synthetic(spec);
    const auto b = tdff::generate_synthetic(spec);

    std::stringstream fa, fb;
    tdff::io::write_feature_file(fa, a.features, 12);
    tdff::io::write_feature_file(fb, b.features, 12);
    REQUIRE(fa.str() == fb.str());

    const auto dir = std::filesystem::temp_directory_path();
    const std::string ma = (dir / "tdff_synth_a.csv").string();
    const std::string mb = (dir / "tdff_synth_b.csv").string();
    tdff::io::write_metadata_csv(ma, a.metadata);
    tdff::io::write_metadata_csv(mb, b.metadata);
    std::ifstream ia(ma), ib(mb);
    std::stringstream sa, sb;
    sa << ia.rdbuf();
    sb << ib.rdbuf();
    REQUIRE(sa.str() == sb.str());
    std::filesystem::remove(ma);
    std::filesystem::remove(mb);

    spec.seed = 78;
    const auto c = tdff::generate_synthetic(spec);
    std::stringstream fc;
    tdff::io::write_feature_file(fc, c.features, 12);
    CHECK(fa.str() != fc.str());
}

TEST_CASE("within-class cosine similarity dominates between-class") {
    tdff::SyntheticSpec spec;  // the documented desk-scale setting
    spec.n_subjects = 50;
    spec.dim = 64;
    spec.noise_sigma = 0.3;
    spec.seed = 3;
    const auto data = tdff::generate_synthetic(spec);

    std::map<std::string, std::string> subject_of;
    for (const auto& row : data.metadata) subject_of[row.record.media_id] = row.record.subject_id;

    double within = 0.0, between = 0.0;
    std::size_t n_within = 0, n_between = 0;
    std::vector<std::pair<std::string, const tdff::EmbeddingVector*>> items;
    for (const auto& [id, vec] : data.features) items.emplace_back(subject_of.at(id), &vec);
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size(); j += 7) {  // subsample for speed
            const double cos = oracle::dot(*items[i].second, *items[j].second);
            if (items[i].first == items[j].first) {
                within += cos;
                ++n_within;
            } else {
                between += cos;
                ++n_between;
            }
        }
    }
    REQUIRE(n_within > 100);
    REQUIRE(n_between > 100);
    CHECK(within / static_cast<double>(n_within) > between / static_cast<double>(n_between) + 0.05);
}

TEST_CASE("generated structure matches the protocol layout") {
    tdff::SyntheticSpec spec;
    spec.n_subjects = 10;
    spec.media_per_subject = 6;
    spec.frames_per_video = 3;
    spec.dim = 8;
    spec.n_splits = 2;
    const auto data = tdff::generate_synthetic(spec);

    std::map<int, std::map<tdff::io::SplitRole, std::set<std::string>>> templates;
    for (const auto& row : data.metadata) {
        templates[row.split_id][row.split_role].insert(row.record.template_id);
    }
    REQUIRE(templates.size() == 2);
    for (const auto& [split, by_role] : templates) {
        CHECK(by_role.at(tdff::io::SplitRole::Train).size() == 5);
        CHECK(by_role.at(tdff::io::SplitRole::Gallery).size() == 4);  // every 5th eval subject unenrolled
        CHECK(by_role.at(tdff::io::SplitRole::Probe).size() == 5);
    }

    // frames share their video's template and every media has a feature
    std::map<std::string, std::string> video_template;
    for (const auto& row : data.metadata) {
        REQUIRE(data.features.count(row.record.media_id) == 1);
        if (row.record.kind == tdff::MediaKind::VideoFrame) {
            auto [it, fresh] = video_template.try_emplace(row.record.video_id, row.record.template_id);
            REQUIRE(it->second == row.record.template_id);
        }
    }
    REQUIRE(!video_template.empty());

    CHECK_THROWS_AS(
        [] {
            tdff::SyntheticSpec bad;
            bad.dim = 1;
            return tdff::generate_synthetic(bad);
        }(),
        tdff::ConfigError);
}
