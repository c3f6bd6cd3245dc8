#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <map>

#include "tdff/dataset.hpp"
#include "tdff/io/metadata.hpp"
#include "tdff/io/template_file.hpp"
#include "test_util.hpp"

namespace {

std::vector<tdff::MediaRecord> three_records() {
    return {{"m1", tdff::MediaKind::Image, "", "t1", "s1"},
            {"m2", tdff::MediaKind::Image, "", "t1", "s1"},
            {"m3", tdff::MediaKind::VideoFrame, "v1", "t2", "s2"}};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("validate_dataset accepts a consistent input") {
    std::map<std::string, tdff::EmbeddingVector> features{
        {"m1", {1, 0, 0, 0}}, {"m2", {0, 1, 0, 0}}, {"m3", {0, 0, 1, 0}}};
    const auto report = tdff::validate_dataset(three_records(), features, 4);
    CHECK(report.ok());
    CHECK(report.issues.empty());
}

TEST_CASE("validate_dataset reports a missing feature by media id") {
    std::map<std::string, tdff::EmbeddingVector> features{{"m1", {1, 0, 0, 0}}, {"m2", {0, 1, 0, 0}}};
    const auto report = tdff::validate_dataset(three_records(), features, 4);
    REQUIRE(report.issues.size() == 1);
    CHECK(report.issues[0].kind == tdff::IssueKind::MissingFeature);
    CHECK(report.issues[0].message.find("m3") != std::string::npos);
}

TEST_CASE("validate_dataset reports dimension mismatches against the declared dim") {
    std::map<std::string, tdff::EmbeddingVector> features{
        {"m1", tdff::EmbeddingVector(2048, 0.1)},
        {"m2", tdff::EmbeddingVector(2048, 0.1)},
        {"m3", tdff::EmbeddingVector(1024, 0.1)}};
    const auto report = tdff::validate_dataset(three_records(), features, 2048);
    REQUIRE(report.issues.size() == 1);
    CHECK(report.issues[0].kind == tdff::IssueKind::DimMismatch);
    CHECK(report.issues[0].message.find("m3") != std::string::npos);
}

TEST_CASE("validate_dataset reports orphans and non-finite values") {
    std::map<std::string, tdff::EmbeddingVector> features{
        {"m1", {1, 0, 0, 0}},
        {"m2", {0, std::nan(""), 0, 0}},
        {"m3", {0, 0, 1, 0}},
        {"ghost", {0, 0, 0, 1}}};
    const auto report = tdff::validate_dataset(three_records(), features, 4);
    REQUIRE(report.issues.size() == 2);
    CHECK(report.issues[0].kind == tdff::IssueKind::OrphanFeature);
    CHECK(report.issues[1].kind == tdff::IssueKind::NonFinite);
}

TEST_CASE("validate_dataset is idempotent and order insensitive") {
    tdff::detail::Rng rng(31);
    std::map<std::string, tdff::EmbeddingVector> features{{"m1", {1, 0}}, {"ghost", {0, 1, 2}}};
    auto records = three_records();
    const auto base = tdff::validate_dataset(records, features, 2);
    CHECK(base.issues == tdff::validate_dataset(records, features, 2).issues);
    for (int rep = 0; rep < 6; ++rep) {
        rng.shuffle(records);
        const auto permuted = tdff::validate_dataset(records, features, 2);
        CHECK(permuted.issues == base.issues);
    }
}

TEST_CASE("template serialization round-trips bit-exactly") {
    tdff::detail::Rng rng(32);
    for (int rep = 0; rep < 10; ++rep) {
        auto t = testutil::random_template(rng, "tpl" + std::to_string(rep), "subj", 1 + rep % 5, 9);
        t.encodings.front().source = tdff::EncodingSource::PooledVideo;
        t.encodings.front().frame_count = 4;

        const std::string path = temp_path("tdff_template_rt.bin");
        tdff::io::save_template(path, t);
        const auto back = tdff::io::load_template(path);

        CHECK(back.template_id == t.template_id);
        CHECK(back.subject_id == t.subject_id);
        REQUIRE(back.encodings.size() == t.encodings.size());
        for (std::size_t i = 0; i < t.encodings.size(); ++i) {
            CHECK(back.encodings[i].source == t.encodings[i].source);
            CHECK(back.encodings[i].source_id == t.encodings[i].source_id);
            CHECK(back.encodings[i].frame_count == t.encodings[i].frame_count);
            REQUIRE(back.encodings[i].vector.size() == t.encodings[i].vector.size());
            for (std::size_t k = 0; k < t.encodings[i].vector.size(); ++k) {
                REQUIRE(back.encodings[i].vector[k] == t.encodings[i].vector[k]);
            }
        }
        std::filesystem::remove(path);
    }
}

TEST_CASE("check_template enforces structural invariants") {
    tdff::Template empty;
    empty.template_id = "e";
    CHECK_THROWS_AS(tdff::check_template(empty), tdff::EmptyTemplateError);

    tdff::detail::Rng rng(33);
    auto t = testutil::random_template(rng, "t", "s", 2, 6);
    t.encodings[1].vector[0] *= 3.0;  // break unit norm
    CHECK_THROWS_AS(tdff::check_template(t), tdff::Error);

    auto dup = testutil::random_template(rng, "t", "s", 2, 6);
    for (auto& e : dup.encodings) {
        e.source = tdff::EncodingSource::PooledVideo;
        e.source_id = "samevideo";
    }
    CHECK_THROWS_AS(tdff::check_template(dup), tdff::Error);
}

TEST_CASE("metadata csv round-trips records") {
    std::vector<tdff::io::MetadataRow> rows;
    tdff::io::MetadataRow r;
    r.record = {"m1", tdff::MediaKind::Image, "", "t1", "s1"};
    r.split_role = tdff::io::SplitRole::Train;
    r.split_id = 1;
    rows.push_back(r);
    r.record = {"m2", tdff::MediaKind::VideoFrame, "vid7", "t2", "s2"};
    r.split_role = tdff::io::SplitRole::Probe;
    r.split_id = 3;
    rows.push_back(r);

    const std::string path = temp_path("tdff_meta_rt.csv");
    tdff::io::write_metadata_csv(path, rows);
    const auto back = tdff::io::read_metadata_csv(path);
    REQUIRE(back.size() == 2);
    CHECK(back[0].record.media_id == "m1");
    CHECK(back[0].record.kind == tdff::MediaKind::Image);
    CHECK(back[1].record.video_id == "vid7");
    CHECK(back[1].split_role == tdff::io::SplitRole::Probe);
    CHECK(back[1].split_id == 3);
    std::filesystem::remove(path);
}

TEST_CASE("metadata csv keeps opaque identifiers intact") {
    std::vector<tdff::io::MetadataRow> rows(1);
    rows[0].record = {"img/0042.png", tdff::MediaKind::Image, "", "tpl 7", "sübject-π"};
    rows[0].split_role = tdff::io::SplitRole::Gallery;
    rows[0].split_id = 2;

    const std::string path = temp_path("tdff_meta_utf8.csv");
    tdff::io::write_metadata_csv(path, rows);
    const auto back = tdff::io::read_metadata_csv(path);
    REQUIRE(back.size() == 1);
    CHECK(back[0].record.media_id == "img/0042.png");
    CHECK(back[0].record.template_id == "tpl 7");
    CHECK(back[0].record.subject_id == "sübject-π");
    std::filesystem::remove(path);
}

TEST_CASE("metadata csv rejects malformed rows") {
    const std::string path = temp_path("tdff_meta_bad.csv");
    const auto write = [&path](const std::string& body) {
        std::ofstream os(path, std::ios::trunc);
        os << "template_id,subject_id,media_id,kind,video_id,split_role,split_id\n" << body;
    };

    write("t1,s1,m1,hologram,,train,1\n");
    CHECK_THROWS_AS(tdff::io::read_metadata_csv(path), tdff::ParseError);
    write("t1,s1,m1,frame,,train,1\n");  // frame without video id
    CHECK_THROWS_AS(tdff::io::read_metadata_csv(path), tdff::ParseError);
    write("t1,s1,m1,image,v1,train,1\n");  // image with video id
    CHECK_THROWS_AS(tdff::io::read_metadata_csv(path), tdff::ParseError);
    write("t1,s1,m1,image,,nowhere,1\n");
    CHECK_THROWS_AS(tdff::io::read_metadata_csv(path), tdff::ParseError);
    write("t1,s1,m1,image,,train,one\n");
    CHECK_THROWS_AS(tdff::io::read_metadata_csv(path), tdff::ParseError);
    std::filesystem::remove(path);
}

TEST_CASE("validate_metadata flags cross-row inconsistencies") {
    std::vector<tdff::io::MetadataRow> rows;
    const auto add = [&rows](const char* media, tdff::MediaKind kind, const char* video,
                             const char* tpl, const char* subj, tdff::io::SplitRole role) {
        tdff::io::MetadataRow r;
        r.record = {media, kind, video, tpl, subj};
        r.split_role = role;
        r.split_id = 1;
        rows.push_back(r);
    };
    add("m1", tdff::MediaKind::Image, "", "t1", "s1", tdff::io::SplitRole::Gallery);
    add("m1", tdff::MediaKind::Image, "", "t1", "s1", tdff::io::SplitRole::Gallery);  // dup media
    add("f1", tdff::MediaKind::VideoFrame, "v1", "t1", "s1", tdff::io::SplitRole::Gallery);
    add("f2", tdff::MediaKind::VideoFrame, "v1", "t2", "s2", tdff::io::SplitRole::Probe);  // video spans
    add("m3", tdff::MediaKind::Image, "", "t2", "s3", tdff::io::SplitRole::Probe);  // mixed subject
    add("m4", tdff::MediaKind::Image, "", "t2", "s2", tdff::io::SplitRole::Gallery);  // overlap + two roles

    const auto report = tdff::validate_metadata(rows);
    CHECK_FALSE(report.ok());
    std::map<tdff::IssueKind, int> counts;
    for (const auto& issue : report.issues) counts[issue.kind]++;
    CHECK(counts[tdff::IssueKind::DuplicateMediaId] == 1);
    CHECK(counts[tdff::IssueKind::VideoSpansTemplates] == 1);
    CHECK(counts[tdff::IssueKind::MixedTemplate] >= 1);
    CHECK(counts[tdff::IssueKind::GalleryProbeOverlap] == 1);
}

TEST_CASE("build_protocol_splits assembles roles and default pairs") {
    std::vector<tdff::io::MetadataRow> rows;
    const auto add = [&rows](const char* media, const char* tpl, const char* subj,
                             tdff::io::SplitRole role) {
        tdff::io::MetadataRow r;
        r.record = {media, tdff::MediaKind::Image, "", tpl, subj};
        r.split_role = role;
        r.split_id = 1;
        rows.push_back(r);
    };
    add("m1", "train1", "s1", tdff::io::SplitRole::Train);
    add("m2", "gal1", "s2", tdff::io::SplitRole::Gallery);
    add("m3", "probe1", "s2", tdff::io::SplitRole::Probe);
    add("m4", "probe2", "s3", tdff::io::SplitRole::Probe);

    tdff::detail::Rng rng(34);
    std::unordered_map<std::string, tdff::EmbeddingVector> fused;
    for (const char* m : {"m1", "m2", "m3", "m4"}) fused[m] = testutil::random_unit_vector(rng, 6);

    const auto splits = tdff::build_protocol_splits(rows, fused);
    REQUIRE(splits.size() == 1);
    const auto& split = splits[0];
    CHECK(split.training.size() == 1);
    CHECK(split.gallery.size() == 1);
    CHECK(split.probe.size() == 2);
    REQUIRE(split.verification_pairs.size() == 2);  // probe x gallery
    CHECK(split.verification_pairs[0].mated == true);   // probe1 vs gal1, same subject
    CHECK(split.verification_pairs[1].mated == false);  // probe2 vs gal1

    // explicit pair list overrides the cross product
    std::vector<std::pair<std::string, std::string>> pairs{{"probe2", "gal1"}};
    const auto with_pairs = tdff::build_protocol_splits(rows, fused, &pairs);
    REQUIRE(with_pairs[0].verification_pairs.size() == 1);
    CHECK(with_pairs[0].verification_pairs[0].mated == false);

    std::vector<std::pair<std::string, std::string>> dangling{{"probe2", "nosuch"}};
    CHECK_THROWS_AS(tdff::build_protocol_splits(rows, fused, &dangling), tdff::Error);
}

TEST_CASE("build_protocol_splits rejects templates with no resolvable media") {
    std::vector<tdff::io::MetadataRow> rows;
    tdff::io::MetadataRow r;
    r.record = {"mX", tdff::MediaKind::Image, "", "tX", "sX"};
    r.split_role = tdff::io::SplitRole::Train;
    r.split_id = 1;
    rows.push_back(r);
    std::unordered_map<std::string, tdff::EmbeddingVector> fused;  // empty on purpose
    CHECK_THROWS_AS(tdff::build_protocol_splits(rows, fused), tdff::MissingFeatureError);
}
