#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "tdff/scoring.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

tdff::SvmModel random_model(tdff::detail::Rng& rng, std::size_t dim, const std::string& owner) {
    tdff::SvmModel m;
    m.weights = testutil::random_vector(rng, dim, 1.5);
    m.bias = rng.gaussian() * 0.2;
    m.owner_template = owner;
    return m;
}

}  // namespace

TEST_CASE("oss_score averages the two margins") {
    // models engineered so P(q) = 0.8 and Q(p) = 0.4
    tdff::SvmModel mp{{1.0, 0.0}, 0.0, "a"};
    tdff::SvmModel mq{{0.0, 1.0}, 0.0, "b"};
    const tdff::EmbeddingVector p{0.0, 0.4};
    const tdff::EmbeddingVector q{0.8, 0.0};
    CHECK_THAT(tdff::oss_score(mp, mq, p, q), WithinAbs(0.6, 1e-15));
}

TEST_CASE("oss_score collapses for identical models and points") {
    tdff::detail::Rng rng(51);
    const auto m = random_model(rng, 5, "m");
    const auto p = testutil::random_unit_vector(rng, 5);
    CHECK(tdff::oss_score(m, m, p, p) == tdff::decision_value(m, p));
}

TEST_CASE("oss_score is symmetric under argument swap") {
    tdff::detail::Rng rng(52);
    const auto ma = random_model(rng, 6, "a");
    const auto mb = random_model(rng, 6, "b");
    const auto p = testutil::random_unit_vector(rng, 6);
    const auto q = testutil::random_unit_vector(rng, 6);
    CHECK(tdff::oss_score(ma, mb, p, q) == tdff::oss_score(mb, ma, q, p));
}

TEST_CASE("fuse_scores at beta 0 is exactly the mean") {
    tdff::FusionConfig cfg;
    CHECK_THAT(tdff::fuse_scores(std::vector<double>{0.2, 0.4}, cfg), WithinRel(0.3, 1e-12));

    tdff::detail::Rng rng(53);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> scores;
        for (int i = 0; i < 2 + static_cast<int>(rng.uniform_below(30)); ++i) {
            scores.push_back(rng.gaussian() * 3.0);
        }
        double mean = 0.0;
        for (double s : scores) mean += s;
        mean /= static_cast<double>(scores.size());
        CHECK_THAT(tdff::fuse_scores(scores, cfg), WithinRel(mean, 1e-12));
    }
}

TEST_CASE("fuse_scores of a single element is that element") {
    for (double beta : {0.0, 1.0, 50.0}) {
        tdff::FusionConfig cfg{beta};
        CHECK(tdff::fuse_scores(std::vector<double>{-2.75}, cfg) == -2.75);
    }
}

TEST_CASE("large beta approaches the maximum") {
    tdff::FusionConfig cfg{50.0};
    const double fused = tdff::fuse_scores(std::vector<double>{0.0, 1.0}, cfg);
    CHECK_THAT(fused, WithinAbs(1.0, 1e-6));
    CHECK(fused <= 1.0);
}

TEST_CASE("fuse_scores stays within the score range and is monotone in beta") {
    tdff::detail::Rng rng(54);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> scores;
        for (int i = 0; i < 5; ++i) scores.push_back(rng.gaussian() * 2.0);
        double lo = scores[0], hi = scores[0];
        for (double s : scores) {
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        double prev = -1e300;
        for (double beta : {0.0, 1.0, 10.0, 100.0}) {
            const double fused = tdff::fuse_scores(scores, tdff::FusionConfig{beta});
            CHECK(fused >= lo);
            CHECK(fused <= hi);
            CHECK(fused >= prev - 1e-12);
            prev = fused;
        }
    }
}

TEST_CASE("fuse_scores handles huge betas without overflow") {
    tdff::FusionConfig cfg{1e4};
    const double fused = tdff::fuse_scores(std::vector<double>{-300.0, 250.0, 100.0}, cfg);
    CHECK(std::isfinite(fused));
    CHECK_THAT(fused, WithinAbs(250.0, 1e-9));
}

TEST_CASE("fuse_scores error cases") {
    CHECK_THROWS_AS(tdff::fuse_scores(std::vector<double>{}, tdff::FusionConfig{}), tdff::EmptyScoresError);
    tdff::FusionConfig negative{-1.0};
    CHECK_THROWS_AS(tdff::fuse_scores(std::vector<double>{1.0}, negative), tdff::ConfigError);
}

TEST_CASE("score_template_pair over a 1x1 pair is the single OSS value") {
    tdff::detail::Rng rng(55);
    const auto a = testutil::random_template(rng, "a", "sa", 1, 6);
    const auto b = testutil::random_template(rng, "b", "sb", 1, 6);
    const auto ma = random_model(rng, 6, "a");
    const auto mb = random_model(rng, 6, "b");
    const auto ps = tdff::score_template_pair(a, b, ma, mb, tdff::FusionConfig{});
    CHECK(ps.n_component_scores == 1);
    CHECK(ps.score == tdff::oss_score(ma, mb, a.encodings[0].vector, b.encodings[0].vector));
}

TEST_CASE("score_template_pair matches the brute-force double loop") {
    tdff::detail::Rng rng(56);
    const auto a = testutil::random_template(rng, "a", "sa", 2, 7);
    const auto b = testutil::random_template(rng, "b", "sb", 3, 7);
    const auto ma = random_model(rng, 7, "a");
    const auto mb = random_model(rng, 7, "b");
    const auto ps = tdff::score_template_pair(a, b, ma, mb, tdff::FusionConfig{});
    REQUIRE(ps.n_component_scores == 6);

    // independent route: raw dot products, naive mean
    double sum = 0.0;
    std::vector<double> wa = ma.weights, wb = mb.weights;
    for (const auto& ea : a.encodings) {
        for (const auto& eb : b.encodings) {
            const double pq = oracle::dot(wa, eb.vector) + ma.bias;
            const double qp = oracle::dot(wb, ea.vector) + mb.bias;
            sum += 0.5 * pq + 0.5 * qp;
        }
    }
    CHECK_THAT(ps.score, WithinRel(sum / 6.0, 1e-12));
    CHECK(ps.probe_template == "a");
    CHECK(ps.gallery_template == "b");
}

TEST_CASE("score_template_pair is symmetric in the pair") {
    tdff::detail::Rng rng(57);
    const auto a = testutil::random_template(rng, "a", "sa", 3, 5);
    const auto b = testutil::random_template(rng, "b", "sb", 2, 5);
    const auto ma = random_model(rng, 5, "a");
    const auto mb = random_model(rng, 5, "b");
    for (double beta : {0.0, 2.5}) {
        const auto ab = tdff::score_template_pair(a, b, ma, mb, tdff::FusionConfig{beta});
        const auto ba = tdff::score_template_pair(b, a, mb, ma, tdff::FusionConfig{beta});
        CHECK_THAT(ab.score, WithinAbs(ba.score, 1e-12));
    }
}

TEST_CASE("score_template_pair is invariant under encoding permutations") {
    tdff::detail::Rng rng(58);
    auto a = testutil::random_template(rng, "a", "sa", 4, 6);
    auto b = testutil::random_template(rng, "b", "sb", 3, 6);
    const auto ma = random_model(rng, 6, "a");
    const auto mb = random_model(rng, 6, "b");
    const double base = tdff::score_template_pair(a, b, ma, mb, tdff::FusionConfig{1.5}).score;
    for (int rep = 0; rep < 6; ++rep) {
        rng.shuffle(a.encodings);
        rng.shuffle(b.encodings);
        const double permuted = tdff::score_template_pair(a, b, ma, mb, tdff::FusionConfig{1.5}).score;
        CHECK_THAT(permuted, WithinAbs(base, 1e-12));
    }
}
