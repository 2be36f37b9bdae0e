#include <algorithm>
#include <cmath>
#include <cstring>

#include "doctest.h"

#include "e2ecd/core/error.hpp"
#include "e2ecd/core/sampling.hpp"
#include "e2ecd/net/arch.hpp"
#include "e2ecd/net/correlation.hpp"
#include "e2ecd/net/heads.hpp"
#include "e2ecd/net/layers.hpp"
#include "e2ecd/net/loss.hpp"
#include "e2ecd/net/model.hpp"
#include "e2ecd/net/weights.hpp"
#include "e2ecd/simd/kernels.hpp"
#include "oracles.hpp"
#include "scratch_dir.hpp"

using namespace e2ecd;
using namespace e2ecd::net;

namespace {

double max_diff(std::span<const float> a, std::span<const float> b) {
  REQUIRE(a.size() == b.size());
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(double(a[i]) - b[i]));
  return m;
}

bool bit_equal(std::span<const float> a, std::span<const float> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(float)) == 0;
}

std::vector<float> random_values(std::size_t n, oracle::Rng& rng, double scale = 1.0) {
  std::vector<float> v(n);
  for (auto& x : v) x = static_cast<float>(rng.uniform(-scale, scale));
  return v;
}

ChangeProbMap probs_from_changed(int h, int w, std::initializer_list<float> changed) {
  RasterImage r(h, w, 2);
  auto it = changed.begin();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x, ++it) {
      r.at(y, x, 0) = 1.0f - *it;
      r.at(y, x, 1) = *it;
    }
  return ChangeProbMap(r);
}

// Smooth deterministic test image used for golden outputs.
RasterImage pattern_image(int h, int w) {
  RasterImage img(h, w, 3);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c)
        img.at(y, x, c) = static_cast<float>(0.5 + 0.4 * std::sin(0.11 * x * (c + 1) + 0.07 * y) *
                                                   std::cos(0.05 * y * (c + 2) - 0.03 * x));
  return img;
}

// Reference pyramid with the coarsest level replaced by one-hot position codes,
// so every position correlates only with itself.
class OrthogonalCoarsest final : public FeatureExtractor {
 public:
  OrthogonalCoarsest(const WeightStore& w, const ArchConfig& a) : inner_(w, a) {}
  FeaturePyramid extract(const RasterImage& image) const override {
    FeaturePyramid p = inner_.extract(image);
    RasterImage& top = p.levels[3];
    RasterImage codes(top.height(), top.width(), top.channels());
    for (int y = 0; y < top.height(); ++y)
      for (int x = 0; x < top.width(); ++x) codes.at(y, x, (y * top.width() + x) % top.channels()) = 1.0f;
    top = codes;
    return p;
  }

 private:
  ReferenceExtractor inner_;
};

}  // namespace

TEST_SUITE("global correlation") {
  TEST_CASE("unit vector examples") {
    RasterImage t(1, 1, 2), s(1, 2, 2);
    t.at(0, 0, 0) = 1;
    s.at(0, 0, 0) = 1;
    s.at(0, 1, 1) = 1;
    const Corr4D c = global_correlation(t, s);
    CHECK(c.at(0, 0, 0, 0) == 1.0f);
    CHECK(c.at(0, 0, 0, 1) == 0.0f);
  }

  TEST_CASE("zero vectors give zero similarity") {
    RasterImage t(1, 2, 3), s(1, 1, 3, 1.0f);
    t.at(0, 1, 0) = 2;
    const Corr4D c = global_correlation(t, s);
    CHECK(c.at(0, 0, 0, 0) == 0.0f);
    CHECK(c.at(0, 1, 0, 0) == doctest::Approx(1.0 / std::sqrt(3.0)));
  }

  TEST_CASE("matches the nested-loop oracle and stays within [-1, 1]") {
    oracle::Rng rng(50);
    for (int n = 0; n < 20; ++n) {
      const int ch = rng.integer(1, 9);
      const RasterImage t = oracle::random_raster(rng.integer(1, 4), rng.integer(1, 4), ch, rng);
      const RasterImage s = oracle::random_raster(rng.integer(1, 4), rng.integer(1, 4), ch, rng);
      const Corr4D c = global_correlation(t, s);
      CHECK(max_diff(c.data(), oracle::global_correlation(t, s).data()) < 1e-6);
      for (float v : c.data()) CHECK(std::fabs(v) <= 1.0f + 1e-6f);
    }
  }

  TEST_CASE("channel mismatch") {
    CHECK_THROWS_AS(global_correlation(RasterImage(2, 2, 3), RasterImage(2, 2, 4)), InvalidShape);
  }
}

TEST_SUITE("local correlation") {
  TEST_CASE("self dot product of unit vectors") {
    RasterImage f(5, 4, 3);
    for (int y = 0; y < 5; ++y)
      for (int x = 0; x < 4; ++x) f.at(y, x, (x + y) % 3) = 1;
    const RasterImage c = local_correlation(f, f, 4);
    CHECK(c.channels() == 81);
    for (int y = 0; y < 5; ++y)
      for (int x = 0; x < 4; ++x) CHECK(c.at(y, x, 40) == 1.0f);
  }

  TEST_CASE("matches the windowed oracle") {
    oracle::Rng rng(51);
    for (int n = 0; n < 10; ++n) {
      const RasterImage t = oracle::random_raster(6, 6, 8, rng), s = oracle::random_raster(6, 6, 8, rng);
      const int r = rng.integer(1, 3);
      CHECK(max_diff(local_correlation(t, s, r).data(), oracle::local_correlation(t, s, r).data()) < 1e-6);
    }
  }

  TEST_CASE("rejects bad radius and shapes") {
    CHECK_THROWS_AS(local_correlation(RasterImage(3, 3, 2), RasterImage(3, 3, 2), 0), InvalidArgument);
    CHECK_THROWS_AS(local_correlation(RasterImage(3, 3, 2), RasterImage(3, 4, 2), 1), InvalidShape);
  }
}

TEST_SUITE("mutual matching") {
  TEST_CASE("hand example") {
    Corr4D c(1, 2, 1, 2);
    c.at(0, 0, 0, 0) = 1.0f;
    c.at(0, 0, 0, 1) = 0.5f;
    c.at(0, 1, 0, 0) = 0.5f;
    c.at(0, 1, 0, 1) = 0.25f;
    const Corr4D m = mutual_matching(c);
    CHECK(m.at(0, 0, 0, 0) == 1.0f);
    CHECK(m.at(0, 0, 0, 1) == 0.25f);
    CHECK(m.at(0, 1, 0, 0) == 0.25f);
    CHECK(m.at(0, 1, 0, 1) == 0.0625f);
  }

  TEST_CASE("zero volume stays zero") {
    const Corr4D m = mutual_matching(Corr4D(2, 2, 2, 2));
    for (float v : m.data()) CHECK(v == 0.0f);
  }

  TEST_CASE("suppression, argmax preservation and oracle agreement") {
    oracle::Rng rng(52);
    for (int n = 0; n < 200; ++n) {
      const Corr4D c = oracle::random_corr(rng.integer(1, 4), rng.integer(1, 4), rng.integer(1, 4),
                                           rng.integer(1, 4), rng, -0.5, 1.0);
      const Corr4D m = mutual_matching(c);
      CHECK(max_diff(m.data(), oracle::mutual_matching(c).data()) < 1e-6);
      for (std::size_t i = 0; i < c.data().size(); ++i) CHECK(m.data()[i] <= std::max(0.0f, c.data()[i]));
      // An entry that is the largest of both its slices survives unchanged and stays the largest.
      for (int i = 0; i < c.ht(); ++i)
        for (int j = 0; j < c.wt(); ++j)
          for (int k = 0; k < c.hs(); ++k)
            for (int l = 0; l < c.ws(); ++l) {
              const float v = c.at(i, j, k, l);
              if (v <= 0) continue;
              bool top = true;
              for (int a = 0; a < c.hs() && top; ++a)
                for (int b = 0; b < c.ws(); ++b) top = top && c.at(i, j, a, b) <= v;
              for (int a = 0; a < c.ht() && top; ++a)
                for (int b = 0; b < c.wt(); ++b) top = top && c.at(a, b, k, l) <= v;
              if (!top) continue;
              CHECK(m.at(i, j, k, l) == v);
              for (int a = 0; a < c.hs(); ++a)
                for (int b = 0; b < c.ws(); ++b) CHECK(m.at(i, j, a, b) <= v);
            }
    }
  }
}

TEST_SUITE("conv4d") {
  TEST_CASE("identity kernel") {
    oracle::Rng rng(53);
    const Corr4D in = oracle::random_corr(3, 4, 2, 3, rng);
    std::vector<float> k(81, 0.0f);
    k[40] = 1.0f;
    CHECK(conv4d(in, k, 1) == in);
  }

  TEST_CASE("all-ones kernel on a one-hot input") {
    Corr4D in(5, 5, 5, 5);
    in.at(2, 1, 3, 0) = 1.0f;
    const std::vector<float> k(81, 1.0f);
    const Corr4D out = conv4d(in, k, 1);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        for (int a = 0; a < 5; ++a)
          for (int b = 0; b < 5; ++b) {
            const bool near = std::abs(i - 2) <= 1 && std::abs(j - 1) <= 1 && std::abs(a - 3) <= 1 && std::abs(b) <= 1;
            CHECK(out.at(i, j, a, b) == (near ? 1.0f : 0.0f));
          }
  }

  TEST_CASE("matches the nine-loop oracle") {
    oracle::Rng rng(54);
    for (int n = 0; n < 6; ++n) {
      const int cin = rng.integer(1, 3), cout = rng.integer(1, 3);
      Corr4D in(4, 4, 4, 4, cin);
      for (auto& v : in.data()) v = static_cast<float>(rng.uniform(-1, 1));
      const auto k = random_values(81u * cin * cout, rng, 0.5);
      const bool relu = n % 2 == 0;
      const Corr4D got = conv4d(in, k, cout, relu ? Activation::Relu : Activation::None);
      CHECK(max_diff(got.data(), oracle::conv4d(in, k, cout, relu).data()) < 1e-5);
    }
  }

  TEST_CASE("kernel size mismatch") {
    CHECK_THROWS_AS(conv4d(Corr4D(2, 2, 2, 2), std::vector<float>(80), 1), InvalidShape);
  }
}

TEST_SUITE("conv2d") {
  TEST_CASE("matches the oracle at stride one and two") {
    oracle::Rng rng(55);
    for (int n = 0; n < 10; ++n) {
      const int cin = rng.integer(1, 5), cout = rng.integer(1, 5), stride = 1 + n % 2;
      const RasterImage in = oracle::random_raster(rng.integer(2, 9), rng.integer(2, 9), cin, rng);
      const auto k = random_values(9u * cin * cout, rng);
      const auto b = random_values(cout, rng);
      const RasterImage got = conv2d(in, k, b, cout, stride, Activation::Relu);
      CHECK(max_diff(got.data(), oracle::conv2d(in, k, b, cout, stride, true).data()) < 1e-5);
    }
  }
}

TEST_SUITE("consensus") {
  TEST_CASE("zero input gives zero output") {
    const WeightStore w = init_weights(0, ArchConfig{});
    const Corr4D out = neighborhood_consensus(Corr4D(2, 2, 2, 2), w);
    for (float v : out.data()) CHECK(v == 0.0f);
  }

  TEST_CASE("symmetric input yields symmetric output") {
    oracle::Rng rng(56);
    const WeightStore w = init_weights(1, ArchConfig{});
    Corr4D c = oracle::random_corr(3, 3, 3, 3, rng, 0, 1);
    const Corr4D ct = c.transposed();
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] = 0.5f * (c.data()[i] + ct.data()[i]);
    const Corr4D out = neighborhood_consensus(c, w);
    CHECK(max_diff(out.data(), out.transposed().data()) < 1e-6);
  }

  TEST_CASE("swapping the images transposes the result") {
    oracle::Rng rng(57);
    const WeightStore w = init_weights(2, ArchConfig{});
    for (int n = 0; n < 5; ++n) {
      const RasterImage a = oracle::random_raster(2, 3, 6, rng), b = oracle::random_raster(3, 2, 6, rng);
      const Corr4D ab = neighborhood_consensus(mutual_matching(global_correlation(a, b)), w);
      const Corr4D ba = neighborhood_consensus(mutual_matching(global_correlation(b, a)), w);
      CHECK(max_diff(ba.data(), ab.transposed().data()) < 1e-5);
    }
  }

  TEST_CASE("missing consensus weights are named") {
    WeightStore w = init_weights(0, ArchConfig{});
    WeightStore partial;
    for (const auto& [name, t] : w.tensors())
      if (name != "consensus.conv2.weight") partial.insert(name, t);
    try {
      neighborhood_consensus(Corr4D(2, 2, 2, 2), partial);
      FAIL("expected MissingParameter");
    } catch (const MissingParameter& e) {
      CHECK(std::string(e.what()).find("consensus.conv2.weight") != std::string::npos);
    }
  }
}

TEST_SUITE("soft-argmax") {
  TEST_CASE("delta peak one row down") {
    Corr4D c(4, 4, 4, 4);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j) c.at(i, j, i + 1, j) = 1e6f;
    const FlowField f = softargmax_flow(c, 1.0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j) {
        CHECK(f.at(i, j).u == doctest::Approx(0.0).epsilon(0).scale(1).epsilon(1e-4));
        CHECK(std::fabs(f.at(i, j).v - 1.0f) < 1e-4f);
      }
  }

  TEST_CASE("uniform scores give the centroid offset") {
    const int n = 5;
    const FlowField f = softargmax_flow(Corr4D(n, n, n, n, 1, 0.3f), 0.1);
    const double centroid = (n - 1) / 2.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        CHECK(std::fabs(f.at(i, j).u - (centroid - j)) < 1e-4);
        CHECK(std::fabs(f.at(i, j).v - (centroid - i)) < 1e-4);
      }
  }

  TEST_CASE("temperature must be positive") {
    CHECK_THROWS_AS(softargmax_flow(Corr4D(1, 1, 1, 1), 0.0), InvalidArgument);
    CHECK_THROWS_AS(softargmax_flow(Corr4D(1, 1, 1, 1), -1.0), InvalidArgument);
  }

  TEST_CASE("head4 with fresh weights equals soft-argmax exactly") {
    oracle::Rng rng(58);
    const ArchConfig arch;
    const WeightStore w = init_weights(3, arch);
    const Corr4D c = oracle::random_corr(3, 4, 3, 4, rng);
    CHECK(bit_equal(head4(c, w, arch).data(), softargmax_flow(c, arch.effective_temperature()).data()));
  }
}

TEST_SUITE("local module") {
  TEST_CASE("residual identity at initialization") {
    oracle::Rng rng(59);
    const ArchConfig arch;
    const WeightStore w = init_weights(4, arch);
    const RasterImage fs = oracle::random_raster(8, 8, 32, rng), ft = oracle::random_raster(8, 8, 32, rng);
    const FlowField coarse = oracle::random_flow(4, 4, rng, 1.5);
    const LevelOutput out = l_module_forward(fs, ft, coarse, w, arch, 2);
    CHECK(bit_equal(out.flow.data(), upsample_flow(coarse, 2).data()));
    CHECK(bit_equal(out.upsampled_prior.data(), out.flow.data()));
  }

  TEST_CASE("identical features with zero flow give a constant change map") {
    oracle::Rng rng(60);
    const ArchConfig arch;
    const WeightStore w = init_weights(5, arch);
    const RasterImage f = oracle::random_raster(8, 8, 16, rng);
    const LevelOutput out = l_module_forward(f, f, FlowField(4, 4), w, arch, 1);
    for (int y = 0; y < 8; ++y)
      for (int x = 0; x < 8; ++x) CHECK(out.change.p_changed(y, x) == out.change.p_changed(0, 0));
  }

  TEST_CASE("change probabilities sum to one") {
    oracle::Rng rng(61);
    const ArchConfig arch;
    const WeightStore w = init_weights(6, arch);
    const RasterImage fs = oracle::random_raster(4, 4, 64, rng), ft = oracle::random_raster(4, 4, 64, rng);
    const LevelOutput out = l_module_forward(fs, ft, oracle::random_flow(2, 2, rng, 1), w, arch, 3);
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 4; ++x)
        CHECK(std::fabs(out.change.p_changed(y, x) + out.change.p_unchanged(y, x) - 1.0f) < 1e-5f);
  }

  TEST_CASE("level range and missing tensors") {
    const ArchConfig arch;
    const WeightStore w = init_weights(0, arch);
    CHECK_THROWS_AS(l_module_forward(RasterImage(4, 4, 16), RasterImage(4, 4, 16), FlowField(2, 2), w, arch, 4),
                    InvalidArgument);
    WeightStore partial;
    for (const auto& [name, t] : w.tensors())
      if (name != "level2.cd_head.conv1.bias") partial.insert(name, t);
    try {
      l_module_forward(RasterImage(8, 8, 32), RasterImage(8, 8, 32), FlowField(4, 4), partial, arch, 2);
      FAIL("expected MissingParameter");
    } catch (const MissingParameter& e) {
      const std::string what = e.what();
      CHECK(what.find("level2.cd_head.conv1.bias") != std::string::npos);
      CHECK(what.find("level 2") != std::string::npos);
    }
  }
}

TEST_SUITE("forward") {
  TEST_CASE("output shapes for 64x64 inputs") {
    const ArchConfig arch;
    const WeightStore w = init_weights(0, arch);
    const RasterImage img = pattern_image(64, 64);
    const auto pyr = extract_features(img, w, arch);
    CHECK(pyr.level(1).height() == 16);
    CHECK(pyr.level(4).height() == 2);
    CHECK(pyr.level(4).channels() == 128);
    const ForwardResult r = e2ecd_forward(img, img, w, arch);
    CHECK(r.flows[3].height() == 2);
    CHECK(r.flows[2].height() == 4);
    CHECK(r.flows[1].height() == 8);
    CHECK(r.flows[0].height() == 16);
    CHECK(r.flow.height() == 64);
    CHECK(r.change.height() == 64);
    CHECK(r.change.raster().channels() == 2);
    CHECK_THROWS_AS(extract_features(RasterImage(48, 64, 3), w, arch), InvalidShape);
  }

  TEST_CASE("shared backbone gives equal pyramids") {
    const ArchConfig arch;
    const WeightStore w = init_weights(1, arch);
    const RasterImage img = pattern_image(64, 96);
    const auto a = extract_features(img, w, arch), b = extract_features(img, w, arch);
    for (int l = 1; l <= 4; ++l) CHECK(a.level(l) == b.level(l));
  }

  TEST_CASE("each level refines nothing at initialization") {
    const ArchConfig arch;
    const WeightStore w = init_weights(2, arch);
    const ForwardResult r = e2ecd_forward(pattern_image(64, 64), pattern_image(64, 64), w, arch);
    for (int i = 0; i < 3; ++i) CHECK(bit_equal(r.flows[i].data(), upsample_flow(r.flows[i + 1], 2).data()));
    CHECK(bit_equal(r.flow.data(), upsample_flow(r.flows[0], 4).data()));
  }

  TEST_CASE("self pair with identity-peaked scores has near-zero flow") {
    const ArchConfig arch;
    WeightStore w = init_weights(0, arch);
    // Consensus reduced to a pass-through of its input.
    for (const char* name : {"consensus.conv1.weight", "consensus.conv2.weight", "consensus.conv3.weight"}) {
      Tensor& t = w.mutable_tensor(name);
      std::fill(t.values.begin(), t.values.end(), 0.0f);
      t.values[40u * t.shape[4] * t.shape[5]] = 1.0f;
    }
    const OrthogonalCoarsest extractor(w, arch);
    const RasterImage img = pattern_image(128, 128);
    const ForwardResult r = e2ecd_forward(img, img, w, arch, &extractor);
    std::vector<double> mags;
    for (int y = 0; y < 128; ++y)
      for (int x = 0; x < 128; ++x) mags.push_back(std::hypot(r.flow.at(y, x).u, r.flow.at(y, x).v));
    std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
    CHECK(mags[mags.size() / 2] < 0.5);
  }

  TEST_CASE("golden checksums on the scalar backend") {
    simd::ScopedBackend scalar(simd::Backend::Scalar);
    const ArchConfig arch;
    const WeightStore w = init_weights(0, arch);
    const RasterImage src = pattern_image(64, 64);
    RasterImage tgt = src;
    for (int y = 0; y < 64; ++y)
      for (int x = 0; x < 64; ++x)
        for (int c = 0; c < 3; ++c) tgt.at(y, x, c) = src.at(y, (x + 3) % 64, c);
    const auto pyr = extract_features(src, w, arch);
    std::uint64_t features = oracle::checksum(pyr.level(1).data());
    for (int l = 2; l <= 4; ++l) features = oracle::checksum(pyr.level(l).data(), features);
    const ForwardResult r = e2ecd_forward(src, tgt, w, arch);
    const Corr4D consensus = neighborhood_consensus(
        mutual_matching(global_correlation(extract_features(tgt, w, arch).level(4), pyr.level(4))), w);
    const std::uint64_t head = oracle::checksum(head4(consensus, w, arch).data());
    std::uint64_t outputs = oracle::checksum(r.flow.data());
    outputs = oracle::checksum(r.change.raster().data(), outputs);
    for (const auto& f : r.flows) outputs = oracle::checksum(f.data(), outputs);
    for (const auto& p : r.probs) outputs = oracle::checksum(p.raster().data(), outputs);
    MESSAGE("features " << features << " head4 " << head << " outputs " << outputs);
    CHECK(features == 14877802616954107344ull);
    CHECK(head == 627842457661207513ull);
    CHECK(outputs == 3053058448422875413ull);
  }
}

TEST_SUITE("loss") {
  TEST_CASE("perfect one-hot prediction") {
    BinaryMask gt(2, 2), valid(2, 2, true);
    gt.set(0, 1, true);
    const std::vector<ChangeProbMap> levels{probs_from_changed(2, 2, {0, 1, 0, 0})};
    CHECK(class_balanced_ce(levels, gt, valid) < 1e-6);
  }

  TEST_CASE("four pixel toy") {
    BinaryMask gt(2, 2), valid(2, 2, true);
    gt.set(0, 0, true);
    const std::vector<ChangeProbMap> levels{probs_from_changed(2, 2, {0.8f, 0.3f, 0.1f, 0.4f})};
    // One positive, three negatives: beta = 3/4.
    const double hand = -(0.75 * std::log(double(0.8f)) +
                          0.25 * (std::log(1.0 - double(0.3f)) + std::log(1.0 - double(0.1f)) + std::log(1.0 - double(0.4f)))) /
                        4.0;
    CHECK(std::fabs(class_balanced_ce(levels, gt, valid) - hand) < 1e-6);
  }

  TEST_CASE("uniform prediction is weighted by class balance") {
    BinaryMask gt(2, 2), valid(2, 2, true);
    gt.set(1, 1, true);
    const std::vector<ChangeProbMap> levels{probs_from_changed(2, 2, {0.5f, 0.5f, 0.5f, 0.5f})};
    const double beta = 0.75, fpos = 0.25, fneg = 0.75;
    CHECK(std::fabs(class_balanced_ce(levels, gt, valid) - std::log(2.0) * (beta * fpos + (1 - beta) * fneg)) < 1e-6);
  }

  TEST_CASE("pooling to coarser levels and the empty mask") {
    BinaryMask gt(4, 4), valid(4, 4, true);
    gt.set(3, 3, true);
    const std::vector<ChangeProbMap> coarse{probs_from_changed(2, 2, {0, 0, 0, 1})};
    CHECK(class_balanced_ce(coarse, gt, valid) < 1e-6);
    CHECK(class_balanced_ce(coarse, gt, BinaryMask(4, 4)) == 0.0);
    BinaryMask partial(4, 4, true);
    partial.set(0, 0, false);
    CHECK(min_pool(partial, 2).at(0, 0) == false);
    CHECK(max_pool(gt, 2).at(1, 1) == true);
  }

  TEST_CASE("flow endpoint error") {
    FlowField a(3, 3), b(3, 3, Vec2{3, 4});
    CHECK(flow_epe(a, b, BinaryMask(3, 3, true)) == 5.0);
    CHECK(flow_epe(b, b, BinaryMask(3, 3, true)) == 0.0);
    CHECK_THROWS_AS(flow_epe(a, b, BinaryMask(3, 3)), UndefinedMetric);
    oracle::Rng rng(62);
    const FlowField p = oracle::random_flow(7, 5, rng, 4), q = oracle::random_flow(7, 5, rng, 4);
    const BinaryMask m = oracle::random_mask(7, 5, 0.6, rng);
    double sum = 0;
    int n = 0;
    for (int y = 0; y < 7; ++y)
      for (int x = 0; x < 5; ++x)
        if (m.at(y, x)) {
          const double du = p.at(y, x).u - q.at(y, x).u, dv = p.at(y, x).v - q.at(y, x).v;
          sum += std::sqrt(du * du + dv * dv);
          ++n;
        }
    CHECK(std::fabs(flow_epe(p, q, m) - sum / n) < 1e-6);
  }
}

TEST_SUITE("weights") {
  TEST_CASE("container round trip is byte-identical") {
    ScratchDir dir("weights");
    const WeightStore w = init_weights(11, ArchConfig{});
    save_weights(dir / "a.bin", w);
    const WeightStore back = load_weights(dir / "a.bin", ArchConfig{});
    CHECK(back == w);
    CHECK(encode_weights(back) == encode_weights(w));
  }

  TEST_CASE("initialization is deterministic per seed") {
    const ArchConfig arch;
    CHECK(init_weights(3, arch) == init_weights(3, arch));
    CHECK(!(init_weights(3, arch) == init_weights(4, arch)));
    const WeightStore w = init_weights(3, arch);
    for (float v : w.get("head4.refine2.weight").values) CHECK(v == 0.0f);
    for (float v : w.get("level1.flow_head.conv3.weight").values) CHECK(v == 0.0f);
  }

  TEST_CASE("truncated and corrupt containers") {
    const auto bytes = encode_weights(init_weights(0, ArchConfig{}));
    for (std::size_t cut : {std::size_t{0}, std::size_t{3}, std::size_t{10}, bytes.size() / 2, bytes.size() - 1}) {
      CAPTURE(cut);
      CHECK_THROWS_AS(decode_weights(std::span(bytes.data(), cut)), FormatError);
    }
    auto bad = bytes;
    bad[0] ^= 0xff;
    CHECK_THROWS_AS(decode_weights(bad), FormatError);
  }

  TEST_CASE("schema checks") {
    const ArchConfig arch;
    WeightStore w = init_weights(0, arch);
    w.insert("extra.weight", Tensor{{1}, {0.0f}});
    CHECK_THROWS_AS(check_schema(w, arch), SchemaError);
    WeightStore v = init_weights(0, arch);
    v.mutable_tensor("consensus.conv1.weight").shape[5] = 8;
    CHECK_THROWS_AS(check_schema(v, arch), SchemaError);
  }

  TEST_CASE("architecture config text") {
    const ArchConfig a = parse_arch_config("radius = 2\nchannels = 8,16,32,64\ntemperature = 0.5\n");
    CHECK(a.radius == 2);
    CHECK(a.local_corr_channels() == 25);
    CHECK(a.channels[3] == 64);
    CHECK(a.effective_temperature() == 0.5);
    CHECK(ArchConfig{}.effective_temperature() == doctest::Approx(1.0 / std::sqrt(128.0)));
    CHECK(parse_arch_config(format_arch_config(a)) == a);
    CHECK_THROWS(parse_arch_config("radius = 0\n"));
    CHECK_THROWS(parse_arch_config("bogus = 1\n"));
  }
}
