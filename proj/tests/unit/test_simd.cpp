#include <cmath>
#include <vector>

#include "doctest.h"

#include "e2ecd/core/error.hpp"
#include "e2ecd/net/correlation.hpp"
#include "e2ecd/net/layers.hpp"
#include "e2ecd/net/weights.hpp"
#include "e2ecd/simd/kernels.hpp"
#include "oracles.hpp"

using namespace e2ecd;

namespace {

std::vector<float> random_values(std::size_t n, oracle::Rng& rng, double zero_fraction = 0.0) {
  std::vector<float> v(n);
  for (auto& x : v) x = rng.chance(zero_fraction) ? 0.0f : static_cast<float>(rng.uniform(-2, 2));
  return v;
}

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("scalar backend is always available and selectable") {
    CHECK(simd::backend_available(simd::Backend::Scalar));
    CHECK(simd::kernels_for(simd::Backend::Scalar).backend == simd::Backend::Scalar);
    {
      simd::ScopedBackend scoped(simd::Backend::Scalar);
      CHECK(simd::active_backend() == simd::Backend::Scalar);
    }
    CHECK(simd::parse_backend("avx2") == simd::Backend::Avx2);
    CHECK(simd::backend_name(simd::Backend::Neon) == "neon");
    CHECK_THROWS_AS(simd::parse_backend("sse9"), InvalidArgument);
  }

  TEST_CASE("dot agrees across backends") {
    oracle::Rng rng(21);
    const auto& ref = simd::scalar_kernels();
    for (auto b : simd::available_backends()) {
      const auto& k = simd::kernels_for(b);
      CAPTURE(k.name);
      for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 15u, 16u, 17u, 33u, 128u, 1001u}) {
        const auto a = random_values(n, rng), c = random_values(n, rng);
        double exact = 0;
        for (std::size_t i = 0; i < n; ++i) exact += double(a[i]) * c[i];
        CHECK(ref.dot(a.data(), c.data(), n) == doctest::Approx(exact).epsilon(1e-12).scale(1.0));
        CHECK(k.dot(a.data(), c.data(), n) == doctest::Approx(ref.dot(a.data(), c.data(), n)).epsilon(1e-12).scale(1.0));
      }
    }
  }

  TEST_CASE("matvec_accumulate is bit-identical across backends") {
    oracle::Rng rng(22);
    for (auto b : simd::available_backends()) {
      const auto& k = simd::kernels_for(b);
      CAPTURE(k.name);
      for (std::size_t cin : {1u, 2u, 5u, 16u}) {
        for (std::size_t cout : {1u, 2u, 3u, 4u, 8u, 16u, 17u, 64u}) {
          const auto in = random_values(cin, rng, 0.3);
          const auto w = random_values(cin * cout, rng);
          std::vector<double> acc_ref(cout), acc(cout);
          for (std::size_t o = 0; o < cout; ++o) acc_ref[o] = acc[o] = rng.uniform(-1, 1);
          simd::scalar_kernels().matvec_accumulate(acc_ref.data(), in.data(), w.data(), cin, cout);
          k.matvec_accumulate(acc.data(), in.data(), w.data(), cin, cout);
          CHECK(acc == acc_ref);
        }
      }
    }
  }

  TEST_CASE("abs_diff is exact on every backend") {
    oracle::Rng rng(23);
    for (auto b : simd::available_backends()) {
      const auto& k = simd::kernels_for(b);
      for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 100u}) {
        const auto a = random_values(n, rng), c = random_values(n, rng);
        std::vector<float> out(n);
        k.abs_diff(out.data(), a.data(), c.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(out[i] == std::fabs(a[i] - c[i]));
      }
    }
  }

  TEST_CASE("layers give the same answers under every backend") {
    oracle::Rng rng(24);
    const RasterImage ft = oracle::random_raster(4, 3, 12, rng);
    const RasterImage fs = oracle::random_raster(3, 4, 12, rng);
    const RasterImage big = oracle::random_raster(9, 7, 5, rng);
    const auto k2 = random_values(9 * 5 * 6, rng);
    const net::Corr4D vol = oracle::random_corr(3, 3, 4, 4, rng);
    const auto k4 = random_values(81 * 4, rng);

    simd::ScopedBackend scalar(simd::Backend::Scalar);
    const auto g_ref = net::global_correlation(ft, fs);
    const auto l_ref = net::local_correlation(big, big, 2);
    const auto c2_ref = net::conv2d(big, k2, {}, 6, 2, net::Activation::Relu);
    const auto c4_ref = net::conv4d(vol, k4, 4, net::Activation::None);
    for (auto b : simd::available_backends()) {
      simd::ScopedBackend scoped(b);
      CAPTURE(simd::backend_name(b));
      // The vector-wide convolution paths reproduce scalar rounding exactly.
      CHECK(net::conv2d(big, k2, {}, 6, 2, net::Activation::Relu) == c2_ref);
      CHECK(net::conv4d(vol, k4, 4, net::Activation::None) == c4_ref);
      const auto g = net::global_correlation(ft, fs);
      for (std::size_t i = 0; i < g.data().size(); ++i) CHECK(g.data()[i] == doctest::Approx(g_ref.data()[i]).epsilon(1e-6).scale(1.0));
      const auto l = net::local_correlation(big, big, 2);
      for (std::size_t i = 0; i < l.data().size(); ++i) CHECK(l.data()[i] == doctest::Approx(l_ref.data()[i]).epsilon(1e-6).scale(1.0));
    }
  }
}
