#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nakamura/manifold_spec.hpp"
#include "oracles.hpp"

using namespace nakamura;

namespace {
ExponentVector ev(std::initializer_list<int> vals) {
    std::vector<uint8_t> v;
    for (int x : vals) v.push_back(static_cast<uint8_t>(x));
    return ExponentVector(std::move(v));
}

std::vector<uint8_t> random_exponents(std::mt19937_64& rng, int n) {
    std::vector<uint8_t> v(n);
    for (int i = 0; i < n; ++i) v[i] = static_cast<uint8_t>(rng() % 3);
    return v;
}
} // namespace

TEST_CASE("eigenvalue isolation on the 2x2 family") {
    ZMatrix m(2, 2);
    m.at(0, 0) = 2;
    m.at(0, 1) = 3;
    m.at(1, 0) = 1;
    m.at(1, 1) = 2;
    auto mu = isolate_eigenvalues(m);
    REQUIRE(mu.size() == 2);
    // ascending: 2 - sqrt(3) then 2 + sqrt(3)
    QInterval lo = mu[0].refine_to(64), hi = mu[1].refine_to(64);
    Q tol(1, 1000000000);
    CHECK(abs(lo.mid() - q_from_decimal("0.2679491924")) < tol);
    CHECK(abs(hi.mid() - q_from_decimal("3.7320508076")) < tol);
    CHECK(divides(mu[0].poly(), charpoly(m)));
    CHECK(mu[0].poly() == mu[1].poly());
}

TEST_CASE("identity matrix isolates exactly 1") {
    auto mu = isolate_eigenvalues(ZMatrix::identity(2));
    REQUIRE(mu.size() == 2);
    for (const auto& e : mu) {
        CHECK(e.is_rational());
        CHECK(e.rational_value() == 1);
    }
    CHECK(mu[0].same_state(mu[1])); // repeated eigenvalue shares state
}

TEST_CASE("Jordan block is rejected") {
    ZMatrix j(2, 2);
    j.at(0, 0) = 1;
    j.at(0, 1) = 1;
    j.at(1, 1) = 1;
    CHECK_THROWS_MATCHES(isolate_eigenvalues(j), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::not_diagonalizable;
                         }));
}

TEST_CASE("rotation matrix has complex spectrum") {
    ZMatrix r(2, 2);
    r.at(0, 1) = -1;
    r.at(1, 0) = 1;
    CHECK_THROWS_MATCHES(isolate_eigenvalues(r), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::complex_eigenvalue;
                         }));
}

TEST_CASE("negative spectrum is rejected") {
    ZMatrix neg(2, 2);
    neg.at(0, 0) = -2;
    neg.at(0, 1) = -3;
    neg.at(1, 0) = -1;
    neg.at(1, 1) = -2;
    CHECK_THROWS_MATCHES(isolate_eigenvalues(neg), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::non_positive_eigenvalue;
                         }));
}

TEST_CASE("refinement is monotone and keeps the Sturm invariant") {
    auto spec = example_am(2);
    const auto& e = spec.mu[1];
    QInterval prev = e.refine_to(32);
    for (long bits : {256L, 512L, 1024L, 2048L}) {
        QInterval cur = e.refine_to(bits);
        CHECK(cur.lo >= prev.lo);
        CHECK(cur.hi <= prev.hi);
        // strict shrink whenever the new target is below the old width
        if (prev.width() > Q(1, Z(1) << bits)) CHECK(cur.width() < prev.width());
        CHECK(cur.width() <= Q(1, Z(1) << bits));
        CHECK(e.check_isolating());
        prev = cur;
    }
    CHECK(e.cached_bits() >= 2048);
}

TEST_CASE("certified zero test on the m=2 spectrum") {
    auto spec = example_am(2);
    const auto& cert = *spec.cert;

    CHECK(cert.is_zero_sum(ev({0, 0})));     // empty product
    CHECK(cert.is_zero_sum(ev({1, 1})));     // det M = 1 forces mu1*mu2 = 1
    CHECK(!cert.is_zero_sum(ev({2, 1})));    // (2-sqrt3)^2 (2+sqrt3) = 2-sqrt3
    CHECK(!cert.is_zero_sum(ev({1, 2})));    // mirror, product about 3.73
    CHECK(cert.is_zero_sum(ev({2, 2})));

    // the interval route sees the (1,2) product inside [3.7, 3.8] and the
    // integer route confirms: det(I - K) != 0
    QInterval p = cert.product_interval(ev({1, 2}), 64);
    CHECK(p.lo > Q(37, 10));
    CHECK(p.hi < Q(38, 10));
    CHECK(cert.det_i_minus_k(ev({1, 2})) == -2);
    CHECK(cert.det_i_minus_k(ev({1, 1})) == 0);
}

TEST_CASE("signs of subset sums") {
    auto spec = example_am(2);
    const auto& cert = *spec.cert;
    CHECK(cert.sign_of_sum(ev({0, 0})) == 0);
    CHECK(cert.sign_of_sum(ev({1, 0})) == -1); // lambda_1 = log(2-sqrt3) < 0
    CHECK(cert.sign_of_sum(ev({0, 1})) == 1);
    CHECK(cert.sign_of_sum(ev({2, 0})) == -1);
    CHECK(cert.sign_of_sum(ev({0, 2})) == 1);
    CHECK(cert.sign_of_sum(ev({1, 1})) == 0);
}

TEST_CASE("verdict is independent of the split") {
    auto spec = fibre_product(example_am(2), example_am(2));
    const auto& cert = *spec.cert;
    std::mt19937_64 rng(123);
    for (int t = 0; t < 40; ++t) {
        std::vector<uint8_t> v = random_exponents(rng, spec.n);
        ExponentVector e(v);
        bool canonical = cert.is_zero_sum(e);
        // random valid split: ones distributed arbitrarily
        std::vector<uint8_t> a(v.size());
        for (size_t i = 0; i < v.size(); ++i)
            a[i] = v[i] == 2 ? 1 : (v[i] == 1 ? static_cast<uint8_t>(rng() % 2) : 0);
        CHECK(cert.is_zero_sum_split(e, a) == canonical);
    }
}

TEST_CASE("agreement with the 500-bit float oracle") {
    for (auto spec : {example_am(2), example_fourfold(), fibre_product(example_am(2), example_am(3))}) {
        std::mt19937_64 rng(2024);
        for (int t = 0; t < 100; ++t) {
            ExponentVector e(random_exponents(rng, spec.n));
            int oracle = oracles::float_product_vs_one(spec, e);
            if (oracle == 0) continue; // undecided by the float pipeline
            CAPTURE(spec.label, t);
            CHECK(spec.cert->is_zero_sum(e) == false);
            CHECK(spec.cert->sign_of_sum(e) == oracle);
        }
    }
}

TEST_CASE("all-ones is certified zero on every example") {
    for (auto spec : {example_am(2), example_am(7), example_fourfold(), example_dim(4), example_dim(5)}) {
        CHECK(spec.cert->is_zero_sum(ExponentVector(std::vector<uint8_t>(spec.n, 1))));
        CHECK(spec.cert->is_zero_sum(ExponentVector(std::vector<uint8_t>(spec.n, 2))));
    }
}

TEST_CASE("max |c| against the enumeration oracle") {
    auto am2 = example_am(2);
    QInterval mx = am2.cert->max_abs_c();
    // 2 * log(2 + sqrt(3)), computed independently at 300 bits
    mpfr_t s3, lg;
    mpfr_inits2(300, s3, lg, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(s3, 3, MPFR_RNDN);
    mpfr_sqrt(s3, s3, MPFR_RNDN);
    mpfr_add_ui(s3, s3, 2, MPFR_RNDN);
    mpfr_log(lg, s3, MPFR_RNDN);
    mpfr_mul_ui(lg, lg, 2, MPFR_RNDN);
    Q expected = mpfr_to_q(lg);
    mpfr_clears(s3, lg, static_cast<mpfr_ptr>(nullptr));
    CHECK(mx.contains(expected));
    CHECK(mx.width() * (Z(1) << 30) < mx.lo);

    QInterval oracle = oracles::brute_force_max_abs_c(am2, 200);
    CHECK(!(mx.hi < oracle.lo || oracle.hi < mx.lo)); // enclosures overlap

    auto ff = example_fourfold();
    QInterval mf = ff.cert->max_abs_c();
    QInterval of = oracles::brute_force_max_abs_c(ff, 200);
    CHECK(!(mf.hi < of.lo || of.hi < mf.lo));
}

TEST_CASE("admissibility bound matches the closed form at m=2") {
    auto spec = example_am(2);
    QInterval bound = tau_bound_interval(spec);
    // -pi / log(2 - sqrt(3)) at 500 bits, independent float computation
    mpfr_t pi, s3, lg, val;
    mpfr_inits2(500, pi, s3, lg, val, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_set_ui(s3, 3, MPFR_RNDN);
    mpfr_sqrt(s3, s3, MPFR_RNDN);
    mpfr_ui_sub(s3, 2, s3, MPFR_RNDN);
    mpfr_log(lg, s3, MPFR_RNDN);
    mpfr_div(val, pi, lg, MPFR_RNDN);
    mpfr_neg(val, val, MPFR_RNDN);
    Q expected = mpfr_to_q(val);
    mpfr_clears(pi, s3, lg, val, static_cast<mpfr_ptr>(nullptr));

    CHECK(bound.contains(expected));
    CHECK(bound.width() < Q(1, 1000000));
}

TEST_CASE("max |c| on a torus spectrum reports AllSumsZero") {
    // validate() rejects tori upstream, so drive the scalar layer directly
    ZMatrix eye = ZMatrix::identity(2);
    CertifiedScalars cert(eye, isolate_eigenvalues(eye));
    CHECK_THROWS_MATCHES(cert.max_abs_c(), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::all_sums_zero; }));
}

TEST_CASE("precision statistics accumulate") {
    auto spec = example_am(2);
    spec.cert->is_zero_sum(ev({1, 1}));
    CHECK(spec.cert->stats().zero_tests.load() >= 1);
    spec.cert->sign_of_sum(ev({1, 0})); // forces interval refinement
    CHECK(spec.cert->stats().max_bits.load() >= default_start_bits);
}
