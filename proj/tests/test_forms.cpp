#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nakamura/forms.hpp"

using namespace nakamura;

namespace {

Form random_monomial_form(std::mt19937_64& rng, int n) {
    uint32_t hol = static_cast<uint32_t>(rng()) & ((2u << n) - 1);
    uint32_t ahol = static_cast<uint32_t>(rng()) & ((2u << n) - 1);
    GaussQ c(Q(static_cast<long>(rng() % 7) - 3), Q(static_cast<long>(rng() % 7) - 3));
    if (c.is_zero()) c = GaussQ::one();
    return Form::monomial(n, FMonomial{hol, ahol}, c);
}

Form random_form(std::mt19937_64& rng, int n, int terms) {
    Form f(n);
    for (int t = 0; t < terms; ++t) f = f + random_monomial_form(rng, n);
    return f;
}

// all monomials over generators 0..n (hol and ahol masks)
std::vector<FMonomial> all_monomials(int n) {
    std::vector<FMonomial> out;
    uint32_t top = 1u << (n + 1);
    for (uint32_t h = 0; h < top; ++h)
        for (uint32_t a = 0; a < top; ++a) out.push_back(FMonomial{h, a});
    return out;
}

} // namespace

TEST_CASE("structure equations") {
    int n = 2;
    CHECK(d(Form::phi(n, 0)).is_zero());
    CHECK(d(Form::phibar(n, 0)).is_zero());

    // d phi^i = -1/2 lambda_i (phi^0 + phibar^0) ^ phi^i
    for (int i = 1; i <= n; ++i) {
        Form expected = c_weight_poly(n, FMonomial{1u << i, 0}) *
                        wedge(Form::phi(n, 0) + Form::phibar(n, 0), Form::phi(n, i));
        expected = GaussQ(Q(-1, 2)) * expected;
        CHECK(d(Form::phi(n, i)) == expected);
    }
}

TEST_CASE("d of a monomial is the weighted wedge") {
    int n = 3;
    FMonomial m{0b0110, 0b1000}; // phi^1 ^ phi^2 ^ phibar^3
    Form f = Form::monomial(n, m, GaussQ::one());
    Form expected = GaussQ(Q(-1, 2)) *
                    (c_weight_poly(n, m) * wedge(Form::phi(n, 0) + Form::phibar(n, 0), f));
    CHECK(d(f) == expected);
    CHECK(d(f) == del(f) + delbar(f));
}

TEST_CASE("canonical section is delbar-closed") {
    for (int n : {2, 3, 4}) {
        Form vol = Form::phi(n, 0);
        for (int i = 1; i <= n; ++i) vol = wedge(vol, Form::phi(n, i));
        CHECK(delbar(vol).is_zero());
        // but vol is not d-closed: del contributes nothing either (phi^0 present)
        CHECK(del(vol).is_zero());
    }
}

TEST_CASE("wedge basics") {
    int n = 2;
    CHECK(wedge(Form::phi(n, 1), Form::phi(n, 1)).is_zero());
    CHECK(wedge(Form::phi(n, 0), Form::phibar(n, 0)) ==
          GaussQ(Q(-1)) * wedge(Form::phibar(n, 0), Form::phi(n, 0)));

    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        Form a = random_form(rng, 3, 2), b = random_form(rng, 3, 2), c = random_form(rng, 3, 2);
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    }
    // graded commutativity on homogeneous monomials
    for (int t = 0; t < 30; ++t) {
        Form a = random_monomial_form(rng, 3), b = random_monomial_form(rng, 3);
        int da = a.terms().begin()->first.total_degree();
        int db = b.terms().begin()->first.total_degree();
        Form rhs = wedge(b, a);
        if ((da * db) % 2) rhs = GaussQ(Q(-1)) * rhs;
        CHECK(wedge(a, b) == rhs);
    }
}

TEST_CASE("conjugation") {
    int n = 2;
    // conj(phi^I ^ phibar^J) = (-1)^{pq} phi^J ^ phibar^I
    FMonomial m{0b010, 0b100}; // phi^1 ^ phibar^2 : p=q=1
    Form f = Form::monomial(n, m, GaussQ::one());
    CHECK(conj(f) == GaussQ(Q(-1)) * Form::monomial(n, FMonomial{0b100, 0b010}, GaussQ::one()));

    std::mt19937_64 rng(17);
    for (int t = 0; t < 40; ++t) {
        Form f2 = random_form(rng, 3, 3);
        CHECK(conj(conj(f2)) == f2);
        CHECK(conj(d(f2)) == d(conj(f2)));
        Form g2 = random_form(rng, 3, 2);
        CHECK(conj(wedge(f2, g2)) == wedge(conj(f2), conj(g2)));
    }
}

TEST_CASE("Leibniz rule") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 40; ++t) {
        Form a = random_monomial_form(rng, 3), b = random_monomial_form(rng, 3);
        int da = a.terms().begin()->first.total_degree();
        Form rhs = wedge(d(a), b) + (da % 2 ? GaussQ(Q(-1)) : GaussQ::one()) * wedge(a, d(b));
        CHECK(d(wedge(a, b)) == rhs);
    }
}

TEST_CASE("differential identities on all monomials up to n = 6") {
    for (int n = 2; n <= 6; ++n) {
        long bad = 0;
        for (const FMonomial& m : all_monomials(n)) {
            Form f = Form::monomial(n, m, GaussQ::one());
            if (!d(d(f)).is_zero() || !del(del(f)).is_zero() || !delbar(delbar(f)).is_zero() ||
                !(del(delbar(f)) + delbar(del(f))).is_zero() || !(d(f) == del(f) + delbar(f)))
                ++bad;
        }
        CAPTURE(n);
        CHECK(bad == 0);
    }
}

TEST_CASE("exponent vectors") {
    int n = 2;
    CHECK(exponent_vector_of(n, FMonomial{0b010, 0b100}) == std::vector<uint8_t>({1, 1}));
    CHECK(exponent_vector_of(n, FMonomial{0b001, 0b001}) == std::vector<uint8_t>({0, 0}));
    CHECK(exponent_vector_of(n, FMonomial{0b010, 0b010}) == std::vector<uint8_t>({2, 0}));
}

TEST_CASE("fundamental form powers are closed") {
    for (int n : {2, 3}) {
        Form omega(n);
        for (int i = 0; i <= n; ++i)
            omega = omega + GaussQ::i() * wedge(Form::phi(n, i), Form::phibar(n, i));
        Form acc = Form::one(n);
        for (int e = 0; e < n; ++e) acc = wedge(acc, omega);
        CHECK(d(acc).is_zero());
        CHECK(!acc.is_zero());
    }
}

TEST_CASE("bidegree projection and rendering") {
    int n = 2;
    Form mixed = Form::phi(n, 1) + wedge(Form::phi(n, 1), Form::phibar(n, 2));
    CHECK(mixed.component(1, 0) == Form::phi(n, 1));
    CHECK(mixed.component(1, 1) == wedge(Form::phi(n, 1), Form::phibar(n, 2)));
    CHECK(mixed.component(0, 1).is_zero());

    std::string s = d(Form::phi(n, 1)).to_string();
    CHECK(s.find("φ") != std::string::npos);
    CHECK(s.find("l1") != std::string::npos);
}
