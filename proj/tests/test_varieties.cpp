#include <catch2/catch_amalgamated.hpp>

#include <fflab/fflab.hpp>

#include <set>
#include <vector>

using namespace fflab;

namespace {

// Brute-force membership for the defining equations of the flat disk:
// pt = (alpha, alpha.alpha, beta, alpha.beta) with alpha, beta in F_q^{d-1}.
bool satisfies_flat_disk(const Field& f, const std::vector<std::uint16_t>& pt, int d) {
    std::uint16_t aa = 0, ab = 0;
    for (int i = 0; i < d - 1; ++i) {
        aa = f.add_idx(aa, f.mul_idx(pt[i], pt[i]));
        ab = f.add_idx(ab, f.mul_idx(pt[i], pt[d + i]));
    }
    return pt[d - 1] == aa && pt[2 * d - 1] == ab;
}

}  // namespace

TEST_CASE("variety cardinalities", "[varieties]") {
    for (long q : {3L, 5L, 7L, 9L}) {
        auto f = Field::make_q(q);
        for (int d : {2, 3}) {
            REQUIRE(flat_disk(f, d)->count() == static_cast<std::size_t>(pow_of(q, 2 * d - 2).get_num().get_si()));
            REQUIRE(paraboloid(f, d)->count() == static_cast<std::size_t>(pow_of(q, d - 1).get_num().get_si()));
            REQUIRE(subspace_h(f, d)->count() == static_cast<std::size_t>(pow_of(q, d - 1).get_num().get_si()));
        }
    }
}

TEST_CASE("flat disk point set matches brute-force equation solving", "[varieties]") {
    for (auto [q, d] : std::vector<std::pair<long, int>>{{3, 2}, {5, 2}, {3, 3}}) {
        auto f = Field::make_q(q);
        auto v = flat_disk(f, d);
        std::set<std::uint32_t> expected;
        std::vector<std::uint16_t> pt(2 * d, 0);
        for (std::size_t idx = 0;; ++idx) {
            if (satisfies_flat_disk(*f, pt, d))
                expected.insert(static_cast<std::uint32_t>(idx));
            int i = 2 * d - 1;
            while (i >= 0 && ++pt[i] == q) pt[i--] = 0;
            if (i < 0) break;
        }
        std::set<std::uint32_t> got(v->points.begin(), v->points.end());
        REQUIRE(got == expected);
        REQUIRE(v->points.size() == got.size());  // no duplicates
        for (auto i : v->points) REQUIRE(v->contains(i));
    }
}

TEST_CASE("the a = 0 slice sits inside the flat disk", "[varieties]") {
    for (auto [q, d] : std::vector<std::pair<long, int>>{{3, 2}, {5, 2}, {3, 3}, {7, 2}}) {
        auto f = Field::make_q(q);
        auto F = flat_disk(f, d);
        auto H = subspace_h(f, d);
        for (auto i : H->points) REQUIRE(F->contains(i));
    }
}

TEST_CASE("frequency partition is a partition with the stated sizes", "[varieties]") {
    for (auto [q, d] : std::vector<std::pair<long, int>>{{3, 2}, {5, 2}, {7, 2}, {3, 3}, {5, 3}}) {
        auto f = Field::make_q(q);
        // The constructor itself cross-checks counts against the closed forms.
        OmegaPartition part(f, d);
        long total = 0;
        for (int j = 0; j < 6; ++j) total += part.sizes[j];
        REQUIRE(Rational(total) == pow_of(q, 2 * d));
        REQUIRE(part.sizes[0] == 1);
    }
}

TEST_CASE("classification decision table on hand-picked points", "[varieties]") {
    const int d = 3;  // points live in F_q^6, blocks (m', m_d, m'', m_{2d})
    auto at = [&](std::initializer_list<int> coords) {
        std::vector<std::uint16_t> pt;
        for (int c : coords) pt.push_back(static_cast<std::uint16_t>(c));
        return pt;
    };
    REQUIRE(omega_classify(at({0, 0, 0, 0, 0, 0}), d) == 0);
    REQUIRE(omega_classify(at({1, 0, 0, 0, 0, 0}), d) == 1);  // m' only
    REQUIRE(omega_classify(at({0, 0, 0, 1, 0, 0}), d) == 1);  // middle only
    REQUIRE(omega_classify(at({0, 0, 0, 0, 0, 2}), d) == 2);  // m_2d only
    REQUIRE(omega_classify(at({1, 0, 0, 2, 0, 1}), d) == 2);  // m_d = 0, m_2d != 0
    REQUIRE(omega_classify(at({0, 0, 1, 2, 0, 0}), d) == 3);  // m_d != 0, middle, m_2d = 0
    REQUIRE(omega_classify(at({2, 0, 1, 0, 0, 0}), d) == 4);  // m_d != 0, middle 0, m_2d = 0
    REQUIRE(omega_classify(at({0, 0, 1, 0, 0, 2}), d) == 5);  // m_d != 0, m_2d != 0
}

TEST_CASE("surface measure has unit total mass and flat density", "[varieties]") {
    for (auto [q, d] : std::vector<std::pair<long, int>>{{3, 2}, {5, 2}, {3, 3}}) {
        auto f = Field::make_q(q);
        auto v = flat_disk(f, d);
        CycloGrid g = surface_measure(v).as_grid<CycloValue>();
        REQUIRE(g.measure() == Measure::Normalized);
        Rational density = pow_of(q, 2 * d) / Rational(static_cast<long>(v->count()));
        Rational mass(0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (v->contains(i)) {
                REQUIRE(g[i].as_rational() == density);
                mass += g[i].as_rational();
            } else {
                REQUIRE(g[i] == CycloValue(f->p()));
            }
        }
        REQUIRE(mass / pow_of(q, 2 * d) == Rational(1));  // integral against dx
    }
}

TEST_CASE("closed-form surface transform matches brute force exhaustively", "[oracle]") {
    for (auto [q, d] : std::vector<std::pair<long, int>>{{3, 2}, {5, 2}, {3, 3}}) {
        auto f = Field::make_q(q);
        SigmaVerification v = verify_sigma_ft(f, d);
        REQUIRE(v.pass);
        REQUIRE(v.mismatches == 0);
        REQUIRE(Rational(static_cast<long>(v.points_checked)) == pow_of(q, 2 * d));
        for (const auto& dev : v.per_class_max_dev) REQUIRE(dev == "0");
    }
}

TEST_CASE("decay profile: largest nonzero modulus is q^{1-d}, only on class 4", "[oracle]") {
    for (auto [q, d] : std::vector<std::pair<long, int>>{{3, 2}, {5, 2}, {3, 3}}) {
        auto f = Field::make_q(q);
        SigmaTransform sigma(f, d);
        DecayProfile prof = decay_profile(sigma);
        REQUIRE(prof.all_moduli_rational);
        REQUIRE(prof.max_sq == Rational(1) / pow_of(q, d - 1));
        REQUIRE(prof.attained[4]);
        for (int j : {1, 2, 3, 5}) REQUIRE_FALSE(prof.attained[j]);
    }
}

TEST_CASE("closed-form class indicator transforms match direct sums", "[oracle]") {
    const long q = 3;
    const int d = 2;
    auto f = Field::make_q(q);
    OmegaPartition part(f, d);
    CycloGrid probe(f, 2 * d, Measure::Counting);
    const auto& ct = character_tables(f);
    std::vector<std::uint16_t> y(2 * d, 0);
    for (std::size_t yi = 0;; ++yi) {
        for (int j : {2, 4, 5}) {
            // Omega_j^(y) = sum_{m in Omega_j} chi(-y.m), rational by symmetry.
            CycloValue direct(f->p());
            std::vector<std::uint16_t> m(2 * d, 0);
            for (std::size_t mi = 0;; ++mi) {
                if (part.cls[mi] == j) {
                    int e = 0;
                    for (int i = 0; i < 2 * d; ++i)
                        e += ct.exp_neg[static_cast<std::size_t>(y[i]) * q + m[i]];
                    direct += CycloValue::root_power(f->p(), e % f->p());
                }
                int i = 2 * d - 1;
                while (i >= 0 && ++m[i] == q) m[i--] = 0;
                if (i < 0) break;
            }
            REQUIRE(direct.as_rational() == omega_hat_closed(f, d, j, y));
        }
        int i = 2 * d - 1;
        while (i >= 0 && ++y[i] == q) y[i--] = 0;
        if (i < 0) break;
    }
}

TEST_CASE("surface grids require a variety and reject mismatched tags", "[varieties]") {
    auto f = Field::make_q(3);
    auto v = flat_disk(f, 2);
    REQUIRE_THROWS_AS(CycloGrid(f, 4, Measure::Surface), std::invalid_argument);
    REQUIRE_THROWS_AS(CycloGrid(f, 4, Measure::Counting, v), std::invalid_argument);
    CycloGrid ok(f, 4, Measure::Surface, v);
    REQUIRE(ok.variety() == v);
}
