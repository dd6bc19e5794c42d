#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <catrace/mat_category.hpp>

#include <random>

using namespace catrace;

namespace {

// 0/1 matrix of the linear extension of an endofunction on {0..n-1}.
ExactMatrix linearize(const RingTag& ring, const std::vector<int>& img, int target_size)
{
    ExactMatrix m(ring, target_size, int(img.size()));
    for (int x = 0; x < int(img.size()); ++x) m.at(img[x], x) = 1;
    return m;
}

ExactMatrix diagonal_map(const RingTag& ring, int n)
{
    ExactMatrix d(ring, n * n, n);
    for (int i = 0; i < n; ++i) d.at(i * n + i, i) = 1;
    return d;
}

ExactMatrix random_square(const MatCategory& c, int n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> entry(-2, 2);
    ExactMatrix m(c.ring(), n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.set(i, j, Rat(entry(rng)));
    return m;
}

ExactMatrix random_invertible(const MatCategory& c, int n, std::mt19937_64& rng)
{
    for (;;) {
        auto m = random_square(c, n, rng);
        if (inverse(m)) return m;
    }
}

}  // namespace

TEST_CASE("mat category is a strict smc")
{
    MatCategory c(RingTag::Q());
    static_assert(SymmetricMonoidalCategory<MatCategory>);

    CHECK(c.identity(3) == ExactMatrix::identity(RingTag::Q(), 3));
    CHECK(c.tensor_obj(2, 3) == 6);
    CHECK(c.unit() == 1);

    auto s = c.symmetry(2, 2);
    CHECK(c.compose(s, s).is_identity());
    auto s23 = c.symmetry(2, 3);
    auto s32 = c.symmetry(3, 2);
    CHECK(c.compose(s32, s23).is_identity());

    // naturality of symmetry on a sample
    std::mt19937_64 rng(3);
    auto f = random_square(c, 2, rng);
    auto g = random_square(c, 3, rng);
    CHECK(c.equal(c.compose(s23, c.tensor_mor(f, g)), c.compose(c.tensor_mor(g, f), s23)));
}

TEST_CASE("standard dual pairs verify")
{
    for (auto ring : {RingTag::Q(), RingTag::Z(), RingTag::Zm(5)}) {
        MatCategory c(ring);
        for (int n = 0; n <= 4; ++n) CHECK(verify_dual_pair(c, mat_dual_pair(ring, n)));
    }

    MatCategory c(RingTag::Q());
    auto bad = mat_dual_pair(RingTag::Q(), 2);
    bad.ev = ExactMatrix(RingTag::Q(), 1, 4);
    CHECK_FALSE(verify_dual_pair(c, bad));

    auto mistyped = mat_dual_pair(RingTag::Q(), 2);
    mistyped.ev = ExactMatrix(RingTag::Q(), 1, 3);
    CHECK_THROWS(verify_dual_pair(c, mistyped));
}

TEST_CASE("trace recovers the matrix trace")
{
    MatCategory c(RingTag::Q());
    auto dp = mat_dual_pair(RingTag::Q(), 2);
    auto f = ExactMatrix::from_ints(RingTag::Q(), {{1, 2}, {3, 4}});
    CHECK(mat_scalar(trace(c, dp, f)) == 5);

    std::mt19937_64 rng(17);
    for (int t = 0; t < 50; ++t) {
        int n = t % 4;
        auto dpn = mat_dual_pair(RingTag::Q(), n);
        auto m = random_square(c, n, rng);
        CHECK(mat_scalar(trace(c, dpn, m)) == (n ? mat_trace(m) : Rat(0)));
    }
}

TEST_CASE("euler characteristic is the rank, and vanishes for rank p over Z/p")
{
    MatCategory cq(RingTag::Q());
    for (int n = 0; n <= 4; ++n)
        CHECK(mat_scalar(euler_characteristic(cq, mat_dual_pair(RingTag::Q(), n))) == n);

    MatCategory cp(RingTag::Zm(5));
    CHECK(mat_scalar(euler_characteristic(cp, mat_dual_pair(RingTag::Zm(5), 5))) == 0);
}

TEST_CASE("twisted trace with unit factors reduces to trace")
{
    MatCategory c(RingTag::Q());
    auto dp = mat_dual_pair(RingTag::Q(), 3);
    std::mt19937_64 rng(23);
    auto f = random_square(c, 3, rng);
    CHECK(c.equal(twisted_trace(c, dp, f, 1, 1), trace(c, dp, f)));
}

TEST_CASE("twisted trace counts parametrized fixed points")
{
    // g : Q x M -> M with |Q| = 2, |M| = 3:
    //   g(0,-) = identity (3 fixed points), g(1,-) = cyclic shift (0 fixed points)
    MatCategory c(RingTag::Z());
    int q = 2, m = 3;
    std::vector<int> img;
    for (int a = 0; a < q; ++a)
        for (int x = 0; x < m; ++x) img.push_back(a == 0 ? x : (x + 1) % m);
    auto f = linearize(RingTag::Z(), img, m);  // Z[Q] (x) Z[M] -> Z[M]
    auto dp = mat_dual_pair(RingTag::Z(), m);
    auto t = twisted_trace(c, dp, f, q, 1);
    REQUIRE(t.rows() == 1);
    REQUIRE(t.cols() == 2);
    CHECK(t.at(0, 0) == 3);
    CHECK(t.at(0, 1) == 0);
}

TEST_CASE("mate of an endomorphism is the transpose")
{
    MatCategory c(RingTag::Q());
    auto dp = mat_dual_pair(RingTag::Q(), 3);
    CHECK(c.equal(mate(c, dp, dp, c.identity(3), 1, 1), c.identity(3)));

    std::mt19937_64 rng(29);
    for (int t = 0; t < 30; ++t) {
        auto f = random_square(c, 3, rng);
        auto fd = mate(c, dp, dp, f, 1, 1);
        CHECK(fd == f.transpose());
        CHECK(c.equal(mate(c, dp, dp, fd, 1, 1), f));
    }
}

TEST_CASE("diagonal trace picks out fixed points")
{
    MatCategory c(RingTag::Z());
    int n = 3;
    auto dp = mat_dual_pair(RingTag::Z(), n);
    auto diag = diagonal_map(RingTag::Z(), n);

    // g = (0 -> 1, 1 -> 1, 2 -> 0): only 1 is fixed
    auto f = linearize(RingTag::Z(), {1, 1, 0}, n);
    auto t = trace_wrt_diagonal(c, dp, diag, n, f);
    CHECK(t == ExactMatrix::from_ints(RingTag::Z(), {{0}, {1}, {0}}));

    // cyclic shift has no fixed points
    auto shift = linearize(RingTag::Z(), {1, 2, 0}, n);
    CHECK(trace_wrt_diagonal(c, dp, diag, n, shift).is_zero());

    // transfer is the all-ones vector
    auto tr = transfer(c, dp, diag, n);
    for (int i = 0; i < n; ++i) CHECK(tr.at(i, 0) == 1);

    auto dp0 = mat_dual_pair(RingTag::Z(), 0);
    CHECK(transfer(c, dp0, diagonal_map(RingTag::Z(), 0), 0).is_zero());
}

TEST_CASE("trace does not depend on the chosen pair")
{
    MatCategory c(RingTag::Q());
    std::mt19937_64 rng(31);
    for (int t = 0; t < 40; ++t) {
        int n = 1 + t % 3;
        auto dp = mat_dual_pair(RingTag::Q(), n);
        // conjugate the pair by an invertible a on the dual leg
        auto a = random_invertible(c, n, rng);
        DualPair<MatCategory> alt{n, n, c.compose(c.tensor_mor(c.identity(n), a), dp.coev),
                                  c.compose(dp.ev, c.tensor_mor(*inverse(a), c.identity(n)))};
        REQUIRE(verify_dual_pair(c, alt));
        auto f = random_square(c, n, rng);
        CHECK(c.equal(trace(c, dp, f), trace(c, alt, f)));
        CHECK(c.equal(twisted_trace(c, dp, f, 1, 1), twisted_trace(c, alt, f, 1, 1)));
    }
}

TEST_CASE("flipped and tensored pairs verify")
{
    MatCategory c(RingTag::Q());
    auto dp2 = mat_dual_pair(RingTag::Q(), 2);
    auto dp3 = mat_dual_pair(RingTag::Q(), 3);
    CHECK(verify_dual_pair(c, dual_pair_flip(c, dp2)));
    CHECK(verify_dual_pair(c, tensor_dual_pair(c, dp2, dp3)));
}

TEST_CASE("yanking")
{
    MatCategory c(RingTag::Q());
    for (int n = 0; n <= 3; ++n) {
        auto dp = mat_dual_pair(RingTag::Q(), n);
        auto id2 = c.identity(c.tensor_obj(n, n));
        CHECK(c.equal(twisted_trace(c, dp, id2, n, n), c.identity(n)));
    }
}

TEST_CASE("block permutations compose correctly")
{
    MatCategory c(RingTag::Q());
    std::vector<int> objs{2, 3, 2};
    auto p = block_permutation(c, objs, {2, 0, 1});
    auto q = block_permutation(c, objs, {0, 1, 2});
    CHECK(q.is_identity());
    CHECK(p.rows() == 12);
    // applying the inverse permutation gives the identity
    std::vector<int> objs_perm{objs[2], objs[0], objs[1]};
    auto back = block_permutation(c, objs_perm, {1, 2, 0});
    CHECK(c.compose(back, p).is_identity());
}
