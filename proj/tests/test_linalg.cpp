#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace normgeom;
using namespace testsupport;

TEST_CASE("determinant, inverse, echelon basics") {
    CHECK(mat_det(Mat<Rat>::identity(4, Rat(0))) == Rat(1));

    Mat<Rat> u = Mat<Rat>::identity(2, Rat(0));
    u.at(0, 1) = make_rat(7, 3);
    Mat<Rat> uinv = mat_inverse(u);
    CHECK(uinv.at(0, 1) == make_rat(-7, 3));

    Mat<Rat> singular(2, 2, Rat(0));
    singular.at(0, 0) = 1;
    singular.at(0, 1) = 2;
    singular.at(1, 0) = 2;
    singular.at(1, 1) = 4;
    CHECK_THROWS_AS(mat_inverse(singular), PreconditionError);
    auto sub = Subspace<Rat>::from_rows(singular);
    CHECK(sub.dim() == 1);
    CHECK(sub.basis.at(0, 0) == Rat(1));
    CHECK(sub.basis.at(0, 1) == Rat(2));
}

TEST_CASE("echelon idempotence and solve residual") {
    Rng rng(201);
    auto ctx = padic_ctx(5);
    for (int n = 0; n < 100; ++n) {
        int d = static_cast<int>(2 + rng() % 3);
        Mat<Rat> m(d, d + 1, Rat(0));
        for (auto& x : m.a) x = rnd_rat(rng);
        Mat<Rat> once = m;
        mat_rref(once);
        Mat<Rat> twice = once;
        mat_rref(twice);
        CHECK(once == twice);

        auto a = rnd_invertible(rng, ctx, d);
        auto b = rnd_vector(rng, ctx, d);
        auto x = mat_solve(a, b);
        REQUIRE(x.has_value());
        auto back = mat_apply(a, *x);
        for (int i = 0; i < d; ++i) CHECK(back[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(i)]);
    }
    auto rctx = real_ctx();
    for (int n = 0; n < 100; ++n) {
        int d = 3;
        auto a = rnd_invertible(rng, rctx, d);
        auto b = rnd_vector(rng, rctx, d);
        auto x = mat_solve(a, b);
        REQUIRE(x.has_value());
        auto back = mat_apply(a, *x);
        for (int i = 0; i < d; ++i)
            CHECK(std::fabs(back[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]) < 1e-9);
    }
}

TEST_CASE("standard parabolic flags") {
    auto trivial = standard_parabolic(ParabolicType{3, {}}, Rat(0));
    CHECK(trivial.num_steps() == 0);
    CHECK(trivial.num_graded() == 1);

    auto borel = standard_parabolic(ParabolicType{4, {1, 2, 3}}, Rat(0));
    CHECK(borel.num_steps() == 3);
    CHECK(borel.dims() == std::set<int>{1, 2, 3});

    auto p1 = standard_parabolic(ParabolicType{3, {1}}, Rat(0));
    CHECK(p1.steps[0] == Subspace<Rat>::leading(3, 1, Rat(0)));

    CHECK_THROWS_AS(standard_parabolic(ParabolicType{3, {5}}, Rat(0)), PreconditionError);

    ParabolicType t{5, {2, 4}};
    CHECK(t.delta_complement() == std::set<int>{1, 3});
}

TEST_CASE("stabilizes") {
    Mat<Rat> upper = Mat<Rat>::identity(3, Rat(0));
    upper.at(0, 1) = 2;
    upper.at(1, 2) = make_rat(-1, 2);
    auto borel = standard_parabolic(ParabolicType{3, {1, 2}}, Rat(0));
    CHECK(stabilizes(upper, borel));

    Mat<Rat> swap12(2, 2, Rat(0));
    swap12.at(0, 1) = 1;
    swap12.at(1, 0) = 1;
    auto line = standard_parabolic(ParabolicType{2, {1}}, Rat(0));
    CHECK_FALSE(stabilizes(swap12, line));

    // block unipotent element of P_{{1}} in dimension 3
    Mat<Rat> pu = Mat<Rat>::identity(3, Rat(0));
    pu.at(0, 1) = 5;
    pu.at(0, 2) = make_rat(1, 3);
    auto p1 = standard_parabolic(ParabolicType{3, {1}}, Rat(0));
    CHECK(stabilizes(pu, p1));
}

TEST_CASE("flag-parabolic correspondence on random flags") {
    Rng rng(202);
    auto ctx = padic_ctx(3);
    for (int trial = 0; trial < 60; ++trial) {
        int d = static_cast<int>(3 + rng() % 3);  // 3..5
        // random flag: conjugate a standard one
        std::set<int> dims;
        for (int i = 1; i < d; ++i)
            if (rng() % 2) dims.insert(i);
        if (dims.empty()) dims.insert(1 + static_cast<int>(rng() % (d - 1)));
        auto std_flag = standard_parabolic(ParabolicType{d, dims}, Rat(0));
        auto h = rnd_invertible_global(rng, ctx, d);
        Flag<Rat> flag;
        flag.ambient = d;
        for (const auto& s : std_flag.steps) flag.steps.push_back(subspace_image(h, s));
        flag.validate();

        // generators of the stabilizer: conjugated block uppers
        for (int g = 0; g < 5; ++g) {
            Mat<Rat> blk = Mat<Rat>::identity(d, Rat(0));
            std::vector<int> bounds(dims.begin(), dims.end());
            bounds.push_back(d);
            int lo = 0;
            for (int hi : bounds) {
                for (int i = lo; i < hi; ++i)
                    for (int j = i; j < d; ++j)
                        if (j >= lo) blk.at(i, j) = (i == j) ? Rat(1) : Rat(rnd_int(rng, -3, 3));
                lo = hi;
            }
            // zero below the block structure happens by construction; make
            // entries within the stabilizer pattern only
            Mat<Rat> gmat = mat_mul(h, mat_mul(blk, mat_inverse(h)));
            CHECK(stabilizes(gmat, flag));
        }

        // a transposition across the first flag step must move the flag
        int c0 = *dims.begin();
        Mat<Rat> tr = Mat<Rat>::identity(d, Rat(0));
        tr.at(c0 - 1, c0 - 1) = 0;
        tr.at(c0, c0) = 0;
        tr.at(c0 - 1, c0) = 1;
        tr.at(c0, c0 - 1) = 1;
        Mat<Rat> moved = mat_mul(h, mat_mul(tr, mat_inverse(h)));
        CHECK_FALSE(stabilizes(moved, flag));
    }
}

TEST_CASE("complement basis is deterministic and spans") {
    Rng rng(203);
    auto ctx = padic_ctx(2);
    for (int trial = 0; trial < 40; ++trial) {
        int d = 4;
        auto inner = rnd_subspace(rng, ctx, d, 1 + static_cast<int>(rng() % 2));
        // grow an outer space strictly containing inner
        Subspace<Rat> outer;
        for (;;) {
            Mat<Rat> rows(inner.dim() + 2, d, Rat(0));
            for (int i = 0; i < inner.dim(); ++i)
                for (int j = 0; j < d; ++j) rows.at(i, j) = inner.basis.at(i, j);
            for (int i = inner.dim(); i < rows.rows; ++i)
                for (int j = 0; j < d; ++j) rows.at(i, j) = rnd_rat(rng, -3, 3, 2);
            outer = Subspace<Rat>::from_rows(rows);
            if (outer.dim() == inner.dim() + 2) break;
        }
        auto qb = complement_basis(outer, inner);
        auto qb2 = complement_basis(outer, inner);
        CHECK(qb == qb2);
        CHECK(static_cast<int>(qb.size()) == 2);
        Mat<Rat> all(inner.dim() + 2, d, Rat(0));
        for (int i = 0; i < inner.dim(); ++i)
            for (int j = 0; j < d; ++j) all.at(i, j) = inner.basis.at(i, j);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < d; ++j) all.at(inner.dim() + i, j) = qb[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        CHECK(mat_rank(all) == inner.dim() + 2);
    }
}
