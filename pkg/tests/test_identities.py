"""Identity registry, evaluators, and the grid verifier."""

from fractions import Fraction as F

import pytest

from apostol.families import EXP, FamilyParams, UNIT, atp_sequence, gould_hopper, laguerre, trunc_exp
from apostol.algebra import binomial
from apostol.identities import (
    IdentityPoint,
    SHAPE_CONVOLUTION,
    SHAPE_PRODUCT,
    default_grid,
    identity_ids,
    identity_spec,
    product_side_literal,
    sides,
    verify_grid,
)
from apostol.identities import _product_side

SAMPLE = dict(x=F(1, 2), y=F(1, 3), X=F(1, 5), Y=F(2, 7))


def point(shape, n, m, c, d, lam, mu, nu, base, **overrides):
    args = dict(SAMPLE)
    args.update(overrides)
    return IdentityPoint(shape, n, m, c, d, lam, mu, nu, base, **args)


class TestRegistry:
    def test_catalogue_contents(self):
        ids = identity_ids()
        assert "thm21" in ids and "cor31" in ids and "tbl21_B" in ids
        assert len(ids) == 23
        assert list(ids) == sorted(ids)

    def test_unknown_tag(self):
        with pytest.raises(KeyError):
            identity_spec("nosuch")

    def test_table_tags_cover_both_shapes(self):
        for tag in ("tbl21_B", "tbl22_E", "tbl33_G"):
            assert identity_spec(tag).shapes == (SHAPE_CONVOLUTION, SHAPE_PRODUCT)

    def test_corollary_base_pins(self):
        assert identity_spec("cor31").base_kind == "gould_hopper"
        assert identity_spec("cor34").base_kind == "laguerre"
        assert identity_spec("cor36").base_kind == "trunc_exp"
        pt = point(SHAPE_CONVOLUTION, 2, 1, 1, 2, F(2), 1, 0, UNIT)
        with pytest.raises(ValueError, match="pinned to base"):
            sides("cor31", pt)

    def test_classical_tags_pin_lambda(self):
        pt = point(SHAPE_CONVOLUTION, 2, 1, 1, 2, F(2), 1, 0, UNIT)
        with pytest.raises(ValueError, match="pins lambda"):
            sides("tbl22_E", pt)


class TestPointValidation:
    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            point(SHAPE_CONVOLUTION, -1, 1, 1, 1, F(2), 1, 0, UNIT)
        with pytest.raises(ValueError):
            point(SHAPE_CONVOLUTION, 0, 0, 1, 1, F(2), 1, 0, UNIT)
        with pytest.raises(ValueError):
            point(SHAPE_CONVOLUTION, 0, 1, 0, 1, F(2), 1, 0, UNIT)
        with pytest.raises(ValueError):
            point("thm99", 0, 1, 1, 1, F(2), 1, 0, UNIT)


class TestConvolutionShape:
    def test_constant_case_closed_form(self):
        # n = 0 collapses to kernel constants: (2/(lam+1))^(2m-1)
        for m in (1, 2, 3):
            for lam in (F(2), F(1, 2), F(-2), F(3)):
                for c, d in ((1, 1), (2, 3), (3, 2)):
                    pt = point(SHAPE_CONVOLUTION, 0, m, c, d, lam, 1, 0, UNIT)
                    lhs, rhs = sides("thm21", pt)
                    assert lhs == rhs == (F(2) / (lam + 1)) ** (2 * m - 1)

    def test_equal_cd_trivially_symmetric(self):
        pt = point(SHAPE_CONVOLUTION, 5, 2, 3, 3, F(1, 2), 1, 1, gould_hopper(2))
        lhs, rhs = sides("thm21", pt)
        assert lhs == rhs

    def test_swap_cd_exchanges_sides(self):
        pt = point(SHAPE_CONVOLUTION, 6, 2, 2, 3, F(3), 0, 1, laguerre(2))
        lhs, rhs = sides("thm21", pt)
        lhs2, rhs2 = sides("thm21", pt.swapped_cd())
        assert (lhs2, rhs2) == (rhs, lhs)

    @pytest.mark.parametrize("base", [UNIT, EXP, gould_hopper(2), laguerre(3), trunc_exp(2)],
                             ids=lambda b: b.label())
    def test_holds_at_mixed_parity(self, base):
        for c, d in ((1, 2), (2, 2), (2, 3)):
            pt = point(SHAPE_CONVOLUTION, 5, 2, c, d, F(-2), 1, 1, base)
            lhs, rhs = sides("thm21", pt)
            assert lhs == rhs


class TestProductShape:
    def test_unit_cd_collapse(self):
        # c = d = 1 leaves the plain binomial convolution of two families
        n, m, lam = 4, 2, F(3)
        pt = point(SHAPE_PRODUCT, n, m, 1, 1, lam, 1, 0, EXP)
        lhs, rhs = sides("thm22", pt)
        a = atp_sequence(FamilyParams(m, lam, 1, 0, EXP), SAMPLE["x"], SAMPLE["y"], n)
        b = atp_sequence(FamilyParams(m, lam, 1, 0, EXP), SAMPLE["X"], SAMPLE["Y"], n)
        expected = sum(binomial(n, k) * a[k] * b[n - k] for k in range(n + 1))
        assert lhs == rhs == expected

    def test_equal_cd_trivially_symmetric(self):
        pt = point(SHAPE_PRODUCT, 5, 1, 3, 3, F(2), 1, 1, trunc_exp(2))
        lhs, rhs = sides("thm22", pt)
        assert lhs == rhs

    def test_example_point(self):
        pt = point(SHAPE_PRODUCT, 3, 1, 3, 1, F(2), 1, 0, EXP,
                   x=F(1), y=F(0), X=F(1, 2), Y=F(0))
        lhs, rhs = sides("thm22", pt)
        assert lhs == rhs

    def test_holds_at_every_parity(self):
        # the double-sum identity is parity-free; only its closed-form
        # series requires odd c, d (see test_oracle for that contrast)
        for c, d in ((1, 2), (2, 2), (2, 3), (4, 2)):
            pt = point(SHAPE_PRODUCT, 4, 1, c, d, F(2), 1, 1, gould_hopper(2))
            lhs, rhs = sides("thm22", pt)
            assert lhs == rhs

    def test_swap_cd_exchanges_sides(self):
        pt = point(SHAPE_PRODUCT, 4, 2, 3, 5, F(1, 2), 1, 1, laguerre(2))
        lhs, rhs = sides("thm22", pt)
        lhs2, rhs2 = sides("thm22", pt.swapped_cd())
        assert (lhs2, rhs2) == (rhs, lhs)

    @pytest.mark.parametrize("kind,mu,nu", [
        ("atp", 1, 1), ("bernoulli", 0, 1), ("euler", 1, 0), ("genocchi", 1, 1),
    ])
    def test_grouped_evaluation_matches_literal_triple_sum(self, kind, mu, nu):
        for (c, d), lam in (((3, 5), F(1, 2)), ((2, 3), F(2))):
            pt = point(SHAPE_PRODUCT, 4, 2, c, d, lam, mu, nu, laguerre(2))
            assert _product_side(pt, kind, c, d) == product_side_literal(pt, kind, c, d)
            assert _product_side(pt, kind, d, c) == product_side_literal(pt, kind, d, c)


class TestTableRows:
    def test_bernoulli_row_carries_positive_lambda_sums(self):
        # row values are the (-1)^m-signed lambda -> -lambda instances, so
        # their convolution shape carries S_l(.; +lambda), not S_l(.; -lambda)
        from apostol.identities import _conv_inner
        from apostol.families import classical_reduce, gen_power_sum_values

        m, lam, a, k_max = 2, F(2), 3, 4
        inner = _conv_inner("bernoulli", m, lam, 0, 1, UNIT, a, SAMPLE["X"], SAMPLE["Y"], k_max)
        sums = gen_power_sum_values("S", a - 1, lam, k_max)
        flo = classical_reduce("bernoulli", m - 1, lam, a * SAMPLE["X"], a * SAMPLE["Y"],
                               UNIT, k_max)
        for k in range(k_max + 1):
            assert inner[k] == sum(binomial(k, l) * sums[l] * flo[k - l]
                                   for l in range(k + 1))

    @pytest.mark.parametrize("tag,mu,nu", [
        ("tbl21_B", 0, 1), ("tbl21_E", 1, 0), ("tbl21_G", 1, 1),
    ])
    def test_rows_hold_on_both_shapes(self, tag, mu, nu):
        for lam in (F(2), F(1)):
            for shape, (c, d) in ((SHAPE_CONVOLUTION, (2, 3)), (SHAPE_PRODUCT, (3, 5))):
                pt = point(shape, 4, 2, c, d, lam, mu, nu, gould_hopper(2))
                lhs, rhs = sides(tag, pt)
                assert lhs == rhs, (tag, lam, shape)

    def test_classical_rows_match_lambda_one_apostol_rows(self):
        for suffix, mu, nu in (("B", 0, 1), ("E", 1, 0), ("G", 1, 1)):
            pt = point(SHAPE_CONVOLUTION, 5, 2, 2, 3, F(1), mu, nu, trunc_exp(2))
            assert sides(f"tbl22_{suffix}", pt) == sides(f"tbl21_{suffix}", pt)

    @pytest.mark.parametrize("tag", ["tbl31_E", "tbl32_G", "tbl33_B"])
    def test_based_rows_hold(self, tag):
        base_kind = identity_spec(tag).base_kind
        from apostol.families import BaseKind

        mu, nu = identity_spec(tag).pinned_mu_nu
        for shape, (c, d) in ((SHAPE_CONVOLUTION, (1, 3)), (SHAPE_PRODUCT, (3, 1))):
            pt = point(shape, 3, 1, c, d, F(2), mu, nu, BaseKind(base_kind, 2))
            lhs, rhs = sides(tag, pt)
            assert lhs == rhs


class TestVerifyGrid:
    def test_empty_grid(self):
        report = verify_grid("thm21", [])
        assert report.total == report.passed == report.failed == report.errored == 0
        assert report.to_json_dict()["summary"] == {
            "total": 0, "passed": 0, "failed": 0, "errored": 0}

    def test_small_grid_passes(self):
        pts = [point(SHAPE_CONVOLUTION, n, 1, 2, 3, F(2), 1, 0, UNIT) for n in range(4)]
        report = verify_grid("thm21", pts)
        assert report.total == 4 and report.all_passed

    def test_errors_recorded_not_thrown(self):
        bad = point(SHAPE_CONVOLUTION, 2, 1, 1, 2, F(-1), 1, 0, UNIT)
        good = point(SHAPE_CONVOLUTION, 2, 1, 1, 2, F(2), 1, 0, UNIT)
        report = verify_grid("thm21", [bad, good])
        assert report.total == 2
        assert report.errored == 1 and report.passed == 1 and report.failed == 0
        errored = [r for r in report.results if r.error is not None]
        assert not errored[0].passed
        assert "MathDomainError" in errored[0].error

    def test_results_sorted_deterministically(self):
        pts = [point(SHAPE_CONVOLUTION, n, 1, c, d, F(2), 1, 0, UNIT)
               for n in (3, 1) for c in (2, 1) for d in (1, 3)]
        forward = verify_grid("thm21", pts)
        backward = verify_grid("thm21", list(reversed(pts)))
        assert forward == backward
        keys = [r.point.sort_key() for r in forward.results]
        assert keys == sorted(keys)

    def test_thread_pool_matches_sequential(self):
        pts = [point(SHAPE_CONVOLUTION, n, 1, c, 1, F(1, 2), 1, 1, EXP)
               for n in range(5) for c in (1, 2)]
        assert verify_grid("thm21", pts, workers=4) == verify_grid("thm21", pts, workers=1)

    def test_default_grid_shapes_and_sizes(self):
        grid = default_grid("cor31")
        assert all(p.shape == SHAPE_CONVOLUTION for p in grid)
        assert all(p.base.kind == "gould_hopper" for p in grid)
        assert {p.base.degree for p in grid} == {1, 2, 3}
        assert {(p.c, p.d) for p in grid} == {(c, d) for c in (1, 2, 3) for d in (1, 2, 3)}
        grid22 = default_grid("cor32")
        assert {(p.c, p.d) for p in grid22} == {(c, d) for c in (1, 3, 5) for d in (1, 3, 5)}

    def test_json_report_fields(self):
        pt = point(SHAPE_CONVOLUTION, 1, 1, 1, 2, F(2), 1, 0, UNIT)
        data = verify_grid("thm21", [pt]).to_json_dict()
        assert data["schema"] == 1
        assert data["identity"] == "thm21"
        record = data["points"][0]
        assert record["pass"] is True
        assert record["point"]["lambda"] == "2"
        assert F(record["lhs"]) == F(record["rhs"])
