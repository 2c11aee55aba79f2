"""End-to-end smoke tests for the python bindings."""

import math
from fractions import Fraction

import pytest

import gibbspart as gp


def frac(s):
    return Fraction(s)


class TestModels:
    def test_construct_and_describe(self):
        model = gp.Model.ewens_pitman(0.5, 1.0)
        assert "0.5" in model.describe()
        gnedin = gp.Model.gnedin(1.0, 1.0)
        assert gnedin.describe() != model.describe()

    def test_from_json(self):
        model = gp.Model.from_json(
            '{"type":"ewens_pitman","alpha":0.0,"theta":1.0}'
        )
        assert gp.smallest_tail_exact(model, 4, 2) == "3/8"

    def test_invalid_parameters_raise_value_error(self):
        with pytest.raises(ValueError):
            gp.Model.ewens_pitman(0.5, -0.9)
        with pytest.raises(ValueError):
            gp.Model.ewens_pitman(1.2, 1.0)

    def test_eppf(self):
        model = gp.Model.ewens_pitman(0.0, 1.0)
        # One particular partition of {1,2,3,4} into 4 singletons.
        assert frac(model.eppf_exact([1, 1, 1, 1])) == Fraction(1, 24)
        assert model.eppf([1, 1, 1, 1]) == pytest.approx(1 / 24)


class TestExactDistributions:
    def setup_method(self):
        self.model = gp.Model.ewens_pitman(0.0, 1.0)

    def test_blocks_pmf(self):
        pmf = gp.blocks_pmf(self.model, 4)
        assert pmf == pytest.approx([6 / 24, 11 / 24, 6 / 24, 1 / 24])
        exact = gp.blocks_pmf_exact(self.model, 4)
        assert [frac(s) for s in exact] == [
            Fraction(1, 4),
            Fraction(11, 24),
            Fraction(1, 4),
            Fraction(1, 24),
        ]

    def test_extreme_cdf_matches_enumeration(self):
        for r in (1, 2, 3):
            lib = frac(gp.extreme_cdf_exact(self.model, 6, 1, r))
            ref = frac(
                gp.enum_probability(
                    self.model, 6, "largest-at-most", r=r
                )
            )
            assert lib == ref

    def test_smallest_tail_matches_enumeration(self):
        for r in (1, 2, 3):
            lib = frac(gp.smallest_tail_exact(self.model, 6, r))
            ref = frac(
                gp.enum_probability(
                    self.model, 6, "smallest-at-least", r=r
                )
            )
            assert lib == ref

    def test_conditional_and_moment(self):
        cond = gp.conditional_extreme(self.model, 4, 2, "largest", 2)
        assert cond == pytest.approx(3 / 11)
        mom = gp.factorial_moment(self.model, 4, "largest", 1)
        pmf = gp.blocks_pmf(self.model, 4)
        assert 1.0 <= mom <= 4.0
        assert len(pmf) == 4

    def test_probabilities_normalize(self):
        pmf = gp.blocks_pmf(self.model, 10)
        assert math.fsum(pmf) == pytest.approx(1.0, abs=1e-12)


class TestSampling:
    def test_deterministic_and_consistent(self):
        model = gp.Model.ewens_pitman(0.5, 1.0)
        a = gp.sample_block_sizes(model, 30, seed=42)
        b = gp.sample_block_sizes(model, 30, seed=42)
        assert a == b
        assert sum(a) == 30
        assert sorted(a, reverse=True) == a

    def test_count_no_singletons_degenerate(self):
        # One single block of size n: the smallest block always exceeds 1.
        model = gp.Model.ewens_pitman(-1.0, 1.0)
        assert gp.count_no_singletons(model, 20, 50, seed=3) == 50


class TestAsymptotics:
    def test_limit_functions(self):
        assert gp.dickman_rho(0.0, 1.0, 0.5) == pytest.approx(
            1 - math.log(2), abs=1e-9
        )
        assert gp.buchstab_omega(1.0, 0.4) == pytest.approx(
            0.4 * (1 + math.log(1.5)), abs=1e-6
        )
        assert gp.sibuya_pmf(0.5, 1) == pytest.approx(0.5)

    def test_asymptotic_form_evaluate(self):
        form = gp.smallest_large_dev(0.0, 1.0, 0.4)
        assert form.evaluate(400) > 0
        d = gp.smallest_tail_asymp(0.5, 1.0, 2)
        lead = d["leading"]
        assert lead.n_power == pytest.approx(-1.5)
        assert lead.evaluate(100) == pytest.approx(
            lead.coefficient * 100 ** -1.5
        )

    def test_root_finder(self):
        rho = gp.rho_r_root(0.5, 10)
        assert 1.0 < rho < 2.0

    def test_moment_limits(self):
        assert gp.moment_limit_smallest(-1.0, 2, 1) == pytest.approx(0.25)
        assert gp.moment_limit_largest(-1.0, 2.0, 1) == pytest.approx(0.75)


class TestSpecialAndIntegrals:
    def test_special_number(self):
        # Row-5 table entry with factorial weights has magnitude 50.
        assert abs(frac(gp.special_number_exact("stirling1", 5, 2))) == 50
        d = gp.special_number("stirling1", 5, 2)
        assert abs(d["value"]) == pytest.approx(50.0)
        assert d["sign"] in (-1, 1)

    def test_incomplete_dirichlet_flat(self):
        # nu = rho = 1 is the flat case: the integral is the box volume.
        assert gp.incomplete_dirichlet(1, 0.2, 0.3, 1.0, 1.0) == pytest.approx(
            0.5, abs=1e-12
        )
        est, se = gp.dirichlet_mc(1, 0.2, 0.3, 1.0, 1.0, 1000, seed=7)
        assert est == pytest.approx(0.5, abs=1e-12)
        assert se == 0.0

    def test_partition_count(self):
        assert gp.partition_count(10) == "42"


class TestVerify:
    def test_quadrature_suite(self):
        checks = gp.verify_quadrature(cases=2, seed=5, samples=200_000)
        assert len(checks) == 2
        assert all(c["pass"] for c in checks)
        assert {"name", "observed", "threshold", "detail"} <= set(checks[0])

    def test_simulation_cell(self):
        model = gp.Model.ewens_pitman(0.0, 1.0)
        cell = gp.verify_simulation_cell(model, 50, 500, seed=11)
        assert cell["pass"]
