"""Closed-form cost model: frozen anchors, table reproduction, and
agreement between instrumented runs and the printed formulas."""

import pytest

from mge import costmodel as cm

H = lambda n: (n * n - n) // 2


class TestUnitForms:
    def test_frozen_op_anchors(self):
        assert cm.t_cost("refresh", 2) == 5
        assert cm.t_cost("refresh", 4) == 13
        assert cm.t_cost("strong_refresh", 3) == 9
        assert cm.t_cost("full_add", 3) == 11
        assert cm.t_cost("sec_mult", 2) == 9
        assert cm.t_cost("sec_and", 5) == 75
        assert cm.t_cost("sec_not", 3) == 1
        assert cm.t_cost("sec_or", 2) == 14
        assert cm.t_cost("sec_nonzero", 2, w=8) == 103
        assert cm.t_cost("sec_nonzero", 3, w=4) == 182
        assert cm.t_cost("b2m", 2) == 5
        assert cm.t_cost("b2minv", 2) == 7
        assert cm.t_cost("sec_cond_add", 2, 1) == 14
        assert cm.t_cost("sec_cond_add", 3, 10) == 360
        assert cm.t_cost("sec_scalar_mult", 2, 1) == 14
        assert cm.t_cost("sec_mult_sub", 2, 1) == 11

    def test_frozen_rand_anchors(self):
        assert cm.r_cost("refresh", 3, w=8) == 16
        assert cm.r_cost("strong_refresh", 3, w=4) == 12
        assert cm.r_cost("sec_mult", 2, w=8) == 8
        assert cm.r_cost("sec_not", 4, w=8) == 0
        assert cm.r_cost("sec_cond_add", 2, 1, w=8) == 16
        assert cm.r_cost("sec_mult_sub", 2, 10, w=4) == 40
        assert cm.r_cost("b2minv", 3, w=8) == 24

    def test_pipeline_assembly_anchors(self):
        assert cm.t_cost("sec_row_ech", 2, 44, w=8) == 855008
        assert cm.t_cost("pipeline", 2, 44, w=8) == 858968
        assert cm.t_cost("sec_back_sub", 2, 44) == 858968 - 855008
        assert cm.r_cost("sec_row_ech", 2, 44, w=8) == 741576
        assert cm.r_cost("sec_back_sub", 2, 44, w=8) == 352
        assert cm.r_cost("pipeline", 2, 44, w=8) == 741928

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    @pytest.mark.parametrize("m", [1, 3, 10])
    def test_pipeline_is_sum_of_stages(self, n, m):
        assert cm.t_cost("pipeline", n, m, w=8) == (
            cm.t_cost("sec_row_ech", n, m, w=8)
            + cm.t_cost("sec_back_sub", n, m))
        assert cm.r_cost("pipeline", n, m, w=4) == (
            cm.r_cost("sec_row_ech", n, m, w=4)
            + cm.r_cost("sec_back_sub", n, m, w=4))

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            cm.t_cost("laplace_expansion", 2)
        with pytest.raises(ValueError):
            cm.t_cost("sec_cond_add", 2)  # size required
        with pytest.raises(ValueError):
            cm.t_cost("sec_nonzero", 2)  # width required
        with pytest.raises(ValueError):
            cm.r_cost("refresh", 2)  # width required for bit totals
        with pytest.raises(ValueError):
            cm.t_cost("refresh", 1)

    def test_w_eff_power_of_two_convention(self):
        assert cm.w_eff(16) == 4
        assert cm.w_eff(256) == 8
        assert cm.w_eff(7) == 3
        assert cm.w_eff(31) == 5
        assert cm.w_eff(127) == 7

    def test_div_round_half_up(self):
        assert cm._div_round(5, 2) == 3
        assert cm._div_round(4, 2) == 2
        assert cm._div_round(4095, 8192) == 0
        assert cm._div_round(4096, 8192) == 1
        assert cm._div_round(1499, 1000) == 1
        assert cm._div_round(1500, 1000) == 2


class TestParamSets:
    def test_table_has_31_rows_with_unique_labels(self):
        assert len(cm.PARAM_SETS) == 31
        labels = [p.label for p in cm.PARAM_SETS]
        assert len(set(labels)) == 31
        assert set(cm.PRESETS) == set(labels)

    def test_family_census(self):
        by_scheme = {}
        for p in cm.PARAM_SETS:
            by_scheme.setdefault(p.scheme, []).append(p)
        assert len(by_scheme["uov"]) == 4
        assert len(by_scheme["mayo"]) == 3
        assert len(by_scheme["qruov"]) == 12
        assert len(by_scheme["snova"]) == 9
        assert len(by_scheme["mqsign"]) == 3

    def test_w_property(self):
        for p in cm.PARAM_SETS:
            assert p.w == cm.w_eff(p.q)
            assert 1 <= p.w <= 8


@pytest.fixture(scope="module")
def rows():
    return cm.cost_table()


class TestTableReproduction:
    def test_row_count_and_order(self, rows):
        assert len(rows) == 93
        labels = [p.label for p in cm.PARAM_SETS]
        assert [(r.label, r.n) for r in rows] == [
            (lab, n) for lab in labels for n in (2, 3, 4)]

    def test_spot_anchor_cells(self, rows):
        cell = {(r.label, r.n): r for r in rows}
        assert cell[("uov-ip", 2)].rand_scaled == 742
        assert cell[("uov-ip", 3)].rand_scaled == 2226
        assert cell[("uov-ip", 4)].rand_scaled == 4452
        # ops cells land within the +-2 printing tolerance; the model
        # rounds half up where the snapshot's generator rounded up
        assert cell[("uov-ip", 2)].ops_scaled == 105
        assert abs(cell[("uov-ip", 3)].ops_scaled - 260) <= 2
        assert abs(cell[("uov-iii", 2)].ops_scaled - 428) <= 2
        assert abs(cell[("mayo-i", 2)].ops_scaled - 300) <= 2
        assert cell[("mayo-i", 2)].rand_scaled == 1112
        assert cell[("mayo-iii", 2)].rand_scaled == 3680
        assert cell[("qruov-i-q7-m100", 2)].rand_scaled == 3102

    def test_every_cell_within_tolerance_except_known(self, rows):
        bad = cm.verify_rows(rows)
        assert {(b["label"], b["column"], b["n"]) for b in bad} == set(
            cm.KNOWN_SNAPSHOT_DEVIATIONS)

    def test_tight_census_of_rounding_slack(self, rows):
        # strictly tighter than the acceptance tolerance: every
        # reproducible cell is off by at most one unit, never two
        known = set(cm.KNOWN_SNAPSHOT_DEVIATIONS)
        for r in rows:
            want_ops, want_rand = cm.PRINTED_TABLE[r.label]
            i = (2, 3, 4).index(r.n)
            assert abs(r.ops_scaled - want_ops[i]) <= 1
            if (r.label, "rand", r.n) not in known:
                assert abs(r.rand_scaled - want_rand[i]) <= 1

    def test_known_deviations_are_snova_iii_rand_cells(self):
        assert cm.KNOWN_SNAPSHOT_DEVIATIONS == (
            ("snova-iii-m100", "rand", 2),
            ("snova-iii-m100", "rand", 3),
            ("snova-iii-m100", "rand", 4),
        )
        # the snapshot prints another row's randomness there; the model
        # value is internally consistent with the same formulas that
        # reproduce the other 90 cells
        cell = {(r.label, r.n): r for r in cm.cost_table()}
        assert cell[("snova-iii-m100", 2)].rand_scaled == 4153
        assert cell[("snova-iii-m100", 3)].rand_scaled == 12458
        assert cell[("snova-iii-m100", 4)].rand_scaled == 24916

    def test_relative_cost_ratio_claims(self, rows):
        cell = {(r.label, r.n): r for r in rows}
        for n in (2, 3, 4):
            for mayo, uov in (("mayo-iii", "uov-iii"), ("mayo-v", "uov-v")):
                ops = cell[(mayo, n)].ops_total / cell[(uov, n)].ops_total
                rnd = cell[(mayo, n)].rand_bits / cell[(uov, n)].rand_bits
                assert abs(ops - 2.3) <= 0.1
                assert abs(rnd - 1.2) <= 0.1

    def test_csv_golden_prefix(self, rows):
        lines = cm.to_csv(rows).splitlines()
        assert lines[0] == cm.CSV_HEADER
        assert lines[1] == "uov,Ip,256,44,2,856900,105,741928,742"
        assert lines[4] == "uov,Is,16,64,2,2451520,299,1111744,1112"
        assert len(lines) == 94

    def test_totals_are_exact_integers(self, rows):
        for r in rows:
            assert isinstance(r.ops_total, int)
            assert isinstance(r.rand_bits, int)


class TestCounterAgreement:
    @pytest.mark.parametrize("gadget", [
        "refresh", "strong_refresh", "full_add", "sec_mult", "sec_and",
        "sec_not", "sec_or", "sec_nonzero", "b2m", "b2minv"])
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_unit_gadgets_exact(self, gadget, n):
        for w in (4, 8):
            ck = cm.counter_vs_formula(gadget, n, w=w)
            assert ck.exact, (gadget, n, w, ck)
            assert ck.ops_rel == 0.0 and ck.bits_rel == 0.0

    @pytest.mark.parametrize("gadget", [
        "sec_cond_add", "sec_scalar_mult", "sec_mult_sub"])
    @pytest.mark.parametrize("l", [1, 2, 10])
    def test_row_gadgets_exact(self, gadget, l):
        for n in (2, 3):
            ck = cm.counter_vs_formula(gadget, n, w=8, size=l)
            assert ck.exact, (gadget, n, l, ck)

    @pytest.mark.parametrize("n,m,w", [(2, 6, 8), (3, 5, 4), (2, 44, 8)])
    def test_pipeline_slip_is_exactly_the_vector_length_terms(self, n, m, w):
        # the printed assembly sums slice lengths as m(m+1)(2m+1)/6 where
        # the executed loops sum j^2; the residue is m unit-length calls
        ck = cm.counter_vs_formula("pipeline", n, w=w, size=m)
        slip_ops = m * (cm.t_cost("sec_cond_add", n, 1)
                        + cm.t_cost("sec_mult_sub", n, 1))
        slip_bits = 3 * m * H(n) * w
        assert ck.ops_run == ck.ops_form - slip_ops
        assert ck.bits_run == ck.bits_form - slip_bits

    def test_pipeline_relative_error_shrinks_with_m(self):
        rels = [cm.counter_vs_formula("pipeline", 2, w=8, size=m).ops_rel
                for m in (4, 10, 44)]
        assert rels[0] > rels[1] > rels[2]
        assert rels[2] < 0.01

    def test_tabulated_variant_uncharges_scalar_mult_refresh_copies(self):
        for (n, m) in ((2, 44), (3, 64), (4, 10)):
            slices = (m * m + 3 * m) // 2
            assert cm.tabulated_pipeline_ops(n, m, 8) == (
                cm.t_cost("pipeline", n, m, w=8) - slices * (n * n - n))
