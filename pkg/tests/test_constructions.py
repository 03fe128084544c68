import math

import numpy as np
import pytest

from rieszseq import constructions as con
from rieszseq import spectral, torus
from rieszseq.errors import (
    NotEnoughBlocks,
    ScanExhausted,
    ScheduleError,
    TableTooSmall,
)

FULL = torus.normalize([(0.0, 1.0)])
ARC03 = torus.normalize([(0.0, 0.3)])


def lambda_min(s, freqs):
    return spectral.extreme_eigs(spectral.gram(s, freqs))[0]


# --- width schedule ---------------------------------------------------------

def test_schedule_rejects_bad_epsilon():
    with pytest.raises(ScheduleError):
        con.delta_schedule(1.5)
    with pytest.raises(ScheduleError):
        con.delta_schedule(0.0)


def test_schedule_values_frozen():
    # derived once from the certified normalizer; regression anchors
    sched = con.delta_schedule(0.25)
    assert sched.normalizer == pytest.approx(3.3887355352008424, rel=1e-12)
    assert sched.delta(2) == pytest.approx(0.015281058397072538, rel=1e-12)
    assert sched.delta(4) == pytest.approx(0.0035601138766767583, rel=1e-12)
    assert sched.delta(8) == pytest.approx(0.0009550661498170336, rel=1e-12)


def test_schedule_condition_a_strict():
    for eps in (0.1, 0.25, 0.9):
        sched = con.delta_schedule(eps)
        bound, budget = con.schedule_condition_a(sched)
        assert bound < budget


def test_schedule_condition_b_growth():
    """delta(ell) * ell^(1/alpha) grows once past the log/polynomial crossover.

    For alpha in {0.75, 0.9} the crossover of ell^(1/alpha-1)/log^2(ell+1)
    lies beyond ell = 10^5 (near exp(2*alpha/(1-alpha))), so the sampled
    decades start there rather than at 10.
    """
    sched = con.delta_schedule(0.25)
    report = con.schedule_condition_b(sched)
    assert set(report) == {0.5, 0.75, 0.9}
    assert report[0.5][0] == 10
    assert report[0.75][0] == 1000
    assert report[0.9][0] == 10 ** 8
    for start, vals, increasing in report.values():
        assert increasing
        assert vals[-1] > vals[0]


def test_schedule_widths():
    sched = con.delta_schedule(0.99)
    assert con.schedule_widths_ok(sched)
    ells = np.arange(1, 1001)
    d = sched.delta_array(ells)
    assert np.all(np.diff(d) < 0)
    assert np.all(d < 1.0 / (2.0 * ells))


# --- adversarial set ---------------------------------------------------------

def test_adversarial_single_term():
    sched = con.delta_schedule(0.25)
    s = con.build_adversarial_set(0.25, 1, sched)
    assert s.measure == pytest.approx(1 - 2 * sched.delta(1), abs=1e-12)


def test_adversarial_measure_frozen():
    # exact value from summing the finitely many merged arc lengths
    s = con.build_adversarial_set(0.25, 64)
    assert s.measure == pytest.approx(0.802598680957276, rel=1e-12)
    assert len(s.arcs) == 1074
    assert s.measure > 0.75


def test_adversarial_monotone_in_lmax():
    measures = [con.build_adversarial_set(0.25, lmax).measure for lmax in (1, 4, 16, 64)]
    assert all(b < a for a, b in zip(measures, measures[1:]))


def test_adversarial_omits_periodized_arcs():
    sched = con.delta_schedule(0.25)
    s = con.build_adversarial_set(0.25, 8, sched)
    for ell in (1, 2, 5, 8):
        for j in range(ell):
            assert not torus.contains(s, j / ell)  # arc centers removed


# --- small-step decay demo -----------------------------------------------------

def test_theorem1_demo_trivial_cell():
    cell = con.theorem1_demo(0.25, 4, 1, 1)
    s = con.build_adversarial_set(0.25, 4)
    assert cell.rayleigh_uniform == pytest.approx(s.measure, abs=1e-12)
    assert cell.rayleigh_uniform <= 1.0


def test_theorem1_chain_small_grid():
    """Uniform energy <= exact Dirichlet tail <= cotangent bound, per cell."""
    sched = con.delta_schedule(0.25)
    s = con.build_adversarial_set(0.25, 8, sched)
    for ell in (1, 2, 4, 8):
        for n in (16, 64, 256):
            cell = con.thm1_cell(s, sched, ell, n)  # raises on violation
            tail = spectral.dirichlet_tail(n, sched.delta(ell))
            assert cell.rayleigh_uniform <= tail + 1e-9
            assert tail <= cell.tail_bound + 1e-9


def test_theorem1_doubling_decay():
    sched = con.delta_schedule(0.25)
    s = con.build_adversarial_set(0.25, 8, sched)
    for ell in (2, 4):
        a = con.thm1_cell(s, sched, ell, 512)
        b = con.thm1_cell(s, sched, ell, 1024)
        assert b.tail_bound == pytest.approx(a.tail_bound / 2, rel=1e-12)
        assert b.rayleigh_uniform <= 0.75 * a.rayleigh_uniform


def test_theorem1_demo_validation():
    with pytest.raises(ScheduleError):
        con.theorem1_demo(0.25, 4, 5, 16)  # ell beyond l_max


# --- multiple blocks and the good-length search ---------------------------------

def test_block_examples():
    assert con.block(1).freqs == (1,)
    assert con.block(2).freqs == (2, 4)
    assert con.block(5).freqs == (5, 10, 15, 20, 25)


def test_good_n_search_full_circle():
    table = torus.fourier_table(FULL, 100)
    assert con.good_n_search(table, 1e-9, (1, 10)) == list(range(1, 11))


def test_good_n_search_half_circle_even_lengths():
    # even n make every sampled coefficient an even index, which vanishes
    table = torus.fourier_table(torus.normalize([(0.0, 0.5)]), 400)
    hits = con.good_n_search(table, 1e-12, (1, 20))
    assert set(range(2, 21, 2)) <= set(hits)


def test_good_n_search_arc03_frozen():
    # sums from the exhaustive scan with closed-form coefficients
    table = torus.fourier_table(ARC03, 100)
    hits = con.good_n_search(table, 0.075, (1, 10))
    assert hits[:3] == [1, 2, 3]
    powers = table.power_array()
    assert float(powers[[1]].sum()) == pytest.approx(0.06631557563900257, rel=1e-12)
    assert float(powers[[2, 4]].sum()) == pytest.approx(0.025099318387605207, rel=1e-12)
    assert float(powers[[3, 6, 9]].sum()) == pytest.approx(0.002866123487423018, rel=1e-12)


def test_good_n_search_table_guard():
    table = torus.fourier_table(ARC03, 50)
    with pytest.raises(TableTooSmall):
        con.good_n_search(table, 0.1, (1, 10))


def brute_offdiag(table, spec):
    freqs = spec.frequencies().tolist()
    return math.fsum(
        abs(table.get(int(b - a))) ** 2 for a in freqs for b in freqs if a != b
    )


def test_block_offdiag_sum_formula(rng=np.random.RandomState(31)):
    table = torus.fourier_table(FULL, 50)
    assert con.block_offdiag_sum(table, con.BlockSpec(6, 6, 6, 0)) == 0.0
    for _ in range(15):
        pts = np.sort(rng.uniform(0, 1, 4))
        s = torus.normalize([(pts[0], pts[1]), (pts[2], pts[3])])
        n = int(rng.randint(2, 7))
        table = torus.fourier_table(s, n * n)
        spec = con.BlockSpec(n=n, step=n, length=n, shift=int(rng.randint(-50, 50)))
        assert con.block_offdiag_sum(table, spec) == pytest.approx(
            brute_offdiag(table, spec), abs=1e-12
        )
    # one length-2 check: exactly one unordered difference pair
    s = torus.normalize([(0.1, 0.45)])
    table = torus.fourier_table(s, 20)
    assert con.block_offdiag_sum(table, con.BlockSpec(3, 3, 2, 0)) == pytest.approx(
        2 * table.power(3), abs=1e-15
    )


# --- shift selection --------------------------------------------------------------

def empty_build(s):
    return con.LambdaBuild((), s.measure / 2, (), torus.set_digest(s))


def test_select_shift_full_circle_takes_scan_start():
    nb = con.BlockSpec(3, 3, 3, 0)
    assert con.select_shift(FULL, empty_build(FULL), nb, 0.9) == 0
    scan = con.ScanConfig(start=17, step=5, cap=100)
    assert con.select_shift(FULL, empty_build(FULL), nb, 0.9, scan) == 17


def test_select_shift_arc03_frozen():
    # combining the first two good blocks at target |S|/4; end-to-end fixture
    partial = con.LambdaBuild(
        (con.BlockSpec(1, 1, 1, 0),), 0.15, (0.3,), torus.set_digest(ARC03)
    )
    shift = con.select_shift(ARC03, partial, con.BlockSpec(2, 2, 2, 0), 0.075)
    assert shift == 2
    combined = spectral.frequency_set([1, 2 + shift, 4 + shift])
    assert lambda_min(ARC03, combined) >= 0.075


def test_select_shift_scan_exhausted_reports_best():
    partial = con.LambdaBuild(
        (con.BlockSpec(1, 1, 1, 0),), 0.15, (0.3,), torus.set_digest(ARC03)
    )
    with pytest.raises(ScanExhausted) as info:
        con.select_shift(
            ARC03, partial, con.BlockSpec(2, 2, 2, 0), 0.12, con.ScanConfig(0, 1, 1)
        )
    assert info.value.best_shift is not None
    assert info.value.best_lambda_min < 0.12


def test_select_shift_precondition():
    with pytest.raises(ValueError):
        con.select_shift(ARC03, empty_build(ARC03), con.BlockSpec(2, 2, 2, 0), 0.29)


# --- step-O(N) assembly ------------------------------------------------------------

def test_build_thm2_full_circle():
    build = con.build_lambda_thm2(FULL, 3, n_range=(1, 10))
    assert [b.n for b in build.blocks] == [1, 2, 3]
    assert build.schedule == (1.0, 1.0, 1.0)
    assert build.gamma == 0.5


def test_build_thm2_arc03_frozen():
    build = con.build_lambda_thm2(ARC03, 3, eps=0.075, n_range=(1, 50))
    assert [(b.n, b.shift) for b in build.blocks] == [(1, 0), (2, 2), (3, 7)]
    assert build.schedule[0] == pytest.approx(0.3, abs=1e-12)
    assert build.schedule[1] == pytest.approx(0.12225192828088652, abs=1e-12)
    assert build.schedule[2] == pytest.approx(0.11558250773488431, abs=1e-12)
    # schedule targets met, nonincreasing, above gamma/2
    for b, cert in zip(build.blocks, build.schedule):
        assert cert >= (build.gamma / 2) * (1 + 1 / b.n) - 1e-12
    assert all(b <= a + 1e-12 for a, b in zip(build.schedule, build.schedule[1:]))
    assert all(c >= build.gamma / 2 for c in build.schedule)


def test_build_thm2_structure():
    build = con.build_lambda_thm2(ARC03, 3, eps=0.075, n_range=(1, 50))
    freqs = build.frequencies()
    assert np.unique(freqs).size == freqs.size  # blocks pairwise disjoint
    all_freqs = set(freqs.tolist())
    for b in build.blocks:  # each block is an AP of length n and step n
        ap = [b.shift + b.step * k for k in range(1, b.length + 1)]
        assert b.step == b.n and b.length == b.n
        assert set(ap) <= all_freqs


def test_build_thm2_eps_boundary_allows_quarter_measure():
    build = con.build_lambda_thm2(ARC03, 2, eps=ARC03.measure / 4.0, n_range=(1, 20))
    assert len(build.blocks) == 2
    with pytest.raises(ValueError):
        con.build_lambda_thm2(ARC03, 2, eps=ARC03.measure / 3.0)


def test_build_thm2_not_enough_blocks():
    with pytest.raises(NotEnoughBlocks):
        con.build_lambda_thm2(ARC03, 5, eps=0.075, n_range=(1, 2))


# --- divisor-averaged step search ----------------------------------------------------

def test_step_search_full_circle():
    table = torus.fourier_table(FULL, 200)
    res = con.step_search_alpha(table, 1.5, 4)
    assert res.ell == 1 and res.total == 0.0


def test_step_search_arc03_certificate_frozen():
    # both sides of the averaging inequality, evaluated directly
    table = torus.fourier_table(ARC03, 63 * 16)
    res = con.step_search_alpha(table, 1.5, 16, l_cap=63)
    assert res.ell == 10 and res.total == 0.0
    assert res.grid_sum == pytest.approx(0.15829500586637213, rel=1e-12)
    assert res.divisor_sum == pytest.approx(0.1640554668213454, rel=1e-12)
    assert res.grid_sum <= res.divisor_sum  # strict here: off-range divisor pairs exist


def test_step_search_min_below_mean():
    table = torus.fourier_table(ARC03, 20 * 8)
    res = con.step_search_alpha(table, 1.2, 8, l_cap=20)
    assert res.total <= res.grid_sum / 20 + 1e-15


def test_step_search_guards():
    table = torus.fourier_table(ARC03, 100)
    with pytest.raises(TableTooSmall):
        con.step_search_alpha(table, 1.5, 32)
    with pytest.raises(ValueError):
        con.step_search_alpha(table, 0.9, 4)


def test_strict_step_cap():
    assert con.strict_step_cap(16, 1.5) == 63  # 16^1.5 = 64 exactly
    assert con.strict_step_cap(32, 1.5) == 181
    assert con.strict_step_cap(4, 2.0) == 15


# --- step-O(N^alpha) assembly ----------------------------------------------------------

def test_build_thm3_full_circle():
    build, rows = con.build_lambda_thm3(FULL, [2.0, 1.5], [[4, 5], [6, 7]])
    assert len(build.blocks) == 4
    assert build.schedule == (1.0, 1.0, 1.0, 1.0)
    assert [r.ell for r in rows] == [1, 1, 1, 1]


def test_build_thm3_arc03_frozen():
    build, rows = con.build_lambda_thm3(ARC03, [1.5], [[16, 32]])
    assert [(r.length, r.ell, r.shift) for r in rows] == [(16, 10, 0), (32, 10, 2)]
    assert rows[0].cert_lambda_min == pytest.approx(0.3, abs=1e-12)
    assert rows[1].cert_lambda_min == pytest.approx(0.1381966011250101, abs=1e-12)
    for r in rows:
        assert r.ell < r.length ** 1.5
        assert r.cert_lambda_min >= build.gamma / 2
    # property (i'): an AP of length N and step < N^alpha sits inside the union
    all_freqs = set(build.frequencies().tolist())
    for b in build.blocks:
        ap = [b.shift + b.step * k for k in range(1, b.length + 1)]
        assert set(ap) <= all_freqs


def test_build_thm3_validation():
    with pytest.raises(ValueError):
        con.build_lambda_thm3(ARC03, [1.5, 2.0], [[4], [5]])  # not decreasing
    with pytest.raises(ValueError):
        con.build_lambda_thm3(ARC03, [1.5], [[]])


# --- serialization and certificate verification ------------------------------------------

def test_build_round_trip(tmp_path):
    build = con.build_lambda_thm2(ARC03, 3, eps=0.075, n_range=(1, 50))
    path = tmp_path / "build.json"
    con.save_build(build, path, set_ref="arc03.json")
    loaded, set_ref = con.load_build(path)
    assert set_ref == "arc03.json"
    assert loaded.blocks == build.blocks
    assert loaded.schedule == build.schedule
    assert loaded.gamma == build.gamma


def test_verify_build_detects_tampering():
    build = con.build_lambda_thm2(ARC03, 3, eps=0.075, n_range=(1, 50))
    assert all(r.ok for r in con.verify_build(ARC03, build))
    doctored = con.LambdaBuild(
        build.blocks,
        build.gamma,
        (build.schedule[0], build.schedule[1] + 0.05, build.schedule[2]),
        build.set_digest,
    )
    assert not all(r.ok for r in con.verify_build(ARC03, doctored))
