import math
import statistics

import numpy as np
import pytest

from smibounds import (DatasetBoundParams, ProblemSizes, SimilarityMatrix, SmiConfig, SmiFunction,
                       SubsetBoundParams, coverage_bounds, eval_smi, extract_dataset_params,
                       extract_subset_params, preset_config, relevance_bounds, run_experiment)
from smibounds.bounds import com_coverage_envelope, com_relevance_envelope
from smibounds.data import Concave

import oracles
from conftest import embedded_similarity, random_similarity

FIELDS = ("alpha1", "beta1", "alpha2", "beta2", "alpha3", "beta3", "gamma1", "delta1",
          "gamma2", "delta2", "omega_u", "omega_ut")
SUB_FIELDS = ("alpha4", "beta4", "gamma3", "delta3", "gamma4", "delta4", "overshoot")


def _params(**kw):
    base = dict.fromkeys(FIELDS, 0.0)
    base.update(kw)
    return DatasetBoundParams(**base)


NO_SUB = SubsetBoundParams(None, None, None, None, None, None, 0.0)


def test_constant_matrix():
    s = SimilarityMatrix(np.full((7, 7), 0.3), 2, 3, 2)
    p = extract_dataset_params(s)
    assert all(getattr(p, f) == 0.3 for f in FIELDS)


def test_singleton_partitions():
    m = np.eye(3)
    m[0, 2] = m[2, 0] = 0.9   # t-q
    m[1, 2] = m[2, 1] = 0.1   # u-q
    p = extract_dataset_params(SimilarityMatrix(m, 1, 1, 1))
    assert (p.alpha1, p.beta1, p.alpha2, p.beta2) == (0.1, 0.1, 0.9, 0.9)
    assert (p.gamma1, p.delta1, p.gamma2, p.delta2) == (0.1, 0.1, 0.9, 0.9)


@pytest.mark.parametrize("shape", [(2, 2, 2), (3, 3, 2), (5, 4, 3)])
def test_dataset_params_match_oracle(rng, shape):
    for _ in range(10):
        s = random_similarity(rng, *shape)
        assert extract_dataset_params(s).__dict__ == oracles.dataset_params(s.values, *shape)


def test_subset_params_match_oracle(rng):
    for _ in range(20):
        s = random_similarity(rng, 3, 3, 2)
        p = extract_dataset_params(s)
        a = tuple(int(i) for i in rng.choice(6, size=3, replace=False))
        eta = float(rng.uniform(0.2, 3.0))
        expected = oracles.subset_params(s.values, 3, 3, 2, a, eta, p.alpha2, p.beta2)
        assert extract_subset_params(a, s, eta, p).__dict__ == expected


def test_subset_covering_targets(rng):
    s = random_similarity(rng, 3, 3, 2)
    sub = extract_subset_params((0, 1, 2, 4), s, 1.0, extract_dataset_params(s))
    assert sub.alpha4 is None and sub.beta4 is None and sub.overshoot == 0.0
    assert sub.gamma4 is not None and sub.gamma3 is not None


def test_large_eta_saturates(rng):
    s = random_similarity(rng, 4, 3, 2)
    p = extract_dataset_params(s)
    eta = 1e6
    a = (0, 5)
    sub = extract_subset_params(a, s, eta, p)
    cover = s.values[[1, 2, 3]][:, list(a)].max(axis=1)
    assert sub.beta4 == math.fsum(cover) / 3
    assert sub.overshoot == 0.0


def test_undefined_ranges_for_single_partition_subsets(rng):
    s = random_similarity(rng, 3, 3, 2)
    p = extract_dataset_params(s)
    only_u = extract_subset_params((3, 4), s, 1.0, p)
    assert only_u.gamma4 is None and only_u.delta4 is None
    only_t = extract_subset_params((0, 1), s, 1.0, p)
    assert only_t.gamma3 is None and only_t.delta3 is None


# -- closed forms on hand-built parameters -------------------------------------


def test_flqmi_relevance_collapses():
    m = 0.4
    p = _params(alpha1=0.0, beta1=0.0, alpha2=1.0, beta2=1.0, alpha3=m, beta3=m)
    sizes = ProblemSizes(10, 10, 3, 5)
    I = 4.5
    b = relevance_bounds(SmiConfig(SmiFunction.FLQMI), I, 2, p, NO_SUB, sizes)
    assert b.preconditions_met
    assert b.lower == b.upper == pytest.approx(I - 3 * m, abs=1e-12)


def test_gcmi_relevance_collapses():
    p = _params(gamma1=0.1, delta1=0.1, gamma2=0.7, delta2=0.7)
    sizes = ProblemSizes(10, 10, 4, 5)
    I, lam = 12.0, 0.5
    b = relevance_bounds(SmiConfig(SmiFunction.GCMI, lam=lam), I, 3, p, NO_SUB, sizes)
    expected = (I / (2 * lam * 4) - 5 * 0.1) / (0.7 - 0.1)
    assert b.lower == pytest.approx(expected, abs=1e-12)
    assert b.upper == pytest.approx(expected, abs=1e-12)


def test_flqmi_coverage_without_attenuation():
    p = _params()
    sizes = ProblemSizes(10, 10, 4, 5)
    b = coverage_bounds(SmiConfig(SmiFunction.FLQMI, eta=1e-9), 2.6, 2, p, NO_SUB, sizes)
    assert b.lower == b.upper == pytest.approx(2.6 / 4, abs=1e-15)


def test_gcmi_coverage_hand_substitution():
    # lambda = 1/2, |Q| = 1, B = 1, chi = 1 with collapsed ranges
    g1, g2 = 0.2, 0.6
    p = _params(gamma1=g1, delta1=g1, gamma2=g2, delta2=g2)
    I = 0.65
    b = coverage_bounds(SmiConfig(SmiFunction.GCMI, lam=0.5), I, 1, p, NO_SUB, ProblemSizes(3, 3, 1, 1))
    assert b.lower == pytest.approx(I - g2, abs=1e-15)
    assert b.upper == pytest.approx(I + g1, abs=1e-15)


def test_gcmi_coverage_upper_bound_can_fail():
    """Two queries each matched exactly by a different targeted member.

    Coverage is perfect (1.0) yet the closed-form upper bound evaluates to 0.6:
    removing a single element per query does not bound the sum of the others
    from below by the per-element mean.  Kept as a documented counterexample.
    """
    # order: t1, t2, u, q1, q2
    m = np.eye(5)
    for (i, j), v in {(0, 3): 1.0, (1, 4): 1.0, (2, 3): 0.1, (2, 4): 0.1}.items():
        m[i, j] = m[j, i] = v
    s = SimilarityMatrix(m, 2, 1, 2)
    p = extract_dataset_params(s)
    cfg = SmiConfig(SmiFunction.GCMI)
    I = eval_smi((0, 1), s, cfg)
    b = coverage_bounds(cfg, I, 2, p, NO_SUB, ProblemSizes.of(s, 2))
    assert I == 4.0
    assert b.upper == pytest.approx(0.6, abs=1e-12)
    assert b.upper < 1.0   # true coverage


def test_precondition_failures_are_flagged():
    p = _params(alpha1=0.5, beta1=0.6, alpha2=0.4, beta2=0.9, gamma1=0.3, delta1=0.2, gamma2=0.3, delta2=0.5)
    sizes = ProblemSizes(10, 10, 3, 5)
    sub = SubsetBoundParams(0.3, 0.4, 0.1, 0.2, 0.5, 0.6, 0.0)
    cases = [
        relevance_bounds(SmiConfig(SmiFunction.FLVMI), 5.0, 0, p, sub, sizes),    # chi = 0
        relevance_bounds(SmiConfig(SmiFunction.FLQMI), 5.0, 2, p, sub, sizes),    # alpha1 > alpha2
        relevance_bounds(SmiConfig(SmiFunction.GCMI), 5.0, 2, p, sub, sizes),     # gamma1 == gamma2
        coverage_bounds(SmiConfig(SmiFunction.FLVMI), 5.0, 5, p, sub, sizes),     # chi == B
        coverage_bounds(SmiConfig(SmiFunction.FLQMI), 5.0, 0, p, sub, sizes),     # chi = 0
    ]
    for b in cases:
        assert not b.preconditions_met
        assert (b.lower, b.upper) == (-math.inf, math.inf)
    assert (cases[0].clipped_lower, cases[0].clipped_upper) == (0, 5)
    assert (cases[3].clipped_lower, cases[3].clipped_upper) == (0.0, 1.0)


def test_flvmi_nonpositive_denominator_flagged():
    p = _params(alpha2=0.3, beta2=0.3)
    sub = SubsetBoundParams(0.3, 0.3, None, None, 0.5, 0.5, 0.0)
    b = relevance_bounds(SmiConfig(SmiFunction.FLVMI), 5.0, 2, p, sub, ProblemSizes(10, 10, 3, 5))
    assert not b.preconditions_met


def test_clipping_ranges(rng):
    s = embedded_similarity(rng, 8, 8, 3)
    p = extract_dataset_params(s)
    for fn in SmiFunction:
        cfg = SmiConfig(fn)
        for _ in range(20):
            a = tuple(int(i) for i in rng.choice(16, size=4, replace=False))
            chi = sum(1 for i in a if i < 8)
            sub = extract_subset_params(a, s, cfg.eta, p)
            sizes = ProblemSizes.of(s, 4)
            r = relevance_bounds(cfg, eval_smi(a, s, cfg), chi, p, sub, sizes)
            c = coverage_bounds(cfg, eval_smi(a, s, cfg), chi, p, sub, sizes)
            assert 0 <= r.clipped_lower <= 4 and 0 <= r.clipped_upper <= 4
            assert 0 <= c.clipped_lower <= 1 and 0 <= c.clipped_upper <= 1
            if r.preconditions_met:
                assert r.clipped_lower <= r.clipped_upper


# -- envelopes ---------------------------------------------------------------------


def _separated(rng):
    g1, g2 = sorted(rng.uniform(0, 1, 2))
    d1, d2 = sorted(rng.uniform(0, 1, 2))
    g3, g4 = sorted(rng.uniform(0, 1, 2))
    d3, d4 = sorted(rng.uniform(0, 1, 2))
    return _params(gamma1=g1, gamma2=g2, delta1=d1, delta2=d2), (g3, g4, d3, d4)


@pytest.mark.parametrize("psi", list(Concave))
def test_com_relevance_envelope_increasing(rng, psi):
    for _ in range(50):
        p, (g3, g4, d3, d4) = _separated(rng)
        B = int(rng.integers(1, 8))
        sizes = ProblemSizes(20, 20, int(rng.integers(1, 6)), B)
        cfg = SmiConfig(SmiFunction.COM, eta=float(rng.uniform(0.1, 5)), psi=psi)
        f_l, f_h = com_relevance_envelope(np.arange(B + 1), sizes, cfg, p, g3, g4, d3, d4)
        assert np.all(np.diff(f_l) > 0) and np.all(np.diff(f_h) > 0)


@pytest.mark.parametrize("psi", list(Concave))
def test_com_coverage_envelope_increasing(rng, psi):
    xs = np.linspace(0, 1, 100)
    for _ in range(20):
        p, (g3, g4, d3, d4) = _separated(rng)
        sizes = ProblemSizes(20, 20, 3, 5)
        cfg = SmiConfig(SmiFunction.COM, psi=psi)
        f_l, f_h = com_coverage_envelope(xs, int(rng.integers(1, 6)), sizes, cfg, p, g3, g4, d3, d4)
        assert np.all(np.diff(f_l) > 0) and np.all(np.diff(f_h) > 0)


# -- sandwich on the synthetic presets ------------------------------------------


@pytest.fixture(scope="module", params=["one-target", "two-target"])
def preset_run(request):
    cfg = preset_config(request.param)
    from dataclasses import replace
    return run_experiment(replace(cfg, scenario=cfg.scenario.with_samples(500)))


def test_relevance_sandwich(preset_run):
    for s in preset_run.samples:
        if s.relevance.preconditions_met:
            assert s.relevance.contains(s.record.chi, tol=1e-9)
            assert s.relevance.contains(s.record.chi, tol=1e-9, clipped=True)


def test_coverage_sandwich(preset_run):
    for s in preset_run.samples:
        if s.function.function is SmiFunction.COM or not s.coverage.preconditions_met:
            continue
        assert s.coverage.contains(s.coverage_metric, tol=1e-9)
        assert s.coverage.contains(s.coverage_metric, tol=1e-9, clipped=True)


def test_relevance_width_ordering(preset_run):
    widths = {}
    for s in preset_run.samples:
        if s.relevance.preconditions_met:
            widths.setdefault(s.function.function, []).append(s.relevance.upper - s.relevance.lower)
    med = {k: statistics.median(v) for k, v in widths.items()}
    assert med[SmiFunction.GCMI] <= med[SmiFunction.FLQMI] <= med[SmiFunction.FLVMI]
