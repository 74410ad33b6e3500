import itertools
import math

import numpy as np
import pytest

from resetruin.core import DomainError, classical_ruin, validate_reset, validate_walk
from resetruin.critical import (
    SymmetryError,
    check_symmetry,
    critical_family,
    detect_duality,
    flatness_score,
    invariant_constant,
    walk_certificate,
)
from resetruin.exact import coupling_constant, ruin_probability

GRID = [round(0.05 * k, 2) for k in range(1, 20)]
TABLE_CONFIGS = [
    (10, 0.5, (3, 7)),
    (10, 0.6, (3, 7)),
    (10, 0.6, (2, 8)),
    (10, 0.7, (3, 7)),
    (10, 0.7, (3, 5, 7)),
    (9, 0.7, (3, 6)),
    (8, 0.6, (2, 6)),
    (12, 0.6, (4, 8)),
]


def test_detect_pair():
    w = validate_walk(10, 0.6)
    cert = walk_certificate(w, [3, 7])
    odds = 0.6 / 0.4
    assert cert.sigma == {3: 7, 7: 3}
    assert cert.kappa[3] == pytest.approx(odds**7, rel=1e-12)
    assert cert.kappa[7] == pytest.approx(odds**3, rel=1e-12)
    assert cert.K == pytest.approx(odds**10, rel=1e-12)
    assert cert.h3_ok and cert.h4_ok and cert.neutral_sites == ()


def test_detect_rejects_asymmetric():
    assert walk_certificate(validate_walk(10, 0.6), [3, 6]) is None


def test_detect_neutral_site():
    w = validate_walk(10, 0.6)
    cert = walk_certificate(w, [3, 5, 7])
    assert cert.pairs == ((3, 7),)
    assert cert.neutral_sites == (5,)
    assert cert.kappa[5] == pytest.approx(1.5**5, rel=1e-12)
    assert cert.kappa[5] == pytest.approx(math.sqrt(cert.K), rel=1e-12)
    assert cert.h4_ok


def test_detect_generic_matrices():
    # a chain-agnostic example: B columns are scaled, swapped A columns
    rng = np.random.default_rng(1)
    A = rng.normal(size=(6, 3))
    B = np.column_stack([2.0 * A[:, 2], 3.0 * A[:, 1], 8.0 * A[:, 0]])
    cert = detect_duality(A, B, [10, 20, 30])
    assert cert.sigma == {10: 30, 30: 10, 20: 20}
    assert cert.K == pytest.approx(16.0)
    # kappa(20) = 3 != sqrt(16)
    assert cert.h3_ok and not cert.h4_ok
    B_bad = B.copy()
    B_bad[0, 0] += 0.5
    assert detect_duality(A, B_bad, [10, 20, 30]) is None


def test_detect_shape_errors():
    with pytest.raises(DomainError):
        detect_duality(np.ones((3, 2)), np.ones((3, 3)), [1, 2])
    with pytest.raises(DomainError):
        detect_duality(np.ones((3, 2)), np.ones((3, 2)), [1, 2, 3])


def test_check_symmetry():
    w = validate_walk(10, 0.6)
    assert check_symmetry(w, [3, 7]) == (((3, 7),), None)
    assert check_symmetry(w, [3, 5, 7]) == (((3, 7),), 5)
    assert check_symmetry(w, [2, 7]) is None
    assert check_symmetry(validate_walk(9, 0.7), [3, 6]) == (((3, 6),), None)


@pytest.mark.parametrize("a, p, expected", [(10, 0.6, 0.1163636364), (10, 0.5, 0.5), (12, 0.6, 64 / 793)])
def test_invariant_constant(a, p, expected):
    assert invariant_constant(validate_walk(a, p)) == pytest.approx(expected, abs=5e-11)


def test_invariant_constant_is_midpoint_ruin():
    for a in range(2, 40):
        for p in (0.1, 0.3, 0.5, 0.6, 0.9):
            w = validate_walk(a, p)
            assert abs(invariant_constant(w) - classical_ruin(w, a / 2)) <= 1e-14


def test_family_two_site():
    fam = critical_family(validate_walk(10, 0.6), [3, 7])
    r = fam.materialize()
    assert r.weights == pytest.approx((4 / 13, 9 / 13), abs=1e-14)
    assert fam.C_star == pytest.approx(invariant_constant(fam.walk), abs=1e-14)


def test_family_neutral_weight():
    fam = critical_family(validate_walk(10, 0.7), [3, 5, 7])
    r = fam.materialize(0.3)
    assert r.weights == pytest.approx((0.7 * 9 / 58, 0.3, 0.7 * 49 / 58), abs=1e-14)
    assert [round(x, 3) for x in r.weights] == [0.109, 0.300, 0.591]


def test_family_odd_domain():
    fam = critical_family(validate_walk(9, 0.7), [3, 6])
    x = (3 / 7) ** 1.5
    assert fam.materialize().weights[0] == pytest.approx(x / (1 + x), abs=1e-14)
    assert fam.materialize().weights[0] == pytest.approx(0.2190952202, abs=5e-11)
    assert fam.neutral_site is None
    with pytest.raises(DomainError):
        fam.materialize(0.2)


def test_family_errors():
    with pytest.raises(SymmetryError):
        critical_family(validate_walk(10, 0.6), [3, 6])
    fam = critical_family(validate_walk(10, 0.6), [3, 5, 7])
    with pytest.raises(DomainError):
        fam.materialize(1.0)
    with pytest.raises(DomainError):
        fam.materialize(-0.1)


def test_general_ratio_equals_walk_ratio():
    for a in (6, 9, 10, 13):
        for p in (0.3, 0.6, 0.75):
            w = validate_walk(a, p)
            sites = [z for z in range(1, a) if 2 * z != a]
            fam = critical_family(w, sites)
            for (z, zp), ratio in fam.pair_ratios.items():
                assert ratio == pytest.approx((w.q / w.p) ** (a / 2 - z), rel=1e-12)


def test_multi_pair_materialize():
    w = validate_walk(10, 0.6)
    fam = critical_family(w, [1, 3, 7, 9])
    r = fam.materialize(pair_masses=[1, 3])
    assert r.weight_of(1) + r.weight_of(9) == pytest.approx(0.25, abs=1e-15)
    assert r.weight_of(3) / r.weight_of(7) == pytest.approx((2 / 3) ** 2, rel=1e-13)
    for g in GRID:
        assert coupling_constant(w, r, g).C == pytest.approx(fam.C_star, abs=1e-11)


def test_flatness_examples():
    w = validate_walk(10, 0.6)
    assert flatness_score(w, critical_family(w, [3, 7]).materialize(), GRID) <= 1e-10
    off = validate_reset(w, [3, 7], [0.1, 0.9])
    assert flatness_score(w, off, GRID) == pytest.approx(0.05294 - 0.03187, abs=1e-4)
    sym = validate_walk(10, 0.5)
    for sites, weights in [([3, 7], [0.5, 0.5]), ([3, 5, 7], [0.2, 0.6, 0.2]), ([2, 3, 7, 8], [0.1, 0.4, 0.4, 0.1])]:
        assert flatness_score(sym, validate_reset(sym, sites, weights), GRID) <= 1e-12
    with pytest.raises(DomainError):
        flatness_score(w, off, [0.5])


def test_unbalanced_weights_not_flat_at_half():
    # u(3) + u(7) = s(3) at p = 1/2, so C = pi_7 + (pi_3 - pi_7) u(3)/s(3) moves with gamma
    sym = validate_walk(10, 0.5)
    assert flatness_score(sym, validate_reset(sym, [3, 7], [0.1, 0.9]), GRID) > 0.1


@pytest.mark.parametrize("a, p, sites", TABLE_CONFIGS)
def test_table_configs_flat(a, p, sites):
    w = validate_walk(a, p)
    fam = critical_family(w, sites)
    assert flatness_score(w, fam.materialize(), GRID) <= 1e-10


def _cases():
    for a in (6, 8, 9, 10, 12):
        for p in (0.5, 0.6, 0.7):
            for m in range(1, 5):
                for sites in itertools.combinations(range(1, a), m):
                    yield a, p, sites


def test_certificate_geometry_equivalence():
    checked = 0
    for a, p, sites in _cases():
        w = validate_walk(a, p)
        cert = walk_certificate(w, sites)
        geo = check_symmetry(w, sites)
        if geo is None:
            assert cert is None, (a, p, sites)
            continue
        pairs, neutral = geo
        assert cert is not None, (a, p, sites)
        assert cert.pairs == pairs
        assert cert.neutral_sites == ((neutral,) if neutral is not None else ())
        assert cert.h3_ok and cert.h4_ok
        if cert.pairs:
            assert cert.K == pytest.approx((p / (1 - p)) ** a, rel=1e-10)
        checked += 1
    assert checked > 0


def test_neutral_weight_gauge_freedom():
    w = validate_walk(10, 0.7)
    fam = critical_family(w, [3, 5, 7])
    values = [coupling_constant(w, fam.materialize(w0), g).C for w0 in (0.0, 0.3, 0.7) for g in GRID]
    assert max(values) - min(values) <= 1e-11


def test_midpoint_crossing():
    w = validate_walk(10, 0.6)
    r = critical_family(w, [3, 7]).materialize()
    for g in GRID:
        assert abs(ruin_probability(w, r, g, 5) - invariant_constant(w)) <= 1e-10


@pytest.mark.parametrize("a, p", [(10, 0.6), (10, 0.3), (12, 0.7), (8, 0.55)])
def test_universality_across_pairs(a, p):
    w = validate_walk(a, p)
    values = []
    for z in range(1, a // 2):
        fam = critical_family(w, [z, a - z])
        values.append(fam.C_star)
        values.append(coupling_constant(w, fam.materialize(), 0.5).C)
    assert max(values) - min(values) <= 1e-12
