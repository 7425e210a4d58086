from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import A2, A2_TILDE, A3_TILDE, D4_TILDE, KRONECKER, KRONECKER3
from qstab.errors import DimensionMismatch, NotRegularCase, NotTame
from qstab.oracle import semistable_bruteforce, verify_generic
from qstab.roots import base_roots, ladder_dim
from qstab.slopes import (
    CaseTag, _mu_delta_case, _neg, _scan_preprojectives, classify_mu_delta, compute_slope_set, format_slope,
    infinite_family, parse_slope, trivial_cardinality,
)
from qstab.stability import is_semistable_dim, slope

F = Fraction
EXAMPLE_1 = (1, 1, 2, 0)
EXAMPLE_2 = (1, 2, 3, 2)
EXAMPLE_3 = (3, 2, 2, 1)
SMALL = {"A1~": KRONECKER, "A2~": A2_TILDE, "A3~": A3_TILDE, "D4~": D4_TILDE}


def sample_weights(q, k, seed, lo=-2, hi=2):
    rng = random.Random(f"{seed}-{q.n}")
    return [tuple(rng.randint(lo, hi) for _ in range(q.n)) for _ in range(k)]


class TestTrivialCardinality:
    def test_examples(self):
        assert str(trivial_cardinality(A3_TILDE, (2, 2, 2, 2))) == "One(2/1)"
        two = trivial_cardinality(A3_TILDE, (0, 0, 1, 1))
        assert two.kind == "Two" and two.values == (0, 1)
        assert trivial_cardinality(A3_TILDE, EXAMPLE_1).kind == "More"

    def test_back_arrow(self):
        # arrow 1 -> 2 from the high vertex to the low one
        assert trivial_cardinality(A3_TILDE, (1, 0, 1, 1)).kind == "More"
        assert trivial_cardinality(A2, (0, 1)).kind == "Two"
        assert trivial_cardinality(A2, (1, 0)).kind == "More"

    def test_type_agnostic(self):
        assert trivial_cardinality(KRONECKER3, (0, 1)).kind == "Two"

    def test_length(self):
        with pytest.raises(DimensionMismatch):
            trivial_cardinality(A3_TILDE, (1, 2))


class TestClassifyMuDelta:
    @pytest.mark.parametrize(
        "theta, tag",
        [(EXAMPLE_1, CaseTag.TAME), (EXAMPLE_2, CaseTag.DYNKIN), (EXAMPLE_3, CaseTag.REGULAR)],
    )
    def test_examples(self, theta, tag):
        assert classify_mu_delta(A3_TILDE, theta, 10).tag is tag

    def test_tame_witness(self):
        case = classify_mu_delta(A3_TILDE, EXAMPLE_1, 10)
        assert slope(EXAMPLE_1, case.witness) == 1
        assert is_semistable_dim(A3_TILDE, EXAMPLE_1, case.witness).semistable

    def test_regular_base_slopes(self):
        roots = base_roots(A3_TILDE)
        assert sorted(slope(EXAMPLE_3, a) for a in roots.preprojective) == [1, F(3, 2), F(3, 2), F(5, 3)]
        assert sorted(slope(EXAMPLE_3, a) for a in roots.preinjective) == [F(7, 3), F(5, 2), F(5, 2), 3]

    def test_requires_tame(self):
        with pytest.raises(NotTame):
            classify_mu_delta(A2, (0, 1))
        with pytest.raises(NotTame):
            classify_mu_delta(KRONECKER3, (0, 1))

    @pytest.mark.parametrize("label", sorted(SMALL))
    def test_case_consistent_with_delta(self, label):
        q = SMALL[label]
        for theta in sample_weights(q, 40, "case"):
            case = classify_mu_delta(q, theta)
            delta_ss = is_semistable_dim(q, theta, q.delta).semistable
            assert (case.tag is CaseTag.DYNKIN) == (not delta_ss)
            assert case.tag is not CaseTag.INCONCLUSIVE


class TestExamples:
    def test_example_1(self):
        r = compute_slope_set(A3_TILDE, EXAMPLE_1, 20)
        assert r.verdict == "finite"
        assert r.slopes == (0, F(1, 2), F(2, 3), 1, 2)
        assert r.case.tag is CaseTag.TAME

    def test_example_2(self):
        r = compute_slope_set(A3_TILDE, EXAMPLE_2, 20)
        assert r.verdict == "finite"
        assert r.slopes == (1, 2, F(5, 2), 3)
        assert r.case.tag is CaseTag.DYNKIN

    def test_example_3(self):
        r = compute_slope_set(A3_TILDE, EXAMPLE_3, 20)
        assert r.verdict == "infinite"
        assert r.family_base == (0, 1, 1, 1)
        assert [s for _, s in r.family] == [F(5, 3), F(13, 7), F(21, 11)]
        assert r.to_json()["family_slopes"] == ["5/3", "13/7", "21/11"]

    def test_witnesses_are_semistable(self):
        for theta in (EXAMPLE_1, EXAMPLE_2):
            r = compute_slope_set(A3_TILDE, theta)
            assert set(r.witnesses) == set(r.slopes)
            for s, d in r.witnesses.items():
                assert slope(theta, d) == s
                assert is_semistable_dim(A3_TILDE, theta, d).semistable

    def test_trivial_shortcuts(self):
        assert compute_slope_set(A3_TILDE, (2, 2, 2, 2)).slopes == (2,)
        r = compute_slope_set(A3_TILDE, (0, 0, 1, 1))
        assert r.slopes == (0, 1) and r.verdict == "finite"

    def test_json_schema(self):
        out = compute_slope_set(A3_TILDE, EXAMPLE_1).to_json()
        assert out["verdict"] == "finite"
        assert out["slopes"] == ["0/1", "1/2", "2/3", "1/1", "2/1"]
        assert out["witnesses"]["1/2"] == [0, 1, 0, 1]
        assert out["mu_delta"] == "1/1"
        assert all(isinstance(c, str) for c in out["certificates"])

    def test_requires_tame(self):
        with pytest.raises(NotTame):
            compute_slope_set(A2, (0, 1))


class TestInfiniteFamily:
    def test_example(self):
        fam = infinite_family(A3_TILDE, EXAMPLE_3, 3)
        assert fam == [((0, 1, 1, 1), F(5, 3)), ((1, 2, 2, 2), F(13, 7)), ((2, 3, 3, 3), F(21, 11))]

    def test_empty(self):
        assert infinite_family(A3_TILDE, EXAMPLE_3, 0) == []

    def test_guard(self):
        with pytest.raises(NotRegularCase):
            infinite_family(A3_TILDE, EXAMPLE_1, 1)

    def test_closed_form(self):
        for n, (d, s) in enumerate(infinite_family(A3_TILDE, EXAMPLE_3, 12)):
            assert d == ladder_dim(A3_TILDE, (0, 1, 1, 1), n)
            assert s == F(8 * n + 5, 4 * n + 3)

    @pytest.mark.parametrize("label", sorted(SMALL))
    def test_monotone_and_semistable(self, label):
        q = SMALL[label]
        for theta in sample_weights(q, 40, "family"):
            if classify_mu_delta(q, theta).tag is not CaseTag.REGULAR:
                continue
            fam = infinite_family(q, theta, 4)
            mu_d = slope(theta, q.delta)
            slopes = [s for _, s in fam]
            assert all(a < b < mu_d for a, b in zip(slopes, slopes[1:]))
            for d, _ in fam:
                assert is_semistable_dim(q, theta, d).semistable


class TestSlopeFormat:
    @given(st.fractions(min_value=-50, max_value=50, max_denominator=40))
    def test_round_trip(self, s):
        text = format_slope(s)
        assert parse_slope(text) == s
        num, den = text.split("/")
        assert int(den) >= 1


def _sweep(q, theta, levels):
    """Slopes of every supported dimension vector up to the given ladder level."""
    roots = base_roots(q)
    dims = list(roots.regular) + [q.delta]
    for a in roots.preprojective + roots.preinjective:
        dims += [ladder_dim(q, a, n) for n in range(levels + 1)]
    return {slope(theta, d) for d in dims if is_semistable_dim(q, theta, d).semistable}


@pytest.mark.parametrize("label", sorted(SMALL))
def test_finite_sets_contain_sweep(label):
    q = SMALL[label]
    seen = set()
    for theta in sample_weights(q, 25, "sweep"):
        r = compute_slope_set(q, theta)
        assert r.verdict != "inconclusive"
        seen.add(r.verdict)
        if r.verdict == "finite":
            assert _sweep(q, theta, 2) <= set(r.slopes), theta
            mu_d = slope(theta, q.delta)
            for s, d in r.witnesses.items():
                assert d == q.delta or is_semistable_dim(q, theta, d).semistable
                assert s == mu_d or d != q.delta
    assert "finite" in seen


def test_worked_weights_against_deep_sweep():
    for theta, expected in [(EXAMPLE_1, {0, F(1, 2), F(2, 3), 1, 2}), (EXAMPLE_2, {1, 2, F(5, 2), 3})]:
        assert _sweep(A3_TILDE, theta, 4) == expected


@pytest.mark.parametrize("label", sorted(SMALL))
def test_duality(label):
    q = SMALL[label]
    for theta in sample_weights(q, 25, "dual") + ([EXAMPLE_1, EXAMPLE_2, EXAMPLE_3] if q is A3_TILDE else []):
        a = compute_slope_set(q, theta)
        b = compute_slope_set(q.opposite(), _neg(theta))
        assert a.verdict == b.verdict
        assert a.mu_delta == -b.mu_delta
        assert a.case.tag is b.case.tag
        if a.verdict == "finite":
            assert b.slopes == tuple(sorted(-s for s in a.slopes))


def _killed_positions(q, theta):
    case, wit_p, wit_i = _mu_delta_case(q, theta, 50)
    if case.tag in (CaseTag.REGULAR, CaseTag.INCONCLUSIVE):
        return []
    ss = case.tag is not CaseTag.DYNKIN
    pre = _scan_preprojectives(q, theta, ss, [wit_p] if wit_p else [], 50)
    inj = _scan_preprojectives(q.opposite(), _neg(theta), ss, [wit_i] if wit_i else [], 50, dual=True)
    return [(q, theta, x) for x in pre.killed] + [(q.opposite(), _neg(theta), x) for x in inj.killed]


def test_kill_rules_sound():
    checked = oracle_checked = 0
    for q in SMALL.values():
        for theta in sample_weights(q, 30, "kill"):
            if trivial_cardinality(q, theta).kind != "More":
                continue
            for quiver, weight, x in _killed_positions(q, theta):
                if sum(x) > 14:
                    continue
                assert not is_semistable_dim(quiver, weight, x).semistable, (theta, x)
                checked += 1
                if sum(x) <= 8:
                    m = verify_generic(quiver, x, 2, seed=3)
                    assert not semistable_bruteforce(m, weight).semistable, (theta, x)
                    oracle_checked += 1
    assert checked > 0 and oracle_checked > 0
