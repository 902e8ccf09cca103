import random
from fractions import Fraction

import pytest

from leonard.enumeration import candidate_types, enumerate_arrays, max_candidates, omega_of_ends
from leonard.field import QQ, PrimeField
from leonard.parray import EndParameters, TypeTag, end_parameters, validate
from leonard.reconstruct import reconstruct_tagged
from leonard.witness import shared_ends
from oracles import admissible, brute_force, random_ends, ref_check, ref_omega, ref_scalar

GF5, GF7 = PrimeField(5), PrimeField(7)


def test_omega_of_ends_examples(rng):
    _, p = admissible("II", 4, rng, QQ)
    assert omega_of_ends(end_parameters(p)) == QQ(Fraction(1, 2))
    assert ref_scalar(omega_of_ends(end_parameters(p))) == ref_omega(p)
    for w, z in ((3, 5), (Fraction(-1, 2), 7)):
        assert omega_of_ends(shared_ends(QQ, 5, w, z)) == QQ(w)


def test_omega_one_is_empty():
    e = EndParameters(QQ, 4, 0, 1, 0, 1, 1, 1, 2, 1)
    assert omega_of_ends(e) == 1
    res = enumerate_arrays(e)
    assert res.candidates == () and res.rejected == ()


def test_rational_d3_omega0_is_empty():
    e = shared_ends(QQ, 3, 0, 5)
    assert candidate_types(e) == []
    assert enumerate_arrays(e).candidates == ()


def test_gf5_d3_omega0_one_pair():
    for z in range(1, 5):
        e = shared_ends(GF5, 3, 0, z)
        tags = candidate_types(e)
        assert [(t.tag, t.q) for t in tags] == [("I", GF5(2))]
        assert GF5(2) * GF5(3) == 1


@pytest.mark.parametrize("tag,d", [("I", 3), ("I", 6), ("II", 5), ("III+", 4), ("III-", 7),
                                   ("IV", 3)])
def test_source_array_is_found(tag, d, rng):
    for _ in range(10):
        _, p = admissible(tag, d, rng)
        res = enumerate_arrays(end_parameters(p))
        assert p in res.arrays
        assert len(res.candidates) <= max_candidates(d)


def test_bound_soundness_and_qdedup():
    rng = random.Random(11)
    for n in range(90):
        f = PrimeField((101, 103, 107)[n % 3])
        d = 3 + n % 6
        e = random_ends(f, d, rng)
        res = enumerate_arrays(e)
        assert len(res.candidates) <= max_candidates(d)
        pairs = set()
        for t, p in res.candidates:
            assert validate(p) and ref_check(p) is None
            assert end_parameters(p).lift(p.field) == e.lift(p.field)
            if t.tag == "I":
                key = frozenset((t.q, t.q.inverse()))
                assert key not in pairs
                pairs.add(key)
                assert reconstruct_tagged(e, TypeTag("I", t.beta, t.q.inverse())) == p


def test_types_two_and_three_never_together():
    for d in range(3, 10):
        for f in (QQ, PrimeField(101)):
            w = f(2) / d
            e = shared_ends(f, d, w, 3)
            kinds = {t.tag for t in candidate_types(e)}
            assert "II" in kinds and not kinds & {"III+", "III-"}
            if d % 2 == 0:
                e = shared_ends(f, d, f(2 * (d - 1)) / d, 3)
                kinds = {t.tag for t in candidate_types(e)}
                assert "III+" in kinds and "II" not in kinds


def test_excluded_special_types_are_recorded():
    # type II at d = 8 over GF(7) violates the characteristic condition
    e = shared_ends(PrimeField(7), 8, PrimeField(7)(2) / 8, 1)
    res = enumerate_arrays(e)
    assert all(t.tag != "II" for t, _ in res.candidates)
    assert any(r.tag == "II" and r.condition == "ii" for r in res.rejected)


@pytest.mark.parametrize("f", [GF5, GF7], ids=str)
def test_completeness_against_brute_force(f):
    rng = random.Random(f.p)
    cases = [random_ends(f, 3, rng) for _ in range(150)]
    for tag in ("I", "II", "III-"):
        for _ in range(15):
            try:
                _, p = admissible(tag, 3, rng, f)
            except RuntimeError:
                break
            cases.append(end_parameters(p))
    hits = 0
    for e in cases:
        got = list(enumerate_arrays(e).arrays)
        want = brute_force(e)
        assert len(got) == len(want) and all(p in want for p in got)
        hits += bool(got)
    assert hits > 10
