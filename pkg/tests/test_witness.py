import time
from itertools import combinations

import pytest

from leonard.enumeration import enumerate_arrays
from leonard.errors import InvalidEndParameters, NoValidArray, SearchExhausted
from leonard.field import PrimeField
from leonard.omegapoly import omega_of_root
from leonard.parray import TypeTag, beta, end_parameters, validate
from leonard.reconstruct import phi_by_recursion, reconstruct_tagged, theta_from_ends
from leonard.witness import (
    bad_zeta_set,
    build_witness,
    family_size,
    shared_ends,
    z_polynomials,
)
from oracles import ref_check

GF101 = PrimeField(101)


def _tag(q):
    return TypeTag("I", q + q.inverse(), q)


def test_z_at_index_one():
    for d in (3, 5, 8):
        for q in map(GF101, (2, 3, 7)):
            z = z_polynomials(GF101, d, q, 1)
            const = (1 - q) * (q ** (d - 1) - 1) ** 2 * (q**d - 1)
            assert z.z3.degree == 0 and z.z3.coeffs[0] == const
            assert z.z4.degree == 1 and z.z4.coeffs == (GF101.zero, const)
            zd = z_polynomials(GF101, d, q, d)
            assert zd.z3.degree == 0 and zd.z3.coeffs[0] == -const


def test_z_polynomials_describe_the_construction():
    # all four identities checked at every zeta: polynomials of degree <= 2 in
    # zeta agreeing on 99 points agree identically
    F = GF101
    for d in (3, 4, 6):
        for q in map(F, (2, 5, 9)):
            w = omega_of_root(q, d)
            if w is None:
                continue
            den1 = (q - 1) * (q ** (d - 1) - 1) * (q**d - 1)
            den2 = (q - 1) ** 2 * (q ** (d - 1) - 1) ** 2 * (q**d - 1) ** 2
            for zeta in F.elements():
                try:
                    e = shared_ends(F, d, w, zeta)
                except InvalidEndParameters:
                    continue
                th, ts = theta_from_ends(e, _tag(q))
                vp, ph = phi_by_recursion(e, th, ts)
                for i in range(d + 1):
                    for j in range(d + 1):
                        z = z_polynomials(F, d, q, i, j)
                        assert th[i] - th[j] == (q**j - q**i) * z.z1(zeta) / den1
                        assert ts[i] - ts[j] == (q**i - q**j) * z.z2(zeta) / den1
                for i in range(1, d + 1):
                    z = z_polynomials(F, d, q, i)
                    c = (q**i - 1) * (q ** (d - i + 1) - 1)
                    assert vp[i - 1] == -c * z.z3(zeta) / den2
                    assert ph[i - 1] == -c * z.z4(zeta) / den2


def test_bad_set_size_and_good_zeta():
    F = PrimeField(211)
    for d in (3, 4, 5):
        for q in map(F, (2, 3, 10)):
            w = omega_of_root(q, d)
            bad = bad_zeta_set(F, d, q)
            assert len(bad) <= 2 * (d + 1) * d // 2 + 2 * 2 * d
            good = [z for z in F.elements() if z not in bad][:10]
            assert good
            for z in good:
                p = reconstruct_tagged(shared_ends(F, d, w, z), _tag(q))
                assert validate(p) and ref_check(p) is None


def test_zeta_from_z3_kills_varphi():
    F = PrimeField(211)
    hits = 0
    for d in (4, 5, 6):
        for q in map(F, (2, 3, 5, 10)):
            w = omega_of_root(q, d)
            for i in range(2, d):
                z3 = z_polynomials(F, d, q, i).z3
                for zeta in [x for x in F.elements() if z3(x).is_zero()]:
                    try:
                        e = shared_ends(F, d, w, zeta)
                    except InvalidEndParameters:
                        continue
                    th, ts = theta_from_ends(e, _tag(q))
                    vp, _ = phi_by_recursion(e, th, ts)
                    assert vp[i - 1].is_zero()
                    with pytest.raises(NoValidArray) as exc:
                        reconstruct_tagged(e, _tag(q))
                    if exc.value.condition == "ii":
                        hits += 1
    assert hits > 0


@pytest.mark.parametrize("d", range(3, 11))
def test_family_properties(d):
    fam = build_witness(d)
    n = family_size(d)
    assert len(fam.arrays) == len(fam.qs) == n
    e = fam.shared_ends
    assert e.values() == shared_ends(fam.field, d, fam.omega, fam.zeta).values()
    for p in fam.arrays:
        assert validate(p) and ref_check(p) is None
        assert end_parameters(p) == e
    betas = [beta(p) for p in fam.arrays]
    assert len(set(betas)) == n
    assert all(a != b for a, b in combinations(fam.arrays, 2))
    assert sorted(enumerate_arrays(e).arrays, key=str) == sorted(fam.arrays, key=str)
    assert str(fam.field) in fam.table()


def test_gf5_d3_has_no_witness():
    # every zeta in GF(5) is bad for the only pair {2, 3}
    F = PrimeField(5)
    assert bad_zeta_set(F, 3, F(2)) == frozenset(F.elements())
    with pytest.raises(SearchExhausted):
        build_witness(3, F)


def test_search_preconditions():
    with pytest.raises(ValueError):
        build_witness(2)
    with pytest.raises(ValueError):
        build_witness(5, PrimeField(5))
    with pytest.raises(SearchExhausted):
        build_witness(9, max_prime=20)
    with pytest.raises(ValueError):
        z_polynomials(GF101, 6, GF101(1), 1)


def test_sweep_is_fast():
    start = time.perf_counter()
    for d in range(3, 11):
        build_witness(d)
    assert time.perf_counter() - start <= 60
