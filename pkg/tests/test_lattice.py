import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from minitwistor.lattice import (
    B2_closed_form,
    PointSpec,
    blow_up,
    build_minitwistor_T,
    build_surface_S,
    check_C0_numbers,
    conjugation,
    intersect,
    new_base_quadric,
    search_B2_candidates,
    validate_configuration,
    virtual_genus,
)

NS = range(3, 13)


def numpy_signature(gram):
    ev = np.linalg.eigvalsh(np.array(gram, dtype=float))
    return int((ev > 1e-9).sum()), int((ev < -1e-9).sum()), int((abs(ev) <= 1e-9).sum())


@pytest.mark.parametrize("n", NS)
def test_surface_S_configuration(n):
    rep = validate_configuration(build_surface_S(n))
    assert rep.ok, rep.to_text()


@pytest.mark.parametrize("n", NS)
def test_signature_agrees_with_numpy(n):
    s = build_surface_S(n)
    assert s.lattice.signature() == numpy_signature(s.lattice.gram)
    t = build_minitwistor_T(n)
    assert t.lattice.signature() == numpy_signature(t.lattice.gram)


@pytest.mark.parametrize("n", [3, 6, 11])
def test_determinant_agrees_with_sympy(n):
    t = build_minitwistor_T(n)
    assert t.lattice.determinant() == sympy.Matrix(t.lattice.gram).det()


def test_base_quadric():
    q = new_base_quadric({"L": {"A": 1}})
    assert q.K @ q.K == 8
    assert q.rank == 2
    assert q.curve("L") @ q.curve("L") == 0


@given(st.lists(st.sampled_from(["L", "M", None]), min_size=1, max_size=7))
def test_blow_up_bookkeeping(centers):
    s = new_base_quadric({"L": {"A": 1}, "M": {"B": 1}})
    for k, c in enumerate(centers):
        s = blow_up(s, PointSpec(on_curves=(c,) if c else (), track_as=f"E{k}"))
        assert s.K @ s.K + s.rank == 10
        sig = s.lattice.signature()
        assert sig == (1, s.rank - 1, 0)
        assert s.curve(f"E{k}") @ s.curve(f"E{k}") == -1
        assert virtual_genus(s.curve(f"E{k}")) == 0
    hits = centers.count("L")
    assert s.curve("L") @ s.curve("L") == -hits


def test_blow_up_unknown_curve():
    with pytest.raises(KeyError):
        blow_up(new_base_quadric(), PointSpec(on_curves=("nope",)))


def test_intersect_rejects_mismatched_lattices():
    a, b = build_surface_S(3), build_surface_S(4)
    with pytest.raises(ValueError):
        intersect(a["C1"], b["C1"])


@pytest.mark.parametrize("n", [3, 4, 5])
def test_B2_search_oracle_is_unique_and_matches(n):
    # frozen: brute-force enumeration is the oracle for the B2 class
    s = build_surface_S(n)
    found = search_B2_candidates(s)
    assert found == [B2_closed_form(s.lattice, n)]
    assert s["B2"] == found[0]


@pytest.mark.parametrize("n", NS)
def test_conjugation(n):
    s = build_surface_S(n)
    sigma = conjugation(s)
    assert sigma.is_involution() and sigma.is_isometry()
    assert sigma(s["C1"]) == s["Cb1"]


@pytest.mark.parametrize("n", [3, 4])
def test_small_values(n):
    s = build_surface_S(n)
    # reference value: self-intersection of C1 is 1-n, K^2 = 8-2n
    assert s["C1"] @ s["C1"] == 1 - n
    assert s.K @ s.K == 8 - 2 * n


@pytest.mark.parametrize("n", NS)
def test_minitwistor_lattice_numbers(n):
    rep = check_C0_numbers(n)
    assert rep.ok, rep.to_text()


def test_minitwistor_lattice_n4_frozen():
    t = build_minitwistor_T(4)
    assert t.C0 @ t.C0 == 6
    assert virtual_genus(t.C0) == 2
    assert t.K @ t.K == 2
    assert t.lattice.rank == 8


@pytest.mark.parametrize("n", [3, 5, 9])
def test_fibers_of_T(n):
    t = build_minitwistor_T(n)
    f = t["f"]
    assert len(t.fibers) == n + 1
    assert sum(len(c) for _, c in t.fibers) == 3 * n - 1
    for _, comps in t.fibers:
        total = t.lattice.zero()
        for c in comps:
            total = total + t[c]
            assert t[c] @ t[c] < 0
        assert total == f


def test_T_rejects_small_n():
    with pytest.raises(ValueError):
        build_minitwistor_T(2)
