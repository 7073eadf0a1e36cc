import pytest
from sympy import Matrix

from _criteria import commutator_closure_index
from splitcalc import lattice
from splitcalc.families import FAMILY_IDS, make_family
from splitcalc.gog import TriState, is_minimal, is_reduced, validate
from splitcalc.invariants import AbelianInvariants


def errors(g):
    return [d for d in validate(g) if d.is_error]


@pytest.mark.parametrize("n", [2, 3, 5, 6])
def test_finite_order_family(n):
    inst = make_family("finite-order", n)
    # Z/n * Z: the cyclic factor survives whole
    assert inst.certificate == AbelianInvariants(1, (n,))
    assert not errors(inst.graph)
    assert is_minimal(inst.graph) is TriState.YES


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_heisenberg_family(n):
    inst = make_family("heisenberg", n)
    assert inst.certificate == commutator_closure_index(n) == n * n
    assert not errors(inst.graph)
    expect = TriState.NO if n == 1 else TriState.YES
    assert is_minimal(inst.graph) is expect and is_reduced(inst.graph) is expect
    assert bool(inst.notes) == (n == 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_bs24_and_pn_certificates(n):
    assert make_family("bs24", n).certificate == AbelianInvariants(1, (2,))
    pn = make_family("roots-pn", n)
    assert pn.certificate == AbelianInvariants(2, (2 ** n,))
    assert not errors(pn.graph)


def span_and_root_by_search(b, kmax=20):
    # <a1> = multiples of (1,0,0); b is in the root closure when some kb is
    in_span = b[1] == 0 and b[2] == 0
    in_root = any(k * b[1] == 0 and k * b[2] == 0 for k in range(1, kmax))
    return in_span, in_root


@pytest.mark.parametrize("b", [(1, 0, 0), (0, 1, 0), (3, 0, 0), (2, 1, 0), (0, 0, 0)])
def test_example_1_4(b):
    inst = make_family("example-1-4", b)
    assert inst.certificate == span_and_root_by_search(b)
    assert not errors(inst.graph)
    # the edge group is <a1, b> itself, so its rank is that of the 2x3 matrix
    edge = inst.graph.edges[0].label.group
    assert edge.invariant_factors() == ()
    assert edge.free_rank == Matrix([(1, 0, 0), b]).rank()


@pytest.mark.parametrize("n", [0, 1, 2, 7])
def test_theta_family(n):
    inst = make_family("theta", n)
    assert inst.certificate == (n if n else lattice.INFINITE)
    for key in ("theta0", "theta_n", "lambda_n", "gamma_n", "gamma_prime_n"):
        assert not errors(inst.extras[key])


def test_family_ids_and_bad_parameters():
    assert set(FAMILY_IDS) == {"finite-order", "bs24", "roots-pn", "heisenberg", "example-1-4", "theta"}
    for fid, bad in (("finite-order", 1), ("bs24", 0), ("heisenberg", 0), ("theta", -1)):
        with pytest.raises(ValueError):
            make_family(fid, bad)
