import pytest

from effmod.dvr import RElem
from effmod.finite_field import GF
from effmod.hopf import constant_group_zp2, group_M, kernel_group_K
from effmod.points import point_group, predicted_order, root_count
from effmod.witt import witt_add

P = 3
t = RElem.t_pow(1, P)

CASES = [
    ("Z/p^2", lambda: constant_group_zp2(P), RElem.one(P)),
    ("K_{t,1}", lambda: kernel_group_K(t, 1, P), t),
    ("K_{t^4,t^2}", lambda: kernel_group_K(t ** 4, t ** 2, P), t ** 4),
    ("M_{t^2}", lambda: group_M(t ** 2, P), None),
    ("M_0", lambda: group_M(0, P), None),
]


@pytest.mark.parametrize("name,make,lam", CASES, ids=[c[0] for c in CASES])
@pytest.mark.parametrize("e", [1, 2])
def test_convolution_group(name, make, lam, e):
    H = make()
    F = GF(P, e)
    for tau in [F.zero(), F.one(), F.gen() if e > 1 else F(2)]:
        G = point_group(H, F, tau)
        assert all(G.check_axioms().values())
        assert len(G.points) == predicted_order(H, F, tau)
        for f in G.points:
            for g in G.points:
                if lam is None:
                    assert G.mul(f, g) == (f[0] + g[0],)
                else:
                    lt = F(lam.evaluate(tau))
                    assert G.mul(f, g) == tuple(witt_add(lt, f, g, P))


def test_constant_group_points_are_cyclic():
    G = point_group(constant_group_zp2(P), GF(P))
    assert len(G.points) == 9
    assert max(G.order(f) for f in G.points) == 9


def test_root_count():
    F = GF(3, 2)
    assert root_count(RElem.zero(3), F, 3) == 1
    assert root_count(RElem.one(3), F, 3) == 3
    # x^2 = 2 has roots in F_9 but not in F_3
    assert root_count(RElem([2], 3), F, 3) == 3
    assert root_count(RElem([2], 3), GF(3), 3) == 1
