import random

import pytest

from effmod.algebra import Presentation
from effmod.dvr import RElem
from effmod.pid import PidMatrix
from effmod.stages import (ZeroDivisor, closure_stage, family_condition, transition,
                           universal_injectivity_check)

P = 3
t = RElem.t_pow(1, P)


def test_stage_over_R_forces_x_equal_one():
    A = Presentation(P, [])
    s = closure_stage(A, A.const(t), 1)
    assert s.torsion_killed
    assert s.equal(s.x, s.ring.one())
    assert s.module_rank == 1


def test_stage_zero_is_localization():
    A = Presentation(P, ["y"])
    s = closure_stage(A, A.gen("y"), 0, degree_bound=4)
    y = s.embed(A.gen("y"))
    assert s.equal(s.x * y, s.ring.one())
    assert not s.torsion_killed


def test_transition_identity():
    A = Presentation(P, ["y"])
    f = A.gen("y")
    lower = closure_stage(A, t * f, 1, degree_bound=4, variable="x")
    upper = closure_stage(A, t * f, 2, degree_bound=4, variable="x")
    phi = transition(upper, lower)
    # image of x_{n+1} f - t^{n+1} is t (x_n f - t^n)
    rel = upper.x * upper.embed(t * f) - t ** 2
    img = phi.apply(rel)
    assert img == t * (lower.x * lower.embed(t * f) - t)
    assert lower.is_zero(img)
    assert not phi.check_well_defined()


def test_stage_over_finite_algebra():
    A = Presentation(P, ["u"], {"u": t})
    s = closure_stage(A, t * A.gen("u"), 1, degree_bound=4)
    # (x t u - t) is t-torsion-free only after dividing by t: x u = 1
    assert s.equal(s.x * s.embed(A.gen("u")), s.ring.one())


def test_zero_divisor():
    A = Presentation(P, [])
    with pytest.raises(ZeroDivisor):
        closure_stage(A, A.zero(), 1)


def test_injectivity_examples():
    ident = universal_injectivity_check(PidMatrix.parse("1,0;0,1", P))
    assert all(ident.conditions.values())
    d = universal_injectivity_check(PidMatrix.parse("1,0;0,t", P))
    assert d.injective and not d.injective_mod_t and not d.cokernel_flat
    assert not any(d.conditions.values())
    split = universal_injectivity_check(PidMatrix.parse("1,0;0,1;0,0", P))
    assert split.conditions["(2)"] and split.conditions["(3)"]
    assert split.cokernel_free_rank == 1
    zero = universal_injectivity_check(PidMatrix.parse("0,0;0,1", P))
    assert not zero.injective


def test_injectivity_conditions_agree_on_random_matrices():
    rng = random.Random(9)
    for _ in range(100):
        b, a = rng.choice([(2, 2), (3, 2), (3, 3), (2, 1)])
        rows = [[RElem([rng.randrange(P) for _ in range(2)], P) for _ in range(a)] for _ in range(b)]
        r = universal_injectivity_check(PidMatrix.of(rows, P))
        assert r.consistent


def test_family_condition():
    out = family_condition([PidMatrix.parse("1,0", P), PidMatrix.parse("0,1", P)])
    assert out["(4)"]
    out = family_condition([PidMatrix.parse("1,0", P), PidMatrix.parse("t,0", P)])
    assert not out["intersection_generic_zero"]
    out = family_condition([PidMatrix.parse("1,0", P), PidMatrix.parse("0,t", P)])
    assert out["intersection_generic_zero"] and not out["intersection_special_zero"]
