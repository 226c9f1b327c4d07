import random

import pytest
import sympy

from effmod.algebra import (AlgMorphism, Presentation, UnknownGenerator, apply_morphism,
                            format_element, identity, ideal_lattice, normal_form,
                            parse_element, place, span_lattice, subalgebra_closure, tensor_product,
                            to_vector)
from effmod.dvr import RElem
from effmod.hopf import constant_group_zp2, kernel_group_K
from oracles import alg_to_sympy, sympy_normal_form

P = 3
t = RElem.t_pow(1, P)


def zp2():
    return constant_group_zp2(P).algebra


def random_element(A, rng, deg=4, terms=4):
    e = A.zero()
    for _ in range(terms):
        exps = [rng.randrange(deg) for _ in A.gens]
        e = e + A.monomial(exps, RElem([rng.randrange(P) for _ in range(3)], P))
    return e


def test_rules_rewrite():
    assert zp2().gen("u1") ** 3 == zp2().gen("u1")
    K = kernel_group_K(t, 1, P).algebra
    assert K.gen("u2") ** 3 == t * t * K.gen("u2")
    assert normal_form(0, zp2()) == zp2().zero()


def test_normal_form_against_groebner_remainder():
    rng = random.Random(1)
    A = Presentation(P, ["x", "y"], {"x": t, "y": "t^2*y + x + 1"})
    x, y = sympy.symbols("x y")
    tt = sympy.Symbol("t")
    rules = [tt * x, tt ** 2 * y + x + 1]
    for _ in range(40):
        a, b = random_element(A, rng), random_element(A, rng)
        ours = alg_to_sympy(a * b, [x, y])
        raw = sympy.expand(alg_to_sympy(a, [x, y]) * alg_to_sympy(b, [x, y]))
        # the rules were already applied to a and b; compare the product's normal forms
        assert sympy_normal_form(ours, rules, [x, y], P) == sympy_normal_form(raw, rules, [x, y], P)
        assert sympy.Poly(ours, sympy.Symbol("t"), x, y, modulus=P) == \
            sympy_normal_form(raw, rules, [x, y], P)


def test_normal_form_idempotent_and_multiplicative():
    rng = random.Random(2)
    A = kernel_group_K(t ** 4, t ** 2, P).algebra
    for _ in range(30):
        a, b = random_element(A, rng), random_element(A, rng)
        assert normal_form(a, A) == a
        assert normal_form(a.coefficients(), A) == a
        assert (a * b) * a == a * (b * a)
        assert a * (a + b) == a * a + a * b


def test_tensor_rank_and_renaming():
    A = zp2()
    AB, ia, ib = tensor_product(A, A)
    assert AB.rank() == P ** 4
    assert AB.gens == ("u1", "u2", "u1'", "u2'")
    assert not ia.check_well_defined() and not ib.check_well_defined()
    R0 = Presentation(P, [])
    AR, _, _ = tensor_product(A, R0)
    assert AR.gens == A.gens and AR.rules == {g: place(r, AR, 0) for g, r in A.rules.items()}


def test_apply_morphism():
    A = zp2()
    rng = random.Random(3)
    e = random_element(A, rng)
    assert apply_morphism(identity(A), e) == e
    nu = t ** 2
    S = Presentation(P, ["s1"], {"s1": nu ** P})
    M = Presentation(P, ["v1"], {"v1": nu})
    f = AlgMorphism(S, M, [nu * M.gen("v1")])
    assert f.apply(S.gen("s1") ** P) == t ** 8 * M.gen("v1")
    assert f.apply(S.zero()) == M.zero()
    assert not f.check_well_defined()


def test_morphism_well_definedness_detects_bad_images():
    M = Presentation(P, ["x"], {"x": t})
    f = AlgMorphism(M, M, [M.gen("x") + 1])
    assert f.check_well_defined() == ["x"]


def test_subalgebra_closure_examples():
    A = zp2()
    u1, u2 = A.gen_elems()
    assert subalgebra_closure(A, []) == [A.one()]
    assert span_lattice(subalgebra_closure(A, [u1])) == span_lattice([A.one(), u1, u1 * u1])
    clo = subalgebra_closure(A, [t * u1, t ** 7 * u2])
    lat = span_lattice(clo)
    assert lat.rank == 9
    got = sorted(d.degree for d in lat.pivot_divisors())
    assert got == [0, 1, 2, 7, 8, 9, 14, 15, 16]


def test_subalgebra_closure_is_multiplicatively_closed():
    A = kernel_group_K(t, 1, P).algebra
    rng = random.Random(4)
    for _ in range(5):
        gens = [random_element(A, rng, deg=3, terms=2) * t for _ in range(2)]
        basis = subalgebra_closure(A, gens)
        lat = span_lattice(basis)
        for x in basis:
            for y in basis:
                assert to_vector(x * y) in lat


def test_ideal_lattice_contains_multiples():
    A = zp2()
    u1, u2 = A.gen_elems()
    I = ideal_lattice(A, [u1])
    assert to_vector(u1 * u2) in I and to_vector(u2) not in I


def test_text_round_trip():
    A = kernel_group_K(t ** 4, t ** 2, P).algebra
    rng = random.Random(6)
    for _ in range(20):
        e = random_element(A, rng)
        assert parse_element(format_element(e), A) == e
    with pytest.raises(UnknownGenerator):
        parse_element("z + 1", A)


def test_presentation_validation():
    with pytest.raises(ValueError):
        Presentation(P, ["x", "x"])
    with pytest.raises(ValueError):
        Presentation(P, ["t"])
    with pytest.raises(UnknownGenerator):
        Presentation(P, ["x"], {"y": 1})


def test_base_generators_stay_free():
    B = Presentation(P, ["w", "Z"], {"Z": "Z + w"}, base="w")
    Z, w = B.gen("Z"), B.gen("w")
    assert Z ** 3 == Z + w
    assert B.fibre_gens() == ("Z",)
    assert (w ** 5).degree() == 5
