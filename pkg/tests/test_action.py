import itertools
from pathlib import Path

import pytest

from effmod.action import (BadParameter, Coaction, PointNotOnFibre, RankMismatch,
                           action_kernel_ideal, coefficient_subalgebra, cover_example_two,
                           effective_model, invariants, quotient_action,
                           regular_coaction, same_span, special_fibre_points, stabilizer_ideal,
                           subgroup_image, tilde_m, torsor_check, torsor_example_one,
                           trivial_coaction, verify_coaction_axioms)
from effmod.algebra import (AlgMorphism, Presentation, place, span_lattice, subalgebra_closure,
                            to_vector)
from effmod.dvr import RElem
from effmod.finite_field import GF, echelon
from effmod.hopf import (HopfAlgebra, OddPrimeRequired, constant_group_zp2, group_M,
                         hopf_iso_check, kernel_group_K, trivial_algebra)
from effmod.textio import dump_coaction, parse_coaction

P = 3
t = RElem.t_pow(1, P)
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="module")
def ex1():
    c = torsor_example_one(P)
    return c, effective_model(c)


@pytest.fixture(scope="module")
def ex2():
    c = cover_example_two(1, P)
    return c, effective_model(c)


def closure_lattice(A, gens):
    return span_lattice(subalgebra_closure(A, gens))


def trivial_group(p):
    return HopfAlgebra(trivial_algebra(p), [], [], [])


# -- constructors and axioms --------------------------------------------------------

def test_trivial_coaction_axioms():
    c = trivial_coaction(constant_group_zp2(P), torsor_example_one(P).space)
    assert verify_coaction_axioms(c).ok


def test_cover_axioms(ex1, ex2):
    assert verify_coaction_axioms(ex1[0]).ok
    assert verify_coaction_axioms(ex2[0]).ok
    for n1 in (1, 2):
        assert verify_coaction_axioms(cover_example_two(n1, 5)).ok


def test_fault_injection_drops_translation(ex2):
    c = ex2[0]
    u1 = place(c.group.algebra.gen("u1"), c.ring, 0)
    broken = Coaction(c.group, c.space, [c.images[0] - t ** 3 * u1, c.images[1]])
    report = verify_coaction_axioms(broken)
    assert not report.checks["coassociativity"]


def test_example_one_shape(ex1):
    c = ex1[0]
    B = c.space
    assert B.rank() == P * P and B.fibre_gens() == ("Z1", "Z2")
    at_one = AlgMorphism(c.ring, B, [B.one(), B.zero()] + B.gen_elems())
    assert at_one.apply(c.images[0]) == B.gen("Z1") + 1


def test_example_two_shape(ex2):
    c = ex2[0]
    assert tilde_m(1, 3) == 7
    u1 = place(c.group.algebra.gen("u1"), c.ring, 0)
    assert c.images[0] == c.ring.gen("Z1") + t ** 3 * u1


def test_constructor_errors():
    with pytest.raises(OddPrimeRequired):
        torsor_example_one(2)
    with pytest.raises(OddPrimeRequired):
        cover_example_two(1, 2)
    for bad in (0, -1, 1.5, True):
        with pytest.raises(BadParameter):
            cover_example_two(bad, 3)
    with pytest.raises(BadParameter):
        torsor_example_one(9)


@pytest.mark.parametrize("make", [lambda: constant_group_zp2(3),
                                  lambda: kernel_group_K(t, t, 3),
                                  lambda: group_M(t ** 2, 3)])
def test_regular_action(make):
    G = make()
    c = regular_coaction(G)
    assert verify_coaction_axioms(c).ok
    r = effective_model(c)
    assert r.is_identity
    assert torsor_check(c).ok


# -- effective models ---------------------------------------------------------------

def test_coefficient_subalgebras(ex1, ex2):
    A = ex1[0].group.algebra
    u1, u2 = A.gen_elems()
    triv = trivial_coaction(ex1[0].group, ex1[0].space)
    assert all(a.is_constant() for a in coefficient_subalgebra(triv))
    assert closure_lattice(A, coefficient_subalgebra(ex1[0])) == closure_lattice(A, [u1, t * u2])
    assert closure_lattice(A, coefficient_subalgebra(ex2[0])) == \
        closure_lattice(A, [t * u1, t ** 7 * u2])
    assert closure_lattice(A, coefficient_subalgebra(ex2[0])) != \
        closure_lattice(A, [t ** 3 * u1, t ** 7 * u2])


def test_effective_models(ex1, ex2):
    K = kernel_group_K(t, 1, P)
    r1 = ex1[1]
    assert [str(x) for x in r1.embedding.images] == ["u1", "t*u2"]
    assert hopf_iso_check(r1.model, K, K.algebra.gen_elems()).ok
    K2 = kernel_group_K(t ** 4, t ** 2, P)
    r2 = ex2[1]
    assert [str(x) for x in r2.embedding.images] == ["t*u1", "t^7*u2"]
    assert hopf_iso_check(r2.model, K2, K2.algebra.gen_elems()).ok
    for r in (r1, r2):
        assert r.flat and all(r.minimality_certificate.values())
        assert verify_coaction_axioms(r.factored).ok


def test_effective_model_is_idempotent(ex2):
    again = effective_model(ex2[1].factored)
    assert again.is_identity


# -- kernels and stabilizers --------------------------------------------------------

def test_kernel_ideals(ex2):
    c, r = ex2
    k = action_kernel_ideal(r.factored, "special")
    assert k.is_trivial_kernel and k.same_as(r.model.algebra.mod_t().gen_elems())
    kg = action_kernel_ideal(c, "special")
    assert kg.kernel_rank == 9 and not kg.generators
    triv = trivial_coaction(c.group, c.space)
    assert action_kernel_ideal(triv, "generic").kernel_rank == 9
    assert action_kernel_ideal(c, "generic").kernel_rank == 1


def test_stabilizer_examples(ex2):
    r = ex2[1]
    F = GF(P)
    st0 = stabilizer_ideal(r.factored, {"w": 0, "Z1": 0, "Z2": 0}, F)
    assert st0.same_as([{(0, 1): F.one()}]) and st0.quotient_rank == 3
    st1 = stabilizer_ideal(r.factored, {"w": 1, "Z1": 1, "Z2": 1}, F)
    assert st1.same_as([{(0, 1): F.one(), (1, 0): F.one()}])
    with pytest.raises(PointNotOnFibre):
        stabilizer_ideal(r.factored, {"w": 0, "Z1": 1, "Z2": 0}, F)
    with pytest.raises(PointNotOnFibre):
        stabilizer_ideal(r.factored, {"w": 0, "Z1": 0}, F)


def test_stabilizer_of_trivial_group():
    B = Presentation(P, ["w"], base="w")
    c = Coaction(trivial_group(P), B, [])
    st = stabilizer_ideal(c, {"w": 0})
    assert st.generators == [] and st.quotient_rank == 1


@pytest.mark.parametrize("e", [1, 2])
def test_every_special_fibre_point_has_rank_p_stabilizer(ex2, e):
    r = ex2[1]
    F = GF(P, e)
    pts = special_fibre_points(ex2[0].space, F)
    assert len(pts) == F.q
    # mod t the cover equations read Z1^3 = w and Z2^3 = Z1^7
    brute = [dict(zip(("w", "Z1", "Z2"), v)) for v in itertools.product(F.elements(), repeat=3)
             if v[0] == v[1] ** 3 and v[2] ** 3 == v[1] ** 7]
    assert sorted(map(repr, pts)) == sorted(map(repr, brute))
    for pt in pts:
        st = stabilizer_ideal(r.factored, pt, F)
        assert st.quotient_rank == P
        assert st.same_as([{(0, 1): F.one(), (1, 0): F(pt["Z1"]) ** (P - 1)}])


# -- invariants ---------------------------------------------------------------------

def test_invariants_of_trivial_coaction():
    c = trivial_coaction(constant_group_zp2(P), cover_example_two(1, P).space)
    B = c.space
    for D in range(4):
        inv = invariants(c, D)
        monos = [B.monomial(e) for e in itertools.product(range(D + 1), range(min(P, D + 1)),
                                                          range(min(P, D + 1))) if sum(e) <= D]
        assert same_span(inv, monos)


def test_invariants_of_example_two(ex2):
    c = ex2[0]
    B = c.space
    inv = span_lattice(invariants(c, 3))
    assert to_vector(B.gen("w")) in inv
    assert to_vector(B.gen("Z1")) not in inv


def test_invariants_agree_with_model(ex2):
    c, r = ex2
    for D in range(5):
        assert same_span(invariants(c, D), invariants(r.factored, D))


# -- torsors ------------------------------------------------------------------------

def galois_rank_at(c, tau, omega, F):
    """Rank of the Galois map B (x)_{R[w]} B -> A (x) B specialized at t = tau, w = omega."""
    A, B = c.group.algebra, c.space
    mu = c.morphism()
    nA = A.ngens
    wi = 1 + nA + B.index["w"]
    cols = []
    for a in B.basis():
        for b in B.basis():
            x = mu.apply(B.monomial(a)) * c.trivial_part(B.monomial(b))
            vec = {}
            for k, v in x.terms.items():
                key = k[1:wi] + k[wi + 1:]
                y = vec.get(key, F.zero()) + F(v) * F(tau) ** k[0] * F(omega) ** k[wi]
                vec[key] = y
            cols.append({k: v for k, v in vec.items() if v})
    return len(echelon(cols, F))


def test_torsor_examples(ex1, ex2):
    tc1 = torsor_check(ex1[1].factored)
    assert tc1.ok and tc1.certificate_ok and str(tc1.norm) == "1"
    tc2 = torsor_check(ex2[1].factored)
    assert not tc2.ok and tc2.certificate_ok
    assert not torsor_check(ex2[0]).ok
    B = Presentation(P, ["w"], base="w")
    assert torsor_check(Coaction(trivial_group(P), B, [])).ok
    with pytest.raises(RankMismatch):
        torsor_check(trivial_coaction(group_M(t, P), ex1[0].space))


def test_torsor_against_fibrewise_rank(ex1, ex2):
    F = GF(P)
    full = P ** 4
    for tau, omega in [(0, 0), (1, 2), (2, 1)]:
        assert galois_rank_at(ex1[1].factored, tau, omega, F) == full
    assert galois_rank_at(ex2[1].factored, 0, 1, F) < full
    assert galois_rank_at(ex2[1].factored, 1, 1, F) == full


# -- quotients ----------------------------------------------------------------------

def test_quotient_action(ex2):
    c, r = ex2
    assert subgroup_image(r, [c.group.algebra.gen("u1")]) == ["v1"]
    qa = quotient_action(r.factored, ["v1"])
    assert qa.report.ok
    assert qa.invariant_space.gens == ("w", "Z1")
    assert [str(x) for x in qa.coaction.images] == ["Z1 + t^2*v1"]
    e = effective_model(qa.coaction, names=["s1"])
    M6 = group_M(t ** 6, P)
    assert hopf_iso_check(e.model, M6, M6.algebra.gen_elems()).ok


def test_quotient_by_trivial_subgroup(ex2):
    r = ex2[1]
    qa = quotient_action(r.factored, ["v1", "v2"])
    assert [str(x) for x in qa.coaction.images] == [str(x) for x in r.factored.images]


# -- text format --------------------------------------------------------------------

@pytest.mark.parametrize("name,make", [("example_one_p3.txt", lambda: torsor_example_one(3)),
                                       ("example_two_n1_p3.txt", lambda: cover_example_two(1, 3))])
def test_golden_coactions(name, make):
    c = make()
    text = dump_coaction(c)
    assert text == (GOLDEN / name).read_text()
    back = parse_coaction(text)
    assert back.images == [AlgMorphism(c.ring, back.ring, back.ring.gen_elems()).apply(x)
                           for x in c.images]
    assert verify_coaction_axioms(back).ok
