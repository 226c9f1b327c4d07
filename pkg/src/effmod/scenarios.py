"""End-to-end scenarios producing deterministic JSON reports."""

from __future__ import annotations

import json
import os
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .action import (BadParameter, action_kernel_ideal, cover_example_two, effective_model,
                     coefficient_subalgebra, invariants, quotient_action, same_span,
                     special_fibre_points, stabilizer_ideal, subgroup_image, tilde_m,
                     torsor_check, torsor_example_one, verify_coaction_axioms)
from .algebra import place, subalgebra_closure, tensor_cached, to_vector
from .dvr import RElem, beta, format_relem, is_prime
from .finite_field import GF
from .hopf import (constant_group_zp2, group_M, hopf_iso_check, kernel_group_K,
                   quotient_by_hopf_ideal, verify_hopf_axioms)
from .pid import Lattice
from .points import point_group, predicted_order
from .witt import (InternalMismatch, WittPoint, hom_I, isogeny_phi, point_order, witt_add,
                   witt_hopf, witt_neg, witt_zero)

SCENARIOS = ("example1", "example2", "counterexample", "witt-props", "hopf-props")


@dataclass
class ScenarioReport:
    scenario: str
    p: int
    params: dict
    checks: list = field(default_factory=list)
    duration: float | None = None

    def check(self, name: str, ok: bool, **witness) -> bool:
        self.checks.append({"name": name, "status": "pass" if ok else "fail",
                            "witness": {k: _plain(v) for k, v in witness.items()}})
        return ok

    @property
    def passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def to_dict(self, timing: bool = False) -> dict:
        d = {"scenario": self.scenario, "p": self.p, "params": self.params,
             "checks": self.checks, "passed": self.passed}
        if timing and self.duration is not None:
            d["duration_seconds"] = round(self.duration, 3)
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2) + "\n"

    def to_text(self, timing: bool = False) -> str:
        params = "".join(", %s=%s" % kv for kv in sorted(self.params.items()))
        lines = ["scenario %s (p=%d%s)" % (self.scenario, self.p, params)]
        for c in self.checks:
            lines.append("  [%s] %s" % (c["status"].upper(), c["name"]))
            for k in sorted(c["witness"]):
                lines.append("      %s: %s" % (k, json.dumps(c["witness"][k], sort_keys=True)))
        lines.append("overall: %s" % ("PASS" if self.passed else "FAIL"))
        if timing and self.duration is not None:
            lines.append("duration: %.3f s" % self.duration)
        return "\n".join(lines) + "\n"


def _plain(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, float):
        return round(v, 6)
    if isinstance(v, RElem):
        return format_relem(v)
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return str(v)


def seed_from_env() -> int:
    return int(os.environ.get("EFFMOD_SEED", "0"))


def _t(n, p):
    return RElem.t_pow(n, p)


def _require_odd(p: int):
    if not is_prime(p) or p == 2:
        raise BadParameter("this scenario needs an odd prime p, got %r" % (p,))


def _point_field(p: int):
    """Largest F_{p^e}, e <= 3, whose cube stays below 20000 elements."""
    e = 3
    while e > 1 and (p ** e) ** 3 > 20000:
        e -= 1
    return GF(p, e)


# -- example one -----------------------------------------------------------------

def scenario_example1(p: int = 3, **_) -> ScenarioReport:
    _require_odd(p)
    rep = ScenarioReport("example1", p, {})
    c = torsor_example_one(p)
    ax = verify_coaction_axioms(c)
    rep.check("coaction axioms", ax.ok, failures=ax.failures())

    A = c.group.algebra
    u1, u2 = A.gen_elems()
    coeff = Lattice([to_vector(b) for b in subalgebra_closure(A, coefficient_subalgebra(c))])
    target = Lattice([to_vector(b) for b in subalgebra_closure(A, [u1, _t(1, p) * u2])])
    rep.check("coefficient subalgebra = R[u1, t*u2]", coeff == target,
              pivot_divisors=coeff.pivot_divisors())

    r = effective_model(c)
    K = kernel_group_K(_t(1, p), 1, p)
    iso = hopf_iso_check(r.model, K, K.algebra.gen_elems())
    rep.check("effective model ~ K_{t,1}", iso.ok, embedding=r.embedding.images,
              smith=iso.smith, hopf_compatible=iso.hopf_compatible)

    tc = torsor_check(r.factored)
    rep.check("torsor under the effective model", tc.ok and tc.certificate_ok,
              norm=tc.norm, certificate=tc.certificate_ok)

    B = c.space
    w, Z1, Z2 = B.gen_elems()
    try:
        phi = isogeny_phi(_t(1, p), 1, WittPoint(Z1, Z2))
        ok = phi == (w, w)
    except InternalMismatch:
        phi, ok = None, False
    rep.check("phi_{t,1}(Z1, Z2) = (w, w)", ok, phi=phi)
    return rep


# -- example two -----------------------------------------------------------------

def _expected_factored(r, n1: int, p: int):
    """Expected G'-coaction: Z1 + t^((p-1)n1) v1, Z2 + v2 + sum beta t^(n1(p-1)(p-1-k)) Z1^k v1^(p-k)."""
    P = r.model.algebra
    PB = tensor_cached(P, r.factored.space)
    v1, v2 = (place(g, PB, 0) for g in P.gen_elems())
    _, Z1, Z2 = (place(g, PB, P.ngens) for g in r.factored.space.gen_elems())
    s = sum((beta(p, k) * _t(n1 * (p - 1) * (p - 1 - k), p) * Z1 ** k * v1 ** (p - k)
             for k in range(1, p)), PB.zero())
    return [Z1 + _t((p - 1) * n1, p) * v1, Z2 + v2 + s]


def scenario_example2(p: int = 3, n1: int = 1, **_) -> ScenarioReport:
    _require_odd(p)
    rep = ScenarioReport("example2", p, {"n1": n1})
    c = cover_example_two(n1, p)
    mt = tilde_m(n1, p)
    rep.check("m~1 = n1(p(p-1)+1)", mt == n1 * (p * (p - 1) + 1), m_tilde=mt)
    ax = verify_coaction_axioms(c)
    rep.check("coaction axioms", ax.ok, failures=ax.failures())

    A = c.group.algebra
    u1, u2 = A.gen_elems()
    coeff = Lattice([to_vector(b) for b in subalgebra_closure(A, coefficient_subalgebra(c))])
    target = Lattice([to_vector(b) for b in subalgebra_closure(A, [_t(n1, p) * u1, _t(mt, p) * u2])])
    rep.check("coefficient subalgebra = R[t^n1 u1, t^m~1 u2]", coeff == target,
              pivot_divisors=coeff.pivot_divisors())

    r = effective_model(c)
    lam, nu = _t(n1 * (p - 1) ** 2, p), _t(n1 * (p - 1), p)
    K = kernel_group_K(lam, nu, p)
    iso = hopf_iso_check(r.model, K, K.algebra.gen_elems())
    rep.check("effective model ~ K_{lambda,nu}", iso.ok, lam=lam, nu=nu,
              embedding=r.embedding.images, smith=iso.smith)
    rep.check("flat model", r.flat)

    P = r.model.algebra
    P2 = r.model.square()
    v1, v2 = P.gen_elems()
    a, b = place(v1, P2, 0), place(v1, P2, 2)
    cross = r.model.comult[1] - place(v2, P2, 0) - place(v2, P2, 2)
    expected = sum((beta(p, k) * lam * a ** k * b ** (p - k) for k in range(1, p)), P2.zero())
    rep.check("cross term beta(p,k) t^(n1(p-1)^2)", cross == expected, cross_term=cross)

    rep.check("factored coaction of G'", r.factored.images == _expected_factored(r, n1, p),
              factored=r.factored.images)

    tc = torsor_check(r.factored)
    rep.check("not a torsor under G'", not tc.ok and tc.certificate_ok, norm=tc.norm)

    ks = action_kernel_ideal(r.factored, "special")
    Pk = P.mod_t()
    rep.check("special fibre action of G' is faithful",
              ks.is_trivial_kernel and ks.same_as(Pk.gen_elems()),
              kernel_generators=ks.generators, kernel_rank=ks.kernel_rank)
    kg = action_kernel_ideal(c, "special")
    rep.check("special fibre action of G is trivial", kg.kernel_rank == A.rank(),
              kernel_rank=kg.kernel_rank)

    F = _point_field(p)
    pts = special_fibre_points(c.space, F)
    bad = []
    for pt in pts:
        st = stabilizer_ideal(r.factored, pt, F)
        z1 = F(pt["Z1"])
        want = {(0, 1): F.one(), (1, 0): z1 ** (p - 1)}
        if not (st.quotient_rank == p and st.same_as([want])):
            bad.append(pt)
    rep.check("stabilizers are v2 + v1 z1^(p-1) of rank p", not bad and len(pts) == F.q,
              field="F_%d" % F.q, points=len(pts), failures=len(bad))

    agree = all(same_span(invariants(c, D), invariants(r.factored, D)) for D in range(5))
    rep.check("invariants of G and G' agree for D <= 4", agree)
    return rep


# -- the quotient ------------------------------------------------------------------

def scenario_counterexample(p: int = 3, n1: int = 1, degree_bound: int | None = None,
                            **_) -> ScenarioReport:
    _require_odd(p)
    rep = ScenarioReport("counterexample", p, {"n1": n1})
    c = cover_example_two(n1, p)
    r = effective_model(c)
    G = r.model
    lam, nu = _t(n1 * (p - 1) ** 2, p), _t(n1 * (p - 1), p)

    image = subgroup_image(r, [c.group.algebra.gen("u1")])
    rep.check("image of H = (Z/p) is cut out by v1", image == ["v1"], ideal=image)

    q = quotient_by_hopf_ideal(G, image)
    M1 = group_M(nu ** p * lam ** (p - 1), p)
    iso1 = hopf_iso_check(q.hopf, M1, M1.algebra.gen_elems())
    rep.check("H' ~ M_{nu^p lambda^(p-1)}", iso1.ok, parameter=nu ** p * lam ** (p - 1))

    qa = quotient_action(r.factored, image, degree_bound)
    C = qa.quotient_group.hopf
    M2 = group_M(nu, p)
    iso2 = hopf_iso_check(C, M2, M2.algebra.gen_elems())
    rep.check("G'/H' ~ M_nu", iso2.ok, parameter=nu, generators=qa.quotient_group.embedding.images)

    Bq = qa.invariant_space
    CB = qa.coaction.ring
    want = place(Bq.gen("Z1"), CB, C.algebra.ngens) + nu * place(C.algebra.gen("v1"), CB, 0)
    rule_ok = Bq.rules.get("Z1") is not None and \
        Bq.rules["Z1"] == Bq.rules["Z1"].ring.element("w") + nu ** p * Bq.rules["Z1"].ring.gen("Z1")
    rep.check("X/H': Z1^p - nu^p Z1 = w with v1.Z1 = Z1 + nu v1",
              qa.coaction.images == [want] and rule_ok and qa.report.ok,
              space=list(Bq.gens), coaction=qa.coaction.images)

    e = effective_model(qa.coaction, names=["s1"])
    M3 = group_M(nu ** p, p)
    iso3 = hopf_iso_check(e.model, M3, M3.algebra.gen_elems())
    rep.check("(G/H)' ~ M_{nu^p}", iso3.ok, embedding=e.embedding.images)

    cmp_ = hopf_iso_check(e.model, C, e.embedding)
    expected = [nu ** i for i in range(p)]
    rep.check("comparison s1 = nu v1 is Hopf-compatible", cmp_.hopf_compatible and cmp_.well_defined)
    rep.check("comparison is not an isomorphism", not cmp_.ok and cmp_.smith == expected,
              smith=cmp_.smith)
    return rep


# -- property suites ---------------------------------------------------------------

def _rand_relem(rng: random.Random, p: int, deg: int = 3) -> RElem:
    return RElem([rng.randrange(p) for _ in range(deg + 1)], p)


def witt_properties(p: int, lam: RElem, samples: int, rng: random.Random) -> dict:
    res = {k: True for k in ("commutativity", "associativity", "identity", "inverses",
                             "phi_homomorphism", "I_homomorphism")}
    lp = lam ** p
    for _ in range(samples):
        P, Q, S = (WittPoint(_rand_relem(rng, p), _rand_relem(rng, p)) for _ in range(3))
        nu = _rand_relem(rng, p, 1)
        mu = _rand_relem(rng, p, 1)
        zero = witt_zero(P[0])
        res["commutativity"] &= witt_add(lam, P, Q) == witt_add(lam, Q, P)
        res["associativity"] &= (witt_add(lam, witt_add(lam, P, Q), S)
                                 == witt_add(lam, P, witt_add(lam, Q, S)))
        res["identity"] &= witt_add(lam, P, zero) == P
        res["inverses"] &= witt_add(lam, P, witt_neg(lam, P)) == zero
        try:
            lhs = isogeny_phi(lam, nu, witt_add(lam, P, Q))
            rhs = witt_add(lp, isogeny_phi(lam, nu, P), isogeny_phi(lam, nu, Q))
            res["phi_homomorphism"] &= lhs == rhs
        except InternalMismatch:
            res["phi_homomorphism"] = False
        res["I_homomorphism"] &= (hom_I(lam, mu, nu, witt_add(lam, P, Q))
                                  == witt_add(lam * mu, hom_I(lam, mu, nu, P), hom_I(lam, mu, nu, Q)))
    return res


def scenario_witt_props(p: int = 3, samples: int = 200, primes=(2, 3, 5), **_) -> ScenarioReport:
    seed = seed_from_env()
    rep = ScenarioReport("witt-props", p, {"primes": list(primes), "samples": samples, "seed": seed})
    for q in primes:
        rng = random.Random("%d-%d" % (seed, q))
        for e in range(3):
            lam = _t(e, q)
            res = witt_properties(q, lam, samples, rng)
            for name, ok in res.items():
                rep.check("%s (p=%d, lambda=%s)" % (name, q, lam), ok)
        one = RElem.one(q)
        order = point_order(one, WittPoint(one, RElem.zero(q)))
        rep.check("order of (1,0) in W_2(F_%d)" % q, order == q * q, order=order)
    return rep


_PARAMS = (0, 1, 2, 4)
_M_PARAMS = (None, 0, 1, 2, 6, 14)


def hopf_grid(p: int) -> list[tuple]:
    """(Hopf algebra, its Witt parameter lambda or None for M_nu) over a parameter grid."""
    T = lambda n: _t(n, p)
    out = [(constant_group_zp2(p), RElem.one(p))]
    out += [(kernel_group_K(T(a), T(b), p), T(a)) for a in _PARAMS for b in _PARAMS]
    out += [(group_M(RElem.zero(p) if n is None else T(n), p), None) for n in _M_PARAMS]
    out += [(witt_hopf(T(n), p), T(n)) for n in (0, 1)]
    return out


def _law_agrees(G, lam) -> bool:
    """Convolution law against the additive law (M_nu) or the Witt law at lambda(tau)."""
    F = G.field
    pts = G.points
    if lam is None:
        return all(G.mul(f, g) == (f[0] + g[0],) for f in pts for g in pts)
    lt = F(lam.evaluate(F(G.tau)))
    return all(G.mul(f, g) == tuple(witt_add(lt, f, g, G.hopf.p)) for f in pts for g in pts)


def scenario_hopf_props(p: int = 3, primes=(3, 5), **_) -> ScenarioReport:
    rep = ScenarioReport("hopf-props", p, {"primes": list(primes)})
    for q in primes:
        bad = []
        grid = hopf_grid(q)
        for H, _ in grid:
            r = verify_hopf_axioms(H)
            if not r.ok:
                bad.append((str(H), r.failures()))
        rep.check("Hopf axioms on the parameter grid (p=%d)" % q, not bad,
                  algebras=len(grid), failures=bad)
    for F in (GF(3, 1), GF(3, 2)):
        bad = []
        count = 0
        taus = [F.zero(), F.one(), F.gen() if F.e > 1 else F(2)]
        for H, lam in hopf_grid(3):
            if not H.algebra.is_finite() or H.rank() > 9:
                continue
            for tau in taus:
                G = point_group(H, F, tau)
                ax = G.check_axioms()
                count += 1
                if not all(ax.values()) or len(G.points) != predicted_order(H, F, tau) \
                        or not _law_agrees(G, lam):
                    bad.append((str(H), repr(tau)))
        rep.check("convolution groups over F_%d" % F.q, not bad, cases=count, failures=bad)
    return rep


RUNNERS: dict[str, Callable[..., ScenarioReport]] = {
    "example1": scenario_example1,
    "example2": scenario_example2,
    "counterexample": scenario_counterexample,
    "witt-props": scenario_witt_props,
    "hopf-props": scenario_hopf_props,
}


def run_scenario(name: str, **params) -> ScenarioReport:
    if name not in RUNNERS:
        raise BadParameter("unknown scenario %r; choose from %s" % (name, ", ".join(SCENARIOS)))
    params = {k: v for k, v in params.items() if v is not None}
    start = time.perf_counter()
    rep = RUNNERS[name](**params)
    rep.duration = time.perf_counter() - start
    return rep
