"""Derived matroid invariants and their cross-validating routes.

Every invariant that the theory derives in two ways is computed by both
and compared, with a hard error on mismatch: the 4-variable degree
polynomial against the Tutte transform, Bergman/CSM weights by chain
combinatorics against factor-variety localization, Euler-characteristic
formulas against the zeta substitution, lattice counts against characters,
and the Las Vergnas / flag Tutte polynomials against their defining sums.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .engine import (
    GradedIntegrand,
    alpha_series,
    beta_series,
    chern_fixed,
    chern_series,
    euler_char_ab,
    euler_char_many,
    integrate_graded,
    integrate_inhomogeneous,
)
from .genperm import GenPermutohedron, base_polytope, simplex
from .kclass import (
    KClassLoc,
    alpha_beta_twist,
    det_s_dual,
    dual_class,
    exterior_power,
    kc_product,
    line_bundle,
    q_class,
    restrict_to_chain,
    s_class,
    zeta_monomial_value,
)
from .matroid import FlagMatroid, Matroid, bits, is_quotient, popcount
from .perms import all_perms
from .poly import SparsePoly, interpolate_univariate, psi_transform
from .rat import RAT_ZERO, Rat, as_int, is_integral
from .tutte import beta_pair, t_transform, tutte_delcontr
from .weights import MinkowskiWeight, all_chains


class RouteMismatch(AssertionError):
    """Two independent derivations of the same invariant disagree."""


class CountMismatch(AssertionError):
    """A character value disagrees with a lattice-point count."""


class IdentityFailure(AssertionError):
    """A polynomial identity required by the theory fails."""


class ChiRouteMismatch(AssertionError):
    """Euler characteristics by localization and by zeta disagree."""


class LoopOrColoopPresent(ValueError):
    """The g-polynomial needs a loopless and coloopless matroid."""


class NotAQuotient(ValueError):
    """The pair of matroids is not a matroid morphism."""


class IndicatorIdentityFails(AssertionError):
    """The hard-coded subdivision's indicator identity fails."""


class ValuativityFails(AssertionError):
    """An invariant fails inclusion-exclusion over the subdivision."""


T4_VARS = ("x", "y", "z", "w")


# ---------------------------------------------------------------------------
# Theorem-A style degree polynomials
# ---------------------------------------------------------------------------


def taut_degree_polynomial(m: Matroid, *, rng, jobs=1) -> SparsePoly:
    """sum of (deg alpha^i beta^j c_k(S^v) c_l(Q)) x^i y^j z^k w^l."""
    n1 = m.n_elements
    integrand = GradedIntegrand(
        n1,
        [
            chern_series(("sdual", m), "z"),
            chern_series(("q", m), "w"),
            beta_series("y", n1 - 1),
            alpha_series("x", n1 - 1),
        ],
        name="taut_degree",
    )
    p = integrate_graded(integrand, rng=rng, jobs=jobs)
    return p.with_vars(T4_VARS)


def mixed_degree_generating(subs, quots, *, rng, jobs=1) -> SparsePoly:
    """Generating polynomial of mixed degrees for several S/Q factors.

    Variables: x (alpha), y (beta), z1..zm for the dual sub classes,
    w1..wm' for the quotient classes.
    """
    mats = list(subs) + list(quots)
    if not mats:
        n1 = None
        raise ValueError("need at least one matroid to fix the ground set")
    n1 = mats[0].n_elements
    if any(m.n_elements != n1 for m in mats):
        raise ValueError("matroids on different ground sets")
    factors = []
    vars_out = ["x", "y"]
    for i, m in enumerate(subs, start=1):
        factors.append(chern_series(("sdual", m), f"z{i}"))
        vars_out.append(f"z{i}")
    for i, m in enumerate(quots, start=1):
        factors.append(chern_series(("q", m), f"w{i}"))
        vars_out.append(f"w{i}")
    factors.append(beta_series("y", n1 - 1))
    factors.append(alpha_series("x", n1 - 1))
    integrand = GradedIntegrand(n1, factors, name="mixed_degree")
    return integrate_graded(integrand, rng=rng, jobs=jobs).with_vars(tuple(vars_out))


def alpha_beta_degrees(n1, *, rng, jobs=1) -> SparsePoly:
    """sum (deg alpha^i beta^j) x^i y^j on the ground set of size n1."""
    integrand = GradedIntegrand(
        n1, [beta_series("y", n1 - 1), alpha_series("x", n1 - 1)]
    )
    return integrate_graded(integrand, rng=rng, jobs=jobs).with_vars(("x", "y"))


def theorem_a_check(m: Matroid, *, rng, jobs=1):
    """Assert the degree polynomial equals the Tutte transform; returns it."""
    lhs = taut_degree_polynomial(m, rng=rng, jobs=jobs)
    rhs = t_transform(m)
    if lhs != rhs:
        raise IdentityFailure(f"degree polynomial differs from Tutte transform for {m!r}")
    return lhs


def beta_via_localization(m: Matroid, *, rng, jobs=1):
    """(beta(M), beta(M dual)) read from the degree polynomial."""
    p = taut_degree_polynomial(m, rng=rng, jobs=jobs)
    r, crk = m.rank_value, m.corank
    b1 = p.coeff((0, 0, r - 1, crk)) if r >= 1 else RAT_ZERO
    b2 = p.coeff((0, 0, r, crk - 1)) if crk >= 1 else RAT_ZERO
    return as_int(b1), as_int(b2)


# ---------------------------------------------------------------------------
# Minkowski weights: Bergman and CSM classes
# ---------------------------------------------------------------------------

_FACTOR_DEGREE_MEMO = {}


def _factor_degree_poly(m: Matroid, rng) -> SparsePoly:
    """Top-degree polynomial sum (deg c_a(S^v) c_b(Q)) z^a w^b for one factor."""
    key = m.key()
    got = _FACTOR_DEGREE_MEMO.get(key)
    if got is None:
        integrand = GradedIntegrand(
            m.n_elements,
            [chern_series(("sdual", m), "z"), chern_series(("q", m), "w")],
        )
        got = integrate_graded(integrand, rng=rng).with_vars(("z", "w"))
        _FACTOR_DEGREE_MEMO[key] = got
    return got


def bergman_weight(m: Matroid, *, rng) -> MinkowskiWeight:
    """Bergman class as a Minkowski weight of dimension rank-1.

    Combinatorial route: weight 1 exactly on maximal chains of nonempty
    proper flats of a loopless matroid.  Geometric route: the degree of
    the top Chern class of Q_M against each torus-orbit closure, computed
    by localization on the factor varieties.  Both must agree.
    """
    r = m.rank_value
    n1 = m.n_elements
    comb = {}
    if r >= 1 and not m.loops():
        for chain in m.flat_chains(r - 1):
            comb[chain] = 1
    combinatorial = MinkowskiWeight(n1, r - 1, comb)
    geom = {}
    if r >= 1:
        for chain in all_chains(n1, r - 1):
            val = 1
            for factor in restrict_to_chain(m, chain):
                w = _factor_degree_poly(factor, rng)
                g = factor.n_elements
                val *= as_int(w.coeff((0, g - 1)))
                if not val:
                    break
            if val:
                geom[chain] = val
    geometric = MinkowskiWeight(n1, r - 1, geom)
    if combinatorial != geometric:
        raise RouteMismatch(f"Bergman weight routes disagree for {m!r}")
    return combinatorial


def csm_weight(m: Matroid, k: int, *, rng) -> MinkowskiWeight:
    """k-dimensional CSM class of M as a Minkowski weight.

    Combinatorial route: (-1)^(r-1-k) prod beta(M|S_{i+1}/S_i) over chains
    of flats (zero when any level, including the empty set, is not a
    flat).  Geometric route: coefficient extraction from the product of
    factor degree polynomials.
    """
    r = m.rank_value
    if not 0 <= k <= r - 1:
        raise ValueError(f"need 0 <= k <= rank-1, got k={k}")
    n1 = m.n_elements
    sign = (-1) ** (r - 1 - k)
    loopless = not m.loops()
    flats = set(m.flats())
    comb = {}
    for chain in all_chains(n1, k):
        if not loopless or any(s not in flats for s in chain):
            continue
        val = 1
        for factor in restrict_to_chain(m, chain):
            val *= beta_pair(factor)[0]
            if not val:
                break
        if val:
            comb[chain] = sign * val
    combinatorial = MinkowskiWeight(n1, k, comb)
    geom = {}
    for chain in all_chains(n1, k):
        prod = None
        for factor in restrict_to_chain(m, chain):
            w = _factor_degree_poly(factor, rng)
            prod = w if prod is None else prod * w
        val = prod.coeff((r - 1 - k, n1 - r))
        if val:
            geom[chain] = sign * as_int(val)
    geometric = MinkowskiWeight(n1, k, geom)
    if combinatorial != geometric:
        raise RouteMismatch(f"CSM weight routes disagree for {m!r}, k={k}")
    return combinatorial


def chern_q_restricted_degrees(m: Matroid, chain, rng) -> SparsePoly:
    """sum_j (deg c_j(Q_M) against the orbit closure of a chain) u^j."""
    prod = None
    for factor in restrict_to_chain(m, chain):
        w = _factor_degree_poly(factor, rng)
        g = factor.n_elements
        top = w.coeff((0, g - 1))
        part = SparsePoly(("u",), {(g - 1,): top})
        prod = part if prod is None else prod * part
    return prod


# ---------------------------------------------------------------------------
# K-theory bridge: Euler characteristics two ways
# ---------------------------------------------------------------------------


def chi_via_zeta(kcls: KClassLoc, *, rng):
    """chi via the substitution T_i -> 1 + t_i and the deg_alpha weight.

    The zeta image of the class times the equivariant total Chern class of
    the corank-one tautological dual is pushed forward with the Chow-side
    localization formula; the value at t = 0 is the Euler characteristic.
    """
    n1 = kcls.ground
    keys = {kcls.key_at(sigma) for sigma in all_perms(n1)}
    pole = 0
    posdeg = 0
    for key in keys:
        for _, mono in kcls.monomials(key):
            pole = max(pole, sum(-x for x in mono if x < 0))
            posdeg = max(posdeg, sum(mono))
    bound = pole * n1 + max(0, posdeg)

    def ev_raw(sigma, tpoint):
        val = RAT_ZERO
        for coeff, mono in kcls.monomials(kcls.key_at(sigma)):
            val = val + coeff * zeta_monomial_value(mono, tpoint)
        weight = Rat(1)
        for i in sigma[:-1]:
            weight = weight * (1 + tpoint[i])
        return val * weight

    chi = integrate_inhomogeneous(ev_raw, pole, bound, ground=n1, rng=rng)
    if not is_integral(chi):
        raise ChiRouteMismatch(f"zeta-route chi is not an integer: {chi}")
    return as_int(chi)


def chi_both_routes(kcls: KClassLoc, *, rng):
    """Euler characteristic with the fixed-point and zeta routes compared."""
    ab = euler_char_ab(kcls, rng=rng)
    zz = chi_via_zeta(kcls, rng=rng)
    if ab != zz:
        raise ChiRouteMismatch(f"chi routes disagree on {kcls.name}: {ab} vs {zz}")
    return ab


# ---------------------------------------------------------------------------
# Fink-Speyer Tutte via characters
# ---------------------------------------------------------------------------


def fs_classes(m: Matroid):
    """[det S^v][wedge^i S][wedge^j Q^v] for 0<=i<=r, 0<=j<=crk."""
    det = det_s_dual(m)
    s = s_class(m)
    qd = dual_class(q_class(m))
    out = {}
    for i in range(m.rank_value + 1):
        for j in range(m.corank + 1):
            out[i, j] = kc_product(det, exterior_power(s, i), exterior_power(qd, j))
    return out

def fs_tutte(m: Matroid, *, rng, jobs=1, zeta_check=False) -> SparsePoly:
    """Tutte polynomial assembled from Euler characteristics.

    T(u, v) = sum chi([det S^v][wedge^i S][wedge^j Q^v]) (u-1)^i (v-1)^j,
    computed by the fixed-point character sum (optionally cross-checked
    against the zeta route) and verified against deletion-contraction.
    """
    classes = fs_classes(m)
    pairs = sorted(classes)
    chis = euler_char_many([classes[p] for p in pairs], rng=rng, jobs=jobs)
    if zeta_check:
        for p, chi in zip(pairs, chis):
            zz = chi_via_zeta(classes[p], rng=rng)
            if zz != chi:
                raise ChiRouteMismatch(f"fs class {p}: chi {chi} vs zeta {zz}")
    u1 = SparsePoly(("u", "v"), {(1, 0): Rat(1), (0, 0): Rat(-1)})
    v1 = SparsePoly(("u", "v"), {(0, 1): Rat(1), (0, 0): Rat(-1)})
    out = SparsePoly.zero(("u", "v"))
    for (i, j), chi in zip(pairs, chis):
        if chi:
            out = out + chi * u1**i * v1**j
    expected = tutte_delcontr(m).with_vars(("x", "y"))
    renamed = SparsePoly(("u", "v"), dict(expected.terms))
    if out != renamed:
        raise ChiRouteMismatch(f"character Tutte differs from deletion-contraction for {m!r}")
    return out


# ---------------------------------------------------------------------------
# Cameron-Fink lattice-point Tutte
# ---------------------------------------------------------------------------


@dataclass
class CfReport:
    matroid: Matroid
    grid: dict
    q_poly: SparsePoly
    psi_image: SparsePoly
    identity_ok: bool = True


def cf_check(m: Matroid, t_range=None, u_range=None, *, rng, jobs=1) -> CfReport:
    """Cameron-Fink polynomial Q_M computed two ways, then Psi vs the transform.

    Q_M(t, u) is sampled on a grid both as chi(O(t alpha + u beta) det S^v)
    and as the number of lattice points of P(M) + t*nabla + u*Delta; the
    samples must agree.  The grid is interpolated to a polynomial of degree
    at most n in each variable, Psi is applied, and the result must equal
    the Tutte transform specialized at (x+1, y, 1, 0).
    """
    n1 = m.n_elements
    n = n1 - 1
    ts = list(t_range) if t_range is not None else list(range(n + 1))
    us = list(u_range) if u_range is not None else list(range(n + 1))
    if len(ts) < n + 1 or len(us) < n + 1:
        raise ValueError(f"grid must contain at least {n + 1} points per axis")
    pm = base_polytope(m)
    nabla = simplex(n1).negate()
    delta = simplex(n1)
    pairs = [(t, u) for t in ts for u in us]
    classes = [kc_product(alpha_beta_twist(n1, t, u), det_s_dual(m)) for t, u in pairs]
    chis = euler_char_many(classes, rng=rng, jobs=jobs)
    grid = {}
    for (t, u), chi in zip(pairs, chis):
        poly = pm + nabla.dilate(t) + delta.dilate(u)
        count = poly.count_lattice_points()
        if count != chi:
            raise CountMismatch(
                f"Q_{{{m!r}}}({t},{u}): chi {chi} != lattice count {count}"
            )
        grid[t, u] = chi
    qpoly = _interpolate_grid(grid, ts[: n + 1], us[: n + 1], n)
    for (t, u), v in grid.items():
        if qpoly.evaluate({"t": Rat(t), "u": Rat(u)}) != v:
            raise IdentityFailure(f"Q_M interpolation missed the sample at {(t, u)}")
    psi = psi_transform(qpoly)
    shifted = (
        t_transform(m)
        .substitute("x", SparsePoly(("x",), {(1,): Rat(1), (0,): Rat(1)}))
        .substitute("z", 1)
        .substitute("w", 0)
        .with_vars(("x", "y"))
    )
    if psi != shifted:
        raise IdentityFailure(f"Psi(Q_M) differs from the Tutte transform for {m!r}")
    return CfReport(m, grid, qpoly, psi)


def _interpolate_grid(grid, ts, us, deg):
    """Bivariate interpolation on a product grid, degree <= deg per variable."""
    rows = {}
    for u in us:
        samples = [(Rat(t), Rat(grid[t, u])) for t in ts]
        rows[u] = interpolate_univariate(samples, deg, var="t")
    out = SparsePoly.zero(("t", "u"))
    for k in range(deg + 1):
        samples = [(Rat(u), rows[u].coeff((k,))) for u in us]
        cu = interpolate_univariate(samples, deg, var="u")
        tk = SparsePoly(("t",), {(k,): Rat(1)})
        out = out + tk * cu
    return out


def ehrhart(p: GenPermutohedron, c: int, *, rng, jobs=1) -> int:
    """Lattice points of c*P via chi(O(D_{cP})), checked against enumeration."""
    if c < 0:
        raise ValueError("dilation must be nonnegative")
    dilated = p.dilate(c)
    chi = euler_char_ab(line_bundle(dilated), rng=rng, jobs=jobs)
    count = dilated.count_lattice_points()
    if chi != count:
        raise CountMismatch(f"ehrhart: chi {chi} != enumeration {count}")
    return chi


# ---------------------------------------------------------------------------
# Speyer's g-polynomial
# ---------------------------------------------------------------------------


def g_polynomial(m: Matroid, *, rng, jobs=1) -> SparsePoly:
    """g_M(s) by the Chow route, cross-checked against the character route.

    Chow route: (-1)^comp sum_i deg_alpha(c(Q^v) c_{r-i}(S^v) c_crk(Q)) (-s)^i.
    Character route: the double character sum of wedge powers of S and Q^v
    specialized to one variable.  Hard error if the routes disagree.
    """
    if m.loops() or m.coloops():
        raise LoopOrColoopPresent(f"{m!r} has a loop or coloop")
    r, crk, n1 = m.rank_value, m.corank, m.n_elements
    comp_sign = (-1) ** len(m.connected_components())

    integrand = GradedIntegrand(
        n1,
        [
            chern_series(("qdual", m), "u"),
            chern_series(("sdual", m), "z"),
            chern_fixed(("q", m), crk, "w"),
            alpha_series("x", n1 - 1),
        ],
        name="g_chow",
    )
    top = integrate_graded(integrand, rng=rng, jobs=jobs)
    collapsed = top.substitute("x", 1).substitute("u", 1).substitute("w", 1)
    g_chow = SparsePoly.zero(("s",))
    for i in range(r + 1):
        c = collapsed.coeff(_exp_for(collapsed.vars, {"z": r - i}))
        if c:
            g_chow = g_chow + SparsePoly(("s",), {(i,): comp_sign * (-1) ** i * c})

    s = s_class(m)
    qd = dual_class(q_class(m))
    pairs = [(i, j) for i in range(r + 1) for j in range(crk + 1)]
    chis = euler_char_many(
        [kc_product(exterior_power(s, i), exterior_power(qd, j)) for i, j in pairs],
        rng=rng,
        jobs=jobs,
    )
    x1 = SparsePoly(("x", "y"), {(1, 0): Rat(1), (0, 0): Rat(-1)})
    y1 = SparsePoly(("x", "y"), {(0, 1): Rat(1), (0, 0): Rat(-1)})
    pxy = SparsePoly.zero(("x", "y"))
    for (i, j), chi in zip(pairs, chis):
        if chi:
            pxy = pxy + chi * x1**i * y1**j
    h = pxy.substitute("y", 0).with_vars(("x",))
    g_char = SparsePoly.zero(("s",))
    for (e,), c in h.terms.items():
        g_char = g_char + SparsePoly(("s",), {(e,): comp_sign * (-1) ** e * c})
    if g_chow != g_char:
        raise RouteMismatch(f"g-polynomial routes disagree for {m!r}")
    return g_chow


def _exp_for(vars, assignment):
    return tuple(assignment.get(v, 0) for v in vars)


# ---------------------------------------------------------------------------
# Flag matroids
# ---------------------------------------------------------------------------


def flag_tutte_kt(flag: FlagMatroid, *, rng, jobs=1) -> SparsePoly:
    """Flag-geometric Tutte polynomial KT(x, y) via localization degrees."""
    mats = flag.constituents
    k = len(mats)
    n1 = flag.n_elements
    r_top = mats[-1].rank_value
    r_bot = mats[0].rank_value
    factors = [chern_series(("sdual", mm), "v") for mm in mats[:-1]]
    factors.append(chern_series(("sdual", mats[-1]), "z"))
    factors.append(chern_series(("q", mats[0]), "w"))
    factors.append(alpha_series("x", n1 - 1))
    top = integrate_graded(GradedIntegrand(n1, factors, name="flag_kt"), rng=rng, jobs=jobs)
    collapsed = top.substitute("x", 1)
    if k > 1:
        collapsed = collapsed.substitute("v", 1)
    collapsed = collapsed.with_vars(("z", "w"))
    x = SparsePoly.variable("x", ("x", "y"))
    y = SparsePoly.variable("y", ("x", "y"))
    one_minus_y = SparsePoly(("x", "y"), {(0, 0): Rat(1), (0, 1): Rat(-1)})
    out = SparsePoly.zero(("x", "y"))
    for (i, j), d in collapsed.terms.items():
        out = out + d * x ** (r_top - i) * y ** (n1 - r_bot - j) * one_minus_y**j
    return out


def flag_kchi(flag: FlagMatroid, *, rng, jobs=1) -> SparsePoly:
    """K-theoretic characteristic polynomial; asserts alternating signs."""
    kt = flag_tutte_kt(flag, rng=rng, jobs=jobs)
    one_minus_q = SparsePoly(("q",), {(0,): Rat(1), (1,): Rat(-1)})
    out = kt.substitute("x", one_minus_q).substitute("y", 0).with_vars(("q",))
    out = out * ((-1) ** sum(flag.ranks))
    signs = {(-1) ** e[0] * (1 if c > 0 else -1) for e, c in out.terms.items()}
    if len(signs) > 1:
        raise IdentityFailure(f"K-characteristic signs do not alternate: {out.render()}")
    return out


def lvt(m1: Matroid, m2: Matroid, *, rng, jobs=1) -> SparsePoly:
    """Las Vergnas Tutte polynomial of a matroid morphism, two routes.

    Route (a): the defining corank-nullity style subset sum.  Route (b):
    localization degrees of c_i(S_{M1}^v) c_j(Q_{M2}^v) c_k((S2/S1)^v)
    against the deg_alpha weight.  Hard error if they disagree.
    """
    if not is_quotient(m1, m2):
        raise NotAQuotient("every flat of the first matroid must be a flat of the second")
    n1 = m1.n_elements
    r1, r2 = m1.rank_value, m2.rank_value
    vars3 = ("x", "y", "z")
    x1 = SparsePoly(vars3, {(1, 0, 0): Rat(1), (0, 0, 0): Rat(-1)})
    y1 = SparsePoly(vars3, {(0, 1, 0): Rat(1), (0, 0, 0): Rat(-1)})
    z = SparsePoly.variable("z", vars3)
    direct = SparsePoly.zero(vars3)
    for a in range(1 << n1):
        ra1, ra2 = m1.rank(a), m2.rank(a)
        direct = direct + (
            x1 ** (r1 - ra1) * y1 ** (popcount(a) - ra2) * z ** (r2 - r1 - ra2 + ra1)
        )

    integrand = GradedIntegrand(
        n1,
        [
            chern_series(("sdual", m1), "u"),
            chern_series(("qdual", m2), "v"),
            chern_series(("sdiff", m1, m2), "s"),
            alpha_series("x", n1 - 1),
        ],
        name="lvt",
    )
    top = integrate_graded(integrand, rng=rng, jobs=jobs)
    collapsed = top.substitute("x", 1).with_vars(("u", "v", "s"))
    xx = SparsePoly.variable("x", vars3)
    yy = SparsePoly.variable("y", vars3)
    z1 = SparsePoly(vars3, {(0, 0, 1): Rat(1), (0, 0, 0): Rat(1)})
    local = SparsePoly.zero(vars3)
    for (i, j, kk), d in collapsed.terms.items():
        local = local + (
            d
            * xx ** (r1 - i)
            * yy ** (n1 - r2 - j)
            * y1**j
            * z1 ** (r2 - r1 - kk)
        )
    if direct != local:
        raise RouteMismatch(f"LVT routes disagree for ({m1!r}, {m2!r})")
    return direct


# ---------------------------------------------------------------------------
# coalgebra recursion and valuativity
# ---------------------------------------------------------------------------


def coalgebra_recursion_check(m: Matroid, pivot: int):
    """Verify both convolution recursions of the Tutte transform at a pivot.

    t_M = t_M|_{x=0} + x * sum over proper S containing the pivot of
    t_{M|S}(0,y,z,w) t_{M/S}(x,0,z,w), and the mirrored y-version over
    proper nonempty S avoiding the pivot.  Returns None or a witness string.
    """
    n1 = m.n_elements
    if n1 < 2:
        raise ValueError("need at least two elements")
    full = m.full_mask
    t = t_transform(m)
    x = SparsePoly.variable("x", T4_VARS)
    y = SparsePoly.variable("y", T4_VARS)

    def tx0(mm):
        return t_transform(mm).substitute("x", 0).with_vars(T4_VARS)

    def ty0(mm):
        return t_transform(mm).substitute("y", 0).with_vars(T4_VARS)

    acc1 = t.substitute("x", 0).with_vars(T4_VARS)
    acc2 = t.substitute("y", 0).with_vars(T4_VARS)
    bit = 1 << pivot
    for s in range(1, full):
        if s & bit:
            acc1 = acc1 + x * tx0(m.restrict(s)) * ty0(m.contract(s))
        else:
            acc2 = acc2 + y * tx0(m.restrict(s)) * ty0(m.contract(s))
    if acc1 != t:
        return f"x-recursion fails for {m!r} at pivot {pivot}"
    if acc2 != t:
        return f"y-recursion fails for {m!r} at pivot {pivot}"
    return None


def hypersimplex_split():
    """The hard-coded valuative subdivision of the hypersimplex Delta(2,4).

    1_{P(U_{2,4})} = 1_{P(M1)} + 1_{P(M2)} - 1_{P(M12)} with M1 making 0,1
    parallel, M2 making 2,3 parallel, and M12 their common face matroid
    U_{1,{0,1}} + U_{1,{2,3}}.
    """
    from .matroid import matroid_from_bases, uniform

    u24 = uniform(2, 4)
    pairs = list(itertools.combinations(range(4), 2))
    m1 = matroid_from_bases(4, [p for p in pairs if p != (0, 1)])
    m2 = matroid_from_bases(4, [p for p in pairs if p != (2, 3)])
    m12 = matroid_from_bases(4, [(i, j) for i in (0, 1) for j in (2, 3)])
    return u24, m1, m2, m12


def _membership(polytope: GenPermutohedron, point):
    full = polytope.full_mask
    if sum(point) != polytope.rk[full]:
        return False
    for s in range(1, full + 1):
        tot = sum(point[i] for i in bits(s))
        if tot > polytope.rk[s]:
            return False
    return True


def valuativity_demo(*, rng, jobs=1, denominator=4):
    """Brute-force the split's indicator identity, then three invariants.

    The indicator identity is checked on the rational grid with the given
    denominator inside the cube; then inclusion-exclusion is asserted for
    the degree polynomial, the Bergman weight, and the beta pair.
    """
    u24, m1, m2, m12 = hypersimplex_split()
    polys = [base_polytope(mm) for mm in (u24, m1, m2, m12)]
    steps = [Rat(i, denominator) for i in range(denominator + 1)]
    for pt in itertools.product(steps, repeat=4):
        if sum(pt) != 2:
            continue
        lhs = 1 if _membership(polys[0], pt) else 0
        rhs = (
            (1 if _membership(polys[1], pt) else 0)
            + (1 if _membership(polys[2], pt) else 0)
            - (1 if _membership(polys[3], pt) else 0)
        )
        if lhs != rhs:
            raise IndicatorIdentityFails(f"indicator identity fails at {pt}")
    t0 = taut_degree_polynomial(u24, rng=rng, jobs=jobs)
    t1 = taut_degree_polynomial(m1, rng=rng, jobs=jobs)
    t2 = taut_degree_polynomial(m2, rng=rng, jobs=jobs)
    t12 = taut_degree_polynomial(m12, rng=rng, jobs=jobs)
    if t0 != t1 + t2 - t12:
        raise ValuativityFails("degree polynomial is not valuative on the split")
    b0 = bergman_weight(u24, rng=rng)
    combo = bergman_weight(m1, rng=rng).plus(bergman_weight(m2, rng=rng)).plus(
        bergman_weight(m12, rng=rng).scaled(-1)
    )
    if b0 != combo:
        raise ValuativityFails("Bergman weight is not valuative on the split")
    beta0 = beta_pair(u24)
    betas = [beta_pair(mm) for mm in (m1, m2, m12)]
    if (
        beta0[0] != betas[0][0] + betas[1][0] - betas[2][0]
        or beta0[1] != betas[0][1] + betas[1][1] - betas[2][1]
    ):
        raise ValuativityFails("beta invariant is not valuative on the split")
    return {
        "indicator": "ok",
        "degree_polynomial": "ok",
        "bergman": "ok",
        "beta": "ok",
    }
