"""Fixed-point pushforward machinery.

Two pushforward paths:

* a graded path for top-degree extraction: sum over all permutations of
  (localized class value)/(product of adjacent differences) at an integer
  generic point, run at two independent points as a guard.  The sum is
  fraction-free: every per-permutation denominator divides the product D
  of all pairwise coordinate differences, so integer numerators scaled by
  D are accumulated and a single exact division happens at the end.

* a q-interpolation path for inhomogeneous/Euler-characteristic values:
  restrict to a one-parameter subgroup T_i = q^{w_i}, sample the resulting
  Laurent polynomial at integer q, interpolate exactly, verify extra
  samples, and evaluate at q = 1 (K-theory) or q = 0 (Chow).

Single-threaded runs use the incremental permutation/basis enumerator; with
jobs > 1 the permutation range is split across processes, each recomputing
greedy bases naively.  Exact arithmetic makes every partition of the sum
produce bit-identical results.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor

from .genperm import GenPermutohedron, check_guardrail
from .kclass import KClassLoc, atom_value, _dedup_atoms
from .matroid import Matroid, bits
from .perms import all_perms, iter_perm_bases
from .poly import InconsistentSamples, SparsePoly, interpolate_univariate
from .rat import Rat, as_int, is_integral


class GenericPointMismatch(AssertionError):
    """Degree sums at two independent generic points disagree."""


class SubDegreeNonzero(AssertionError):
    """A formal coefficient of total degree below the target did not vanish."""


class NonIntegral(AssertionError):
    """A quantity that must be an integer came out fractional."""


class InterpolationInconsistent(AssertionError):
    """Verification samples do not match the interpolant after escalation."""


class PoleAtSample(ArithmeticError):
    """A sample point hit a pole; the caller resamples."""


# ---------------------------------------------------------------------------
# points and weights
# ---------------------------------------------------------------------------


def localization_denominator(sigma, tstar):
    """prod_{i} (t_{sigma(i)} - t_{sigma(i+1)}); the empty product is 1."""
    d = 1
    for a, b in zip(sigma, sigma[1:]):
        d *= tstar[a] - tstar[b]
    return d


def sample_eval_point(n, rng):
    """Pairwise distinct small integers plus a random offset."""
    offset = rng.randrange(0, 3)
    coords = rng.sample(range(1, 5 * n + 2), n)
    return tuple(c + offset for c in coords)


def sample_weight(n, rng):
    """A pairwise-distinct integer direction with small spread."""
    w = list(range(n))
    rng.shuffle(w)
    return tuple(w)


# ---------------------------------------------------------------------------
# graded factors
# ---------------------------------------------------------------------------


class GradedFactor:
    """One multiplicative factor of a graded integrand.

    var:   formal variable tracking this factor's degree
    atom:  which permutation datum the factor value depends on
    poly:  (atom value, tstar) -> {exponent: integer value}, where the
           value of the coefficient of var**k is t-homogeneous of degree k.
    """

    __slots__ = ("var", "atom", "poly", "name")

    def __init__(self, var, atom, poly, name=""):
        self.var = var
        self.atom = atom
        self.poly = poly
        self.name = name


def _elem_sym(values):
    """All elementary symmetric functions e_0..e_len of a value list."""
    out = [1]
    for v in values:
        out.append(0)
        for j in range(len(out) - 1, 0, -1):
            out[j] += out[j - 1] * v
    return out


def _roots_at(rootspec, key_value, tstar):
    kind = rootspec[0]
    if kind == "sdual":
        return [tstar[i] for i in bits(key_value)]
    if kind == "s":
        return [-tstar[i] for i in bits(key_value)]
    if kind == "q":
        full = rootspec[1].full_mask
        return [-tstar[i] for i in bits(full ^ key_value)]
    if kind == "qdual":
        full = rootspec[1].full_mask
        return [tstar[i] for i in bits(full ^ key_value)]
    if kind == "sdiff":
        b1, b2 = key_value
        return [tstar[i] for i in bits(b2 & ~b1)]
    raise ValueError(f"unknown root spec {rootspec}")


def chern_series(rootspec, var, name=""):
    """Full Chern polynomial factor: coefficient of var^j is Elem_j of roots."""
    atom = (
        ("pair", ("basis", rootspec[1]), ("basis", rootspec[2]))
        if rootspec[0] == "sdiff"
        else ("basis", rootspec[1])
    )

    def poly(key_value, tstar):
        es = _elem_sym(_roots_at(rootspec, key_value, tstar))
        return {j: v for j, v in enumerate(es) if v}

    return GradedFactor(var, atom, poly, name or f"c({rootspec[0]},{var})")


def chern_fixed(rootspec, k, var, name=""):
    """Single graded Chern coefficient c_k as a factor (exponent k in var)."""
    atom = (
        ("pair", ("basis", rootspec[1]), ("basis", rootspec[2]))
        if rootspec[0] == "sdiff"
        else ("basis", rootspec[1])
    )

    def poly(key_value, tstar):
        es = _elem_sym(_roots_at(rootspec, key_value, tstar))
        v = es[k] if k < len(es) else 0
        return {k: v} if v else {}

    return GradedFactor(var, atom, poly, name or f"c_{k}({rootspec[0]},{var})")


def alpha_series(var, cap, name="alpha"):
    """1 + alpha x + ... + alpha^cap x^cap with the lift alpha_sigma = -t_{sigma(n)}."""

    def poly(key_value, tstar):
        base = -tstar[key_value]
        out, p = {}, 1
        for i in range(cap + 1):
            if p:
                out[i] = p
            p *= base
        return out

    return GradedFactor(var, ("last",), poly, name)


def beta_series(var, cap, name="beta"):
    """1 + beta y + ... + beta^cap y^cap with the lift beta_sigma = t_{sigma(0)}."""

    def poly(key_value, tstar):
        base = tstar[key_value]
        out, p = {}, 1
        for i in range(cap + 1):
            if p:
                out[i] = p
            p *= base
        return out

    return GradedFactor(var, ("first",), poly, name)


class GradedIntegrand:
    """A product of GradedFactors over one ground set."""

    def __init__(self, ground, factors, name=""):
        self.ground = ground
        self.factors = list(factors)
        self.name = name
        atoms = []
        for f in self.factors:
            for a in _expand_atom(f.atom):
                if a not in atoms:
                    atoms.append(a)
        self.atoms = tuple(atoms)
        self.vars = tuple(dict.fromkeys(f.var for f in self.factors))


def _expand_atom(atom):
    return atom[1:] if atom[0] == "pair" else (atom,)


# ---------------------------------------------------------------------------
# graded integration
# ---------------------------------------------------------------------------


def integrate_graded(
    ev,
    target_degree=None,
    formal_vars=None,
    *,
    ground=None,
    rng,
    jobs=1,
    points=None,
):
    """Non-equivariant degrees of a graded class, as an integer polynomial.

    ev is a GradedIntegrand (fast path) or a callable (sigma, tstar) ->
    SparsePoly (reference path, used by tests).  Runs at two independent
    generic points, asserts they agree, asserts formal coefficients of
    total degree below the target vanish and that the target coefficients
    are integers; returns the degree-target part.
    """
    if isinstance(ev, GradedIntegrand):
        ground = ev.ground
        formal_vars = ev.vars
    if ground is None or formal_vars is None:
        raise ValueError("callable evaluators need ground and formal_vars")
    n = ground - 1
    target = n if target_degree is None else target_degree
    check_guardrail(ground)
    if points is None:
        points = (sample_eval_point(ground, rng), sample_eval_point(ground, rng))
    results = []
    for tstar in points:
        if isinstance(ev, GradedIntegrand):
            terms = _graded_sum_fast(ev, tstar, target, jobs)
        else:
            terms = _graded_sum_callable(ev, ground, formal_vars, tstar, target)
        results.append(terms)
    a, b = results
    low_a = {e: c for e, c in a.items() if sum(e) < target}
    low_b = {e: c for e, c in b.items() if sum(e) < target}
    if low_a or low_b:
        bad = next(iter(low_a or low_b))
        raise SubDegreeNonzero(
            f"coefficient of {bad} (degree {sum(bad)} < {target}) is nonzero"
        )
    top_a = {e: c for e, c in a.items() if sum(e) == target}
    top_b = {e: c for e, c in b.items() if sum(e) == target}
    if top_a != top_b:
        raise GenericPointMismatch(
            f"degree-{target} coefficients differ between generic points"
        )
    if not all(is_integral(c) for c in top_a.values()):
        raise NonIntegral(f"non-integer degree in {top_a}")
    return SparsePoly(formal_vars, {e: Rat(as_int(c)) for e, c in top_a.items()})


def _pairwise_diff_product(tstar):
    d = 1
    for a, b in itertools.permutations(tstar, 2):
        d *= a - b
    return d


def _graded_sum_fast(integrand, tstar, cap, jobs):
    dprime = _pairwise_diff_product(tstar)
    acc = _class_sums(integrand, tstar, dprime, jobs)
    vars = integrand.vars
    vidx = {v: i for i, v in enumerate(vars)}
    nvars = len(vars)
    zero = (0,) * nvars
    state = {key: {zero: v} for key, v in acc.items() if v}
    layout = list(integrand.atoms)
    remaining = list(integrand.factors)
    for fi, factor in enumerate(remaining):
        needed = set()
        for g in remaining[fi + 1 :]:
            needed.update(_expand_atom(g.atom))
        keep = [i for i, a in enumerate(layout) if a in needed]
        if factor.atom[0] == "pair":
            fslot = tuple(layout.index(a) for a in factor.atom[1:])
            fkey_of = lambda key, fs=fslot: tuple(key[i] for i in fs)
        else:
            fslot = layout.index(factor.atom)
            fkey_of = lambda key, fs=fslot: key[fs]
        vpos = vidx[factor.var]
        new_state = {}
        for key, poly in state.items():
            fp = factor.poly(fkey_of(key), tstar)
            pkey = tuple(key[i] for i in keep)
            tgt = new_state.setdefault(pkey, {})
            for e, c in poly.items():
                deg = sum(e)
                for k, fc in fp.items():
                    if deg + k > cap:
                        continue
                    e2 = list(e)
                    e2[vpos] += k
                    e2 = tuple(e2)
                    s = tgt.get(e2, 0) + c * fc
                    if s:
                        tgt[e2] = s
                    elif e2 in tgt:
                        del tgt[e2]
        state = new_state
        layout = [layout[i] for i in keep]
    out = {}
    for poly in state.values():
        for e, c in poly.items():
            out[e] = out.get(e, 0) + c
    return {e: Rat(c, dprime) for e, c in out.items() if c}


def _class_sums(integrand, tstar, dprime, jobs):
    """acc[joint atom key] = sum over matching permutations of dprime/denominator."""
    basis_atoms = [a for a in integrand.atoms if a[0] == "basis"]
    matroids = [a[1] for a in basis_atoms]
    if jobs > 1:
        return _class_sums_parallel(integrand, tstar, dprime, jobs)
    acc = {}
    ground = integrand.ground
    other = [(i, a) for i, a in enumerate(integrand.atoms) if a[0] != "basis"]
    slot = {a: i for i, a in enumerate(integrand.atoms)}
    bslots = [slot[a] for a in basis_atoms]
    if matroids:
        iterator = iter_perm_bases(matroids)
    else:
        iterator = ((s, ()) for s in all_perms(ground))
    key_buf = [None] * len(integrand.atoms)
    for sigma, bvec in iterator:
        for s, bmask in zip(bslots, bvec):
            key_buf[s] = bmask
        for i, a in other:
            key_buf[i] = atom_value(a, sigma)
        key = tuple(key_buf)
        d = 1
        prev = tstar[sigma[0]]
        for e in sigma[1:]:
            cur = tstar[e]
            d *= prev - cur
            prev = cur
        acc[key] = acc.get(key, 0) + dprime // d
    return acc


def _class_sums_parallel(integrand, tstar, dprime, jobs):
    ground = integrand.ground
    total = 1
    for i in range(2, ground + 1):
        total *= i
    atom_descr = []
    for a in integrand.atoms:
        if a[0] == "basis":
            atom_descr.append(("basis", a[1].n_elements, a[1].bases))
        elif a[0] in ("vmin", "vmax"):
            atom_descr.append((a[0], a[1].n_elements, tuple(a[1].rk)))
        else:
            atom_descr.append((a[0],))
    bounds = [total * i // jobs for i in range(jobs + 1)]
    blocks = [
        (atom_descr, ground, tstar, dprime, bounds[i], bounds[i + 1])
        for i in range(jobs)
        if bounds[i] < bounds[i + 1]
    ]
    acc = {}
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_class_sums_block, blocks):
            for key, v in part:
                acc[key] = acc.get(key, 0) + v
    return acc


def _class_sums_block(args):
    atom_descr, ground, tstar, dprime, start, stop = args
    atoms = []
    for s in atom_descr:
        if s[0] == "basis":
            atoms.append(("basis", Matroid(s[1], s[2], validate=False)))
        elif s[0] in ("vmin", "vmax"):
            atoms.append((s[0], GenPermutohedron(s[1], list(s[2]), validate=False)))
        else:
            atoms.append((s[0],))
    acc = {}
    it = itertools.islice(all_perms(ground), start, stop)
    for sigma in it:
        key = tuple(atom_value(a, sigma) for a in atoms)
        d = localization_denominator(sigma, tstar)
        acc[key] = acc.get(key, 0) + dprime // d
    return list(acc.items())


def _graded_sum_callable(ev, ground, formal_vars, tstar, cap):
    total = {}
    tpoint = tuple(Rat(t) for t in tstar)
    for sigma in all_perms(ground):
        val = ev(sigma, tpoint)
        if isinstance(val, SparsePoly):
            val = val.with_vars(formal_vars).terms
        d = Rat(localization_denominator(sigma, tstar))
        for e, c in val.items():
            if sum(e) > cap:
                continue
            s = total.get(e, Rat(0)) + c / d
            if s:
                total[e] = s
            else:
                del total[e]
    return total


def debug_contributions(integrand: GradedIntegrand, tstar):
    """Per-permutation contributions of a graded sum, for small ground sets."""
    from .rat import rat_str

    if integrand.ground > 4:
        raise ValueError("debug dump is for small ground sets only")
    out = {}
    for sigma in all_perms(integrand.ground):
        d = Rat(localization_denominator(sigma, tstar))
        poly = {(0,) * len(integrand.vars): Rat(1)}
        for factor in integrand.factors:
            if factor.atom[0] == "pair":
                key = tuple(atom_value(a, sigma) for a in factor.atom[1:])
            else:
                key = atom_value(factor.atom, sigma)
            fp = factor.poly(key, tstar)
            vpos = integrand.vars.index(factor.var)
            nxt = {}
            for e, c in poly.items():
                for k, fc in fp.items():
                    e2 = list(e)
                    e2[vpos] += k
                    e2 = tuple(e2)
                    nxt[e2] = nxt.get(e2, Rat(0)) + c * fc
            poly = nxt
        word = "".join(str(i) for i in sigma)
        out[word] = {
            ",".join(map(str, e)): rat_str(c / d) for e, c in sorted(poly.items()) if c
        }
    return out


# ---------------------------------------------------------------------------
# K-theoretic Euler characteristics
# ---------------------------------------------------------------------------


def euler_char_ab(kclass: KClassLoc, *, rng, jobs=1):
    """chi of a K-class via the fixed-point sum with denominators 1 - T/T."""
    return euler_char_many([kclass], rng=rng, jobs=jobs)[0]


def euler_char_many(kclasses, *, rng, jobs=1):
    """chi of several K-classes sharing one ground set.

    One compressed permutation scan serves every class and every sample
    point; jobs is accepted for interface uniformity but the scan is
    single-pass (it is far from the bottleneck at guardrail sizes).
    """
    del jobs
    ground = kclasses[0].ground
    if any(c.ground != ground for c in kclasses):
        raise ValueError("classes on different ground sets")
    check_guardrail(ground)
    w = sample_weight(ground, rng)
    groups, keysets = _compress_orbits(kclasses, ground, w)
    dmax = 0
    for cls, keys in zip(kclasses, keysets):
        for key in keys:
            for _, m in cls.monomials(key):
                dmax = max(dmax, abs(sum(x * ww for x, ww in zip(m, w))))
    try:
        return _chi_interpolate(kclasses, keysets, groups, ground, w, dmax)
    except InconsistentSamples:
        return _chi_interpolate(kclasses, keysets, groups, ground, w, 2 * dmax + 1)


def _compress_orbits(kclasses, ground, w):
    """Group permutations by (atom keys, denominator shape).

    The denominator along T_i = q^{w_i} depends only on the multiset of
    adjacent w-differences; returns counts per (joint key, shape) plus the
    per-class key sets.
    """
    atoms = _dedup_atoms(tuple(a for c in kclasses for a in c.atoms))
    slots = [tuple(atoms.index(a) for a in c.atoms) for c in kclasses]
    matroids = [a[1] for a in atoms if a[0] == "basis"]
    bslots = [i for i, a in enumerate(atoms) if a[0] == "basis"]
    other = [(i, a) for i, a in enumerate(atoms) if a[0] != "basis"]
    if matroids:
        iterator = iter_perm_bases(matroids)
    else:
        iterator = ((s, ()) for s in all_perms(ground))
    groups = {}
    key_buf = [None] * len(atoms)
    for sigma, bvec in iterator:
        for s, bmask in zip(bslots, bvec):
            key_buf[s] = bmask
        for i, a in other:
            key_buf[i] = atom_value(a, sigma)
        shape = _denom_shape(sigma, w)
        gk = (tuple(key_buf), shape)
        groups[gk] = groups.get(gk, 0) + 1
    keysets = []
    joints = {g[0] for g in groups}
    for sl in slots:
        keysets.append({tuple(j[i] for i in sl) for j in joints})
    return groups, keysets


def _denom_shape(sigma, w):
    """(sign, q-power shift, sorted |differences|) of the localization denominator."""
    neg_pow = 0
    sign = 1
    mags = []
    prev = w[sigma[0]]
    for e in sigma[1:]:
        cur = w[e]
        delta = cur - prev
        if delta > 0:
            sign = -sign
            mags.append(delta)
        else:
            neg_pow += -delta
            mags.append(-delta)
        prev = cur
    mags.sort()
    return (sign, neg_pow, tuple(mags))


def _chi_interpolate(kclasses, keysets, groups, ground, w, dmax):
    atoms = _dedup_atoms(tuple(a for c in kclasses for a in c.atoms))
    slots = [tuple(atoms.index(a) for a in c.atoms) for c in kclasses]
    n_samples = 2 * dmax + 1 + 3
    qs = [j + 2 for j in range(n_samples)]
    pair_mags = [abs(a - b) for a, b in itertools.combinations(w, 2)]
    samples = [[] for _ in kclasses]
    maxpow = 2 * dmax + sum(pair_mags) + 1
    for q in qs:
        qpow = [1] * (maxpow + 1)
        for i in range(1, maxpow + 1):
            qpow[i] = qpow[i - 1] * q
        dq = 1
        for mg in pair_mags:
            dq *= qpow[mg] - 1
        acc = {}
        shape_cache = {}
        for (joint, shape), count in groups.items():
            contrib = shape_cache.get(shape)
            if contrib is None:
                sign, neg_pow, mags = shape
                dd = 1
                for mg in mags:
                    dd *= qpow[mg] - 1
                contrib = sign * qpow[neg_pow] * (dq // dd)
                shape_cache[shape] = contrib
            acc[joint] = acc.get(joint, 0) + contrib * count
        for ci, (cls, sl) in enumerate(zip(kclasses, slots)):
            val_cache = {}
            total = 0
            for joint, a in acc.items():
                key = tuple(joint[i] for i in sl)
                v = val_cache.get(key)
                if v is None:
                    v = 0
                    for coeff, m in cls.monomials(key):
                        e = dmax + sum(x * ww for x, ww in zip(m, w))
                        v += coeff * qpow[e]
                    val_cache[key] = v
                total += a * v
            num, rem = divmod(total, dq)
            if rem:
                raise NonIntegral(
                    f"scaled character at q={q} is not divisible by the common denominator"
                )
            samples[ci].append((q, num))
    out = []
    for cls, ss in zip(kclasses, samples):
        poly = interpolate_univariate(ss, 2 * dmax)
        chi = poly.evaluate({"q": Rat(1)})
        if not is_integral(chi):
            raise NonIntegral(f"chi of {cls.name} is {chi}")
        out.append(as_int(chi))
    return out


# ---------------------------------------------------------------------------
# inhomogeneous interpolation path
# ---------------------------------------------------------------------------


def integrate_inhomogeneous(
    ev_raw, pole_multiplicity, degree_bound, *, ground, rng, weight=None
):
    """Exact value at t = 0 of sum_sigma ev_raw(sigma, t)/denominator(sigma, t).

    The sum times prod_i (1 + t_i)^pole_multiplicity restricted to the line
    t = q*w is a polynomial in q of degree at most degree_bound; it is
    sampled at degree_bound+1 integer points plus three verification
    points, interpolated exactly, and read off at q = 0.
    """
    n1 = ground
    if weight is None:
        w = list(range(1, n1 + 1))
        rng.shuffle(w)
        w = tuple(w)
    else:
        w = tuple(weight)
    m = pole_multiplicity

    def sample(q):
        tpoint = tuple(Rat(q * wi) for wi in w)
        scale = Rat(1)
        for wi in w:
            scale = scale * (1 + Rat(q) * wi) ** m
        total = Rat(0)
        for sigma in all_perms(n1):
            d = localization_denominator(sigma, tpoint)
            if d == 0:
                raise PoleAtSample(f"q={q}")
            total = total + ev_raw(sigma, tpoint) / d
        return total * scale

    def run(bound):
        samples = []
        q = 0
        cap = 10 * (bound + 10)
        while len(samples) < bound + 1 + 3:
            q += 1
            if q > cap:
                raise PoleAtSample(f"no pole-free samples below q={cap}")
            try:
                samples.append((Rat(q), sample(q)))
            except PoleAtSample:
                continue
        poly = interpolate_univariate(samples, bound)
        return poly.evaluate({"q": Rat(0)})

    try:
        return run(degree_bound)
    except InconsistentSamples:
        try:
            return run(2 * degree_bound + 1)
        except InconsistentSamples as exc:
            raise InterpolationInconsistent(str(exc)) from exc


# ---------------------------------------------------------------------------
# compatibility check
# ---------------------------------------------------------------------------


def fixed_point_compatibility_check(kclass: KClassLoc, *, rng=None, max_exhaustive=5):
    """Check the adjacent-transposition congruences of a localized class.

    For sigma' = sigma o (i, i+1) the localizations must agree after the
    substitution T_{sigma(i)} = T_{sigma(i+1)}.  All pairs are checked on
    small ground sets, a random sample otherwise.  Returns None on success,
    else a witness tuple (sigma, position).
    """
    n1 = kclass.ground
    if n1 <= max_exhaustive or rng is None:
        sigmas = list(all_perms(n1))
    else:
        sigmas = [tuple(rng.sample(range(n1), n1)) for _ in range(120)]
    for sigma in sigmas:
        for i in range(n1 - 1):
            tau = list(sigma)
            tau[i], tau[i + 1] = tau[i + 1], tau[i]
            tau = tuple(tau)
            if _merged(kclass.at(sigma), sigma[i], sigma[i + 1]) != _merged(
                kclass.at(tau), sigma[i], sigma[i + 1]
            ):
                return (sigma, i)
    return None


def _merged(value, a, b):
    """Laurent monomial dict after substituting T_a = T_b."""
    out = {}
    for m, c in value.items():
        e = list(m)
        e[b] += e[a]
        e[a] = 0
        e = tuple(e)
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            del out[e]
    return out
