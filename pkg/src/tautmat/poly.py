"""Sparse multivariate polynomials over exact rationals.

A polynomial is a map {exponent vector -> nonzero Rat} together with an
ordered tuple of variable names.  The canonical term order used for
serialization and rendering is graded lexicographic (total degree first).
Also houses exact univariate Lagrange interpolation, the binomial-basis
transform sending binom(t,i)binom(u,j) -> x^i y^j, and the log-concave
unbroken-array test for coefficient arrays of homogeneous polynomials.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .rat import RAT_ONE, RAT_ZERO, Rat, is_integral, parse_rat, rat_str


class VariableMismatch(ValueError):
    """A variable name is unknown, or two polynomials cannot be aligned."""


class InconsistentSamples(ValueError):
    """Interpolation samples are not consistent with the degree bound."""


class NotHomogeneous(ValueError):
    """Input polynomial is not homogeneous of the stated degree."""


# Preferred embedding order for the formal bookkeeping variables.
_VAR_ORDER = ["x", "y", "z", "w", "u", "v", "s", "q", "p", "a", "b", "c", "d"]


def _var_key(name: str):
    try:
        return (0, _VAR_ORDER.index(name), name)
    except ValueError:
        return (1, 0, name)


def merge_vars(vars_a, vars_b):
    """Deterministic union of two variable tuples."""
    return tuple(sorted(set(vars_a) | set(vars_b), key=_var_key))


class SparsePoly:
    """Exact sparse polynomial in named variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        tt = {}
        if terms:
            for exp, c in terms.items():
                c = c if isinstance(c, int) else c
                if c:
                    e = tuple(exp)
                    if len(e) != len(self.vars):
                        raise VariableMismatch(
                            f"exponent vector {e} does not match vars {self.vars}"
                        )
                    tt[e] = tt.get(e, 0) + c
            tt = {e: Rat(c) for e, c in tt.items() if c}
        self.terms = tt

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars=()):
        return cls(vars, {})

    @classmethod
    def constant(cls, c, vars=()):
        vars = tuple(vars)
        if not c:
            return cls(vars, {})
        return cls(vars, {(0,) * len(vars): Rat(c)})

    @classmethod
    def variable(cls, name, vars=None):
        vars = (name,) if vars is None else tuple(vars)
        exp = [0] * len(vars)
        exp[vars.index(name)] = 1
        return cls(vars, {tuple(exp): RAT_ONE})

    # -- bookkeeping -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self, d=None):
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if d is None:
            return len(degs) == 1
        return degs == {d}

    def with_vars(self, newvars):
        """Embed into a superset of variables (raises if a var would be lost)."""
        newvars = tuple(newvars)
        missing = [v for v in self.vars if v not in newvars]
        if missing:
            raise VariableMismatch(f"cannot drop variables {missing}")
        idx = [newvars.index(v) for v in self.vars]
        out = {}
        for exp, c in self.terms.items():
            e = [0] * len(newvars)
            for j, pos in enumerate(idx):
                e[pos] = exp[j]
            out[tuple(e)] = c
        return SparsePoly(newvars, out)

    def _aligned(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(other, self.vars)
        if self.vars == other.vars:
            return self, other
        vv = merge_vars(self.vars, other.vars)
        return self.with_vars(vv), other.with_vars(vv)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        a, b = self._aligned(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, RAT_ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return SparsePoly(a.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, SparsePoly) else SparsePoly.constant(-Rat(other), self.vars))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            c = Rat(other)
            if not c:
                return SparsePoly(self.vars, {})
            return SparsePoly(self.vars, {e: cc * c for e, cc in self.terms.items()})
        a, b = self._aligned(other)
        out = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, RAT_ZERO) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return SparsePoly(a.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = SparsePoly.constant(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return self.terms == SparsePoly.constant(other, self.vars).terms
        a, b = self._aligned(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def truncate_total_degree(self, d):
        """Drop all terms of total degree strictly greater than d."""
        return SparsePoly(self.vars, {e: c for e, c in self.terms.items() if sum(e) <= d})

    def homogeneous_part(self, d):
        return SparsePoly(self.vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    # -- evaluation / extraction -------------------------------------------

    def _var_index(self, name):
        try:
            return self.vars.index(name)
        except ValueError:
            raise VariableMismatch(f"unknown variable {name!r} (vars: {self.vars})")

    def evaluate(self, assignment):
        """Full evaluation; assignment maps every variable to a Rat."""
        vals = [Rat(assignment[v]) if v in assignment else None for v in self.vars]
        if any(v is None for v in vals):
            missing = [v for v, x in zip(self.vars, vals) if x is None]
            raise VariableMismatch(f"missing values for {missing}")
        acc = RAT_ZERO
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t = t * x**k
            acc = acc + t
        return acc

    def substitute(self, name, value):
        """Substitute a polynomial or scalar for one variable."""
        i = self._var_index(name)
        if not isinstance(value, SparsePoly):
            value = SparsePoly.constant(value, ())
        rest = tuple(v for v in self.vars if v != name)
        vv = merge_vars(rest, value.vars)
        out = SparsePoly.zero(vv)
        powers = {0: SparsePoly.constant(1, vv)}
        val = value.with_vars(vv) if value.vars != vv else value
        for e, c in sorted(self.terms.items()):
            k = e[i]
            if k not in powers:
                p = powers[max(powers)]
                for _ in range(max(powers), k):
                    p = p * val
                    powers[max(powers) + 1] = p
            rest_exp = tuple(x for j, x in enumerate(e) if j != i)
            mono = SparsePoly(rest, {rest_exp: c}).with_vars(vv)
            out = out + mono * powers[k]
        return out

    def coefficient_of(self, name, k):
        """Coefficient of name**k, a polynomial in the remaining variables."""
        i = self._var_index(name)
        rest = tuple(v for v in self.vars if v != name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[tuple(x for j, x in enumerate(e) if j != i)] = c
        return SparsePoly(rest, out)

    def coeff(self, exp):
        """Coefficient of one monomial, given as an exponent tuple."""
        return self.terms.get(tuple(exp), RAT_ZERO)

    def all_integer(self):
        return all(is_integral(c) for c in self.terms.values())

    # -- canonical form ----------------------------------------------------

    def sorted_terms(self):
        """Graded-lex order, highest degree first."""
        return sorted(
            self.terms.items(), key=lambda ec: (-sum(ec[0]), tuple(-x for x in ec[0]))
        )

    def render(self):
        """Human-readable form, e.g. 'x^2 + y^2 + 2*x + 2*y'."""
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = []
            for v, k in zip(self.vars, exp):
                if k == 1:
                    factors.append(v)
                elif k > 1:
                    factors.append(f"{v}^{k}")
            if not factors:
                body = rat_str(c)
            elif c == 1:
                body = "*".join(factors)
            elif c == -1:
                body = "-" + "*".join(factors)
            else:
                body = rat_str(c) + "*" + "*".join(factors)
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"SparsePoly({self.render()!r})"

    def to_json(self):
        return {
            "vars": list(self.vars),
            "terms": [
                {"exp": list(e), "coeff": rat_str(c)} for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj):
        vars = tuple(obj["vars"])
        return cls(
            vars, {tuple(t["exp"]): parse_rat(str(t["coeff"])) for t in obj["terms"]}
        )


# ---------------------------------------------------------------------------
# Exact univariate interpolation
# ---------------------------------------------------------------------------


def interpolate_univariate(samples, degree_bound, var="q"):
    """Unique interpolant of degree <= degree_bound through exact samples.

    samples: iterable of (point, value) pairs with pairwise distinct points.
    Uses the first degree_bound+1 samples to build the Lagrange interpolant;
    every remaining sample must match it exactly, else InconsistentSamples.
    """
    samples = [(Rat(x), Rat(y)) for x, y in samples]
    if len(samples) < degree_bound + 1:
        raise InconsistentSamples(
            f"need {degree_bound + 1} samples, got {len(samples)}"
        )
    base = samples[: degree_bound + 1]
    xs = [x for x, _ in base]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation points must be distinct")
    # coeffs[k] accumulates the coefficient of var**k
    coeffs = [RAT_ZERO] * (degree_bound + 1)
    for j, (xj, yj) in enumerate(base):
        # numerator polynomial prod_{k != j} (q - x_k), by incremental mult
        num = [RAT_ONE]
        den = RAT_ONE
        for k, (xk, _) in enumerate(base):
            if k == j:
                continue
            den = den * (xj - xk)
            num = [RAT_ZERO] + num
            for i in range(len(num) - 1):
                num[i] = num[i] - xk * num[i + 1]
        scale = yj / den
        for i, c in enumerate(num):
            coeffs[i] = coeffs[i] + c * scale
    poly = SparsePoly((var,), {(i,): c for i, c in enumerate(coeffs) if c})
    for x, y in samples[degree_bound + 1 :]:
        if poly.evaluate({var: x}) != y:
            raise InconsistentSamples(
                f"extra sample at {rat_str(x)} does not match degree-{degree_bound} interpolant"
            )
    return poly


# ---------------------------------------------------------------------------
# Binomial-basis transform
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _stirling2(n, k):
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def _falling_factorial_coeffs(i):
    """Coefficients of binom(t, i)*i! = t(t-1)...(t-i+1) as a dense list."""
    coeffs = [1]
    for m in range(i):
        nxt = [0] * (len(coeffs) + 1)
        for d, c in enumerate(coeffs):
            nxt[d + 1] += c
            nxt[d] -= m * c
        coeffs = nxt
    return tuple(coeffs)


def psi_transform(poly, var_map=(("t", "x"), ("u", "y"))):
    """Expand in the product binomial basis and map binom(t,i)binom(u,j) -> x^i y^j.

    The input must be a polynomial in the source variables of var_map.  The
    change of basis uses t^a = sum_i S(a,i) i! binom(t,i) with S the Stirling
    numbers of the second kind; the map is an invertible linear map.
    """
    var_map = tuple(var_map)
    src = tuple(v for v, _ in var_map)
    dst = tuple(v for _, v in var_map)
    p = poly.with_vars(merge_vars(poly.vars, src))
    idx = [p.vars.index(v) for v in src]
    out = {}
    for exp, c in p.terms.items():
        for j, v in enumerate(p.vars):
            if v not in src and exp[j]:
                raise VariableMismatch(f"unexpected variable {v!r} in psi input")
        pows = [exp[i] for i in idx]
        ranges = [range(a + 1) for a in pows]
        for combo in itertools.product(*ranges):
            f = c
            for a, i in zip(pows, combo):
                s = _stirling2(a, i)
                if not s:
                    f = RAT_ZERO
                    break
                fact = 1
                for m in range(2, i + 1):
                    fact *= m
                f = f * (s * fact)
            if f:
                e = tuple(combo)
                out[e] = out.get(e, RAT_ZERO) + f
    return SparsePoly(dst, {e: c for e, c in out.items() if c})


def psi_inverse(poly, var_map=(("t", "x"), ("u", "y"))):
    """Inverse of psi_transform: x^i y^j -> binom(t,i)binom(u,j)."""
    var_map = tuple(var_map)
    src = tuple(v for v, _ in var_map)
    dst = tuple(v for _, v in var_map)
    p = poly.with_vars(merge_vars(poly.vars, dst))
    idx = [p.vars.index(v) for v in dst]
    out = SparsePoly.zero(src)
    for exp, c in p.terms.items():
        for j, v in enumerate(p.vars):
            if v not in dst and exp[j]:
                raise VariableMismatch(f"unexpected variable {v!r} in psi_inverse input")
        term = SparsePoly.constant(c, src)
        for v, i in zip(src, (exp[k] for k in idx)):
            coeffs = _falling_factorial_coeffs(i)
            fact = 1
            for m in range(2, i + 1):
                fact *= m
            binom = SparsePoly(
                (v,), {(d,): Rat(cc, fact) for d, cc in enumerate(coeffs) if cc}
            )
            term = term * binom
        out = out + term
    return out


# ---------------------------------------------------------------------------
# Log-concave unbroken arrays
# ---------------------------------------------------------------------------


def logconcave_unbroken_check(poly, degree):
    """Check the coefficient array of a homogeneous polynomial.

    For every pair of variables (i, j) and every monomial pattern m in the
    remaining variables, the coefficient sequence along x_i^k x_j^{D-k} x^m
    must be nonnegative, log-concave, and have no internal zeros.  Returns
    None on success, else a dict describing the first violated line.
    """
    if not poly.is_homogeneous(degree):
        raise NotHomogeneous(f"expected homogeneous of degree {degree}")
    for c in poly.terms.values():
        if c < 0:
            return {"reason": "negative coefficient", "coeff": rat_str(c)}
    nv = len(poly.vars)
    # group exponents by their pattern outside a chosen variable pair
    for i in range(nv):
        for j in range(i + 1, nv):
            patterns = {}
            for exp in poly.terms:
                key = tuple(x for k, x in enumerate(exp) if k not in (i, j))
                patterns.setdefault(key, []).append(exp)
            for key, exps in patterns.items():
                dd = degree - sum(key)
                seq = []
                for k in range(dd + 1):
                    e = list(key)
                    e.insert(i, k)
                    e.insert(j, dd - k)
                    seq.append(poly.terms.get(tuple(e), RAT_ZERO))
                viol = _check_sequence(seq)
                if viol is not None:
                    return {
                        "pair": (poly.vars[i], poly.vars[j]),
                        "pattern": key,
                        "sequence": [rat_str(c) for c in seq],
                        "reason": viol,
                    }
    return None


def _check_sequence(seq):
    support = [k for k, c in enumerate(seq) if c]
    if not support:
        return None
    lo, hi = support[0], support[-1]
    for k in range(lo, hi + 1):
        if not seq[k]:
            return f"internal zero at position {k}"
    for k in range(1, len(seq) - 1):
        if seq[k] * seq[k] < seq[k - 1] * seq[k + 1]:
            return f"log-concavity fails at position {k}"
    return None
