"""Concrete generating pairs for each mean family.

Each constructor returns a MeanDescriptor: a state layout (the per-element
encoder) plus a finalization formula.  Parameters are validated at build
time; branch selection (p = 0, p = q) uses exact parameter comparison, never
runtime tolerance.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .core import ComplexityType, DomainInterval, MeanDescriptor
from .errors import (
    DegenerateExponents,
    FinalizeOutsideBranches,
    GeneratorInvalid,
    InvalidDescriptor,
    NumericalFailure,
    PairInvalid,
)
from .symfun import GammaTable, sigma_from_power

GRID_POINTS = 64
ROUNDTRIP_RTOL = 1e-10
BISECT_TOL = 1e-12
BISECT_MAX_ITER = 200


def binomial(n: int, r: int) -> float:
    """C(n, r) in binary64 via the multiplicative formula."""
    if r < 0 or r > n:
        return 0.0
    m = min(r, n - r)
    out = 1.0
    for i in range(1, m + 1):
        out = out * (n - m + i) / i
    if n > 10 ** 6 and r >= 8:
        warnings.warn(f"binomial({n}, {r}) may have lost precision",
                      RuntimeWarning, stacklevel=2)
    return out


# ---------------------------------------------------------------------------
# generator functions (the f of quasi-arithmetic means)

@dataclass(frozen=True)
class GeneratorFunction:
    """A strictly monotone continuous bijection with explicit inverse."""

    name: str
    forward: Callable[[float], float]
    inverse: Callable[[float], float]
    domain: DomainInterval
    increasing: bool

    def validate(self) -> None:
        grid = self.domain.sample_grid(GRID_POINTS)
        prev = None
        for x in grid:
            y = self.forward(x)
            if not math.isfinite(y):
                raise GeneratorInvalid(f"{self.name}: non-finite value at {x}")
            back = self.inverse(y)
            if abs(back - x) > ROUNDTRIP_RTOL * max(1.0, abs(x)):
                raise GeneratorInvalid(
                    f"{self.name}: inverse round-trip fails at {x} (got {back})")
            if prev is not None:
                if self.increasing and y <= prev:
                    raise GeneratorInvalid(f"{self.name}: not strictly increasing")
                if not self.increasing and y >= prev:
                    raise GeneratorInvalid(f"{self.name}: not strictly decreasing")
            prev = y


def _affine(a: float, b: float) -> GeneratorFunction:
    if a == 0:
        raise GeneratorInvalid("affine generator needs a != 0")
    return GeneratorFunction(
        f"affine:{a:g},{b:g}",
        lambda x: a * x + b,
        lambda y: (y - b) / a,
        DomainInterval.reals(),
        a > 0,
    )


def _power(p: float) -> GeneratorFunction:
    if p == 0:
        raise GeneratorInvalid("power generator needs p != 0")
    return GeneratorFunction(
        f"power:{p:g}",
        lambda x: x ** p,
        lambda y: y ** (1.0 / p),
        DomainInterval.positive(),
        p > 0,
    )


def generator_by_name(name: str) -> GeneratorFunction:
    """Registry lookup: identity, ln, exp, power:<p>, affine:<a>,<b>."""
    if name == "identity":
        return GeneratorFunction("identity", lambda x: x, lambda y: y,
                                 DomainInterval.reals(), True)
    if name == "ln":
        return GeneratorFunction("ln", math.log, math.exp,
                                 DomainInterval.positive(), True)
    if name == "exp":
        return GeneratorFunction("exp", math.exp, math.log,
                                 DomainInterval.reals(), True)
    if name.startswith("power:"):
        try:
            return _power(float(name.split(":", 1)[1]))
        except ValueError:
            raise GeneratorInvalid(f"bad power generator {name!r}") from None
    if name.startswith("affine:"):
        try:
            a, b = (float(t) for t in name.split(":", 1)[1].split(","))
        except ValueError:
            raise GeneratorInvalid(f"bad affine generator {name!r}") from None
        return _affine(a, b)
    raise GeneratorInvalid(f"unknown generator {name!r}")


# ---------------------------------------------------------------------------
# Bajraktarevic pairs

def _bisect_inverse(h: Callable[[float], float], domain: DomainInterval,
                    increasing: bool) -> Callable[[float], float]:
    """Bracketed bisection inverse of a strictly monotone h on the domain."""

    def clip(x: float) -> float:
        lo, hi = domain.lo, domain.hi
        if x <= lo:
            x = lo if domain.lo_closed else lo + max(1e-12, abs(lo) * 1e-12)
        if x >= hi:
            x = hi if domain.hi_closed else hi - max(1e-12, abs(hi) * 1e-12)
        return x

    def inverse(t: float) -> float:
        a = clip(domain.lo if math.isfinite(domain.lo) else -1.0)
        b = clip(domain.hi if math.isfinite(domain.hi) else 1.0)
        lo_is_below = increasing  # whether h(a) should sit below t

        def below(x):
            return h(x) < t if lo_is_below else h(x) > t

        for _ in range(BISECT_MAX_ITER):
            if below(a):
                break
            if math.isfinite(domain.lo):
                break  # already at the domain edge
            a = a * 2 if a < 0 else -1.0
        for _ in range(BISECT_MAX_ITER):
            if not below(b):
                break
            if math.isfinite(domain.hi):
                break
            b = b * 2 if b > 0 else 1.0
        for _ in range(BISECT_MAX_ITER):
            mid = 0.5 * (a + b)
            if b - a <= BISECT_TOL * max(1.0, abs(mid)):
                return mid
            if below(mid):
                a = mid
            else:
                b = mid
        return 0.5 * (a + b)

    return inverse


@dataclass(frozen=True)
class BajraktarevicPair:
    """(f, g) with g positive and f/g strictly monotone, plus (f/g)^-1."""

    f: Callable[[float], float]
    g: Callable[[float], float]
    ratio_inverse: Callable[[float], float]
    domain: DomainInterval
    f_name: str = "<custom>"
    g_name: str = "<custom>"

    def validate(self) -> None:
        grid = self.domain.sample_grid(GRID_POINTS)
        ratios = []
        for x in grid:
            gx = self.g(x)
            if not gx > 0:
                raise PairInvalid(f"g({x}) = {gx} is not positive")
            ratios.append(self.f(x) / gx)
        increasing = ratios[-1] > ratios[0]
        for a, b in zip(ratios, ratios[1:]):
            if (b <= a) if increasing else (b >= a):
                raise PairInvalid("f/g is not strictly monotone on the grid")
        for x, r in zip(grid, ratios):
            back = self.ratio_inverse(r)
            if abs(back - x) > ROUNDTRIP_RTOL * max(1.0, abs(x)):
                raise PairInvalid(
                    f"ratio_inverse round-trip fails at {x} (got {back})")


def pair_from_functions(f, g, domain: DomainInterval,
                        ratio_inverse=None,
                        f_name: str = "<custom>",
                        g_name: str = "<custom>") -> BajraktarevicPair:
    """Build a pair from raw callables; bisection inverse if none given."""
    if ratio_inverse is None:
        grid = domain.sample_grid(GRID_POINTS)
        increasing = f(grid[-1]) / g(grid[-1]) > f(grid[0]) / g(grid[0])
        ratio_inverse = _bisect_inverse(lambda x: f(x) / g(x), domain, increasing)
    pair = BajraktarevicPair(f, g, ratio_inverse, domain, f_name, g_name)
    pair.validate()
    return pair


def pair_power(pf: float, pg: float) -> BajraktarevicPair:
    """(x^pf, x^pg) on (0, inf); f/g = x^(pf-pg) has a closed-form inverse."""
    if pf == pg:
        raise PairInvalid("pair_power needs pf != pg")
    diff = pf - pg
    pair = BajraktarevicPair(
        lambda x: x ** pf,
        lambda x: x ** pg,
        lambda t: t ** (1.0 / diff),
        DomainInterval.positive(),
        f_name=f"power:{pf:g}",
        g_name=f"power:{pg:g}",
    )
    pair.validate()
    return pair


def _pair_component(name: str):
    """A pair component by name: registry generators plus the constant 'one'."""
    if name == "one":
        return (lambda x: 1.0), DomainInterval.reals()
    gen = generator_by_name(name)
    return gen.forward, gen.domain


def pair_from_names(f_name: str, g_name: str) -> BajraktarevicPair:
    f, f_dom = _pair_component(f_name)
    g, g_dom = _pair_component(g_name)
    lo = max(f_dom.lo, g_dom.lo)
    hi = min(f_dom.hi, g_dom.hi)
    domain = DomainInterval(lo, hi,
                            f_dom.lo_closed and g_dom.lo_closed,
                            f_dom.hi_closed and g_dom.hi_closed)
    ratio_inverse = None
    if (f_name.startswith("power:") or f_name == "identity") and \
            (g_name.startswith("power:") or g_name in ("identity", "one")):
        pf = 1.0 if f_name == "identity" else float(f_name.split(":")[1])
        pg = (1.0 if g_name == "identity"
              else 0.0 if g_name == "one"
              else float(g_name.split(":")[1]))
        if pf != pg:
            diff = pf - pg
            ratio_inverse = lambda t: t ** (1.0 / diff)
    elif f_name == "ln" and g_name == "one":
        ratio_inverse = math.exp
    return pair_from_functions(f, g, domain, ratio_inverse, f_name, g_name)


# ---------------------------------------------------------------------------
# the seven families

def power_mean(p: float) -> MeanDescriptor:
    p = float(p)
    if p == 0.0:
        encode = lambda x: (math.log(x),)
        fin = lambda reals, n: math.exp(reals[0] / n)
    else:
        encode = lambda x: (x ** p,)
        fin = lambda reals, n: (reals[0] / n) ** (1.0 / p)
    return MeanDescriptor(
        family="power", params={"p": p}, domain=DomainInterval.positive(),
        ctype=ComplexityType(1, True), k=1, has_counter=True,
        encode=encode, finalizer=fin)


def quasi_arithmetic(f) -> MeanDescriptor:
    """f may be a GeneratorFunction or a registry name."""
    if isinstance(f, str):
        f = generator_by_name(f)
    f.validate()
    return MeanDescriptor(
        family="quasiarithmetic", params={"f": f.name}, domain=f.domain,
        ctype=ComplexityType(1, True), k=1, has_counter=True,
        encode=lambda x: (f.forward(x),),
        finalizer=lambda reals, n: f.inverse(reals[0] / n))


def gini(p: float, q: float) -> MeanDescriptor:
    p, q = float(p), float(q)
    if p == q:
        encode = lambda x: (x ** p * math.log(x), x ** p)
        fin = lambda reals, n: math.exp(reals[0] / reals[1])
    else:
        diff = p - q
        encode = lambda x: (x ** p, x ** q)
        fin = lambda reals, n: (reals[0] / reals[1]) ** (1.0 / diff)
    return MeanDescriptor(
        family="gini", params={"p": p, "q": q}, domain=DomainInterval.positive(),
        ctype=ComplexityType(2, False), k=2, has_counter=False,
        encode=encode, finalizer=fin)


def bajraktarevic(pair: BajraktarevicPair) -> MeanDescriptor:
    pair.validate()
    return MeanDescriptor(
        family="bajraktarevic",
        params={"f": pair.f_name, "g": pair.g_name},
        domain=pair.domain,
        ctype=ComplexityType(2, False), k=2, has_counter=False,
        encode=lambda x: (pair.f(x), pair.g(x)),
        finalizer=lambda reals, n: pair.ratio_inverse(reals[0] / reals[1]))


def hamy(r: int) -> MeanDescriptor:
    """Mean of r-th roots of r-element products; arithmetic mean for n < r.

    State holds power sums at exponents j/r (exact Fractions so the
    recursion's subset sums hit the table keys exactly); the exponent-1 slot
    doubles as the small-n fallback's plain sum.
    """
    if not isinstance(r, int) or r < 1:
        raise InvalidDescriptor("hamy needs a positive integer r")
    exps = [Fraction(j, r) for j in range(1, r + 1)]
    fexps = [float(e) for e in exps]
    base = Fraction(1, r)

    def encode(x: float) -> tuple:
        return tuple(x ** e for e in fexps)

    def fin(reals, n):
        if n < r:
            return reals[-1] / n
        table = GammaTable(dict(zip(exps, reals)), n)
        return sigma_from_power(r, base, table) / binomial(n, r)

    return MeanDescriptor(
        family="hamy", params={"r": r}, domain=DomainInterval.positive(),
        ctype=ComplexityType(r, True), k=r, has_counter=True,
        encode=encode, finalizer=fin, ctype_is_upper_bound=True)


def sympoly(r: int) -> MeanDescriptor:
    """r-th root of the normalized elementary symmetric polynomial."""
    if not isinstance(r, int) or r < 1:
        raise InvalidDescriptor("sympoly needs a positive integer r")
    exps = list(range(1, r + 1))
    inv_r = 1.0 / r

    def encode(x: float) -> tuple:
        return tuple(x ** e for e in exps)

    def fin(reals, n):
        if n < r:
            return reals[0] / n
        table = GammaTable(dict(zip(exps, reals)), n)
        return (sigma_from_power(r, 1, table) / binomial(n, r)) ** inv_r

    return MeanDescriptor(
        family="sympoly", params={"r": r}, domain=DomainInterval.positive(),
        ctype=ComplexityType(r, True), k=r, has_counter=True,
        encode=encode, finalizer=fin, ctype_is_upper_bound=True)


@dataclass(frozen=True)
class BiplanarParams:
    p: float
    q: float
    c: int
    d: int

    def __post_init__(self):
        if not (isinstance(self.c, int) and isinstance(self.d, int)
                and self.c >= 1 and self.d >= 1):
            raise InvalidDescriptor("biplanar needs positive integers c, d")
        if self.c * Fraction(self.p) == self.d * Fraction(self.q):
            raise DegenerateExponents(f"c*p == d*q == {self.c * self.p}")

    @property
    def exponent_set(self) -> list:
        P, Q = Fraction(self.p), Fraction(self.q)
        exps = {j * P for j in range(1, self.c + 1)}
        exps |= {j * Q for j in range(1, self.d + 1)}
        return sorted(exps)

    @property
    def k(self) -> int:
        return len(self.exponent_set)


def biplanar(p: float, q: float, c: int, d: int) -> MeanDescriptor:
    """Ratio of scaled elementary symmetric polynomials in p-th and q-th
    powers, to the power 1/(cp-dq); the p-th power mean for n < max(c, d)."""
    params = BiplanarParams(float(p), float(q), int(c), int(d))
    p, q, c, d = params.p, params.q, params.c, params.d
    P, Q = Fraction(p), Fraction(q)
    exps = params.exponent_set
    # gamma_0 is the counter; a zero exponent never needs a real slot.  The
    # p = 0 fallback (geometric mean) needs a sum-of-logs slot instead.
    slots = [e for e in exps if e != 0]
    fslots = [float(e) for e in slots]
    ln_slot = (P == 0)
    k_impl = len(slots) + (1 if ln_slot else 0)
    n_min = max(c, d)
    exponent = 1.0 / (c * p - d * q)
    p_slot = slots.index(P) if not ln_slot else None

    def encode(x: float) -> tuple:
        out = tuple(x ** e for e in fslots)
        if ln_slot:
            out = out + (math.log(x),)
        return out

    def fin(reals, n):
        if n >= n_min:
            values = dict(zip(slots, reals))
            if 0 in exps:
                values[Fraction(0)] = float(n)
            table = GammaTable(values, n)
            num = binomial(n, d) * sigma_from_power(c, P, table)
            den = binomial(n, c) * sigma_from_power(d, Q, table)
            if den == 0:
                raise NumericalFailure("biplanar denominator vanished")
            return (num / den) ** exponent
        if ln_slot:
            return math.exp(reals[-1] / n)
        return (reals[p_slot] / n) ** (1.0 / p)

    return MeanDescriptor(
        family="biplanar", params={"p": p, "q": q, "c": c, "d": d},
        domain=DomainInterval.positive(),
        ctype=ComplexityType(k_impl, True), k=k_impl, has_counter=True,
        encode=encode, finalizer=fin, paper_k=params.k)


# ---------------------------------------------------------------------------
# counterexample means and the median contrast

def piecewise_counterexample() -> MeanDescriptor:
    """Type-T2 mean on [3, 4] that is not repetition invariant.

    The finalizer agrees with the identity on sums in [3, 4] (n = 1), halves
    sums in [6, 8] (n = 2), and switches to the square-sum ratio from 9 up
    (n >= 3); inputs in [3, 4] can never land between the branches.
    """
    domain = DomainInterval(3.0, 4.0, True, True)

    def fin(reals, n):
        sq, s = reals
        if 3.0 <= s <= 4.0:
            return s
        if 6.0 <= s <= 8.0:
            return s / 2.0
        if s >= 9.0:
            return sq / s
        raise FinalizeOutsideBranches(f"second component {s} in a branch gap")

    return MeanDescriptor(
        family="piecewise_h", params={}, domain=domain,
        ctype=ComplexityType(2, False), k=2, has_counter=False,
        encode=lambda x: (x * x, x), finalizer=fin)


def cube_over_square() -> MeanDescriptor:
    """Repetition-invariant T2 mean on all reals with negligible element 0."""

    def fin(reals, n):
        u, v = reals
        return 0.0 if v == 0.0 else u / v

    return MeanDescriptor(
        family="cube_over_square", params={}, domain=DomainInterval.reals(),
        ctype=ComplexityType(2, False), k=2, has_counter=False,
        encode=lambda x: (x ** 3, x * x), finalizer=fin)


def median_mean(kind: str = "lower") -> MeanDescriptor:
    """Lower or upper median; the state is the full sorted multiset."""
    if kind not in ("lower", "upper"):
        raise InvalidDescriptor(f"median kind must be lower/upper, got {kind!r}")

    def fin(reals, n):
        idx = (n - 1) // 2 if kind == "lower" else n // 2
        return reals[idx]

    return MeanDescriptor(
        family="median", params={"kind": kind}, domain=DomainInterval.reals(),
        ctype=None, k=0, has_counter=True,
        encode=lambda x: (), finalizer=fin, unbounded_state=True)


# ---------------------------------------------------------------------------

def descriptor_from_params(family: str, params: dict) -> MeanDescriptor:
    """Rebuild a descriptor from the CLI/state-file parameter schema."""
    try:
        if family == "power":
            return power_mean(params["p"])
        if family == "quasiarithmetic":
            return quasi_arithmetic(params["f"])
        if family == "gini":
            return gini(params["p"], params["q"])
        if family == "bajraktarevic":
            return bajraktarevic(pair_from_names(params["f"], params["g"]))
        if family == "hamy":
            return hamy(int(params["r"]))
        if family == "sympoly":
            return sympoly(int(params["r"]))
        if family == "biplanar":
            return biplanar(params["p"], params["q"],
                            int(params["c"]), int(params["d"]))
        if family == "median":
            return median_mean(params.get("kind", "lower"))
        if family == "piecewise_h":
            return piecewise_counterexample()
        if family == "cube_over_square":
            return cube_over_square()
    except KeyError as e:
        raise InvalidDescriptor(f"{family}: missing parameter {e}") from None
    raise InvalidDescriptor(f"unknown family {family!r}")
