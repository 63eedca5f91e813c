"""
Characteristic-class algebra over truncated cohomology rings.

Chern data is handled over Q, Stiefel-Whitney data over F2.  Rational
K-theory classes are identified with their Chern-character images, so the
"bundles" here are the cohomological shadows the bounds actually use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping

from .graded import Coefficients, CohClass, GradedRing, RingError


def partitions(k: int):
    """Yield the partitions of k as multiplicity maps {part: count}."""
    if k == 0:
        yield {}
        return

    def rec(remaining, largest):
        if remaining == 0:
            yield {}
            return
        for part in range(min(remaining, largest), 0, -1):
            for count in range(remaining // part, 0, -1):
                for rest in rec(remaining - part * count, part - 1):
                    out = dict(rest)
                    out[part] = count
                    yield out

    yield from rec(k, k)


@dataclass(frozen=True, eq=False)
class TotalChernData:
    """Rational Chern classes c_i (degree 2i) and a virtual dimension.

    With ``su=True`` the same data is read as the SU classes d_i.
    """

    ring: GradedRing
    dim: Fraction = Fraction(0)
    c: Mapping[int, CohClass] = field(default_factory=dict)
    su: bool = False

    def __post_init__(self):
        if self.ring.coefficients is not Coefficients.Q:
            raise RingError("Chern data lives in a rational ring")
        clean = {}
        for i, x in dict(self.c).items():
            i = int(i)
            if i < 1:
                raise RingError(f"Chern index must be >= 1, got {i}")
            if x.ring != self.ring:
                raise RingError("Chern class from a different ring")
            if x.is_zero():
                continue
            if x.degrees() != [2 * i]:
                raise RingError(f"c_{i} must be homogeneous of degree {2 * i}")
            clean[i] = x
        object.__setattr__(self, "c", dict(sorted(clean.items())))
        object.__setattr__(self, "dim", Fraction(self.dim))
        if self.ring.reduced and self.dim:
            raise RingError("a reduced ring only carries virtual dimension 0")

    def chern(self, i: int) -> CohClass:
        if i == 0 and not self.ring.reduced:
            return self.ring.one()
        return self.c.get(i, self.ring.zero())

    def total(self) -> CohClass:
        out = self.ring.zero() if self.ring.reduced else self.ring.one()
        for x in self.c.values():
            out = out + x
        return out

    @classmethod
    def from_total(cls, total: CohClass, dim=0, su=False) -> "TotalChernData":
        ring = total.ring
        if not ring.reduced and total.part(0) != ring.one():
            raise RingError("a total Chern class starts with 1")
        c = {d // 2: total.part(d) for d in total.degrees() if d > 0}
        if any(d % 2 for d in total.degrees()):
            raise RingError("total Chern class has odd-degree terms")
        return cls(ring, dim, c, su)

    def __eq__(self, other):
        if not isinstance(other, TotalChernData):
            return NotImplemented
        return (self.ring == other.ring and self.dim == other.dim
                and self.c == other.c and self.su == other.su)

    def __str__(self):
        body = ", ".join(f"c{i} = {x}" for i, x in self.c.items()) or "all c_i = 0"
        return f"dim {self.dim}; {body}"


@dataclass(frozen=True, eq=False)
class MixedCohClass:
    """A rational class supported in even degrees (a Chern-character value)."""

    value: CohClass

    def __post_init__(self):
        if self.value.ring.coefficients is not Coefficients.Q:
            raise RingError("Chern-character values are rational")
        if any(d % 2 for d in self.value.degrees()):
            raise RingError("mixed class must be supported in even degrees")

    @property
    def ring(self) -> GradedRing:
        return self.value.ring

    @classmethod
    def from_components(cls, ring: GradedRing, components: Mapping[int, CohClass]):
        out = ring.zero()
        for i, x in components.items():
            if not x.is_zero() and x.degrees() != [2 * i]:
                raise RingError(f"component {i} must sit in degree {2 * i}")
            out = out + x
        return cls(out)

    def component(self, i: int) -> CohClass:
        return self.value.part(2 * i)

    @property
    def components(self) -> dict:
        return {d // 2: self.value.part(d) for d in self.value.degrees()}

    def rank(self) -> Fraction:
        """Degree-0 coefficient (the dimension term)."""
        if self.ring.reduced:
            return Fraction(0)
        return self.value.coords(0)[0]

    def __add__(self, other):
        return type(self)(self.value + other.value)

    def __sub__(self, other):
        return type(self)(self.value - other.value)

    def __neg__(self):
        return type(self)(-self.value)

    def __mul__(self, other):
        if isinstance(other, MixedCohClass):
            return type(self)(self.value * other.value)
        return type(self)(self.value * other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, MixedCohClass):
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return str(self.value)

    __repr__ = __str__


def _times(a: CohClass | None, b: CohClass) -> CohClass:
    # None stands for 1, so reduced rings need no unit
    return b if a is None else a * b


def newton_polynomial(k: int, c: TotalChernData) -> CohClass:
    """The k-th Newton polynomial s_k(c_1, ..., c_k) evaluated in the ring.

    Uses the closed summation over partitions r_1 + 2 r_2 + ... + k r_k = k:

        s_k = k (-1)^k  sum  (r_1 + ... + r_k - 1)! / (r_1! ... r_k!)  prod (-c_j)^{r_j}
    """
    if k < 1:
        raise ValueError("Newton polynomials start at k = 1")
    ring = c.ring
    total = ring.zero()
    powers: dict = {}

    def power(j, r):
        if (j, r) not in powers:
            base = -c.chern(j)
            out = base
            for _ in range(r - 1):
                out = out * base
            powers[(j, r)] = out
        return powers[(j, r)]

    for r in partitions(k):
        if any(c.chern(j).is_zero() for j in r):
            continue
        coef = Fraction(factorial(sum(r.values()) - 1))
        for count in r.values():
            coef /= factorial(count)
        term = None
        for j, count in sorted(r.items()):
            term = _times(term, power(j, count))
            if term.is_zero():
                break
        total = total + coef * term
    return (k * (-1) ** k) * total


def chern_character(phi: TotalChernData) -> MixedCohClass:
    """Ch = dim + sum_k s_k(c)/k!, truncated at the ring's top degree."""
    ring = phi.ring
    out = ring.zero() if ring.reduced else phi.dim * ring.one()
    for k in range(1, ring.top_degree // 2 + 1):
        out = out + Fraction(1, factorial(k)) * newton_polynomial(k, phi)
    return MixedCohClass(out)


def chern_classes_from_character(y: MixedCohClass, su: bool = False) -> TotalChernData:
    """Invert the Chern character: recover dim and the c_i from Ch.

    Power sums s_k = k! ch_k feed Newton's identities
    k c_k = sum_{j=1..k} (-1)^{j-1} c_{k-j} s_j.
    """
    ring = y.ring
    top = ring.top_degree // 2
    s = {k: factorial(k) * y.component(k) for k in range(1, top + 1)}
    c: dict = {}
    for k in range(1, top + 1):
        acc = ring.zero()
        for j in range(1, k + 1):
            lower = None if k == j else c[k - j]
            acc = acc + (-1) ** (j - 1) * _times(lower, s[j])
        c[k] = Fraction(1, k) * acc
    return TotalChernData(ring, y.rank(), c, su)


def conjugate(phi: TotalChernData) -> TotalChernData:
    """Chern data of the conjugate bundle: c_i -> (-1)^i c_i."""
    return TotalChernData(phi.ring, phi.dim, {i: (-1) ** i * x for i, x in phi.c.items()}, phi.su)


def bar(y: MixedCohClass) -> MixedCohClass:
    """The involution on even cohomology matching conjugation under Ch."""
    return MixedCohClass(y.value.map_parts(lambda d, v: tuple(-x for x in v) if d % 4 == 2 else v))


def whitney_sum(phi: TotalChernData, psi: TotalChernData) -> TotalChernData:
    """Direct sum: dimensions add and total classes multiply."""
    if phi.ring != psi.ring:
        raise RingError("Whitney sum of data over different rings")
    a, b = phi.total(), psi.total()
    if phi.ring.reduced:
        # no unit stored: (1 + a)(1 + b) - 1
        total = a + b + a * b
    else:
        total = a * b
    return TotalChernData.from_total(total, phi.dim + psi.dim, phi.su and psi.su)


def tensor_product(phi: TotalChernData, psi: TotalChernData) -> TotalChernData:
    """Chern data of a tensor product, via power sums of Chern roots.

    p_k(E x F) = sum_j binom(k, j) p_j(E) p_{k-j}(F) with p_0 = rank; the
    Chern classes are then recovered by Newton's identities.
    """
    if phi.ring != psi.ring:
        raise RingError("tensor product of data over different rings")
    ring = phi.ring
    if ring.reduced:
        raise RingError("tensor products need a unit")
    top = ring.top_degree // 2

    def power_sums(x):
        p = {0: x.dim * ring.one()}
        for k in range(1, top + 1):
            p[k] = newton_polynomial(k, x)
        return p

    pe, pf = power_sums(phi), power_sums(psi)
    y = ring.zero()
    for k in range(0, top + 1):
        pk = ring.zero()
        for j in range(k + 1):
            pk = pk + factorial(k) // (factorial(j) * factorial(k - j)) * (pe[j] * pf[k - j])
        y = y + Fraction(1, factorial(k)) * pk
    return chern_classes_from_character(MixedCohClass(y))


# -- Stiefel-Whitney data over F2 -------------------------------------------


@dataclass(frozen=True, eq=False)
class StiefelWhitneyData:
    """w1, w2 and optional higher Stiefel-Whitney classes in an F2 ring."""

    ring: GradedRing
    w1: CohClass
    w2: CohClass
    higher: Mapping[int, CohClass] = field(default_factory=dict)

    def __post_init__(self):
        if self.ring.coefficients is not Coefficients.F2:
            raise RingError("Stiefel-Whitney data lives in an F2 ring")
        for i, w in [(1, self.w1), (2, self.w2), *dict(self.higher).items()]:
            if w.ring != self.ring:
                raise RingError("Stiefel-Whitney class from a different ring")
            if not w.is_zero() and w.degrees() != [i]:
                raise RingError(f"w_{i} must be homogeneous of degree {i}")
        higher = {int(i): w for i, w in dict(self.higher).items() if not w.is_zero()}
        if any(i < 3 for i in higher):
            raise RingError("higher classes start at w_3")
        object.__setattr__(self, "higher", dict(sorted(higher.items())))

    @classmethod
    def zero(cls, ring: GradedRing) -> "StiefelWhitneyData":
        return cls(ring, ring.zero(), ring.zero())

    def w(self, i: int) -> CohClass:
        if i == 0:
            return self.ring.one()
        if i == 1:
            return self.w1
        if i == 2:
            return self.w2
        return self.higher.get(i, self.ring.zero())

    def __eq__(self, other):
        if not isinstance(other, StiefelWhitneyData):
            return NotImplemented
        return (self.ring == other.ring and self.w1 == other.w1
                and self.w2 == other.w2 and self.higher == other.higher)

    def __str__(self):
        parts = [f"w1 = {self.w1}", f"w2 = {self.w2}"]
        parts += [f"w{i} = {w}" for i, w in self.higher.items()]
        return "; ".join(parts)


def whitney_sum_sw(a: StiefelWhitneyData, b: StiefelWhitneyData) -> StiefelWhitneyData:
    """w(E + F) = w(E) w(F); in low degrees

        w1 = w1(E) + w1(F),   w2 = w2(E) + w1(E) w1(F) + w2(F).
    """
    if a.ring != b.ring:
        raise RingError("Whitney sum of data over different rings")
    ring = a.ring
    w1 = a.w1 + b.w1
    w2 = a.w2 + a.w1 * b.w1 + b.w2
    # missing higher classes count as zero, but the product can still create them
    higher = {}
    for k in range(3, ring.top_degree + 1):
        acc = ring.zero()
        for i in range(k + 1):
            acc = acc + a.w(i) * b.w(k - i)
        higher[k] = acc
    return StiefelWhitneyData(ring, w1, w2, higher)


def sw_multiple(a: StiefelWhitneyData, k: int) -> StiefelWhitneyData:
    """Stiefel-Whitney data of the k-fold direct sum of a with itself."""
    if k < 1:
        raise ValueError("need a positive multiple")
    out = a
    for _ in range(k - 1):
        out = whitney_sum_sw(out, a)
    return out


# -- single-class realization in product-free rings -------------------------


def realization_factor(i: int) -> Fraction:
    """q with c_i = q x when Ch is concentrated in degree 2i with value x."""
    return Fraction((-1) ** (i - 1) * factorial(i - 1))


def pontryagin_factor(i: int) -> Fraction:
    """q with p_i = q x for a KO class whose Ch sits in degree 4i as x."""
    return (-1) ** i * realization_factor(2 * i)


def realize_single_class(x: CohClass, variant: str = "U"):
    """Find a rational K-class whose characteristic classes are one multiple of x.

    ``x`` must be a nonzero homogeneous class in a product-free ring (a smash
    S^m ^ X).  Returns ``(phi, q)``:

    * ``"U"``: TotalChernData with c_i = q x, all other c_j = 0, and
      Ch(phi) = x; q = (-1)^{i-1} (i-1)!.
    * ``"SU"``: as ``"U"`` with i >= 2, so c_1 = 0 and the data are d_i.
    * ``"KO"``: x of degree 4i; a KO class with p_i = q x and p_j = 0 otherwise.
    """
    variant = variant.upper()
    if variant not in ("U", "SU", "KO"):
        raise ValueError(f"unknown variant {variant!r}")
    ring = x.ring
    if ring.coefficients is not Coefficients.Q:
        raise RingError("realization works in rational cohomology")
    if not ring.is_product_free():
        raise RingError("realization needs a product-free ring (all positive-degree cups zero)")
    if x.is_zero():
        raise RingError("cannot realize the zero class")
    if not x.is_homogeneous():
        raise RingError(f"class has components in several degrees {x.degrees()}")
    deg = x.degree
    if variant == "KO":
        if deg % 4 or deg == 0:
            raise RingError(f"KO realization needs degree 4i, got {deg}")
        from .ktheory import KOClassRational
        return KOClassRational(x), pontryagin_factor(deg // 4)
    if deg % 2 or deg == 0:
        raise RingError(f"Chern realization needs degree 2i, got {deg}")
    i = deg // 2
    if variant == "SU" and i < 2:
        raise RingError("an SU realization needs i >= 2 (c_1 must vanish)")
    q = realization_factor(i)
    return TotalChernData(ring, 0, {i: q * x}, su=(variant == "SU")), q


def pontryagin_components(kappa) -> dict:
    """p_i(kappa) := (-1)^i c_{2i}(complexify(kappa)), for i >= 1, nonzero only."""
    from .ktheory import complexify
    ch = chern_classes_from_character(complexify(kappa))
    out = {}
    for i in range(1, kappa.ring.top_degree // 4 + 1):
        p = (-1) ** i * ch.chern(2 * i)
        if not p.is_zero():
            out[i] = p
    return out
