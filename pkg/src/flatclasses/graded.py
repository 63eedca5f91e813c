"""
Finite-type graded-commutative rings over Q and F2.

A ring is stored as an explicit basis in each degree 0..top_degree together
with a sparse multiplication table on basis elements.  Everything above
``top_degree`` is zero.  Rings are built once (from generators and monomial
rewrite rules, by Kunneth products, or by smashing with a sphere) and are
immutable afterwards.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import yaml


class RingError(ValueError):
    """Raised when a ring description is malformed or inconsistent."""


class Coefficients(Enum):
    Q = "Q"
    F2 = "F2"

    @classmethod
    def parse(cls, value) -> "Coefficients":
        if isinstance(value, Coefficients):
            return value
        key = str(value).strip().upper()
        aliases = {"Q": cls.Q, "QQ": cls.Q, "RATIONAL": cls.Q, "RATIONALFIELD": cls.Q,
                   "F2": cls.F2, "Z/2": cls.F2, "Z2": cls.F2, "GF2": cls.F2,
                   "TWOELEMENTFIELD": cls.F2}
        try:
            return aliases[key]
        except KeyError:
            raise RingError(f"unknown coefficients {value!r}") from None

    def coerce(self, x):
        if self is Coefficients.Q:
            return Fraction(x)
        x = Fraction(x)
        if x.denominator % 2 == 0:
            raise RingError(f"{x} has no image in F2")
        return x.numerator % 2

    @property
    def zero(self):
        return Fraction(0) if self is Coefficients.Q else 0

    @property
    def one(self):
        return Fraction(1) if self is Coefficients.Q else 1

    def sign(self, exponent: int):
        """(-1)**exponent as a scalar; trivial in characteristic 2."""
        if self is Coefficients.F2:
            return 1
        return Fraction(-1) if exponent % 2 else Fraction(1)

    def add(self, a, b):
        s = a + b
        return s % 2 if self is Coefficients.F2 else s

    def mul(self, a, b):
        p = a * b
        return p % 2 if self is Coefficients.F2 else p


# sparse vector: tuple of (basis index, nonzero coefficient), sorted by index
SparseVec = tuple


class GradedRing:
    """A truncated graded-commutative algebra with an explicit basis.

    ``basis[k]`` lists the labels of the degree-``k`` basis.  ``table`` maps
    ``(i, a, j, b)`` (basis element ``a`` of degree ``i`` times basis element
    ``b`` of degree ``j``) to a sparse vector in degree ``i + j``; absent keys
    are zero products.  In a reduced ring degree 0 carries no unit.
    """

    def __init__(self, coefficients, top_degree: int, basis: Sequence[Sequence[str]],
                 table: Mapping[tuple, Iterable], reduced: bool = False,
                 generators: Mapping[str, tuple] | None = None):
        self.coefficients = Coefficients.parse(coefficients)
        if top_degree < 0:
            raise RingError("top_degree must be non-negative")
        self.top_degree = int(top_degree)
        basis = tuple(tuple(str(b) for b in row) for row in basis)
        if len(basis) < self.top_degree + 1:
            basis = basis + ((),) * (self.top_degree + 1 - len(basis))
        elif len(basis) > self.top_degree + 1:
            if any(basis[self.top_degree + 1:]):
                raise RingError("basis elements above top_degree")
            basis = basis[: self.top_degree + 1]
        self.basis = basis
        self.reduced = bool(reduced)
        if not self.reduced and len(basis[0]) == 0:
            raise RingError("unreduced ring needs a degree-0 unit")
        co = self.coefficients
        clean = {}
        for (i, a, j, b), vec in table.items():
            if i + j > self.top_degree:
                continue
            entries = []
            for idx, coef in sorted(dict(vec).items()):
                coef = co.coerce(coef)
                if coef:
                    if not 0 <= idx < len(basis[i + j]):
                        raise RingError(f"product index {idx} out of range in degree {i + j}")
                    entries.append((idx, coef))
            if entries:
                clean[(i, a, j, b)] = tuple(entries)
        self._table = clean
        self.generators = dict(generators or {})
        self._key = (self.coefficients, self.top_degree, self.basis, self.reduced,
                     tuple(sorted(clean.items())))
        self._hash = hash(self._key)

    # -- structure -----------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GradedRing):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return (f"GradedRing({self.coefficients.value}, top={self.top_degree}, "
                f"betti={self.betti_vector()}{', reduced' if self.reduced else ''})")

    def rank(self, k: int) -> int:
        if k < 0 or k > self.top_degree:
            return 0
        return len(self.basis[k])

    def betti_vector(self) -> tuple:
        return tuple(len(row) for row in self.basis)

    def product(self, i: int, a: int, j: int, b: int) -> SparseVec:
        return self._table.get((i, a, j, b), ())

    def table_items(self):
        return self._table.items()

    # -- elements --------------------------------------------------------

    def zero(self) -> "CohClass":
        return CohClass(self, {})

    def one(self) -> "CohClass":
        if self.reduced:
            raise RingError("a reduced ring has no unit")
        return self.basis_class(0, 0)

    def scalar(self, c) -> "CohClass":
        return self.coefficients.coerce(c) * self.one()

    def basis_class(self, degree: int, index: int) -> "CohClass":
        n = self.rank(degree)
        if not 0 <= index < n:
            raise IndexError(f"no basis element {index} in degree {degree}")
        vec = [0] * n
        vec[index] = 1
        return CohClass(self, {degree: vec})

    def basis_classes(self, degree: int) -> list:
        return [self.basis_class(degree, a) for a in range(self.rank(degree))]

    def element(self, components: Mapping[int, Sequence]) -> "CohClass":
        return CohClass(self, components)

    def gen(self, name: str) -> "CohClass":
        """The class of a named generator (rings built by :func:`make_ring`)."""
        try:
            degree, index = self.generators[name]
        except KeyError:
            raise RingError(f"unknown generator {name!r}") from None
        return self.basis_class(degree, index)

    def label_class(self, label: str) -> "CohClass":
        for k, row in enumerate(self.basis):
            if label in row:
                return self.basis_class(k, row.index(label))
        raise RingError(f"no basis element labelled {label!r}")

    # -- properties ------------------------------------------------------

    def is_product_free(self) -> bool:
        return all(i == 0 or j == 0 for (i, _, j, _) in self._table)

    def check_axioms(self) -> None:
        """Exhaustively verify unit, graded commutativity and associativity.

        Raises :class:`RingError` on the first failure.
        """
        co = self.coefficients
        if not self.reduced:
            one = self.one()
            for k in range(self.top_degree + 1):
                for x in self.basis_classes(k):
                    if one * x != x or x * one != x:
                        raise RingError(f"unit law fails on {x}")
        elems = [(k, a) for k in range(self.top_degree + 1) for a in range(self.rank(k))]
        for (i, a), (j, b) in itertools.product(elems, repeat=2):
            ab = self.product(i, a, j, b)
            ba = self.product(j, b, i, a)
            s = co.sign(i * j)
            if ab != tuple((idx, co.mul(s, c)) for idx, c in ba):
                raise RingError(f"graded commutativity fails on ({i},{a}) x ({j},{b})")
        basis = {e: self.basis_class(*e) for e in elems}
        for x, y, z in itertools.product(elems, repeat=3):
            if x[0] + y[0] + z[0] > self.top_degree:
                continue
            X, Y, Z = basis[x], basis[y], basis[z]
            if (X * Y) * Z != X * (Y * Z):
                raise RingError(f"associativity fails on {x}, {y}, {z}")


@dataclass(frozen=True, eq=False)
class CohClass:
    """An element of a :class:`GradedRing`, stored degree by degree.

    ``components`` maps a degree to its coordinate vector in that degree's
    basis; zero vectors are dropped.
    """

    ring: GradedRing
    components: Mapping[int, tuple] = field(default_factory=dict)

    def __post_init__(self):
        ring = self.ring
        co = ring.coefficients
        clean = {}
        for deg, vec in dict(self.components).items():
            deg = int(deg)
            vec = tuple(co.coerce(v) for v in vec)
            if not any(vec):
                continue
            if deg < 0 or deg > ring.top_degree:
                raise RingError(f"degree {deg} outside 0..{ring.top_degree}")
            if len(vec) != ring.rank(deg):
                raise RingError(f"degree {deg} needs {ring.rank(deg)} coordinates, got {len(vec)}")
            clean[deg] = vec
        object.__setattr__(self, "components", dict(sorted(clean.items())))

    # -- queries ---------------------------------------------------------

    def degrees(self) -> list:
        return list(self.components)

    def is_zero(self) -> bool:
        return not self.components

    def __bool__(self):
        return not self.is_zero()

    def is_homogeneous(self) -> bool:
        return len(self.components) <= 1

    @property
    def degree(self) -> int:
        if len(self.components) != 1:
            raise RingError("degree is defined only for nonzero homogeneous classes")
        return next(iter(self.components))

    def part(self, degree: int) -> "CohClass":
        vec = self.components.get(degree)
        return CohClass(self.ring, {degree: vec} if vec else {})

    def coords(self, degree: int) -> tuple:
        return self.components.get(degree, (self.ring.coefficients.zero,) * self.ring.rank(degree))

    def map_parts(self, fn) -> "CohClass":
        """Apply ``fn(degree, vector) -> vector`` to every stored component."""
        return CohClass(self.ring, {d: fn(d, v) for d, v in self.components.items()})

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: "CohClass"):
        if not isinstance(other, CohClass):
            raise TypeError(f"expected CohClass, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingError("classes live in different rings")

    def __add__(self, other):
        if isinstance(other, CohClass):
            self._check(other)
            co = self.ring.coefficients
            out = dict(self.components)
            for d, v in other.components.items():
                if d in out:
                    out[d] = tuple(co.add(x, y) for x, y in zip(out[d], v))
                else:
                    out[d] = v
            return CohClass(self.ring, out)
        if other == 0:
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "CohClass":
        co = self.ring.coefficients
        c = co.coerce(c)
        return CohClass(self.ring, {d: tuple(co.mul(c, x) for x in v)
                                    for d, v in self.components.items()})

    def __mul__(self, other):
        if isinstance(other, CohClass):
            return cup(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        if k == 0:
            return self.ring.one()
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, CohClass):
            return self.ring == other.ring and self.components == other.components
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, tuple(self.components.items())))

    def __str__(self):
        if not self.components:
            return "0"
        terms = []
        for d, vec in self.components.items():
            for label, c in zip(self.ring.basis[d], vec):
                if not c:
                    continue
                if label == "1":
                    terms.append(str(c))
                elif c == 1:
                    terms.append(label)
                elif c == -1:
                    terms.append(f"-{label}")
                else:
                    terms.append(f"{c} {label}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return f"CohClass({self})"

    def to_json(self) -> dict:
        return {str(d): [str(c) for c in v] for d, v in self.components.items()}


def cup(a: CohClass, b: CohClass) -> CohClass:
    """Cup product, extended bilinearly from the ring's basis table."""
    a._check(b)
    ring = a.ring
    co = ring.coefficients
    out: dict = {}
    for i, va in a.components.items():
        for j, vb in b.components.items():
            k = i + j
            if k > ring.top_degree:
                continue
            acc = out.setdefault(k, [co.zero] * ring.rank(k))
            for x, ca in enumerate(va):
                if not ca:
                    continue
                for y, cb in enumerate(vb):
                    if not cb:
                        continue
                    s = co.mul(ca, cb)
                    for idx, c in ring.product(i, x, j, y):
                        acc[idx] = co.add(acc[idx], co.mul(s, c))
    return CohClass(ring, out)


def betti(ring: GradedRing, k: int) -> int:
    """Dimension of the degree-``k`` component (0 outside 0..top_degree)."""
    return ring.rank(k)


# -- construction from generators and relations ----------------------------


@dataclass
class RingDescription:
    """Generators, degrees and monomial rewrite rules.

    Each relation rewrites a monomial (exponent map) to a linear combination of
    monomials of the same degree.  Graded commutativity is built in; odd-degree
    generators square to zero automatically over Q.
    """

    coefficients: Coefficients
    top_degree: int
    generators: list  # [(name, degree)]
    relations: list = field(default_factory=list)  # [(lhs {name: exp}, rhs [(coef, {name: exp})])]


def make_ring(desc: RingDescription | Mapping | str) -> GradedRing:
    """Expand a ring description into an explicit basis and product table.

    The relations must form a terminating, confluent rewriting system on the
    monomials of degree <= top_degree; anything else raises :class:`RingError`.
    """
    if isinstance(desc, str):
        desc = parse_ring_description(desc)
    elif isinstance(desc, Mapping):
        desc = ring_description_from_dict(desc)
    co = Coefficients.parse(desc.coefficients)
    top = int(desc.top_degree)
    names = [str(n) for n, _ in desc.generators]
    degs = [int(d) for _, d in desc.generators]
    if len(set(names)) != len(names):
        raise RingError("duplicate generator names")
    for n, d in zip(names, degs):
        if d <= 0:
            raise RingError(f"generator {n} must have positive degree, got {d}")
    ngen = len(names)

    def mono_of(m: Mapping) -> tuple:
        e = [0] * ngen
        for n, k in m.items():
            if n not in names:
                raise RingError(f"unknown generator {n!r} in relation")
            e[names.index(n)] += int(k)
        return tuple(e)

    def degree(m):
        return sum(e * d for e, d in zip(m, degs))

    def mul(m1, m2):
        """Normal-ordered product of monomials: (sign, monomial) or None."""
        m = tuple(x + y for x, y in zip(m1, m2))
        if degree(m) > top:
            return None
        if co is Coefficients.Q:
            if any(e > 1 and d % 2 for e, d in zip(m, degs)):
                return None
            ex = 0
            for i in range(ngen):
                if not m2[i] or not degs[i] % 2:
                    continue
                ex += m2[i] * sum(m1[j] * degs[j] for j in range(i + 1, ngen))
            return co.sign(ex), m
        return 1, m

    rules = []
    for lhs, rhs in desc.relations:
        lm = mono_of(lhs)
        if degree(lm) == 0:
            raise RingError("relation with constant left-hand side")
        terms = []
        for coef, m in rhs:
            rm = mono_of(m)
            if degree(rm) != degree(lm):
                raise RingError(f"relation is not homogeneous: {lhs} -> {m}")
            terms.append((co.coerce(coef), rm))
        rules.append((lm, terms))

    def divide(m, d):
        q = tuple(x - y for x, y in zip(m, d))
        return q if all(e >= 0 for e in q) else None

    memo: dict = {}
    active: set = set()

    def apply_rule(m, rule) -> dict:
        lm, terms = rule
        q = divide(m, lm)
        s, _ = mul(lm, q)
        out: dict = {}
        for coef, rm in terms:
            r = mul(rm, q)
            if r is None:
                continue
            s2, m2 = r
            for std, c in normal_form(m2).items():
                out[std] = co.add(out.get(std, co.zero), co.mul(co.mul(s, s2), co.mul(coef, c)))
        return {k: v for k, v in out.items() if v}

    def normal_form(m) -> dict:
        if m in memo:
            return memo[m]
        if m in active:
            raise RingError("relations do not terminate (rewriting cycle)")
        active.add(m)
        result = {m: co.one}
        for rule in rules:
            if divide(m, rule[0]) is not None:
                result = apply_rule(m, rule)
                break
        active.discard(m)
        memo[m] = result
        return result

    # enumerate all nonzero normal-ordered monomials up to top degree
    monos = [tuple([0] * ngen)]
    for g in range(ngen):
        grown = []
        for m in monos:
            e = 0
            while True:
                cand = m[:g] + (e,) + m[g + 1:]
                if degree(cand) > top:
                    break
                if co is Coefficients.Q and e > 1 and degs[g] % 2:
                    break
                grown.append(cand)
                e += 1
        monos = grown

    for m in monos:
        canonical = normal_form(m)
        for rule in rules:
            if divide(m, rule[0]) is not None and apply_rule(m, rule) != canonical:
                raise RingError(f"inconsistent relations: {_label(m, names)} has two values")

    standard = sorted({s for m in monos for s in normal_form(m)},
                      key=lambda m: (degree(m), tuple(-e for e in m)))
    basis: list = [[] for _ in range(top + 1)]
    index = {}
    for m in standard:
        d = degree(m)
        index[m] = len(basis[d])
        basis[d].append(m)

    table = {}
    for m1 in standard:
        for m2 in standard:
            r = mul(m1, m2)
            if r is None:
                continue
            s, m = r
            vec = {}
            for std, c in normal_form(m).items():
                vec[index[std]] = co.add(vec.get(index[std], co.zero), co.mul(s, c))
            table[(degree(m1), index[m1], degree(m2), index[m2])] = vec

    gens = {}
    for g, n in enumerate(names):
        m = tuple(1 if h == g else 0 for h in range(ngen))
        if m in index:
            gens[n] = (degs[g], index[m])
    ring = GradedRing(co, top, [[_label(m, names) for m in row] for row in basis], table,
                      generators=gens)
    ring.check_axioms()
    return ring


def _label(m, names) -> str:
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
    return "*".join(parts) if parts else "1"


def _parse_monomial(text: str) -> dict:
    text = text.strip()
    if text in ("", "1"):
        return {}
    out: dict = {}
    for factor in text.split("*"):
        factor = factor.strip()
        if "^" in factor:
            n, e = factor.split("^")
            n, e = n.strip(), int(e)
        else:
            n, e = factor, 1
        if not n or not (n[0].isalpha() or n[0] == "_"):
            raise RingError(f"bad monomial factor {factor!r}")
        out[n] = out.get(n, 0) + e
    return out


def _parse_combination(text: str) -> list:
    """'2 a*b - 1/2 c^2 + d' -> [(coef, monomial), ...]; '0' -> []."""
    text = text.strip()
    if text == "0":
        return []
    terms = []
    for sign, body in _split_terms(text):
        body = body.strip()
        coef = Fraction(1)
        for sep in (" ", "*"):
            head, _, rest = body.partition(sep)
            try:
                coef = Fraction(head)
            except ValueError:
                continue
            body = rest
            break
        if not body.strip():
            raise RingError(f"bad term {text!r}: relation right-hand sides are monomial combinations")
        terms.append((sign * coef, _parse_monomial(body)))
    return terms


def _split_terms(text):
    out, sign, cur = [], 1, ""
    for ch in text:
        if ch in "+-" and cur.strip() and not cur.rstrip().endswith("^"):
            out.append((sign, cur))
            sign, cur = (1 if ch == "+" else -1), ""
        elif ch in "+-" and not cur.strip():
            sign = sign * (1 if ch == "+" else -1)
        else:
            cur += ch
    if cur.strip():
        out.append((sign, cur))
    return out


def ring_description_from_dict(data: Mapping) -> RingDescription:
    try:
        co = Coefficients.parse(data["coefficients"])
        top = int(data["top_degree"])
        raw = data["generators"]
    except KeyError as e:
        raise RingError(f"ring description missing {e.args[0]!r}") from None
    if isinstance(raw, Mapping):
        gens = [(str(k), int(v)) for k, v in raw.items()]
    else:
        gens = []
        for g in raw:
            if isinstance(g, str):
                n, _, d = g.partition(":")
                gens.append((n.strip(), int(d)))
            else:
                gens.append((str(g[0]), int(g[1])))
    rels = []
    for r in data.get("relations") or []:
        if isinstance(r, str):
            lhs, eq, rhs = r.partition("=")
            if not eq:
                raise RingError(f"relation {r!r} has no '='")
        else:
            lhs, rhs = r
        rels.append((_parse_monomial(str(lhs)), _parse_combination(str(rhs))))
    return RingDescription(co, top, gens, rels)


def parse_ring_description(text: str) -> RingDescription:
    """Parse the YAML/JSON ring description format.

    Example::

        coefficients: Q
        top_degree: 4
        generators: {t: 2}
        relations: ["t^3 = 0"]
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise RingError(f"cannot parse ring description: {e}") from None
    if not isinstance(data, Mapping):
        raise RingError("ring description must be a mapping")
    return ring_description_from_dict(data)


def ring_to_json(ring: GradedRing) -> dict:
    return {
        "coefficients": ring.coefficients.value,
        "top_degree": ring.top_degree,
        "reduced": ring.reduced,
        "basis": [list(row) for row in ring.basis],
        "betti": list(ring.betti_vector()),
    }


# -- derived rings ---------------------------------------------------------


def point_ring(coefficients=Coefficients.Q) -> GradedRing:
    co = Coefficients.parse(coefficients)
    return GradedRing(co, 0, [["1"]], {(0, 0, 0, 0): {0: 1}})


def kunneth(R: GradedRing, S: GradedRing) -> GradedRing:
    """Tensor product ring modelling the cohomology of a product space.

    Field coefficients only, so there is no Tor term; the product carries the
    Koszul sign (a x b)(c x d) = (-1)^{|b||c|} ac x bd.
    """
    if R.coefficients is not S.coefficients:
        raise RingError("Kunneth product needs matching coefficient fields")
    if R.reduced or S.reduced:
        raise RingError("Kunneth product is defined here for unreduced rings only")
    co = R.coefficients
    top = R.top_degree + S.top_degree
    basis: list = [[] for _ in range(top + 1)]
    where = {}
    for k in range(top + 1):
        for i in range(max(0, k - S.top_degree), min(k, R.top_degree) + 1):
            j = k - i
            for a, la in enumerate(R.basis[i]):
                for b, lb in enumerate(S.basis[j]):
                    where[(i, a, j, b)] = len(basis[k])
                    basis[k].append(f"{la}⊗{lb}")
    table = {}
    for (i, a, j, b), p in where.items():
        ki = i + j
        for (k, c, l, d), q in where.items():
            if ki + k + l > top:
                continue
            left = R.product(i, a, k, c)
            right = S.product(j, b, l, d)
            if not left or not right:
                continue
            s = co.sign(j * k)
            vec = {}
            for x, cx in left:
                for y, cy in right:
                    idx = where[(i + k, x, j + l, y)]
                    vec[idx] = co.mul(s, co.mul(cx, cy))
            table[(ki, p, k + l, q)] = vec
    return GradedRing(co, top, basis, table)


def smash_with_sphere(R: GradedRing, m: int) -> GradedRing:
    """Reduced cohomology ring of S^m smash X, given the ring R of X.

    The degree-k basis is the reduced degree-(k - m) basis of R; every
    product of positive-degree classes is zero.
    """
    if int(m) != m or m <= 0:
        raise RingError(f"sphere dimension must be a positive integer, got {m}")
    m = int(m)
    top = R.top_degree + m
    basis: list = [[] for _ in range(top + 1)]
    for k, row in enumerate(R.basis):
        labels = row if R.reduced or k > 0 else row[1:]
        basis[k + m] = [f"σ^{m}({lab})" for lab in labels]
    return GradedRing(R.coefficients, top, basis, {}, reduced=True)
