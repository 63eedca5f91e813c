"""
Lower-bound calculators for spaces of flat connections.

Every bound is a finite sum of rational Betti numbers of a closed manifold M
of dimension d, gated by an inequality in (m, n, d).  Sums run over all
i >= 1 (or i >= 2 for SU) and are truncated at d, where the Betti numbers
of M stop.  Inapplicable windows do not raise: the report says which
inequality failed and still carries the arithmetic.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .catalog import SpaceModel

FAMILY_TAGS = ("U", "SU", "O", "SO", "Spin")

# Stable identifiers for the result each report comes from.
CITATIONS = {
    ("coker", "U"): "coker-rank/unitary",
    ("coker", "SU"): "coker-rank/special-unitary",
    ("coker", "O"): "coker-rank/orthogonal",
    ("flat", "U"): "flat-rank/unitary",
    ("flat", "SU"): "flat-rank/special-unitary",
    ("flat", "O"): "flat-rank/orthogonal",
    ("pi0", "U"): "pi0/unitary",
    ("pi0", "SU"): "pi0/special-unitary",
    ("pi0", "O"): "pi0/orthogonal",
    ("vanish", None): "vanishing/fiberwise-flat",
}


@dataclass(frozen=True)
class GroupFamily:
    tag: str
    n: int

    def __post_init__(self):
        tag = {t.upper(): t for t in FAMILY_TAGS}.get(str(self.tag).upper())
        if tag is None:
            raise ValueError(f"unknown group family {self.tag!r}; expected one of {FAMILY_TAGS}")
        object.__setattr__(self, "tag", tag)
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"rank parameter n must be a positive integer, got {self.n}")

    @property
    def kind(self) -> str:
        """'U', 'SU' or 'O'; SO and Spin share the orthogonal formulas."""
        return "O" if self.tag in ("O", "SO", "Spin") else self.tag

    def __str__(self):
        return f"{self.tag}({self.n})"


@dataclass(frozen=True)
class BoundQuery:
    family: GroupFamily
    space: SpaceModel
    m: int = 0

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("homotopy degree m must be >= 0")


@dataclass
class BoundReport:
    citation: str
    family: str
    n: int
    space: str
    dim: int
    m: int | None
    applicable: bool
    condition: str
    violated: str | None
    betti_terms: list
    rank_lower_bound: int
    pi0_infinite: bool | None = None
    notes: list = field(default_factory=list)

    def __post_init__(self):
        assert self.rank_lower_bound == sum(b for _, b in self.betti_terms)
        assert all(k <= self.dim for k, _ in self.betti_terms)

    def to_json(self) -> dict:
        out = asdict(self)
        out["betti_terms"] = [list(t) for t in self.betti_terms]
        return out

    def to_text(self) -> str:
        lines = [f"{self.citation}: {self.family}({self.n}) over {self.space} (d = {self.dim})"
                 + (f", m = {self.m}" if self.m is not None else "")]
        lines.append(f"  window   {self.condition}: {'holds' if self.applicable else 'fails'}"
                     + (f" ({self.violated})" if self.violated else ""))
        terms = ", ".join(f"b{k} = {b}" for k, b in self.betti_terms) or "none"
        lines.append(f"  terms    {terms}")
        lines.append(f"  sum      {self.rank_lower_bound}")
        if self.pi0_infinite is not None:
            lines.append(f"  pi0 infinite: {'yes' if self.pi0_infinite else 'not established'}")
        elif self.applicable:
            lines.append(f"  rank lower bound: {self.rank_lower_bound}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)


def _terms(space: SpaceModel, degrees) -> list:
    return [(k, space.betti(k)) for k in degrees if 0 <= k <= space.dim]


def _degrees(start: int, step: int, first_i: int, d: int) -> list:
    """start + step*i for i >= first_i, up to d."""
    out, i = [], first_i
    while start + step * i <= d:
        out.append(start + step * i)
        i += 1
    return out


def _report(kind, family, space, m, ok, condition, terms, **extra) -> BoundReport:
    return BoundReport(
        citation=CITATIONS[(kind, family.kind)], family=family.tag, n=family.n,
        space=space.name, dim=space.dim, m=m, applicable=ok, condition=condition,
        violated=None if ok else f"{condition} is false", betti_terms=terms,
        rank_lower_bound=sum(b for _, b in terms), **extra)


def coker_rank_bound(q: BoundQuery) -> BoundReport:
    """Rank of the cokernel of Hom(pi1, G) -> Map_*(M, BG) on pi_m.

    U: sum_{i>=1} b_{2i+m}, needs n >= (m+d)/2.   SU: same from i = 2.
    O, SO, Spin: sum_{i>=1} b_{3m+4i}, needs n >= m+d+1.
    """
    fam, S, m = q.family, q.space, q.m
    d, n = S.dim, fam.n
    if fam.kind == "O":
        ok = n >= m + d + 1
        cond = f"n >= m + d + 1: {n} >= {m + d + 1}"
        degrees = _degrees(3 * m, 4, 1, d)
    else:
        ok = 2 * n >= m + d
        cond = f"n >= (m + d)/2: {n} >= {Fraction(m + d, 2)}"
        degrees = _degrees(m, 2, 2 if fam.kind == "SU" else 1, d)
    return _report("coker", fam, S, m, ok, cond, _terms(S, degrees))


def flat_window(family: GroupFamily, d: int) -> int:
    """Largest m allowed by the flat-connection window (may be negative)."""
    return family.n - d - 2 if family.kind == "O" else 2 * family.n - d - 1


def flat_rank_bound(q: BoundQuery) -> BoundReport:
    """Lower bound on the rank of pi_m of the space of flat connections, m >= 1.

    U: sum_{i>=1} b_{m+2i+1} for 0 < m <= 2n-d-1; SU: same from i = 2.
    O, SO, Spin: sum_{i>=1} b_{3m+4i+1} for 0 < m <= n-d-2.
    """
    fam, S, m = q.family, q.space, q.m
    if m < 1:
        raise ValueError("rank bounds are stated for m >= 1; use pi0_verdict for m = 0")
    top = flat_window(fam, S.dim)
    if fam.kind == "O":
        cond = f"0 < m <= n - d - 2: 0 < {m} <= {top}"
        degrees = _degrees(3 * m + 1, 4, 1, S.dim)
    else:
        cond = f"0 < m <= 2n - d - 1: 0 < {m} <= {top}"
        degrees = _degrees(m + 1, 2, 2 if fam.kind == "SU" else 1, S.dim)
    return _report("flat", fam, S, m, m <= top, cond, _terms(S, degrees))


def odd_sphere_note(family: GroupFamily, space: SpaceModel) -> str | None:
    """Threshold note for unitary families over odd spheres S^(2k+1)."""
    if family.kind == "O" or not _is_odd_sphere(space):
        return None
    k = (space.dim - 1) // 2
    if family.kind == "SU" and k < 2:
        return None
    return (f"odd sphere S^{space.dim} (k = {k}): this verdict uses 2n - d - 1 >= 0, i.e. "
            f"n >= {k + 1}; a looser threshold n >= {k} is sometimes quoted for this case "
            f"and is not implied by that window (unresolved discrepancy)")


def rp_note(family: GroupFamily, space: SpaceModel) -> str | None:
    """Threshold note for orthogonal families over RP^(4k+1)."""
    if family.kind != "O" or not space.name.startswith("RP") or not space.name[2:].isdigit():
        return None
    if space.dim % 4 != 1 or space.dim < 5:
        return None
    k = (space.dim - 1) // 4
    return f"RP^{space.dim} (k = {k}): infinitely many components exactly from n >= {4 * k + 3}"


def _is_odd_sphere(space: SpaceModel) -> bool:
    return (space.name.startswith("S") and space.name[1:].isdigit() and space.dim % 2 == 1
            and space.dim >= 3)


def pi0_verdict(family: GroupFamily, space: SpaceModel) -> BoundReport:
    """Whether the space of flat connections has infinitely many components.

    U: sum_{i>=1} b_{2i+1} > 0 and 2n-d-1 >= 0;  SU: sum from i = 2.
    O, SO, Spin: sum_{i>=1} b_{4i+1} > 0 and n-d-2 >= 0.
    """
    d, n = space.dim, family.n
    if family.kind == "O":
        ok = n - d - 2 >= 0
        cond = f"n - d - 2 >= 0: {n - d - 2} >= 0"
        degrees = _degrees(1, 4, 1, d)
    else:
        ok = 2 * n - d - 1 >= 0
        cond = f"2n - d - 1 >= 0: {2 * n - d - 1} >= 0"
        degrees = _degrees(1, 2, 2 if family.kind == "SU" else 1, d)
    terms = _terms(space, degrees)
    total = sum(b for _, b in terms)
    notes = []
    if total == 0:
        notes.append("Betti sum is 0: no infinite-component conclusion")
    for note in (odd_sphere_note(family, space), rp_note(family, space)):
        if note:
            notes.append(note)
    return _report("pi0", family, space, 0, ok, cond, terms,
                   pi0_infinite=ok and total > 0, notes=notes)


def vanishing_degrees(m_param: int, total_dim: int) -> list:
    """Degrees 2m + 2i (i >= 1, up to total_dim) where characteristic classes
    of a bundle built from an X-family over X x Z vanish rationally, given
    H^j(X; Q) = 0 for j > m."""
    if m_param < 0:
        raise ValueError("m_param must be >= 0")
    return _degrees(2 * m_param, 2, 1, total_dim)


def vanishing_report(m_param: int, total_dim: int) -> dict:
    degs = vanishing_degrees(m_param, total_dim)
    return {"citation": CITATIONS[("vanish", None)], "m_param": m_param,
            "total_dim": total_dim, "degrees": degs}


def coker_degrees_on_product(family: GroupFamily, space: SpaceModel, m: int) -> list:
    """Degrees on S^m x M carrying the classes counted by coker_rank_bound.

    A Betti degree k of M corresponds to H^{k+m}(S^m ^ M) inside H^*(S^m x M).
    """
    q = BoundQuery(family, space, m)
    return [k + m for k, _ in coker_rank_bound(q).betti_terms]


def vanishing_consistent(family: GroupFamily, space: SpaceModel, m: int) -> bool:
    """Every class counted by the cokernel bound sits in a vanishing degree."""
    allowed = set(vanishing_degrees(m, space.dim + m))
    return set(coker_degrees_on_product(family, space, m)) <= allowed


def dispatch(q: BoundQuery) -> BoundReport:
    """Route a query: m = 0 asks about components, m >= 1 about pi_m ranks."""
    if q.m == 0:
        return pi0_verdict(q.family, q.space)
    return flat_rank_bound(q)
