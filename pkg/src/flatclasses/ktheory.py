"""
Rational K- and KO-theory modelled through the Chern character.

A rational K^0 class is its Chern-character image (a class in even degrees);
a rational KO^0 class is an element of the product of the degree-4i groups.
Complexification is the inclusion, conjugation negates degrees 2i with i odd,
and realification of an invariant class doubles it, so that r'c = 2 and
cr' = 2.  The structure-group reduction tests read off c_1, w_1 and w_2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .charclass import MixedCohClass, StiefelWhitneyData, TotalChernData, bar
from .graded import Coefficients, CohClass, GradedRing, RingError

KClassRational = MixedCohClass


@dataclass(frozen=True, eq=False)
class KOClassRational:
    """A rational KO^0 class: components only in degrees divisible by 4."""

    value: CohClass

    def __post_init__(self):
        if self.value.ring.coefficients is not Coefficients.Q:
            raise RingError("KO classes are modelled rationally")
        if any(d % 4 for d in self.value.degrees()):
            raise RingError("KO class must be supported in degrees 4i")

    @property
    def ring(self) -> GradedRing:
        return self.value.ring

    @classmethod
    def from_components(cls, ring: GradedRing, components: Mapping[int, CohClass]):
        out = ring.zero()
        for i, x in components.items():
            if not x.is_zero() and x.degrees() != [4 * i]:
                raise RingError(f"KO component {i} must sit in degree {4 * i}")
            out = out + x
        return cls(out)

    def component(self, i: int) -> CohClass:
        return self.value.part(4 * i)

    @property
    def components(self) -> dict:
        return {d // 4: self.value.part(d) for d in self.value.degrees()}

    def __add__(self, other):
        return KOClassRational(self.value + other.value)

    def __sub__(self, other):
        return KOClassRational(self.value - other.value)

    def __neg__(self):
        return KOClassRational(-self.value)

    def __mul__(self, other):
        if isinstance(other, KOClassRational):
            return KOClassRational(self.value * other.value)
        return KOClassRational(self.value * other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, KOClassRational):
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash(("KO", self.value))

    def __str__(self):
        return str(self.value)


def complexify(kappa: KOClassRational) -> KClassRational:
    return KClassRational(kappa.value)


def conj_action(y: KClassRational) -> KClassRational:
    """Negate the degree-2i components with i odd."""
    return bar(y)


def is_invariant(y: KClassRational) -> bool:
    return all(d % 4 == 0 for d in y.value.degrees())


def realify_invariant(y: KClassRational, require_invariant: bool = True) -> KOClassRational:
    """The forgetful map r on K^0 (x) Q, restricted by default to invariants.

    On the invariant part this is r' with r'(c(x)) = 2x and c(r'(y)) = 2y.
    With ``require_invariant=False`` the unrestricted r is returned, whose
    complexification is y + conj(y); it is never a symmetrised r'.
    """
    if require_invariant and not is_invariant(y):
        bad = [d for d in y.value.degrees() if d % 4]
        raise RingError(f"class is not conjugation-invariant (components in degrees {bad})")
    both = y + conj_action(y)
    return KOClassRational(both.value)


@dataclass(frozen=True)
class ReductionReport:
    group: str
    verdict: bool
    witness: CohClass

    def __post_init__(self):
        if self.verdict != self.witness.is_zero():
            raise ValueError("verdict must be true exactly when the witness vanishes")

    def to_json(self) -> dict:
        return {"group": self.group, "verdict": self.verdict,
                "witness": str(self.witness), "witness_coords": self.witness.to_json()}


def su_reducible(phi: TotalChernData) -> ReductionReport:
    """A complex bundle reduces to SU(n) iff c_1 = 0."""
    c1 = phi.chern(1)
    return ReductionReport("SU", c1.is_zero(), c1)


def so_spin_reducible(w: StiefelWhitneyData) -> tuple:
    """(SO report, Spin report): SO iff w1 = 0; Spin iff w1 = 0 and w2 = 0.

    The Spin witness is w1 + w2, zero exactly when both vanish.
    """
    so = ReductionReport("SO", w.w1.is_zero(), w.w1)
    spin_witness = w.w1 + w.w2
    return so, ReductionReport("Spin", spin_witness.is_zero(), spin_witness)
