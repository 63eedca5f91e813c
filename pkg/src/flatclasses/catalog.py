"""
Closed-manifold models: dimension, orientability, Q and F2 cohomology rings,
a 2-skeleton and the fundamental-group presentation it determines.

Descriptors: ``S<k>``, ``T<n>``, ``Sigma<g>``, ``RP<n>``, ``CP<n>`` and
products joined by ``x`` (``S2xS3``).  Extra models can be dropped as YAML
files into the directory named by ``FLATCLASSES_CATALOG_PATH``.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import yaml

from .graded import Coefficients, GradedRing, kunneth, make_ring, point_ring
from .holonomy import GroupPresentation, TwoComplex, commutator, presentation_from_2complex

CATALOG_ENV = "FLATCLASSES_CATALOG_PATH"


class UnknownSpace(ValueError):
    pass


@dataclass(frozen=True)
class SpaceModel:
    name: str
    dim: int
    orientable: bool
    ring_Q: GradedRing
    ring_F2: GradedRing
    pi1: GroupPresentation | None = None
    cells: TwoComplex | None = None
    notes: str = ""
    flags: tuple = field(default_factory=tuple)

    def ring(self, coefficients=Coefficients.Q) -> GradedRing:
        co = Coefficients.parse(coefficients)
        return self.ring_Q if co is Coefficients.Q else self.ring_F2

    def betti(self, k: int, coefficients=Coefficients.Q) -> int:
        return self.ring(coefficients).rank(k)

    def to_json(self) -> dict:
        return {
            "name": self.name, "dim": self.dim, "orientable": self.orientable,
            "betti_Q": list(betti_vector(self, Coefficients.Q)),
            "betti_F2": list(betti_vector(self, Coefficients.F2)),
            "pi1": str(self.pi1) if self.pi1 is not None else None,
            "notes": self.notes, "flags": list(self.flags),
        }


def betti_vector(S: SpaceModel, coefficients=Coefficients.Q) -> tuple:
    return S.ring(coefficients).betti_vector()


def euler_characteristic(S: SpaceModel, coefficients=Coefficients.Q) -> int:
    return sum((-1) ** k * b for k, b in enumerate(betti_vector(S, coefficients)))


def check_poincare_duality(S: SpaceModel, coefficients=Coefficients.Q) -> bool:
    b = betti_vector(S, coefficients)
    return all(b[k] == b[S.dim - k] for k in range(S.dim + 1))


# -- 2-complexes -----------------------------------------------------------


def _one_vertex(names, faces) -> TwoComplex:
    return TwoComplex(1, tuple((n, 0, 0) for n in names), tuple(tuple(f) for f in faces))


def product_complex(A: TwoComplex, B: TwoComplex) -> TwoComplex:
    """2-skeleton of the product cell structure."""
    V = lambda a, b: a * B.vertices + b
    edges, eidx = [], {}
    for k, (n, t, h) in enumerate(A.edges):
        for b in range(B.vertices):
            eidx[("A", k, b)] = len(edges) + 1
            suffix = f"_{b}" if B.vertices > 1 else ""
            edges.append((n + suffix, V(t, b), V(h, b)))
    for a in range(A.vertices):
        for k, (n, t, h) in enumerate(B.edges):
            eidx[("B", a, k)] = len(edges) + 1
            suffix = f"_{a}" if A.vertices > 1 else ""
            edges.append((n + suffix, V(a, t), V(a, h)))
    faces = []
    for b in range(B.vertices):
        for f in A.faces:
            faces.append(tuple((1 if x > 0 else -1) * eidx[("A", abs(x) - 1, b)] for x in f))
    for a in range(A.vertices):
        for f in B.faces:
            faces.append(tuple((1 if x > 0 else -1) * eidx[("B", a, abs(x) - 1)] for x in f))
    for i, (_, ta, ha) in enumerate(A.edges):
        for j, (_, tb, hb) in enumerate(B.edges):
            # (e x tail f)(head e x f)(e x head f)^-1 (tail e x f)^-1
            faces.append((eidx[("A", i, tb)], eidx[("B", ha, j)],
                          -eidx[("A", i, hb)], -eidx[("B", ta, j)]))
    names = [e[0] for e in edges]
    if len(set(names)) != len(names):
        edges = [(f"e{k + 1}", t, h) for k, (_, t, h) in enumerate(edges)]
    return TwoComplex(A.vertices * B.vertices, tuple(edges), tuple(faces))


# -- model builders --------------------------------------------------------------


def _ring(co, top, gens, rels=()):
    return make_ring({"coefficients": co, "top_degree": top, "generators": gens,
                      "relations": list(rels)})


def sphere(k: int) -> SpaceModel:
    if k < 1:
        raise UnknownSpace("sphere dimension must be >= 1")
    # x^2 sits above the top degree, so truncation alone gives the sphere ring
    rings = [_ring(co, k, {"x": k}) for co in ("Q", "F2")]
    if k == 1:
        cells = _one_vertex(["a"], [])
    elif k == 2:
        cells = _one_vertex([], [()])
    else:
        cells = _one_vertex([], [])
    return _finish(f"S{k}", k, True, *rings, cells, "sphere: exterior class in top degree")


def torus(n: int) -> SpaceModel:
    if n < 1:
        raise UnknownSpace("torus dimension must be >= 1")
    gens = {f"x{i}": 1 for i in range(1, n + 1)}
    rq = _ring("Q", n, gens)
    rf = _ring("F2", n, gens, [f"x{i}^2 = 0" for i in range(1, n + 1)])
    names = list("abcdefghijklmnopqrstuvwxyz"[:n]) if n <= 26 else [f"g{i}" for i in range(1, n + 1)]
    faces = [commutator(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return _finish(f"T{n}", n, True, rq, rf, _one_vertex(names, faces),
                   "torus: exterior algebra on n degree-1 classes")


def surface(g: int) -> SpaceModel:
    if g < 0:
        raise UnknownSpace("genus must be >= 0")
    if g == 0:
        S = sphere(2)
        return SpaceModel("Sigma0", 2, True, S.ring_Q, S.ring_F2, S.pi1, S.cells,
                          "genus-0 surface = S^2")
    gens = {}
    for i in range(1, g + 1):
        gens[f"a{i}"] = 1
        gens[f"b{i}"] = 1
    rels = []
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            if i < j:
                rels += [f"a{i}*a{j} = 0", f"b{i}*b{j} = 0"]
            if i != j:
                rels.append(f"a{i}*b{j} = 0")
        if i > 1:
            rels.append(f"a{i}*b{i} = a1*b1")
    rq = _ring("Q", 2, gens, rels)
    rf = _ring("F2", 2, gens, rels + [f"{x}{i}^2 = 0" for i in range(1, g + 1) for x in "ab"])
    names = [n for i in range(1, g + 1) for n in (f"a{i}", f"b{i}")]
    word = []
    for i in range(g):
        word += list(commutator(2 * i + 1, 2 * i + 2))
    return _finish(f"Sigma{g}", 2, True, rq, rf, _one_vertex(names, [word]),
                   "orientable surface: symplectic pairing a_i b_i = top class")


def real_projective(n: int) -> SpaceModel:
    if n < 1:
        raise UnknownSpace("RP^n needs n >= 1")
    if n % 2:
        rq = _ring("Q", n, {"x": n})
    else:
        rq = _ring("Q", n, {})
    rf = _ring("F2", n, {"a": 1})
    cells = _one_vertex(["a"], [(1, 1)] if n >= 2 else [])
    flags = ()
    notes = "real projective space: F2[a]/a^(n+1); rationally a sphere (n odd) or a point (n even)"
    if n % 2 == 0:
        flags = ("non-orientable: excluded from rational duality checks",)
    return _finish(f"RP{n}", n, n % 2 == 1, rq, rf, cells, notes, flags)


def complex_projective(n: int) -> SpaceModel:
    if n < 1:
        raise UnknownSpace("CP^n needs n >= 1")
    rq = _ring("Q", 2 * n, {"t": 2})
    rf = _ring("F2", 2 * n, {"t": 2})
    return _finish(f"CP{n}", 2 * n, True, rq, rf, _one_vertex([], [()]),
                   "complex projective space: truncated polynomial ring on t (degree 2)")


def product(A: SpaceModel, B: SpaceModel) -> SpaceModel:
    cells = product_complex(A.cells, B.cells) if A.cells and B.cells else None
    flags = tuple(dict.fromkeys(A.flags + B.flags))
    return _finish(f"{A.name}x{B.name}", A.dim + B.dim, A.orientable and B.orientable,
                   kunneth(A.ring_Q, B.ring_Q), kunneth(A.ring_F2, B.ring_F2), cells,
                   f"product of {A.name} and {B.name} (Kunneth over a field)", flags)


def point() -> SpaceModel:
    return _finish("pt", 0, True, point_ring("Q"), point_ring("F2"), _one_vertex([], []), "point")


def _finish(name, dim, orientable, rq, rf, cells, notes, flags=()):
    pi1 = presentation_from_2complex(cells) if cells is not None else None
    return SpaceModel(name, dim, orientable, rq, rf, pi1, cells, notes, tuple(flags))


# -- descriptors --------------------------------------------------------------------

_TOKEN = re.compile(r"(Sigma|RP|CP|S|T)(\d+)$")
_BUILDERS = {"S": sphere, "T": torus, "Sigma": surface, "RP": real_projective,
             "CP": complex_projective}


def split_descriptor(descriptor: str) -> list:
    """'S2xS3' -> ['S2', 'S3']; the separator is an 'x' following a digit."""
    return re.split(r"(?<=\d)x(?=[A-Za-z@])", descriptor.strip())


@lru_cache(maxsize=256)
def get_space(descriptor: str) -> SpaceModel:
    """Build (and cache) the model named by a descriptor string."""
    parts = split_descriptor(descriptor)
    if not parts or any(not p for p in parts):
        raise UnknownSpace(f"empty factor in descriptor {descriptor!r}")
    spaces = [_factor(p) for p in parts]
    out = spaces[0]
    for s in spaces[1:]:
        out = product(out, s)
    return out


def _factor(token: str) -> SpaceModel:
    if token == "pt":
        return point()
    m = _TOKEN.match(token)
    if m:
        return _BUILDERS[m.group(1)](int(m.group(2)))
    ext = _extension(token.lstrip("@"))
    if ext is not None:
        return ext
    raise UnknownSpace(f"unsupported space descriptor {token!r}")


def _extension(name: str) -> SpaceModel | None:
    root = os.environ.get(CATALOG_ENV)
    if not root:
        return None
    for suffix in (".yaml", ".yml", ".json"):
        path = Path(root) / f"{name}{suffix}"
        if path.is_file():
            return load_space_file(path)
    return None


def load_space_file(path) -> SpaceModel:
    """Load a user model: name, dim, orientable, ring_Q, ring_F2, optional
    pi1 {generators, relators}, notes."""
    data = yaml.safe_load(Path(path).read_text())
    try:
        dim = int(data["dim"])
        rq = make_ring(data["ring_Q"])
        rf = make_ring(data["ring_F2"])
    except KeyError as e:
        raise UnknownSpace(f"{path}: missing field {e.args[0]!r}") from None
    if rq.top_degree != dim or rf.top_degree != dim:
        raise UnknownSpace(f"{path}: ring top degrees must equal dim {dim}")
    pi1 = None
    if data.get("pi1"):
        p = data["pi1"]
        pi1 = GroupPresentation(int(p["generators"]), tuple(tuple(r) for r in p.get("relators", [])),
                                tuple(p.get("names", ())))
    return SpaceModel(str(data.get("name", Path(path).stem)), dim, bool(data.get("orientable", True)),
                      rq, rf, pi1, None, str(data.get("notes", f"user model from {path}")))


def standard_spaces() -> list:
    """A fixed desk-scale sample of the catalog used by validation suites."""
    names = ["S1", "S2", "S3", "S4", "S5", "S7", "T2", "T3", "T4", "Sigma0", "Sigma1", "Sigma2",
             "Sigma3", "RP2", "RP3", "RP4", "RP5", "RP9", "CP1", "CP2", "CP3", "S2xS3",
             "S1xS2", "T2xCP1", "RP2xS1"]
    return [get_space(n) for n in names]
