"""
Fundamental-group presentations, matrix representations and holonomy.

Words are tuples of signed 1-based generator indices (-k is the inverse of
generator k).  Holonomy multiplies generator images left to right in word
order, so holonomy(w1 w2) = holonomy(w1) @ holonomy(w2), and conjugating a
representation by h sends every holonomy g to h^-1 g h.

Matrices come in two arithmetic modes: ``exact`` (Gaussian rationals, via
sympy's DomainMatrix over QQ_I) and ``float`` (numpy complex arrays with a
tolerance in the entrywise max norm).
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

DEFAULT_TOLERANCE = 1e-9
FAMILIES = ("U", "SU", "O", "SO")


class PresentationError(ValueError):
    pass


class RepresentationError(ValueError):
    pass


# -- presentations ------------------------------------------------------------


@dataclass(frozen=True)
class GroupPresentation:
    generators: int
    relators: tuple = ()
    names: tuple = ()

    def __post_init__(self):
        if self.generators < 0:
            raise PresentationError("negative generator count")
        rels = tuple(tuple(int(x) for x in r) for r in self.relators)
        for r in rels:
            check_word(r, self.generators)
        object.__setattr__(self, "relators", rels)
        names = tuple(self.names) or default_names(self.generators)
        if len(names) != self.generators or len(set(names)) != len(names):
            raise PresentationError("need one distinct name per generator")
        object.__setattr__(self, "names", names)

    def format_word(self, w) -> str:
        return "".join(self.names[abs(x) - 1] + ("-" if x < 0 else "") for x in w) or "1"

    def __str__(self):
        rels = ", ".join(self.format_word(r) for r in self.relators)
        return f"<{', '.join(self.names)} | {rels}>"

    def to_json(self) -> dict:
        return {"generators": self.generators, "names": list(self.names),
                "relators": [list(r) for r in self.relators]}


def default_names(n: int) -> tuple:
    if n <= 26:
        return tuple("abcdefghijklmnopqrstuvwxyz"[:n])
    return tuple(f"g{i}" for i in range(1, n + 1))


def check_word(w, generators: int):
    for x in w:
        if x == 0 or abs(x) > generators:
            raise PresentationError(f"letter {x} out of range for {generators} generators")


def parse_word(text: str, names: Sequence[str]) -> tuple:
    """Parse 'aba-b-' style words: generator names, trailing '-' inverts.

    Names are matched longest first; '1' or an empty string is the empty word.
    """
    text = text.replace(" ", "")
    if text in ("", "1"):
        return ()
    order = sorted(range(len(names)), key=lambda i: -len(names[i]))
    out, pos = [], 0
    while pos < len(text):
        for i in order:
            if text.startswith(names[i], pos):
                pos += len(names[i])
                if pos < len(text) and text[pos] == "-":
                    out.append(-(i + 1))
                    pos += 1
                else:
                    out.append(i + 1)
                break
        else:
            raise PresentationError(f"bad token at {text[pos:]!r} in word {text!r}")
    return tuple(out)


def free_reduce(w) -> tuple:
    out: list = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse_word(w) -> tuple:
    return tuple(-x for x in reversed(w))


def commutator(x: int, y: int) -> tuple:
    return (x, y, -x, -y)


@dataclass(frozen=True)
class TwoComplex:
    """A finite 2-complex: vertices, oriented named edges, 2-cell boundaries.

    ``edges`` are ``(name, tail, head)``; a boundary word lists signed
    1-based edge indices and must trace a closed edge path.  A 2-cell with an
    empty boundary (as in S^2) is allowed.
    """

    vertices: int
    edges: tuple
    faces: tuple = ()


def presentation_from_2complex(cx: TwoComplex) -> GroupPresentation:
    """Spanning-tree presentation of the fundamental group of a 2-complex."""
    if cx.vertices < 1:
        raise PresentationError("complex has no vertices")
    nedge = len(cx.edges)
    for name, t, h in cx.edges:
        if not (0 <= t < cx.vertices and 0 <= h < cx.vertices):
            raise PresentationError(f"edge {name} has an endpoint out of range")
    for face in cx.faces:
        try:
            check_word(face, nedge)
        except PresentationError as e:
            raise PresentationError(f"malformed boundary word {face}: {e}") from None
        ends = []
        for x in face:
            _, t, h = cx.edges[abs(x) - 1]
            ends.append((t, h) if x > 0 else (h, t))
        for (_, h), (t, _) in zip(ends, ends[1:] + ends[:1]):
            if h != t:
                raise PresentationError(f"boundary word {face} is not a closed edge path")

    adj: dict = {v: [] for v in range(cx.vertices)}
    for k, (_, t, h) in enumerate(cx.edges):
        adj[t].append((k, h))
        adj[h].append((k, t))
    tree, seen, queue = set(), {0}, deque([0])
    while queue:
        v = queue.popleft()
        for k, u in adj[v]:
            if u not in seen:
                seen.add(u)
                tree.add(k)
                queue.append(u)
    if len(seen) != cx.vertices:
        raise PresentationError("complex is disconnected")

    kept = [k for k in range(nedge) if k not in tree]
    renumber = {k: i + 1 for i, k in enumerate(kept)}
    names = tuple(cx.edges[k][0] for k in kept)
    if len(set(names)) != len(names):
        names = ()
    relators = []
    for face in cx.faces:
        w = tuple((1 if x > 0 else -1) * renumber[abs(x) - 1] for x in face
                  if abs(x) - 1 not in tree)
        relators.append(free_reduce(w))
    return GroupPresentation(len(kept), tuple(relators), names)


def relation_matrix(P: GroupPresentation) -> list:
    """Rows = relators, columns = exponent sums of each generator."""
    rows = []
    for r in P.relators:
        row = [0] * P.generators
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return rows


def abelianization(P: GroupPresentation) -> tuple:
    """(free rank, torsion coefficients) of the abelianized group."""
    if P.generators == 0:
        return 0, []
    rows = relation_matrix(P)
    if not rows:
        return P.generators, []
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    nonzero = [d for d in diag if d]
    return P.generators - len(nonzero), [d for d in nonzero if d != 1]


def product_presentation(P: GroupPresentation, Q: GroupPresentation) -> GroupPresentation:
    """Presentation of P x Q: both relator sets plus cross commutators."""
    shift = P.generators
    rels = list(P.relators) + [tuple(x + shift if x > 0 else x - shift for x in r)
                               for r in Q.relators]
    for i in range(1, P.generators + 1):
        for j in range(1, Q.generators + 1):
            rels.append(commutator(i, j + shift))
    names = P.names + Q.names
    if len(set(names)) != len(names):
        names = ()
    return GroupPresentation(P.generators + Q.generators, tuple(rels), names)


# -- matrices -----------------------------------------------------------------


_GAUSS = re.compile(r"^\s*([+-]?[\d/.]+)?\s*(?:([+-])\s*([\d/.]*)\s*\*?\s*[ij])?\s*$")


def parse_entry(value):
    """Parse an exact Gaussian rational: number, [re, im], or 'a+bi' string."""
    if isinstance(value, (list, tuple)):
        re_, im = value
        return QQ_I(Fraction(str(re_)), Fraction(str(im)))
    if isinstance(value, (int, Fraction)):
        return QQ_I(Fraction(value), 0)
    if isinstance(value, float):
        return QQ_I(Fraction(str(value)), 0)
    text = str(value).replace(" ", "")
    if re.fullmatch(r"[+-]?[\d/.]*\*?[ij]", text):
        coef = text[:-1].rstrip("*")
        coef = {"": "1", "+": "1", "-": "-1"}.get(coef, coef)
        return QQ_I(0, Fraction(coef))
    m = _GAUSS.match(text)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise RepresentationError(f"cannot parse matrix entry {value!r}")
    real = Fraction(m.group(1)) if m.group(1) else Fraction(0)
    imag = Fraction(0)
    if m.group(2):
        mag = Fraction(m.group(3)) if m.group(3) else Fraction(1)
        imag = mag if m.group(2) == "+" else -mag
    return QQ_I(real, imag)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def exact_matrix(rows) -> DomainMatrix:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise RepresentationError("matrix must be square")
    return DomainMatrix([[parse_entry(e) for e in r] for r in rows], (n, n), QQ_I)


def float_matrix(rows) -> np.ndarray:
    def conv(e):
        if isinstance(e, (list, tuple)):
            return complex(float(e[0]), float(e[1]))
        if isinstance(e, str):
            return complex(e.replace(" ", "").replace("i", "j"))
        return complex(e)
    a = np.array([[conv(e) for e in r] for r in rows], dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise RepresentationError("matrix must be square")
    return a


def _conj_transpose(M: DomainMatrix) -> DomainMatrix:
    n = M.shape[0]
    rows = M.to_list()
    return DomainMatrix([[QQ_I(rows[j][i].x, -rows[j][i].y) for j in range(n)] for i in range(n)],
                        (n, n), QQ_I)


def _exact_max_dev(M: DomainMatrix) -> Fraction:
    # max over entries of max(|re|, |im|)
    out = Fraction(0)
    for row in M.to_list():
        for e in row:
            out = max(out, abs(_frac(e.x)), abs(_frac(e.y)))
    return out


def identity(n: int, exact: bool):
    return DomainMatrix.eye(n, QQ_I).to_dense() if exact else np.eye(n, dtype=complex)


def matrix_to_json(M, exact: bool) -> list:
    if exact:
        return [[_format_gauss(e) for e in row] for row in M.to_list()]
    return [[_format_complex(complex(e)) for e in row] for row in M]


def _format_gauss(e) -> str:
    re_, im = _frac(e.x), _frac(e.y)
    if not im:
        return str(re_)
    if not re_:
        return f"{im}i"
    return f"{re_}{'+' if im > 0 else '-'}{abs(im)}i"


def _format_complex(z: complex) -> str:
    if abs(z.imag) < 1e-15:
        return repr(float(z.real))
    return f"{z.real!r}{'+' if z.imag >= 0 else '-'}{abs(z.imag)!r}i"


@dataclass(frozen=True)
class MatrixRep:
    """Images of the generators of a presentation in U(n), SU(n), O(n) or SO(n)."""

    family: str
    images: tuple
    mode: str = "exact"
    tolerance: float = 0.0

    def __post_init__(self):
        family = self.family.upper()
        if family == "SPIN":
            raise RepresentationError("Spin(n) has no n x n matrix model; give SO(n) images "
                                      "or a unitary image of the spin representation")
        if family not in FAMILIES:
            raise RepresentationError(f"unknown family {self.family!r}")
        object.__setattr__(self, "family", family)
        if self.mode not in ("exact", "float"):
            raise RepresentationError(f"unknown arithmetic mode {self.mode!r}")
        exact = self.mode == "exact"
        imgs = []
        for M in self.images:
            if exact and not isinstance(M, DomainMatrix):
                M = exact_matrix(M)
            elif not exact:
                M = float_matrix(M) if not isinstance(M, np.ndarray) else M.astype(complex)
            imgs.append(M)
        object.__setattr__(self, "images", tuple(imgs))
        if exact:
            object.__setattr__(self, "tolerance", 0.0)
        elif self.tolerance < 0:
            raise RepresentationError("tolerance must be non-negative")
        shapes = {M.shape for M in imgs}
        if len(shapes) > 1:
            raise RepresentationError("generator images have different sizes")

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    @property
    def n(self) -> int:
        if not self.images:
            raise RepresentationError("representation of the trivial group has no size")
        return self.images[0].shape[0]

    def to_json(self) -> dict:
        return {"family": self.family, "n": self.n, "mode": self.mode,
                "tolerance": self.tolerance,
                "matrices": [matrix_to_json(M, self.exact) for M in self.images]}


def _inverse(M, exact: bool):
    if exact:
        return M.inv()
    return np.linalg.inv(M)


def deviation(A, B, exact: bool):
    """Entrywise max-norm distance (exact mode: max of |re|, |im| differences)."""
    if exact:
        return _exact_max_dev(A - B)
    return float(np.max(np.abs(A - B))) if A.size else 0.0


def family_residual(M, family: str, exact: bool):
    """How far M is from satisfying the defining equations of the family."""
    n = M.shape[0]
    I = identity(n, exact)
    if exact:
        res = _exact_max_dev(M * _conj_transpose(M) - I)
        if family in ("O", "SO"):
            res = max(res, max((abs(_frac(e.y)) for row in M.to_list() for e in row),
                               default=Fraction(0)))
        if family in ("SU", "SO"):
            d = M.det()
            res = max(res, abs(_frac(d.x) - 1), abs(_frac(d.y)))
        return res
    res = float(np.max(np.abs(M @ M.conj().T - I))) if n else 0.0
    if family in ("O", "SO"):
        res = max(res, float(np.max(np.abs(M.imag))) if n else 0.0)
    if family in ("SU", "SO"):
        res = max(res, abs(np.linalg.det(M) - 1))
    return res


def holonomy(rho: MatrixRep, w) -> object:
    """Product of generator images along w, left to right."""
    check_word(w, len(rho.images))
    exact = rho.exact
    out = identity(rho.n, exact)
    inverses: dict = {}
    for x in w:
        g = rho.images[abs(x) - 1]
        if x < 0:
            if x not in inverses:
                inverses[x] = _inverse(g, exact)
            g = inverses[x]
        out = out * g if exact else out @ g
    return out


@dataclass(frozen=True)
class Verification:
    ok: bool
    residual: object
    relator_residuals: tuple = ()
    family_residuals: tuple = ()

    def __bool__(self):
        return self.ok


def verify_representation(rho: MatrixRep, P: GroupPresentation) -> Verification:
    """Check every relator evaluates to the identity and every image lies in the group."""
    if len(rho.images) != P.generators:
        raise RepresentationError(f"{len(rho.images)} images for {P.generators} generators")
    if not rho.images:
        return Verification(True, Fraction(0) if rho.exact else 0.0)
    exact = rho.exact
    I = identity(rho.n, exact)
    fam = tuple(family_residual(M, rho.family, exact) for M in rho.images)
    rel = tuple(deviation(holonomy(rho, r), I, exact) for r in P.relators)
    residual = max(fam + rel)
    ok = residual == 0 if exact else residual <= rho.tolerance
    return Verification(ok, residual, rel, fam)


def conjugate_rep(rho: MatrixRep, h) -> MatrixRep:
    """Replace every image g by h^-1 g h (basepoint change)."""
    exact = rho.exact
    if exact and not isinstance(h, DomainMatrix):
        h = exact_matrix(h)
    elif not exact and not isinstance(h, np.ndarray):
        h = float_matrix(h)
    if h.shape != (rho.n, rho.n):
        raise RepresentationError("conjugating matrix has the wrong size")
    res = family_residual(h, rho.family, exact)
    if (exact and res != 0) or (not exact and res > rho.tolerance):
        raise RepresentationError(f"conjugating matrix is not in {rho.family}({rho.n}); residual {res}")
    hinv = _inverse(h, exact)
    imgs = tuple(hinv * g * h if exact else hinv @ g @ h for g in rho.images)
    return MatrixRep(rho.family, imgs, rho.mode, rho.tolerance)


# -- families of representations ------------------------------------------------


class SampleError(RepresentationError):
    def __init__(self, point, residual):
        super().__init__(f"sample at {point} is not a representation (residual {residual})")
        self.point = point
        self.residual = residual


@dataclass(frozen=True)
class FamilySampler:
    """Matrix-valued functions on a grid in a cube [lo, hi]^dim.

    ``images(point)`` returns one matrix per generator.  The grid has
    ``points`` equally spaced samples per axis, endpoints included.
    """

    presentation: GroupPresentation
    family: str
    images: Callable
    dim: int = 1
    points: int = 8
    lo: float = 0.0
    hi: float = 1.0
    mode: str = "float"
    tolerance: float = DEFAULT_TOLERANCE
    endpoint: bool = True

    def axis(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points, endpoint=self.endpoint)

    def grid(self) -> list:
        ax = self.axis()
        pts = [()]
        for _ in range(self.dim):
            pts = [p + (x,) for p in pts for x in ax]
        return pts

    @property
    def spacing(self) -> float:
        ax = self.axis()
        return float(ax[1] - ax[0]) if len(ax) > 1 else 0.0


def sample_family(F: FamilySampler, point) -> MatrixRep:
    point = tuple(point)
    ax = F.axis()
    if len(point) != F.dim or not all(np.any(np.isclose(ax, x, rtol=0, atol=1e-12)) for x in point):
        raise RepresentationError(f"{point} is not a grid point")
    rho = MatrixRep(F.family, tuple(F.images(point)), F.mode, F.tolerance)
    check = verify_representation(rho, F.presentation)
    if not check.ok:
        raise SampleError(point, check.residual)
    return rho


def adjacent_distances(F: FamilySampler, word) -> list:
    """Max-norm distance of holonomy(word) between grid neighbours along axis 0."""
    ax = F.axis()
    out = []
    for p in F.grid():
        k = int(np.argmin(np.abs(ax - p[0])))
        if k + 1 >= len(ax):
            continue
        q = (ax[k + 1],) + p[1:]
        a = holonomy(sample_family(F, p), word)
        b = holonomy(sample_family(F, q), word)
        out.append(deviation(a, b, F.mode == "exact"))
    return out


# -- file formats -----------------------------------------------------------------


def parse_presentation(text: str) -> GroupPresentation:
    """JSON ``{"generators": s, "names": [...], "relators": [[1, 2, -1, -2]]}``,
    or plain text: generator count on the first line, one relator per line as
    signed integers.
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
            return GroupPresentation(int(data["generators"]),
                                     tuple(tuple(r) for r in data.get("relators", [])),
                                     tuple(data.get("names", ())))
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise PresentationError(f"bad presentation file: {e!r}") from None
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise PresentationError("empty presentation file")
    try:
        s = int(lines[0])
        rels = tuple(tuple(int(x) for x in ln.replace(",", " ").split()) for ln in lines[1:])
    except ValueError as e:
        raise PresentationError(f"bad presentation file: {e}") from None
    return GroupPresentation(s, rels)


def parse_representation(text: str) -> MatrixRep:
    """JSON ``{"family": "U", "n": 2, "mode": "exact"|"float", "tolerance": 1e-9,
    "matrices": [[[row], ...], ...]}`` with row-major entries."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise RepresentationError(f"bad representation file: {e}") from None
    if not isinstance(data, dict) or "family" not in data or "matrices" not in data:
        raise RepresentationError("representation file needs 'family' and 'matrices'")
    mode = data.get("mode", "exact")
    tol = float(data.get("tolerance", 0.0 if mode == "exact" else DEFAULT_TOLERANCE))
    rho = MatrixRep(str(data["family"]), tuple(data["matrices"]), mode, tol)
    if "n" in data and rho.images and rho.n != int(data["n"]):
        raise RepresentationError(f"declared n = {data['n']} but matrices are {rho.n} x {rho.n}")
    return rho
