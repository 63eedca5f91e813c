"""
Command-line front end.

    flatclasses bound --group O --n 11 --space RP9 --m 0
    flatclasses pi0 --group U --n 3 --space S5
    flatclasses coker --group U --n 2 --space T3 --m 0
    flatclasses vanish --m-param 2 --total-dim 8
    flatclasses reduce --file class.yaml
    flatclasses ch --space CP2 --dim 1 --c 1=t
    flatclasses realize --space CP2 --smash 1 --degree 4 --coords 1
    flatclasses holonomy --presentation torus.grp --rep diag.rep --word "aba-b-"
    flatclasses catalog

Every subcommand takes ``--format text|json``; both render the same report.
Exit status: 0 on success (inapplicable windows included), 2 for bad input,
3 when a representation file fails verification.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

import yaml

from . import __version__
from .catalog import UnknownSpace, get_space, standard_spaces
from .charclass import (StiefelWhitneyData, TotalChernData, chern_character,
                        pontryagin_components, realize_single_class)
from .flatbounds import (BoundQuery, GroupFamily, coker_rank_bound, dispatch, flat_rank_bound,
                         pi0_verdict, vanishing_report)
from .graded import Coefficients, CohClass, GradedRing, RingError, make_ring, smash_with_sphere
from .holonomy import (PresentationError, RepresentationError, holonomy, matrix_to_json,
                       parse_presentation, parse_representation, parse_word, verify_representation)
from .ktheory import so_spin_reducible, su_reducible


class InputError(ValueError):
    pass


# -- class and ring parsing -----------------------------------------------------


def parse_class(ring: GradedRing, value, degree: int | None = None) -> CohClass:
    """Read a class from a mapping {degree: [coords]}, a coordinate string
    '1,0,-1/2' (needs ``degree``), a list of [coef, label] pairs, or a
    label expression '2 t^2 - x1*x2'."""
    if isinstance(value, CohClass):
        return value
    if isinstance(value, dict):
        return ring.element({int(k): [Fraction(str(c)) for c in v] for k, v in value.items()})
    if isinstance(value, list):
        out = ring.zero()
        for coef, label in value:
            out = out + Fraction(str(coef)) * ring.label_class(str(label))
        return out
    if isinstance(value, (int, Fraction)) and degree is not None:
        return ring.element({degree: [value]})
    text = str(value).strip()
    if text == "0":
        return ring.zero()
    if degree is not None and all(ch in "0123456789/-+, " for ch in text):
        coords = [Fraction(c) for c in text.replace(" ", "").split(",") if c]
        return ring.element({degree: coords})
    return _label_expression(ring, text)


def _label_expression(ring: GradedRing, text: str) -> CohClass:
    out = ring.zero()
    sign, coef = 1, None
    for tok in re.findall(r"[+-]|[^\s+-]+", text):
        if tok == "+":
            continue
        if tok == "-":
            sign = -sign
            continue
        head, star, rest = tok.partition("*")
        for num, label in ((tok, None), (head, rest if star else None)):
            try:
                value = Fraction(num)
            except ValueError:
                continue
            if coef is not None:
                raise InputError(f"two coefficients in a row in {text!r}")
            coef, tok = value, label
            break
        if tok is None:
            continue
        try:
            cls = ring.label_class(tok)
        except RingError:
            try:
                cls = ring.gen(tok)
            except RingError:
                raise InputError(f"bad token {tok!r} in class expression {text!r}") from None
        out = out + (sign * (1 if coef is None else coef)) * cls
        sign, coef = 1, None
    if coef is not None:
        raise InputError(f"dangling coefficient in {text!r}")
    return out


def ring_for(space: str | None, ring_file: str | None, smash: int, coefficients) -> GradedRing:
    if ring_file:
        ring = make_ring(Path(ring_file).read_text())
        if ring.coefficients is not Coefficients.parse(coefficients):
            raise InputError(f"ring file is over {ring.coefficients.value}, need {coefficients}")
    elif space:
        ring = get_space(space).ring(coefficients)
    else:
        raise InputError("need --space or --ring")
    return smash_with_sphere(ring, smash) if smash else ring


# -- rendering --------------------------------------------------------------------


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def emit(report, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(render_text(report) + "\n")


# -- subcommands ------------------------------------------------------------------


def _family(args) -> GroupFamily:
    try:
        return GroupFamily(args.group, args.n)
    except ValueError as e:
        raise InputError(str(e)) from None


def _space(name):
    try:
        return get_space(name)
    except UnknownSpace as e:
        raise InputError(str(e)) from None


def _ms(text) -> list:
    try:
        ms = [int(x) for x in str(text).split(",")]
    except ValueError:
        raise InputError(f"bad value for --m: {text!r}") from None
    if any(m < 0 for m in ms):
        raise InputError("--m must be >= 0")
    return ms


def _query_report(fn, args) -> dict:
    fam, space = _family(args), _space(args.space)
    reports = [fn(BoundQuery(fam, space, m)).to_json() for m in _ms(args.m)]
    return reports[0] if len(reports) == 1 else {"reports": reports}


def cmd_bound(args):
    return _query_report(dispatch, args)


def cmd_coker(args):
    return _query_report(coker_rank_bound, args)


def cmd_flat(args):
    if 0 in _ms(args.m):
        raise InputError("flat rank bounds need m >= 1 (use pi0 for m = 0)")
    return _query_report(flat_rank_bound, args)


def cmd_pi0(args):
    return pi0_verdict(_family(args), _space(args.space)).to_json()


def cmd_vanish(args):
    if args.total_dim is None and args.space is None:
        raise InputError("need --total-dim or --space")
    total = args.total_dim if args.total_dim is not None else _space(args.space).dim + args.m_param
    return vanishing_report(args.m_param, total)


def cmd_reduce(args):
    data = yaml.safe_load(Path(args.file).read_text())
    if not isinstance(data, dict):
        raise InputError("class file must be a mapping")
    kind = str(data.get("kind", "chern")).lower().replace("_", "-")
    smash = int(data.get("smash", 0))
    ring_file = data.get("ring_file")
    if ring_file and not Path(ring_file).is_absolute():
        ring_file = str(Path(args.file).parent / ring_file)
    classes = data.get("classes") or {}
    echo = {"file": args.file, "kind": kind, "space": data.get("space"), "smash": smash}
    if kind in ("chern", "c"):
        ring = ring_for(data.get("space"), ring_file, smash, "Q")
        c = {}
        for key, value in classes.items():
            i = int(str(key).lstrip("c"))
            c[i] = parse_class(ring, value, 2 * i)
        phi = TotalChernData(ring, Fraction(str(data.get("dim", 0))), c)
        return {**echo, "classes": str(phi), "reductions": [su_reducible(phi).to_json()]}
    if kind in ("stiefel-whitney", "sw", "w"):
        ring = ring_for(data.get("space"), ring_file, smash, "F2")
        ws = {int(str(k).lstrip("w")): parse_class(ring, v, int(str(k).lstrip("w")))
              for k, v in classes.items()}
        w = StiefelWhitneyData(ring, ws.pop(1, ring.zero()), ws.pop(2, ring.zero()), ws)
        so, spin = so_spin_reducible(w)
        return {**echo, "classes": str(w), "reductions": [so.to_json(), spin.to_json()]}
    raise InputError(f"unknown class kind {kind!r}")


def _parse_c_option(ring, items) -> dict:
    c = {}
    for item in items or []:
        key, eq, value = item.partition("=")
        if not eq:
            raise InputError(f"--c expects i=class, got {item!r}")
        try:
            i = int(key.strip().lstrip("c"))
        except ValueError:
            raise InputError(f"bad Chern index in {item!r}") from None
        c[i] = parse_class(ring, value, 2 * i)
    return c


def cmd_ch(args):
    ring = ring_for(args.space, args.ring, args.smash, "Q")
    phi = TotalChernData(ring, Fraction(args.dim), _parse_c_option(ring, args.c))
    ch = chern_character(phi)
    return {"space": args.space, "smash": args.smash, "input": str(phi),
            "chern_character": str(ch), "components": ch.value.to_json(),
            "basis": {str(k): list(row) for k, row in enumerate(ring.basis) if row}}


def cmd_realize(args):
    ring = ring_for(args.space, args.ring, args.smash, "Q")
    if args.all:
        variant = args.variant.upper()
        step, lowest = {"KO": (4, 4), "SU": (2, 4)}.get(variant, (2, 2))
        targets = [x for d in range(lowest, ring.top_degree + 1, step)
                   for x in ring.basis_classes(d)]
    else:
        if args.degree is None or args.coords is None:
            raise InputError("need --degree and --coords (or --all)")
        targets = [parse_class(ring, args.coords, args.degree)]
    rows = []
    for x in targets:
        obj, q = realize_single_class(x, args.variant)
        row = {"class": str(x), "degree": x.degree, "q": str(q)}
        if args.variant.upper() == "KO":
            row["pontryagin"] = {f"p{i}": str(p) for i, p in pontryagin_components(obj).items()}
        else:
            row["chern"] = {f"c{i}": str(v) for i, v in obj.c.items()}
            row["chern_character"] = str(chern_character(obj))
            row["su_reducible"] = su_reducible(obj).verdict
        rows.append(row)
    return {"space": args.space, "smash": args.smash, "variant": args.variant.upper(),
            "realizations": rows}


def cmd_holonomy(args):
    P = parse_presentation(Path(args.presentation).read_text())
    rho = parse_representation(Path(args.rep).read_text())
    w = parse_word(args.word, P.names)
    check = verify_representation(rho, P)
    H = holonomy(rho, w)
    report = {"presentation": args.presentation, "representation": args.rep,
              "word": args.word, "letters": list(w), "group": str(P),
              "family": rho.family, "n": rho.n, "mode": rho.mode,
              "verified": check.ok, "residual": str(check.residual),
              "holonomy": matrix_to_json(H, rho.exact)}
    return report, (0 if check.ok else 3)


def cmd_catalog(args):
    spaces = [_space(s) for s in args.space] if args.space else standard_spaces()
    return {"spaces": [s.to_json() for s in spaces]}


COMMANDS = {"bound": cmd_bound, "pi0": cmd_pi0, "coker": cmd_coker, "flat": cmd_flat,
            "vanish": cmd_vanish, "reduce": cmd_reduce, "ch": cmd_ch, "realize": cmd_realize,
            "holonomy": cmd_holonomy, "catalog": cmd_catalog}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")

    p = argparse.ArgumentParser(prog="flatclasses", description=__doc__.split("\n\n")[0].strip())
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def query(name, help_, m_default=None):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--group", required=True, help="U, SU, O, SO or Spin")
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--space", required=True, help="descriptor, e.g. S5, RP9, S2xS3")
        if m_default is not False:
            s.add_argument("--m", default=m_default, required=m_default is None,
                           help="homotopy degree; comma list for a batch")
        return s

    query("bound", "pi0 verdict (m = 0) or flat-connection rank bound (m >= 1)", "0")
    query("coker", "cokernel rank bound on pi_m", "0")
    query("flat", "flat-connection pi_m rank bound (m >= 1)", None)
    query("pi0", "infinitely many path components?", False)

    s = sub.add_parser("vanish", parents=[common], help="degrees where characteristic classes vanish")
    s.add_argument("--m-param", type=int, required=True)
    s.add_argument("--total-dim", type=int)
    s.add_argument("--space")

    s = sub.add_parser("reduce", parents=[common], help="SU / SO / Spin reduction tests from a class file")
    s.add_argument("--file", required=True)

    def ring_args(s):
        s.add_argument("--space")
        s.add_argument("--ring", help="ring description file (YAML/JSON)")
        s.add_argument("--smash", type=int, default=0, help="smash with S^m first")

    s = sub.add_parser("ch", parents=[common], help="Chern character of Chern data")
    ring_args(s)
    s.add_argument("--dim", default="0")
    s.add_argument("--c", action="append", help="i=class, e.g. 1=t or 2=0,1")

    s = sub.add_parser("realize", parents=[common], help="realize a class in S^m ^ X")
    ring_args(s)
    s.add_argument("--degree", type=int)
    s.add_argument("--coords")
    s.add_argument("--variant", default="U", choices=["U", "SU", "KO", "u", "su", "ko"])
    s.add_argument("--all", action="store_true", help="realize every basis class")

    s = sub.add_parser("holonomy", parents=[common], help="holonomy of a loop word")
    s.add_argument("--presentation", required=True)
    s.add_argument("--rep", required=True)
    s.add_argument("--word", required=True)

    s = sub.add_parser("catalog", parents=[common], help="list catalog models")
    s.add_argument("--space", action="append")
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        result = COMMANDS[args.command](args)
    except (InputError, RingError, UnknownSpace, PresentationError, RepresentationError,
            ValueError, OSError, yaml.YAMLError, KeyError) as e:
        err.write(f"flatclasses {args.command}: error: {e}\n")
        return 2
    code = 0
    if isinstance(result, tuple):
        result, code = result
    emit(result, args.format, out)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
