"""Command-line front end.

Semigroup specs are JSON objects ``{"ambient_rank": n, "generators": [[...], ...]}``.
Derivation specs are either ``{"components": [{"degree": [...], "phi": [...]}]}``
or ``{"images": {"[2]": "x^[4] + 3", ...}}``; both describe a derivation of C[S]
unless ``"carrier": "S_inf"`` is given. Vectors after the semigroup spec (degrees,
exponents, image keys) are in the coordinates of the lattice ZS reported by
``analyze``.

Every SPEC or DERIV argument may be a file path, ``-`` for stdin, or inline JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog
from .algebra import (
    element_to_json,
    first_incompatible_level,
    parse_element,
    to_text,
    tower_compatible,
    tower_is_algebraic,
    tower_limit,
)
from .classify import OUT_OF_SCOPE, OracleBounds, classify_integrable, oracle_verdict
from .derivation import Derivation, from_components, from_generator_images, lift
from .errors import NotPointedError, OnePointError, ParseError
from .quotient import build_quotient, check_tower
from .semigroup import INF, AffineSemigroup

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_POINTED = 3
EXIT_MISMATCH = 4
EXIT_OUT_OF_SCOPE = 5


class CommandFailed(Exception):
    """Carries a structured result together with a nonzero exit code."""

    def __init__(self, code, payload, message):
        super().__init__(message)
        self.code = code
        self.payload = payload


# -- input ----------------------------------------------------------------------

def read_json(source: str, what: str):
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith(("{", "[")):
        text = source
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {what} {source!r}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{what}: {exc.msg} at line {exc.lineno}, column {exc.colno}",
            position=exc.pos, line=exc.lineno, column=exc.colno,
        ) from exc


def _int_vector(v, what):
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise ParseError(f"{what} must be a list of integers, got {v!r}")
    return tuple(v)


def parse_semigroup_spec(obj) -> AffineSemigroup:
    if not isinstance(obj, dict) or "generators" not in obj:
        raise ParseError('semigroup spec needs a "generators" list')
    gens = obj["generators"]
    if not isinstance(gens, list) or not gens:
        raise ParseError('"generators" must be a nonempty list')
    gens = [_int_vector(g, "generator") for g in gens]
    rank = obj.get("ambient_rank", len(gens[0]))
    if not isinstance(rank, int) or rank < 1:
        raise ParseError('"ambient_rank" must be a positive integer')
    for g in gens:
        if len(g) != rank:
            raise ParseError(f"generator {list(g)} does not have length ambient_rank={rank}")
    return AffineSemigroup(gens, ambient_rank=rank)


def semigroup_spec_json(S: AffineSemigroup) -> dict:
    return {"ambient_rank": S.ambient_rank, "generators": [list(g) for g in S.generators]}


def _parse_key(key: str):
    key = key.strip()
    try:
        v = json.loads(key) if key.startswith("[") else [int(x) for x in key.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad generator key {key!r}") from exc
    return _int_vector(v, "generator key")


def parse_derivation_spec(S: AffineSemigroup, obj) -> Derivation:
    if not isinstance(obj, dict):
        raise ParseError("derivation spec must be a JSON object")
    forms = [k for k in ("components", "images") if k in obj]
    if len(forms) != 1:
        raise ParseError('derivation spec needs exactly one of "components" or "images"')
    carrier = obj.get("carrier", "S")
    if carrier not in ("S", "S_inf"):
        raise ParseError(f'carrier must be "S" or "S_inf", got {carrier!r}')
    on_inf = carrier == "S_inf"
    if "components" in obj:
        comps = []
        for c in obj["components"]:
            if not isinstance(c, dict) or "degree" not in c or "phi" not in c:
                raise ParseError('each component needs "degree" and "phi"')
            phi = c["phi"]
            if not isinstance(phi, list):
                raise ParseError('"phi" must be a list')
            comps.append((_int_vector(c["degree"], "degree"), [str(x) for x in phi]))
        return from_components(S, comps, on_inf=on_inf)
    images = obj["images"]
    if not isinstance(images, dict):
        raise ParseError('"images" must map generators to element strings')
    parsed = {_parse_key(k): parse_element(S, v, over_inf=on_inf) for k, v in images.items()}
    return from_generator_images(S, parsed, on_inf=on_inf)


# -- commands -------------------------------------------------------------------

def _need_pointed(S):
    if not S.pointed:
        raise NotPointedError(f"{S!r} is not pointed, so S_inf is not a topological semigroup")


def cmd_analyze(args):
    S = parse_semigroup_spec(read_json(args.spec, "semigroup spec"))
    out = {
        "ambient_rank": S.ambient_rank,
        "rank": S.rank,
        "lattice_basis": [list(v) for v in S.basis.vectors],
        "generators": [list(g) for g in S.m_generators],
        "dual_rays": [list(r) for r in S.dual_rays],
        "pointed": S.pointed,
    }
    if not S.pointed:
        out["note"] = "not pointed: S_inf is not a topological semigroup"
        return out
    out["positivity"] = list(S.positivity)
    out["hilbert"] = [list(h) for h in S.hilbert_basis()]
    out["s_table"] = [{"element": list(a), "s": S.s_value(a)} for a in S.sublevel(args.max_level)]
    return out


def _fmt_analyze(r):
    lines = [f"rank {r['rank']} (ambient {r['ambient_rank']}), pointed: {r['pointed']}",
             f"lattice basis: {r['lattice_basis']}",
             f"dual rays: {r['dual_rays']}"]
    if not r["pointed"]:
        lines.append(r["note"])
        return lines
    lines += [f"positivity functional: {r['positivity']}", f"Hilbert basis: {r['hilbert']}",
              "s-values:"]
    lines += [f"  {row['element']}: {row['s']}" for row in r["s_table"]]
    return lines


def cmd_roots(args):
    S = parse_semigroup_spec(read_json(args.spec, "semigroup spec"))
    _need_pointed(S)
    out = []
    for root in S.roots(args.box):
        red = S.root_reduction(root.degree, args.box)
        out.append({
            "degree": list(root.degree),
            "ray": list(root.ray),
            "reducible": red is not None,
            "reduction": None if red is None else {"root": list(red[0]), "element": list(red[1])},
            "minus_e_in_S": S.contains(tuple(-x for x in root.degree)),
        })
    return {"box": args.box, "roots": out}


def _fmt_roots(r):
    if not r["roots"]:
        return [f"no roots with max-norm <= {r['box']}"]
    return [f"e={x['degree']} ray={x['ray']}" + (" reducible" if x["reducible"] else "")
            for x in r["roots"]]


def _load_derivation(args, S):
    return parse_derivation_spec(S, read_json(args.derivation, "derivation spec"))


def cmd_classify(args):
    S = parse_semigroup_spec(read_json(args.spec, "semigroup spec"))
    _need_pointed(S)
    d = _load_derivation(args, S)
    if not d.on_inf:
        d = lift(d)
    v = classify_integrable(S, d)
    out = v.to_json()
    if args.verify:
        report = oracle_verdict(S, d, args.bounds, classifier=classify_integrable)
        out["bounds"] = args.bounds.to_json()
        out["oracle"] = report.summary()
        if report.agree is False:
            raise CommandFailed(EXIT_MISMATCH, out, "closed-form verdict and bounded oracle disagree")
    if v.verdict == OUT_OF_SCOPE:
        hint = "; ".join(
            f"component e={list(e)} phi={[str(x) for x in c.form]}" for e, c in d.components.items()
        )
        raise CommandFailed(EXIT_OUT_OF_SCOPE, out,
                            f"{v.note}" + (f". Decomposition: {hint}" if hint else ""))
    return out


def _fmt_classify(r):
    if r["branch"] is None:
        lines = [r["verdict"]]
    else:
        lines = [f"{r['verdict']} ({r['branch']} branch, degree {r['degree']})"]
    if r["note"]:
        lines.append(r["note"])
    w = r["witness"]
    if w:
        where = f"in a_{w['j']}" if w["j"] is not None else "a monomial"
        lines.append(f"witness: f = {w['element']} ({where}); d^{w['n']}(f) = {w['image']} "
                     f"is not in a_{w['i']}")
    if r.get("oracle"):
        o = r["oracle"]
        lines.append(f"oracle: integrable={o['oracle_integrable']} agree={o['agree']} "
                     f"(P2 levels {o['p2']})")
    return lines


def cmd_quotient(args):
    S = parse_semigroup_spec(read_json(args.spec, "semigroup spec"))
    _need_pointed(S)
    if args.level < 0:
        raise ParseError("--level must be nonnegative")
    return build_quotient(S, args.level).to_json()


def _fmt_quotient(r):
    names = ["inf" if x == "inf" else str(x) for x in r["elements"]]
    width = max(len(n) for n in names)
    lines = [f"S_{r['level']}: {len(names)} elements"]
    lines.append(" " * (width + 3) + " ".join(n.rjust(width) for n in names))
    for n, row in zip(names, r["table"]):
        cells = ["inf" if z == "inf" else str(z) for z in row]
        lines.append(f"{n.rjust(width)} | " + " ".join(c.rjust(width) for c in cells))
    return lines


def cmd_apply(args):
    S = parse_semigroup_spec(read_json(args.spec, "semigroup spec"))
    _need_pointed(S)
    d = _load_derivation(args, S)
    want_inf = args.carrier == "S_inf"
    if want_inf and not d.on_inf:
        d = lift(d)
    elif d.on_inf and not want_inf:
        raise ParseError("a derivation of C[S_inf] cannot act on C[S]; use --carrier S_inf")
    if args.iterate < 0:
        raise ParseError("--iterate must be nonnegative")
    f = parse_element(S, args.element, over_inf=want_inf)
    g = d.iterate(f, args.iterate)
    out = element_to_json(g)
    out["text"] = to_text(g)
    return out


def cmd_verify_tower(args):
    S = parse_semigroup_spec(read_json(args.spec, "semigroup spec"))
    _need_pointed(S)
    if args.levels < 1:
        raise ParseError("--levels must be at least 1")
    rep = check_tower(S, args.levels)
    out = {"passed": rep.passed, "levels": rep.levels, "sizes": rep.sizes,
           "threads_checked": rep.threads_checked, "counterexample": None}
    if rep.counterexample:
        kind, level, data = rep.counterexample
        out["counterexample"] = {"kind": kind, "level": level,
                                 "data": [("inf" if x is INF else list(x)) for x in data]}
        raise CommandFailed(EXIT_MISMATCH, out, f"tower check failed: {kind} at level {level}")
    return out


def _fmt_tower(r):
    return [f"tower S_0 <- ... <- S_{r['levels']}: passed={r['passed']}",
            f"sizes: {r['sizes']}", f"threads checked: {r['threads_checked']}"]


def cmd_tower_example(args):
    t = catalog.halving_tower(args.levels)
    lim = tower_limit(t)
    return {
        "levels": [to_text(f) for f in t.levels],
        "compatible": tower_compatible(t),
        "first_incompatible_level": first_incompatible_level(t),
        "algebraic": tower_is_algebraic(t),
        "limit": None if lim is None else to_text(lim),
    }


def _fmt_tower_example(r):
    lines = [f"f_{l} = {f}" for l, f in enumerate(r["levels"])]
    lines.append(f"compatible: {r['compatible']}, algebraic: {r['algebraic']}")
    return lines


def _fmt_json_only(r):
    return [r.get("text", json.dumps(r))]


COMMANDS = {
    "analyze": (cmd_analyze, _fmt_analyze),
    "roots": (cmd_roots, _fmt_roots),
    "classify": (cmd_classify, _fmt_classify),
    "quotient": (cmd_quotient, _fmt_quotient),
    "apply": (cmd_apply, _fmt_json_only),
    "verify-tower": (cmd_verify_tower, _fmt_tower),
    "tower-example": (cmd_tower_example, _fmt_tower_example),
}


def _bounds(text):
    try:
        return OracleBounds.parse(text)
    except (ParseError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--box", type=int, default=3, help="max-norm bound for root search")
    common.add_argument("--bounds", type=_bounds, default=OracleBounds(),
                        help="oracle bounds i_max,j_max,n_max,gen_span (default 3,8,10,4)")

    parser = argparse.ArgumentParser(prog="onepoint",
                                     description="Affine semigroups, S_inf and their derivations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="pointedness, Hilbert basis, s-values")
    p.add_argument("spec")
    p.add_argument("--max-level", type=int, default=3, help="list s-values up to this level")

    p = sub.add_parser("roots", parents=[common], help="Demazure roots within --box")
    p.add_argument("spec")

    p = sub.add_parser("classify", parents=[common], help="topological integrability verdict")
    p.add_argument("spec")
    p.add_argument("derivation")
    p.add_argument("--verify", action="store_true", help="also run the bounded oracle")

    p = sub.add_parser("quotient", parents=[common], help="addition table of S_i")
    p.add_argument("spec")
    p.add_argument("--level", type=int, required=True)

    p = sub.add_parser("apply", parents=[common], help="apply a derivation to an element")
    p.add_argument("spec")
    p.add_argument("derivation")
    p.add_argument("element", help='e.g. "x^[3] - x^inf"')
    p.add_argument("--iterate", type=int, default=1)
    p.add_argument("--carrier", choices=["S", "S_inf"], default="S_inf")

    p = sub.add_parser("verify-tower", parents=[common], help="check S_0 <- ... <- S_L")
    p.add_argument("spec")
    p.add_argument("--levels", type=int, default=4)

    p = sub.add_parser("tower-example", parents=[common],
                       help="a compatible tower whose limit is not algebraic")
    p.add_argument("--levels", type=int, default=5)
    return parser


def _emit(args, payload, formatter, stream):
    if args.json:
        print(json.dumps(payload, indent=2), file=stream)
    else:
        for line in formatter(payload):
            print(line, file=stream)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors already printed by argparse
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    run, fmt = COMMANDS[args.command]
    try:
        payload = run(args)
    except CommandFailed as exc:
        _emit(args, exc.payload, fmt, sys.stdout)
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except NotPointedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_POINTED
    except (OnePointError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    _emit(args, payload, fmt, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
