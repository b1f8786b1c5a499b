"""Topological integrability of quasi-homogeneous derivations of C[S_inf].

Two independent routes:

* :func:`classify_integrable` is the closed-form decision. For a locally
  nilpotent derivation of root degree e it answers ``-e not in S``; otherwise
  it answers ``e != 0`` (for saturated S the same as ``e in S \\ {0}``).
  Negative answers come with a witness that anyone can re-check with
  ``iterate`` and ``in_ideal``.
* the oracles sweep two conditions and continuity over bounded sets of ideal
  generators, multipliers and iteration counts. P1: for each f and i,
  d^n(f) lies in a_i for all large n. P2: for each i some j has
  d^n(a_j) inside a_i for every n.

:func:`oracle_verdict` runs both and reports any disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .algebra import (
    AlgebraElement,
    binomial,
    in_ideal,
    monomial,
    parse_element,
    to_text,
)
from .derivation import Derivation, is_lnd
from .errors import CarrierError, NotPointedError, ParseError
from .lattice import in_cone, pairing
from .semigroup import AffineSemigroup

INTEGRABLE = "integrable"
NOT_INTEGRABLE = "not-integrable"
OUT_OF_SCOPE = "out-of-scope"


@dataclass(frozen=True)
class OracleBounds:
    """Search limits for the bounded oracles.

    Levels i run to i_max, candidate j to j_max, iterates to n_max. The ideal
    a_j is probed by binomials x^(a+b) - x^inf with s(a) in (j, j + gen_span]
    and s(b) <= gen_span, so a pass is evidence, not proof.
    """

    i_max: int = 3
    j_max: int = 8
    n_max: int = 10
    gen_span: int = 4

    def __post_init__(self):
        for name in ("i_max", "j_max", "n_max", "gen_span"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    @classmethod
    def parse(cls, text: str) -> "OracleBounds":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ParseError(f"bounds must be 'i,j,n,span', got {text!r}")
        try:
            return cls(*(int(p) for p in parts))
        except ValueError as exc:
            raise ParseError(f"bad bounds {text!r}: {exc}") from exc

    def to_json(self) -> dict:
        return {"i_max": self.i_max, "j_max": self.j_max, "n_max": self.n_max,
                "gen_span": self.gen_span}


@dataclass(frozen=True)
class Witness:
    """d^n(element) is outside a_i although element lies in a_j.

    For ``kind == "p1-eigen"`` there is no j: the element is a monomial and
    ``eigenvector`` g satisfies d(g) = eigenvalue * g with g outside a_i, so
    every iterate is a nonzero multiple of g and P1 fails.
    """

    kind: str  # "p2-escape" or "p1-eigen"
    element: AlgebraElement
    n: int
    i: int
    j: int | None
    image: AlgebraElement
    eigenvector: AlgebraElement | None = None
    eigenvalue: Fraction | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "element": to_text(self.element), "n": self.n,
               "i": self.i, "j": self.j, "image": to_text(self.image)}
        if self.eigenvector is not None:
            out["eigenvector"] = to_text(self.eigenvector)
            out["eigenvalue"] = str(self.eigenvalue)
        return out

    @classmethod
    def from_json(cls, S, obj) -> "Witness":
        def el(key):
            return parse_element(S, obj[key], over_inf=True)

        return cls(
            kind=obj["kind"], element=el("element"), n=int(obj["n"]), i=int(obj["i"]),
            j=None if obj.get("j") is None else int(obj["j"]), image=el("image"),
            eigenvector=el("eigenvector") if "eigenvector" in obj else None,
            eigenvalue=Fraction(obj["eigenvalue"]) if "eigenvalue" in obj else None,
        )


@dataclass(frozen=True)
class IntegrabilityVerdict:
    verdict: str
    branch: str | None  # "lnd", "non-lnd", or None when out of scope
    degree: tuple | None = None
    witness: Witness | None = None
    oracle_evidence: dict | None = None
    bounds: OracleBounds | None = None
    note: str = ""

    @property
    def integrable(self) -> bool | None:
        if self.verdict == OUT_OF_SCOPE:
            return None
        return self.verdict == INTEGRABLE

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "branch": self.branch,
            "degree": None if self.degree is None else list(self.degree),
            "witness": None if self.witness is None else self.witness.to_json(),
            "bounds": None if self.bounds is None else self.bounds.to_json(),
            "oracle": self.oracle_evidence,
            "note": self.note,
        }

    @classmethod
    def from_json(cls, S, obj) -> "IntegrabilityVerdict":
        b = obj.get("bounds")
        return cls(
            verdict=obj["verdict"],
            branch=obj.get("branch"),
            degree=None if obj.get("degree") is None else tuple(obj["degree"]),
            witness=None if obj.get("witness") is None else Witness.from_json(S, obj["witness"]),
            oracle_evidence=obj.get("oracle"),
            bounds=None if b is None else OracleBounds(**b),
            note=obj.get("note", ""),
        )


def verify_witness(d: Derivation, w: Witness) -> bool:
    image = d.iterate(w.element, w.n)
    if image != w.image or in_ideal(image, w.i):
        return False
    if w.j is not None and not in_ideal(w.element, w.j):
        return False
    if w.kind == "p1-eigen":
        g = w.eigenvector
        if not w.eigenvalue or d.apply(g) != g.scalar_mul(w.eigenvalue) or in_ideal(g, w.i):
            return False
        if image != g.scalar_mul(w.eigenvalue ** w.n):
            return False
    return True


def _lnd_witness(S, d, e) -> Witness:
    # -e is in the Hilbert basis; chi^{3(-e)} - chi^inf lies in a_2 and two
    # steps bring it down to a multiple of chi^{-e} - chi^inf, outside a_1
    i, j = 1, 2
    f = binomial(S, linalg.scale(j + 1, linalg.scale(-1, e)))
    n = j - i + 1
    return Witness("p2-escape", f, n, i, j, d.iterate(f, n))


def _eigen_witness(S, d, comp) -> Witness:
    h = next(h for h in S.hilbert_basis() if comp.value(h) != 0)
    lam = comp.value(h)
    f = monomial(S, h, over_inf=True)
    i = S.s_value(h)
    return Witness("p1-eigen", f, 1, i, None, d.apply(f), binomial(S, h), lam)


def classify_integrable(S: AffineSemigroup, d: Derivation) -> IntegrabilityVerdict:
    """Closed-form integrability verdict for a quasi-homogeneous derivation of C[S_inf]."""
    if not S.pointed:
        raise NotPointedError(f"{S!r} is not pointed")
    if d.semigroup is not S:
        raise ValueError("derivation belongs to a different semigroup")
    if not d.on_inf:
        raise CarrierError("classify a derivation of C[S_inf]; lift it first")
    if d.is_zero():
        return IntegrabilityVerdict(
            OUT_OF_SCOPE, None,
            note="zero derivation has no homogeneous component; it is trivially integrable",
        )
    if not d.is_homogeneous():
        degs = [list(e) for e in d.degrees]
        return IntegrabilityVerdict(
            OUT_OF_SCOPE, None,
            note=f"{len(degs)} homogeneous components {degs}; classify each component separately",
        )
    comp = d.single_component()
    e = comp.degree
    neg = linalg.scale(-1, e)
    if is_lnd(d):
        if S.contains(neg):
            w = _lnd_witness(S, d, e)
            assert verify_witness(d, w), "LND witness failed to verify"
            return IntegrabilityVerdict(NOT_INTEGRABLE, "lnd", e, w,
                                        note="-e lies in S")
        return IntegrabilityVerdict(INTEGRABLE, "lnd", e, note="-e is not in S")
    if not any(e):
        w = _eigen_witness(S, d, comp)
        assert verify_witness(d, w), "degree-0 witness failed to verify"
        return IntegrabilityVerdict(NOT_INTEGRABLE, "non-lnd", e, w,
                                    note="degree 0: iterates never leave a fixed line")
    if S.contains(e):
        return IntegrabilityVerdict(INTEGRABLE, "non-lnd", e, note="e in S \\ {0}")
    if in_cone(e, S.cone):
        u = S.positivity
        heights = [pairing(h, u) for h in S.hilbert_basis()]
        ratio = Fraction(max(heights), min(heights))
        return IntegrabilityVerdict(
            INTEGRABLE, "non-lnd", e,
            note=("e lies in the saturation but not in S; heights never decrease along e, "
                  f"so d^n(a_j) is inside a_i once j >= {ratio} * i"),
        )
    return IntegrabilityVerdict(
        OUT_OF_SCOPE, "non-lnd", e,
        note="non-nilpotent degree outside the cone of S; no criterion applies",
    )


# -- bounded oracles --------------------------------------------------------------

class _Sweep:
    """Shared iterate cache for one derivation and one set of bounds."""

    def __init__(self, d: Derivation, bounds: OracleBounds):
        if not d.on_inf:
            raise CarrierError("oracles run on derivations of C[S_inf]")
        self.d = d
        self.S = d.semigroup
        self.bounds = bounds
        self._binomial_iterates = {}
        top = bounds.j_max + bounds.gen_span
        self.by_s = {}
        for a in self.S.sublevel(top):
            self.by_s.setdefault(self.S.s_value(a), []).append(a)

    def iterates(self, f: AlgebraElement):
        out = [f]
        for _ in range(self.bounds.n_max):
            out.append(self.d.apply(out[-1]) if out[-1] else out[-1])
        return out

    def binomial_iterates(self, c):
        if c not in self._binomial_iterates:
            self._binomial_iterates[c] = self.iterates(binomial(self.S, c))
        return self._binomial_iterates[c]

    def generator_products(self, j):
        """Exponents a + b with s(a) in (j, j + span] and s(b) <= span."""
        span = self.bounds.gen_span
        gens = [a for s in range(j + 1, j + span + 1) for a in self.by_s.get(s, [])]
        mults = [b for s in range(0, span + 1) for b in self.by_s.get(s, [])]
        for a in gens:
            for b in mults:
                yield a, b, linalg.add(a, b)


@dataclass
class P1Result:
    passed: bool
    n0: dict = field(default_factory=dict)  # level -> first n after which all iterates lie in a_i
    failed_level: int | None = None
    escaping_n: int | None = None


def oracle_p1(d: Derivation, f: AlgebraElement, bounds: OracleBounds = OracleBounds(),
              _sweep=None) -> P1Result:
    """Bounded P1: for each i <= i_max, d^n(f) in a_i for all n in [n0, n_max]."""
    sweep = _sweep or _Sweep(d, bounds)
    its = sweep.iterates(f)
    res = P1Result(True)
    for i in range(bounds.i_max + 1):
        outside = [n for n, g in enumerate(its) if not in_ideal(g, i)]
        last = outside[-1] if outside else -1
        if last == bounds.n_max:
            res.passed = False
            res.failed_level, res.escaping_n = i, last
            return res
        res.n0[i] = last + 1
    return res


@dataclass
class P2Result:
    passed: bool
    i: int
    j: int | None = None
    # j -> (generator exponent a, multiplier exponent b, n) of the first escape
    escapes: dict = field(default_factory=dict)

    def witness(self, S, j=None):
        """The escaping element chi^(a+b) - chi^inf for level j (default: first failing j)."""
        if not self.escapes:
            return None
        j = min(self.escapes) if j is None else j
        a, b, n = self.escapes[j]
        return binomial(S, linalg.add(a, b)), n


def oracle_p2(d: Derivation, i: int, bounds: OracleBounds = OracleBounds(), _sweep=None) -> P2Result:
    """Bounded P2 at level i: find j <= j_max with d^n(a_j) inside a_i.

    Tested elements are chi^b (chi^a - chi^inf) with s(a) in (j, j + span],
    s(b) <= span, and 0 <= n <= n_max.
    """
    sweep = _sweep or _Sweep(d, bounds)
    res = P2Result(False, i)
    for j in range(bounds.j_max + 1):
        escape = None
        for a, b, c in sweep.generator_products(j):
            for n, g in enumerate(sweep.binomial_iterates(c)):
                if not in_ideal(g, i):
                    escape = (a, b, n)
                    break
            if escape:
                break
        if escape is None:
            res.passed, res.j = True, j
            return res
        res.escapes[j] = escape
    return res


@dataclass
class ContinuityResult:
    passed: bool
    j_for: dict = field(default_factory=dict)  # level i -> smallest working j
    failed_level: int | None = None


def oracle_continuity(d: Derivation, bounds: OracleBounds = OracleBounds(),
                      _sweep=None) -> ContinuityResult:
    """Bounded continuity: for each i <= i_max some j <= j_max has d(a_j) inside a_i."""
    sweep = _sweep or _Sweep(d, bounds)
    res = ContinuityResult(True)
    for i in range(bounds.i_max + 1):
        for j in range(bounds.j_max + 1):
            if all(in_ideal(sweep.binomial_iterates(c)[1] if bounds.n_max >= 1
                            else d.apply(binomial(sweep.S, c)), i)
                   for _, _, c in sweep.generator_products(j)):
                res.j_for[i] = j
                break
        else:
            res.passed, res.failed_level = False, i
            return res
    return res


@dataclass
class OracleReport:
    classified: IntegrabilityVerdict
    oracle_integrable: bool
    continuity: ContinuityResult
    p1: dict  # exponent -> P1Result
    p2: dict  # level -> P2Result
    witness_verified: bool | None
    agree: bool | None
    note: str = ""

    def summary(self) -> dict:
        p1_fail = [list(a) for a, r in self.p1.items() if not r.passed]
        return {
            "oracle_integrable": self.oracle_integrable,
            "continuity": self.continuity.passed,
            "p1": not p1_fail,
            "p1_failures": p1_fail,
            "p2": {str(i): (r.j if r.passed else None) for i, r in self.p2.items()},
            "witness_verified": self.witness_verified,
            "agree": self.agree,
            "note": self.note,
        }


def oracle_verdict(S: AffineSemigroup, d: Derivation, bounds: OracleBounds = OracleBounds(),
                   classifier=classify_integrable) -> OracleReport:
    """Run continuity, P1 on monomials of length <= span, and P2 for i <= i_max,
    then compare with ``classifier``."""
    sweep = _Sweep(d, bounds)
    cont = oracle_continuity(d, bounds, _sweep=sweep)
    p1 = {}
    for s in range(bounds.gen_span + 1):
        for a in sweep.by_s.get(s, []):
            p1[a] = oracle_p1(d, monomial(S, a, over_inf=True), bounds, _sweep=sweep)
    p2 = {i: oracle_p2(d, i, bounds, _sweep=sweep) for i in range(bounds.i_max + 1)}
    oracle_ok = cont.passed and all(r.passed for r in p1.values()) and all(
        r.passed for r in p2.values())
    verdict = classifier(S, d)
    wv = None if verdict.witness is None else verify_witness(d, verdict.witness)
    if verdict.verdict == OUT_OF_SCOPE:
        agree = None
        note = "classifier out of scope; oracle result reported alone"
    else:
        agree = (verdict.verdict == INTEGRABLE) == oracle_ok and wv is not False
        note = "" if agree else "closed form and bounded oracle disagree"
    return OracleReport(verdict, oracle_ok, cont, p1, p2, wv, agree, note)

