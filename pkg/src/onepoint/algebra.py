"""Sparse exact arithmetic in C[S], C[S_inf] and the finite quotients C[S_i].

Coefficients are :class:`fractions.Fraction`; every identity that matters
here is rational, so nothing complex is needed. Exponents are M-coordinate
tuples or the sentinel :data:`INF`.

An element carries its semigroup, whether it lives over S_inf, and
optionally a quotient level i, in which case it is an element of C[S_i] and
products are truncated (exponents leaving H_i collapse to inf).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import CarrierError, NotInSemigroupError, ParseError
from .semigroup import INF, AffineSemigroup, exponent_key


def _coef(c) -> Fraction:
    if isinstance(c, str):
        return Fraction(c.strip())
    return Fraction(c)


class AlgebraElement:
    __slots__ = ("semigroup", "terms", "over_inf", "level")

    def __init__(self, semigroup: AffineSemigroup, terms=None, over_inf=False, level=None,
                 check=True):
        if level is not None and not over_inf:
            raise CarrierError("quotient algebras C[S_i] only exist over S_inf")
        self.semigroup = semigroup
        self.over_inf = over_inf
        self.level = level
        clean = {}
        for a, c in (terms or {}).items():
            c = _coef(c)
            if a is not INF and not isinstance(a, tuple):
                a = tuple(a)
            if check:
                self._validate(a)
            if c:
                clean[a] = clean.get(a, 0) + c
                if not clean[a]:
                    del clean[a]
        self.terms = clean

    def _validate(self, a):
        S = self.semigroup
        if a is INF:
            if not self.over_inf:
                raise CarrierError("x^inf is not an element of C[S]")
            return
        if len(a) != S.rank:
            raise NotInSemigroupError(f"exponent {list(a)} has the wrong length")
        if not S.contains(a):
            raise NotInSemigroupError(f"exponent {list(a)} is not in S")
        if self.level is not None and S.s_value(a) > self.level:
            raise NotInSemigroupError(f"exponent {list(a)} is not in H_{self.level}")

    def _new(self, terms):
        return AlgebraElement(self.semigroup, terms, self.over_inf, self.level, check=False)

    # -- structure --------------------------------------------------------------

    @property
    def carrier(self) -> str:
        if not self.over_inf:
            return "S"
        return "S_inf" if self.level is None else f"S_{self.level}"

    def _same_ring(self, other):
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"cannot combine an algebra element with {type(other).__name__}")
        if (other.semigroup is not self.semigroup or other.over_inf != self.over_inf
                or other.level != self.level):
            raise CarrierError(f"carrier mismatch: {self.carrier} vs {other.carrier}")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, a) -> Fraction:
        return self.terms.get(a, Fraction(0))

    def coefficient_sum(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def sorted_terms(self) -> list:
        """Terms ordered by (s-value, lex exponent), with inf last."""
        S = self.semigroup
        return sorted(self.terms.items(), key=lambda t: exponent_key(t[0], S.s_value))

    def finite_part(self) -> "AlgebraElement":
        """Drop the inf term and view the rest in C[S]."""
        if self.level is not None:
            raise CarrierError("finite_part is defined on C[S_inf]")
        return AlgebraElement(self.semigroup, {a: c for a, c in self.terms.items() if a is not INF},
                              check=False)

    def to_inf(self) -> "AlgebraElement":
        """Inclusion C[S] -> C[S_inf]."""
        if self.over_inf:
            return self
        return AlgebraElement(self.semigroup, self.terms, over_inf=True, check=False)

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return self + constant(self.semigroup, other, self.over_inf, self.level)
        self._same_ring(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            v = out.get(a, 0) + c
            if v:
                out[a] = v
            else:
                out.pop(a, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scalar_mul(self, c):
        c = _coef(c)
        return self._new({a: c * v for a, v in self.terms.items()} if c else {})

    def _truncate(self, a):
        if a is INF:
            return INF
        if self.level is not None and self.semigroup.s_value(a) > self.level:
            return INF
        return a

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scalar_mul(other)
        self._same_ring(other)
        out = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                k = INF if (a is INF or b is INF) else self._truncate(linalg.add(a, b))
                v = out.get(k, 0) + c * d
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return self._new(out)

    def __rmul__(self, other):
        return self.scalar_mul(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = constant(self.semigroup, 1, self.over_inf, self.level)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            if isinstance(other, (int, Fraction)):
                return self.terms == ({} if other == 0 else {self.semigroup.zero: Fraction(other)})
            return NotImplemented
        return (self.semigroup is other.semigroup and self.over_inf == other.over_inf
                and self.level == other.level and self.terms == other.terms)

    def __hash__(self):
        return hash((id(self.semigroup), self.over_inf, self.level, frozenset(self.terms.items())))

    def __repr__(self):
        return f"<{self.carrier}: {to_text(self)}>"

    def __str__(self):
        return to_text(self)


# -- constructors ---------------------------------------------------------------

def monomial(S, a, c=1, over_inf=False, level=None) -> AlgebraElement:
    return AlgebraElement(S, {tuple(a): c}, over_inf, level)


def constant(S, c, over_inf=False, level=None) -> AlgebraElement:
    return AlgebraElement(S, {S.zero: c}, over_inf, level, check=False)


def chi_inf(S, c=1, level=None) -> AlgebraElement:
    return AlgebraElement(S, {INF: c}, True, level, check=False)


def zero(S, over_inf=False, level=None) -> AlgebraElement:
    return AlgebraElement(S, {}, over_inf, level, check=False)


def binomial(S, a) -> AlgebraElement:
    """chi^a - chi^inf, a generator of the ideals a_i when s(a) > i."""
    return AlgebraElement(S, {tuple(a): 1, INF: -1}, over_inf=True)


# -- the maps psi_i and the ideals -------------------------------------------------

def psi(f: AlgebraElement, i: int) -> AlgebraElement:
    """psi_i: C[S_inf] -> C[S_i] (also C[S_j] -> C[S_i] for j >= i)."""
    if not f.over_inf:
        raise CarrierError("psi is defined on C[S_inf]")
    if f.level is not None and f.level < i:
        raise CarrierError(f"cannot map C[S_{f.level}] to C[S_{i}]")
    S = f.semigroup
    out = {}
    for a, c in f.terms.items():
        k = a if (a is not INF and S.s_value(a) <= i) else INF
        out[k] = out.get(k, 0) + c
    return AlgebraElement(S, out, True, i, check=False)


def in_ideal(f: AlgebraElement, i: int) -> bool:
    """Is f in a_i = ker psi_i?"""
    if f.level is not None:
        raise CarrierError("ideal membership is tested on C[S_inf]")
    return psi(f, i).is_zero()


def in_I_infty(f: AlgebraElement) -> bool:
    """Is f in the annihilator of chi^inf (coefficients summing to zero)?"""
    if not f.over_inf or f.level is not None:
        raise CarrierError("I_inf is an ideal of C[S_inf]")
    return f.coefficient_sum() == 0


def ideal_rewrite(f: AlgebraElement, i: int):
    """Write f as sum of lam_b * (chi^b - chi^inf) with s(b) > i, or return None.

    Independent of :func:`psi`: succeeds exactly when every finite exponent
    has length above i and the coefficients sum to zero. The returned
    combination is verified by re-expansion.
    """
    if not f.over_inf or f.level is not None:
        raise CarrierError("ideal rewriting works in C[S_inf]")
    S = f.semigroup
    combo = []
    for b, c in f.sorted_terms():
        if b is INF:
            continue
        if S.s_value(b) <= i:
            return None
        combo.append((c, b))
    if f.coefficient_sum() != 0:
        return None
    total = zero(S, over_inf=True)
    for c, b in combo:
        total = total + binomial(S, b).scalar_mul(c)
    if total != f:
        raise AssertionError("ideal rewriting failed to reproduce f")
    return combo


# -- text and JSON -----------------------------------------------------------------

def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_exp(a) -> str:
    return "x^inf" if a is INF else "x^[" + ",".join(str(x) for x in a) + "]"


def to_text(f: AlgebraElement) -> str:
    """Render as ``c1*x^[a1] + ... + c*x^inf``; the constant term is a bare number."""
    parts = []
    for a, c in f.sorted_terms():
        mag = abs(c)
        if a is not INF and not any(a):
            body = _fmt_coef(mag)
        elif mag == 1:
            body = _fmt_exp(a)
        else:
            body = f"{_fmt_coef(mag)}*{_fmt_exp(a)}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+(?:/\d+)?)"
    r"|(?P<inf>x\^inf)"
    r"|(?P<exp>x\^\[(?P<coords>[^\]]*)\])"
    r"|(?P<op>[+\-*−])"
    r")"
)


def parse_element(S: AffineSemigroup, text: str, over_inf=False, level=None) -> AlgebraElement:
    """Parse the textual syntax produced by :func:`to_text`.

    Terms are ``c``, ``x^[...]``, ``x^inf`` or ``c*x^[...]``, joined by ``+``
    and ``-``; a leading sign is allowed. Errors carry the offending offset.
    """
    pos = 0
    tokens = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            pos += len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected input at position {pos}: {text[pos:pos + 10]!r}",
                             position=pos)
        start = m.start(m.lastgroup)
        kind = m.lastgroup if m.lastgroup != "coords" else "exp"
        if kind == "op":
            tokens.append(("op", m.group("op").replace("−", "-"), start))
        elif kind == "num":
            tokens.append(("num", Fraction(m.group("num")), start))
        elif kind == "inf":
            tokens.append(("mono", INF, start))
        else:
            raw = m.group("coords")
            try:
                coords = tuple(int(x) for x in raw.split(",")) if raw.strip() else ()
            except ValueError:
                raise ParseError(f"bad exponent at position {start}: [{raw}]", position=start)
            tokens.append(("mono", coords, start))
        pos = m.end()
    if not tokens:
        raise ParseError("empty element", position=0)

    terms = {}
    k = 0
    first = True
    while k < len(tokens):
        sign = 1
        if tokens[k][0] == "op" and tokens[k][1] in "+-":
            sign = -1 if tokens[k][1] == "-" else 1
            k += 1
        elif not first:
            raise ParseError(f"expected + or - at position {tokens[k][2]}", position=tokens[k][2])
        first = False
        if k >= len(tokens):
            raise ParseError("dangling sign at end of input", position=n)
        kind, val, at = tokens[k]
        if kind == "num":
            coef, k = val, k + 1
            if k < len(tokens) and tokens[k][:2] == ("op", "*"):
                k += 1
                if k >= len(tokens) or tokens[k][0] != "mono":
                    raise ParseError(f"expected a monomial after '*' at position {at}", position=at)
                exp, k = tokens[k][1], k + 1
            else:
                exp = S.zero
        elif kind == "mono":
            coef, exp, k = Fraction(1), val, k + 1
        else:
            raise ParseError(f"unexpected {val!r} at position {at}", position=at)
        if exp is not INF and len(exp) != S.rank:
            raise ParseError(f"exponent {list(exp)} at position {at} needs {S.rank} coordinates",
                             position=at)
        terms[exp] = terms.get(exp, 0) + sign * coef
    try:
        return AlgebraElement(S, terms, over_inf, level)
    except (CarrierError, NotInSemigroupError) as exc:
        raise ParseError(str(exc)) from exc


def element_to_json(f: AlgebraElement) -> dict:
    return {
        "carrier": "S_inf" if f.over_inf else "S",
        "level": f.level,
        "terms": [["inf" if a is INF else list(a), _fmt_coef(c)] for a, c in f.sorted_terms()],
    }


def element_from_json(S: AffineSemigroup, obj) -> AlgebraElement:
    carrier = obj.get("carrier", "S")
    if carrier not in ("S", "S_inf"):
        raise ParseError(f"unknown carrier {carrier!r}")
    terms = {}
    for a, c in obj["terms"]:
        key = INF if a == "inf" else tuple(a)
        terms[key] = terms.get(key, 0) + _coef(c)
    return AlgebraElement(S, terms, over_inf=carrier == "S_inf", level=obj.get("level"))


# -- truncated completion towers ---------------------------------------------------

@dataclass(frozen=True)
class CompletionTower:
    """Levels f_0, ..., f_L with f_l in C[S_l]."""

    levels: tuple

    @property
    def top(self) -> int:
        return len(self.levels) - 1


def tower_truncate(S: AffineSemigroup, rule, L: int) -> CompletionTower:
    """Build levels 0..L from ``rule(l)``, an element of C[S_inf] or a term mapping."""
    levels = []
    for l in range(L + 1):
        f = rule(l)
        if not isinstance(f, AlgebraElement):
            f = AlgebraElement(S, f, over_inf=True)
        levels.append(psi(f, l) if f.level is None else f)
    return CompletionTower(tuple(levels))


def first_incompatible_level(t: CompletionTower):
    """Smallest l with psi_{l-1}(f_l) != f_{l-1}, or None if compatible."""
    for l in range(1, len(t.levels)):
        if psi(t.levels[l], l - 1) != t.levels[l - 1]:
            return l
    return None


def tower_compatible(t: CompletionTower) -> bool:
    return first_incompatible_level(t) is None


def tower_limit(t: CompletionTower):
    """An element of C[S_inf] whose psi-images are the tower, if visible at this truncation.

    The tower must have stabilized strictly below the top level (f_L ==
    f_{L-1} termwise); otherwise new terms are still appearing and no
    finite element is certified. Returns None in that case.
    """
    if not tower_compatible(t):
        raise ValueError(f"incompatible tower (level {first_incompatible_level(t)})")
    if t.top < 1:
        return None
    top, below = t.levels[-1], t.levels[-2]
    if top.terms != below.terms:
        return None
    f = AlgebraElement(top.semigroup, top.terms, over_inf=True, check=False)
    assert all(psi(f, l) == lvl for l, lvl in enumerate(t.levels))
    return f


def tower_is_algebraic(t: CompletionTower) -> bool:
    return tower_limit(t) is not None
