"""The rings Gamma = Z[c]/(relations) and Gamma' = Z[b]/(relations), tensored
with polynomial variables x_i, y_i.

Elements are kept in normal form: every c_lambda / b_lambda monomial has a
strictly decreasing subscript tuple.  Monomials with repeated subscripts are
rewritten confluently using the defining quadratic relations

    c_p^2 + 2 sum_{i=1}^p (-1)^i c_{p+i} c_{p-i} = 0,
    b_p^2 + 2 sum_{i=1}^{p-1} (-1)^i b_{p+i} b_{p-i} + (-1)^p b_{2p} = 0,

so equality of elements is equality of term dictionaries.  An independent
faithful model (Schur Q-functions in finitely many variables) is provided for
cross-checking the rewriting.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .polyring import (
    D_ONE,
    D_ZERO,
    Dyadic,
    SparsePoly,
    _madd,
    _trim,
    complete_sym,
    elem_sym,
    schur_q_generator,
)


@lru_cache(maxsize=None)
def _strictify(family: str, parts: tuple[int, ...]) -> tuple:
    """Rewrite a weakly decreasing subscript tuple into the strict basis.

    Returns a tuple of (strict_parts, integer_coefficient) pairs.  Parts are
    assumed positive.  Termination: each rewrite strictly increases the sum of
    squares of the subscripts, which is bounded by (total degree)^2.
    """
    rep = None
    for i in range(len(parts) - 1):
        if parts[i] == parts[i + 1]:
            rep = parts[i]
            break
    if rep is None:
        return ((parts, 1),)
    rest = list(parts)
    rest.remove(rep)
    rest.remove(rep)
    out: dict = {}
    for a, b, coeff in _square_relation(family, rep):
        new = tuple(sorted(rest + ([a, b] if b > 0 else [a]), reverse=True))
        for strict, c2 in _strictify(family, new):
            out[strict] = out.get(strict, 0) + coeff * c2
    return tuple((k, v) for k, v in out.items() if v)


def _square_relation(family: str, p: int) -> list[tuple[int, int, int]]:
    """c_p^2 (resp. b_p^2) as a combination of (a, b, coeff) with a > p > b >= 0."""
    if family == "c":
        return [(p + i, p - i, 2 * (-1) ** (i + 1)) for i in range(1, p + 1)]
    terms = [(p + i, p - i, 2 * (-1) ** (i + 1)) for i in range(1, p)]
    terms.append((2 * p, 0, (-1) ** (p + 1)))
    return terms


class GammaElement:
    """An element of Gamma[X, Y] (family 'c') or Gamma'[X, Y] (family 'b').

    terms maps (subscripts, x-exponents, y-exponents) to a Dyadic coefficient,
    with the subscript tuple strictly decreasing.  Treated as immutable.
    """

    __slots__ = ("family", "terms")

    def __init__(self, family: str, terms: dict | None = None):
        assert family in ("c", "b")
        self.family = family
        self.terms = terms if terms is not None else {}

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(family: str = "c") -> "GammaElement":
        return GammaElement(family)

    @staticmethod
    def const(c, family: str = "c") -> "GammaElement":
        c = Dyadic(c) if isinstance(c, int) else c
        return GammaElement(family, {((), (), ()): c} if c else {})

    @staticmethod
    def generator(p: int, family: str = "c") -> "GammaElement":
        """c_p or b_p, with subscript 0 meaning 1 and negative meaning 0."""
        if p < 0:
            return GammaElement(family)
        if p == 0:
            return GammaElement.const(1, family)
        return GammaElement(family, {((p,), (), ()): D_ONE})

    @staticmethod
    def from_raw(family: str, raw_terms) -> "GammaElement":
        """Normalize a list of (subscript multiset, x-exps, y-exps, coeff).

        Subscripts may repeat and may be <= 0 (0 is dropped, negative kills
        the term); the result is in normal form.
        """
        out: dict = {}
        for subs, xk, yk, coeff in raw_terms:
            coeff = Dyadic(coeff) if isinstance(coeff, int) else coeff
            if not coeff:
                continue
            subs = tuple(sorted((s for s in subs if s != 0), reverse=True))
            if subs and subs[-1] < 0:
                continue
            key_x, key_y = _trim(tuple(xk)), _trim(tuple(yk))
            for strict, mult in _strictify(family, subs):
                k = (strict, key_x, key_y)
                s = out.get(k, D_ZERO) + coeff * mult
                if s:
                    out[k] = s
                elif k in out:
                    del out[k]
        return GammaElement(family, out)

    @staticmethod
    def from_poly(poly: SparsePoly, family: str = "c") -> "GammaElement":
        """Embed a z-free SparsePoly."""
        t = {}
        for (xk, yk, zk), c in poly.terms.items():
            assert not zk, "cannot embed oracle variables"
            t[((), xk, yk)] = c
        return GammaElement(family, t)

    @staticmethod
    def monomial(xk=(), yk=(), family: str = "c") -> "GammaElement":
        assert all(e >= 0 for e in xk) and all(e >= 0 for e in yk)
        return GammaElement(family, {((), _trim(tuple(xk)), _trim(tuple(yk))): D_ONE})

    # -- ring operations ------------------------------------------------------

    def _check(self, other: "GammaElement"):
        if self.family != other.family:
            raise ValueError(
                f"cannot mix families {self.family!r} and {other.family!r}"
            )

    def __add__(self, other: "GammaElement") -> "GammaElement":
        self._check(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            s = t.get(k)
            s = c if s is None else s + c
            if s:
                t[k] = s
            elif k in t:
                del t[k]
        return GammaElement(self.family, t)

    def __sub__(self, other: "GammaElement") -> "GammaElement":
        return self + (-other)

    def __neg__(self) -> "GammaElement":
        return GammaElement(self.family, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other) -> "GammaElement":
        if isinstance(other, (int, Dyadic)):
            c = Dyadic(other) if isinstance(other, int) else other
            if not c:
                return GammaElement(self.family)
            return GammaElement(self.family, {k: v * c for k, v in self.terms.items()})
        self._check(other)
        out: dict = {}
        for (s1, x1, y1), c1 in self.terms.items():
            for (s2, x2, y2), c2 in other.terms.items():
                subs = tuple(sorted(s1 + s2, reverse=True))
                xk, yk = _madd(x1, x2), _madd(y1, y2)
                c = c1 * c2
                for strict, mult in _strictify(self.family, subs):
                    k = (strict, xk, yk)
                    s = out.get(k, D_ZERO) + c * mult
                    if s:
                        out[k] = s
                    elif k in out:
                        del out[k]
        return GammaElement(self.family, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "GammaElement":
        assert n >= 0
        out = GammaElement.const(1, self.family)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GammaElement)
            and self.family == other.family
            and self.terms == other.terms
        )

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- inspection ------------------------------------------------------------

    def degree(self) -> int:
        return max(
            (sum(s) + sum(x) + sum(y) for s, x, y in self.terms), default=0
        )

    def graded_piece(self, d: int) -> "GammaElement":
        return GammaElement(
            self.family,
            {k: c for k, c in self.terms.items() if sum(k[0]) + sum(k[1]) + sum(k[2]) == d},
        )

    def coeff(self, subs=(), xk=(), yk=()) -> Dyadic:
        return self.terms.get(
            (tuple(subs), _trim(tuple(xk)), _trim(tuple(yk))), D_ZERO
        )

    def constant_term(self) -> Dyadic:
        """chi(f): kill the generators and the x variables (f must be y-free)."""
        assert self.max_yvar() == 0, "constant term only for y-free elements"
        return self.terms.get(((), (), ()), D_ZERO)

    def max_xvar(self) -> int:
        return max((len(x) for _, x, _ in self.terms), default=0)

    def max_yvar(self) -> int:
        return max((len(y) for _, _, y in self.terms), default=0)

    def is_integral(self) -> bool:
        return all(c.is_integer for c in self.terms.values())

    def sorted_terms(self) -> list:
        return sorted(
            self.terms.items(),
            key=lambda kv: (
                sum(kv[0][0]) + sum(kv[0][1]) + sum(kv[0][2]),
                kv[0],
            ),
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (subs, xk, yk), c in self.sorted_terms():
            mono = ""
            if subs:
                mono += f"{self.family}{list(subs)}"
            for name, key in (("x", xk), ("y", yk)):
                for i, e in enumerate(key):
                    if e:
                        mono += f"{name}{i+1}" + (f"^{e}" if e > 1 else "")
            bits.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(bits)

    __repr__ = __str__

    # -- substitutions -----------------------------------------------------------

    def restrict_vars(self, n: int) -> "GammaElement":
        """Set x_j = y_j = 0 for j > n (the primed polynomial)."""
        return GammaElement(
            self.family,
            {
                k: c
                for k, c in self.terms.items()
                if len(k[1]) <= n and len(k[2]) <= n
            },
        )

    def set_y_zero(self) -> "GammaElement":
        return GammaElement(
            self.family, {k: c for k, c in self.terms.items() if not k[2]}
        )

    def negate_x(self) -> "GammaElement":
        """Substitute x_i -> -x_i for all i."""
        return GammaElement(
            self.family,
            {k: (c if sum(k[1]) % 2 == 0 else -c) for k, c in self.terms.items()},
        )

    def permute_x(self, w) -> "GammaElement":
        """Substitute x_i -> sign(w_i) x_{|w_i|} for a type A / signed window.

        Valid as the full ring action only for elements with no generator part
        or when w fixes the generators (e.g. w in S_infinity).
        """
        out: dict = {}
        for (subs, xk, yk), c in self.terms.items():
            new = [0] * max((abs(w(i + 1)) for i in range(len(xk))), default=0)
            sign = 1
            for i, e in enumerate(xk):
                if not e:
                    continue
                img = w(i + 1)
                new[abs(img) - 1] += e
                if img < 0 and e % 2 == 1:
                    sign = -sign
            k = (subs, _trim(tuple(new)), yk)
            s = out.get(k, D_ZERO) + (c if sign == 1 else -c)
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return GammaElement(self.family, out)

    def omega(self) -> "GammaElement":
        """The involution x_j -> -y_j, y_j -> -x_j, fixing the generators."""
        out = {}
        for (subs, xk, yk), c in self.terms.items():
            sign = (-1) ** ((sum(xk) + sum(yk)) % 2)
            out[(subs, yk, xk)] = c * sign
        return GammaElement(self.family, out)

    def with_family(self, family: str) -> "GammaElement":
        """Relabel a generator-free element into the other coefficient ring."""
        if family == self.family:
            return self
        assert all(not s for s, _, _ in self.terms), "element has generator content"
        return GammaElement(family, dict(self.terms))


# ---------------------------------------------------------------------------
# the Weyl group action
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _s0_image(p: int) -> GammaElement:
    """s_0(c_p) = c_p + 2 sum_{j=1}^p x_1^j c_{p-j}."""
    raw = [((p,), (), (), 1)]
    for j in range(1, p + 1):
        raw.append(([p - j], (j,), (), 2))
    return GammaElement.from_raw("c", raw)


@lru_cache(maxsize=None)
def _sbox_image(p: int) -> GammaElement:
    """s_box(b_p) = b_p + (x1+x2) sum_{j=0}^{p-1} h_j(x1,x2) c_{p-1-j}."""
    acc = GammaElement.generator(p, "b")
    lin = GammaElement.from_poly(
        SparsePoly.var("x", 1) + SparsePoly.var("x", 2), "b"
    )
    total = GammaElement.zero("b")
    for j in range(0, p):
        hj = GammaElement.from_poly(complete_sym(2, j, "x"), "b")
        q = p - 1 - j
        cq = GammaElement.generator(q, "b") * (2 if q >= 1 else 1)
        total = total + hj * cq
    return acc + lin * total


def act_generator(i: int, f: GammaElement) -> GammaElement:
    """Apply the simple reflection s_i to f (ring action, y fixed).

    Index 0 means s_0 on family 'c' and the branch reflection on family 'b'.
    """
    if i >= 1:
        out: dict = {}
        for (subs, xk, yk), c in f.terms.items():
            lst = list(xk) + [0] * max(0, i + 1 - len(xk))
            lst[i - 1], lst[i] = lst[i], lst[i - 1]
            k = (subs, _trim(tuple(lst)), yk)
            s = out.get(k, D_ZERO) + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return GammaElement(f.family, out)
    if f.family == "c":
        out_el = GammaElement.zero("c")
        for (subs, xk, yk), c in f.terms.items():
            sign = -1 if (xk and xk[0] % 2 == 1) else 1
            piece = GammaElement("c", {((), xk, yk): c * sign})
            for p in subs:
                piece = piece * _s0_image(p)
            out_el = out_el + piece
        return out_el
    # branch node: (x1, x2) -> (-x2, -x1), b_p transforms by _sbox_image
    out_el = GammaElement.zero("b")
    for (subs, xk, yk), c in f.terms.items():
        a1 = xk[0] if len(xk) >= 1 else 0
        a2 = xk[1] if len(xk) >= 2 else 0
        lst = list(xk) + [0, 0]
        lst[0], lst[1] = a2, a1
        sign = -1 if (a1 + a2) % 2 == 1 else 1
        piece = GammaElement("b", {((), _trim(tuple(lst)), yk): c * sign})
        for p in subs:
            piece = piece * _sbox_image(p)
        out_el = out_el + piece
    return out_el


def weyl_act(w, f: GammaElement) -> GammaElement:
    """Apply a group element (or an int generator index) to f."""
    if isinstance(w, int):
        return act_generator(w, f)
    for i in reversed(w.reduced_word()):
        f = act_generator(i, f)
    return f


# ---------------------------------------------------------------------------
# the indexed entries  {}^k c^{k'}_p  and their hatted variants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CEntrySpec:
    """Descriptor of an indexed generator entry.

    k, kprime are the front and back indices, p the subscript; hatted entries
    (family 'b') carry a correction term controlled by fsign in {+1, -1, 0}:
    the sign of the e_k(X) e_{p-k}(-Y) correction (0 means no correction).
    """

    k: int
    kprime: int
    p: int
    hatted: bool = False
    fsign: int = 0


@lru_cache(maxsize=None)
def c_entry(k: int, kprime: int, p: int, family: str = "c") -> GammaElement:
    """{}^k c^{k'}_p = sum_{i,j} c_{p-j-i} h^{-k}_i(X) h^{k'}_j(-Y).

    In family 'b' the c generators are replaced by their images 2 b_q.
    """
    if p < 0:
        return GammaElement.zero(family)
    out = GammaElement.zero(family)
    for i in range(0, p + 1):
        hx = complete_sym(-k, i, "x")
        if not hx:
            continue
        hxe = GammaElement.from_poly(hx, family)
        for j in range(0, p - i + 1):
            hy = complete_sym(kprime, j, "-y")
            if not hy:
                continue
            q = p - i - j
            gen = GammaElement.generator(q, family)
            if family == "b" and q >= 1:
                gen = gen * 2
            out = out + gen * hxe * GammaElement.from_poly(hy, family)
    return out


@lru_cache(maxsize=None)
def _hat_correction(k: int, m: int, fsign: int, family: str = "b") -> GammaElement:
    """fsign * e^k_k(X) e^m_m(-Y) as a ring element."""
    if fsign == 0 or m < 0 or k < 0:
        return GammaElement.zero(family)
    ex = elem_sym(k, k, "x") if k > 0 else SparsePoly.const(1)
    ey = elem_sym(m, m, "-y") if m > 0 else SparsePoly.const(1)
    return GammaElement.from_poly(ex * ey, family) * fsign


def c_hat_entry(k: int, kprime: int, p: int, fsign: int, family: str = "b") -> GammaElement:
    """{}^k chat^{k'}_p: the plain entry plus fsign * e_k(X) e_{p-k}(-Y) on
    the diagonal k' = k - p <= 0.

    The boundary case k' = 0, p = k contributes the y-free correction
    fsign * e_k(X); keeping it is what makes the Pfaffian formulas match the
    Schubert polynomials on rows with vanishing back index.
    """
    base = c_entry(k, kprime, p, family)
    if kprime == k - p and kprime <= 0 and p >= 0:
        base = base + _hat_correction(k, p - k, fsign, family)
    return base


def entry_from_spec(spec: CEntrySpec, family: str) -> GammaElement:
    if spec.hatted:
        if spec.fsign == 0 and spec.kprime == spec.k - spec.p and spec.kprime < 0:
            raise ValueError("hatted entry requires a resolved f-choice sign")
        return c_hat_entry(spec.k, spec.kprime, spec.p, spec.fsign, family)
    return c_entry(spec.k, spec.kprime, spec.p, family)


# ---------------------------------------------------------------------------
# level-n generator families
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def level_c(n: int, p: int, family: str = "c") -> GammaElement:
    """{}^n c_p = sum_j c_{p-j} e_j(X_n) (the single-variable level-n generator)."""
    return c_entry(n, 0, p, family)


@lru_cache(maxsize=None)
def level_c_double(n: int, p: int) -> GammaElement:
    """{}^n c^n_p, the double (equivariant) level-n generator."""
    return c_entry(n, n, p)


@lru_cache(maxsize=None)
def level_b(n: int, p: int) -> GammaElement:
    """{}^n b_p in Gamma'[X_n] by its defining sum."""
    if p < n:
        out = GammaElement.from_poly(elem_sym(n, p, "x"), "b")
        for j in range(0, p):
            out = out + GammaElement.generator(p - j, "b") * GammaElement.from_poly(
                elem_sym(n, j, "x"), "b"
            ) * 2
        return out
    out = GammaElement.zero("b")
    for j in range(0, p + 1):
        out = out + GammaElement.generator(p - j, "b") * GammaElement.from_poly(
            elem_sym(n, j, "x"), "b"
        )
    return out


@lru_cache(maxsize=None)
def level_b_prime(n: int) -> GammaElement:
    """{}^n b'_n = sum_{j<n} b_{n-j} e_j(X_n)."""
    out = GammaElement.zero("b")
    for j in range(0, n):
        out = out + GammaElement.generator(n - j, "b") * GammaElement.from_poly(
            elem_sym(n, j, "x"), "b"
        )
    return out


@lru_cache(maxsize=None)
def btilde(n: int) -> GammaElement:
    """btilde_n = sum_{j<n} b_{n-j} e_j(-Y_n), a kernel generator in type D."""
    out = GammaElement.zero("b")
    for j in range(0, n):
        out = out + GammaElement.generator(n - j, "b") * GammaElement.from_poly(
            elem_sym(n, j, "-y"), "b"
        )
    return out


def c_to_b(f: GammaElement) -> GammaElement:
    """The embedding Gamma -> Gamma' sending c_p to 2 b_p."""
    assert f.family == "c"
    out = {}
    for (subs, xk, yk), c in f.terms.items():
        out[(subs, xk, yk)] = c.times_pow2(len(subs))
    return GammaElement("b", out)


# ---------------------------------------------------------------------------
# the symmetric-function oracle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OracleElement:
    """Image of a ring element in the Schur Q-function model on Z_N."""

    poly: SparsePoly
    nvars: int


def oracle_embed(f: GammaElement, nvars: int | None = None) -> OracleElement:
    """Faithful model: c_p -> q_p(Z_N), b_p -> q_p(Z_N)/2, x and y unchanged.

    Faithful on the graded piece of generator-degree <= N, so N defaults to
    the total generator degree plus one.
    """
    gdeg = max((sum(s) for s, _, _ in f.terms), default=0)
    if nvars is None:
        nvars = gdeg + 1
    if nvars < gdeg:
        raise ValueError(f"oracle with {nvars} variables is unfaithful at degree {gdeg}")
    out = SparsePoly.zero()
    for (subs, xk, yk), c in f.terms.items():
        piece = SparsePoly({(xk, yk, ()): c})
        for p in subs:
            q = schur_q_generator(p, nvars)
            piece = piece * (q.half() if f.family == "b" else q)
        out = out + piece
    return OracleElement(out, nvars)


def oracle_raw_embed(family: str, raw_terms, nvars: int) -> OracleElement:
    """Embed a raw (un-normalized) expression term by term, bypassing the
    rewriting; used to cross-check normalization."""
    out = SparsePoly.zero()
    for subs, xk, yk, coeff in raw_terms:
        coeff = Dyadic(coeff) if isinstance(coeff, int) else coeff
        piece = SparsePoly({(_trim(tuple(xk)), _trim(tuple(yk)), ()): coeff})
        for p in subs:
            if p < 0:
                piece = SparsePoly.zero()
                break
            if p == 0:
                continue
            q = schur_q_generator(p, nvars)
            piece = piece * (q.half() if family == "b" else q)
        out = out + piece
    return OracleElement(out, nvars)
