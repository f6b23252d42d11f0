"""Binary-form resultants and discriminants, the quartic S/T/D identities,
exact smoothness tests, and singular-point enumeration over finite fields.

The discriminant of a form is the raw Sylvester resultant of its two
partials; no classical rescaling is applied, so comparisons against other
normalizations must state their scalar.  Smoothness of binary forms is an
exact decision (squarefreeness via characteristic-aware gcd).  Point
enumeration over F_{p^e} is a SEMI-DECISION: an empty list does not prove
emptiness over the algebraic closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

from .errors import PreconditionError
from .fields import FP, QQ, ZZ, Domain, is_prime
from .poly import Poly

# -- fraction-free determinants ---------------------------------------------


def _ring_divide(a, b, domain_kind: str):
    if isinstance(a, Poly):
        return a.exact_div(b)
    if domain_kind == "ZZ":
        q, r = divmod(a, b)
        if r != 0:
            raise PreconditionError("non-exact division in Bareiss step")
        return q
    return a / b


def bareiss_det(rows, zero, one, domain_kind: str):
    """Fraction-free determinant; entries may be ring elements or Poly."""
    n = len(rows)
    if n == 0:
        return one
    m = [list(r) for r in rows]
    sign = 1
    prev = one
    for k in range(n - 1):
        if _is_zero_entry(m[k][k]):
            swap = next((i for i in range(k + 1, n)
                         if not _is_zero_entry(m[i][k])), None)
            if swap is None:
                return zero
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = _ring_divide(num, prev, domain_kind)
            m[i][k] = zero
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def _is_zero_entry(x) -> bool:
    return x.is_zero() if isinstance(x, Poly) else x == 0


# -- Sylvester resultants -----------------------------------------------------


def _univariate_coeffs(f: Poly, declared: int) -> list:
    """Coefficient list of f(x, 1), index = power of x, padded to declared."""
    coeffs = [f.domain.zero() for _ in range(declared + 1)]
    for (e0, _e1), c in f.terms.items():
        if e0 > declared:
            raise PreconditionError(
                f"declared degree {declared} below actual x0-degree {e0}")
        coeffs[e0] = coeffs[e0] + c
    return coeffs


def sylvester_matrix(p_coeffs, q_coeffs, m: int, n: int, zero) -> list:
    """(m+n) x (m+n) Sylvester matrix from ascending coefficient lists."""
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + k] = p_coeffs[m - k]
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + k] = q_coeffs[n - k]
        rows.append(row)
    return rows


def sylvester_resultant(p: Poly, q: Poly, deg_p: int | None = None,
                        deg_q: int | None = None):
    """Resultant of two binary forms via the Sylvester determinant.

    Inputs are polynomials in two variables, read as their dehomogenizations
    at x1 = 1; declared degrees default to the homogeneous degree (or the
    x0-degree for already-affine input) and control the matrix size, so
    vanishing leading coefficients mean a root at infinity.  Zero iff the
    forms share a projective root over the algebraic closure.
    """
    for f in (p, q):
        if f.is_zero():
            raise PreconditionError("resultant of the zero polynomial")
        if f.nvars != 2:
            raise PreconditionError("binary forms have exactly two variables")
    if p.domain != q.domain:
        raise PreconditionError(f"domain mismatch: {p.domain} vs {q.domain}")
    m = deg_p if deg_p is not None else _default_degree(p)
    n = deg_q if deg_q is not None else _default_degree(q)
    pc = _univariate_coeffs(p, m)
    qc = _univariate_coeffs(q, n)
    domain = p.domain
    if m + n == 0:
        return domain.one()
    rows = sylvester_matrix(pc, qc, m, n, domain.zero())
    return bareiss_det(rows, domain.zero(), domain.one(), domain.kind)


def _default_degree(f: Poly) -> int:
    d = f.homogeneous_degree
    if d is not None:
        return d
    return max(e0 for (e0, _e1) in f.terms)


# -- discriminants -------------------------------------------------------------


def generic_binary_form(d: int) -> Poly:
    """sum_k a_k * X0^(d-k) * X1^k over ZZ, variables (a_0..a_d, X0, X1)."""
    nv = d + 3
    terms = {}
    for k in range(d + 1):
        exp = [0] * nv
        exp[k] = 1
        exp[d + 1] = d - k
        exp[d + 2] = k
        terms[tuple(exp)] = 1
    return Poly(nv, ZZ, terms)


def _coefficient_polys(f: Poly, d: int, form_degree: int) -> list:
    """Split a (coefficients, X0, X1) polynomial into X0^k-coefficients.

    Entry k is the coefficient of X0^k X1^(form_degree - k), a polynomial in
    the a-variables only.
    """
    nv = d + 1
    out_terms: list[dict] = [dict() for _ in range(form_degree + 1)]
    for exp, c in f.terms.items():
        k = exp[d + 1]
        if exp[d + 2] != form_degree - k:
            raise PreconditionError("entry is not a form of the declared degree")
        out_terms[k][exp[:nv]] = c
    return [Poly(nv, ZZ, t) for t in out_terms]


def discriminant_binary(d: int, mode: str = "generic", form: Poly | None = None):
    """Resultant of the two partials of a degree-d binary form.

    Generic mode (2 <= d <= 6) returns a polynomial in the coefficients
    a_0..a_d over ZZ; numeric mode evaluates the same resultant for a given
    form.  The output is the raw resultant, unscaled.
    """
    if d < 2:
        raise PreconditionError("degree must be at least 2")
    if mode == "generic":
        if d > 6:
            raise PreconditionError("generic discriminants limited to d <= 6")
        f = generic_binary_form(d)
        px = f.partial(d + 1)
        py = f.partial(d + 2)
        pc = _coefficient_polys(px, d, d - 1)
        qc = _coefficient_polys(py, d, d - 1)
        zero = Poly.zero(d + 1, ZZ)
        one = Poly.constant(d + 1, ZZ, 1)
        rows = sylvester_matrix(pc, qc, d - 1, d - 1, zero)
        return bareiss_det(rows, zero, one, "ZZ")
    if mode == "numeric":
        if form is None or form.nvars != 2:
            raise PreconditionError("numeric mode needs a binary form")
        if form.homogeneous_degree != d:
            raise PreconditionError(f"form is not homogeneous of degree {d}")
        px = form.partial(0)
        py = form.partial(1)
        if px.is_zero() or py.is_zero():
            return form.domain.zero()  # a vanishing partial has every root
        return sylvester_resultant(px, py, d - 1, d - 1)
    raise PreconditionError(f"unknown mode {mode!r}")


class QuarticST(NamedTuple):
    S: object
    T: object
    D: object


def quartic_st(coeffs, domain: Domain) -> QuarticST:
    """The degree-2 and degree-3 invariants of a binary quartic and
    D = 4*S^3 - T^2, computed in the given domain."""
    if len(coeffs) != 5:
        raise PreconditionError("a binary quartic has five coefficients")
    a0, a1, a2, a3, a4 = (domain.coerce(c) for c in coeffs)
    s = 12 * a0 * a4 - 3 * a1 * a3 + a2 * a2
    t = (72 * a0 * a2 * a4 - 27 * a0 * a3 * a3 + 9 * a1 * a2 * a3
         - 27 * a1 * a1 * a4 - 2 * a2 * a2 * a2)
    d = 4 * s * s * s - t * t
    return QuarticST(s, t, d)


def quartic_st_generic():
    """Symbolic S, T, D over ZZ in the coefficient variables a_0..a_4."""
    a = [Poly.variable(5, ZZ, i) for i in range(5)]
    s = (a[0] * a[4]).scale(12) - (a[1] * a[3]).scale(3) + a[2] * a[2]
    t = ((a[0] * a[2] * a[4]).scale(72) - (a[0] * a[3] * a[3]).scale(27)
         + (a[1] * a[2] * a[3]).scale(9) - (a[1] * a[1] * a[4]).scale(27)
         - (a[2] * a[2] * a[2]).scale(2))
    d = (s * s * s).scale(4) - t * t
    return s, t, d


# -- univariate gcd and smoothness ----------------------------------------------


def _uni_trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _uni_derivative(c: list, domain: Domain) -> list:
    return _uni_trim([domain.coerce(k) * c[k] for k in range(1, len(c))])


def _uni_mod(a: list, b: list, domain: Domain) -> list:
    """Remainder of a by b over a field (b nonzero)."""
    a = list(a)
    lead_inv = domain.one() / b[-1]
    while len(a) >= len(b):
        factor = a[-1] * lead_inv
        shift = len(a) - len(b)
        if factor != 0:
            for i in range(len(b)):
                a[shift + i] = a[shift + i] - factor * b[i]
        a.pop()
        _uni_trim(a)
        if not a:
            break
    return a


def _uni_gcd(a: list, b: list, domain: Domain) -> list:
    a, b = _uni_trim(list(a)), _uni_trim(list(b))
    while b:
        a, b = b, _uni_mod(a, b, domain)
    return a


def smoothness_binary(f: Poly) -> bool:
    """True iff the form together with both partials has no common projective
    zero over the algebraic closure; equivalently, squarefree for d >= 1.

    Decided exactly: the dehomogenization must be squarefree
    (characteristic-aware gcd with its derivative) and the root at infinity
    must be simple.
    """
    if f.is_zero():
        raise PreconditionError("smoothness of the zero form")
    if f.nvars != 2:
        raise PreconditionError("binary forms have exactly two variables")
    d = f.homogeneous_degree
    if d is None:
        raise PreconditionError("input is not a binary form")
    if d == 0:
        return True
    if f.domain.kind == "ZZ":
        work = Poly(2, QQ, f.terms)
        domain = QQ
    else:
        work = f
        domain = f.domain
    coeffs = [domain.zero()] * (d + 1)
    for (e0, _e1), c in work.terms.items():
        coeffs[e0] = c
    coeffs = _uni_trim(coeffs)
    if d - (len(coeffs) - 1) >= 2:
        return False  # root at infinity with multiplicity >= 2
    if len(coeffs) == 1:
        return True
    g = _uni_gcd(coeffs, _uni_derivative(coeffs, domain), domain)
    return len(g) <= 1


# -- finite extension fields and point enumeration -------------------------------


def _poly_mod_irreducible_test(modulus: list, p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p (Rabin's test)."""
    e = len(modulus) - 1
    if e == 1:
        return True

    def mulmod(a, b):
        """Product mod the monic modulus; fixed-length-e vectors."""
        res = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    res[i + j] = (res[i + j] + ai * bj) % p
        for k in range(2 * e - 2, e - 1, -1):
            c = res[k]
            if c:
                res[k] = 0
                for i in range(e):
                    res[k - e + i] = (res[k - e + i] - c * modulus[i]) % p
        return res[:e]

    def xpow(exp):
        result = [1] + [0] * (e - 1)
        base = [0, 1] + [0] * (e - 2)
        while exp:
            if exp & 1:
                result = mulmod(result, base)
            base = mulmod(base, base)
            exp >>= 1
        return result

    fp = FP(p)
    x = [0, 1] + [0] * (e - 2)
    # x^(p^e) must equal x mod the modulus
    if xpow(p ** e) != x:
        return False
    # and no smaller Frobenius power may fix a nontrivial factor
    for ell in _prime_divisors(e):
        sub = xpow(p ** (e // ell))
        diff = _uni_trim([(a - b) % p for a, b in zip(sub, x)])
        if not diff:
            return False
        g = _uni_gcd([fp.coerce(c) for c in modulus],
                     [fp.coerce(c) for c in diff], fp)
        if len(g) > 1:
            return False
    return True


def _prime_divisors(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class ExtensionField:
    """F_{p^e} as F_p[t] modulo the first irreducible monic polynomial in
    lexicographic coefficient order (constant coefficient first).

    Elements are coefficient tuples of length e; the choice of modulus is a
    deterministic rule so point enumerations are reproducible.
    """

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        if e < 1:
            raise PreconditionError("extension degree must be positive")
        self.p = p
        self.e = e
        self.modulus = self._find_modulus(p, e)
        # reduction table: the vector of t^(e+k) for k = 0..e-2
        self._reduction = []
        tail = [(-c) % p for c in self.modulus[:e]]
        current = tail[:]
        for _ in range(e - 1):
            self._reduction.append(tuple(current))
            carry = current[-1]
            shifted = [0] + current[:-1]
            if carry:
                shifted = [(s + carry * t) % p for s, t in zip(shifted, tail)]
            current = shifted

    @staticmethod
    def _find_modulus(p: int, e: int) -> list:
        for coeffs in product(range(p), repeat=e):
            candidate = list(coeffs) + [1]
            if _poly_mod_irreducible_test(candidate, p):
                return candidate
        raise PreconditionError("no irreducible polynomial found (bug)")

    def zero(self) -> tuple:
        return (0,) * self.e

    def one(self) -> tuple:
        return (1,) + (0,) * (self.e - 1)

    def from_int(self, value: int) -> tuple:
        return (value % self.p,) + (0,) * (self.e - 1)

    def add(self, a: tuple, b: tuple) -> tuple:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a: tuple, b: tuple) -> tuple:
        e, p = self.e, self.p
        conv = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] = (conv[i + j] + ai * bj) % p
        out = conv[:e]
        for k in range(e, 2 * e - 1):
            c = conv[k]
            if c:
                red = self._reduction[k - e]
                out = [(x + c * r) % p for x, r in zip(out, red)]
        return tuple(out)

    def pow(self, a: tuple, k: int) -> tuple:
        result = self.one()
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def elements(self):
        """All field elements in deterministic order (lex on coefficients)."""
        for coeffs in product(range(self.p), repeat=self.e):
            yield coeffs

    def format(self, a: tuple) -> str:
        if not any(a):
            return "0"
        parts = []
        for i, c in enumerate(a):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("t" if c == 1 else f"{c}*t")
            else:
                parts.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
        return " + ".join(parts)


@dataclass(frozen=True)
class ProjPoint:
    """A projective point over F_{p^e}, first nonzero coordinate scaled to 1."""

    coords: tuple
    p: int
    e: int

    def __str__(self):
        field = ExtensionField(self.p, self.e)
        return "(" + " : ".join(field.format(c) for c in self.coords) + ")"


def singular_locus_enumerate(f: Poly, e: int, include_form: bool = False,
                             max_search: int = 10**7) -> list:
    """All points of P^n(F_{p^e}) where every partial of f vanishes
    (optionally f as well).

    SEMI-DECISION: an empty result does not prove emptiness over the
    algebraic closure; larger e only ever add points.
    """
    if f.domain.kind != "FP":
        raise PreconditionError("enumeration needs a prime-field polynomial")
    if f.is_zero() or f.homogeneous_degree is None:
        raise PreconditionError("input must be a nonzero homogeneous form")
    p = f.domain.p
    n1 = f.nvars
    if p ** (e * n1) > max_search:
        raise PreconditionError(
            f"p^(e*(n+1)) = {p ** (e * n1)} exceeds the search limit {max_search}")
    field = ExtensionField(p, e)
    polys = [f.partial(i) for i in range(n1)]
    if include_form:
        polys.append(f)
    polys = [g for g in polys if not g.is_zero()]  # zero imposes no condition
    q_elements = list(field.elements())

    def evaluate(g: Poly, point: list) -> tuple:
        acc = field.zero()
        for exp, c in g.terms.items():
            term = field.from_int(c.residue)
            for i, k in enumerate(exp):
                if k:
                    term = field.mul(term, field.pow(point[i], k))
            acc = field.add(acc, term)
        return acc

    points = []
    for lead in range(n1):
        prefix = [field.zero()] * lead + [field.one()]
        tail_len = n1 - lead - 1
        for tail in product(q_elements, repeat=tail_len):
            point = prefix + list(tail)
            if all(not any(evaluate(g, point)) for g in polys):
                points.append(ProjPoint(tuple(point), p, e))
    return points


def cyclic_critical_exponent(n: int, d: int) -> int:
    """1 - (1-d)^(n+1): the exponent constraining the free coordinate of a
    critical point of the cyclic form X0^(d-1)X1 + ... + Xn^(d-1)X0.

    A zero value marks the degenerate family where the constraint is empty.
    """
    if n < 1 or d < 2:
        raise PreconditionError("need n >= 1 and d >= 2")
    return 1 - (1 - d) ** (n + 1)
