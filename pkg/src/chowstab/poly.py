"""Sparse multivariate polynomials with exact coefficients over ZZ, QQ, or F_p.

Terms live in a dict mapping exponent tuples (one entry per variable) to
nonzero coefficients.  Values are immutable after construction: every
operation builds a new polynomial.  Calculus is characteristic-aware, so a
partial derivative silently kills terms whose exponent vanishes mod p.

The text grammar (whitespace-insensitive):

    poly   := ['-'] term (('+'|'-') term)*
    term   := coeff ['*'] factor ('*' factor)*  |  coeff  |  factor ('*' factor)*
    factor := 'x' INDEX ['^' EXP]
    coeff  := INT ['/' INT]

The printer emits graded-lexicographic order (x0 > x1 > ...) with explicit
'*' and '^', which the parser round-trips.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ParseError, PreconditionError
from .fields import FP, QQ, Domain

Exponent = tuple  # alias: exponent vectors are plain tuples of ints


class Poly:
    """A sparse polynomial over a tagged coefficient domain."""

    __slots__ = ("nvars", "domain", "terms", "homogeneous_degree")

    def __init__(self, nvars: int, domain: Domain, terms: Mapping | None = None):
        if nvars < 1:
            raise PreconditionError("nvars must be positive")
        clean: dict = {}
        if terms:
            for exp, coeff in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise PreconditionError(
                        f"exponent {exp} has length {len(exp)}, expected {nvars}")
                if any(e < 0 or not isinstance(e, int) for e in exp):
                    raise PreconditionError(f"bad exponent {exp}")
                c = domain.coerce(coeff)
                if c == 0:
                    continue
                if exp in clean:
                    c = clean[exp] + c
                    if c == 0:
                        del clean[exp]
                        continue
                clean[exp] = c
        self.nvars = nvars
        self.domain = domain
        self.terms = clean
        degrees = {sum(e) for e in clean}
        self.homogeneous_degree = degrees.pop() if len(degrees) == 1 else None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, domain: Domain) -> "Poly":
        return cls(nvars, domain)

    @classmethod
    def constant(cls, nvars: int, domain: Domain, value) -> "Poly":
        return cls(nvars, domain, {(0,) * nvars: value})

    @classmethod
    def monomial(cls, nvars: int, domain: Domain, exponent, coeff=1) -> "Poly":
        return cls(nvars, domain, {tuple(exponent): coeff})

    @classmethod
    def variable(cls, nvars: int, domain: Domain, i: int) -> "Poly":
        if not 0 <= i < nvars:
            raise PreconditionError(f"variable index {i} out of range")
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, domain, {tuple(exp): 1})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self):
        """Max total degree, or None for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=None)

    def constant_coefficient(self):
        return self.terms.get((0,) * self.nvars, self.domain.zero())

    def support(self) -> frozenset:
        return frozenset(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.nvars == other.nvars
                and self.domain == other.domain and self.terms == other.terms)

    def __len__(self):
        return len(self.terms)

    def _check_compatible(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise PreconditionError(
                f"nvars mismatch: {self.nvars} vs {other.nvars}")
        if self.domain != other.domain:
            raise PreconditionError(
                f"domain mismatch: {self.domain} vs {other.domain}")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check_compatible(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp)
            s = c if s is None else s + c
            if s == 0:
                terms.pop(exp, None)
            else:
                terms[exp] = s
        return Poly(self.nvars, self.domain, terms)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, self.domain,
                    {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check_compatible(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = terms.get(e)
                s = c if s is None else s + c
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return Poly(self.nvars, self.domain, terms)

    def __pow__(self, m: int) -> "Poly":
        if m < 0:
            raise PreconditionError("negative power")
        result = Poly.constant(self.nvars, self.domain, 1)
        base = self
        while m:
            if m & 1:
                result = result * base
            base_needed = m >> 1
            if base_needed:
                base = base * base
            m = base_needed
        return result

    def scale(self, value) -> "Poly":
        c0 = self.domain.coerce(value)
        if c0 == 0:
            return Poly.zero(self.nvars, self.domain)
        return Poly(self.nvars, self.domain,
                    {e: c0 * c for e, c in self.terms.items()})

    def shift_by_variable(self, i: int) -> "Poly":
        """Multiply by the variable x_i (exponent shift, no coefficient work)."""
        terms = {}
        for e, c in self.terms.items():
            e2 = list(e)
            e2[i] += 1
            terms[tuple(e2)] = c
        return Poly(self.nvars, self.domain, terms)

    # -- calculus ------------------------------------------------------------

    def partial(self, i: int) -> "Poly":
        if not 0 <= i < self.nvars:
            raise PreconditionError(f"variable index {i} out of range")
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            c2 = c * e[i]
            if c2 == 0:  # exponent divisible by the characteristic
                continue
            e2 = list(e)
            e2[i] -= 1
            terms[tuple(e2)] = c2
        return Poly(self.nvars, self.domain, terms)

    # -- substitution ----------------------------------------------------------

    def subs(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute images[i] for variable i.  Images share nvars/domain."""
        if len(images) != self.nvars:
            raise PreconditionError("one image per variable required")
        for im in images:
            if im.nvars != images[0].nvars or im.domain != self.domain:
                raise PreconditionError("substitution images are incompatible")
        out_nvars = images[0].nvars
        powers: list[dict] = [dict() for _ in range(self.nvars)]

        def power(i: int, k: int) -> "Poly":
            cached = powers[i].get(k)
            if cached is None:
                if k == 0:
                    cached = Poly.constant(out_nvars, self.domain, 1)
                elif k == 1:
                    cached = images[i]
                else:
                    cached = power(i, k // 2) * power(i, k - k // 2)
                powers[i][k] = cached
            return cached

        acc = Poly.zero(out_nvars, self.domain)
        for e, c in self.terms.items():
            prod = Poly.constant(out_nvars, self.domain, c)
            for i, k in enumerate(e):
                if k:
                    prod = prod * power(i, k)
            acc = acc + prod
        return acc

    def dehomogenize(self, i: int = 0) -> "Poly":
        """Set x_i = 1 and drop the variable (chart of the projective space)."""
        if self.nvars < 2:
            raise PreconditionError("need at least two variables")
        terms: dict = {}
        for e, c in self.terms.items():
            e2 = e[:i] + e[i + 1:]
            s = terms.get(e2)
            s = c if s is None else s + c
            if s == 0:
                terms.pop(e2, None)
            else:
                terms[e2] = s
        return Poly(self.nvars - 1, self.domain, terms)

    def translate(self, point: Sequence) -> "Poly":
        """Shift the origin: substitute x_i + point[i] for x_i."""
        if len(point) != self.nvars:
            raise PreconditionError("point length must equal nvars")
        images = []
        for i, a in enumerate(point):
            im = Poly.variable(self.nvars, self.domain, i)
            a = self.domain.coerce(a)
            if a != 0:
                im = im + Poly.constant(self.nvars, self.domain, a)
            images.append(im)
        return self.subs(images)

    # -- exact division (used by fraction-free determinants) -------------------

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Quotient self/divisor when the division is exact; error otherwise."""
        self._check_compatible(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        remainder = self
        quotient: dict = {}
        div_lead = max(divisor.terms, key=lambda e: (sum(e), e))
        div_lc = divisor.terms[div_lead]
        while not remainder.is_zero():
            lead = max(remainder.terms, key=lambda e: (sum(e), e))
            diff = tuple(a - b for a, b in zip(lead, div_lead))
            if any(d < 0 for d in diff):
                raise PreconditionError("division is not exact")
            lc = remainder.terms[lead]
            if self.domain.kind == "ZZ":
                q, r = divmod(lc, div_lc)
                if r != 0:
                    raise PreconditionError("division is not exact")
            else:
                q = lc / div_lc
            quotient[diff] = q
            remainder = remainder - Poly.monomial(
                self.nvars, self.domain, diff, q) * divisor
        return Poly(self.nvars, self.domain, quotient)

    # -- printing ---------------------------------------------------------------

    def to_string(self, var: str = "x") -> str:
        if not self.terms:
            return "0"
        ordered = sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)
        pieces = []
        for e in ordered:
            c = self.terms[e]
            if self.domain.kind == "FP":
                negative, mag = False, str(c.residue)
                is_one = c.residue == 1
            else:
                negative = c < 0
                mag = str(-c if negative else c)
                is_one = abs(c) == 1
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(f"{var}{i}")
                elif k > 1:
                    factors.append(f"{var}{i}^{k}")
            if not factors:
                body = mag
            elif is_one:
                body = "*".join(factors)
            else:
                body = mag + "*" + "*".join(factors)
            pieces.append((negative, body))
        first_neg, first = pieces[0]
        out = ("-" if first_neg else "") + first
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"Poly({self.domain}, {self.to_string()})"


# -- parsing ---------------------------------------------------------------


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def read_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an integer", position=start + 1)
        return int(self.text[start:self.pos])


def parse_poly(text: str, nvars: int, domain: Domain) -> Poly:
    """Parse polynomial text into a canonical sparse polynomial.

    Raises ParseError with a 1-based column on syntax errors, out-of-range
    variable indices, and (over F_p) denominators divisible by p.
    """
    sc = _Scanner(text)
    terms: dict = {}
    if sc.peek() == "":
        raise ParseError("empty polynomial text", position=1)
    sign = 1
    if sc.peek() == "-":
        sc.take()
        sign = -1
    elif sc.peek() == "+":
        sc.take()
    while True:
        num, den, exps = _parse_term(sc, nvars)
        coeff_pos = sc.pos
        try:
            coeff = domain.from_fraction(sign * num, den)
        except PreconditionError as exc:
            raise ParseError(str(exc), position=coeff_pos) from None
        exp = tuple(exps)
        if exp in terms:
            s = terms[exp] + coeff
            if s == 0:
                del terms[exp]
            else:
                terms[exp] = s
        elif coeff != 0:
            terms[exp] = coeff
        ch = sc.peek()
        if ch == "":
            break
        if ch == "+":
            sign = 1
        elif ch == "-":
            sign = -1
        else:
            raise ParseError(f"unexpected character {ch!r}", position=sc.pos + 1)
        sc.take()
    return Poly(nvars, domain, terms)


def _parse_term(sc: _Scanner, nvars: int):
    num, den = 1, 1
    have_coeff = False
    ch = sc.peek()
    if ch.isdigit():
        num = sc.read_int()
        have_coeff = True
        if sc.peek() == "/":
            sc.take()
            den = sc.read_int()
            if den == 0:
                raise ParseError("zero denominator", position=sc.pos)
        if sc.peek() == "*":
            sc.take()
            if sc.peek() != "x":
                raise ParseError("expected a variable after '*'",
                                 position=sc.pos + 1)
    elif ch != "x":
        raise ParseError(f"expected a term, found {ch!r}" if ch else
                         "expected a term", position=sc.pos + 1)
    exps = [0] * nvars
    saw_factor = False
    while sc.peek() == "x":
        sc.take()
        idx_pos = sc.pos
        idx = sc.read_int()
        if idx >= nvars:
            raise ParseError(f"variable index {idx} out of range (nvars={nvars})",
                             position=idx_pos + 1)
        power = 1
        if sc.peek() == "^":
            sc.take()
            power = sc.read_int()
        exps[idx] += power
        saw_factor = True
        if sc.peek() == "*":
            sc.take()
            if sc.peek() != "x":
                raise ParseError("expected a variable after '*'",
                                 position=sc.pos + 1)
    if not saw_factor and not have_coeff:
        raise ParseError("empty term", position=sc.pos + 1)
    return num, den, exps


# -- the named operations ----------------------------------------------------


def poly_mul(a: Poly, b: Poly) -> Poly:
    """Exact product; over a domain nonzero inputs give a nonzero product."""
    return a * b


def partial_derivative(f: Poly, i: int) -> Poly:
    """Characteristic-aware partial derivative with respect to x_i."""
    return f.partial(i)


def euler_residual(f: Poly) -> Poly:
    """d*f - sum_i x_i * df/dx_i for homogeneous f of degree d.

    Always the zero polynomial; kept as a consistency check on the calculus
    code (both sides may vanish separately when the characteristic divides d).
    """
    if f.is_zero():
        return f
    d = f.homogeneous_degree
    if d is None:
        raise PreconditionError("euler_residual requires a homogeneous polynomial")
    acc = f.scale(d)
    for i in range(f.nvars):
        acc = acc - f.partial(i).shift_by_variable(i)
    return acc


def reduce_mod_p(f: Poly, p: int) -> Poly:
    """Coefficient-wise reduction of a ZZ/QQ polynomial into F_p."""
    if f.domain.kind == "FP":
        raise PreconditionError("input already has positive characteristic")
    target = FP(p)
    return Poly(f.nvars, target, {e: target.coerce(c)
                                  for e, c in f.terms.items()})


def apply_matrix(f: Poly, matrix: Sequence[Sequence]) -> Poly:
    """Pull back f along the linear change x_i -> sum_j M[i][j] * x_j.

    The matrix must be invertible over the coefficient domain; chained
    application composes by matrix product:
    apply_matrix(apply_matrix(f, M), N) == apply_matrix(f, M @ N).
    """
    n = f.nvars
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise PreconditionError(f"matrix must be {n}x{n}")
    rows = [[f.domain.coerce(v) for v in row] for row in matrix]
    if matrix_det(rows, f.domain) == 0:
        raise PreconditionError("matrix is singular")
    images = []
    for i in range(n):
        images.append(Poly(n, f.domain,
                           {tuple(1 if j == k else 0 for k in range(n)): rows[i][j]
                            for j in range(n) if rows[i][j] != 0}))
    return f.subs(images)


def support(f: Poly) -> frozenset:
    """Exponent vectors carrying a nonzero coefficient."""
    return f.support()


def weighted_multiplicity(f: Poly, w: Sequence[int]) -> int:
    """Lowest w-weight among the monomials of f (w >= 0, not all zero)."""
    if f.is_zero():
        raise PreconditionError("weighted multiplicity of the zero polynomial")
    if len(w) != f.nvars:
        raise PreconditionError("weight length must equal nvars")
    if any(x < 0 for x in w) or not any(w):
        raise PreconditionError("weights must be non-negative and not all zero")
    return min_inner_product(f, w)


def min_inner_product(f: Poly, r: Sequence[int]) -> int:
    """min over the support of <r, alpha>; depends only on the support."""
    if f.is_zero():
        raise PreconditionError("zero polynomial has no support")
    return min(sum(ri * ai for ri, ai in zip(r, e)) for e in f.terms)


# -- small exact linear algebra ------------------------------------------------


def matrix_det(rows: Sequence[Sequence], domain: Domain):
    """Exact determinant over the domain (Gaussian elimination in the field)."""
    n = len(rows)
    if domain.kind == "FP":
        work = [[domain.coerce(v) for v in row] for row in rows]
        field = domain
    else:
        work = [[Fraction(v) if not isinstance(v, Fraction) else v
                 for v in (domain.coerce(x) for x in row)] for row in rows]
        field = QQ
    det = field.one()
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            return domain.zero()
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det = det * work[col][col]
        inv = (field.one() / work[col][col]) if field.kind == "FP" \
            else 1 / work[col][col]
        for r in range(col + 1, n):
            if work[r][col] == 0:
                continue
            factor = work[r][col] * inv
            work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    if domain.kind == "ZZ":
        return domain.coerce(det)
    return det


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    n, m, k = len(a), len(b[0]), len(b)
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def identity_matrix(n: int) -> list:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
