"""Polynomial arithmetic used throughout the package.

Two representations are used:

* integer polynomials are tuples of ints, lowest degree first, with no
  trailing zeros (the zero polynomial is the empty tuple);
* polynomials over the field with two elements are Python ints used as bit
  masks (bit ``i`` is the coefficient of ``t^i``).
"""

import re

from .errors import ParseError

ZERO = ()
ONE = (1,)
T = (0, 1)


def trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def monomial(deg, coeff=1):
    if coeff == 0:
        return ZERO
    return (0,) * deg + (coeff,)


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def pneg(a):
    return tuple(-c for c in a)


def psub(a, b):
    return padd(a, pneg(b))


def pscale(a, c):
    if c == 0:
        return ZERO
    return tuple(c * x for x in a)


def pmul(a, b):
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def pmod(a, m):
    """Reduce every coefficient into ``[0, m)``."""
    return trim(c % m for c in a)


def pmul_mod(a, b, m):
    return pmod(pmul(a, b), m)


def pshift(a, k):
    if not a:
        return ZERO
    return (0,) * k + tuple(a)


def psubst(a, k):
    """Substitute ``t -> t^k``."""
    if k == 1 or not a:
        return tuple(a)
    out = [0] * (k * (len(a) - 1) + 1)
    for i, c in enumerate(a):
        out[k * i] = c
    return trim(out)


def pconj(a, minus):
    """Apply the involution: identity, or ``t -> -t`` when ``minus``."""
    if not minus:
        return tuple(a)
    return tuple(-c if i % 2 else c for i, c in enumerate(a))


def peval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pdeg(a):
    return len(a) - 1


def pdivexact(a, d):
    """Divide every coefficient by the integer ``d`` (must be exact)."""
    out = []
    for c in a:
        q, r = divmod(c, d)
        if r:
            raise ValueError("inexact coefficient division")
        out.append(q)
    return trim(out)


def val2(n):
    """2-adic valuation of a nonzero int."""
    return (n & -n).bit_length() - 1


def pval2(a, cap):
    """2-adic content valuation of ``a``, capped at ``cap`` (zero gives cap)."""
    v = cap
    for c in a:
        if c:
            v = min(v, val2(c))
            if v == 0:
                return 0
    return v


def even_odd(a):
    """Split ``a = ev(t^2) + t*od(t^2)`` and return ``(ev, od)``."""
    return trim(a[0::2]), trim(a[1::2])


def is_constant(a):
    return len(a) <= 1


# ---- polynomials over F_2 as bit masks ----


def to_gf2(a):
    m = 0
    for i, c in enumerate(a):
        if c & 1:
            m |= 1 << i
    return m


def from_gf2(m):
    out = []
    while m:
        out.append(m & 1)
        m >>= 1
    return tuple(out)


def gf2_deg(m):
    return m.bit_length() - 1


def gf2_mul(a, b):
    if a.bit_length() > b.bit_length():
        a, b = b, a
    out = 0
    while a:
        if a & 1:
            out ^= b
        a >>= 1
        b <<= 1
    return out


def gf2_divmod(a, b):
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        s = a.bit_length() - db
        q |= 1 << s
        a ^= b << s
    return q, a


def gf2_gcd(a, b):
    while b:
        a, b = b, gf2_divmod(a, b)[1]
    return a


def gf2_xgcd(a, b):
    """Return ``(g, x, y)`` with ``x*a + y*b = g = gcd(a, b)``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = gf2_divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 ^ gf2_mul(q, x1)
        y0, y1 = y1, y0 ^ gf2_mul(q, y1)
    return a, x0, y0


def gf2_subst(m, k):
    out = 0
    i = 0
    while m:
        if m & 1:
            out |= 1 << (k * i)
        m >>= 1
        i += 1
    return out


def gf2_square(m):
    return gf2_subst(m, 2)


def gf2_even_odd(m):
    """Split ``m = ev(t^2) + t*od(t^2)`` over F_2, returning ``(ev, od)``."""
    ev = od = 0
    i = 0
    while m:
        if m & 1:
            ev |= 1 << i
        if m & 2:
            od |= 1 << i
        m >>= 2
        i += 1
    return ev, od


# ---- text format ----

_TERM_RE = re.compile(r"^(\d*)(t(\^(\d+))?)?$")


def _parse_terms(text):
    s = text.replace(" ", "")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        raise ParseError("empty polynomial")
    s = s.replace("+-", "-").replace("-", "+-")
    acc = ZERO
    for part in s.split("+"):
        if part == "":
            continue
        sign = 1
        while part.startswith("-"):
            sign, part = -sign, part[1:]
        m = _TERM_RE.match(part)
        if not m or part == "":
            raise ParseError(f"bad term {part!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        if m.group(2):
            deg = int(m.group(4)) if m.group(4) else 1
        else:
            if not m.group(1):
                raise ParseError(f"bad term {part!r}")
            deg = 0
        acc = padd(acc, monomial(deg, sign * coeff))
    return acc


def parse_value(text):
    """Parse ``poly ('/' '2^' INT)?`` into ``(numerator, k)``.

    Accepts ``/2`` or ``/4`` style power-of-two denominators and optional
    parentheses around the numerator.
    """
    if not isinstance(text, str):
        if isinstance(text, int):
            return (trim([text]), 0)
        raise ParseError(f"not a polynomial string: {text!r}")
    s = text.replace(" ", "")
    k = 0
    if "/" in s:
        num, den = s.rsplit("/", 1)
        if den.startswith("2^"):
            k = int(den[2:])
        else:
            d = int(den)
            if d <= 0 or d & (d - 1):
                raise ParseError(f"denominator {den!r} is not a power of two")
            k = d.bit_length() - 1
        s = num
    return _parse_terms(s), k


def parse_poly(text):
    num, k = parse_value(text)
    if k:
        raise ParseError(f"expected an integral polynomial, got {text!r}")
    return num


def format_poly(a):
    if not a:
        return "0"
    parts = []
    for i, c in enumerate(a):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            var = "t" if i == 1 else f"t^{i}"
            body = var if mag == 1 else f"{mag}{var}"
        parts.append(("-" if c < 0 else "+", body))
    out = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_value(num, k):
    body = format_poly(num)
    if k == 0:
        return body
    if len([c for c in num if c]) > 1:
        body = f"({body})"
    return f"{body}/2^{k}"


def format_gf2(m):
    return format_poly(from_gf2(m))


def parse_gf2(text):
    return to_gf2(parse_poly(text))
