"""Arithmetic in GF(2)[D] with polynomials packed into ints (bit i = coefficient of D^i)."""

from __future__ import annotations

__all__ = [
    "pdeg",
    "pmul",
    "pdivmod",
    "pgcd",
    "pmod",
    "pinv_mod",
    "preverse",
    "valuation",
    "factor",
    "poly_to_str",
    "poly_from_str",
]


def pdeg(p: int) -> int:
    """Degree, with -1 standing in for the zero polynomial."""
    return p.bit_length() - 1


def valuation(p: int) -> int:
    """Largest v with D^v dividing p.  Undefined (returns -1) for zero."""
    return (p & -p).bit_length() - 1


def pmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def pdivmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = pdeg(b)
    while a and pdeg(a) >= db:
        s = pdeg(a) - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def pmod(a: int, b: int) -> int:
    return pdivmod(a, b)[1]


def pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, pmod(a, b)
    return a


def pinv_mod(a: int, m: int) -> int:
    """Inverse of a modulo m; raises if they are not coprime."""
    r0, r1 = m, pmod(a, m)
    s0, s1 = 0, 1
    while r1:
        q, r = pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 ^ pmul(q, s1)
    if r0 != 1:
        raise ZeroDivisionError("not invertible")
    return pmod(s0, m)


def preverse(p: int, width: int) -> int:
    """Reverse the coefficient sequence of p inside the window D^0..D^width."""
    out = 0
    for i in range(width + 1):
        if p >> i & 1:
            out |= 1 << (width - i)
    return out


def factor(p: int) -> list[int]:
    """Irreducible factors of p with multiplicity, by trial division."""
    if p == 0:
        raise ValueError("cannot factor zero")
    out = []
    d = 2
    while p != 1 and pdeg(d) * 2 <= pdeg(p):
        q, r = pdivmod(p, d)
        if r == 0:
            out.append(d)
            p = q
        else:
            d += 1
    if p != 1:
        out.append(p)
    return out


def poly_to_str(p: int) -> str:
    if p == 0:
        return "0"
    terms = []
    for i in range(pdeg(p) + 1):
        if p >> i & 1:
            terms.append("1" if i == 0 else "D" if i == 1 else f"D^{i}")
    return "+".join(terms)


def poly_from_str(text: str) -> int:
    from .errors import ParseError

    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ParseError("empty polynomial")
    p = 0
    for term in s.split("+"):
        if term == "0":
            continue
        if term == "1":
            e = 0
        elif term == "D":
            e = 1
        elif term.startswith("D^") and term[2:].isdigit():
            e = int(term[2:])
        else:
            raise ParseError(f"cannot parse term {term!r} in {text!r}")
        p ^= 1 << e
    return p
