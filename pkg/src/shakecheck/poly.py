"""Exact polynomial arithmetic: Z[z] values and Laurent polynomials over Z.

Laurent polynomials are dicts mapping exponent -> nonzero int coefficient.
Determinants use fraction-free Bareiss elimination so everything stays in
exact integer arithmetic.
"""

from __future__ import annotations


class ConwayPolynomial:
    """Integer polynomial in z, coefficients stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(int(x) for x in c)

    def coefficient(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, int):
            other = ConwayPolynomial([other])
        return isinstance(other, ConwayPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return ConwayPolynomial([self.coefficient(k) + other.coefficient(k) for k in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return ConwayPolynomial([self.coefficient(k) - other.coefficient(k) for k in range(n)])

    def shift(self, k: int) -> "ConwayPolynomial":
        """Multiply by z^k."""
        if self.is_zero():
            return self
        return ConwayPolynomial((0,) * k + self.coeffs)

    def to_json(self):
        return list(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                z = "z" if k == 1 else "z^%d" % k
                if c == 1:
                    parts.append(z)
                elif c == -1:
                    parts.append("-" + z)
                else:
                    parts.append("%d%s" % (c, z))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


ZERO = ConwayPolynomial()
ONE = ConwayPolynomial([1])
Z = ConwayPolynomial([0, 1])


# -- Laurent polynomials over Z -------------------------------------------

def lp(pairs) -> dict:
    out = {}
    for e, c in pairs:
        if c:
            out[e] = out.get(e, 0) + c
            if not out[e]:
                del out[e]
    return out


def lp_add(f, g):
    out = dict(f)
    for e, c in g.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        elif e in out:
            del out[e]
    return out


def lp_sub(f, g):
    return lp_add(f, {e: -c for e, c in g.items()})


def lp_mul(f, g):
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = e1 + e2
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            elif e in out:
                del out[e]
    return out


def lp_div_exact(f, g):
    """Exact division in Z[x, 1/x]; raises if the division is not exact."""
    if not g:
        raise ZeroDivisionError("Laurent division by zero")
    if not f:
        return {}
    shift_f = min(f)
    shift_g = min(g)
    fd = {e - shift_f: c for e, c in f.items()}
    gd = {e - shift_g: c for e, c in g.items()}
    dg = max(gd)
    lead_g = gd[dg]
    q = {}
    rem = dict(fd)
    while rem:
        dr = max(rem)
        if dr < dg:
            raise ArithmeticError("inexact Laurent division (degree)")
        lead_r = rem[dr]
        if lead_r % lead_g:
            raise ArithmeticError("inexact Laurent division (leading coefficient)")
        qc = lead_r // lead_g
        qe = dr - dg
        q[qe] = q.get(qe, 0) + qc
        for e, c in gd.items():
            ee = e + qe
            v = rem.get(ee, 0) - qc * c
            if v:
                rem[ee] = v
            elif ee in rem:
                del rem[ee]
    return {e + shift_f - shift_g: c for e, c in q.items() if c}


def bareiss_det(matrix, ring="int"):
    """Fraction-free determinant.  ring is 'int' or 'laurent'."""
    n = len(matrix)
    if n == 0:
        return 1 if ring == "int" else {0: 1}
    if ring == "int":
        m = [[int(x) for x in row] for row in matrix]
        zero, one = 0, 1
        mul, sub, div = (lambda a, b: a * b), (lambda a, b: a - b), (lambda a, b: _int_div_exact(a, b))
        is_zero = lambda a: a == 0
        neg = lambda a: -a
    else:
        m = [[dict(x) for x in row] for row in matrix]
        zero, one = {}, {0: 1}
        mul, sub, div = lp_mul, lp_sub, lp_div_exact
        is_zero = lambda a: not a
        neg = lambda a: {e: -c for e, c in a.items()}

    sign = 1
    prev = one
    for k in range(n - 1):
        if is_zero(m[k][k]):
            pivot_row = next((i for i in range(k + 1, n) if not is_zero(m[i][k])), None)
            if pivot_row is None:
                return zero
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = sub(mul(m[i][j], m[k][k]), mul(m[i][k], m[k][j]))
                m[i][j] = div(num, prev)
            m[i][k] = zero
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return neg(det) if sign < 0 else det


def _int_div_exact(a, b):
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("inexact integer division in Bareiss step")
    return q


def laurent_to_z_poly(f) -> ConwayPolynomial:
    """Rewrite a Laurent polynomial as a polynomial in z = x - 1/x.

    Raises if f is not in the subring Z[x - 1/x]; the rewrite is the final
    step of the Seifert-matrix route to the Conway polynomial.
    """
    f = dict(f)
    coeffs = {}
    zpow = {0: {0: 1}}  # (x - 1/x)^d

    def zp(d):
        while d not in zpow:
            k = max(zpow) + 1
            zpow[k] = lp_sub(lp_mul(zpow[k - 1], {1: 1}), lp_mul(zpow[k - 1], {-1: 1}))
        return zpow[d]

    while f:
        d = max(f)
        if d < 0:
            raise ArithmeticError("Laurent polynomial is not symmetric in x -> -1/x")
        coeffs[d] = f[d]
        f = lp_sub(f, {e: f[d] * c for e, c in zp(d).items()})
    out = [0] * (max(coeffs) + 1 if coeffs else 0)
    for d, c in coeffs.items():
        out[d] = c
    return ConwayPolynomial(out)
