"""Independent rational row reduction for graded pieces of Jacobian ideals
and syzygy modules. Prints the values frozen in the Rust tests."""
from fractions import Fraction
from itertools import product
import sympy as sp

x, y, z = sp.symbols("x y z")


def mono_basis(k):
    return [(i, j, k - i - j) for i in range(k, -1, -1) for j in range(k - i, -1, -1)]


def coeffs(p, k):
    P = sp.Poly(sp.expand(p), x, y, z)
    d = dict(P.terms())
    return [Fraction(int(sp.numer(d.get(m, 0))), int(sp.denom(d.get(m, 0)))) for m in mono_basis(k)]


def rank(rows):
    rows = [r[:] for r in rows if any(r)]
    r = 0
    ncol = len(rows[0]) if rows else 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def partials(f):
    return [sp.diff(f, v) for v in (x, y, z)]


def mono(m):
    return x ** m[0] * y ** m[1] * z ** m[2]


def dim_J(f, k):
    d = sp.Poly(f, x, y, z).total_degree()
    if k < d - 1:
        return 0
    rows = [coeffs(g * mono(m), k) for g in partials(f) for m in mono_basis(k - d + 1)]
    return rank(rows)


def dim_D0(f, k):
    d = sp.Poly(f, x, y, z).total_degree()
    cols = []
    for g in partials(f):
        for m in mono_basis(k):
            cols.append(coeffs(g * mono(m), k + d - 1))
    # columns -> matrix rows are target monomials
    mat = [list(r) for r in zip(*cols)]
    return len(cols) - rank(mat)


if __name__ == "__main__":
    fermat = x**3 + y**3 + z**3
    rows = [coeffs(g * mono(m), 3) for g in partials(fermat) for m in mono_basis(1)]
    print("fermat Macaulay k=3:", len(rows), "x", len(rows[0]), "rank", rank(rows))
    print("dim J_3 x^2y-xz^2:", dim_J(x**2 * y - x * z**2, 3))
    print("D0_0 x^2y-xz^2:", dim_D0(x**2 * y - x * z**2, 0))
    print("fermat D0_1, D0_2:", dim_D0(fermat, 1), dim_D0(fermat, 2))
    f = x * (x * y - z**2)
    print("M(x(xy-z^2)) k<=8:", [len(mono_basis(k)) - dim_J(f, k) for k in range(9)])
    g5 = x * y * (x + y) * (x * y - z**2)
    print("D0 xy(x+y)(xy-z^2) k<=4:", [dim_D0(g5, k) for k in range(5)])
    g4 = x * (x + y) * (x * y - z**2)
    M = [len(mono_basis(k)) - dim_J(g4, k) for k in range(14)]
    print("M(x(x+y)(xy-z^2)) k<=13:", M)
    print("D0 x(x+y)(xy-z^2) k<=4:", [dim_D0(g4, k) for k in range(5)])
