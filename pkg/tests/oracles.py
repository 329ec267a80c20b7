"""Small independent reference implementations used to cross-check the package.

Everything here works on plain Python lists and integers, without the
package's tables or vectorized code paths.
"""

from itertools import product


def poly_mulmod(a, b, mod, add, mul, neg, zero=0):
    """a * b modulo a monic ``mod`` over a ring given by its operations."""
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = add(out[i + j], mul(x, y))
    d = len(mod) - 1
    for k in range(len(out) - 1, d - 1, -1):
        c = out[k]
        if c != zero:
            for i in range(d + 1):
                out[k - d + i] = add(out[k - d + i], neg(mul(c, mod[i])))
    out = out[:d] + [zero] * max(0, d - len(out))
    return out


def digits(a, base, length):
    out = []
    for _ in range(length):
        out.append(a % base)
        a //= base
    return out


def undigits(ds, base):
    v = 0
    for c in reversed(ds):
        v = v * base + c
    return v


def prime_ops(p):
    return (lambda x, y: (x + y) % p), (lambda x, y: (x * y) % p), (lambda x: (-x) % p)


def ext_mul(a, b, ground_order, mod, ops):
    """Multiply integer-encoded elements of ground[x]/(mod)."""
    d = len(mod) - 1
    add, mul, neg = ops
    r = poly_mulmod(digits(a, ground_order, d), digits(b, ground_order, d), list(mod), add, mul, neg)
    return undigits(r, ground_order)


def ext_add(a, b, ground_order, d, add):
    return undigits([add(x, y) for x, y in zip(digits(a, ground_order, d), digits(b, ground_order, d))],
                    ground_order)


def rank_mod_field(rows, add, mul, inv, neg):
    """Row rank by plain Gaussian elimination on lists."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        iv = inv(M[r][c])
        M[r] = [mul(iv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [add(x, neg(mul(f, y))) for x, y in zip(M[i], M[r])]
        r += 1
    return r


def projective_points(q, d):
    """Normalized points of PG(d, q) as integer tuples (first nonzero coordinate 1)."""
    pts = []
    for v in product(range(q), repeat=d + 1):
        nz = [c for c in v if c]
        if nz and nz[0] == 1:
            pts.append(v)
    return pts


def gaussian_binomial(n, k, q):
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den
