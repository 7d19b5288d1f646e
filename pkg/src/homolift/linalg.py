"""Exact integer linear algebra and integer polynomial utilities.

Everything here works over plain python ints (arbitrary precision); no
floating point is used.  Matrices are lists of lists, row-major.  Polynomials
are lists of coefficients, lowest degree first, with no trailing zeros
(the zero polynomial is ``[]``).
"""

from fractions import Fraction
from functools import lru_cache


# ---------------------------------------------------------------------------
# basic matrix helpers


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            f = ai[t]
            if f:
                bt = b[t]
                for j in range(m):
                    oi[j] += f * bt[j]
    return out

def mat_vec(a, v):
    return [sum(ai[j] * v[j] for j in range(len(v))) for ai in a]


def vec_mat(v, a):
    m = len(a[0]) if a else 0
    return [sum(v[i] * a[i][j] for i in range(len(v))) for j in range(m)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_eq(a, b):
    return a == b


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_rank_rational(a):
    """Rank over the rationals, by fraction-free elimination."""
    rows = [[Fraction(x) for x in row] for row in a]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / pr[col]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        rank += 1
        col += 1
    return rank


def int_matrix_inverse(u):
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(u)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(u)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    inv = []
    for i in range(n):
        row = []
        for j in range(n, 2 * n):
            x = aug[i][j]
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            row.append(int(x))
        inv.append(row)
    return inv


# ---------------------------------------------------------------------------
# Smith and Hermite normal forms


def smith_normal_form(mat):
    """Return (S, D, T) with S*mat*T = D, S and T unimodular.

    D is diagonal with nonnegative entries satisfying d1 | d2 | ... ; the
    pivot strategy is fixed so the output is reproducible.
    """
    nr = len(mat)
    nc = len(mat[0]) if nr else 0
    d = [list(row) for row in mat]
    s = identity_matrix(nr)
    t = identity_matrix(nc)

    def row_op(i, j, f):  # row_i -= f*row_j   (applied to d and s)
        d[i] = [x - f * y for x, y in zip(d[i], d[j])]
        s[i] = [x - f * y for x, y in zip(s[i], s[j])]

    def col_op(i, j, f):  # col_i -= f*col_j
        for r in range(nr):
            d[r][i] -= f * d[r][j]
        for r in range(nc):
            t[r][i] -= f * t[r][j]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        s[i], s[j] = s[j], s[i]

    def swap_cols(i, j):
        for r in range(nr):
            d[r][i], d[r][j] = d[r][j], d[r][i]
        for r in range(nc):
            t[r][i], t[r][j] = t[r][j], t[r][i]

    k = 0
    while k < min(nr, nc):
        # locate the nonzero entry of smallest absolute value in the
        # remaining block, fixed scan order for determinism
        piv = None
        for i in range(k, nr):
            for j in range(k, nc):
                if d[i][j] and (piv is None or abs(d[i][j]) < abs(d[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(k, piv[0])
        swap_cols(k, piv[1])
        # clear row and column k; restart if a division leaves a remainder
        while True:
            dirty = False
            for i in range(k + 1, nr):
                if d[i][k]:
                    q = d[i][k] // d[k][k]
                    row_op(i, k, q)
                    if d[i][k]:
                        swap_rows(k, i)
                        dirty = True
            for j in range(k + 1, nc):
                if d[k][j]:
                    q = d[k][j] // d[k][k]
                    col_op(j, k, q)
                    if d[k][j]:
                        swap_cols(k, j)
                        dirty = True
            if not dirty:
                break
        # divisibility: d[k][k] must divide every later entry
        culprit = None
        for i in range(k + 1, nr):
            for j in range(k + 1, nc):
                if d[i][j] % d[k][k]:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            row_op(k, culprit, -1)  # fold the offending row in and redo
            continue
        if d[k][k] < 0:
            d[k] = [-x for x in d[k]]
            s[k] = [-x for x in s[k]]
        k += 1
    return s, d, t


def smith_diagonal(d):
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def hermite_row_form(mat):
    """Row-style Hermite normal form: returns (H, U) with U*mat = H.

    Pivots are positive and entries above each pivot are reduced into
    [0, pivot).  Zero rows sink to the bottom.  U is unimodular.
    """
    nr = len(mat)
    nc = len(mat[0]) if nr else 0
    h = [list(row) for row in mat]
    u = identity_matrix(nr)
    r = 0
    for col in range(nc):
        piv = next((i for i in range(r, nr) if h[i][col]), None)
        if piv is None:
            continue
        h[r], h[piv] = h[piv], h[r]
        u[r], u[piv] = u[piv], u[r]
        # gcd out the column below the pivot
        for i in range(r + 1, nr):
            while h[i][col]:
                q = h[r][col] // h[i][col]
                h[r] = [x - q * y for x, y in zip(h[r], h[i])]
                u[r] = [x - q * y for x, y in zip(u[r], u[i])]
                h[r], h[i] = h[i], h[r]
                u[r], u[i] = u[i], u[r]
        if h[r][col] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][col] // h[r][col]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
        if r == nr:
            break
    return h, u


def saturation_complement(rows, dim):
    """Basis rows of a complement of the saturation of span(rows) in Z^dim.

    The returned (dim - rank) x dim matrix, stacked under a basis of the
    saturation, is unimodular.
    """
    if not rows:
        return identity_matrix(dim)
    s, d, t = smith_normal_form([list(r) for r in rows])
    rank = sum(1 for x in smith_diagonal(d) if x)
    tinv = int_matrix_inverse(t)
    # span's saturation is spanned by the first `rank` rows of T^-1
    return tinv[rank:]


# ---------------------------------------------------------------------------
# integer polynomials (lists, lowest degree first)


def poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_divmod_monic(p, q):
    """Divide p by q where q is monic with integer coefficients."""
    if not q or q[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(p)
    dq = len(q) - 1
    quo = [0] * max(0, len(p) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i]
        if c:
            quo[i - dq] = c
            for j in range(dq + 1):
                rem[i - dq + j] -= c * q[j]
    return poly_trim(quo), poly_trim(rem)


def poly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def totient(n):
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1  # x^n - 1
    rem = num
    for d in range(1, n):
        if n % d == 0:
            rem, r = poly_divmod_monic(rem, list(cyclotomic_polynomial(d)))
            assert not r
    return tuple(rem)


def cyclotomic_orders_up_to_degree(deg):
    """All n with totient(n) <= deg, ascending.

    Uses n/totient(n) < 6 for n < 2*10^8 (attained only towards the
    primorial 223092870), so n <= 6*deg + 30 is a safe cutoff.
    """
    if deg < 1:
        return []
    bound = 6 * deg + 30
    return [n for n in range(1, bound + 1) if totient(n) <= deg]


# ---------------------------------------------------------------------------
# exact characteristic polynomial of an integer matrix
#
# Computed modulo several word-size primes via Hessenberg reduction and
# recombined by CRT against a Gershgorin-type coefficient bound.  This keeps
# the cost at O(n^3) per prime instead of the O(n^4) of division-free
# methods.


def _is_probable_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # deterministic for n < 3.3e24 with these bases
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=1)
def _crt_primes():
    primes = []
    n = (1 << 62) + 1
    while len(primes) < 64:
        if _is_probable_prime(n):
            primes.append(n)
        n += 2
    return tuple(primes)


def _charpoly_mod(rows, p):
    """char poly of an integer matrix mod prime p, monic, ascending coeffs."""
    n = len(rows)
    h = [[x % p for x in row] for row in rows]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = pow(h[j + 1][j], p - 2, p)
        for i in range(j + 2, n):
            f = h[i][j] * inv % p
            if f:
                hi, hj1 = h[i], h[j + 1]
                for k in range(j, n):
                    hi[k] = (hi[k] - f * hj1[k]) % p
                for row in h:
                    row[j + 1] = (row[j + 1] + f * row[i]) % p
    # charpoly of leading blocks of the Hessenberg form
    polys = [[1]]
    for i in range(1, n + 1):
        a = h[i - 1][i - 1]
        prev = polys[i - 1]
        cur = [0] * (i + 1)
        for deg, cf in enumerate(prev):
            cur[deg + 1] = (cur[deg + 1] + cf) % p
            cur[deg] = (cur[deg] - a * cf) % p
        beta = 1
        for k in range(i - 1, 0, -1):
            beta = beta * h[k][k - 1] % p
            coef = h[k - 1][i - 1] * beta % p
            if coef:
                pk = polys[k - 1]
                for deg, cf in enumerate(pk):
                    cur[deg] = (cur[deg] - coef * cf) % p
        polys.append(cur)
    return polys[n]


def charpoly_int(rows):
    """Exact characteristic polynomial det(xI - M), ascending coefficients."""
    n = len(rows)
    if n == 0:
        return [1]
    norm = max(1, max(sum(abs(x) for x in row) for row in rows))
    # |e_i(eigenvalues)| <= C(n, i) * norm^i
    bound = 1
    binom = 1
    power = 1
    for i in range(1, n + 1):
        binom = binom * (n - i + 1) // i
        power *= norm
        bound = max(bound, binom * power)
    residues = []
    primes = []
    modulus = 1
    for p in _crt_primes():
        residues.append(_charpoly_mod(rows, p))
        primes.append(p)
        modulus *= p
        if modulus > 2 * bound + 1:
            break
    else:
        raise ResourceWarning("charpoly: prime pool exhausted")
    coeffs = []
    for i in range(n + 1):
        x = 0
        for res, p in zip(residues, primes):
            q = modulus // p
            x += res[i] * q * pow(q, p - 2, p)
        x %= modulus
        if x > modulus // 2:
            x -= modulus
        coeffs.append(x)
    return coeffs
