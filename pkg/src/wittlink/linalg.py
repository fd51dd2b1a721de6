"""Linear algebra over F_2[t] and over Z/2^n[t].

Matrices over F_2[t] are lists of rows of bit-mask ints. Matrices over
Z/2^n[t] are lists of rows of integer polynomial tuples.
"""

from dataclasses import dataclass

from . import poly as P


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def gf2_matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = [0] * cols
        for k in range(inner):
            a = row[k]
            if a:
                bk = B[k]
                for j in range(cols):
                    if bk[j]:
                        new[j] ^= P.gf2_mul(a, bk[j])
        out.append(new)
    return out


def gf2_matvec(A, x):
    out = []
    for row in A:
        acc = 0
        for a, b in zip(row, x):
            if a and b:
                acc ^= P.gf2_mul(a, b)
        out.append(acc)
    return out


@dataclass
class SnfResult:
    """``U * A * V = D`` with ``D`` diagonal, ``d_1 | d_2 | ...``."""

    U: list
    D: list
    V: list
    Uinv: list
    Vinv: list
    rank: int

    def diagonal(self):
        return [self.D[i][i] for i in range(self.rank)]


def smith_normal_form(A, ncols=None):
    m = len(A)
    n = len(A[0]) if A else (ncols or 0)
    D = [list(row) for row in A]
    U, Uinv, V, Vinv = identity(m), identity(m), identity(n), identity(n)

    def row_add(i, t, q):
        # row_i += q * row_t
        if not q:
            return
        Dt, Di = D[t], D[i]
        for j in range(n):
            if Dt[j]:
                Di[j] ^= P.gf2_mul(q, Dt[j])
        Ut, Ui = U[t], U[i]
        for j in range(m):
            if Ut[j]:
                Ui[j] ^= P.gf2_mul(q, Ut[j])
        for row in Uinv:
            if row[i]:
                row[t] ^= P.gf2_mul(q, row[i])

    def col_add(j, t, q):
        # col_j += q * col_t
        if not q:
            return
        for row in D:
            if row[t]:
                row[j] ^= P.gf2_mul(q, row[t])
        for row in V:
            if row[t]:
                row[j] ^= P.gf2_mul(q, row[t])
        Vt, Vj = Vinv[t], Vinv[j]
        for k in range(n):
            if Vj[k]:
                Vt[k] ^= P.gf2_mul(q, Vj[k])

    def row_swap(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]
            for row in Uinv:
                row[i], row[j] = row[j], row[i]

    def col_swap(i, j):
        if i != j:
            for row in D:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    rank = 0
    for t in range(min(m, n)):
        best = None
        for j in range(t, n):
            for i in range(t, m):
                e = D[i][j]
                if e and (best is None or e.bit_length() < best[0]):
                    best = (e.bit_length(), i, j)
        if best is None:
            break
        row_swap(t, best[1])
        col_swap(t, best[2])
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    row_add(i, t, P.gf2_divmod(D[i][t], p)[0])
            for j in range(t + 1, n):
                if D[t][j]:
                    col_add(j, t, P.gf2_divmod(D[t][j], p)[0])
            best = None
            for i in range(t + 1, m):
                e = D[i][t]
                if e and (best is None or e.bit_length() < best[0]):
                    best = (e.bit_length(), i, "r")
            for j in range(t + 1, n):
                e = D[t][j]
                if e and (best is None or e.bit_length() < best[0]):
                    best = (e.bit_length(), j, "c")
            if best is not None:
                if best[2] == "r":
                    row_swap(t, best[1])
                else:
                    col_swap(t, best[1])
                continue
            bad = None
            if p != 1:
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if D[i][j] and P.gf2_divmod(D[i][j], p)[1]:
                            bad = i
                            break
                    if bad is not None:
                        break
            if bad is None:
                break
            row_add(t, bad, 1)
        rank += 1
    return SnfResult(U, D, V, Uinv, Vinv, rank)


def gf2_solve(A, b, ncols=None):
    """Solve ``A x = b`` over F_2[t].

    Returns ``(x, kernel_basis)`` or ``None`` when inconsistent.
    """
    n = len(A[0]) if A else (ncols or 0)
    if not A:
        return [0] * n, [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    snf = smith_normal_form(A, n)
    c = gf2_matvec(snf.U, b)
    z = [0] * n
    for i in range(snf.rank):
        q, r = P.gf2_divmod(c[i], snf.D[i][i])
        if r:
            return None
        z[i] = q
    if any(c[i] for i in range(snf.rank, len(c))):
        return None
    x = gf2_matvec(snf.V, z)
    kernel = [[snf.V[i][j] for i in range(n)] for j in range(snf.rank, n)]
    return x, kernel


def gf2_kernel(A, ncols=None):
    n = len(A[0]) if A else (ncols or 0)
    return gf2_solve(A, [0] * len(A), n)[1]


# ---- Z/2^n[t] ----


def matvec_mod(B, y, mod):
    out = []
    for row in B:
        acc = P.ZERO
        for a, b in zip(row, y):
            if a and b:
                acc = P.padd(acc, P.pmul(a, b))
        out.append(P.pmod(acc, mod))
    return out


def combine(coeffs, vectors, mods):
    """``sum_l coeffs[l] * vectors[l]`` reduced coordinatewise by ``mods``."""
    width = len(mods)
    acc = [P.ZERO] * width
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for i in range(width):
            if v[i]:
                acc[i] = P.padd(acc[i], P.pmul(c, v[i]))
    return tuple(P.pmod(a, m) for a, m in zip(acc, mods))


def solve_mod2k(B, x, n, ncols):
    """Solve ``B y = x`` over ``Z/2^n[t]`` by 2-adic lifting.

    Returns ``(particular, kernel_generators)`` where the generators span the
    homogeneous solutions as a module, or ``None`` if inconsistent.
    """
    mod = 1 << n
    mods = [mod] * ncols
    y = tuple(P.ZERO for _ in range(ncols))
    gens = [tuple(P.ONE if i == j else P.ZERO for i in range(ncols)) for j in range(ncols)]
    if not B:
        return y, [g for g in gens if any(g)]
    for j in range(n):
        residual = [P.pmod(P.psub(xi, bi), mod) for xi, bi in zip(x, matvec_mod(B, y, mod))]
        r = [P.to_gf2(P.pdivexact(c, 1 << j)) for c in residual]
        images = [matvec_mod(B, g, mod) for g in gens]
        C = [[P.to_gf2(P.pdivexact(images[l][i], 1 << j)) for l in range(len(gens))]
             for i in range(len(B))]
        sol = gf2_solve(C, r, len(gens))
        if sol is None:
            return None
        w, kernel = sol
        y = combine([P.from_gf2(c) for c in w] + [P.ONE], list(gens) + [y], mods)
        new = []
        for kv in kernel:
            new.append(combine([P.from_gf2(c) for c in kv], gens, mods))
        new.extend(tuple(P.pmod(P.pscale(c, 2), mod) for c in g) for g in gens)
        seen = set()
        gens = []
        for g in new:
            if any(g) and g not in seen:
                seen.add(g)
                gens.append(g)
    return y, gens


def solve_mod4(A, b):
    if not A:
        return None
    return solve_mod2k(A, b, 2, len(A[0]))


def local_smith(rows, width, n):
    """Smith form over Z[t] localised at 2, modulo ``2^n``.

    Returns ``(V, d)`` such that the span of ``rows`` over the localisation
    equals ``{y : (y V)_i in 2^{d_i}}``; ``V`` has integer polynomial entries.
    """
    mod = 1 << n
    A = [[P.pmod(c, mod) for c in row] for row in rows]
    V = [[P.ONE if i == j else P.ZERO for j in range(width)] for i in range(width)]
    d = [n] * width
    m = len(A)
    for t in range(width):
        best = None
        for i in range(t, m):
            for j in range(t, width):
                e = A[i][j]
                if e:
                    key = (P.pval2(e, n), len(e), j, i)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        v, _, bj, bi = best
        A[t], A[bi] = A[bi], A[t]
        if bj != t:
            for row in A:
                row[t], row[bj] = row[bj], row[t]
            for row in V:
                row[t], row[bj] = row[bj], row[t]
        u = P.pdivexact(A[t][t], 1 << v)
        for i in range(t + 1, m):
            if A[i][t]:
                c = P.pdivexact(A[i][t], 1 << v)
                A[i] = [P.pmod(P.psub(P.pmul(u, a), P.pmul(c, b)), mod)
                        for a, b in zip(A[i], A[t])]
        for j in range(t + 1, width):
            if A[t][j]:
                c = P.pdivexact(A[t][j], 1 << v)
                for row in A:
                    row[j] = P.pmod(P.psub(P.pmul(u, row[j]), P.pmul(c, row[t])), mod)
                for row in V:
                    row[j] = P.pmod(P.psub(P.pmul(u, row[j]), P.pmul(c, row[t])), mod)
        d[t] = v
    return V, d
