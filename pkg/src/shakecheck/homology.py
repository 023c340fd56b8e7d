"""Exact integer homology via Smith normal form.

Covers the homology bookkeeping for surgery presentations and handle
attachments: the zero-surgery 3-manifold of a link, 4-manifolds built
from 2-handles, the algebraic effect of surgering out embedded spheres,
and the capping construction that produces a homology 4-ball.  All
arithmetic is exact (arbitrary-precision integers).
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import DiagramError, LinkDiagram, linking_matrix

Matrix = list  # list of rows of ints


def mat_identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    cols = len(b[0])
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)]
            for i in range(len(a))]


def mat_det(a: Matrix) -> int:
    from .poly import bareiss_det
    return bareiss_det(a, ring="int")


def smith_normal_form(a: Matrix):
    """(U, S, V) with S = U*A*V diagonal, d1 | d2 | ..., U, V unimodular."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    S = [[int(x) for x in row] for row in a]
    U = mat_identity(rows)
    V = mat_identity(cols)

    def row_op(i, j, q):  # row i -= q * row j
        S[i] = [x - q * y for x, y in zip(S[i], S[j])]
        U[i] = [x - q * y for x, y in zip(U[i], U[j])]

    def col_op(i, j, q):  # col i -= q * col j
        for r in range(rows):
            S[r][i] -= q * S[r][j]
        for r in range(cols):
            V[r][i] -= q * V[r][j]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in range(rows):
            S[r][i], S[r][j] = S[r][j], S[r][i]
        for r in range(cols):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    t = 0
    while t < min(rows, cols):
        # pivot: entry of least absolute value in the remaining block
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = abs(S[i][j])
                if v and (best is None or v < best):
                    best, pivot = v, (i, j)
        if pivot is None:
            break
        i, j = pivot
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]

        dirty = False
        for i in range(t + 1, rows):
            if S[i][t]:
                q = S[i][t] // S[t][t]
                row_op(i, t, q)
                if S[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if S[t][j]:
                q = S[t][j] // S[t][t]
                col_op(j, t, q)
                if S[t][j]:
                    dirty = True
        if dirty:
            continue  # new smaller remainders exist; re-pivot this corner

        # divisibility: pivot must divide everything that remains
        fixup = False
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if S[i][j] % S[t][t]:
                    row_op(t, i, -1)  # add row i to row t, then restart corner
                    fixup = True
                    break
            if fixup:
                break
        if fixup:
            continue
        t += 1

    return U, S, V


def _snf_diagonal(a: Matrix) -> list[int]:
    _, S, _ = smith_normal_form(a)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


@dataclass(frozen=True)
class HomologyProfile:
    """Free rank and torsion coefficients per degree (index = degree)."""
    groups: tuple  # ((rank, (d1, d2, ...)), ...)

    @classmethod
    def of(cls, *entries):
        """Build from entries that are ints (free rank) or (rank, torsion)."""
        out = []
        for e in entries:
            if isinstance(e, int):
                out.append((e, ()))
            else:
                rank, tors = e
                out.append((int(rank), tuple(int(t) for t in tors)))
        while out and out[-1] == (0, ()):
            out.pop()
        return cls(tuple(out))

    def group(self, n: int):
        if 0 <= n < len(self.groups):
            return self.groups[n]
        return (0, ())

    def rank(self, n: int) -> int:
        return self.group(n)[0]

    def torsion(self, n: int) -> tuple:
        return self.group(n)[1]

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * r for n, (r, _) in enumerate(self.groups))

    def __str__(self):
        def fmt(n):
            r, tors = self.group(n)
            parts = ["Z^%d" % r if r > 1 else "Z"] * (1 if r else 0)
            parts += ["Z/%d" % t for t in tors]
            return " + ".join(parts) if parts else "0"
        top = len(self.groups)
        return "; ".join("H%d=%s" % (n, fmt(n)) for n in range(top))

    def to_json(self):
        return {"H": [{"rank": r, "torsion": list(t)} for r, t in self.groups]}


def cokernel(a: Matrix, ambient_rank: int):
    """(free rank, torsion) of Z^ambient / image(A), A's columns as generators."""
    if not a or not a[0]:
        return ambient_rank, ()
    diag = _snf_diagonal(a)
    nonzero = [d for d in diag if d]
    torsion = tuple(d for d in nonzero if d > 1)
    return ambient_rank - len(nonzero), torsion


def kernel_rank(a: Matrix) -> int:
    if not a or not a[0]:
        return len(a[0]) if a else 0
    diag = _snf_diagonal(a)
    return len(a[0]) - len([d for d in diag if d])


class ChainComplex:
    """Finitely generated free chain complex with integer boundary maps.

    boundaries[n] maps C_n -> C_{n-1}; entry [i][j] is the coefficient of
    generator i of C_{n-1} in the boundary of generator j of C_n.
    """

    def __init__(self, ranks, boundaries):
        self.ranks = list(ranks)
        self.boundaries = [[list(r) for r in b] for b in boundaries]
        if len(self.boundaries) != len(self.ranks):
            raise DiagramError("need one boundary map per degree")
        for n, b in enumerate(self.boundaries):
            below = self.ranks[n - 1] if n else 0
            if len(b) != below or (b and any(len(r) != self.ranks[n] for r in b)):
                raise DiagramError("boundary map %d has wrong shape" % n)

    def homology(self) -> HomologyProfile:
        entries = []
        for n, dim in enumerate(self.ranks):
            d_n = self.boundaries[n]
            d_up = (self.boundaries[n + 1] if n + 1 < len(self.ranks)
                    else [[0] * 0 for _ in range(dim)])
            # kernel basis of d_n as columns (everything, if the map is zero)
            if n and d_n and d_n[0]:
                U, S, V = smith_normal_form(d_n)
                r = len([i for i in range(min(len(S), len(S[0]))) if S[i][i]])
                kbasis = [[V[row][col] for col in range(r, dim)] for row in range(dim)]
            else:
                kbasis = mat_identity(dim)
                r = 0
            z_rank = dim - r
            img = d_up if (d_up and d_up[0]) else None
            if img is None:
                entries.append((z_rank, ()))
                continue
            x = _solve_exact(kbasis, img)
            entries.append(cokernel(x, z_rank))
        return HomologyProfile.of(*entries)


def _solve_exact(k: Matrix, b: Matrix) -> Matrix:
    """X with K*X = B, where K has full column rank and saturated image."""
    if not k or not k[0]:
        if any(any(row) for row in b):
            raise AssertionError("boundary image does not lie in the kernel")
        return [[0] * (len(b[0]) if b else 0)]
    U, S, V = smith_normal_form(k)
    ncols = len(k[0])
    y = mat_mul(U, b)
    x = []
    for i in range(ncols):
        d = S[i][i]
        row = []
        for j in range(len(y[0])):
            if d == 0:
                if y[i][j]:
                    raise AssertionError("inexact solve: zero invariant factor")
                row.append(0)
            else:
                q, r = divmod(y[i][j], d)
                if r:
                    raise AssertionError("inexact solve: invariant factor %d" % d)
                row.append(q)
        x.append(row)
    for i in range(ncols, len(y)):
        if any(y[i]):
            raise AssertionError("boundary image does not lie in the kernel")
    return mat_mul(V, x)


# -- surgery and handle constructions --------------------------------------

def zero_surgery_homology(d: LinkDiagram) -> HomologyProfile:
    """Homology of the 3-manifold from 0-framed surgery on every component.

    Presented by the linking-framing matrix (zero diagonal, linking numbers
    off it): H1 is its cokernel, H2 the free dual part.
    """
    lam = linking_matrix(d)
    h1 = cokernel(lam, d.m)
    return HomologyProfile.of(1, h1, h1[0], 1)


def handle_homology(spec: dict) -> HomologyProfile:
    """Homology of a 4-manifold built by attaching 2-handles.

    spec: {"base": "B4" | "cylinder" | {"h1_rank": r},
           "two_handles": [[attaching vector], ...] or integer count,
           "framings": [...]}.
    Over "B4" and "cylinder" (product of a 3-sphere with an interval) the
    attaching curves are null-homologous, so only the count matters; over
    an abstract base with free H1 the rows are classes in that H1.
    """
    base = spec.get("base", "B4")
    handles = spec.get("two_handles", [])
    if isinstance(handles, int):
        handles = [[] for _ in range(handles)]
    if not isinstance(handles, list) or not all(isinstance(h, list) for h in handles):
        raise DiagramError("field 'two_handles' must be a count or a list of rows")
    framings = spec.get("framings")
    if framings is not None and len(framings) != len(handles):
        raise DiagramError("field 'framings' length %d != handle count %d"
                           % (len(framings), len(handles)))
    h = len(handles)
    if base == "B4":
        h1_rank, h3 = 0, 0
    elif base == "cylinder":
        h1_rank, h3 = 0, 1
    elif isinstance(base, dict) and "h1_rank" in base:
        h1_rank, h3 = int(base["h1_rank"]), 0
    else:
        raise DiagramError("field 'base' must be 'B4', 'cylinder', or {'h1_rank': r}")
    rows = []
    for row in handles:
        r = [int(x) for x in row]
        if len(r) < h1_rank:
            r += [0] * (h1_rank - len(r))
        elif len(r) > h1_rank:
            raise DiagramError("attaching row longer than base H1 rank %d" % h1_rank)
        rows.append(r)
    # chain model: C2 = Z^h -> C1 = Z^{h1_rank}, plus the base 3-cycle
    attach = [[rows[j][i] for j in range(h)] for i in range(h1_rank)]
    cx = ChainComplex(
        [1, h1_rank, h, h3],
        [[], [[0] * h1_rank], attach if h1_rank else [[] for _ in range(0)],
         [[0] * h3 for _ in range(h)]],
    )
    return cx.homology()


def sphere_surgery_homology(w: HomologyProfile, count: int) -> HomologyProfile:
    """Algebraic effect of surgering out `count` embedded 2-spheres.

    Each surgery trades an H2 generator for an H1 generator (remove a
    2-sphere neighborhood, glue back a circle's worth of 3-balls).
    """
    if count < 0:
        raise DiagramError("sphere count must be nonnegative")
    if (w.group(0) != (1, ()) or w.group(1) != (0, ()) or w.torsion(2)
            or w.group(3) != (1, ())):
        raise DiagramError("profile does not have the 2-handlebody cobordism shape")
    if w.rank(2) < count:
        raise DiagramError("cannot surger %d spheres in H2 of rank %d" % (count, w.rank(2)))
    return HomologyProfile.of(1, count, w.rank(2) - count, 1)


@dataclass(frozen=True)
class BallCheck:
    ok: bool
    capped: HomologyProfile     # after capping with 1-handlebodies
    ball: HomologyProfile       # after attaching meridian 2-handles

    def to_json(self):
        return {"ok": self.ok, "capped": self.capped.to_json(), "ball": self.ball.to_json()}


def homology_ball_verify(m: int) -> BallCheck:
    """Chain-level verification of the homology-ball pipeline for m components.

    Starts from the cobordism profile after m sphere surgeries, caps the
    connected sum of m copies of S1 x S2 with the boundary connected sum of
    m copies of S1 x D3 (a Mayer-Vietoris mapping cone), then attaches a
    0-framed 2-handle along each meridian and checks the result has the
    homology of a 4-ball.
    """
    if m < 0:
        raise DiagramError("component count must be nonnegative")
    if m == 0:
        b4 = HomologyProfile.of(1)
        return BallCheck(True, b4, b4)
    cobordism = handle_homology({"base": "cylinder", "two_handles": 2 * m})
    wbar = sphere_surgery_homology(cobordism, m)
    # Mayer-Vietoris cone over the gluing region (m copies of S1 x S2):
    # degree n carries Wbar_n + cap_n + region_{n-1}; all pieces are free
    # with zero differentials, the cone differential is (inclusion, -inclusion).
    region = [1, m, m, 1]          # S1 x S2 summands
    wbar_ranks = [wbar.rank(n) for n in range(4)]
    cap = [1, m, 0, 0]             # boundary connected sum of S1 x D3
    incl_wbar = {0: [[1]], 1: mat_identity(m), 2: mat_identity(m), 3: [[1]]}
    incl_cap = {0: [[1]], 1: mat_identity(m), 2: [[0] * m for _ in range(0)], 3: []}
    ranks = []
    boundaries = []
    for n in range(5):
        rn = (wbar_ranks[n] if n < 4 else 0) + (cap[n] if n < 4 else 0) + (region[n - 1] if n >= 1 else 0)
        ranks.append(rn)
    for n in range(5):
        below = ranks[n - 1] if n else 0
        mat = [[0] * ranks[n] for _ in range(below)]
        if n >= 1:
            src = region[n - 1]
            col0 = (wbar_ranks[n] if n < 4 else 0) + (cap[n] if n < 4 else 0)
            iw = incl_wbar.get(n - 1, [])
            ic = incl_cap.get(n - 1, [])
            for j in range(src):
                for i in range(wbar_ranks[n - 1]):
                    if iw and i < len(iw) and j < len(iw[i] if iw else []):
                        mat[i][col0 + j] = iw[i][j]
                for i in range(cap[n - 1]):
                    if ic and i < len(ic) and j < len(ic[i] if ic else []):
                        mat[wbar_ranks[n - 1] + i][col0 + j] = -ic[i][j]
        boundaries.append(mat)
    capped = ChainComplex(ranks, boundaries).homology()

    expected_capped = HomologyProfile.of(1, m)
    # attach m 0-framed 2-handles along the meridians; they generate H1
    ball = handle_homology({"base": {"h1_rank": capped.rank(1)},
                            "two_handles": mat_identity(m)})
    expected_ball = HomologyProfile.of(1)
    ok = capped == expected_capped and ball == expected_ball
    return BallCheck(ok, capped, ball)
