"""Finite root systems and Weyl groups on explicit integer lattices.

Roots are stored as integer covectors (linear functionals on Z^r, written as
coefficient tuples) and coroots as integer vectors in Z^r.  This makes
quasi-split diagram twists and lattice quotients plain integer linear algebra.
All arithmetic is exact: Python ints and fractions.Fraction, never floats.

The finite Weyl group is materialized as an indexed table at construction
time (matrices, root permutations, lex-least reduced words), in the style of
precomputed permutation tables: elements are ints, group operations are list
lookups.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

__all__ = [
    "CartanError",
    "LatticeQuotient",
    "ReflectionOrder",
    "RootDatum",
    "cartan_matrix",
    "load_root_datum",
    "make_gl_datum",
    "smith_normal_form",
    "vadd",
    "vneg",
    "vscale",
    "vsub",
]

WEYL_SIZE_CAP = 60_000


class CartanError(ValueError):
    """Raised for invalid Cartan data, lattices or diagram automorphisms."""


# ---------------------------------------------------------------------------
# small exact vector helpers (tuples over Z or Q)

def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def vscale(c, a):
    return tuple(c * x for x in a)


def dot(mu, cov):
    """Pairing <mu, beta> of a (co)weight vector with a root covector."""
    return sum(m * c for m, c in zip(mu, cov))


def mat_vec(m, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def covec_mat(cov, m):
    """The covector v -> cov(m @ v), i.e. row-vector times matrix."""
    n = len(cov)
    return tuple(sum(cov[i] * m[i][j] for i in range(n)) for j in range(n))


# ---------------------------------------------------------------------------
# Cartan matrices, convention: cartan[i][j] = <alpha_j_vee, alpha_i>

def cartan_matrix(type_str: str) -> list[list[int]]:
    """Cartan matrix of an irreducible type string such as "A3" or "G2"."""
    letter, n = type_str[0].upper(), int(type_str[1:])
    if letter == "A" and n >= 1:
        pairs = [(i, i + 1) for i in range(n - 1)]
        special: dict[tuple[int, int], int] = {}
    elif letter == "B" and n >= 2:
        # alpha_n short: <alpha_n_vee, alpha_{n-1}> = -2
        pairs = [(i, i + 1) for i in range(n - 1)]
        special = {(n - 2, n - 1): -2}
    elif letter == "C" and n >= 2:
        pairs = [(i, i + 1) for i in range(n - 1)]
        special = {(n - 1, n - 2): -2}
    elif letter == "D" and n >= 4:
        pairs = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        special = {}
    elif letter == "E" and n in (6, 7, 8):
        # Bourbaki: chain 1-3-4-5-...-n with node 2 attached to 4
        chain = [(0, 2), (2, 3), (3, 4), (4, 5)]
        if n >= 7:
            chain.append((5, 6))
        if n == 8:
            chain.append((6, 7))
        pairs = chain + [(1, 3)]
        special = {}
    elif letter == "F" and n == 4:
        pairs = [(0, 1), (1, 2), (2, 3)]
        special = {(1, 2): -2}
    elif letter == "G" and n == 2:
        # alpha_1 short, alpha_2 long
        pairs = [(0, 1)]
        special = {(1, 0): -3}
    else:
        raise CartanError(f"unsupported Cartan type {type_str!r}")
    cm = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in pairs:
        cm[i][j] = special.get((i, j), -1)
        cm[j][i] = special.get((j, i), -1)
    return cm


def _check_cartan(cm) -> None:
    n = len(cm)
    for i in range(n):
        if cm[i][i] != 2:
            raise CartanError("Cartan diagonal entries must equal 2")
        for j in range(n):
            if i != j:
                if cm[i][j] > 0 or (cm[i][j] == 0) != (cm[j][i] == 0):
                    raise CartanError("not a generalized Cartan matrix")


# ---------------------------------------------------------------------------
# Smith normal form and lattice quotients

def smith_normal_form(rows: list[list[int]]):
    """Return (d, u) with u unimodular and u @ A having Smith form.

    A is given by `rows` (list of length-r integer rows; the matrix whose
    COLUMNS generate the sublattice is A^T, so callers pass generators as
    rows).  Only the left transform is returned: column operations do not
    change the column span, so u alone computes quotient coordinates.
    """
    # We bring the matrix with the generators as COLUMNS to triangular-ish
    # diagonal form d via row ops (tracked in u) and column ops (untracked).
    if rows:
        r = len(rows[0])
    else:
        r = 0
    a = [[rows[j][i] for j in range(len(rows))] for i in range(r)]  # r x m
    m = len(rows)
    u = [list(row) for row in mat_identity(r)]

    def row_op(i1, i2, c):  # row[i1] += c * row[i2]
        for t in range(m):
            a[i1][t] += c * a[i2][t]
        for t in range(r):
            u[i1][t] += c * u[i2][t]

    def row_swap(i1, i2):
        a[i1], a[i2] = a[i2], a[i1]
        u[i1], u[i2] = u[i2], u[i1]

    def col_op(j1, j2, c):
        for t in range(r):
            a[t][j1] += c * a[t][j2]

    def col_swap(j1, j2):
        for t in range(r):
            a[t][j1], a[t][j2] = a[t][j2], a[t][j1]

    diag = []
    i = j = 0
    while i < r and j < m:
        # find smallest nonzero pivot in the remaining block
        best = None
        for ii in range(i, r):
            for jj in range(j, m):
                if a[ii][jj] and (best is None or abs(a[ii][jj]) < abs(a[best[0]][best[1]])):
                    best = (ii, jj)
        if best is None:
            break
        row_swap(i, best[0])
        col_swap(j, best[1])
        while True:
            dirty = False
            for ii in range(i + 1, r):
                if a[ii][j]:
                    row_op(ii, i, -(a[ii][j] // a[i][j]))
                    if a[ii][j]:
                        row_swap(i, ii)
                        dirty = True
            for jj in range(j + 1, m):
                if a[i][jj]:
                    col_op(jj, j, -(a[i][jj] // a[i][j]))
                    if a[i][jj]:
                        col_swap(j, jj)
                        dirty = True
            if not dirty:
                break
        diag.append(abs(a[i][j]))
        i += 1
        j += 1
    return diag, [tuple(row) for row in u]


def snf_full(rows: list[list[int]]):
    """Full Smith normal form: returns (diag, u, v) with u @ A @ v diagonal,
    u and v unimodular.  A is the matrix with the given rows."""
    n = len(rows)
    m = len(rows[0]) if rows else 0
    a = [list(r) for r in rows]
    u = [list(r) for r in mat_identity(n)] if n else []
    v = [list(r) for r in mat_identity(m)] if m else []

    def row_op(i1, i2, c):
        for t in range(m):
            a[i1][t] += c * a[i2][t]
        for t in range(n):
            u[i1][t] += c * u[i2][t]

    def col_op(j1, j2, c):
        for t in range(n):
            a[t][j1] += c * a[t][j2]
        for t in range(m):
            v[t][j1] += c * v[t][j2]

    def row_swap(i1, i2):
        a[i1], a[i2] = a[i2], a[i1]
        u[i1], u[i2] = u[i2], u[i1]

    def col_swap(j1, j2):
        for t in range(n):
            a[t][j1], a[t][j2] = a[t][j2], a[t][j1]
        for t in range(m):
            v[t][j1], v[t][j2] = v[t][j2], v[t][j1]

    diag = []
    i = 0
    while i < min(n, m):
        best = None
        for ii in range(i, n):
            for jj in range(i, m):
                if a[ii][jj] and (best is None or abs(a[ii][jj]) < abs(a[best[0]][best[1]])):
                    best = (ii, jj)
        if best is None:
            break
        row_swap(i, best[0])
        col_swap(i, best[1])
        while True:
            dirty = False
            for ii in range(i + 1, n):
                if a[ii][i]:
                    row_op(ii, i, -(a[ii][i] // a[i][i]))
                    if a[ii][i]:
                        row_swap(i, ii)
                        dirty = True
            for jj in range(i + 1, m):
                if a[i][jj]:
                    col_op(jj, i, -(a[i][jj] // a[i][i]))
                    if a[i][jj]:
                        col_swap(i, jj)
                        dirty = True
            if not dirty:
                break
        diag.append(abs(a[i][i]))
        i += 1
    return diag, [tuple(r) for r in u], [tuple(r) for r in v]


def integral_solve(rows, b):
    """Some integer solution x of A x = b, or None (A given by rows)."""
    diag, u, v = snf_full(rows)
    n = len(rows)
    m = len(rows[0]) if rows else 0
    ub = mat_vec(tuple(u), tuple(b)) if n else ()
    z = [0] * m
    for i in range(n):
        if i < len(diag) and diag[i]:
            if ub[i] % diag[i]:
                return None
            z[i] = ub[i] // diag[i]
        elif ub[i]:
            return None
    return mat_vec(tuple(v), tuple(z)) if m else ()


def integral_kernel_basis(rows):
    """Basis of the integer kernel of A (A given by rows)."""
    diag, _u, v = snf_full(rows)
    m = len(rows[0]) if rows else 0
    rank = sum(1 for d in diag if d)
    basis = []
    for j in range(rank, m):
        basis.append(tuple(v[t][j] for t in range(m)))
    return basis


@dataclass(frozen=True)
class LatticeQuotient:
    """Z^r modulo the sublattice spanned by `generators`, via Smith form.

    class_of is additive, surjective, and kills exactly the generated
    sublattice.  Classes are canonical tuples: torsion coordinates reduced
    mod their elementary divisor, free coordinates kept as integers.
    """

    rank: int
    generators: tuple[tuple[int, ...], ...]
    divisors: tuple[int, ...]
    transform: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, rank: int, generators) -> "LatticeQuotient":
        gens = tuple(tuple(g) for g in generators)
        for g in gens:
            if len(g) != rank:
                raise ValueError("generator has wrong ambient dimension")
        if gens:
            diag, u = smith_normal_form([list(g) for g in gens])
        else:
            diag, u = [], mat_identity(rank)
        divisors = tuple(diag) + (0,) * (rank - len(diag))
        return cls(rank, gens, divisors, tuple(u))

    def class_of(self, v) -> tuple[int, ...]:
        if len(v) != self.rank:
            raise ValueError("vector has wrong ambient dimension")
        w = mat_vec(self.transform, tuple(v))
        out = []
        for x, d in zip(w, self.divisors):
            if d == 1:
                continue  # trivial factor
            out.append(x % d if d else x)
        return tuple(out)

    @property
    def is_trivial(self) -> bool:
        return all(d == 1 for d in self.divisors)

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.divisors if d > 1]
        parts += ["Z"] * sum(1 for d in self.divisors if d == 0)
        return " x ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Weyl group table

class WeylGroup:
    """Indexed finite Weyl group acting on the coweight lattice Z^r.

    Elements are ints; 0 is the identity.  Tables give right/left products
    with simple reflections, inverses, lengths, lex-least reduced words and
    the (signed) permutation action on the list of positive roots.
    """

    def __init__(self, simple_refl_mats, root_covs, root_action_of_simple):
        n_simple = len(simple_refl_mats)
        n_pos = len(root_covs)
        mats = [mat_identity(len(simple_refl_mats[0]) if simple_refl_mats else 1)]
        index = {mats[0]: 0}
        words: list[tuple[int, ...]] = [()]
        # signed image of positive root p: value in [0, 2*n_pos), p+n_pos = -p
        perms: list[tuple[int, ...]] = [tuple(range(n_pos))]
        queue = [0]
        while queue:
            next_queue = []
            for w in queue:
                for i in range(n_simple):
                    m = mat_mul(mats[w], simple_refl_mats[i])
                    if m in index:
                        continue
                    got = len(mats)
                    if got > WEYL_SIZE_CAP:
                        raise CartanError("Weyl group too large for table")
                    mats.append(m)
                    index[m] = got
                    words.append(words[w] + (i,))
                    # w*s_i sends root p to w(s_i(p))
                    si_perm = root_action_of_simple[i]
                    wp = perms[w]
                    img = []
                    for p in range(n_pos):
                        q = si_perm[p]
                        if q < n_pos:
                            img.append(wp[q])
                        else:
                            r0 = wp[q - n_pos]
                            img.append(r0 + n_pos if r0 < n_pos else r0 - n_pos)
                    perms.append(tuple(img))
                    next_queue.append(got)
            queue = next_queue
        rmult = [[index[mat_mul(mats[w], simple_refl_mats[i])]
                  for i in range(n_simple)] for w in range(len(mats))]
        self.size = len(mats)
        self.mats = mats
        self.index = index
        self.words = words
        self.rmult = rmult
        self.perms = perms
        self.n_pos = n_pos
        self.lengths = [sum(1 for p in range(n_pos) if perms[w][p] >= n_pos)
                        for w in range(self.size)]
        self.inverse = [index[self._transpose_inverse(mats[w])] for w in range(self.size)]
        self.lmult = [[self.inverse[self.rmult[self.inverse[w]][i]]
                       for i in range(n_simple)] for w in range(self.size)]
        self.w0 = max(range(self.size), key=lambda w: (self.lengths[w], -w))
        if self.lengths.count(self.lengths[self.w0]) != 1:
            raise CartanError("longest element is not unique")

    @staticmethod
    def _transpose_inverse(m):
        # Weyl matrices are integer with inverse equal to the matrix of the
        # inverse group element; solve by exact Gaussian elimination.
        n = len(m)
        a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
             for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if a[r][col])
            a[col], a[piv] = a[piv], a[col]
            inv = Fraction(1) / a[col][col]
            a[col] = [x * inv for x in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        out = tuple(tuple(int(a[i][n + j]) for j in range(n)) for i in range(n))
        return out

    def mul(self, u: int, v: int) -> int:
        """Product u * v via the reduced word of v."""
        for i in self.words[v]:
            u = self.rmult[u][i]
        return u

    def act(self, w: int, mu):
        return mat_vec(self.mats[w], mu)

    def root_image(self, w: int, p: int) -> int:
        """Signed image of positive root index p under w."""
        return self.perms[w][p]

    def length(self, w: int) -> int:
        return self.lengths[w]

    def word(self, w: int) -> tuple[int, ...]:
        return self.words[w]

    def descents_right(self, w: int):
        return [i for i in range(len(self.rmult[0]))
                if self.lengths[self.rmult[w][i]] < self.lengths[w]]


@dataclass(frozen=True)
class ReflectionOrder:
    """A reflection order on the positive roots, induced by a reduced word.

    beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k}); convexity and the full
    product identity s_{beta_1} ... s_{beta_N} = w0 hold by construction and
    are re-checked in the property suite.
    """

    roots: tuple[int, ...]  # positive root indices, in increasing order
    source_word: tuple[int, ...]

    def position(self, p: int) -> int:
        return self.roots.index(p)


# ---------------------------------------------------------------------------
# the root datum

@dataclass
class RootDatum:
    """A based root datum on Z^r with a diagram automorphism sigma.

    Everything is immutable after construction; the mutable `caches` dict is
    reserved for memo tables maintained by the other modules (single writer,
    deterministic values).
    """

    rank: int
    simple_roots: tuple[tuple[int, ...], ...]      # covectors
    simple_coroots: tuple[tuple[int, ...], ...]    # vectors
    sigma_perm: tuple[int, ...]                    # permutation of simple indices
    sigma_mat: tuple[tuple[int, ...], ...]         # lattice automorphism
    spec: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        ns = len(self.simple_roots)
        if len(self.simple_coroots) != ns:
            raise CartanError("mismatched numbers of simple roots and coroots")
        self.n_simple = ns
        self.cartan = tuple(
            tuple(dot(self.simple_coroots[j], self.simple_roots[i]) for j in range(ns))
            for i in range(ns)
        )
        _check_cartan(self.cartan)
        self._build_roots()
        self._build_weyl()
        self._build_sigma()
        self._build_affine()
        self.caches: dict = {}

    # -- construction -------------------------------------------------------

    def _build_roots(self):
        ns = self.n_simple
        # roots tracked as (covector, coroot vector, coords over simples)
        seen = {}
        order = []
        for i in range(ns):
            coords = tuple(1 if j == i else 0 for j in range(ns))
            seen[self.simple_roots[i]] = (self.simple_coroots[i], coords)
            order.append(self.simple_roots[i])
        frontier = list(order)
        while frontier:
            new = []
            for cov in frontier:
                covee, coords = seen[cov]
                for i in range(ns):
                    c = dot(self.simple_coroots[i], cov)
                    cov2 = vsub(cov, vscale(c, self.simple_roots[i]))
                    if cov2 in seen:
                        continue
                    c2 = dot(covee, self.simple_roots[i])
                    covee2 = vsub(covee, vscale(c2, self.simple_coroots[i]))
                    coords2 = tuple(
                        coords[j] - (c if j == i else 0) for j in range(ns)
                    )
                    seen[cov2] = (covee2, coords2)
                    new.append(cov2)
                    order.append(cov2)
            frontier = new
        pos = []
        for cov in order:
            covee, coords = seen[cov]
            if all(c >= 0 for c in coords):
                if not any(c > 0 for c in coords):
                    raise CartanError("zero root generated")
                pos.append((sum(coords), coords, cov, covee))
        # simple roots first (in index order: height-1 roots are the simples),
        # the rest by (height, coords); root index i is alpha_i for i < ns
        pos.sort(key=lambda t: (t[0], t[1].index(1) if t[0] == 1 else 0, t[1]))
        self.positive_roots = tuple(p[2] for p in pos)
        self.positive_coroots = tuple(p[3] for p in pos)
        self.root_coords = tuple(p[1] for p in pos)
        self.n_pos = len(pos)
        self._root_index = {cov: k for k, cov in enumerate(self.positive_roots)}
        self.two_rho = tuple(sum(c[j] for c in self.positive_roots)
                             for j in range(self.rank))
        self.two_rho_vee = tuple(sum(c[j] for c in self.positive_coroots)
                                 for j in range(self.rank))

    def _build_weyl(self):
        r = self.rank
        simple_mats = []
        root_action = []
        for i in range(self.n_simple):
            al, av = self.simple_roots[i], self.simple_coroots[i]
            simple_mats.append(tuple(
                tuple((1 if k == j else 0) - av[k] * al[j] for j in range(r))
                for k in range(r)
            ))
            perm = []
            for p, cov in enumerate(self.positive_roots):
                c = dot(av, cov)
                cov2 = vsub(cov, vscale(c, al))
                if cov2 in self._root_index:
                    perm.append(self._root_index[cov2])
                else:
                    perm.append(self._root_index[vneg(cov2)] + self.n_pos)
            root_action.append(tuple(perm))
        self.weyl = WeylGroup(simple_mats, self.positive_roots, root_action)
        # reflection s_beta for each positive root
        refl = []
        for p in range(self.n_pos):
            al, av = self.positive_roots[p], self.positive_coroots[p]
            m = tuple(
                tuple((1 if k == j else 0) - av[k] * al[j] for j in range(self.rank))
                for k in range(self.rank)
            )
            refl.append(self.weyl.index[m])
        self.reflection_of_root = tuple(refl)

    def _build_sigma(self):
        p = self.sigma_perm
        if sorted(p) != list(range(self.n_simple)):
            raise CartanError("sigma is not a permutation of the simple roots")
        for i in range(self.n_simple):
            for j in range(self.n_simple):
                if self.cartan[p[i]][p[j]] != self.cartan[i][j]:
                    raise CartanError("sigma does not preserve the Cartan matrix")
        m = self.sigma_mat
        for j in range(self.n_simple):
            if mat_vec(m, self.simple_coroots[j]) != self.simple_coroots[p[j]]:
                raise CartanError("sigma matrix does not permute the simple coroots")
        minv = WeylGroup._transpose_inverse(m)
        for i in range(self.n_simple):
            if covec_mat(self.simple_roots[i], minv) != self.simple_roots[p[i]]:
                raise CartanError("sigma matrix does not permute the simple roots")
        self.sigma_mat_inv = minv
        # order of sigma on the lattice
        order = 1
        acc = m
        ident = mat_identity(self.rank)
        while acc != ident:
            acc = mat_mul(acc, m)
            order += 1
            if order > 10_000:
                raise CartanError("sigma does not have finite order on the lattice")
        self.sigma_order = order
        # sigma action on positive roots (as a permutation; must be positive)
        img = []
        for cov in self.positive_roots:
            cov2 = covec_mat(cov, minv)
            if cov2 not in self._root_index:
                raise CartanError("sigma does not permute the positive roots")
            img.append(self._root_index[cov2])
        self.sigma_root_perm = tuple(img)
        # sigma on Weyl elements by matrix conjugation
        sw = []
        for w in range(self.weyl.size):
            m2 = mat_mul(mat_mul(m, self.weyl.mats[w]), minv)
            sw.append(self.weyl.index[m2])
        self.sigma_on_weyl = tuple(sw)

    def _build_affine(self):
        # Dynkin components and their highest roots
        ns = self.n_simple
        adj = {i: set() for i in range(ns)}
        for i in range(ns):
            for j in range(ns):
                if i != j and self.cartan[i][j]:
                    adj[i].add(j)
        comps = []
        left = set(range(ns))
        while left:
            start = min(left)
            comp = {start}
            stack = [start]
            while stack:
                for nb in adj[stack.pop()]:
                    if nb not in comp:
                        comp.add(nb)
                        stack.append(nb)
            left -= comp
            comps.append(tuple(sorted(comp)))
        thetas = []
        for comp in comps:
            cands = [p for p in range(self.n_pos)
                     if all((self.root_coords[p][j] > 0) <= (j in comp)
                            for j in range(ns))
                     and any(self.root_coords[p][j] > 0 for j in comp)]
            theta = max(cands, key=lambda p: sum(self.root_coords[p]))
            for p in cands:
                if any(self.root_coords[p][j] > self.root_coords[theta][j]
                       for j in range(ns)):
                    raise CartanError("component has no highest root")
            thetas.append(theta)
        self.components = tuple(zip(comps, thetas))
        self.reg_constant_c = 1 + max(sum(self.root_coords[t]) for _, t in self.components)
        # simple affine roots: (alpha_i, 0) then (-theta_c, 1) per component.
        # Stored as (signed root index, k); negatives are idx + n_pos.
        self.simple_affine = tuple(
            [(i_root, 0) for i_root in range(ns)]
            + [(t + self.n_pos, 1) for _, t in self.components]
        )
        # for words: s1..sr are the finite simples; s0 exists when irreducible
        self.n_affine_simple = len(self.simple_affine)

    # -- basic queries -------------------------------------------------------

    def pair(self, mu, p: int):
        """<mu, beta_p> for a positive root index p."""
        return dot(mu, self.positive_roots[p])

    def pair_signed(self, mu, sp: int):
        if sp < self.n_pos:
            return dot(mu, self.positive_roots[sp])
        return -dot(mu, self.positive_roots[sp - self.n_pos])

    def root_cov_signed(self, sp: int):
        if sp < self.n_pos:
            return self.positive_roots[sp]
        return vneg(self.positive_roots[sp - self.n_pos])

    def coroot_signed(self, sp: int):
        if sp < self.n_pos:
            return self.positive_coroots[sp]
        return vneg(self.positive_coroots[sp - self.n_pos])

    def is_dominant(self, mu) -> bool:
        return all(dot(mu, self.simple_roots[i]) >= 0 for i in range(self.n_simple))

    def dominantize(self, mu):
        """Return (mu_dom, w) with w @ mu = mu_dom.

        Tie-break: the lexicographically smallest reduced word among the
        minimal-length Weyl elements sending mu to its dominant form.
        """
        cur = tuple(mu)
        w = 0
        while True:
            for i in range(self.n_simple):
                if dot(cur, self.simple_roots[i]) < 0:
                    cur = vsub(cur, vscale(dot(cur, self.simple_roots[i]),
                                           self.simple_coroots[i]))
                    w = self.weyl.lmult[w][i]
                    break
            else:
                break
        best = w
        mu_t = tuple(mu)
        for cand in range(self.weyl.size):
            if self.weyl.act(cand, mu_t) == cur:
                key = (self.weyl.lengths[cand], self.weyl.words[cand])
                if key < (self.weyl.lengths[best], self.weyl.words[best]):
                    best = cand
        return cur, best

    def sigma_coweight(self, mu):
        return mat_vec(self.sigma_mat, mu)

    def sigma_average(self, mu):
        """(1/N) sum of sigma^i(mu) as a tuple of Fractions; sigma-fixed."""
        n = self.sigma_order
        acc = tuple(mu)
        cur = tuple(mu)
        for _ in range(n - 1):
            cur = self.sigma_coweight(cur)
            acc = vadd(acc, cur)
        return tuple(Fraction(a, n) for a in acc)

    def dominantize_rat(self, mu):
        """Dominant Weyl image of a rational coweight (no word bookkeeping)."""
        cur = tuple(Fraction(x) for x in mu)
        while True:
            for i in range(self.n_simple):
                c = dot(cur, self.simple_roots[i])
                if c < 0:
                    cur = vsub(cur, vscale(c, self.simple_coroots[i]))
                    break
            else:
                return cur

    def coroot_cone_leq(self, mu, nu) -> bool:
        """mu <= nu: nu - mu is a nonnegative rational combination of
        positive coroots (equivalently of simple coroots)."""
        delta = vsub(tuple(Fraction(x) for x in nu), tuple(Fraction(x) for x in mu))
        coeffs = solve_coroot_coords(self, delta)
        return coeffs is not None and all(c >= 0 for c in coeffs)

    # -- reflection orders ---------------------------------------------------

    def reflection_order_from_word(self, word) -> ReflectionOrder:
        word = tuple(word)
        if len(word) != self.n_pos:
            raise ValueError("word is not a reduced expression of w0")
        roots = []
        prefix = 0
        for k, i in enumerate(word):
            sp = self.weyl.root_image(prefix, i)
            if sp >= self.n_pos:
                raise ValueError("word is not reduced")
            roots.append(sp)
            prefix = self.weyl.rmult[prefix][i]
        if prefix != self.weyl.w0 or len(set(roots)) != self.n_pos:
            raise ValueError("word is not a reduced expression of w0")
        return ReflectionOrder(tuple(roots), word)

    def standard_order(self) -> ReflectionOrder:
        return self.reflection_order_from_word(self.weyl.words[self.weyl.w0])

    def order_with_tail(self, u0: int):
        """Return (order, n) with s_{beta_{n+1}} ... s_{beta_N} = u0 and
        n = l(w0) - l(u0).

        Ascending partial products satisfy s_{beta_1}...s_{beta_k} =
        (s_{i_1}...s_{i_k})^{-1}, so the tail equals (prefix_n) w0; taking
        the word of u0 w0 as prefix makes the tail u0.  The identity is
        asserted at construction."""
        prefix_elt = self.weyl.mul(u0, self.weyl.w0)
        suffix_elt = self.weyl.mul(self.weyl.inverse[prefix_elt], self.weyl.w0)
        word = self.weyl.words[prefix_elt] + self.weyl.words[suffix_elt]
        order = self.reflection_order_from_word(word)
        n = self.n_pos - self.weyl.lengths[u0]
        tail = 0
        for p in order.roots[n:]:
            tail = self.weyl.mul(tail, self.reflection_of_root[p])
        if tail != u0:
            raise AssertionError("reflection-order tail identity failed")
        return order, n

    # -- quantum Bruhat graph -------------------------------------------------

    def qbg_distance_weight(self, u: int, v: int):
        """Shortest-path length and total weight from u to v in the quantum
        Bruhat graph; weight is well defined across shortest paths."""
        cache = self.caches.setdefault("qbg", {})
        if u in cache:
            table = cache[u]
        else:
            zero = (0,) * self.rank
            table = {u: (0, zero)}
            frontier = [u]
            while frontier:
                new = []
                for w in frontier:
                    d, wt = table[w]
                    for p in range(self.n_pos):
                        w2 = self.weyl.mul(w, self.reflection_of_root[p])
                        l1, l2 = self.weyl.lengths[w], self.weyl.lengths[w2]
                        if l2 == l1 + 1:
                            step = zero
                        elif l2 == l1 - dot(self.positive_coroots[p], self.two_rho) + 1:
                            step = self.positive_coroots[p]
                        else:
                            continue
                        if w2 not in table:
                            table[w2] = (d + 1, vadd(wt, step))
                            new.append(w2)
                frontier = new
            cache[u] = table
        return table[v]

    # -- lattice quotients ----------------------------------------------------

    def lattice_quotient(self, generators) -> LatticeQuotient:
        return LatticeQuotient.from_generators(self.rank, generators)

    def coroot_lattice_quotient(self) -> LatticeQuotient:
        """pi_1 = X / Z Phi_vee."""
        cache = self.caches.setdefault("quotients", {})
        if "pi1" not in cache:
            cache["pi1"] = self.lattice_quotient(self.simple_coroots)
        return cache["pi1"]

    def pi1_gamma_quotient(self) -> LatticeQuotient:
        """pi_1(G)_Gamma = X / (Z Phi_vee + (sigma - 1) X)."""
        cache = self.caches.setdefault("quotients", {})
        if "pi1_gamma" not in cache:
            gens = list(self.simple_coroots)
            for j in range(self.rank):
                e = tuple(1 if t == j else 0 for t in range(self.rank))
                gens.append(vsub(self.sigma_coweight(e), e))
            cache["pi1_gamma"] = self.lattice_quotient(gens)
        return cache["pi1_gamma"]

    def x_gamma_quotient(self) -> LatticeQuotient:
        """X_*(T)_Gamma = X / (sigma - 1) X."""
        cache = self.caches.setdefault("quotients", {})
        if "x_gamma" not in cache:
            gens = []
            for j in range(self.rank):
                e = tuple(1 if t == j else 0 for t in range(self.rank))
                g = vsub(self.sigma_coweight(e), e)
                if any(g):
                    gens.append(g)
            cache["x_gamma"] = self.lattice_quotient(gens)
        return cache["x_gamma"]

    # -- serialization ---------------------------------------------------------

    def to_spec(self) -> dict:
        return dict(self.spec)

    def describe(self) -> dict:
        return {
            "rank": self.rank,
            "n_positive_roots": self.n_pos,
            "weyl_order": self.weyl.size,
            "cartan": [list(r) for r in self.cartan],
            "components": [list(c) for c, _ in self.components],
            "reg_constant_C": self.reg_constant_c,
            "sigma": list(self.sigma_perm),
            "sigma_order": self.sigma_order,
            "pi1": self.coroot_lattice_quotient().describe(),
        }


def solve_coroot_coords(datum: RootDatum, delta):
    """Rational coordinates of delta over the simple coroots, or None if
    delta is outside their span."""
    ns, r = datum.n_simple, datum.rank
    cols = [datum.simple_coroots[j] for j in range(ns)]
    a = [[Fraction(cols[j][i]) for j in range(ns)] + [Fraction(delta[i])]
         for i in range(r)]
    piv_cols = []
    row = 0
    for col in range(ns):
        piv = next((rr for rr in range(row, r) if a[rr][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = Fraction(1) / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for rr in range(r):
            if rr != row and a[rr][col]:
                f = a[rr][col]
                a[rr] = [x - f * y for x, y in zip(a[rr], a[row])]
        piv_cols.append(col)
        row += 1
    for rr in range(row, r):
        if a[rr][ns]:
            return None
    coeffs = [Fraction(0)] * ns
    for k, col in enumerate(piv_cols):
        coeffs[col] = a[k][ns]
    return coeffs


# ---------------------------------------------------------------------------
# datum specs (JSON)

def _datum_from_parts(types, lattice, sigma, spec) -> RootDatum:
    blocks = [cartan_matrix(t) for t in types]
    sizes = [len(b) for b in blocks]
    ns = sum(sizes)
    cm = [[0] * ns for _ in range(ns)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                cm[off + i][off + j] = x
        off += len(b)
    perm = tuple(sigma) if sigma else tuple(range(ns))
    if lattice == "adjoint":
        rank = ns
        roots = tuple(tuple(1 if j == i else 0 for j in range(ns)) for i in range(ns))
        coroots = tuple(tuple(cm[i][j] for i in range(ns)) for j in range(ns))
        smat = tuple(tuple(1 if i == perm[j] else 0 for j in range(ns)) for i in range(ns))
    elif lattice == "sc":
        rank = ns
        coroots = tuple(tuple(1 if j == i else 0 for j in range(ns)) for i in range(ns))
        roots = tuple(tuple(cm[i][j] for j in range(ns)) for i in range(ns))
        smat = tuple(tuple(1 if i == perm[j] else 0 for j in range(ns)) for i in range(ns))
    elif isinstance(lattice, dict):
        roots = tuple(tuple(r) for r in lattice["simple_roots"])
        coroots = tuple(tuple(c) for c in lattice["simple_coroots"])
        rank = len(roots[0])
        if "sigma_matrix" in lattice:
            smat = tuple(tuple(r) for r in lattice["sigma_matrix"])
        elif perm == tuple(range(ns)):
            smat = mat_identity(rank)
        else:
            raise CartanError("explicit lattice with nontrivial sigma needs sigma_matrix")
        got = [[dot(coroots[j], roots[i]) for j in range(ns)] for i in range(ns)]
        if got != cm:
            raise CartanError("explicit lattice does not realize the Cartan matrix")
    else:
        raise CartanError(f"unknown lattice choice {lattice!r}")
    return RootDatum(rank=rank, simple_roots=roots, simple_coroots=coroots,
                     sigma_perm=perm, sigma_mat=smat, spec=spec)


def load_root_datum(source) -> RootDatum:
    """Build a RootDatum from a spec document (dict, JSON text, or path).

    Fields: "type" (list of Cartan type strings), "lattice" ("adjoint" |
    "sc" | {"simple_roots": ..., "simple_coroots": ..., "sigma_matrix"?}),
    "sigma" (permutation of simple-root indices, 0-based; default identity).
    load -> serialize -> load is the identity on the spec document.
    """
    if isinstance(source, dict):
        spec = source
    else:
        text = source
        if "\n" not in str(source) and str(source).endswith(".json"):
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        spec = json.loads(text)
    types = spec["type"]
    if isinstance(types, str):
        types = [types]
    return _datum_from_parts(types, spec.get("lattice", "adjoint"),
                             spec.get("sigma"), spec)


def make_gl_datum(n: int) -> RootDatum:
    """GL_n-style type A_{n-1} datum on the rank-n permutation lattice."""
    roots = tuple(
        tuple(1 if j == i else (-1 if j == i + 1 else 0) for j in range(n))
        for i in range(n - 1)
    )
    spec = {
        "type": [f"A{n - 1}"],
        "lattice": {"simple_roots": [list(r) for r in roots],
                    "simple_coroots": [list(r) for r in roots]},
        "sigma": list(range(n - 1)),
    }
    return load_root_datum(spec)
