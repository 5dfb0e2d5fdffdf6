"""The extended affine Weyl group W ltimes X_*(T) and its sigma-conjugacy
combinatorics.

An element x = w eps^mu is the pair (w, mu) of a finite Weyl index and an
integer coweight; affine roots are pairs (signed root index, k).  Lengths are
counted over root hyperplanes, sigma-conjugacy classes are handled through
length-nonincreasing elementary conjugations, and B(G) invariants (Newton
point, Kottwitz point, defect, lambda) are exact rational data.

All functions take the RootDatum as first argument and are pure; the datum's
`caches` dict holds memo tables (lengths, class orbits, straight
representatives) with deterministic contents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .rootdata import (
    RootDatum,
    integral_kernel_basis,
    integral_solve,
    mat_mul,
    mat_vec,
    vadd,
    vneg,
    vscale,
    vsub,
    dot,
)

__all__ = [
    "AffineElement",
    "BGPoint",
    "SigmaClassKey",
    "act_affine_root",
    "bg_point_of_class",
    "bruhat_leq",
    "compose",
    "conv",
    "defect_of",
    "format_element",
    "format_word",
    "identity",
    "invert",
    "is_regular",
    "is_same_sigma_class",
    "kottwitz_point",
    "length",
    "lp_set",
    "min_length_orbit",
    "newton_point",
    "omega_decompose",
    "parse_element",
    "pi_J",
    "regularity",
    "sigma_class_key",
    "sigma_elt",
    "simple_affine_reflection",
    "translation",
]


class AffineElement(NamedTuple):
    w: int
    mu: tuple[int, ...]


def identity(datum: RootDatum) -> AffineElement:
    return AffineElement(0, (0,) * datum.rank)


def translation(datum: RootDatum, mu) -> AffineElement:
    return AffineElement(0, tuple(mu))


def from_weyl(datum: RootDatum, w: int, mu=None) -> AffineElement:
    return AffineElement(w, tuple(mu) if mu is not None else (0,) * datum.rank)


def compose(datum: RootDatum, x: AffineElement, y: AffineElement) -> AffineElement:
    """(w1 eps^m1)(w2 eps^m2) = w1 w2 eps^(w2^-1 m1 + m2)."""
    wy_inv = datum.weyl.inverse[y.w]
    return AffineElement(
        datum.weyl.mul(x.w, y.w),
        vadd(datum.weyl.act(wy_inv, x.mu), y.mu),
    )


def invert(datum: RootDatum, x: AffineElement) -> AffineElement:
    return AffineElement(datum.weyl.inverse[x.w],
                         vneg(datum.weyl.act(x.w, x.mu)))


def sigma_elt(datum: RootDatum, x: AffineElement) -> AffineElement:
    return AffineElement(datum.sigma_on_weyl[x.w], datum.sigma_coweight(x.mu))


def signed_root_image(datum: RootDatum, w: int, sp: int) -> int:
    if sp < datum.n_pos:
        return datum.weyl.perms[w][sp]
    q = datum.weyl.perms[w][sp - datum.n_pos]
    return q + datum.n_pos if q < datum.n_pos else q - datum.n_pos


def act_affine_root(datum: RootDatum, x: AffineElement, a):
    """(w eps^mu)(alpha, k) = (w alpha, k - <mu, alpha>)."""
    sp, k = a
    return (signed_root_image(datum, x.w, sp), k - datum.pair_signed(x.mu, sp))


def affine_root_positive(datum: RootDatum, a) -> bool:
    sp, k = a
    return k >= (1 if sp >= datum.n_pos else 0)


def simple_affine_reflection(datum: RootDatum, idx: int) -> AffineElement:
    """r_a for the idx-th simple affine root; r_(alpha,k) = s_alpha eps^(k alpha_vee)."""
    sp, k = datum.simple_affine[idx]
    p = sp if sp < datum.n_pos else sp - datum.n_pos
    return AffineElement(datum.reflection_of_root[p],
                         vscale(k, datum.coroot_signed(sp)))


def reflection_of_affine_root(datum: RootDatum, a) -> AffineElement:
    sp, k = a
    p = sp if sp < datum.n_pos else sp - datum.n_pos
    return AffineElement(datum.reflection_of_root[p],
                         vscale(k, datum.coroot_signed(sp)))


def length(datum: RootDatum, x: AffineElement) -> int:
    """Number of positive affine roots sent to negative ones.

    Per positive finite root beta: |<mu,beta>| if w beta > 0, else
    |<mu,beta> + 1| (both signs of beta folded together).
    """
    cache = datum.caches.setdefault("alen", {})
    got = cache.get(x)
    if got is not None:
        return got
    total = 0
    perms = datum.weyl.perms[x.w]
    for p in range(datum.n_pos):
        c = datum.pair(x.mu, p)
        total += abs(c) if perms[p] < datum.n_pos else abs(c + 1)
    cache[x] = total
    return total


def left_descents(datum: RootDatum, x: AffineElement):
    """Indices a of simple affine roots with l(r_a x) < l(x), i.e. x^-1 a < 0."""
    xi = invert(datum, x)
    out = []
    for idx, a in enumerate(datum.simple_affine):
        if not affine_root_positive(datum, act_affine_root(datum, xi, a)):
            out.append(idx)
    return out


def right_descents(datum: RootDatum, x: AffineElement):
    """Indices a with l(x r_a) < l(x), i.e. x a < 0."""
    out = []
    for idx, a in enumerate(datum.simple_affine):
        if not affine_root_positive(datum, act_affine_root(datum, x, a)):
            out.append(idx)
    return out


def omega_decompose(datum: RootDatum, x: AffineElement):
    """Write x = r_{a_1} ... r_{a_k} tau with tau of length zero.

    The word is the lex-least reduced word over the numbered simple affine
    reflections (greedy smallest left descent); it doubles as the canonical
    encoding used for class keys.
    """
    word = []
    cur = x
    while True:
        ds = left_descents(datum, cur)
        if not ds:
            break
        a = ds[0]
        word.append(a)
        cur = compose(datum, simple_affine_reflection(datum, a), cur)
    if length(datum, cur) != 0:
        raise AssertionError("descent peeling did not reach length zero")
    return tuple(word), cur


def canonical_key(datum: RootDatum, x: AffineElement):
    word, tau = omega_decompose(datum, x)
    return (word, tau.w, tau.mu)


def reduced_word_and_omega(datum: RootDatum, x: AffineElement):
    return omega_decompose(datum, x)


def bruhat_leq(datum: RootDatum, y: AffineElement, x: AffineElement) -> bool:
    """Bruhat order on the extended group: same Omega part, subword on W_af.

    Uses the lifting property: for a reduced word r_a w' of w, y <= w iff
    (r_a y <= w' if r_a y < y else y <= w')."""
    word_x, tau_x = omega_decompose(datum, x)
    word_y, tau_y = omega_decompose(datum, y)
    if tau_x != tau_y:
        return False
    cur = y
    cur = compose(datum, cur, invert(datum, tau_y))
    lcur = length(datum, cur)
    for a in word_x:
        if lcur == 0:
            return True
        r = simple_affine_reflection(datum, a)
        cand = compose(datum, r, cur)
        lc = length(datum, cand)
        if lc < lcur:
            cur, lcur = cand, lc
    return lcur == 0


def lp_set(datum: RootDatum, x: AffineElement):
    """Length-positive set: maximizers of <v^-1 mu, 2rho> - l(v) + l(wv).

    The attained maximum equals l(x); this is asserted."""
    best_val = None
    best = []
    for v in range(datum.weyl.size):
        vi = datum.weyl.inverse[v]
        val = (dot(datum.weyl.act(vi, x.mu), datum.two_rho)
               - datum.weyl.lengths[v]
               + datum.weyl.lengths[datum.weyl.mul(x.w, v)])
        if best_val is None or val > best_val:
            best_val, best = val, [v]
        elif val == best_val:
            best.append(v)
    if best_val != length(datum, x):
        raise AssertionError("LP maximum does not match the length")
    return best


def regularity(datum: RootDatum, x: AffineElement) -> int:
    """Largest C such that x is C-regular: min over Phi+ of |<mu, alpha>|."""
    return min(abs(datum.pair(x.mu, p)) for p in range(datum.n_pos))


def is_regular(datum: RootDatum, x: AffineElement, c) -> bool:
    return regularity(datum, x) >= c


# ---------------------------------------------------------------------------
# Newton and Kottwitz points

def newton_point(datum: RootDatum, x: AffineElement):
    """Dominant rational Newton point of x.

    Multiplies the sigma-twisted powers x sigma(x) ... sigma^{n-1}(x) until
    the Weyl part is trivial and sigma^n acts trivially on the lattice, then
    dominantizes mu/n."""
    acc = x
    cur = x
    n = 1
    bound = datum.weyl.size * datum.sigma_order + 1
    while not (acc.w == 0 and n % datum.sigma_order == 0):
        cur = sigma_elt(datum, cur)
        acc = compose(datum, acc, cur)
        n += 1
        if n > bound:
            raise AssertionError("Newton iteration failed to close up")
    return datum.dominantize_rat(tuple(Fraction(m, n) for m in acc.mu))


def kottwitz_point(datum: RootDatum, x: AffineElement):
    """Class of mu in pi_1(G) = X / Z Phi_vee (Gamma_0 level)."""
    return datum.coroot_lattice_quotient().class_of(x.mu)


def kottwitz_point_gamma(datum: RootDatum, x: AffineElement):
    """Class of mu in pi_1(G)_Gamma (the sigma-coinvariants)."""
    return datum.pi1_gamma_quotient().class_of(x.mu)


def conv(datum: RootDatum, mu):
    """Convex hull map: dominant representative of the sigma-average.

    Well defined on X_*(T)_Gamma since avg_sigma kills (sigma - 1)."""
    return datum.dominantize_rat(datum.sigma_average(mu))


def pi_J(datum: RootDatum, mu, J):
    """avg_sigma(mu) minus the J-coroot correction making all J-pairings zero.

    J must be a sigma-stable set of simple indices; the correction is the
    unique solution of the Cartan subsystem."""
    J = sorted(J)
    for j in J:
        if datum.sigma_perm[j] not in J:
            raise ValueError("J is not sigma-stable")
    avg = datum.sigma_average(mu)
    if not J:
        return avg
    k = len(J)
    a = [[Fraction(datum.cartan[J[i]][J[j]]) for j in range(k)]
         + [Fraction(dot(avg, datum.simple_roots[J[i]]))]
         for i in range(k)]
    for col in range(k):
        piv = next((r for r in range(col, k) if a[r][col]), None)
        if piv is None:
            raise AssertionError("singular Cartan subsystem in pi_J")
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(k):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * u for v, u in zip(a[r], a[col])]
    out = tuple(Fraction(v) for v in avg)
    for i, j in enumerate(J):
        out = vsub(out, vscale(a[i][k], datum.simple_coroots[j]))
    return out


# ---------------------------------------------------------------------------
# Omega (length-zero) elements

def omega_generators(datum: RootDatum):
    """Length-zero elements lifting the classes of the standard basis of Z^r
    (plus inverses); they generate Omega."""
    cache = datum.caches.setdefault("omega", {})
    if "gens" in cache:
        return cache["gens"]
    gens = []
    seen = set()
    for j in range(datum.rank):
        e = tuple(1 if t == j else 0 for t in range(datum.rank))
        for mu in (e, vneg(e)):
            tau = _descend_to_length_zero(datum, translation(datum, mu))
            if tau not in seen and tau != identity(datum):
                seen.add(tau)
                gens.append(tau)
    cache["gens"] = tuple(gens)
    return cache["gens"]


def _descend_to_length_zero(datum: RootDatum, x: AffineElement) -> AffineElement:
    while True:
        ds = left_descents(datum, x)
        if not ds:
            return x
        x = compose(datum, simple_affine_reflection(datum, ds[0]), x)


def _omega_closure(datum: RootDatum, max_words: int = 600):
    """Breadth-first closure of the Omega generators (capped: Omega can be
    infinite for GL_n-style lattices), cached on the datum."""
    cache = datum.caches.setdefault("omega", {})
    got = cache.get(("closure", max_words))
    if got is not None:
        return got
    gens = omega_generators(datum)
    e = identity(datum)
    seen = {e}
    order = [e]
    frontier = [e]
    while frontier and len(seen) < max_words:
        new = []
        for t in frontier:
            for g in gens:
                t2 = compose(datum, t, g)
                if t2 in seen:
                    continue
                seen.add(t2)
                order.append(t2)
                new.append(t2)
        frontier = new
    cache[("closure", max_words)] = tuple(order)
    return cache[("closure", max_words)]


def omega_elements_with_kappa(datum: RootDatum, kappa, max_words: int = 600):
    """Omega elements whose Gamma-level Kottwitz point is kappa."""
    q = datum.pi1_gamma_quotient()
    return [t for t in _omega_closure(datum, max_words)
            if q.class_of(t.mu) == kappa]


# ---------------------------------------------------------------------------
# sigma-conjugacy classes

def _conjugation_neighbours(datum: RootDatum, x: AffineElement):
    """Elementary sigma-conjugates s x sigma(s) and tau^-1 x sigma(tau)."""
    for idx in range(datum.n_affine_simple):
        r = simple_affine_reflection(datum, idx)
        yield compose(datum, compose(datum, r, x), sigma_elt(datum, r))
    for tau in omega_generators(datum):
        yield compose(datum, compose(datum, invert(datum, tau), x),
                      sigma_elt(datum, tau))


def _orbit_until_drop(datum: RootDatum, x: AffineElement):
    """BFS of the length-preserving conjugation orbit of x.

    Returns (orbit_set, dropped) where dropped is a strictly shorter
    conjugate if one is adjacent to the orbit (He-Nie: exists unless x has
    minimal length in its class), else None."""
    lx = length(datum, x)
    orbit = {x}
    frontier = [x]
    while frontier:
        new = []
        for y in frontier:
            for z in _conjugation_neighbours(datum, y):
                lz = length(datum, z)
                if lz < lx:
                    return orbit, z
                if lz == lx and z not in orbit:
                    orbit.add(z)
                    new.append(z)
        frontier = new
    return orbit, None


def min_length_orbit(datum: RootDatum, x: AffineElement):
    """The set of minimal-length elements of the class of x reachable by
    length-preserving conjugation (by He-Nie this is the full minimal
    stratum), after reducing x via length-nonincreasing conjugations."""
    cache = datum.caches.setdefault("minorbit", {})
    trail: list = []
    cur = x
    while True:
        if cur in cache:
            orbit = cache[cur]
            break
        visited, dropped = _orbit_until_drop(datum, cur)
        if dropped is None:
            orbit = frozenset(visited)
            break
        trail.append(visited)
        cur = dropped
    for visited in trail:
        for y in visited:
            cache[y] = orbit
    for y in orbit:
        cache[y] = orbit
    cache[x] = orbit
    return orbit


@dataclass(frozen=True, order=True)
class SigmaClassKey:
    """Canonical invariants of a sigma-conjugacy class O in the extended
    affine Weyl group."""

    nu: tuple            # dominant rational Newton point (Fractions)
    kappa: tuple         # class in pi_1(G)_Gamma
    min_rep: AffineElement
    min_len: int


def sigma_class_key(datum: RootDatum, x: AffineElement) -> SigmaClassKey:
    orbit = min_length_orbit(datum, x)
    min_rep = min(orbit, key=lambda y: canonical_key(datum, y))
    return SigmaClassKey(
        nu=newton_point(datum, x),
        kappa=kottwitz_point_gamma(datum, x),
        min_rep=min_rep,
        min_len=length(datum, min_rep),
    )


def is_same_sigma_class(datum: RootDatum, x: AffineElement, y: AffineElement) -> bool:
    if newton_point(datum, x) != newton_point(datum, y):
        return False
    if kottwitz_point_gamma(datum, x) != kottwitz_point_gamma(datum, y):
        return False
    return min_length_orbit(datum, x) == min_length_orbit(datum, y)


# ---------------------------------------------------------------------------
# B(G) points

@dataclass(frozen=True, order=True)
class BGPoint:
    """Invariants of a sigma-conjugacy class of the group: Newton point,
    Gamma-level Kottwitz point, defect, and the lambda-invariant when a
    translation (or length-zero) representative pins it down."""

    nu: tuple
    kappa: tuple
    defect: int
    lam: Optional[tuple]

    @property
    def is_integral(self) -> bool:
        return self.defect == 0


def _rank_frac(mat) -> int:
    rows = [list(map(Fraction, r)) for r in mat]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    rank = 0
    col = 0
    while rank < n and col < m:
        piv = next((r for r in range(rank, n) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = Fraction(1) / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(n):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [v - f * u for v, u in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def _fixed_space_dim(datum: RootDatum, mat) -> int:
    delta = [[mat[i][j] - (1 if i == j else 0) for j in range(datum.rank)]
             for i in range(datum.rank)]
    return datum.rank - _rank_frac(delta)


def two_rho_pairing(datum: RootDatum, nu):
    return dot(nu, datum.two_rho)


def dominant_translation_reps(datum: RootDatum, nu, kappa):
    """All dominant integral coweights lam0 with conv(lam0) = nu and
    Gamma-level Kottwitz point kappa.  Finite up to central directions,
    which are pinned by conv(lam0) = nu."""
    nu = tuple(map(Fraction, nu))
    target = Fraction(two_rho_pairing(datum, nu))
    if target.denominator != 1:
        return []
    target = int(target)
    out = []
    q = datum.pi1_gamma_quotient()
    for mu in _dominant_coweights_with_2rho(datum, target, nu):
        if q.class_of(mu) != kappa:
            continue
        if datum.dominantize_rat(datum.sigma_average(mu)) == nu:
            out.append(mu)
    return sorted(set(out))


def _dominant_coweights_with_2rho(datum: RootDatum, target: int, nu):
    """Dominant integral coweights mu with <mu, 2rho> == target whose central
    component matches that of nu (so conv(mu) = nu remains possible).

    Enumerated through simple-root pairings (an integral particular solution
    plus integral kernel translates of the pairing map; kernel directions are
    central and pinned by matching averages against nu)."""
    rows = [list(r) for r in datum.simple_roots]
    kernel = integral_kernel_basis(rows)
    # heights of the simple roots inside 2rho, as weights on the pairings
    weights = [sum(coords[j] for coords in datum.root_coords)
               for j in range(datum.n_simple)]
    sols = []
    for pairing in _nonneg_solutions(weights, target):
        base = integral_solve(rows, list(pairing))
        if base is None:
            continue
        for mu in _central_translates(datum, base, kernel, nu):
            sols.append(mu)
    return sorted(set(sols))


def _nonneg_solutions(weights, target):
    if not weights:
        return [()] if target == 0 else []
    out = []
    w0 = weights[0]
    for a in range(target // w0 + 1):
        for rest in _nonneg_solutions(weights[1:], target - a * w0):
            out.append((a,) + rest)
    return out


def _central_translates(datum: RootDatum, base, kernel, nu):
    """Integral mu = base + (central kernel vector) whose sigma-average has
    the same central component as nu.

    The kernel of the pairing map is central, so the constraint
    avg(mu) - nu central-part = 0 is an exact linear system over the kernel
    coordinates with at most one solution per torsion pattern."""
    if not kernel:
        return [tuple(base)]
    # solve avg(base) + avg(sum c_i k_i) = nu  restricted to the kernel span:
    # kernel vectors are sigma-permuted within the center; work with exact
    # linear algebra over the kernel coordinates.
    avg_base = datum.sigma_average(base)
    avg_kernel = [datum.sigma_average(k) for k in kernel]
    diff = vsub(tuple(map(Fraction, nu)), avg_base)
    # least-squares-free exact solve: find all integer c with
    # sum c_i avg_kernel_i = central part of diff; since nu is dominant and
    # base already matches all root pairings, diff must itself be central.
    rows = [[avg_kernel[i][t] for i in range(len(kernel))]
            for t in range(datum.rank)]
    # scale to integers
    denom = 1
    for row in rows:
        for x in row:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
    for x in diff:
        denom = denom * x.denominator // _gcd(denom, x.denominator)
    int_rows = [[int(x * denom) for x in row] for row in rows]
    int_b = [int(x * denom) for x in diff]
    sol = integral_solve(int_rows, int_b)
    if sol is None:
        return []
    out = []
    # enumerate the (small) integral kernel of the restricted system
    kk = integral_kernel_basis(int_rows)
    if not kk:
        combos = [tuple(sol)]
    else:
        from itertools import product as _product
        rng = range(-2, 3)
        combos = []
        for coeffs in _product(*([rng] * len(kk))):
            c = list(sol)
            for f, vec in zip(coeffs, kk):
                c = [ci + f * vi for ci, vi in zip(c, vec)]
            combos.append(tuple(c))
    for c in combos:
        mu = tuple(base)
        for ci, k in zip(c, kernel):
            mu = vadd(mu, vscale(ci, k))
        out.append(mu)
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a) if a else 1


def find_straight_rep(datum: RootDatum, nu, kappa) -> AffineElement:
    """A straight element (l(x) = <nu(x), 2rho>) with the given invariants.

    Kottwitz's classification makes any such element a representative of the
    B(G)-class (nu, kappa).  Dominant translations and Omega elements are
    tried first; otherwise the length-<nu,2rho> stratum of the
    kappa-compatible coset is searched."""
    cache = datum.caches.setdefault("straight", {})
    key = (tuple(nu), tuple(kappa))
    if key in cache:
        return cache[key]
    nu = tuple(map(Fraction, nu))
    reps = dominant_translation_reps(datum, nu, kappa)
    if reps:
        cache[key] = translation(datum, reps[0])
        return cache[key]
    target_len = Fraction(two_rho_pairing(datum, nu))
    if target_len.denominator != 1:
        raise AssertionError("straight length <nu,2rho> is not an integer")
    target_len = int(target_len)
    taus = omega_elements_with_kappa(datum, tuple(kappa))
    if not taus:
        raise AssertionError("no Omega element with the requested Kottwitz point")
    for tau in taus:
        if target_len == 0 and newton_point(datum, tau) == nu:
            cache[key] = tau
            return tau
    # search W_af y with l(y tau) = l(y) = target_len and nu(y tau) = nu
    tau = taus[0]
    seen = {identity(datum)}
    frontier = [identity(datum)]
    for _ in range(target_len):
        new = []
        for y in frontier:
            for idx in range(datum.n_affine_simple):
                y2 = compose(datum, y, simple_affine_reflection(datum, idx))
                if y2 in seen or length(datum, y2) != length(datum, y) + 1:
                    continue
                seen.add(y2)
                new.append(y2)
        frontier = new
    for tau in taus:
        for y in frontier:
            x = compose(datum, y, tau)
            if newton_point(datum, x) == nu:
                cache[key] = x
                return x
    raise AssertionError("no straight representative found (invalid (nu, kappa)?)")


def defect_of(datum: RootDatum, nu, kappa) -> int:
    x = find_straight_rep(datum, nu, kappa)
    sig = datum.sigma_mat
    wsig = mat_mul(datum.weyl.mats[x.w], sig)
    return _fixed_space_dim(datum, sig) - _fixed_space_dim(datum, wsig)


def lambda_invariant(datum: RootDatum, nu, kappa):
    """Class in X_*(T)_Gamma of a dominant translation representative; None
    when the class is not integral.  All dominant translation representatives
    must give the same class (asserted); conv(lambda) = nu then holds."""
    nu = tuple(map(Fraction, nu))
    q = datum.x_gamma_quotient()
    classes = {q.class_of(mu) for mu in dominant_translation_reps(datum, nu, kappa)}
    if not classes:
        return None
    if len(classes) > 1:
        raise AssertionError(
            "lambda-invariant ambiguous across representatives: " + repr(classes))
    return classes.pop()


def bg_point_of_class(datum: RootDatum, key: SigmaClassKey) -> BGPoint:
    cache = datum.caches.setdefault("bgpoint", {})
    k = (key.nu, key.kappa)
    if k not in cache:
        cache[k] = BGPoint(
            nu=key.nu,
            kappa=key.kappa,
            defect=defect_of(datum, key.nu, key.kappa),
            lam=lambda_invariant(datum, key.nu, key.kappa),
        )
    return cache[k]


def bg_point_of_element(datum: RootDatum, x: AffineElement) -> BGPoint:
    """B(G)-point of the class [x] (of the group element)."""
    return bg_point_of_class(datum, sigma_class_key(datum, x))


# ---------------------------------------------------------------------------
# text formats

def format_element(datum: RootDatum, x: AffineElement) -> str:
    word = ",".join(str(i + 1) for i in datum.weyl.words[x.w])
    mu = ",".join(str(m) for m in x.mu)
    return f"w:[{word}] mu:[{mu}]"


def format_word(datum: RootDatum, x: AffineElement) -> str:
    parts = [f"s{i + 1}" for i in datum.weyl.words[x.w]]
    parts.append("t[" + ",".join(str(m) for m in x.mu) + "]")
    return " ".join(parts)


def parse_element(datum: RootDatum, text: str) -> AffineElement:
    """Parse either `w:[..] mu:[..]` or a word `s1 s0 t[..] ...`.

    Words are folded left to right and need not be reduced; s0 is the extra
    simple affine reflection (irreducible root systems only)."""
    text = text.strip()
    if text.startswith("w:"):
        return _parse_wmu(datum, text)
    x = identity(datum)
    for token in text.split():
        if token.startswith("s"):
            k = int(token[1:])
            if k == 0:
                if len(datum.components) != 1:
                    raise ValueError("s0 is ambiguous for reducible root systems")
                x = compose(datum, x,
                            simple_affine_reflection(datum, datum.n_simple))
            elif 1 <= k <= datum.n_simple:
                x = compose(datum, x,
                            simple_affine_reflection(datum, k - 1))
            else:
                raise ValueError(f"unknown generator {token!r}")
        elif token.startswith("t[") and token.endswith("]"):
            body = token[2:-1]
            mu = tuple(int(v) for v in body.split(",")) if body else ()
            if len(mu) != datum.rank:
                raise ValueError("translation has wrong rank")
            x = compose(datum, x, translation(datum, mu))
        else:
            raise ValueError(f"cannot parse token {token!r}")
    return x


def _parse_wmu(datum: RootDatum, text: str) -> AffineElement:
    import re

    m = re.fullmatch(r"w:\[([0-9,\s]*)\]\s+mu:\[([0-9,\-\s]*)\]", text)
    if not m:
        raise ValueError(f"cannot parse element {text!r}")
    word = [int(t) - 1 for t in m.group(1).replace(" ", "").split(",") if t]
    mu = tuple(int(t) for t in m.group(2).replace(" ", "").split(",") if t)
    if len(mu) != datum.rank:
        raise ValueError("mu has wrong rank")
    w = 0
    for i in word:
        if not 0 <= i < datum.n_simple:
            raise ValueError("finite word index out of range")
        w = datum.weyl.rmult[w][i]
    return AffineElement(w, mu)
