"""Double Bruhat graph paths and their weight multisets.

The graph has vertex set W and an edge w -> w s_beta for every positive root
beta.  A labelled path carries integers m_i >= 0 on ascending edges and
m_i >= 1 on descending ones; its weight is sum m_i beta_i_vee.  Increasing
paths (labels strictly ascending in a reflection order) are enumerated by
depth-first search over the order; label assignments are counted, not
materialized, except where explicit paths are requested for reports.

Weight multisets are conceptually infinite; every public operation takes an
exact target weight or an explicit window bound on <omega, 2rho>.  Since
every coroot pairs to at least 2 against 2rho, both are finite computations.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .rootdata import ReflectionOrder, RootDatum, vadd, vneg, vscale, vsub, dot
from . import affine
from .affine import AffineElement

__all__ = [
    "LabelledPath",
    "affine_path_correspondence",
    "dbg_recursion_check",
    "enumerate_labelled_paths",
    "increasing_paths",
    "wts_at",
    "wts_bounded_at",
    "wts_bounded_window",
    "wts_window",
]


@dataclass(frozen=True)
class LabelledPath:
    """An increasing labelled path: start vertex and (root index, label)
    steps.  Vertices, weight and length are derived."""

    start: int
    steps: tuple[tuple[int, int], ...]

    def vertices(self, datum: RootDatum):
        out = [self.start]
        for p, _m in self.steps:
            out.append(datum.weyl.mul(out[-1], datum.reflection_of_root[p]))
        return out

    def end(self, datum: RootDatum) -> int:
        v = self.start
        for p, _m in self.steps:
            v = datum.weyl.mul(v, datum.reflection_of_root[p])
        return v

    def weight(self, datum: RootDatum):
        wt = (0,) * datum.rank
        for p, m in self.steps:
            wt = vadd(wt, vscale(m, datum.positive_coroots[p]))
        return wt

    def __len__(self):
        return len(self.steps)


def _default_order(datum: RootDatum) -> ReflectionOrder:
    cache = datum.caches.setdefault("dbg", {})
    if "order" not in cache:
        cache["order"] = datum.standard_order()
    return cache["order"]


def increasing_paths(datum: RootDatum, u: int, v: int,
                     order: Optional[ReflectionOrder] = None,
                     n: Optional[int] = None):
    """All unlabelled increasing paths from u to v bounded by n.

    A path is returned as a tuple of (root index, lower bound) steps, where
    the lower bound is 1 exactly on descending edges.  Complete enumeration:
    increasing paths are in bijection with subsets of the first n order
    positions that multiply from u to v."""
    if order is None:
        order = _default_order(datum)
    if n is None:
        n = datum.n_pos
    by_end = _paths_from(datum, u, order, n)
    return list(by_end.get(v, ()))


def _paths_from(datum: RootDatum, u: int, order: ReflectionOrder, n: int):
    cache = datum.caches.setdefault("dbg_paths", {})
    key = (order.roots, n, u)
    got = cache.get(key)
    if got is not None:
        return got
    by_end: dict[int, list] = {}
    lengths = datum.weyl.lengths
    refl = datum.reflection_of_root
    mul = datum.weyl.mul

    def dfs(pos, vertex, acc):
        by_end.setdefault(vertex, []).append(tuple(acc))
        for i in range(pos, n):
            p = order.roots[i]
            nxt = mul(vertex, refl[p])
            bound = 0 if lengths[nxt] > lengths[vertex] else 1
            acc.append((p, bound))
            dfs(i + 1, nxt, acc)
            acc.pop()

    dfs(0, u, [])
    cache[key] = {k: tuple(vs) for k, vs in by_end.items()}
    return cache[key]


# ---------------------------------------------------------------------------
# label counting

def _count_exact(datum: RootDatum, roots: tuple[int, ...], target) -> int:
    """Number of ways to write target as sum n_p beta_p_vee with n_p >= 0
    over the given root-index sequence."""
    t2 = dot(target, datum.two_rho)
    if t2 < 0 or (t2 == 0 and any(target)):
        return 0
    cache = datum.caches.setdefault("dbg_count", {})

    def rec(idx, rem, rem2):
        if idx == len(roots):
            return 1 if not any(rem) else 0
        key = (roots[idx:], rem)
        got = cache.get(key)
        if got is not None:
            return got
        p = roots[idx]
        cv = datum.positive_coroots[p]
        c2 = dot(cv, datum.two_rho)
        total = 0
        m = 0
        cur, cur2 = rem, rem2
        while cur2 >= 0:
            total += rec(idx + 1, cur, cur2)
            cur = vsub(cur, cv)
            cur2 -= c2
            m += 1
        cache[key] = total
        return total

    return rec(0, tuple(target), t2)


def _count_window(datum: RootDatum, roots: tuple[int, ...], cap: int) -> Counter:
    """Counter {omega: count} over labelings with all n_p >= 0 and
    <omega, 2rho> <= cap."""
    cache = datum.caches.setdefault("dbg_window", {})
    key = (roots, cap)
    got = cache.get(key)
    if got is not None:
        return got
    if not roots:
        out = Counter({(0,) * datum.rank: 1}) if cap >= 0 else Counter()
        cache[key] = out
        return out
    p, rest = roots[0], roots[1:]
    cv = datum.positive_coroots[p]
    c2 = dot(cv, datum.two_rho)
    out: Counter = Counter()
    shift = (0,) * datum.rank
    used = 0
    while used <= cap:
        for omega, cnt in _count_window(datum, rest, cap - used).items():
            out[vadd(omega, shift)] += cnt
        shift = vadd(shift, cv)
        used += c2
    cache[key] = out
    return out


def _path_base_weight(datum: RootDatum, path):
    base = (0,) * datum.rank
    for p, bound in path:
        if bound:
            base = vadd(base, datum.positive_coroots[p])
    return base


def wts_at(datum: RootDatum, u: int, v: int, omega,
           order: Optional[ReflectionOrder] = None,
           n: Optional[int] = None) -> Counter:
    """Multiset {length: multiplicity} of increasing labelled paths u => v of
    weight exactly omega (bounded by n when given)."""
    omega = tuple(omega)
    out: Counter = Counter()
    for path in increasing_paths(datum, u, v, order, n):
        rem = vsub(omega, _path_base_weight(datum, path))
        cnt = _count_exact(datum, tuple(p for p, _ in path), rem)
        if cnt:
            out[len(path)] += cnt
    return out


def wts_window(datum: RootDatum, u: int, v: int, cap: int,
               order: Optional[ReflectionOrder] = None,
               n: Optional[int] = None) -> Counter:
    """Counter {(omega, e): multiplicity} over all increasing labelled paths
    u => v with <wt, 2rho> <= cap (bounded by n when given)."""
    out: Counter = Counter()
    for path in increasing_paths(datum, u, v, order, n):
        base = _path_base_weight(datum, path)
        room = cap - dot(base, datum.two_rho)
        if room < 0:
            continue
        for omega, cnt in _count_window(
                datum, tuple(p for p, _ in path), room).items():
            out[(vadd(base, omega), len(path))] += cnt
    return out


def wts_bounded_at(datum: RootDatum, u: int, v: int, v2: int, omega) -> Counter:
    """wts(u => v --> v') at exact weight omega, via the order-with-tail
    construction: v' = v pi_{>n}."""
    u0 = datum.weyl.mul(datum.weyl.inverse[v], v2)
    order, n = datum.order_with_tail(u0)
    return wts_at(datum, u, v, omega, order, n)


def wts_bounded_window(datum: RootDatum, u: int, v: int, v2: int, cap: int) -> Counter:
    u0 = datum.weyl.mul(datum.weyl.inverse[v], v2)
    order, n = datum.order_with_tail(u0)
    return wts_window(datum, u, v, cap, order, n)


def enumerate_labelled_paths(datum: RootDatum, u: int, v: int, omega,
                             order: Optional[ReflectionOrder] = None,
                             n: Optional[int] = None):
    """Materialized labelled paths u => v of weight omega (for reports)."""
    omega = tuple(omega)
    out = []
    for path in increasing_paths(datum, u, v, order, n):
        roots = tuple(p for p, _ in path)
        bounds = tuple(b for _, b in path)
        rem = vsub(omega, _path_base_weight(datum, path))

        def rec(idx, rem, acc):
            if idx == len(roots):
                if not any(rem):
                    out.append(LabelledPath(
                        u, tuple((p, m + b) for (p, b), m in zip(path, acc))))
                return
            cv = datum.positive_coroots[roots[idx]]
            m = 0
            cur = rem
            while dot(cur, datum.two_rho) >= 0:
                rec(idx + 1, cur, acc + [m])
                cur = vsub(cur, cv)
                m += 1

        rec(0, rem, [])
    return out


# ---------------------------------------------------------------------------
# recursion identities (multiset level)

def dbg_recursion_check(datum: RootDatum, u: int, v: int, v2: int,
                        a, cap: int):
    """Both sides of the weight-multiset recursion for a simple affine root
    a = (alpha, k) with (v')^{-1} alpha negative, as window-capped Counters.

    Returns (lhs, rhs): lhs = wts(u => v --> v'); rhs is the shifted image of
    wts(s_a u => s_a v --> s_a v') plus, when u^{-1} alpha > 0, the extra
    term from wts(s_a u => v --> v')."""
    sp, k = a
    if sp >= datum.n_pos:
        p = sp - datum.n_pos
        alpha_vee = vneg(datum.positive_coroots[p])
    else:
        p = sp
        alpha_vee = datum.positive_coroots[p]
    s = datum.reflection_of_root[p]
    w = datum.weyl
    v2_inv_alpha = affine.signed_root_image(datum, w.inverse[v2], sp)
    if v2_inv_alpha < datum.n_pos:
        raise ValueError("precondition: (v')^-1 alpha must be negative")
    u_inv_alpha = affine.signed_root_image(datum, w.inverse[u], sp)
    su, sv, sv2 = w.mul(s, u), w.mul(s, v), w.mul(s, v2)
    v_inv_avee = w.act(w.inverse[v], alpha_vee)
    u_inv_avee = w.act(w.inverse[u], alpha_vee)
    shift = vscale(k, vsub(v_inv_avee, u_inv_avee))
    shift2 = dot(shift, datum.two_rho)

    lhs = wts_bounded_window(datum, u, v, v2, cap)
    rhs: Counter = Counter()
    for (omega, e), cnt in wts_bounded_window(
            datum, su, sv, sv2, cap + max(0, -shift2)).items():
        om2 = vadd(omega, shift)
        if dot(om2, datum.two_rho) <= cap:
            rhs[(om2, e)] += cnt
    if u_inv_alpha < datum.n_pos:  # u^{-1} alpha positive: extra term
        # the extra-term bijection adds one edge: lengths shift by +1
        extra_shift = vscale(-k, u_inv_avee)
        es2 = dot(extra_shift, datum.two_rho)
        for (omega, e), cnt in wts_bounded_window(
                datum, su, v, v2, cap + max(0, -es2)).items():
            om2 = vadd(omega, extra_shift)
            if dot(om2, datum.two_rho) <= cap:
                rhs[(om2, e + 1)] += cnt
    lhs = Counter({k2: c for k2, c in lhs.items()
                   if dot(k2[0], datum.two_rho) <= cap})
    return lhs, rhs


# ---------------------------------------------------------------------------
# the path correspondence into the extended affine Weyl group

def affine_path_correspondence(datum: RootDatum, path: LabelledPath,
                               base: AffineElement):
    """Image of a labelled path under the translation-free correspondence:
    vertices y_i = w_i eps^(mu_1 + m_1 b_1_vee + ...) starting at base.

    Each step must strictly increase the semi-infinite order, which for the
    edge (beta_i, m_i) at vertex w_i eps^mu_i is exactly the label condition
    m_i >= Phi+(-w_i beta_i); this is checked.  The result is the list of
    affine vertices; lengths of path and image agree by construction."""
    if path.start != base.w:
        raise ValueError("path start does not match the base point")
    out = [base]
    cur = base
    for p, m in path.steps:
        wb = datum.weyl.perms[cur.w][p]
        lower = 0 if wb < datum.n_pos else 1
        if m < lower:
            raise ValueError("label violates the semi-infinite edge condition")
        cur = AffineElement(
            datum.weyl.mul(cur.w, datum.reflection_of_root[p]),
            vadd(cur.mu, vscale(m, datum.positive_coroots[p])),
        )
        out.append(cur)
    return out
