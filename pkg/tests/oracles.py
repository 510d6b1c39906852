"""Independent reference computations used only by the tests.

These avoid the library's modules on purpose: weights are listed by hand in
epsilon coordinates of gl(n+1) and tensor products are decomposed with the
Brauer-Klimyk (Racah-Speiser) reflection rule.
"""
from collections import Counter
from itertools import combinations, combinations_with_replacement


def _unit(n1, *idx, sign=1):
    v = [0] * n1
    for i in idx:
        v[i] += sign
    return tuple(v)


def eps_weights(sym, n):
    n1 = n + 1
    if sym == "V":
        return [_unit(n1, i) for i in range(n1)]
    if sym == "V'":
        return [_unit(n1, i, sign=-1) for i in range(n1)]
    if sym == "S":
        return [_unit(n1, i, j) for i, j in combinations_with_replacement(range(n1), 2)]
    if sym == "S'":
        return [_unit(n1, i, j, sign=-1) for i, j in combinations_with_replacement(range(n1), 2)]
    if sym == "Lam":
        return [_unit(n1, i, j) for i, j in combinations(range(n1), 2)]
    if sym == "Lam'":
        return [_unit(n1, i, j, sign=-1) for i, j in combinations(range(n1), 2)]
    if sym == "T":
        return [tuple([0] * n1)]
    if sym == "g":
        out = [tuple([0] * n1)] * n
        for i in range(n1):
            for j in range(n1):
                if i != j:
                    v = [0] * n1
                    v[i], v[j] = 1, -1
                    out.append(tuple(v))
        return out
    raise KeyError(sym)


def top_eps(sym, n):
    n1 = n + 1
    return {"V": _unit(n1, 0), "V'": _unit(n1, n, sign=-1), "S": _unit(n1, 0, 0),
            "S'": _unit(n1, n, n, sign=-1), "Lam": _unit(n1, 0, 1), "Lam'": _unit(n1, n - 1, n, sign=-1),
            "T": tuple([0] * n1), "g": tuple(1 if i == 0 else -1 if i == n else 0 for i in range(n1))}[sym]


def pairing(v):
    return tuple(v[i] - v[i + 1] for i in range(len(v) - 1))


def brauer_klimyk(x, y, n):
    """Multiplicities of every irreducible in x⊗y, keyed by Cartan pairings."""
    n1 = n + 1
    rho = list(range(n, -1, -1))
    lam = top_eps(x, n)
    out = Counter()
    for mu in eps_weights(y, n):
        v = [lam[i] + mu[i] + rho[i] for i in range(n1)]
        if len(set(v)) < n1:
            continue
        # sign of the sorting permutation
        order = sorted(range(n1), key=lambda i: -v[i])
        sign, seen = 1, [False] * n1
        for i in range(n1):
            if not seen[i]:
                j, length = i, 0
                while not seen[j]:
                    seen[j] = True
                    j = order[j]
                    length += 1
                if length % 2 == 0:
                    sign = -sign
        s = sorted(v, reverse=True)
        out[pairing([s[i] - rho[i] for i in range(n1)])] += sign
    return +out


def truncated(x, y, n):
    """Counts of the eight small summands, keyed by label symbol."""
    bk = brauer_klimyk(x, y, n)
    return {sym: bk.get(pairing(top_eps(sym, n)), 0)
            for sym in ["g", "S", "Lam", "S'", "Lam'", "V", "V'", "T"]}


def dims(n):
    return {sym: len(eps_weights(sym, n)) for sym in ["g", "S", "Lam", "S'", "Lam'", "V", "V'", "T"]}


# ---------------------------------------------------------------- fixture branching

def classical_eps_weights(kind, n):
    """Weights of the sl(n+1) Cartan on a matrix basis of the classical algebra.

    The torus diag(t, -t) (plus a zero for the odd orthogonal case) gives the matrix
    entry (a, b) the weight d_a - d_b; entries are counted straight from the block shape.
    """
    n1 = n + 1

    def e(i, s=1):
        return _unit(n1, i, sign=s)

    def plus(u, v):
        return tuple(a + b for a, b in zip(u, v))

    out = []
    # X block: gl(n+1), weights eps_i - eps_j (the diagonal gives n+1 zeros)
    for i in range(n1):
        for j in range(n1):
            out.append(plus(e(i), e(j, -1)))
    pairs = combinations_with_replacement(range(n1), 2) if kind == "sp" else combinations(range(n1), 2)
    pairs = list(pairs)
    out += [plus(e(i), e(j)) for i, j in pairs]
    out += [plus(e(i, -1), e(j, -1)) for i, j in pairs]
    if kind == "so-odd":
        out += [e(i) for i in range(n1)] + [e(i, -1) for i in range(n1)]
    return Counter(out)


def current_dual_eps_weights(n):
    return Counter(eps_weights("g", n) * 2)


def peel(weights, n):
    """Irreducible content of a weight multiset by repeatedly removing the character of the
    top weight.  Weights are normalized to sum zero (sl, not gl)."""
    n1 = n + 1

    def norm(w):
        return pairing(w)

    left = Counter()
    for w, c in weights.items():
        left[norm(w)] += c
    tops = {pairing(top_eps(s, n)): s for s in ["g", "S", "Lam", "S'", "Lam'", "V", "V'", "T"]}
    out = Counter()
    while +left:
        # a dominant weight maximal in the dominance order: largest height first
        dom = [w for w, c in left.items() if c > 0 and all(x >= 0 for x in w)]
        w = max(dom, key=lambda v: sum((i + 1) * (n1 - i - 1) * x for i, x in enumerate(v)))
        sym = tops.get(w)
        if sym is None:
            raise ValueError(f"unexpected highest weight {w}")
        out[sym] += 1
        for u in eps_weights(sym, n):
            left[norm(u)] -= 1
        left = +left
    return dict(out)
