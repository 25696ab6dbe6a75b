"""Reference implementations of the integer kernels.

The compiled module ``_ckernels`` implements the same functions with the same
search order, so both backends return identical results.
"""


def hom_search(n_vars, n_values, domains, atom_vars, cands, injective=False):
    """Backtracking search for an assignment ``var -> value``.

    ``domains[v]``  ascending candidate values of variable ``v``.
    ``atom_vars[i]`` variable index at each checked position of constraint ``i``.
    ``cands[i]``    allowed value tuples for constraint ``i`` (same positions).

    Variable choice is dynamic: smallest current domain, ties to the lowest
    index.  Values are tried in ascending order.  After each assignment every
    constraint touching the variable is checked for a supporting tuple and the
    domains of its unassigned variables are pruned to supported values.
    Returns the first complete assignment, or None.
    """
    m = n_values
    # stamp[v*m + a]: 0 present, -1 never present, k > 0 removed at depth k
    stamp = [-1] * (n_vars * m)
    size = [0] * n_vars
    for v, dom in enumerate(domains):
        for a in dom:
            stamp[v * m + a] = 0
        size[v] = len(dom)
    incident = [[] for _ in range(n_vars)]
    for i, vs in enumerate(atom_vars):
        for v in sorted(set(vs)):
            incident[v].append(i)
    assign = [-1] * n_vars
    used = [0] * m
    trail = []
    if any(s == 0 for s in size):
        return None

    def propagate(v, depth):
        for i in incident[v]:
            vs = atom_vars[i]
            support = {}
            any_ok = False
            for t in cands[i]:
                ok = True
                for p, w in enumerate(vs):
                    a = assign[w]
                    if a >= 0:
                        if t[p] != a:
                            ok = False
                            break
                    elif stamp[w * m + t[p]] != 0:
                        ok = False
                        break
                if not ok:
                    continue
                any_ok = True
                for p, w in enumerate(vs):
                    if assign[w] < 0:
                        support.setdefault(w, set()).add(t[p])
            if not any_ok:
                return False
            for w in vs:
                if assign[w] >= 0 or w in support and size[w] == len(support[w]):
                    continue
                keep = support.get(w, ())
                base = w * m
                for a in range(m):
                    if stamp[base + a] == 0 and a not in keep:
                        stamp[base + a] = depth
                        size[w] -= 1
                        trail.append(base + a)
                if size[w] == 0:
                    return False
        return True

    def undo(mark):
        while len(trail) > mark:
            k = trail.pop()
            stamp[k] = 0
            size[k // m] += 1

    def search(depth):
        best = -1
        for v in range(n_vars):
            if assign[v] < 0 and (best < 0 or size[v] < size[best]):
                best = v
        if best < 0:
            return True
        v = best
        base = v * m
        for a in range(m):
            if stamp[base + a] != 0 or (injective and used[a]):
                continue
            mark = len(trail)
            assign[v] = a
            used[a] += 1
            if propagate(v, depth) and search(depth + 1):
                return True
            used[a] -= 1
            assign[v] = -1
            undo(mark)
        return False

    if search(1):
        return list(assign)
    return None


def q_set(adj, s, v):
    """Vertices outside ``s | {v}`` reachable from ``v`` through vertices of ``s``."""
    seen = 1 << v
    stack = [v]
    out = 0
    while stack:
        u = stack.pop()
        nb = adj[u] & ~seen
        seen |= nb
        while nb:
            low = nb & -nb
            w = low.bit_length() - 1
            nb ^= low
            if (s >> w) & 1:
                stack.append(w)
            else:
                out |= low
    return out


def elimination_bags(n, adj):
    """Bag created by eliminating ``v`` after the set ``s``, for all ``v`` not in ``s``.

    Flat list indexed by ``s * n + v``; -1 where ``v`` is in ``s``.
    """
    bags = [-1] * ((1 << n) * n)
    for s in range(1 << n):
        for v in range(n):
            if not (s >> v) & 1:
                bags[s * n + v] = q_set(adj, s, v) | (1 << v)
    return bags


def elimination_dp(n, bags, rank):
    """Minimise the largest bag rank over elimination orderings.

    ``rank[mask]`` is the rank of a bag's measure (higher is worse).
    Returns ``(best, choice)`` where ``best[s]`` is the optimal rank for
    eliminating exactly ``s`` first (-1 for the empty set) and ``choice[s]``
    the vertex eliminated last.
    """
    full = 1 << n
    best = [0] * full
    choice = [-1] * full
    best[0] = -1
    for s in range(1, full):
        top = None
        arg = -1
        for v in range(n):
            if (s >> v) & 1:
                rest = s ^ (1 << v)
                r = rank[bags[rest * n + v]]
                c = best[rest]
                if r > c:
                    c = r
                if top is None or c < top:
                    top = c
                    arg = v
        best[s] = top
        choice[s] = arg
    return best, choice


def pair_checks(n, vals):
    """Exhaustive pairwise checks of a set function given as ``vals[mask]``.

    Returns ``(monotone, modular, submodular)``.
    """
    full = 1 << n
    monotone = modular = submodular = True
    for x in range(full):
        bx = vals[x]
        for y in range(full):
            by = vals[y]
            if (x & y) == x and bx > by:
                monotone = False
            lhs = bx + by
            rhs = vals[x & y] + vals[x | y]
            if lhs != rhs:
                modular = False
                if lhs < rhs:
                    submodular = False
        if not (monotone or modular or submodular):
            break
    return monotone, modular, submodular
