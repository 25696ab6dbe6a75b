# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pure.py``; same signatures, same results."""

from libc.stdlib cimport malloc, calloc, free


cdef struct HomState:
    int n
    int m
    int injective
    int *stamp        # n*m
    int *size         # n
    int *assign       # n
    int *used         # m
    int *trail
    int trail_len
    int n_atoms
    int *atom_off     # n_atoms+1, offsets into atom_var
    int *atom_var
    int *cand_off     # n_atoms+1, offsets (in tuples) into cand_val
    int *cand_base    # n_atoms, offset of tuple block in cand_val
    int *cand_val
    int *inc_off      # n+1
    int *inc_atom
    int *sup          # n*m support marks
    int sup_tag
    int *sup_cnt      # n


cdef int _propagate(HomState *st, int v, int depth) nogil:
    cdef int m = st.m
    cdef int k, i, p, w, a, t, ar, ok, any_ok, base, tb
    for k in range(st.inc_off[v], st.inc_off[v + 1]):
        i = st.inc_atom[k]
        ar = st.atom_off[i + 1] - st.atom_off[i]
        st.sup_tag += 1
        for p in range(ar):
            st.sup_cnt[st.atom_var[st.atom_off[i] + p]] = 0
        any_ok = 0
        for t in range(st.cand_off[i], st.cand_off[i + 1]):
            tb = st.cand_base[i] + (t - st.cand_off[i]) * ar
            ok = 1
            for p in range(ar):
                w = st.atom_var[st.atom_off[i] + p]
                a = st.assign[w]
                if a >= 0:
                    if st.cand_val[tb + p] != a:
                        ok = 0
                        break
                elif st.stamp[w * m + st.cand_val[tb + p]] != 0:
                    ok = 0
                    break
            if not ok:
                continue
            any_ok = 1
            for p in range(ar):
                w = st.atom_var[st.atom_off[i] + p]
                if st.assign[w] < 0:
                    a = st.cand_val[tb + p]
                    if st.sup[w * m + a] != st.sup_tag:
                        st.sup[w * m + a] = st.sup_tag
                        st.sup_cnt[w] += 1
        if not any_ok:
            return 0
        for p in range(ar):
            w = st.atom_var[st.atom_off[i] + p]
            if st.assign[w] >= 0 or st.size[w] == st.sup_cnt[w]:
                continue
            base = w * m
            for a in range(m):
                if st.stamp[base + a] == 0 and st.sup[base + a] != st.sup_tag:
                    st.stamp[base + a] = depth
                    st.size[w] -= 1
                    st.trail[st.trail_len] = base + a
                    st.trail_len += 1
            if st.size[w] == 0:
                return 0
    return 1


cdef void _undo(HomState *st, int mark) nogil:
    cdef int k
    while st.trail_len > mark:
        st.trail_len -= 1
        k = st.trail[st.trail_len]
        st.stamp[k] = 0
        st.size[k // st.m] += 1


cdef int _search(HomState *st, int depth) nogil:
    cdef int best = -1
    cdef int v, a, base, mark
    for v in range(st.n):
        if st.assign[v] < 0 and (best < 0 or st.size[v] < st.size[best]):
            best = v
    if best < 0:
        return 1
    v = best
    base = v * st.m
    for a in range(st.m):
        if st.stamp[base + a] != 0 or (st.injective and st.used[a]):
            continue
        mark = st.trail_len
        st.assign[v] = a
        st.used[a] += 1
        if _propagate(st, v, depth) and _search(st, depth + 1):
            return 1
        st.used[a] -= 1
        st.assign[v] = -1
        _undo(st, mark)
    return 0


def hom_search(int n_vars, int n_values, domains, atom_vars, cands, injective=False):
    cdef HomState st
    cdef int i, j, p, v, k, a, total_vars, total_vals, ar, found
    cdef int n_atoms = len(atom_vars)
    st.n = n_vars
    st.m = n_values
    st.injective = 1 if injective else 0
    st.n_atoms = n_atoms
    st.trail_len = 0
    st.sup_tag = 0
    if n_vars == 0:
        return []
    if n_values == 0:
        return None
    for dom in domains:
        if len(dom) == 0:
            return None

    total_vars = sum(len(vs) for vs in atom_vars)
    total_vals = sum(len(c) * len(vs) for c, vs in zip(cands, atom_vars))
    st.stamp = <int *> malloc(n_vars * n_values * sizeof(int))
    st.sup = <int *> calloc(n_vars * n_values, sizeof(int))
    st.size = <int *> calloc(n_vars, sizeof(int))
    st.sup_cnt = <int *> calloc(n_vars, sizeof(int))
    st.assign = <int *> malloc(n_vars * sizeof(int))
    st.used = <int *> calloc(n_values, sizeof(int))
    st.trail = <int *> malloc((n_vars * n_values + 1) * sizeof(int))
    st.atom_off = <int *> malloc((n_atoms + 1) * sizeof(int))
    st.atom_var = <int *> malloc((total_vars + 1) * sizeof(int))
    st.cand_off = <int *> malloc((n_atoms + 1) * sizeof(int))
    st.cand_base = <int *> malloc((n_atoms + 1) * sizeof(int))
    st.cand_val = <int *> malloc((total_vals + 1) * sizeof(int))
    st.inc_off = <int *> calloc(n_vars + 1, sizeof(int))
    st.inc_atom = <int *> malloc((total_vars + 1) * sizeof(int))
    try:
        for k in range(n_vars * n_values):
            st.stamp[k] = -1
        for v in range(n_vars):
            st.assign[v] = -1
            for a in domains[v]:
                st.stamp[v * n_values + a] = 0
            st.size[v] = len(domains[v])
        # flatten constraints
        p = 0
        k = 0
        st.cand_off[0] = 0
        for i in range(n_atoms):
            st.atom_off[i] = p
            vs = atom_vars[i]
            ar = len(vs)
            for j in range(ar):
                st.atom_var[p + j] = vs[j]
            p += ar
            st.cand_base[i] = k
            for t in cands[i]:
                for j in range(ar):
                    st.cand_val[k] = t[j]
                    k += 1
            st.cand_off[i + 1] = st.cand_off[i] + len(cands[i])
        st.atom_off[n_atoms] = p
        # incidence lists, atoms in ascending order per variable
        incident = [[] for _ in range(n_vars)]
        for i in range(n_atoms):
            for v in sorted(set(atom_vars[i])):
                incident[v].append(i)
        k = 0
        for v in range(n_vars):
            st.inc_off[v] = k
            for i in incident[v]:
                st.inc_atom[k] = i
                k += 1
        st.inc_off[n_vars] = k
        with nogil:
            found = _search(&st, 1)
        if found:
            return [st.assign[v] for v in range(n_vars)]
        return None
    finally:
        free(st.stamp); free(st.sup); free(st.size); free(st.sup_cnt)
        free(st.assign); free(st.used); free(st.trail)
        free(st.atom_off); free(st.atom_var); free(st.cand_off)
        free(st.cand_base); free(st.cand_val); free(st.inc_off); free(st.inc_atom)


cdef inline long long _q_set(long long *adj, long long s, int v, int *stack) nogil:
    cdef long long seen = (<long long> 1) << v
    cdef long long out = 0
    cdef long long nb, low
    cdef int top = 0
    cdef int u, w
    stack[top] = v
    top += 1
    while top > 0:
        top -= 1
        u = stack[top]
        nb = adj[u] & ~seen
        seen |= nb
        while nb:
            low = nb & -nb
            w = 0
            while ((<long long> 1) << w) != low:
                w += 1
            nb ^= low
            if (s >> w) & 1:
                stack[top] = w
                top += 1
            else:
                out |= low
    return out


def q_set(adj, long long s, int v):
    cdef int n = len(adj)
    cdef long long *a = <long long *> malloc(n * sizeof(long long))
    cdef int *stack = <int *> malloc((n + 1) * sizeof(int))
    cdef int i
    try:
        for i in range(n):
            a[i] = adj[i]
        return _q_set(a, s, v, stack)
    finally:
        free(a)
        free(stack)


def elimination_bags(int n, adj):
    if n > 30:
        raise OverflowError("too many vertices for the compiled kernel")
    cdef long long full = (<long long> 1) << n
    cdef long long *a = <long long *> malloc(n * sizeof(long long))
    cdef int *stack = <int *> malloc((n + 1) * sizeof(int))
    cdef long long s
    cdef int v, i
    cdef long long[:] view
    import array
    out = array.array("q", [-1]) * (full * n)
    view = out
    try:
        for i in range(n):
            a[i] = adj[i]
        with nogil:
            for s in range(full):
                for v in range(n):
                    if not (s >> v) & 1:
                        view[s * n + v] = _q_set(a, s, v, stack) | ((<long long> 1) << v)
    finally:
        free(a)
        free(stack)
    return out.tolist()


def elimination_dp(int n, bags, rank):
    cdef long long full = (<long long> 1) << n
    cdef long long s, rest
    cdef int v, arg
    cdef long long r, c, top
    cdef long long[:] bview
    cdef long long[:] rview
    import array
    barr = array.array("q", bags)
    rarr = array.array("q", rank)
    bview = barr
    rview = rarr
    best_arr = array.array("q", [0]) * full
    choice_arr = array.array("q", [-1]) * full
    cdef long long[:] best = best_arr
    cdef long long[:] choice = choice_arr
    best[0] = -1
    with nogil:
        for s in range(1, full):
            top = 0
            arg = -1
            for v in range(n):
                if (s >> v) & 1:
                    rest = s ^ ((<long long> 1) << v)
                    r = rview[bview[rest * n + v]]
                    c = best[rest]
                    if r > c:
                        c = r
                    if arg < 0 or c < top:
                        top = c
                        arg = v
            best[s] = top
            choice[s] = arg
    return best_arr.tolist(), choice_arr.tolist()


def pair_checks(int n, vals):
    cdef long long full = (<long long> 1) << n
    cdef long long x, y
    cdef long long bx, by, lhs, rhs
    cdef int monotone = 1, modular = 1, submodular = 1
    cdef long long[:] v
    import array
    arr = array.array("q", vals)   # OverflowError for values beyond int64
    for bx in arr:
        if bx > 2 ** 61 or bx < -2 ** 61:
            raise OverflowError("values too large for the compiled kernel")
    v = arr
    with nogil:
        for x in range(full):
            bx = v[x]
            for y in range(full):
                by = v[y]
                if (x & y) == x and bx > by:
                    monotone = 0
                lhs = bx + by
                rhs = v[x & y] + v[x | y]
                if lhs != rhs:
                    modular = 0
                    if lhs < rhs:
                        submodular = 0
            if not (monotone or modular or submodular):
                break
    return bool(monotone), bool(modular), bool(submodular)
