# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels over S_n, B_n and perfect matchings of [2n].

Same signatures and results as ``_pykernels``.
"""

cdef enum:
    MAXN = 16


cdef inline bint _next_perm(int* a, int lo, int hi):
    # lexicographic successor of a[lo:hi]; returns False after the last one
    cdef int i = hi - 2, j, t
    while i >= lo and a[i] >= a[i + 1]:
        i -= 1
    if i < lo:
        return False
    j = hi - 1
    while a[j] <= a[i]:
        j -= 1
    t = a[i]; a[i] = a[j]; a[j] = t
    i += 1
    j = hi - 1
    while i < j:
        t = a[i]; a[i] = a[j]; a[j] = t
        i += 1
        j -= 1
    return True


cdef inline int _runs(int* s, int m):
    cdef int i, changes = 0
    if m < 2:
        return 0
    for i in range(1, m - 1):
        if (s[i - 1] < s[i]) != (s[i] < s[i + 1]):
            changes += 1
    return changes + 1


def symmetric_stats(int n, int first=0):
    if n < 1 or n > MAXN - 2:
        raise ValueError("n out of range for the compiled kernel")
    if first < 0 or first > n:
        raise ValueError("first entry must lie in 1..n (0 for no restriction)")
    cdef int p[MAXN]
    cdef int s[MAXN]
    cdef int inv[MAXN]
    cdef int odd[MAXN]
    cdef int even[MAXN]
    cdef long long ip[MAXN], lp[MAXN], de[MAXN], ar[MAXN], ud[MAXN], la[MAXN]
    cdef long long xy[MAXN][MAXN]
    cdef long long alt = 0, ralt = 0
    cdef int i, j, k, v, lo, cnt, best, o, e
    cdef bint ok_alt, ok_ralt

    for i in range(MAXN):
        ip[i] = lp[i] = de[i] = ar[i] = ud[i] = la[i] = 0
        for j in range(MAXN):
            xy[i][j] = 0

    if first:
        p[0] = first
        k = 1
        for v in range(1, n + 1):
            if v != first:
                p[k] = v
                k += 1
        lo = 1
    else:
        for i in range(n):
            p[i] = i + 1
        lo = 0

    while True:
        # interior peaks and descents
        cnt = 0
        for i in range(1, n - 1):
            if p[i - 1] < p[i] and p[i] > p[i + 1]:
                cnt += 1
        ip[cnt] += 1
        cnt = 0
        for i in range(n - 1):
            if p[i] > p[i + 1]:
                cnt += 1
        de[cnt] += 1
        # sequence with a leading zero
        s[0] = 0
        for i in range(n):
            s[i + 1] = p[i]
        cnt = 0
        for i in range(1, n):
            if s[i - 1] < s[i] and s[i] > s[i + 1]:
                cnt += 1
        lp[cnt] += 1
        ar[_runs(p, n)] += 1
        ud[_runs(s, n + 1)] += 1
        # longest alternating subsequence a > b < c > ...
        best = 1
        for i in range(n):
            odd[i] = 1
            even[i] = 0
            for j in range(i):
                if p[j] > p[i] and odd[j] + 1 > even[i]:
                    even[i] = odd[j] + 1
                if p[j] < p[i] and even[j] > 0 and even[j] + 1 > odd[i]:
                    odd[i] = even[j] + 1
            if odd[i] > best:
                best = odd[i]
            if even[i] > best:
                best = even[i]
        la[best] += 1
        # cycle peaks by parity
        for i in range(n):
            inv[p[i]] = i + 1
        o = 0
        e = 0
        for v in range(1, n + 1):
            if inv[v] < v and v > p[v - 1]:
                if v & 1:
                    o += 1
                else:
                    e += 1
        xy[o][e] += 1
        ok_alt = True
        ok_ralt = True
        for i in range(n - 1):
            if (p[i] > p[i + 1]) != (i % 2 == 0):
                ok_alt = False
            if (p[i] < p[i + 1]) != (i % 2 == 0):
                ok_ralt = False
        if ok_alt:
            alt += 1
        if ok_ralt:
            ralt += 1
        if not _next_perm(p, lo, n):
            break

    return {
        "interior_peaks": [ip[i] for i in range(n + 2)],
        "left_peaks": [lp[i] for i in range(n + 2)],
        "descents": [de[i] for i in range(n + 2)],
        "alternating_runs": [ar[i] for i in range(n + 2)],
        "up_down_runs": [ud[i] for i in range(n + 2)],
        "longest_alt_subseq": [la[i] for i in range(n + 2)],
        "cycle_peaks": [[xy[i][j] for j in range(n + 1)] for i in range(n + 1)],
        "alternating": alt,
        "reverse_alternating": ralt,
    }


def signed_descents(int n):
    if n < 1 or n > 12:
        raise ValueError("n out of range for the compiled kernel")
    cdef int p[MAXN]
    cdef long long counts[MAXN]
    cdef int i, d, prev, cur
    cdef unsigned int mask, top = 1u << n
    for i in range(MAXN):
        counts[i] = 0
    for i in range(n):
        p[i] = i + 1
    while True:
        for mask in range(top):
            prev = 0
            d = 0
            for i in range(n):
                cur = -p[i] if (mask >> i) & 1 else p[i]
                if prev > cur:
                    d += 1
                prev = cur
            counts[d] += 1
        if not _next_perm(p, 0, n):
            break
    return [counts[i] for i in range(n + 1)]


def matchings_odd_smaller(int n):
    if n < 0 or n > 12:
        raise ValueError("n out of range for the compiled kernel")
    cdef long long counts[MAXN]
    cdef int used[2 * MAXN + 2]
    cdef int partner[MAXN]
    cdef int lows[MAXN]
    cdef int depth, lo, c, k, i, m = 2 * n
    for i in range(MAXN):
        counts[i] = 0
    if n == 0:
        return [1]
    for i in range(m + 2):
        used[i] = 0
    # iterative backtracking: level d pairs the smallest free element lows[d]
    depth = 0
    k = 0
    lo = 1
    lows[0] = 1
    used[1] = 1
    partner[0] = 1
    while depth >= 0:
        # advance partner of current level to the next free candidate
        c = partner[depth] + 1
        if partner[depth] > lows[depth]:
            used[partner[depth]] = 0
        while c <= m and used[c]:
            c += 1
        if c > m:
            # exhausted this level; undo it and drop the parent's contribution
            used[lows[depth]] = 0
            depth -= 1
            if depth >= 0:
                k -= lows[depth] & 1
            continue
        partner[depth] = c
        used[c] = 1
        if depth + 1 == n:
            counts[k + (lows[depth] & 1)] += 1
            continue
        k += lows[depth] & 1
        lo = lows[depth] + 1
        while used[lo]:
            lo += 1
        depth += 1
        lows[depth] = lo
        used[lo] = 1
        partner[depth] = lo
    return [counts[i] for i in range(n + 1)]
