"""Felsch-style coset enumeration over the trivial subgroup.

The strategy is deduction-stack driven: every table definition is scanned
against all relator rotations through that generator, with coincidences
resolved through a union-find merge queue (Holt's presentation of the
algorithm).  Definitions fill the first empty slot in (coset, column) order,
so runs are deterministic given the presentation and limit.

Relators here are overwhelmingly length 2 and 3 (pair relators), so those
scans are specialized; longer words fall back to a generic two-ended scan.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .presentations import Presentation, Word

DEFAULT_COSET_LIMIT = 10 ** 6

CLOSED = "closed"
LIMIT_EXCEEDED = "limit-exceeded"


class TableNotClosedError(RuntimeError):
    """A word-problem query needs a closed coset table."""


@dataclass
class CosetTable:
    """Result of an enumeration: live rows renumbered 0..coset_count-1.

    ``table[x][col]`` is the target coset (or -1 while partial); columns come
    in pairs, 2*(j-1) for generator j and 2*(j-1)+1 for its inverse.
    """

    presentation: Presentation
    state: str
    coset_count: int
    high_water: int
    limit: int
    table: list[list[int]] = field(repr=False)

    @property
    def closed(self) -> bool:
        return self.state == CLOSED

    def column(self, signed_gen: int) -> int:
        j = abs(signed_gen)
        if j < 1 or j > self.presentation.num_generators:
            raise ValueError(f"generator index {signed_gen} out of range")
        return 2 * (j - 1) + (0 if signed_gen > 0 else 1)

    def trace(self, word: Word, start: int = 0) -> int:
        if not self.closed:
            raise TableNotClosedError(f"cannot trace words in a {self.state} table")
        x = start
        for signed in word:
            x = self.table[x][self.column(signed)]
        return x


def trace_word(t: CosetTable, word: Word) -> int:
    """Image of coset 0 under the word; 0 iff the word is the identity."""
    return t.trace(word, 0)


def todd_coxeter(P: Presentation, limit: int = DEFAULT_COSET_LIMIT) -> CosetTable:
    if limit < 1:
        raise ValueError(f"coset limit must be >= 1, got {limit}")
    k = P.num_generators
    W = 2 * k

    def col_of(signed: int) -> int:
        return 2 * (signed - 1) if signed > 0 else 2 * (-signed - 1) + 1

    # rotation forms of every relator and its inverse, grouped by first column
    forms: set[tuple[int, ...]] = set()
    for w in P.relators:
        cols = tuple(col_of(x) for x in w)
        inv = tuple(c ^ 1 for c in reversed(cols))
        for word in (cols, inv):
            for shift in range(len(word)):
                forms.add(word[shift:] + word[:shift])
    rot2: list[list[int]] = [[] for _ in range(W)]  # (s, u) -> u
    rot3: list[list[int]] = [[] for _ in range(W)]  # (s, u, v) -> u, v interleaved
    rot_other: list[list[tuple[int, ...]]] = [[] for _ in range(W)]
    rot1_selfloop = [False] * W
    for f in sorted(forms):
        s = f[0]
        if len(f) == 3:
            rot3[s].extend((f[1], f[2]))
        elif len(f) == 2:
            rot2[s].append(f[1])
        elif len(f) == 1:
            rot1_selfloop[s] = True
        else:
            rot_other[s].append(f)

    tab: list[int] = []
    parent: list[int] = []
    dead = 0
    ded: list[int] = []  # deduction stack of alpha * W + s

    def rep(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def new_coset() -> int:
        parent.append(len(parent))
        tab.extend([-1] * W)
        return len(parent) - 1

    def coincidence(a: int, b: int):
        nonlocal dead
        queue: list[int] = []
        qi = 0

        def merge(x: int, y: int):
            nonlocal dead
            x, y = rep(x), rep(y)
            if x == y:
                return
            if x > y:
                x, y = y, x
            parent[y] = x
            dead += 1
            queue.append(y)

        merge(a, b)
        while qi < len(queue):
            g = queue[qi]
            qi += 1
            base = g * W
            for x in range(W):
                d = tab[base + x]
                if d == -1:
                    continue
                tab[base + x] = -1
                tab[d * W + (x ^ 1)] = -1
                mu = rep(g)
                nu = rep(d)
                xi = tab[mu * W + x]
                if xi != -1:
                    merge(nu, xi)
                else:
                    ze = tab[nu * W + (x ^ 1)]
                    if ze != -1:
                        merge(mu, ze)
                    else:
                        tab[mu * W + x] = nu
                        tab[nu * W + (x ^ 1)] = mu
                        ded.append(mu * W + x)

    def scan_generic(start: int, w: tuple[int, ...]):
        L = len(w)
        f = start
        i = 0
        while i < L:
            nxt = tab[f * W + w[i]]
            if nxt == -1:
                break
            f = nxt
            i += 1
        if i == L:
            if f != start:
                coincidence(f, start)
            return
        b = start
        j = L - 1
        while j >= i:
            prv = tab[b * W + (w[j] ^ 1)]
            if prv == -1:
                break
            b = prv
            j -= 1
        if j < i:
            coincidence(f, b)
        elif j == i:
            mate = tab[b * W + (w[i] ^ 1)]
            if mate == -1:
                tab[f * W + w[i]] = b
                tab[b * W + (w[i] ^ 1)] = f
                ded.append(f * W + w[i])
            elif mate != f:
                coincidence(f, mate)

    def scan_edge(alpha: int, s: int, beta: int):
        """Check every rotation starting with column s against alpha.s = beta.

        Bails out as soon as alpha dies or the edge moves (a coincidence was
        processed); re-homed edges are re-pushed by the merge queue.
        """
        abase = alpha * W
        bbase = beta * W
        edge_slot = abase + s
        if rot1_selfloop[s] and alpha != beta:
            coincidence(alpha, beta)
            return
        for u in rot2[s]:
            w0 = tab[bbase + u]
            if w0 == -1:
                m = tab[abase + (u ^ 1)]
                if m == -1:
                    tab[bbase + u] = alpha
                    tab[abase + (u ^ 1)] = beta
                    ded.append(beta * W + u)
                elif m != beta:
                    coincidence(beta, m)
            elif w0 != alpha:
                coincidence(w0, alpha)
            if parent[alpha] != alpha or tab[edge_slot] != beta:
                return
        pairs = rot3[s]
        for idx in range(0, len(pairs), 2):
            u = pairs[idx]
            v = pairs[idx + 1]
            z = tab[bbase + u]
            if z != -1:
                zslot = z * W + v
                w0 = tab[zslot]
                if w0 == -1:
                    m = tab[abase + (v ^ 1)]
                    if m == -1:
                        tab[zslot] = alpha
                        tab[abase + (v ^ 1)] = z
                        ded.append(z * W + v)
                    elif m != z:
                        coincidence(z, m)
                elif w0 != alpha:
                    coincidence(w0, alpha)
            else:
                t0 = tab[abase + (v ^ 1)]
                if t0 != -1:
                    m = tab[t0 * W + (u ^ 1)]
                    if m == -1:
                        tab[bbase + u] = t0
                        tab[t0 * W + (u ^ 1)] = beta
                        ded.append(beta * W + u)
                    elif m != beta:
                        coincidence(beta, m)
            if parent[alpha] != alpha or tab[edge_slot] != beta:
                return
        for w in rot_other[s]:
            scan_generic(alpha, w)
            if parent[alpha] != alpha or tab[edge_slot] != beta:
                return

    def process_deductions():
        while ded:
            slot = ded.pop()
            alpha, s = divmod(slot, W)
            if parent[alpha] != alpha:
                continue
            beta = tab[slot]
            if beta == -1:
                continue
            scan_edge(alpha, s, beta)
            if parent[beta] == beta:
                a2 = tab[beta * W + (s ^ 1)]
                if a2 != -1:
                    scan_edge(beta, s ^ 1, a2)

    new_coset()
    exceeded = False
    restart = 0
    while not exceeded:
        alpha = restart
        while alpha < len(parent) and not exceeded:
            if parent[alpha] != alpha:
                alpha += 1
                continue
            abase = alpha * W
            s = 0
            while s < W:
                if parent[alpha] != alpha:
                    break
                if tab[abase + s] == -1:
                    if len(parent) >= limit:
                        exceeded = True
                        break
                    beta = new_coset()
                    tab[abase + s] = beta
                    tab[beta * W + (s ^ 1)] = alpha
                    ded.append(abase + s)
                    process_deductions()
                else:
                    s += 1
            alpha += 1
        if exceeded:
            break
        # coincidences can transiently erase slots in rows already passed;
        # rescan until a full pass finds every live row complete
        gap = next(
            (
                x
                for x in range(len(parent))
                if parent[x] == x and -1 in tab[x * W : (x + 1) * W]
            ),
            None,
        )
        if gap is None:
            break
        restart = gap

    # compress live cosets, keeping their relative order (0 stays 0)
    live = [x for x in range(len(parent)) if parent[x] == x]
    renum = {old: new for new, old in enumerate(live)}
    rows = []
    for old in live:
        base = old * W
        rows.append(
            [-1 if tab[base + s] == -1 else renum[tab[base + s]] for s in range(W)]
        )
    return CosetTable(
        presentation=P,
        state=LIMIT_EXCEEDED if exceeded else CLOSED,
        coset_count=len(live),
        high_water=len(parent),
        limit=limit,
        table=rows,
    )
