"""Nerves of finite categories, integral homology and fundamental groups.

Chains are normalized: a k-simplex is a string of k composable
non-identity morphisms, and faces that compose to an identity are dropped.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import Disconnected
from .fincat import FiniteCategory, connected_components, find_initial, find_terminal

DEFAULT_DEPTH = 4


@dataclass(frozen=True)
class NerveComplex:
    dimension_bound: int
    simplices: tuple[tuple[tuple[int, ...], ...], ...]
    # boundaries[k] is the matrix of d_k: rows index (k-1)-simplices, columns k-simplices
    boundaries: tuple[tuple[tuple[int, ...], ...], ...]
    vertex_count: int = 0

    def counts(self) -> list[int]:
        return [len(s) for s in self.simplices]


@dataclass
class HomologyReport:
    betti: list[int]
    torsion: list[list[int]]
    reduced: bool
    ranks: list[int] = field(default_factory=list)

    def is_acyclic(self) -> bool:
        return all(b == 0 for b in self.betti) and not any(self.torsion)


class ContractibilityStatus(str, Enum):
    CONTRACTIBLE = "Contractible"
    NOT_CONTRACTIBLE = "NotContractible"
    PROBABLY_CONTRACTIBLE = "ProbablyContractible"
    UNKNOWN = "Unknown"


@dataclass
class ContractibilityVerdict:
    status: ContractibilityStatus
    evidence: dict


class Pi1Status(str, Enum):
    TRIVIAL = "Trivial"
    NON_TRIVIAL = "NonTrivial"
    UNKNOWN = "Unknown"


@dataclass
class Pi1Presentation:
    generators: list[str]
    relators: list[list[tuple[str, int]]]
    status: Pi1Status

    def format(self) -> str:
        rels = [" ".join(g if e == 1 else f"{g}^-1" for g, e in r) for r in self.relators]
        return f"< {', '.join(self.generators)} | {'; '.join(rels)} >"


# ---------------------------------------------------------------------------
# Smith normal form


def smith_diagonal(matrix) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, each dividing the next.

    Exact integer elimination; the pivot is always an entry of least
    absolute value in the remaining block.
    """
    A = [list(r) for r in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    diag: list[int] = []
    t = 0
    while t < m and t < n:
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            moved = False
            for i in range(t + 1, m):
                v = A[i][t]
                if v:
                    q = v // p
                    ri, rt = A[i], A[t]
                    for j in range(t, n):
                        if rt[j]:
                            ri[j] -= q * rt[j]
                    if ri[t]:
                        A[t], A[i] = A[i], A[t]
                        moved = True
                        break
            if moved:
                continue
            rt = A[t]
            for j in range(t + 1, n):
                v = rt[j]
                if v:
                    q = v // p
                    for row in A[t:]:
                        if row[t]:
                            row[j] -= q * row[t]
                    if rt[j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        moved = True
                        break
            if moved:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            ri, rt = A[bad], A[t]
            for j in range(t, n):
                rt[j] += ri[j]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


# ---------------------------------------------------------------------------
# nerve and homology


def nerve(C: FiniteCategory, d: int = DEFAULT_DEPTH) -> NerveComplex:
    """Normalized nerve truncated at dimension ``d``."""
    if d < 1:
        raise ValueError("nerve depth must be at least 1")
    nonid = C.nonidentity
    out_of = {x: [m for m in nonid if C.src[m] == x] for x in C.objects}
    simplices: list[list[tuple[int, ...]]] = [[(x,) for x in C.objects]]
    simplices.append([(m,) for m in nonid])
    for k in range(2, d + 1):
        nxt = []
        for s in simplices[-1]:
            for m in out_of[C.tgt[s[-1]]]:
                nxt.append(s + (m,))
        simplices.append(nxt)
    index = [{s: i for i, s in enumerate(level)} for level in simplices]
    boundaries: list[tuple] = [()]
    for k in range(1, d + 1):
        rows, cols = len(simplices[k - 1]), len(simplices[k])
        M = [[0] * cols for _ in range(rows)]
        for j, s in enumerate(simplices[k]):
            for i, face in _faces(C, s):
                r = index[k - 1].get(face)
                if r is not None:
                    M[r][j] += (-1) ** i
        boundaries.append(tuple(tuple(r) for r in M))
    return NerveComplex(d, tuple(tuple(level) for level in simplices), tuple(boundaries), C.n_objects)


def _faces(C: FiniteCategory, s: tuple[int, ...]):
    k = len(s)
    if k == 1:
        yield 0, (C.tgt[s[0]],)
        yield 1, (C.src[s[0]],)
        return
    yield 0, s[1:]
    for i in range(1, k):
        h = C.table[s[i]][s[i - 1]]
        if C.is_identity[h]:
            continue
        yield i, s[:i - 1] + (h,) + s[i + 1:]
    yield k, s[:-1]


def check_boundaries(N: NerveComplex) -> bool:
    """``d_{k-1} d_k = 0`` for every ``k``."""
    for k in range(2, N.dimension_bound + 1):
        A, B = N.boundaries[k - 1], N.boundaries[k]
        for row in A:
            for j in range(len(N.simplices[k])):
                if sum(row[i] * B[i][j] for i in range(len(row)) if row[i]):
                    return False
    return True


def homology(N: NerveComplex, reduced: bool = False) -> HomologyReport:
    """Betti numbers and torsion of ``H_0 .. H_{d-1}``."""
    d = N.dimension_bound
    counts = N.counts()
    ranks = [0]
    invariants: list[list[int]] = [[]]
    for k in range(1, d + 1):
        diag = smith_diagonal(N.boundaries[k]) if counts[k] and counts[k - 1] else []
        ranks.append(len(diag))
        invariants.append([x for x in diag if x > 1])
    betti, torsion = [], []
    for k in range(d):
        betti.append(counts[k] - ranks[k] - ranks[k + 1])
        torsion.append(invariants[k + 1])
    if reduced and counts[0]:
        betti[0] -= 1
    return HomologyReport(betti, torsion, reduced, ranks)


def euler_consistent(N: NerveComplex, H: HomologyReport) -> bool:
    """Truncated Euler characteristic from simplex counts matches the Betti numbers."""
    d = N.dimension_bound
    counts = N.counts()
    chi_cells = sum((-1) ** k * counts[k] for k in range(d))
    betti = list(H.betti)
    if H.reduced and counts[0]:
        betti[0] += 1
    chi_homology = sum((-1) ** k * b for k, b in enumerate(betti)) + (-1) ** (d - 1) * H.ranks[d]
    return chi_cells == chi_homology


def dump_triplets(N: NerveComplex) -> str:
    """Boundary matrices as ``k row col value`` lines (nonzero entries only)."""
    lines = []
    for k in range(1, N.dimension_bound + 1):
        for i, row in enumerate(N.boundaries[k]):
            for j, v in enumerate(row):
                if v:
                    lines.append(f"{k} {i} {j} {v}")
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# fundamental group


def _free_reduce(word):
    out = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    while len(out) >= 2 and out[0][0] == out[-1][0] and out[0][1] == -out[-1][1]:
        out = out[1:-1]
    return out


def _invert(word):
    return [(g, -e) for g, e in reversed(word)]


def pi1_presentation(C: FiniteCategory, max_passes: int = 50) -> Pi1Presentation:
    """Edge-path presentation of the fundamental group of the nerve, simplified by Tietze moves."""
    if C.n_objects == 0 or len(connected_components(C)[0]) != 1:
        raise Disconnected("fundamental group presentation needs a non-empty connected category")
    seen = {0}
    tree = set()
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for m in C.nonidentity:
                a, b = C.src[m], C.tgt[m]
                if a == x and b not in seen:
                    other = b
                elif b == x and a not in seen:
                    other = a
                else:
                    continue
                seen.add(other)
                tree.add(m)
                nxt.append(other)
        frontier = nxt
    gens = [m for m in C.nonidentity if m not in tree]

    def letter(m):
        if C.is_identity[m] or m in tree:
            return []
        return [(C.mor_names[m], 1)]

    relators = []
    for f in C.nonidentity:
        for g in C.nonidentity:
            if C.src[g] != C.tgt[f]:
                continue
            h = C.table[g][f]
            word = _free_reduce(letter(f) + letter(g) + _invert(letter(h)))
            if word:
                relators.append(word)
    names = [C.mor_names[m] for m in gens]
    names, relators = _tietze(names, relators, max_passes)
    if not names:
        status = Pi1Status.TRIVIAL
    else:
        H = homology(nerve(C, 2))
        status = Pi1Status.NON_TRIVIAL if H.betti[1] or H.torsion[1] else Pi1Status.UNKNOWN
    return Pi1Presentation(names, relators, status)


def _tietze(gens, relators, max_passes):
    gens = list(gens)
    rels = [r for r in (_free_reduce(r) for r in relators) if r]
    for _ in range(max_passes):
        changed = False
        for ri, r in enumerate(rels):
            counts: dict[str, int] = {}
            for g, _ in r:
                counts[g] = counts.get(g, 0) + 1
            solo = next((g for g in sorted(counts) if counts[g] == 1), None)
            if solo is None:
                continue
            k = next(i for i, (g, _) in enumerate(r) if g == solo)
            e = r[k][1]
            # r = u x^e v = 1  gives  x^e = u^-1 v^-1
            u, v = r[:k], r[k + 1:]
            value = _invert(u) + _invert(v)
            if e == -1:
                value = _invert(value)
            new_rels = []
            for j, s in enumerate(rels):
                if j == ri:
                    continue
                out = []
                for g, ex in s:
                    if g == solo:
                        out.extend(value if ex == 1 else _invert(value))
                    else:
                        out.append((g, ex))
                out = _free_reduce(out)
                if out:
                    new_rels.append(out)
            rels = new_rels
            gens.remove(solo)
            changed = True
            break
        if not changed:
            break
    # generators absent from every relator survive as free generators
    return gens, rels


# ---------------------------------------------------------------------------
# verdicts


def weak_contractibility(C: FiniteCategory, d: int = DEFAULT_DEPTH) -> ContractibilityVerdict:
    if C.n_objects == 0:
        return ContractibilityVerdict(ContractibilityStatus.NOT_CONTRACTIBLE, {"reason": "empty"})
    t = find_terminal(C)
    if t is not None:
        return ContractibilityVerdict(ContractibilityStatus.CONTRACTIBLE, {"terminal": C.obj_names[t]})
    i = find_initial(C)
    if i is not None:
        return ContractibilityVerdict(ContractibilityStatus.CONTRACTIBLE, {"initial": C.obj_names[i]})
    parts, _ = connected_components(C)
    if len(parts) > 1:
        return ContractibilityVerdict(ContractibilityStatus.NOT_CONTRACTIBLE, {"components": len(parts)})
    H = homology(nerve(C, d), reduced=True)
    for k in range(d):
        if H.betti[k] or H.torsion[k]:
            return ContractibilityVerdict(ContractibilityStatus.NOT_CONTRACTIBLE,
                                          {"dimension": k, "betti": H.betti[k], "torsion": H.torsion[k]})
    p = pi1_presentation(C)
    if p.status is Pi1Status.TRIVIAL:
        return ContractibilityVerdict(ContractibilityStatus.PROBABLY_CONTRACTIBLE,
                                      {"acyclic_through": d - 1, "pi1": "Trivial"})
    return ContractibilityVerdict(ContractibilityStatus.UNKNOWN,
                                  {"acyclic_through": d - 1, "pi1": p.status.value, "presentation": p.format()})


@dataclass
class GroupoidInvariants:
    components: int
    homology: HomologyReport
    pi1: list[Pi1Status]


def groupoid_invariants(C: FiniteCategory, d: int = DEFAULT_DEPTH) -> GroupoidInvariants:
    _, comps = connected_components(C)
    H = homology(nerve(C, d))
    return GroupoidInvariants(len(comps), H, [pi1_presentation(D).status for D in comps])
