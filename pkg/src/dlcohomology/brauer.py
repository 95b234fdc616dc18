"""Brauer tree algebra of a line with ``m`` edges and exceptional multiplicity ``r``.

Modules are representations of the quiver with vertices ``1..m``, arrows
``a_i: i -> i+1`` and ``b_i: i+1 -> i`` for ``1 <= i < m``, and a loop ``c`` at
``m`` (present when ``r >= 2``, or when ``m = 1``). Edge 1 touches the vertex of the
trivial character; edge ``m`` touches the exceptional vertex.

Vertex ``v`` is stored at index ``v - 1``. An arrow ``s -> t`` acts by a matrix of
shape ``(dims[t], dims[s])`` on column vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from . import ffield as ff
from .errors import InvalidArgument, ModelViolation, UnsupportedRegime
from .partitions import Partition, add_hook, beta_set, hook


@dataclass(frozen=True)
class Arrow:
    name: str
    src: int
    tgt: int


def line_arrows(m: int, r: int) -> tuple[Arrow, ...]:
    arrows = []
    for i in range(1, m):
        arrows.append(Arrow(f"a{i}", i, i + 1))
        arrows.append(Arrow(f"b{i}", i + 1, i))
    if r >= 2 or m == 1:
        arrows.append(Arrow("c", m, m))
    return tuple(arrows)


class Rep:
    """A finite-dimensional representation of the line quiver over GF(p)."""

    def __init__(self, line: "BrauerLine", dims: Sequence[int], mats: dict[str, np.ndarray] | None = None):
        self.line = line
        self.dims = tuple(int(x) for x in dims)
        if len(self.dims) != line.m:
            raise InvalidArgument(f"expected {line.m} dimensions, got {len(self.dims)}")
        p = line.p
        self.mats: dict[str, np.ndarray] = {}
        for ar in line.arrows:
            shape = (self.dims[ar.tgt - 1], self.dims[ar.src - 1])
            A = (mats or {}).get(ar.name)
            A = ff.zeros(*shape) if A is None else np.asarray(A, dtype=np.int64) % p
            if A.shape != shape:
                raise InvalidArgument(f"arrow {ar.name} has shape {A.shape}, expected {shape}")
            self.mats[ar.name] = A

    @property
    def p(self) -> int:
        return self.line.p

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def composition_factors(self) -> dict[int, int]:
        return {v: k for v, k in enumerate(self.dims, start=1) if k}

    def act(self, word: Sequence[str], vec: np.ndarray) -> np.ndarray:
        """Apply arrows in order (first element first) to a vector or matrix of columns."""
        out = np.asarray(vec, dtype=np.int64)
        for name in word:
            out = ff.matmul(self.mats[name], out, self.p)
        return out

    def radical(self) -> list[np.ndarray]:
        """Column bases of the radical at each vertex."""
        p = self.p
        out = []
        for v in range(1, self.line.m + 1):
            imgs = [self.mats[ar.name] for ar in self.line.arrows if ar.tgt == v]
            stacked = np.concatenate(imgs, axis=1) if imgs else ff.zeros(self.dims[v - 1], 0)
            out.append(column_space(stacked, p, self.dims[v - 1]))
        return out

    def socle(self) -> list[np.ndarray]:
        """Column bases of the joint kernel of all arrows leaving each vertex."""
        p = self.p
        out = []
        for v in range(1, self.line.m + 1):
            outs = [self.mats[ar.name] for ar in self.line.arrows if ar.src == v]
            k = self.dims[v - 1]
            if not outs or k == 0:
                out.append(ff.eye(k))
                continue
            out.append(ff.nullspace(np.concatenate(outs, axis=0), p).T.copy())
        return out

    def top_dims(self) -> tuple[int, ...]:
        return tuple(d - b.shape[1] for d, b in zip(self.dims, self.radical()))

    def radical_dims(self) -> tuple[int, ...]:
        return tuple(b.shape[1] for b in self.radical())

    def socle_dims(self) -> tuple[int, ...]:
        return tuple(b.shape[1] for b in self.socle())

    def is_simple(self) -> bool:
        return self.dim == 1

    def identity(self) -> "RepMap":
        return RepMap(self, self, [ff.eye(k) for k in self.dims])

    def zero_map(self, other: "Rep") -> "RepMap":
        return RepMap(self, other, [ff.zeros(b, a) for a, b in zip(self.dims, other.dims)])

    def check_relations(self) -> bool:
        """Check the defining zero relations of the line algebra on this representation."""
        L = self.line
        words = []
        for i in range(1, L.m - 1):
            words += [(f"a{i}", f"a{i + 1}"), (f"b{i + 1}", f"b{i}")]
        if L.has_loop and L.m >= 2:
            words += [("c", f"b{L.m - 1}"), (f"a{L.m - 1}", "c")]
        for w in words:
            v = L.arrow(w[0]).src - 1
            if np.any(self.act(w, ff.eye(self.dims[v]))):
                return False
        return True

    def __repr__(self) -> str:
        return f"Rep(dims={self.dims})"


class RepMap:
    """Per-vertex matrices ``mats[v]`` of shape ``(target.dims[v], source.dims[v])``."""

    def __init__(self, source: Rep, target: Rep, mats: Sequence[np.ndarray], check: bool = True):
        self.source = source
        self.target = target
        p = source.p
        self.mats = [np.asarray(A, dtype=np.int64).reshape(b, a) % p for A, a, b in zip(mats, source.dims, target.dims)]
        if check and not self.commutes():
            raise ModelViolation("map does not commute with the arrows")

    def commutes(self) -> bool:
        p = self.source.p
        for ar in self.source.line.arrows:
            s, t = ar.src - 1, ar.tgt - 1
            lhs = ff.matmul(self.target.mats[ar.name], self.mats[s], p)
            rhs = ff.matmul(self.mats[t], self.source.mats[ar.name], p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def flat(self) -> np.ndarray:
        return np.concatenate([A.reshape(-1) for A in self.mats]) if self.mats else np.zeros(0, dtype=np.int64)

    def is_zero(self) -> bool:
        return not any(np.any(A) for A in self.mats)

    def is_iso(self) -> bool:
        p = self.source.p
        return all(A.shape[0] == A.shape[1] and ff.rank(A, p) == A.shape[0] for A in self.mats)

    def compose(self, other: "RepMap") -> "RepMap":
        """``self o other``."""
        p = self.source.p
        return RepMap(other.source, self.target, [ff.matmul(A, B, p) for A, B in zip(self.mats, other.mats)], check=False)

    def __add__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.source, self.target, [A + B for A, B in zip(self.mats, other.mats)], check=False)

    def scale(self, c: int) -> "RepMap":
        return RepMap(self.source, self.target, [c * A for A in self.mats], check=False)

    def rank_dims(self) -> tuple[int, ...]:
        return tuple(ff.rank(A, self.source.p) if A.size else 0 for A in self.mats)

    def is_surjective(self) -> bool:
        return self.rank_dims() == self.target.dims

    def is_injective(self) -> bool:
        return self.rank_dims() == self.source.dims


def column_space(A: np.ndarray, p: int, rows: int) -> np.ndarray:
    A = _cols(A, rows)
    if A.shape[1] == 0 or rows == 0:
        return ff.zeros(rows, 0)
    return ff.row_space(A.T, p).T.copy()


def _cols(B, rows: int) -> np.ndarray:
    B = np.asarray(B, dtype=np.int64)
    if B.size == 0:
        return ff.zeros(rows, 0)
    return B.reshape(rows, -1)


def coordinates(U: np.ndarray, Y: np.ndarray, p: int) -> np.ndarray:
    """Solve ``U Z = Y`` for ``U`` of full column rank."""
    k = U.shape[1]
    if Y.shape[1] == 0:
        return ff.zeros(k, 0)
    if k == 0:
        if np.any(Y % p):
            raise ModelViolation("vector outside the subspace")
        return ff.zeros(0, Y.shape[1])
    R, piv = ff.rref(np.concatenate([U, Y], axis=1), p)
    if piv[:k] != list(range(k)) or any(c >= k for c in piv):
        raise ModelViolation("vector outside the subspace")
    return R[:k, k:]


def subrep(M: Rep, bases: Sequence[np.ndarray]) -> tuple[Rep, RepMap]:
    """Sub-representation spanned by column bases closed under the arrows."""
    p = M.p
    bases = [_cols(B, M.dims[v]) for v, B in enumerate(bases)]
    mats = {}
    for ar in M.line.arrows:
        s, t = ar.src - 1, ar.tgt - 1
        mats[ar.name] = coordinates(bases[t], ff.matmul(M.mats[ar.name], bases[s], p), p)
    S = Rep(M.line, [B.shape[1] for B in bases], mats)
    return S, RepMap(S, M, bases)


def quotient(M: Rep, bases: Sequence[np.ndarray]) -> tuple[Rep, RepMap]:
    """Quotient by the sub-representation spanned by ``bases`` and the projection."""
    p = M.p
    comps, fulls = [], []
    bases = [_cols(B, M.dims[v]) for v, B in enumerate(bases)]
    for v, B in enumerate(bases):
        C = ff.complement(B.T, M.dims[v], p).T.copy()
        comps.append(C)
        fulls.append(np.concatenate([B, C], axis=1))
    ks = [B.shape[1] for B in bases]
    mats = {}
    for ar in M.line.arrows:
        s, t = ar.src - 1, ar.tgt - 1
        Z = coordinates(fulls[t], ff.matmul(M.mats[ar.name], comps[s], p), p)
        mats[ar.name] = Z[ks[t]:]
    Q = Rep(M.line, [C.shape[1] for C in comps], mats)
    proj = []
    for v in range(M.line.m):
        if M.dims[v] == 0:
            proj.append(ff.zeros(Q.dims[v], 0))
            continue
        inv = ff.inverse(fulls[v], p)
        proj.append(inv[ks[v]:])
    return Q, RepMap(M, Q, proj)


def direct_sum(line: "BrauerLine", reps: Sequence[Rep]) -> tuple[Rep, list[RepMap], list[RepMap]]:
    """Direct sum with inclusions and projections."""
    dims = [sum(R.dims[v] for R in reps) for v in range(line.m)]
    mats = {}
    for ar in line.arrows:
        blocks = [R.mats[ar.name] for R in reps]
        A = ff.zeros(dims[ar.tgt - 1], dims[ar.src - 1])
        r0 = c0 = 0
        for B in blocks:
            A[r0:r0 + B.shape[0], c0:c0 + B.shape[1]] = B
            r0 += B.shape[0]
            c0 += B.shape[1]
        mats[ar.name] = A
    S = Rep(line, dims, mats)
    incs, projs = [], []
    offs = [0] * line.m
    for R in reps:
        inc, prj = [], []
        for v in range(line.m):
            I = ff.zeros(dims[v], R.dims[v])
            I[offs[v]:offs[v] + R.dims[v], :] = ff.eye(R.dims[v])
            inc.append(I)
            prj.append(I.T.copy())
            offs[v] += R.dims[v]
        incs.append(RepMap(R, S, inc, check=False))
        projs.append(RepMap(S, R, prj, check=False))
    return S, incs, projs


@dataclass(frozen=True)
class BasisElement:
    vertex: int
    word: tuple[str, ...]


class BrauerLine:
    """The line-shaped Brauer tree algebra realised through its projective modules."""

    def __init__(self, m: int, r: int = 1, p: int = 2, verify: bool = True):
        if m < 1 or r < 1:
            raise InvalidArgument("m and r must be positive")
        ff.check_prime(p)
        self.m, self.r, self.p = m, r, p
        self.arrows = line_arrows(m, r)
        self._by_name = {ar.name: ar for ar in self.arrows}
        self.projective_bases: list[list[BasisElement]] = [self._projective_basis(i) for i in range(1, m + 1)]
        self.projectives: list[Rep] = [self._build_projective(i) for i in range(1, m + 1)]
        self.simples: list[Rep] = [self._build_simple(i) for i in range(1, m + 1)]
        if verify:
            self.verify()

    @property
    def has_loop(self) -> bool:
        return "c" in self._by_name

    def arrow(self, name: str) -> Arrow:
        return self._by_name[name]

    def P(self, i: int) -> Rep:
        return self.projectives[i - 1]

    def S(self, i: int) -> Rep:
        return self.simples[i - 1]

    @property
    def trivial(self) -> Rep:
        return self.simples[0]

    def _projective_basis(self, i: int) -> list[BasisElement]:
        m, r = self.m, self.r
        t = BasisElement(i, ())
        if m == 1:
            return [BasisElement(1, ("c",) * k) for k in range(r + 1)]
        if i == 1:
            return [t, BasisElement(2, ("a1",)), BasisElement(1, ("a1", "b1"))]
        if i < m:
            return [
                t,
                BasisElement(i + 1, (f"a{i}",)),
                BasisElement(i - 1, (f"b{i - 1}",)),
                BasisElement(i, (f"a{i}", f"b{i}")),
            ]
        loop = [BasisElement(m, ("c",) * k) for k in range(1, r)]
        return [t, BasisElement(m - 1, (f"b{m - 1}",))] + loop + [BasisElement(m, (f"b{m - 1}", f"a{m - 1}"))]

    def socle_word(self, i: int) -> tuple[str, ...]:
        return self.projective_bases[i - 1][-1].word

    def _build_projective(self, i: int) -> Rep:
        basis = self.projective_bases[i - 1]
        m, r = self.m, self.r
        index: dict[int, list[int]] = {v: [] for v in range(1, m + 1)}
        for k, el in enumerate(basis):
            index[el.vertex].append(k)
        pos = {k: index[el.vertex].index(k) for k, el in enumerate(basis)}
        dims = [len(index[v]) for v in range(1, m + 1)]
        top_loop = ("c",) * r

        def canon(word: tuple[str, ...]) -> tuple[str, ...]:
            # identify the two descriptions of the socle and the loop power
            if m >= 2 and i == m and r >= 2 and word == top_loop:
                return (f"b{m - 1}", f"a{m - 1}")
            if m >= 2 and 1 < i < m and word == (f"b{i - 1}", f"a{i - 1}"):
                return (f"a{i}", f"b{i}")
            return word

        words = {el.word: k for k, el in enumerate(basis)}
        mats = {ar.name: ff.zeros(dims[ar.tgt - 1], dims[ar.src - 1]) for ar in self.arrows}
        for k, el in enumerate(basis):
            for ar in self.arrows:
                if ar.src != el.vertex:
                    continue
                w = canon(el.word + (ar.name,))
                if w in words:
                    k2 = words[w]
                    mats[ar.name][pos[k2], pos[k]] = 1
        return Rep(self, dims, mats)

    def _build_simple(self, i: int) -> Rep:
        dims = [0] * self.m
        dims[i - 1] = 1
        return Rep(self, dims)

    def path_images(self, i: int, M: Rep, g: np.ndarray) -> list[np.ndarray]:
        """Per-vertex matrices of the map ``P_i -> M`` sending the top generator to ``g``."""
        basis = self.projective_bases[i - 1]
        cols: dict[int, list[np.ndarray]] = {v: [] for v in range(1, self.m + 1)}
        g = np.asarray(g, dtype=np.int64).reshape(-1, 1)
        for el in basis:
            cols[el.vertex].append(M.act(el.word, g))
        out = []
        for v in range(1, self.m + 1):
            if cols[v]:
                out.append(np.concatenate(cols[v], axis=1))
            else:
                out.append(ff.zeros(M.dims[v - 1], 0))
        return out

    def map_from_projective(self, i: int, M: Rep, g: np.ndarray) -> RepMap:
        return RepMap(self.P(i), M, self.path_images(i, M, g))

    def verify(self) -> None:
        """Check the Hom-dimension table of the projectives and the algebra relations."""
        m, r = self.m, self.r
        for t in range(1, m + 1):
            P = self.P(t)
            if not P.check_relations():
                raise ModelViolation(f"P_{t} violates the zero relations")
            if self.P(t).top_dims() != tuple(1 if v == t else 0 for v in range(1, m + 1)):
                raise ModelViolation(f"P_{t} does not have simple top S_{t}")
            for s in range(1, m + 1):
                dim = len(hom_basis(self.P(t), self.P(s)))
                if s == t:
                    want = r + 1 if t == m else 2
                elif abs(s - t) == 1:
                    want = 1
                else:
                    want = 0
                if dim != want:
                    raise ModelViolation(f"dim Hom(P_{t}, P_{s}) = {dim}, expected {want}")
            soc = self.P(t).socle_dims()
            if soc != tuple(1 if v == t else 0 for v in range(1, m + 1)):
                raise ModelViolation(f"socle of P_{t} is {soc}, expected S_{t}")

    def __repr__(self) -> str:
        return f"BrauerLine(m={self.m}, r={self.r}, p={self.p})"


def build_line(m: int, r: int = 1, p: int = 2) -> BrauerLine:
    return BrauerLine(m, r, p)


def hom_basis(M: Rep, N: Rep) -> list[RepMap]:
    """Basis of ``Hom(M, N)`` in reduced echelon order of the flattened matrices."""
    line, p = M.line, M.p
    sizes = [N.dims[v] * M.dims[v] for v in range(line.m)]
    offs = np.cumsum([0] + sizes)
    total = int(offs[-1])
    if total == 0:
        return []
    rows = []
    for ar in line.arrows:
        s, t = ar.src - 1, ar.tgt - 1
        Na, Ma = N.mats[ar.name], M.mats[ar.name]
        nr = N.dims[t] * M.dims[s]
        if nr == 0:
            continue
        block = ff.zeros(nr, total)
        # N_a X_s - X_t M_a, row-major vec(A X B) = (A kron B^T) vec(X)
        block[:, offs[s]:offs[s + 1]] += np.kron(Na, ff.eye(M.dims[s]))
        block[:, offs[t]:offs[t + 1]] -= np.kron(ff.eye(N.dims[t]), Ma.T)
        rows.append(block % p)
    A = np.concatenate(rows, axis=0) if rows else ff.zeros(0, total)
    null = ff.nullspace(A, p)
    out = []
    for vec in null:
        mats = [vec[offs[v]:offs[v + 1]].reshape(N.dims[v], M.dims[v]) for v in range(line.m)]
        out.append(RepMap(M, N, mats, check=False))
    return out


def projective_cover(M: Rep) -> tuple[Rep, RepMap, list[int]]:
    """Minimal projective cover ``P -> M``; also returns the summand indices."""
    if M.is_zero():
        raise InvalidArgument("the zero module has no projective cover")
    line, p = M.line, M.p
    rad = M.radical()
    summands: list[int] = []
    pieces: list[list[np.ndarray]] = []
    for v in range(1, line.m + 1):
        comp = ff.complement(rad[v - 1].T, M.dims[v - 1], p)
        for g in comp:
            summands.append(v)
            pieces.append(line.path_images(v, M, g))
    P, _, _ = direct_sum(line, [line.P(i) for i in summands])
    mats = [np.concatenate([pc[v] for pc in pieces], axis=1) if pieces else ff.zeros(M.dims[v], 0) for v in range(line.m)]
    mats = [A.reshape(M.dims[v], P.dims[v]) for v, A in enumerate(mats)]
    cover = RepMap(P, M, mats)
    if not cover.is_surjective():
        raise ModelViolation("projective cover is not surjective")
    return P, cover, summands


def kernel(f: RepMap) -> tuple[Rep, RepMap]:
    p = f.source.p
    bases = [ff.nullspace(A, p).T.copy() if A.shape[1] else ff.zeros(0, 0) for A in f.mats]
    return subrep(f.source, bases)


def image_bases(f: RepMap) -> list[np.ndarray]:
    p = f.source.p
    return [column_space(A, p, f.target.dims[v]) for v, A in enumerate(f.mats)]


def syzygy(M: Rep) -> Rep:
    if M.is_zero():
        return M
    _, cover, _ = projective_cover(M)
    K, _ = kernel(cover)
    return K


def projective_summand_at(M: Rep, i: int) -> np.ndarray | None:
    """A vector generating a ``P_i`` summand of ``M``, if there is one."""
    line = M.line
    k = M.dims[i - 1]
    if k == 0:
        return None
    W = M.act(line.socle_word(i), ff.eye(k))
    for col in range(k):
        if np.any(W[:, col]):
            g = np.zeros(k, dtype=np.int64)
            g[col] = 1
            return g
    return None


def strip_projectives(M: Rep) -> tuple[Rep, list[int]]:
    """Remove all projective summands; returns the remainder and the stripped indices."""
    removed = []
    while not M.is_zero():
        for i in range(1, M.line.m + 1):
            g = projective_summand_at(M, i)
            if g is not None:
                f = M.line.map_from_projective(i, M, g)
                M, _ = quotient(M, image_bases(f))
                removed.append(i)
                break
        else:
            break
    return M, removed


def syzygy_power(M: Rep, i: int) -> Rep:
    """``Omega^i M`` with projective summands stripped; negative ``i`` uses period ``2m``."""
    if i < 0:
        i %= 2 * M.line.m
    out, _ = strip_projectives(M)
    for _ in range(i):
        out = syzygy(out)
    return out


def reps_isomorphic(M: Rep, N: Rep, search_limit: int = 4096, seed: int = 0) -> bool:
    """Search ``Hom(M, N)`` for an invertible element."""
    if M.dims != N.dims:
        return False
    if M.dim == 0:
        return True
    H = hom_basis(M, N)
    if not H:
        return False
    if len(hom_basis(N, M)) != len(H) or len(hom_basis(M, M)) != len(hom_basis(N, N)):
        return False
    if len(H) != len(hom_basis(M, M)):
        return False
    for f in H:
        if f.is_iso():
            return True
    p = M.p

    def combo(coeffs) -> RepMap:
        mats = [sum(int(c) * f.mats[v] for c, f in zip(coeffs, H)) % p for v in range(M.line.m)]
        return RepMap(M, N, mats, check=False)

    if p ** len(H) <= search_limit:
        for coeffs in product(range(p), repeat=len(H)):
            if any(coeffs) and combo(coeffs).is_iso():
                return True
        return False
    rng = np.random.default_rng(seed)
    for _ in range(search_limit):
        if combo(rng.integers(0, p, size=len(H))).is_iso():
            return True
    return False


def omega2_interior_shape(line: BrauerLine, i: int) -> dict:
    """Shape of ``Omega^2 S_i`` for an interior edge ``1 < i < m`` (needs ``m >= 4``)."""
    if line.m < 4 or not (1 < i < line.m):
        raise InvalidArgument("need m >= 4 and 1 < i < m")
    M = syzygy_power(line.S(i), 2)
    total = M.dim
    passed = total >= 3 and not M.is_simple()
    return {
        "edge": i,
        "composition_factors": M.composition_factors(),
        "length": total,
        "simple": M.is_simple(),
        "passed": passed,
    }


def edge_partition_labels(n: int, m: int) -> tuple[dict[int, Partition], list[int]]:
    """Edge labels pinned by the walk; returns the labels and the unresolved edges."""
    if not (1 <= m <= n < 2 * m):
        raise UnsupportedRegime(f"need m <= n < 2m, got n={n}, m={m}")
    if n == m:
        return {i: hook(n, i - 1) for i in range(1, m + 1)}, []
    labels = {1: Partition((n,))}
    for d in range(1, n + 1):
        if m > d and m > n - d + 1:
            j = m + d - n + 1
            mu = Partition((n - d,))
            labels[j] = add_hook(beta_set(mu, d + 1), n - m, d)
    return labels, [i for i in range(1, m + 1) if i not in labels]


def hom_dim_table(line: BrauerLine) -> list[list[int]]:
    return [[len(hom_basis(line.P(t), line.P(s))) for s in range(1, line.m + 1)] for t in range(1, line.m + 1)]
