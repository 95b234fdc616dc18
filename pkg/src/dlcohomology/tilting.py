"""Bounded complexes of projectives over a Brauer line and their homotopy Homs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from . import ffield as ff
from .brauer import (
    BrauerLine,
    Rep,
    RepMap,
    coordinates,
    direct_sum,
    hom_basis,
    image_bases,
    kernel,
    projective_cover,
    quotient,
    reps_isomorphic,
    strip_projectives,
    syzygy_power,
)
from .cohomology import (
    NOT_GUARANTEED,
    Report,
    cohomology_with_coeffs,
    torsion_free_gate,
)
from .errors import InconsistencyError, InvalidArgument, ModelViolation, PreconditionViolation, UnsupportedRegime
from .partitions import Partition, add_hook, beta_set, is_m_core


class ProjComplex:
    """Terms ``C^k`` (direct sums of the ``P_i``) with differentials ``C^k -> C^{k+1}``."""

    def __init__(self, line: BrauerLine, terms: dict[int, Sequence[int]], diffs: dict[int, RepMap] | None = None,
                 reps: dict[int, Rep] | None = None, check: bool = True):
        self.line = line
        self.terms = {k: tuple(v) for k, v in sorted(terms.items()) if v}
        self.reps: dict[int, Rep] = {}
        for k, summands in self.terms.items():
            if reps and k in reps:
                self.reps[k] = reps[k]
            else:
                self.reps[k] = direct_sum(line, [line.P(i) for i in summands])[0]
        self.diffs: dict[int, RepMap] = {}
        for k in self.terms:
            if k + 1 in self.terms and diffs and k in diffs:
                self.diffs[k] = diffs[k]
        if check:
            self.check()

    @property
    def degrees(self) -> list[int]:
        return list(self.terms)

    @property
    def low(self) -> int:
        return min(self.terms)

    @property
    def high(self) -> int:
        return max(self.terms)

    def rep(self, k: int) -> Rep | None:
        return self.reps.get(k)

    def diff(self, k: int) -> RepMap | None:
        """``d^k: C^k -> C^{k+1}`` or ``None`` when either side vanishes."""
        if k in self.terms and k + 1 in self.terms:
            d = self.diffs.get(k)
            if d is None:
                d = self.reps[k].zero_map(self.reps[k + 1])
                self.diffs[k] = d
            return d
        return None

    def check(self) -> None:
        for k in self.terms:
            d1, d2 = self.diff(k), self.diff(k + 1)
            if d1 is not None and not d1.commutes():
                raise ModelViolation(f"differential in degree {k} is not a module map")
            if d1 is not None and d2 is not None and not d2.compose(d1).is_zero():
                raise ModelViolation(f"d o d != 0 at degree {k}")

    def shift(self, a: int) -> "ProjComplex":
        """``C[a]`` with ``C[a]^k = C^{k+a}`` and differential ``(-1)^a d``."""
        sign = -1 if a % 2 else 1
        terms = {k - a: v for k, v in self.terms.items()}
        reps = {k - a: v for k, v in self.reps.items()}
        diffs = {k - a: self.diff(k).scale(sign) for k in self.terms if self.diff(k) is not None}
        return ProjComplex(self.line, terms, diffs, reps, check=False)

    def cohomology(self, k: int) -> Rep:
        line = self.line
        if k not in self.terms:
            return Rep(line, [0] * line.m)
        C = self.reps[k]
        d = self.diff(k)
        if d is None:
            Z, inc = C, C.identity()
        else:
            Z, inc = kernel(d)
        prev = self.diff(k - 1)
        if prev is None:
            return Z
        ims = image_bases(prev)
        sub = [coordinates(inc.mats[v], ims[v], line.p) if ims[v].shape[1] else ff.zeros(Z.dims[v], 0)
               for v in range(line.m)]
        H, _ = quotient(Z, sub)
        return H

    def cohomology_degrees(self) -> list[int]:
        return [k for k in self.terms if not self.cohomology(k).is_zero()]

    def labels(self) -> list[str]:
        return [f"{k}: " + " + ".join(f"P{i}" for i in v) for k, v in self.terms.items()]

    def is_minimal(self) -> bool:
        """Every differential lands in the radical of its target."""
        for k in self.terms:
            d = self.diff(k)
            if d is None:
                continue
            rad = self.reps[k + 1].radical()
            ims = image_bases(d)
            for v in range(self.line.m):
                for col in ims[v].T:
                    if not ff.in_span(rad[v].T, col, self.line.p):
                        return False
        return True

    def to_json(self) -> dict[str, Any]:
        return {"terms": {str(k): [f"P{i}" for i in v] for k, v in self.terms.items()}}

    def __repr__(self) -> str:
        return "ProjComplex(" + ", ".join(self.labels()) + ")"


def resolution_of_trivial(line: BrauerLine, length: int) -> ProjComplex:
    """Minimal projective resolution ``Q_{L-1} -> ... -> Q_0 -> k`` with ``Q_k`` in degree ``-k``."""
    if length < 1:
        raise InvalidArgument("resolution length must be positive")
    terms: dict[int, tuple[int, ...]] = {}
    reps: dict[int, Rep] = {}
    diffs: dict[int, RepMap] = {}
    M = line.trivial
    prev_inc: RepMap | None = None
    for step in range(length):
        if M.is_zero():
            break
        P, cover, summands = projective_cover(M)
        terms[-step], reps[-step] = tuple(summands), P
        if prev_inc is not None:
            diffs[-step] = prev_inc.compose(cover)
        K, prev_inc = kernel(cover)
        M = K
    return ProjComplex(line, terms, diffs, reps)


def bottom_kernel(C: ProjComplex) -> Rep:
    """Kernel of the leftmost differential (the lowest cohomology of a truncation)."""
    return C.cohomology(C.low)


def truncated_E(line: BrauerLine, j: int) -> ProjComplex:
    """The first ``2m - j + 1`` terms of the resolution of ``k``, in degrees ``[-(2m-j), 0]``."""
    if not (1 <= j <= line.m):
        raise InvalidArgument(f"need 1 <= j <= m = {line.m}, got {j}")
    return resolution_of_trivial(line, 2 * line.m - j + 1)


_HOM_CACHE: dict[tuple, list[RepMap]] = {}


def _term_hom(C: ProjComplex, k: int, D: ProjComplex, l: int) -> list[RepMap]:
    line = C.line
    key = (line.m, line.r, line.p, C.terms[k], D.terms[l])
    if key not in _HOM_CACHE:
        _HOM_CACHE[key] = hom_basis(C.reps[k], D.reps[l])
    cached = _HOM_CACHE[key]
    return [RepMap(C.reps[k], D.reps[l], f.mats, check=False) for f in cached]


def _flat_size(C: ProjComplex, k: int, D: ProjComplex, l: int) -> int:
    return sum(a * b for a, b in zip(C.reps[k].dims, D.reps[l].dims))


def hom_space(C: ProjComplex, D: ProjComplex, a: int) -> list[tuple[int, RepMap]]:
    out = []
    for k in C.terms:
        if k + a in D.terms:
            out.extend((k, f) for f in _term_hom(C, k, D, k + a))
    return out


def _ambient_layout(C: ProjComplex, D: ProjComplex, a: int) -> dict[int, tuple[int, int]]:
    layout, off = {}, 0
    for k in C.terms:
        if k + a in D.terms:
            size = _flat_size(C, k, D, k + a)
            layout[k] = (off, size)
            off += size
    return layout


def _ambient_vector(pieces: dict[int, RepMap], layout: dict[int, tuple[int, int]]) -> np.ndarray:
    total = sum(s for _, s in layout.values())
    v = np.zeros(total, dtype=np.int64)
    for k, f in pieces.items():
        if k in layout:
            off, size = layout[k]
            v[off:off + size] += f.flat()
    return v


def delta(C: ProjComplex, D: ProjComplex, a: int, f: RepMap, k: int) -> dict[int, RepMap]:
    """Components of ``d_D f - (-1)^a f d_C`` for ``f: C^k -> D^{k+a}``."""
    p = C.line.p
    out: dict[int, RepMap] = {}
    dD = D.diff(k + a)
    if dD is not None and k + 1 + a in D.terms:
        out[k] = dD.compose(f)
    dC = C.diff(k - 1)
    if dC is not None:
        g = f.compose(dC).scale(-1 if a % 2 == 0 else 1)
        out[k - 1] = out[k - 1] + g if k - 1 in out else g
    for key in list(out):
        out[key] = RepMap(out[key].source, out[key].target, [A % p for A in out[key].mats], check=False)
    return out


def delta_matrix(C: ProjComplex, D: ProjComplex, a: int) -> tuple[list[tuple[int, RepMap]], np.ndarray, dict]:
    """Basis of ``Hom^a`` and the matrix of ``delta^a`` into the ambient space of ``Hom^{a+1}``."""
    basis = hom_space(C, D, a)
    layout = _ambient_layout(C, D, a + 1)
    total = sum(s for _, s in layout.values())
    M = np.zeros((total, len(basis)), dtype=np.int64)
    for col, (k, f) in enumerate(basis):
        M[:, col] = _ambient_vector(delta(C, D, a, f, k), layout)
    return basis, M % C.line.p, layout


def boundary_vectors(C: ProjComplex, D: ProjComplex, a: int) -> np.ndarray:
    """Images of ``delta^{a-1}`` as rows in the ambient space of ``Hom^a``."""
    basis, M, _ = delta_matrix(C, D, a - 1)
    return M.T.copy()


def hom_k_dims(C: ProjComplex, D: ProjComplex, shifts: Sequence[int] | None = None) -> dict[int, int]:
    """``a -> dim Hom_K(C, D[a])`` over every shift where ``Hom^a`` can be nonzero."""
    p = C.line.p
    if shifts is None:
        shifts = range(D.low - C.high, D.high - C.low + 1)
    ranks: dict[int, int] = {}

    def rk(a: int) -> int:
        if a not in ranks:
            _, M, _ = delta_matrix(C, D, a)
            ranks[a] = ff.rank(M, p) if M.size else 0
        return ranks[a]

    out = {}
    for a in shifts:
        dim = len(hom_space(C, D, a))
        out[a] = dim - rk(a) - rk(a - 1)
    return out


def _cycles(C: ProjComplex, D: ProjComplex, a: int):
    basis, M, _ = delta_matrix(C, D, a)
    p = C.line.p
    layout = _ambient_layout(C, D, a)
    null = ff.nullspace(M, p) if len(basis) else np.zeros((0, 0), dtype=np.int64)
    return basis, M, layout, null


def _as_ambient(basis, coeffs, layout, p) -> np.ndarray:
    pieces: dict[int, RepMap] = {}
    for c, (k, f) in zip(coeffs, basis):
        if c:
            g = f.scale(int(c))
            pieces[k] = pieces[k] + g if k in pieces else g
    return _ambient_vector(pieces, layout) % p


def is_partial_tilting(C: ProjComplex) -> tuple[bool, dict | None]:
    """Self-orthogonality of a complex of projectives; the witness is a non-null-homotopic chain map."""
    dims = hom_k_dims(C, C)
    for a, dim in sorted(dims.items(), key=lambda kv: (abs(kv[0]), kv[0])):
        if a != 0 and dim:
            p = C.line.p
            basis, _, layout, null = _cycles(C, C, a)
            B = boundary_vectors(C, C, a)
            for z in null:
                v = _as_ambient(basis, z, layout, p)
                if not ff.in_span(B, v, p):
                    support = sorted({k for c, (k, _) in zip(z, basis) if c})
                    return False, {"shift": a, "dimension": dim, "columns": support,
                                   "components": {k: [A.tolist() for A in f.mats] for c, (k, f) in zip(z, basis) if c}}
    return True, None


def chain_map_shapes(E: ProjComplex, a: int) -> Report:
    """Split the chain maps ``E -> E[a]`` into cycles living on one or two adjacent columns."""
    p = E.line.p
    basis, M, layout, null = _cycles(E, E, a)
    B = boundary_vectors(E, E, a)
    name = f"shapes(a={a})"
    if len(null) == 0:
        return Report(name, True, {"cycle_dim": 0, "patterns": []}, [])
    cols = sorted({k for k, _ in basis})

    def window_cycles(window: set[int]) -> np.ndarray:
        idx = [i for i, (k, _) in enumerate(basis) if k in window]
        if not idx:
            return np.zeros((0, len(basis)), dtype=np.int64)
        sub = ff.nullspace(M[:, idx], p)
        full = np.zeros((len(sub), len(basis)), dtype=np.int64)
        full[:, idx] = sub
        return full

    def amb(z):
        return _as_ambient(basis, z, layout, p)

    patterns, failures = [], []
    spanned: list[np.ndarray] = []
    for k in cols:
        for z in window_cycles({k}):
            (src,), (tgt,) = E.terms[k], E.terms[k + a]
            if src == tgt:
                kind = "i"
            elif abs(src - tgt) == 1:
                kind = "ii (one nonzero map)"
            else:
                kind = None
            entry = {"columns": [k], "source": [src], "target": [tgt], "pattern": kind}
            spanned.append(amb(z))
            patterns.append(entry)
    for k in cols:
        if k + 1 not in cols:
            continue
        for z in window_cycles({k, k + 1}):
            v = amb(z)
            if spanned and ff.in_span(np.array(spanned), v, p):
                continue
            (x,), (y,) = E.terms[k], E.terms[k + 1]
            (u,), (w,) = E.terms[k + a], E.terms[k + 1 + a]
            kind = "ii" if (u == y and w == x and abs(x - y) == 1) else None
            spanned.append(v)
            patterns.append({"columns": [k, k + 1], "source": [x, y], "target": [u, w], "pattern": kind})
    all_cycles = np.array([amb(z) for z in null])
    have = ff.rank(np.array(spanned), p) if spanned else 0
    if have != ff.rank(all_cycles, p):
        failures.append(f"cycles supported on at most two adjacent columns span {have} of {ff.rank(all_cycles, p)}")
    for entry in patterns:
        if abs(a) > 1 and entry["pattern"] is None:
            failures.append(f"unclassified chain map {entry}")
    for z in null:
        if not ff.in_span(B, amb(z), p):
            failures.append("chain map is not null-homotopic")
            break
    details = {"cycle_dim": int(ff.rank(all_cycles, p)), "patterns": patterns}
    return Report(name, not failures, details, failures)


def overlapping_shifts(E: ProjComplex) -> list[int]:
    span = E.high - E.low
    return [a for a in range(-span, span + 1) if a != 0]


@dataclass
class DModel:
    n: int
    d: int
    m: int
    r: int
    j: int
    printed_j: int
    alpha: int
    beta: int
    complex: ProjComplex
    report: Report
    gate: str = ""


def d_model_parameters(n: int, d: int, m: int) -> tuple[int, int, int]:
    alpha = 4 * n - 2 * d - 2
    beta = 3 * n - d - 1 - m
    j = 2 * m - (alpha - beta + 1) + 1
    return alpha, beta, j


def principal_label(n: int, d: int, m: int) -> Partition:
    """``(n-d) * (n-m)``: the label of the lower cohomology of the principal summand."""
    return add_hook(beta_set(Partition((n - d,)), d + 1), n - m, d)


def admissible(n: int, d: int, m: int) -> bool:
    """Regime where the principal summand is a truncated resolution: ``d < m <= n``, ``m > n-d+1``."""
    return 1 <= d < m <= n and m > n - d + 1


def build_D_model(n: int, d: int, m: int, r: int = 1, p: int = 2, override: bool = False) -> DModel:
    """Principal-block summand of the modular cohomology complex as a truncated resolution."""
    gate = torsion_free_gate(n, d, m)
    if gate == NOT_GUARANTEED and not override:
        raise PreconditionViolation(f"torsion-freeness is not guaranteed for ({n}, {d}, {m}); pass override=True")
    if m > n:
        raise UnsupportedRegime("m > n: the principal summand is a single projective")
    if not admissible(n, d, m):
        raise UnsupportedRegime(f"({n}, {d}, {m}) is outside d < m <= n, m > n - d + 1")
    alpha, beta, j = d_model_parameters(n, d, m)
    printed_j = m - n + d
    line = BrauerLine(m, r, p)
    E = truncated_E(line, j)
    D = E.shift(-alpha)
    failures = []
    if D.high != alpha or D.low != beta:
        failures.append(f"terms occupy [{D.low}, {D.high}], expected [{beta}, {alpha}]")
    degs = D.cohomology_degrees()
    if degs != [beta, alpha]:
        failures.append(f"cohomology in degrees {degs}, expected [{beta}, {alpha}]")
    top = D.cohomology(alpha)
    if not reps_isomorphic(top, line.trivial):
        failures.append("top cohomology is not the trivial module")
    Hb = D.cohomology(beta)
    factors = Hb.composition_factors()
    if factors != {j - 1: 1, j: 1}:
        failures.append(f"H^beta has composition factors {factors}, expected edges {j - 1} and {j}")
    socle = [v for v, k in enumerate(Hb.socle_dims(), start=1) if k]
    tops = [v for v, k in enumerate(Hb.top_dims(), start=1) if k]
    if socle != [j]:
        failures.append(f"socle of H^beta at edges {socle}, expected edge {j}")
    alt = {}
    if 1 <= printed_j <= m and printed_j != j:
        Ealt = truncated_E(line, printed_j).shift(-alpha)
        alt = {"j": printed_j, "terms": len(Ealt.terms), "degrees": [Ealt.low, Ealt.high],
               "cohomology_degrees": Ealt.cohomology_degrees(),
               "bottom_factors": Ealt.cohomology(Ealt.low).composition_factors()}
    details = {
        "alpha": alpha,
        "beta": beta,
        "j": j,
        "printed_j": printed_j,
        "j_discrepancy": j != printed_j,
        "terms": len(D.terms),
        "H_beta_factors": factors,
        "H_beta_top_edges": tops,
        "H_beta_socle_edges": socle,
        "H_beta_label": str(principal_label(n, d, m)),
        "walk_index": alpha - beta + 1,
        "printed_j_complex": alt,
        "gate": gate,
    }
    if failures:
        raise InconsistencyError(f"D-model for ({n}, {d}, {m}, r={r}) is inconsistent", failures)
    return DModel(n, d, m, r, j, printed_j, alpha, beta, D, Report(f"D({n},{d},{m},{r})", True, details, []), gate)


def verify_two_term(C: ProjComplex) -> Report:
    """Lower cohomology equals ``Omega^{s-t+1}`` of the upper one, both projective-free."""
    degs = C.cohomology_degrees()
    if len(degs) != 2:
        raise InvalidArgument(f"expected cohomology in exactly two degrees, got {degs}")
    t, s = degs
    lower, _ = strip_projectives(C.cohomology(t))
    upper = syzygy_power(C.cohomology(s), s - t + 1)
    ok = reps_isomorphic(lower, upper)
    details = {"t": t, "s": s, "exponent": s - t + 1, "lower_factors": lower.composition_factors(),
               "syzygy_factors": upper.composition_factors()}
    return Report(f"two-term({t},{s})", ok, details, [] if ok else [details])


def full_complex_model(n: int, d: int, m: int, r: int = 1, p: int = 2, override: bool = False) -> Report:
    """Eigenvalue decomposition of the modular cohomology complex and its tilting verdict."""
    gate = torsion_free_gate(n, d, m)
    if gate == NOT_GUARANTEED and not override:
        raise PreconditionViolation(f"torsion-freeness is not guaranteed for ({n}, {d}, {m}); pass override=True")
    table = cohomology_with_coeffs(n, d).table
    name = f"complex({n},{d},{m},{r})"
    if m > n:
        summands = [{"eigen_exp": e, "degree": deg, "label": str(next(iter(v.labels()))), "kind": "defect zero"}
                    for (deg, e), v in table.items()]
        return Report(name, True, {"summands": summands, "partial_tilting": True, "semisimple": True}, [])
    principal_class = (2 * n - d - 1) % m
    failures, summands = [], []
    by_class: dict[int, list] = {}
    for (deg, e), v in table.items():
        by_class.setdefault(e % m, []).append((deg, e, v))
    for cls, entries in sorted(by_class.items()):
        if cls == principal_class:
            continue
        if len(entries) != 1:
            failures.append(f"eigenvalue class {cls} has {len(entries)} cohomology degrees")
        for deg, e, v in entries:
            (lam,) = v.labels()
            if not is_m_core(lam, m):
                failures.append(f"{lam} at eigenvalue q^{e} is not an {m}-core")
            summands.append({"eigen_exp": e, "degree": deg, "label": str(lam), "kind": "simple projective"})
    if failures:
        raise InconsistencyError(f"off-principal summands of ({n}, {d}, {m}) are inconsistent", failures)
    model = build_D_model(n, d, m, r, p, override=override)
    ok, witness = is_partial_tilting(model.complex)
    details = {
        "summands": summands,
        "principal": model.report.details,
        "principal_terms": model.complex.to_json()["terms"],
        "cross_block_homs": "zero (distinct blocks)",
        "partial_tilting": ok,
        "witness": witness,
        "gate": gate,
    }
    return Report(name, ok, details, [] if ok else [witness])
