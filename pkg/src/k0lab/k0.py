"""The K-theory engine.

From a weighted Cayley graph (or any finite graph) this computes
det(I - A^t), the Grothendieck group as a finitely generated abelian
group, and the order of the class of the all-ones vector, either by a
full Smith reduction of the n x n matrix or by the companion-matrix
shortcut that replaces it with an s_k x s_k computation.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace
from math import gcd

from . import circulant as circ
from .errors import InvalidSpecError, NotGeneratingError, NotPurelyInfiniteSimpleError
from .graphs import (
    CayleySpec,
    DirectedMultigraph,
    build_cayley,
    is_purely_infinite_simple,
    is_strongly_connected,
)
from .zmatrix import (
    FinAbGroup,
    IntMatrix,
    _snf_with_left_transform,
    cokernel,
    det,
    mat_pow,
    snf_diagonal,
)

DEFAULT_CROSSCHECK_LIMIT = 24
CROSSCHECK_ENV = "K0LAB_CROSSCHECK_LIMIT"


@dataclass(frozen=True)
class CompanionMatrix:
    """Companion matrix of t^{s_k} - sum w(s_j) t^{s_k - s_j}.

    Sub-diagonal of ones; the last column holds w(s_j) in row
    s_k - s_j + 1 (1-indexed).
    """

    size: int
    matrix: IntMatrix
    char_poly: circ.IntPolynomial


def companion_matrix(spec: CayleySpec) -> CompanionMatrix:
    """Companion matrix of the weight recursion for a cyclic spec with 0 not in S."""
    if not spec.is_cyclic:
        raise InvalidSpecError("companion reduction needs a cyclic-group spec")
    if 0 in spec.gens:
        raise InvalidSpecError(
            "companion reduction requires 0 not in S; use the full Smith path"
        )
    sk = max(spec.gens)
    rows = [[0] * sk for _ in range(sk)]
    for i in range(1, sk):
        rows[i][i - 1] = 1
    coeffs = [0] * (sk + 1)
    coeffs[sk] = 1
    for s, w in zip(spec.gens, spec.weights):
        rows[sk - s][sk - 1] += w
        coeffs[sk - s] -= w
    return CompanionMatrix(sk, IntMatrix.from_rows(rows), circ.IntPolynomial.of(coeffs))


def _require_generating(spec: CayleySpec, graph: DirectedMultigraph | None = None) -> None:
    if spec.is_cyclic:
        if gcd(spec.n, *spec.gens) != 1:
            raise NotGeneratingError(f"S does not generate Z_{spec.n}")
        return
    g = graph if graph is not None else build_cayley(spec)
    if not is_strongly_connected(g):
        raise NotGeneratingError("S does not generate the group")


def k0_via_companion(spec: CayleySpec) -> FinAbGroup:
    """Cokernel of T^n - I computed on the s_k x s_k companion matrix."""
    _require_generating(spec)
    if spec.total_weight < 2:
        raise InvalidSpecError("total weight must be at least 2")
    comp = companion_matrix(spec)
    power = mat_pow(comp.matrix, spec.n) - IntMatrix.identity(comp.size)
    return cokernel(power)


def k0_via_full_snf(g: DirectedMultigraph) -> FinAbGroup:
    """Cokernel of I - A^t; valid only for purely infinite simple graphs."""
    if not is_purely_infinite_simple(g):
        raise NotPurelyInfiniteSimpleError(
            "the cokernel formula requires a purely infinite simple graph"
        )
    return cokernel(g.i_minus_at())


@dataclass(frozen=True)
class K0Report:
    """Complete analysis record for one graph."""

    group_kind: str  # "cyclic" | "dihedral" | "table" | "graph"
    n: int  # vertex count
    generators: tuple[int, ...] | None
    weights: tuple[int, ...] | None
    total_weight: int | None
    pis: bool
    det_value: int
    det_sign: int
    snf_diag: tuple[int, ...]
    k0: FinAbGroup | None
    identity_order: int | str | None  # int, "infinite", or None when K-theory is omitted
    method: str  # "full_snf" | "companion_reduction" | "both"
    classification: object | None = None

    def to_json_dict(self) -> dict:
        k0_field = None
        if self.k0 is not None:
            k0_field = {
                "torsion": [str(t) for t in self.k0.torsion],
                "free_rank": self.k0.free_rank,
                "display": self.k0.display(),
            }
        order: str | None
        if self.identity_order is None:
            order = None
        elif self.identity_order == "infinite":
            order = "infinite"
        else:
            order = str(self.identity_order)
        classification = None
        if self.classification is not None:
            classification = self.classification.to_json_dict()
        return {
            "n": self.n,
            "generators": list(self.generators) if self.generators is not None else None,
            "weights": list(self.weights) if self.weights is not None else None,
            "group": self.group_kind,
            "W": self.total_weight,
            "pis": self.pis,
            "det": str(self.det_value),
            "det_sign": self.det_sign,
            "snf_diag": [str(s) for s in self.snf_diag],
            "k0": k0_field,
            "identity_order": order,
            "method": self.method,
            "classification": classification,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def render_text(self) -> str:
        lines = []
        if self.generators is not None:
            gens = ",".join(str(g) for g in self.generators)
            ws = ",".join(str(w) for w in self.weights)
            lines.append(
                f"graph: {self.group_kind} n={self.n} S={{{gens}}} w={{{ws}}} (W={self.total_weight})"
            )
        else:
            lines.append(f"graph: {self.group_kind} with {self.n} vertices")
        lines.append(f"pis: {'true' if self.pis else 'false'}")
        lines.append(f"det = {self.det_value}")
        lines.append(f"det sign: {self.det_sign}")
        lines.append("snf diag: " + " ".join(str(s) for s in self.snf_diag))
        if self.k0 is not None:
            lines.append(f"K0 = {self.k0.display()}")
        else:
            lines.append("K0 = (omitted: not purely infinite simple)")
        if self.identity_order is not None:
            lines.append(f"identity order: {self.identity_order}")
        lines.append(f"method: {self.method}")
        if self.classification is not None:
            lines.append(f"classification: {self.classification.display()}")
        return "\n".join(lines) + "\n"


def crosscheck_limit() -> int:
    raw = os.environ.get(CROSSCHECK_ENV)
    if raw is None:
        return DEFAULT_CROSSCHECK_LIMIT
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_CROSSCHECK_LIMIT


def _detect_kind(spec: CayleySpec) -> str:
    kind = spec.group.kind
    return kind if kind in ("cyclic", "dihedral") else "table"


def analyze(
    target: CayleySpec | DirectedMultigraph,
    method: str = "auto",
    limit: int | None = None,
) -> K0Report:
    """Full analysis of a Cayley spec or a raw graph.

    ``method`` selects the reduction: "full" (n x n Smith form),
    "companion" (s_k x s_k shortcut, cyclic specs with 0 not in S only),
    "both" (run both and insist they agree), or "auto" (both up to the
    cross-check size limit, companion beyond it, full when the shortcut
    does not apply).
    """
    if method not in ("auto", "full", "companion", "both"):
        raise ValueError(f"unknown method {method!r}")
    if limit is None:
        limit = crosscheck_limit()

    spec: CayleySpec | None
    if isinstance(target, CayleySpec):
        spec = target
        graph = build_cayley(spec)
        _require_generating(spec, graph)
        kind = _detect_kind(spec)
        total_weight = spec.total_weight
        pis = total_weight >= 2
    else:
        spec = None
        graph = target
        kind = "graph"
        total_weight = None
        pis = is_purely_infinite_simple(graph)

    n = graph.vertex_count
    m = graph.i_minus_at()
    if spec is not None and spec.is_cyclic:
        det_value = circ.cayley_det(spec)
    else:
        det_value = det(m)
    det_sign = (det_value > 0) - (det_value < 0)

    companion_ok = spec is not None and spec.is_cyclic and 0 not in spec.gens and pis
    if method == "auto":
        if companion_ok:
            method = "both" if n <= limit else "companion_reduction"
        else:
            method = "full_snf"
    elif method == "full":
        method = "full_snf"
    elif method == "companion":
        if spec is None or not spec.is_cyclic:
            raise InvalidSpecError("companion reduction needs a cyclic-group spec")
        if not pis:
            raise InvalidSpecError("companion reduction assumes total weight >= 2")
        companion_matrix(spec)  # raises when 0 is a generator
        method = "companion_reduction"
    else:
        if not companion_ok:
            raise InvalidSpecError("method 'both' needs a cyclic spec with 0 not in S and W >= 2")
        method = "both"

    if not pis:
        # K-theory fields are only meaningful under pure infinite simplicity;
        # the matrix facts are still reported.
        report = K0Report(
            group_kind=kind,
            n=n,
            generators=spec.gens if spec else None,
            weights=spec.weights if spec else None,
            total_weight=total_weight,
            pis=False,
            det_value=det_value,
            det_sign=det_sign,
            snf_diag=snf_diagonal(m),
            k0=None,
            identity_order=None,
            method="full_snf",
        )
        return _with_classification(report, graph)

    # One left-transform Smith reduction serves the full cokernel and the
    # order of the all-ones class.
    diag_full, u = _snf_with_left_transform(m)
    k0_full = FinAbGroup.from_invariants(
        (s for s in diag_full if s > 1), free_rank=sum(1 for s in diag_full if s == 0)
    )
    w_vec = [sum(row) for row in u]  # u applied to the all-ones vector
    acc = 1
    infinite = False
    for i, s in enumerate(diag_full):
        if s == 0:
            if w_vec[i] != 0:
                infinite = True
                break
        elif w_vec[i] % s != 0:
            step = s // gcd(s, w_vec[i] % s)
            acc = acc * step // gcd(acc, step)
    order = "infinite" if infinite else acc

    if method == "full_snf":
        k0_result = k0_full
        diag_report = diag_full
    else:
        comp = companion_matrix(spec)
        power = mat_pow(comp.matrix, spec.n) - IntMatrix.identity(comp.size)
        diag_comp = snf_diagonal(power)
        k0_comp = FinAbGroup.from_invariants(
            (s for s in diag_comp if s > 1), free_rank=sum(1 for s in diag_comp if s == 0)
        )
        if method == "both" and k0_comp != k0_full:
            raise AssertionError(
                f"companion reduction disagrees with the full Smith form: "
                f"{k0_comp.display()} vs {k0_full.display()} for {spec}"
            )
        k0_result = k0_comp
        diag_report = diag_comp

    report = K0Report(
        group_kind=kind,
        n=n,
        generators=spec.gens if spec else None,
        weights=spec.weights if spec else None,
        total_weight=total_weight,
        pis=True,
        det_value=det_value,
        det_sign=det_sign,
        snf_diag=diag_report,
        k0=k0_result,
        identity_order=order,
        method=method,
    )
    _validate_report(report)
    return _with_classification(report, graph)


def _validate_report(report: K0Report) -> None:
    """Internal consistency: |K0| = |det| when nonsingular, rank = nullity otherwise."""
    assert report.k0 is not None
    if report.det_value != 0:
        if report.k0.order() != abs(report.det_value):
            raise AssertionError(
                f"|K0| = {report.k0.order()} but |det| = {abs(report.det_value)}"
            )
    else:
        if report.k0.free_rank == 0:
            raise AssertionError("det vanishes but K0 came out finite")


def _with_classification(report: K0Report, graph: DirectedMultigraph) -> K0Report:
    from .classify import classify_report

    return replace(report, classification=classify_report(report, graph))


def closed_form_S01(n: int, a: int, b: int) -> FinAbGroup:
    """Invariant-factor form of K0 for S = {0, 1} with weights (a, b).

    With d = gcd(a-1, b): (Z_d)^(n-1) + Z when a = b+1 and n is even,
    otherwise (Z_d)^(n-1) + Z_{|(1-a)^n - b^n| / d^(n-1)}.
    """
    if n < 1:
        raise InvalidSpecError("n must be positive")
    if a < 1 or b < 1 or a + b < 2:
        raise InvalidSpecError("weights must be positive with total at least 2")
    d = gcd(a - 1, b)
    if a == b + 1 and n % 2 == 0:
        return FinAbGroup.from_invariants([d] * (n - 1), free_rank=1)
    big = abs((1 - a) ** n - b**n)
    last = big // d ** (n - 1) if d else big
    return FinAbGroup.from_invariants([d] * (n - 1) + [last])


def f_sequence(j: int, k: int, upto: int) -> list[int]:
    """First ``upto`` terms of the two-gap recursion F(n) = F(n-j) + F(n-k).

    Base segment: zero on 1..k-2, one at k-1, zero at k.
    """
    if not 1 <= j < k:
        raise InvalidSpecError("need 1 <= j < k")
    if upto < 0:
        raise InvalidSpecError("length must be non-negative")
    vals: list[int] = []
    for m in range(1, upto + 1):
        if m <= k - 2:
            vals.append(0)
        elif m == k - 1:
            vals.append(1)
        elif m == k:
            vals.append(0)
        else:
            vals.append(vals[m - j - 1] + vals[m - k - 1])
    return vals


def _f_extended(j: int, k: int, m: int, cache: dict[int, int]) -> int:
    """F_(j,k) extended to all integers via the recursion run backwards."""
    if m in cache:
        return cache[m]
    if m >= 1:
        if m <= k - 2:
            val = 0
        elif m == k - 1:
            val = 1
        elif m == k:
            val = 0
        else:
            val = _f_extended(j, k, m - j, cache) + _f_extended(j, k, m - k, cache)
    else:
        val = _f_extended(j, k, m + k, cache) - _f_extended(j, k, m + k - j, cache)
    cache[m] = val
    return val


def verify_Tn_structure(d1: int, d2: int, n: int) -> bool:
    """Check that T^n follows the shifted-window pattern of the gap sequence.

    Row i of T^n (1-indexed) reads G at d2 consecutive indices starting at
    n - i for i <= d2 - d1 and at n - i + d2 past the jump row d2 - d1 + 1,
    where G is the (d1, d2) gap sequence extended to all integers.
    """
    if not 1 <= d1 < d2:
        raise InvalidSpecError("need 1 <= d1 < d2")
    if gcd(d1, d2) != 1:
        raise InvalidSpecError("d1 and d2 must be coprime")
    if n < 1:
        raise InvalidSpecError("n must be positive")
    size = d2
    rows = [[0] * size for _ in range(size)]
    for i in range(1, size):
        rows[i][i - 1] = 1
    rows[d2 - d1][size - 1] += 1
    rows[0][size - 1] += 1
    t_matrix = IntMatrix.from_rows(rows)
    power = mat_pow(t_matrix, n)
    cache: dict[int, int] = {}
    k = d2 - d1
    for i in range(1, size + 1):
        lead = n - i if i <= k else n - i + d2
        for col in range(size):
            expected = _f_extended(d1, d2, lead + col, cache)
            if power.at(i - 1, col) != expected:
                return False
    return True
