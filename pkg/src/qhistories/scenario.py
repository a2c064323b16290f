"""Scenario data model, validation, JSON file format, and builtin generators.

A scenario is a dimension, a piecewise-constant Hamiltonian schedule, an
ordered list of measurement events, and a preparation. The preparation is
the state implied by the outcome of the first listed measurement and is
defined at that event's time; all later events see the Schroedinger-evolved
state. Times are dimensionless and hbar = 1 throughout.
"""

from __future__ import annotations

import inspect
import json
from dataclasses import dataclass, replace
from typing import Callable, Union

import numpy as np

from .errors import Diagnostic, ScenarioValidationError, SchemaError
from .linalg import (
    DEFAULT_CLUSTER_TOL,
    DEFAULT_DIM_CAP,
    HERMITICITY_TOL,
    HermitianObservable,
    _frozen,
    as_matrix,
    as_vector,
    density_branches,
    max_asymmetry,
    observable,
    segment_unitary,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
ID2 = np.eye(2, dtype=complex)

UP_Z = np.array([1, 0], dtype=complex)
DOWN_Z = np.array([0, 1], dtype=complex)


# ---------------------------------------------------------------------------
# Preparations


@dataclass(frozen=True, eq=False)
class PurePreparation:
    """Preparation from a non-degenerate first outcome: a single pure state."""

    vector: np.ndarray

    kind = "pure"

    @property
    def dim(self) -> int:
        return self.vector.size

    def branches(self) -> list[tuple[float, np.ndarray]]:
        return [(1.0, self.vector)]

    def density(self) -> np.ndarray:
        return np.outer(self.vector, self.vector.conj())


@dataclass(frozen=True, eq=False)
class SubspacePreparation:
    """Preparation from a degenerate first outcome: a weighted mixture over an
    orthonormal basis of the outcome's eigen-subspace.

    ``basis`` holds the subspace basis as columns. Uniform weights 1/M make
    the mixture basis independent (the density operator is projector/M).
    """

    basis: np.ndarray
    weights: np.ndarray

    kind = "subspace"

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def subspace_dim(self) -> int:
        return self.basis.shape[1]

    def branches(self) -> list[tuple[float, np.ndarray]]:
        return [(float(w), self.basis[:, m]) for m, w in enumerate(self.weights)]

    def density(self) -> np.ndarray:
        return (self.basis * self.weights) @ self.basis.conj().T


@dataclass(frozen=True, eq=False)
class DensityPreparation:
    """Preparation given directly as a density operator."""

    matrix: np.ndarray

    kind = "density"

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def branches(self) -> list[tuple[float, np.ndarray]]:
        return density_branches(self.matrix)

    def density(self) -> np.ndarray:
        return self.matrix


Preparation = Union[PurePreparation, SubspacePreparation, DensityPreparation]


def subspace_preparation(basis, weights=None) -> SubspacePreparation:
    """Subspace preparation with given or uniform (1/M) weights."""
    b = np.asarray(basis, dtype=complex)
    if b.ndim != 2:
        raise ValueError("subspace basis must be a 2-D array with basis vectors as columns")
    m = b.shape[1]
    w = np.full(m, 1.0 / m) if weights is None else np.asarray(weights, dtype=float).reshape(-1)
    return SubspacePreparation(basis=_frozen(b), weights=w)


# ---------------------------------------------------------------------------
# Scenario


@dataclass(frozen=True, eq=False)
class MeasurementEvent:
    """One projective measurement: when, of what, called what."""

    time: float
    observable: HermitianObservable
    label: str


@dataclass(frozen=True, eq=False)
class Scenario:
    """A validated measurement-sequence scenario.

    Construct through :func:`build_scenario` (or a builtin generator), which
    runs full validation; direct dataclass construction skips checks.
    """

    dimension: int
    schedule: tuple[tuple[float, np.ndarray], ...]
    measurements: tuple[MeasurementEvent, ...]
    preparation: Preparation
    annotations: dict | None = None

    @property
    def prep_time(self) -> float:
        return self.measurements[0].time

    @property
    def times(self) -> tuple[float, ...]:
        return tuple(e.time for e in self.measurements)

    @property
    def cluster_counts(self) -> tuple[int, ...]:
        return tuple(e.observable.cluster_count for e in self.measurements)

    def event_by_label(self, label: str) -> MeasurementEvent:
        for e in self.measurements:
            if e.label == label:
                return e
        raise KeyError(f"no measurement labeled {label!r}; have {[e.label for e in self.measurements]}")

    def unitary_between(self, t0: float, t1: float) -> np.ndarray:
        """Time-ordered evolution operator from t0 to t1 (t0 <= t1).

        The schedule segment starting at s_k is active on [s_k, s_{k+1});
        the last segment extends indefinitely, and times before the first
        segment are free (H = 0).
        """
        if t1 < t0:
            raise ValueError(f"unitary_between needs t0 <= t1, got {t0} > {t1}")
        u = np.eye(self.dimension, dtype=complex)
        if t1 == t0 or not self.schedule:
            return u
        starts = [s for s, _ in self.schedule]
        for k, (start, ham) in enumerate(self.schedule):
            seg_end = starts[k + 1] if k + 1 < len(starts) else np.inf
            lo, hi = max(t0, start), min(t1, seg_end)
            if hi > lo:
                u = segment_unitary(ham, hi - lo) @ u
        return u

    def truncated(self, count: int) -> "Scenario":
        """Same scenario keeping only the first ``count`` measurements."""
        if not 1 <= count <= len(self.measurements):
            raise ValueError(f"count must be in [1, {len(self.measurements)}], got {count}")
        return replace(self, measurements=self.measurements[:count])

    def with_preparation(self, preparation: Preparation) -> "Scenario":
        return replace(self, preparation=preparation)

    def validate(self) -> list[Diagnostic]:
        return validate_parts(
            self.dimension,
            [(t, h) for t, h in self.schedule],
            [(e.time, e.observable.matrix, e.label) for e in self.measurements],
            self.preparation,
        )


def validate_parts(dimension, schedule, measurements, preparation, *, dim_cap: int = DEFAULT_DIM_CAP) -> list[Diagnostic]:
    """Check all scenario invariants; return structured diagnostics (empty = ok).

    ``schedule`` is a list of (start, matrix), ``measurements`` of
    (time, matrix, label). Never partial: all findings are returned.
    """
    out: list[Diagnostic] = []

    if not isinstance(dimension, (int, np.integer)) or dimension < 1:
        out.append(Diagnostic("dimension", None, "positive-integer", f"dimension must be a positive integer, got {dimension!r}"))
        return out
    if dimension > dim_cap:
        out.append(Diagnostic("dimension", None, "dimension-cap", f"dimension {dimension} exceeds cap {dim_cap}"))

    def _check_matrix(field: str, index: int, m) -> None:
        try:
            a = as_matrix(m, int(dimension))
        except ValueError as exc:
            out.append(Diagnostic(field, index, "square-matrix-of-dimension", str(exc)))
            return
        asym = max_asymmetry(a)
        if asym > HERMITICITY_TOL:
            out.append(
                Diagnostic(field, index, "hermitian", f"not Hermitian: max |H - H^dagger| entry = {asym:.3e}")
            )

    prev = None
    for k, (start, ham) in enumerate(schedule):
        if prev is not None and start <= prev:
            out.append(Diagnostic("hamiltonian", k, "strictly-increasing-start", f"non-increasing segment start at segment {k + 1}"))
        prev = start
        _check_matrix("hamiltonian", k, ham)

    if not measurements:
        out.append(Diagnostic("measurements", None, "non-empty", "scenario needs at least one measurement"))
    prev = None
    for k, (time, matrix, _label) in enumerate(measurements):
        if prev is not None and time <= prev:
            out.append(Diagnostic("measurements", k, "strictly-increasing-time", f"non-increasing time at event {k + 1}"))
        prev = time
        _check_matrix("measurements", k, matrix)
    if measurements and schedule and measurements[0][0] < schedule[0][0]:
        out.append(
            Diagnostic(
                "measurements",
                0,
                "first-time-covers-schedule",
                f"first measurement time {measurements[0][0]} precedes earliest schedule time {schedule[0][0]}",
            )
        )

    out.extend(_validate_preparation(preparation, int(dimension)))
    return out


def _validate_preparation(prep, dimension: int) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    if isinstance(prep, PurePreparation):
        v = prep.vector
        if v.size != dimension:
            out.append(Diagnostic("preparation.vector", None, "dimension", f"length {v.size}, expected {dimension}"))
        else:
            n = float(np.linalg.norm(v))
            if abs(n - 1.0) > HERMITICITY_TOL:
                out.append(Diagnostic("preparation.vector", None, "normalized", f"|norm - 1| = {abs(n - 1.0):.3e}"))
    elif isinstance(prep, SubspacePreparation):
        b, w = prep.basis, prep.weights
        if b.ndim != 2 or b.shape[0] != dimension or not 1 <= b.shape[1] <= dimension:
            out.append(Diagnostic("preparation.basis", None, "dimension", f"shape {b.shape}, expected ({dimension}, M<= {dimension})"))
            return out
        gram = b.conj().T @ b
        dev = float(np.max(np.abs(gram - np.eye(b.shape[1]))))
        if dev > HERMITICITY_TOL:
            out.append(Diagnostic("preparation.basis", None, "orthonormal", f"max |gram - I| = {dev:.3e}"))
        if w.shape != (b.shape[1],):
            out.append(Diagnostic("preparation.weights", None, "length", f"{w.shape[0] if w.ndim == 1 else w.shape} weights for {b.shape[1]} basis vectors"))
        else:
            if float(w.min(initial=0.0)) < 0.0:
                out.append(Diagnostic("preparation.weights", None, "non-negative", f"negative weight {w.min():.3e}"))
            if abs(float(w.sum()) - 1.0) > HERMITICITY_TOL:
                out.append(Diagnostic("preparation.weights", None, "sum-to-one", f"|sum - 1| = {abs(float(w.sum()) - 1.0):.3e}"))
    elif isinstance(prep, DensityPreparation):
        m = prep.matrix
        if m.shape != (dimension, dimension):
            out.append(Diagnostic("preparation.matrix", None, "dimension", f"shape {m.shape}, expected ({dimension}, {dimension})"))
            return out
        asym = max_asymmetry(m)
        if asym > HERMITICITY_TOL:
            out.append(Diagnostic("preparation.matrix", None, "hermitian", f"max |rho - rho^dagger| entry = {asym:.3e}"))
        else:
            tr = complex(np.trace(m))
            if abs(tr - 1.0) > HERMITICITY_TOL:
                out.append(Diagnostic("preparation.matrix", None, "unit-trace", f"trace = {tr.real:.12g}{tr.imag:+.3e}j"))
            low = float(np.linalg.eigvalsh(m).min())
            if low < -HERMITICITY_TOL:
                out.append(Diagnostic("preparation.matrix", None, "positive-semidefinite", f"eigenvalue {low:.3e} < 0"))
    else:
        out.append(Diagnostic("preparation", None, "known-kind", f"unsupported preparation {type(prep).__name__}"))
    return out


def build_scenario(
    dimension: int,
    hamiltonian,
    measurements,
    preparation,
    *,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
    annotations: dict | None = None,
) -> Scenario:
    """Validate raw pieces and assemble a Scenario.

    ``hamiltonian`` is a list of (start, matrix); ``measurements`` a list of
    (time, matrix, label); ``preparation`` one of the Preparation variants
    (arrays may be plain sequences). Raises ScenarioValidationError carrying
    every diagnostic if anything is wrong.
    """
    prep = _coerce_preparation(preparation)
    raw_sched = [(float(t), np.asarray(h, dtype=complex)) for t, h in hamiltonian]
    raw_meas = []
    for entry in measurements:
        t, m, label = entry[:3]
        basis = entry[3] if len(entry) > 3 else None
        raw_meas.append((float(t), np.asarray(m, dtype=complex), str(label), basis))
    diagnostics = validate_parts(dimension, raw_sched, [e[:3] for e in raw_meas], prep)
    if diagnostics:
        raise ScenarioValidationError(diagnostics)
    events = tuple(
        MeasurementEvent(time=t, observable=observable(m, label=label, cluster_tol=cluster_tol, basis=basis), label=label)
        for t, m, label, basis in raw_meas
    )
    schedule = tuple((t, _frozen(h)) for t, h in raw_sched)
    return Scenario(
        dimension=int(dimension),
        schedule=schedule,
        measurements=events,
        preparation=prep,
        annotations=dict(annotations) if annotations else None,
    )


def _coerce_preparation(prep) -> Preparation:
    if isinstance(prep, (PurePreparation, SubspacePreparation, DensityPreparation)):
        return prep
    raise TypeError(f"preparation must be a Preparation variant, got {type(prep).__name__}")


# ---------------------------------------------------------------------------
# File format (JSON document)


def _complex_to(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _vector_to(v: np.ndarray) -> list[list[float]]:
    return [_complex_to(z) for z in np.asarray(v, dtype=complex).reshape(-1)]


def _matrix_to(m: np.ndarray) -> list[list[list[float]]]:
    return [[_complex_to(z) for z in row] for row in np.asarray(m, dtype=complex)]


def serialize_scenario(s: Scenario) -> str:
    """Render a scenario as the canonical JSON document (trailing newline)."""
    prep = s.preparation
    if isinstance(prep, PurePreparation):
        prep_doc = {"kind": "pure", "vector": _vector_to(prep.vector)}
    elif isinstance(prep, SubspacePreparation):
        prep_doc = {
            "kind": "subspace",
            "basis": [_vector_to(prep.basis[:, m]) for m in range(prep.subspace_dim)],
            "weights": [float(w) for w in prep.weights],
        }
    else:
        prep_doc = {"kind": "density", "matrix": _matrix_to(prep.matrix)}
    doc = {
        "version": 1,
        "dimension": s.dimension,
        "hamiltonian": [{"start": float(t), "matrix": _matrix_to(h)} for t, h in s.schedule],
        "measurements": [
            {"time": float(e.time), "label": e.label, "matrix": _matrix_to(e.observable.matrix)}
            for e in s.measurements
        ],
        "preparation": prep_doc,
    }
    if s.annotations:
        doc["annotations"] = _annotations_to(s.annotations)
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _annotations_to(ann: dict) -> dict:
    out = {}
    if "post_vector" in ann:
        out["post_vector"] = _vector_to(np.asarray(ann["post_vector"], dtype=complex))
    if "post_time" in ann:
        out["post_time"] = float(ann["post_time"])
    return out


def _want(obj, key: str, kind, path: str):
    if not isinstance(obj, dict):
        raise SchemaError(path, f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise SchemaError(path, f"missing required field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise SchemaError(f"{path}.{key}", f"expected {getattr(kind, '__name__', kind)}, got {type(val).__name__}")
    return val


def _complex_from(obj, path: str) -> complex:
    if not (isinstance(obj, list) and len(obj) == 2 and all(isinstance(x, (int, float)) for x in obj)):
        raise SchemaError(path, "complex numbers are two-element [re, im] arrays")
    return complex(float(obj[0]), float(obj[1]))


def _vector_from(obj, path: str) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise SchemaError(path, "expected a non-empty array of [re, im] pairs")
    return np.array([_complex_from(z, f"{path}[{i}]") for i, z in enumerate(obj)], dtype=complex)


def _matrix_from(obj, path: str) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise SchemaError(path, "expected a non-empty array of rows")
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or not row:
            raise SchemaError(f"{path}[{i}]", "expected a non-empty row of [re, im] pairs")
        rows.append([_complex_from(z, f"{path}[{i}][{j}]") for j, z in enumerate(row)])
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise SchemaError(path, "rows have inconsistent lengths")
    return np.array(rows, dtype=complex)


def parse_scenario(text: str, *, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Scenario:
    """Parse a scenario document; schema errors name the offending field and
    malformed JSON is reported with line/column."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}, column {exc.colno}", f"malformed JSON: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("$", "top level must be an object")
    version = _want(doc, "version", int, "$")
    if version != 1:
        raise SchemaError("$.version", f"unsupported version {version}")
    dimension = _want(doc, "dimension", int, "$")

    sched_doc = _want(doc, "hamiltonian", list, "$")
    hamiltonian = []
    for k, seg in enumerate(sched_doc):
        path = f"$.hamiltonian[{k}]"
        start = _want(seg, "start", (int, float), path)
        matrix = _matrix_from(_want(seg, "matrix", list, path), f"{path}.matrix")
        hamiltonian.append((float(start), matrix))

    meas_doc = _want(doc, "measurements", list, "$")
    measurements = []
    for k, ev in enumerate(meas_doc):
        path = f"$.measurements[{k}]"
        time = _want(ev, "time", (int, float), path)
        label = _want(ev, "label", str, path)
        matrix = _matrix_from(_want(ev, "matrix", list, path), f"{path}.matrix")
        measurements.append((float(time), matrix, label))

    prep_doc = _want(doc, "preparation", dict, "$")
    kind = _want(prep_doc, "kind", str, "$.preparation")
    if kind == "pure":
        prep = PurePreparation(vector=_frozen(_vector_from(_want(prep_doc, "vector", list, "$.preparation"), "$.preparation.vector")))
    elif kind == "subspace":
        basis_doc = _want(prep_doc, "basis", list, "$.preparation")
        cols = [_vector_from(v, f"$.preparation.basis[{m}]") for m, v in enumerate(basis_doc)]
        if not cols:
            raise SchemaError("$.preparation.basis", "expected at least one basis vector")
        basis = np.stack(cols, axis=1)
        weights = prep_doc.get("weights")
        if weights is not None and not (isinstance(weights, list) and all(isinstance(w, (int, float)) for w in weights)):
            raise SchemaError("$.preparation.weights", "expected an array of reals")
        prep = subspace_preparation(basis, None if weights is None else np.asarray(weights, dtype=float))
    elif kind == "density":
        prep = DensityPreparation(matrix=_frozen(_matrix_from(_want(prep_doc, "matrix", list, "$.preparation"), "$.preparation.matrix")))
    else:
        raise SchemaError("$.preparation.kind", f"unknown kind {kind!r}; expected pure, subspace, or density")

    annotations = None
    if "annotations" in doc:
        ann_doc = _want(doc, "annotations", dict, "$")
        annotations = {}
        if "post_vector" in ann_doc:
            annotations["post_vector"] = _vector_from(ann_doc["post_vector"], "$.annotations.post_vector")
        if "post_time" in ann_doc:
            pt = ann_doc["post_time"]
            if not isinstance(pt, (int, float)):
                raise SchemaError("$.annotations.post_time", "expected a real number")
            annotations["post_time"] = float(pt)

    return build_scenario(dimension, hamiltonian, measurements, prep, cluster_tol=cluster_tol, annotations=annotations)


# ---------------------------------------------------------------------------
# Builtin generators (the worked examples)


def basis_from_angle(angle: float) -> np.ndarray:
    """Real orthonormal 2-level basis rotated by ``angle``: columns
    (cos a, sin a) and (-sin a, cos a)."""
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]], dtype=complex)


def vector_from_angle(angle: float) -> np.ndarray:
    return basis_from_angle(angle)[:, 0]


def _two_outcome_observable(basis: np.ndarray) -> np.ndarray:
    """(+1)|v1><v1| + (-1)|v2><v2| for a 2-column orthonormal basis."""
    v1, v2 = basis[:, 0], basis[:, 1]
    return np.outer(v1, v1.conj()) - np.outer(v2, v2.conj())


def builtin_double_slit(b1, c_basis=None) -> Scenario:
    """Two-level interference: preparation |b1>, an unobserved pass through
    the sigma-z pair of states (a trivial identity measurement, so the two
    virtual paths stay coherent), then a screen measurement in the c basis.

    P(C1) = |<c1|up><up|b1> + <c1|down><down|b1>|^2.
    """
    b = as_vector(b1, 2)
    c = basis_from_angle(np.pi / 4) if c_basis is None else as_matrix(c_basis, 2)
    return build_scenario(
        2,
        [],
        [
            (0.0, np.eye(2, dtype=complex), "slits"),
            (1.0, _two_outcome_observable(c), "screen"),
        ],
        PurePreparation(vector=_frozen(b)),
    )


def builtin_eraser(b1, c_basis=None, d_basis=None) -> Scenario:
    """Delayed-choice eraser: a spin entangled with a two-level environment.

    The preparation is the post-measurement entangled state
    <up|b1> |up>|+>  +  <down|b1> |down>|->. A spin observable C acts at t2,
    then an environment observable D at t3 > t2. Whether the conditioned
    spin statistics show interference depends on the d basis, while the
    D-summed marginal never does.
    """
    b = as_vector(b1, 2)
    c = basis_from_angle(np.pi / 4) if c_basis is None else as_matrix(c_basis, 2)
    d = basis_from_angle(np.pi / 4) if d_basis is None else as_matrix(d_basis, 2)
    plus, minus = np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)
    c1, c2 = c[:, 0], c[:, 1]
    d1, d2 = d[:, 0], d[:, 1]
    psi = np.kron(b[0] * UP_Z, plus) + np.kron(b[1] * DOWN_Z, minus)
    # Virtual-path bases: products of the measured bases, ascending eigenvalue.
    c_basis_cols = np.stack([np.kron(c2, plus), np.kron(c2, minus), np.kron(c1, plus), np.kron(c1, minus)], axis=1)
    d_basis_cols = np.stack([np.kron(c1, d2), np.kron(c2, d2), np.kron(c1, d1), np.kron(c2, d1)], axis=1)
    return build_scenario(
        4,
        [],
        [
            (0.0, np.kron(_two_outcome_observable(c), ID2), "C", c_basis_cols),
            (1.0, np.kron(ID2, _two_outcome_observable(d)), "D", d_basis_cols),
        ],
        PurePreparation(vector=_frozen(psi)),
    )


def builtin_epr(theta: float, theta_prime: float) -> Scenario:
    """Entangled spin pair in the singlet state; one side measured along
    direction (theta, azimuth 0), the other along (theta_prime, 0).

    Aligned settings give perfectly anticorrelated outcomes; in general
    P(same sign) = sin^2((theta - theta_prime)/2) / 2 per string.
    """
    singlet = (np.kron(UP_Z, DOWN_Z) - np.kron(DOWN_Z, UP_Z)) / np.sqrt(2.0)
    sigma_a = np.cos(theta) * SIGMA_Z + np.sin(theta) * SIGMA_X
    sigma_b = np.cos(theta_prime) * SIGMA_Z + np.sin(theta_prime) * SIGMA_X
    up_a, down_a = basis_from_angle(theta / 2.0).T.copy()
    up_b, down_b = basis_from_angle(theta_prime / 2.0).T.copy()
    # Both layers use the same four product states, so only the diagonal
    # transfers survive and exactly four virtual paths carry amplitude.
    alice_cols = np.stack([np.kron(down_a, up_b), np.kron(down_a, down_b), np.kron(up_a, up_b), np.kron(up_a, down_b)], axis=1)
    bob_cols = np.stack([np.kron(up_a, down_b), np.kron(down_a, down_b), np.kron(up_a, up_b), np.kron(down_a, up_b)], axis=1)
    return build_scenario(
        4,
        [],
        [
            (0.0, np.kron(sigma_a, ID2), "alice", alice_cols),
            (1.0, np.kron(ID2, sigma_b), "bob", bob_cols),
        ],
        PurePreparation(vector=_frozen(singlet)),
    )


def builtin_larmor(omega: float, t: float) -> Scenario:
    """Spin-1/2 precessing in a transverse field: H = -omega sigma_x, so the
    evolution operator is cos(omega t) + i sin(omega t) sigma_x.

    A first meter reading of +1 prepares |up_z>; a second sigma-z reading
    after time t gives P(+1 <- +1) = cos^2(omega t). An idle lead-in segment
    before the field switches on keeps t = 0 a valid grid point.
    """
    if omega <= 0.0:
        raise ValueError(f"omega must be positive, got {omega}")
    if t < 0.0:
        raise ValueError(f"t must be >= 0, got {t}")
    return build_scenario(
        2,
        [(-1.0, np.zeros((2, 2), dtype=complex)), (0.0, -omega * SIGMA_X)],
        [
            (-1.0, SIGMA_Z, "first reading"),
            (float(t), SIGMA_Z, "second reading"),
        ],
        PurePreparation(vector=_frozen(UP_Z)),
    )


def _eraser_from_angles(b_angle: float = 0.3, c_angle: float = np.pi / 4, d_angle: float = np.pi / 4) -> Scenario:
    return builtin_eraser(vector_from_angle(b_angle), basis_from_angle(c_angle), basis_from_angle(d_angle))


def _double_slit_from_angles(b_angle: float = 0.3, c_angle: float = np.pi / 4) -> Scenario:
    return builtin_double_slit(vector_from_angle(b_angle), basis_from_angle(c_angle))


#: Scalar-parameterized generators addressable by name (CLI, sweep).
BUILTIN_GENERATORS: dict[str, Callable[..., Scenario]] = {
    "epr": builtin_epr,
    "larmor": builtin_larmor,
    "eraser": _eraser_from_angles,
    "double_slit": _double_slit_from_angles,
}


def sweep(template, parameter: str, grid, fixed: dict | None = None, *, strategy: str = "projected-propagator"):
    """Evaluate a builtin (by name or callable) over a parameter grid.

    Returns one (value, HistoryDistribution) pair per grid point, in grid
    order. Unknown parameters are rejected with the list of valid names.
    """
    from .engine import full_distribution

    if isinstance(template, str):
        try:
            generator = BUILTIN_GENERATORS[template]
        except KeyError:
            raise ValueError(f"unknown builtin {template!r}; available: {sorted(BUILTIN_GENERATORS)}") from None
    else:
        generator = template
    names = list(inspect.signature(generator).parameters)
    fixed = dict(fixed or {})
    for name in [parameter, *fixed]:
        if name not in names:
            raise ValueError(f"unknown parameter {name!r} for {getattr(generator, '__name__', template)!r}; available: {names}")
    out = []
    for value in grid:
        s = generator(**{parameter: value, **fixed})
        out.append((value, full_distribution(s, strategy=strategy)))
    return out
