"""Fuchsian and quasifuchsian representations of nonorientable surface groups.

Built-in Fuchsian families (all with every puncture parabolic):

  N12  --  N_{1,2} = <a, x>, chart parameter tr(rho(a)) > 0 in the det -1 lift.
           Constructed directly in the normalized frame: rho(a^2 x) acts as
           z -> z + 1, rho(x) is parabolic fixing 0.
  N21  --  N_{2,1} = <a, b>, chart (l_a, l_b) = the two crosscap glide lengths.
  N13  --  N_{1,3} = <a, x, y>, chart (l_a, l_delta, twist) where delta = a^2 x
           is the pants-decomposition curve separating {a^2, x} from {y, p}.

A bordered variant of N12 replaces the distinguished cusp (and optionally the
second cusp) by a geodesic boundary; the builder solves the same trace
conditions with hyperbolic instead of parabolic target traces.

Quasifuchsian points are produced by complex Fenchel-Nielsen bending along a
tabulated 2-sided simple curve; the deformation path from the Fuchsian
basepoint is retained for branch tracking of complex lengths.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import mobius
from .errors import (
    BranchJump,
    NotParabolic,
    OutsideChart,
    UnsupportedBendCurve,
    ValidationFailed,
)
from .mobius import MAT_ID, ComplexLength, MatrixRep, mat, normalize_det
from .surface import (
    SurfacePresentation,
    Word,
    canonical_conjugacy,
    free_reduce,
    from_spec,
    presentation,
)

PERIPHERAL_RESIDUAL_TOL = 1e-9
FUCHSIAN_REAL_TOL = 1e-12
MAX_PATH_STEPS = 4096


def _parabolic_fixing(u: float, h: float) -> np.ndarray:
    """Parabolic with fixed point u and parameter h: I + h*[[u, -u^2],[1, -u]]."""
    return mat(1 + h * u, -h * u * u, h, 1 - h * u)


def _hyperbolic_with_axis(p, q, lam) -> np.ndarray:
    """det +1 matrix with attracting fixed point p, repelling q, eigenvalue lam
    (|lam| > 1) at p."""
    S = np.array([[p, q], [1, 1]], dtype=complex)
    return normalize_det(S @ np.diag([lam, 1 / lam]) @ np.linalg.inv(S), +1)


def _glide_with_axis(p, q, t) -> np.ndarray:
    """det -1 glide translating toward p along the axis (q, p), eigenvalue t."""
    S = np.array([[p, q], [1, 1]], dtype=complex)
    return normalize_det(S @ np.diag([t, -1 / t]) @ np.linalg.inv(S), -1)


@dataclass(frozen=True)
class BendSpec:
    """Complex Fenchel-Nielsen twist data: recorded so complex lengths can be
    continued from the Fuchsian basepoint."""

    curve: Word
    t: complex
    steps: int


@dataclass
class Representation:
    """A representation of pi_1(N_{g,n}) by SL^pm(2,C) lifts of Moebius maps.

    `images` holds one MatrixRep per generator.  Deformed representations keep
    their Fuchsian basepoint and bend data for branch tracking.
    """

    surface: SurfacePresentation
    images: tuple
    kind: str = "fuchsian"  # "fuchsian" | "deformed"
    family: str | None = None
    params: tuple = ()
    boundary_lengths: dict = field(default_factory=dict)
    bend_spec: BendSpec | None = None
    base: "Representation | None" = None
    _cache: dict = field(default_factory=dict, repr=False)

    # -- evaluation -----------------------------------------------------

    def generator_matrix(self, index: int) -> np.ndarray:
        return self.images[index - 1].mat

    def word_matrix(self, w: Word) -> np.ndarray:
        m = MAT_ID
        for s in w:
            g = self.generator_matrix(abs(s))
            m = m @ (g if s > 0 else _inv2(g))
        return m

    def evaluate(self, w) -> MatrixRep:
        """Product of generator images; det sign from the orientation character."""
        if isinstance(w, str):
            w = self.surface.word_from_string(w)
        w = free_reduce(w)
        sign = -1 if self.surface.orientation_character(w) else +1
        return MatrixRep.of(self.word_matrix(w), sign) if w else MatrixRep.of(MAT_ID, +1)

    def meridian_image(self) -> MatrixRep:
        return self.evaluate(self.surface.meridian())

    # -- lengths ----------------------------------------------------------

    def basepoint(self) -> "Representation":
        return self.base if self.base is not None else self

    def path_trace_samples(self, w: Word, n: int) -> np.ndarray:
        """Lift traces of w along the deformation path at n+1 samples
        t_k = t * k/n, starting at the Fuchsian basepoint."""
        if self.bend_spec is None:
            raise ValueError("representation has no deformation path")
        base = self.basepoint()
        spec = self.bend_spec
        ts = spec.t * np.arange(n + 1) / n
        gens = _bend_generator_paths(base, spec.curve, ts)
        m = np.broadcast_to(MAT_ID, (n + 1, 2, 2)).copy()
        invs = {}
        for s in w:
            k = abs(s)
            if s > 0:
                g = gens[k - 1]
            else:
                if k not in invs:
                    invs[k] = _inv2_batch(gens[k - 1])
                g = invs[k]
            m = m @ g
        return m[:, 0, 0] + m[:, 1, 1]

    def length(self, w) -> ComplexLength:
        """Branch-tracked complex length of the class of w (0 for peripherals)."""
        if isinstance(w, str):
            w = self.surface.word_from_string(w)
        key = canonical_conjugacy(w)
        if not key:
            raise ValueError("length of the trivial class")
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        sign = -1 if self.surface.orientation_character(key) else +1
        if self.bend_spec is None:
            tr = complex(np.trace(self.word_matrix(key)))
            value = mobius.continue_length([tr], sign)
        else:
            n = self.bend_spec.steps
            while True:
                traces = self.path_trace_samples(key, n)
                try:
                    value = mobius.continue_length(traces, sign)
                    break
                except BranchJump:
                    n *= 2
                    if n > MAX_PATH_STEPS:
                        raise
        self._cache[key] = value
        return value

    # -- transformations --------------------------------------------------

    def conjugated(self, C: np.ndarray) -> "Representation":
        Cinv = _inv2(C)
        images = tuple(
            MatrixRep.of(C @ im.mat @ Cinv, im.det_sign) for im in self.images
        )
        base = self.base.conjugated(C) if self.base is not None else None
        return replace(self, images=images, base=base, _cache={})

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        d = {
            "surface": self.surface.spec(),
            "kind": self.kind,
            "family": self.family,
            "params": list(self.params),
            "boundary_lengths": {str(k): v for k, v in self.boundary_lengths.items()},
            "generators": [
                {
                    "entries_re": [float(z.real) for z in im.mat.reshape(-1)],
                    "entries_im": [float(z.imag) for z in im.mat.reshape(-1)],
                    "det_sign": im.det_sign,
                }
                for im in self.images
            ],
        }
        if self.bend_spec is not None:
            d["bend"] = {
                "curve": self.surface.word_to_string(self.bend_spec.curve),
                "t_re": self.bend_spec.t.real,
                "t_im": self.bend_spec.t.imag,
                "steps": self.bend_spec.steps,
            }
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Representation":
        surf = from_spec(d["surface"])
        images = tuple(
            MatrixRep.of(
                (np.array(g["entries_re"]) + 1j * np.array(g["entries_im"])).reshape(2, 2),
                g["det_sign"],
            )
            for g in d["generators"]
        )
        rep = cls(
            surface=surf,
            images=images,
            kind=d.get("kind", "fuchsian"),
            family=d.get("family"),
            params=tuple(d.get("params", ())),
            boundary_lengths={int(k): v for k, v in d.get("boundary_lengths", {}).items()},
        )
        if "bend" in d and rep.kind == "deformed":
            # rebuild the deformation path from the stored metadata
            b = d["bend"]
            base = build_family(rep.family, rep.params) if rep.family else None
            rep.bend_spec = BendSpec(surf.word_from_string(b["curve"]), complex(b["t_re"], b["t_im"]), int(b["steps"]))
            rep.base = base
        return rep


def _inv2(m: np.ndarray) -> np.ndarray:
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=complex) / det


def _inv2_batch(m: np.ndarray) -> np.ndarray:
    det = m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]
    out = np.empty_like(m)
    out[..., 0, 0] = m[..., 1, 1]
    out[..., 0, 1] = -m[..., 0, 1]
    out[..., 1, 0] = -m[..., 1, 0]
    out[..., 1, 1] = m[..., 0, 0]
    return out / det[..., None, None]


# -- family builders ----------------------------------------------------------


def build_family(surface_id: str, params) -> Representation:
    """Discrete faithful PSL^pm(2,R) representation with parabolic punctures.

    N12: params = [tr_a]; N21: params = [l_a, l_b]; N13: params = [l_a,
    l_delta, twist].  The distinguished cusp is normalized so its meridian
    acts as z -> z + 1.
    """
    params = tuple(float(p) for p in params)
    if surface_id == "N12":
        rep = _build_n12(*params)
    elif surface_id == "N21":
        rep = _build_n21(*params)
    elif surface_id == "N13":
        rep = _build_n13(*params)
    else:
        raise OutsideChart(f"unknown family {surface_id!r}")
    report = validate(rep)
    if report.hard_failures:
        raise ValidationFailed("; ".join(report.hard_failures))
    return rep


def _build_n12(tr_a: float = 2.0) -> Representation:
    if tr_a <= 0:
        raise OutsideChart("N12 chart needs tr(rho(a)) > 0")
    la = 2 * math.asinh(tr_a / 2)
    h = 2 + 2 * math.cosh(la)
    X = mat(1, 0, h, 1)
    # B = rho-hat(a^2 x) X^-1 has trace 2 - h = -2 cosh(l_a); the real glide
    # square root exists for -B (positive trace)
    negB = mat(h - 1, -1, h, -1)
    A = mobius.glide_square_root(negB)
    surf = presentation(1, 2)
    rep = Representation(
        surface=surf,
        images=(MatrixRep.of(A, -1), MatrixRep.of(X, +1)),
        family="N12",
        params=(tr_a,),
    )
    return rep


def _build_n21(la: float, lb: float) -> Representation:
    if la <= 0 or lb <= 0:
        raise OutsideChart("N21 chart needs positive glide lengths")
    s = math.exp(la / 2)
    A = mat(s, 0, 0, -1 / s)
    # axis of b at (1, k2); k2 solves the parabolicity trace condition
    k2 = (math.cosh((la + lb) / 2) / math.cosh((la - lb) / 2)) ** 2
    B = _glide_with_axis(1.0, k2, math.exp(lb / 2))
    surf = presentation(2, 1)
    rep = Representation(
        surface=surf,
        images=(MatrixRep.of(A, -1), MatrixRep.of(B, -1)),
        family="N21",
        params=(la, lb),
    )
    return normalize_cusp(rep)


def _build_n13(la: float, ldelta: float, twist: float = 0.0) -> Representation:
    if la <= 0 or ldelta <= 0:
        raise OutsideChart("N13 chart needs positive lengths")
    d = math.exp(ldelta / 2)  # eigenvalue of the delta = a^2 x image
    D = np.diag([d, 1 / d]).astype(complex)
    th = ldelta / 2
    # pants <D, X2>: X2 parabolic at +1, D X2 parabolic
    h2 = -1.0 / math.tanh(th / 2)
    X2 = _parabolic_fixing(1.0, h2)
    # pants <a^2, X1> with a^2 x1 = delta: X1 parabolic at -1,
    # tr(D X1^-1) = -2 cosh(l_a)
    h1 = -(math.cosh(la) + math.cosh(th)) / math.sinh(th)
    X1 = _parabolic_fixing(-1.0, h1)
    negBA = -(D @ _inv2(X1))
    A = mobius.glide_square_root(normalize_det(negBA, +1))
    T = np.diag([math.exp(twist / 2), math.exp(-twist / 2)]).astype(complex)
    X2t = T @ X2 @ _inv2(T)
    surf = presentation(1, 3)
    rep = Representation(
        surface=surf,
        images=(MatrixRep.of(A, -1), MatrixRep.of(X1, +1), MatrixRep.of(X2t, +1)),
        family="N13",
        params=(la, ldelta, twist),
    )
    return normalize_cusp(rep)


def build_bordered_n12(tr_a: float, L1: float, L2: float = 0.0) -> Representation:
    """Fuchsian N_{1,2} with the distinguished cusp replaced by a geodesic
    boundary of length L1 > 0 (and optionally the second cusp by length L2).

    Same trace-condition machinery as the cusped family, with hyperbolic
    target traces."""
    if tr_a <= 0 or L1 <= 0 or L2 < 0:
        raise OutsideChart("need tr_a > 0, L1 > 0, L2 >= 0")
    la = 2 * math.asinh(tr_a / 2)
    L = 2 * la  # length of a^2
    s = math.exp(la / 2)
    A = mat(s, 0, 0, -1 / s)
    w = -2 * math.cosh(L1 / 2)
    if L2 == 0.0:
        # x parabolic fixing 1: tr(A^2 X) = 2 cosh L + 2 h sinh L = w
        h = (w - 2 * math.cosh(L)) / (2 * math.sinh(L))
        X = _parabolic_fixing(1.0, h)
    else:
        # x hyperbolic with fixed points (1, u2), eigenvalue e^{L2/2}
        Fp = 2 * math.cosh(L + L2 / 2)
        Gp = 2 * math.cosh(L - L2 / 2)
        if abs(w - Gp) < 1e-14:
            raise OutsideChart("degenerate bordered chart point")
        u2 = (w - Fp) / (w - Gp)
        X = _hyperbolic_with_axis(1.0, u2, math.exp(L2 / 2))
    surf = presentation(1, 2)
    rep = Representation(
        surface=surf,
        images=(MatrixRep.of(A, -1), MatrixRep.of(X, +1)),
        family="N12b",
        params=(tr_a, L1, L2),
        boundary_lengths={1: L1, **({0: L2} if L2 else {})},
    )
    report = validate(rep)
    if report.hard_failures:
        raise ValidationFailed("; ".join(report.hard_failures))
    return rep


# -- validation ---------------------------------------------------------------


@dataclass
class ValidationReport:
    checks: list
    hard_failures: list
    warnings: list

    @property
    def ok(self) -> bool:
        return not self.hard_failures


def validate(rep: Representation, n_random_words: int = 24) -> ValidationReport:
    """Det-sidedness coherence, peripheral parabolicity (or boundary-length)
    residuals, a Jorgensen-inequality screen, and realness for Fuchsian kind.

    The Jorgensen screen is a necessary condition for discreteness only;
    violations are reported as warnings (ProbablyIndiscrete), never proven."""
    checks = []
    hard = []
    warnings = []
    surf = rep.surface
    rng = np.random.default_rng(7)

    # det-sidedness of generators and random words
    worst = 0.0
    for i, im in enumerate(rep.images):
        want = -1 if surf.orientation_character((i + 1,)) else +1
        if im.det_sign != want:
            hard.append(f"DetSidednessMismatch: generator {i + 1}")
        det = np.linalg.det(im.mat)
        worst = max(worst, abs(det - im.det_sign))
    for _ in range(n_random_words):
        w = free_reduce(
            [int(rng.integers(1, surf.rank + 1)) * (1 if rng.random() < 0.5 else -1) for _ in range(8)]
        )
        if not w:
            continue
        im = rep.evaluate(w)
        want = -1 if surf.orientation_character(w) else +1
        if im.det_sign != want:
            hard.append(f"DetSidednessMismatch: word {surf.word_to_string(w)}")
    checks.append(("det_normalization", worst < 1e-10, worst))

    # peripheral conditions
    for idx, p in enumerate(surf.peripheral_words()):
        tr = rep.evaluate(p).trace()
        Lb = rep.boundary_lengths.get(idx)
        if Lb:
            res = abs(abs(tr.real) - 2 * math.cosh(Lb / 2)) + abs(tr.imag)
            name = f"boundary_length_{idx}"
        else:
            res = min(abs(tr - 2), abs(tr + 2))
            name = f"parabolicity_{idx}"
        ok = res < PERIPHERAL_RESIDUAL_TOL
        checks.append((name, ok, res))
        if not ok:
            hard.append(f"ParabolicityFailed: cusp {idx} residual {res:.3g}")

    # Fuchsian realness and half-plane exchange for 1-sided generators
    if rep.kind == "fuchsian":
        worst = max(
            float(np.max(np.abs(im.canonical_sign().mat.imag))) for im in rep.images
        )
        checks.append(("real_entries", worst < FUCHSIAN_REAL_TOL, worst))
        if worst >= FUCHSIAN_REAL_TOL:
            hard.append(f"RealnessFailed: residual {worst:.3g}")
        for i, im in enumerate(rep.images):
            if im.det_sign == -1:
                z = mobius.apply(im, 1j)
                if z.imag >= 0:
                    hard.append(f"HalfPlaneExchangeFailed: generator {i + 1}")

    # Jorgensen screen on det +1 pairs derived from the generators
    pairs = []
    g = surf.crosscap_count
    two_sided = []
    for i in range(1, surf.rank + 1):
        wi = (i, i) if i <= g else (i,)
        two_sided.append(wi)
    for i in range(len(two_sided)):
        for j in range(i + 1, len(two_sided)):
            pairs.append((two_sided[i], two_sided[j]))
    for u, v in pairs:
        Mu, Mv = rep.evaluate(u), rep.evaluate(v)
        comm = Mu.mat @ Mv.mat @ _inv2(Mu.mat) @ _inv2(Mv.mat)
        val = abs(Mu.trace() ** 2 - 4) + abs(np.trace(comm) - 2)
        name = f"jorgensen_{surf.word_to_string(u)}_{surf.word_to_string(v)}"
        checks.append((name, val >= 1 - 1e-9, val))
        if val < 1 - 1e-9:
            warnings.append(
                f"ProbablyIndiscrete: Jorgensen value {val:.4f} for ({surf.word_to_string(u)}, {surf.word_to_string(v)})"
            )
    return ValidationReport(checks, hard, warnings)


# -- cusp normalization -------------------------------------------------------


def normalize_cusp(rep: Representation) -> Representation:
    """Global conjugation so the distinguished meridian acts as z -> z + 1."""
    M = rep.evaluate(rep.surface.meridian())
    tr = M.trace()
    if min(abs(tr - 2), abs(tr + 2)) > 1e-7:
        raise NotParabolic(f"meridian trace {tr:.6g} is not parabolic")
    # double-root formula: the quadratic branch is ill-conditioned here
    if abs(M.c) < 1e-12:
        C1 = MAT_ID
    else:
        z0 = (M.a - M.d) / (2 * M.c)
        C1 = mat(0, 1, -1, z0)
    M1 = C1 @ M.mat @ _inv2(C1)
    tau = mobius.apply(M1, 0j)
    if tau == 0 or mobius.is_inf(tau):
        raise NotParabolic("degenerate meridian normalization")
    lam = 1 / cmath.sqrt(tau)
    C = np.diag([lam, 1 / lam]) @ C1
    out = rep.conjugated(C)
    # exact residual check
    Mn = out.evaluate(out.surface.meridian()).canonical_sign()
    res = np.max(np.abs(Mn.mat - mat(1, 1, 0, 1)))
    if res > 1e-8:
        raise NotParabolic(f"normalization residual {res:.3g}")
    return out


# -- bending ------------------------------------------------------------------

# complement decompositions of the built-in families: for each bendable
# 2-sided simple curve, how generator images transform given the twist E.
# Recipes receive (gens, E, Einv) and return new generator matrix tuples.


def _recipes(family: str, surf: SurfacePresentation) -> dict:
    w = surf.word_from_string
    if family == "N12":
        return {
            canonical_conjugacy(w("aa")): ("conjugate", [2]),  # conjugate x
            canonical_conjugacy(w("axax")): ("n12_axax", None),
        }
    if family == "N21":
        return {
            canonical_conjugacy(w("ab")): ("n21_ab", None),
            canonical_conjugacy(w("aa")): ("conjugate", [2]),  # conjugate b
            canonical_conjugacy(w("bb")): ("conjugate", [1]),  # conjugate a
        }
    if family == "N13":
        return {
            canonical_conjugacy(w("aax")): ("conjugate", [1, 2]),  # conjugate a, x1
        }
    return {}


def _bend_generator_mats(base: Representation, curve: Word, t: complex):
    """Generator matrices of the bend at twist parameter t."""
    return [g[-1] for g in _bend_generator_paths(base, curve, np.array([0.0, t]))]


def _bend_generator_paths(base: Representation, curve: Word, ts: np.ndarray):
    """Per-generator arrays of matrices along the twist path ts."""
    surf = base.surface
    recipes = _recipes(base.family, surf)
    key = canonical_conjugacy(curve)
    if key not in recipes:
        raise UnsupportedBendCurve(
            f"no complement decomposition tabulated for curve {surf.word_to_string(key)}"
        )
    kind, payload = recipes[key]
    G = base.word_matrix(key)
    S, _, _ = mobius.eigenframe(G)
    Sinv = np.linalg.inv(S)
    half = np.exp(np.asarray(ts, dtype=complex) / 2)
    diag = np.zeros((len(ts), 2, 2), dtype=complex)
    diag[:, 0, 0] = half
    diag[:, 1, 1] = 1 / half
    E = S @ diag @ Sinv  # (n, 2, 2) translation by ts along axis of rho(curve)
    Einv = _inv2_batch(E)
    n = len(ts)
    gens = [np.broadcast_to(im.mat, (n, 2, 2)).copy() for im in base.images]
    if kind == "conjugate":
        for idx in payload:
            gens[idx - 1] = E @ gens[idx - 1] @ Einv
    elif kind == "n21_ab":
        A, B = base.images[0].mat, base.images[1].mat
        AB = A @ B
        gens[0] = E @ np.broadcast_to(A, (n, 2, 2))
        gens[1] = np.broadcast_to(_inv2(A), (n, 2, 2)) @ Einv @ np.broadcast_to(AB, (n, 2, 2))
    elif kind == "n12_axax":
        # keep rho(ax); conjugate x by E; a' = rho(ax) x'^-1
        A, X = base.images[0].mat, base.images[1].mat
        AX = A @ X
        Xt = E @ np.broadcast_to(X, (n, 2, 2)) @ Einv
        gens[1] = Xt
        gens[0] = np.broadcast_to(AX, (n, 2, 2)) @ _inv2_batch(Xt)
    else:
        raise UnsupportedBendCurve(kind)
    return gens


def bend(rep: Representation, curve, t: complex, steps: int = 64) -> Representation:
    """Complex Fenchel-Nielsen twist by t along a tabulated 2-sided simple
    curve; real t is an ordinary Fuchsian twist.  The returned representation
    records `steps` path samples from t = 0 for branch tracking."""
    if rep.kind != "fuchsian":
        raise ValueError("bend starts from a Fuchsian representation")
    surf = rep.surface
    if isinstance(curve, str):
        curve = surf.word_from_string(curve)
    curve = free_reduce(curve)
    if surf.orientation_character(curve):
        raise UnsupportedBendCurve("bending curve must be 2-sided")
    t = complex(t)
    if t == 0:
        return rep
    mats = _bend_generator_mats(rep, curve, t)
    images = tuple(
        MatrixRep.of(m, im.det_sign) for m, im in zip(mats, rep.images)
    )
    return Representation(
        surface=surf,
        images=images,
        kind="deformed",
        family=rep.family,
        params=rep.params,
        bend_spec=BendSpec(curve, t, steps),
        base=rep,
    )


def representation_to_json_str(rep: Representation) -> str:
    return json.dumps(rep.to_json(), indent=2, sort_keys=True)
