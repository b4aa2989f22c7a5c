"""Contraction homotopy over star-shaped grid domains.

The homotopy H(x, lambda) slides x toward a declared star center along the
segment eta(x, lambda) = lambda*x + (1-lambda)*center (snapped to the
grid) and returns the decision point minimizing the order's gap function
against the value at eta. On instances whose objective is certified
strictly quasi convexlike the argmin is unique, H(x, 1) = x on the weak
solution set, H(., 0) is constant, and the whole table stays inside the
weak solution set. All of that is re-verified and reported, never assumed.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .config import resolve_eps
from .convexlike import certify
from .errors import OutsideDomain, ValidationError
from .solutions import Instance, solve_bruteforce, weak_members_or_raise


@dataclass(frozen=True)
class GridDomain:
    """Finite decision grid with spacing, star center and snap rule."""

    ids: tuple
    X: np.ndarray
    spacing: float
    star_center: str
    snap_rule: str = "nearest-lexicographic"

    @staticmethod
    def from_instance(inst: Instance, spacing=None, check: bool = True) -> "GridDomain":
        if inst.star_center is None:
            raise ValidationError("instance declares no star_center")
        if spacing is None:
            diffs = inst.X[:, None, :] - inst.X[None, :, :]
            dists = np.linalg.norm(diffs, axis=2)
            np.fill_diagonal(dists, np.inf)
            spacing = float(dists.min()) if np.isfinite(dists).any() else 1.0
        dom = GridDomain(
            ids=inst.ids, X=inst.X, spacing=float(spacing), star_center=inst.star_center
        )
        if check:
            dom.check_star()
        return dom

    def index(self, pid: str) -> int:
        return self.ids.index(pid)

    def snap(self, point: np.ndarray, eps=None) -> int:
        """Nearest grid index; distance ties resolved by lexicographically
        smallest coordinates."""
        eps = resolve_eps(eps)
        dists = np.linalg.norm(self.X - point, axis=1)
        near = np.nonzero(dists <= dists.min() + eps)[0]
        if near.shape[0] == 1:
            return int(near[0])
        rows = [tuple(self.X[i]) for i in near]
        return int(near[min(range(len(rows)), key=rows.__getitem__)])

    def check_star(self, eps=None) -> None:
        """Star invariant: along every segment to the center, the snapped
        point stays within one grid spacing of the exact point."""
        eps = resolve_eps(eps)
        c = self.X[self.index(self.star_center)]
        tol = self.spacing * (1.0 + 1e-9) + eps
        for i, pid in enumerate(self.ids):
            for lam in np.linspace(0.0, 1.0, 101):
                p = lam * self.X[i] + (1.0 - lam) * c
                k = self.snap(p, eps)
                if np.linalg.norm(self.X[k] - p) > tol:
                    raise OutsideDomain(
                        f"segment from {pid!r} at lambda={lam:.2f} snaps "
                        f"{np.linalg.norm(self.X[k] - p):.4g} away (> spacing {self.spacing:.4g})"
                    )


def star_segment_point(domain: GridDomain, x_id: str, lam: float, eps=None) -> str:
    """Snapped convex combination of x with the star center at parameter lam."""
    eps = resolve_eps(eps)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    i = domain.index(x_id)
    c = domain.X[domain.index(domain.star_center)]
    p = lam * domain.X[i] + (1.0 - lam) * c
    k = domain.snap(p, eps)
    if np.linalg.norm(domain.X[k] - p) > domain.spacing * (1.0 + 1e-9) + eps:
        raise OutsideDomain(
            f"snap target for {x_id!r} at lambda={lam:.4g} is farther than the spacing"
        )
    return domain.ids[k]


def _argmin_lex(inst: Instance, column: np.ndarray, eps: float):
    """Index minimizing the column; ties within eps counted and broken by
    lexicographic decision coordinates."""
    lo = column.min()
    cand = np.nonzero(column <= lo + eps)[0]
    if cand.shape[0] == 1:
        return int(cand[0]), False
    rows = [tuple(inst.X[i]) for i in cand]
    pick = cand[min(range(len(rows)), key=rows.__getitem__)]
    return int(pick), True


def homotopy_point(
    inst: Instance, domain: GridDomain, order: str, x_id: str, lam: float, eps=None
):
    """One homotopy cell: (eta id, argmin id, tie flag, attained gap value)."""
    eps = resolve_eps(eps)
    eta_id = star_segment_point(domain, x_id, lam, eps)
    G = inst.gap_matrix(order)
    col = G[:, inst.index(eta_id)]
    v, tie = _argmin_lex(inst, col, eps)
    return eta_id, inst.ids[v], tie, float(col[v])


@dataclass(frozen=True)
class ContractionReport:
    """Full homotopy table plus re-verified certificate flags."""

    order: str
    star_center: str
    spacing: float
    members: tuple  # weak solution ids, row order
    lambdas: tuple
    eta_ids: tuple  # per member, per lambda
    h_ids: tuple
    gap_values: tuple
    endpoint_identity: bool
    constant_base: bool
    membership_ok: bool
    tie_events: int
    max_step: float
    warning: str | None = None

    @property
    def all_flags_ok(self) -> bool:
        return self.endpoint_identity and self.constant_base and self.membership_ok

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x_id", "lambda", "h_id", "xi_value"])
            for x_id, hs, gaps in zip(self.members, self.h_ids, self.gap_values):
                for lam, h, g in zip(self.lambdas, hs, gaps):
                    writer.writerow([x_id, repr(lam), h, repr(g)])


def values_apex_shaped(inst: Instance, eps=None) -> bool:
    """True when every value set contains a point dominating the rest
    through the cone (the shape the upper-order theory expects)."""
    eps = resolve_eps(eps)
    for v in inst.values:
        vals = v.points @ inst.cone.gens.T
        top = vals.max(axis=0)
        if not np.any(np.all(vals >= top - eps, axis=1)):
            return False
    return True


def trace_homotopy(
    inst: Instance, order: str, steps: int, force: bool = False, eps=None
) -> ContractionReport:
    """Materialize the homotopy table over the weak solution set.

    Refuses uncertified instances (strict quasi convexlikeness for the
    order; apex-shaped values additionally for the upper order) unless
    `force` is set, in which case the report carries a warning instead.
    """
    eps = resolve_eps(eps)
    if order not in ("l", "u"):
        raise ValueError(f"order must be 'l' or 'u', got {order!r}")
    steps = int(steps)
    if steps < 1:
        raise ValueError("steps must be a positive integer")

    warnings = []
    cert = certify(inst, "strict_quasi", order, eps)
    if not cert.passed:
        msg = f"instance is not strictly quasi convexlike for order {order!r} ({len(cert.failures())} failing pairs)"
        if not force:
            raise ValidationError(msg + "; pass force=True to trace anyway")
        warnings.append(msg)
    if order == "u" and not values_apex_shaped(inst, eps):
        msg = "values are not apex-shaped; upper-order homotopy theory does not apply"
        if not force:
            raise ValidationError(msg + "; pass force=True to trace anyway")
        warnings.append(msg)

    domain = GridDomain.from_instance(inst)
    members = tuple(weak_members_or_raise(inst, order, eps))
    member_set = set(members)
    G = inst.gap_matrix(order)
    lam_grid = tuple(k / steps for k in range(steps + 1))

    eta_rows, h_rows, gap_rows = [], [], []
    ties = 0
    membership_ok = True
    max_step = 0.0
    for x_id in members:
        etas, hs, gaps = [], [], []
        prev = None
        for lam in lam_grid:
            eta_id = star_segment_point(domain, x_id, lam, eps)
            col = G[:, inst.index(eta_id)]
            v, tie = _argmin_lex(inst, col, eps)
            h_id = inst.ids[v]
            ties += tie
            if h_id not in member_set:
                membership_ok = False
            if prev is not None:
                step = float(
                    np.linalg.norm(inst.X[inst.index(h_id)] - inst.X[inst.index(prev)])
                )
                max_step = max(max_step, step)
            prev = h_id
            etas.append(eta_id)
            hs.append(h_id)
            gaps.append(float(col[v]))
        eta_rows.append(tuple(etas))
        h_rows.append(tuple(hs))
        gap_rows.append(tuple(gaps))

    endpoint_identity = all(hs[-1] == x_id for x_id, hs in zip(members, h_rows))
    constant_base = len({hs[0] for hs in h_rows}) <= 1

    return ContractionReport(
        order=order,
        star_center=inst.star_center,
        spacing=domain.spacing,
        members=members,
        lambdas=lam_grid,
        eta_ids=tuple(eta_rows),
        h_ids=tuple(h_rows),
        gap_values=tuple(gap_rows),
        endpoint_identity=endpoint_identity,
        constant_base=constant_base,
        membership_ok=membership_ok,
        tie_events=ties,
        max_step=max_step,
        warning="; ".join(warnings) or None,
    )


def refinement_probe(inst: Instance, order: str, steps: int, force: bool = False, eps=None) -> dict:
    """Run the trace at n and 2n steps; the step size must not grow by more
    than one grid spacing under refinement."""
    rep_n = trace_homotopy(inst, order, steps, force, eps)
    rep_2n = trace_homotopy(inst, order, 2 * steps, force, eps)
    return {
        "steps": steps,
        "max_step_n": rep_n.max_step,
        "max_step_2n": rep_2n.max_step,
        "spacing": rep_n.spacing,
        "ok": rep_2n.max_step <= rep_n.max_step + rep_n.spacing + resolve_eps(eps),
    }
