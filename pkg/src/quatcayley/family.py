"""Family enumeration, verification grids and the c(d) table."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .basis import build_basis, select_generators
from .graph import GraphReport, build, verify_report
from .primes import family_params, is_prime_power, primes_upto
from .projective import GraphSpec, admissible_q, image_generators, legendre

log = logging.getLogger(__name__)

__all__ = [
    "CTableRow",
    "bracket_bound",
    "c_table",
    "FamilyQuery",
    "list_family",
    "GridResult",
    "run_grid",
]

# (d_min, d_max or None, bound) per parity; the even list also carries single values
ODD_BRACKETS = [(1335, None, 1.33), (35, 1331, 1.3), (15, 31, 1.27)]
EVEN_BRACKETS = [
    (4826, None, 1.33),
    (184, 4824, 1.3),
    (44, 182, 1.25),
    (22, 42, 1.1),
    (10, 10, 1.28),
    (12, 12, 1.12),
    (14, 14, 1.19),
    (18, 18, 1.3),
    (20, 20, 1.061),
]

# comparisons of c(d) against the tabulated bounds
C_TOL = 1e-9


def bracket_bound(d: int) -> float | None:
    """The tabulated lower bound on c(d) that covers ``d``, if any."""
    for lo, hi, bound in ODD_BRACKETS if d % 2 else EVEN_BRACKETS:
        if d >= lo and (hi is None or d <= hi):
            return bound
    return None


@dataclass(frozen=True)
class CTableRow:
    d: int
    p: int
    kappa: float
    c_d: float
    paper_bracket_bound: float | None
    meets_bracket: bool | None
    prime_power: bool

    def as_record(self) -> dict:
        return {
            "d": self.d,
            "p": self.p,
            "kappa": self.kappa,
            "c_d": self.c_d,
            "paper_bracket_bound": self.paper_bracket_bound,
            "meets_bracket": self.meets_bracket,
            "prime_power": self.prime_power,
        }


def c_table(d_min: int, d_max: int, include_prime_powers: bool = False) -> list[CTableRow]:
    if not 10 <= d_min <= d_max:
        raise ValueError("need 10 <= d_min <= d_max")
    rows = []
    for d in range(d_min, d_max + 1):
        pp = is_prime_power(d)
        if pp and not include_prime_powers:
            continue
        fp = family_params(d)
        bound = None if pp else bracket_bound(d)
        rows.append(
            CTableRow(
                d=d,
                p=fp.p,
                kappa=fp.kappa,
                c_d=fp.c_d,
                paper_bracket_bound=bound,
                meets_bracket=None if bound is None else fp.c_d >= bound - C_TOL,
                prime_power=pp,
            )
        )
    return rows


@dataclass(frozen=True)
class FamilyQuery:
    """Graphs G_{d,p,q} for primes ``q`` in ``[q_min, q_max]`` on one branch.

    Branch ``x`` keeps ``(p/q) = -1`` (bipartite, PGL_2), branch ``y`` keeps
    ``(p/q) = 1`` (PSL_2).  ``p`` defaults to the family prime of ``d``.
    """

    d: int
    q_min: int
    q_max: int
    branch: str
    enforce_regime: bool = False
    p: int | None = None

    def __post_init__(self):
        if self.branch not in ("x", "y"):
            raise ValueError(f"branch must be 'x' or 'y', got {self.branch!r}")
        if self.q_min < 3:
            raise ValueError("q_min must be >= 3")

    @property
    def prime(self) -> int:
        return family_params(self.d).p if self.p is None else self.p

    @property
    def legendre_sign(self) -> int:
        return -1 if self.branch == "x" else 1


def list_family(fq: FamilyQuery) -> list[GraphSpec]:
    p = fq.prime
    gens = select_generators(fq.d, build_basis(p))
    # the regime threshold is at least p^8, so nothing below it can qualify
    if fq.enforce_regime and fq.q_max <= p**8:
        return []
    specs = []
    for q in primes_upto(fq.q_max):
        q = int(q)
        if q < fq.q_min or not admissible_q(p, q):
            continue
        if legendre(p, q) != fq.legendre_sign:
            continue
        spec = image_generators(gens, q)
        if fq.enforce_regime and not spec.theoretical_regime:
            continue
        specs.append(spec)
    return specs


@dataclass
class GridResult:
    reports: list[GraphReport] = field(default_factory=list)
    failures: list[tuple[int, int, int, str]] = field(default_factory=list)

    @property
    def violations(self) -> list[tuple[int, int, int, list[str]]]:
        return [(r.d, r.p, r.q, r.violations()) for r in self.reports if r.violations()]

    @property
    def ok(self) -> bool:
        return not self.failures and not self.violations


def _verify_one(args) -> GraphReport:
    d, p, q, memory_gib = args
    spec = image_generators(select_generators(d, build_basis(p)), q)
    return verify_report(build(spec, memory_gib=memory_gib))


def run_grid(fq: FamilyQuery, jobs: int = 1, memory_gib: float | None = None) -> GridResult:
    """Build and verify every graph of the family; failures are collected, not raised."""
    specs = list_family(fq)
    tasks = [(s.d, s.p, s.q, memory_gib) for s in specs]
    result = GridResult()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_verify_one, t) for t in tasks]
            outcomes = []
            for t, fut in zip(tasks, futures):
                try:
                    outcomes.append((t, fut.result(), None))
                except Exception as exc:  # noqa: BLE001 - per-instance failure is recorded
                    outcomes.append((t, None, exc))
    else:
        outcomes = []
        for t in tasks:
            try:
                outcomes.append((t, _verify_one(t), None))
            except Exception as exc:  # noqa: BLE001
                outcomes.append((t, None, exc))
    for (d, p, q, _), report, exc in sorted(outcomes, key=lambda o: o[0][:3]):
        if exc is not None:
            log.warning("G(%d,%d,%d) failed: %s", d, p, q, exc)
            result.failures.append((d, p, q, f"{type(exc).__name__}: {exc}"))
        else:
            log.info("G(%d,%d,%d): girth %d, n %d", d, p, q, report.girth, report.n)
            result.reports.append(report)
    return result


def girth_lower_bound_words(p: int, q: int, legendre_pq: int) -> int:
    """Smallest girth compatible with the norm argument, rounded up (and to even when bipartite)."""
    if legendre_pq == -1:
        bound = 4 * math.log(q) / math.log(p) - math.log(4) / math.log(p)
        g = math.ceil(bound - 1e-12)
        return g + (g % 2)
    return math.ceil(2 * math.log(q) / math.log(p) - 1e-12)
