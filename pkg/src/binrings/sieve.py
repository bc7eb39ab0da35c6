"""Coefficient-box sieve for ultra-weakly divisible forms.

Box layout, for degree n, scale parameters (s, t) and squarefree modulus m:

    a_0 in (s/2, s],  a_1 in [1, s/2),  gcd(a_0, a_1) = 1,
    a_i in [-s t^i, s t^i]   for 2 <= i <= n-2,
    a_(n-2) >= s * rho_B^(n-2) * m        (large-height guard),
    l in [0, m),
    a_(n-1) the unique value in (s t^(n-1) - m,  s t^(n-1)] with m  | f'(l,1),
    a_n     the unique value in (s t^n - m^2, s t^n]        with m^2 | f(l,1).

The length-m and length-m^2 windows are anchored at the top of the ambient
W(s:t) coefficient ranges, where the height profile favours Minkowski-reduced
polynomials (the low anchor would pin the trailing coefficients near zero and
produce no reduced candidates at all).

Every emitted (f, l) is weakly divisible by m at l by construction; each
(prefix, l) contributes exactly one form.  The pipeline per candidate is

    pre-sieve (no strong divisibility below M, none at p | m, and the
    ambient a_0 = a_1 = 0 locus excluded)                     -> presieved
    full UWD test against the factored discriminant          -> uwd
    normally-Minkowski-reduced test of the divided basis     -> reduced
    canonical-key dedupe                                      -> deduped

with candidates whose discriminant cannot be factored within budget routed
to an "unresolved" counter (never silently dropped), and the weighted
accumulator summing floor(SCALE / sqrt|disc(f)/m^2|) over deduped keys as
exact integers (SCALE = 10^30), which merges associatively across shards.

Reports are deterministic: identical configs give byte-identical CSV/JSONL
output, and a sharded run merged over any partition of the (a_0, a_1)
prefix space equals the monolithic run exactly.
"""

from __future__ import annotations

import json
import logging
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

log = logging.getLogger(__name__)

from .arith import FactorBudgetError, factorint, primes_below
from .forms import BinaryForm, discriminant, form_to_text, translate
from .modp import CODE_UNIQUE_AFFINE, profile_code
from .reduce import (
    DEFAULT_PRECISION,
    PrecisionError,
    canonical_representative,
    gram_profile,
    is_normally_minkowski_reduced,
)
from .weakdiv import WeakDivWitness, is_uwd, witness_valid

__all__ = [
    "SieveConfig",
    "SieveCounters",
    "MRecord",
    "SieveReport",
    "enumerate_box",
    "presieve",
    "run_sieve",
    "merge_reports",
    "weighted_count",
    "WEIGHT_SCALE",
    "CSV_HEADER",
]

WEIGHT_SCALE = 10**30

CSV_HEADER = "m,candidates,presieved,uwd,reduced,deduped,weighted_num,weighted_scale,X"


@dataclass(frozen=True)
class SieveConfig:
    n: int
    s: int
    t: int = 1
    m_list: tuple[int, ...] = (1,)
    M: int = 2
    rho_b: float = 0.0
    precision: int = DEFAULT_PRECISION
    budget: int = 10**7
    seed: int = 0
    out: str | None = None
    factor_budget_digits: int = 30

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("sieve needs degree >= 3")
        if self.s < 2 or self.t < 1 or self.M < 2:
            raise ValueError("need s >= 2, t >= 1, M >= 2")
        for m in self.m_list:
            fac = factorint(m)
            if any(e > 1 for e in fac.values()):
                raise ValueError(f"m = {m} is not squarefree")

    def X_value(self, m: int) -> Fraction:
        return Fraction(self.s ** (2 * self.n - 2) * self.t ** (self.n * (self.n - 1)), m * m)


def suggested_scale(n: int, m: int, X: int) -> float:
    """The recorded box-scale suggestion s = (m^2 X)^((n-4)/((n-1)(3n-8))).

    This balances the two counting constraints for n >= 5; it is recorded as
    a preset only and is flagged "may not be optimal" -- the configuration
    exposes s freely.
    """
    if n < 5:
        raise ValueError("the suggestion only makes sense for n >= 5")
    exponent = (n - 4) / ((n - 1) * (3 * n - 8))
    return float(m * m * X) ** exponent


@dataclass
class SieveCounters:
    candidates: int = 0
    gcd_filtered: int = 0
    presieved: int = 0
    uwd: int = 0
    reduced: int = 0
    deduped: int = 0
    unresolved: int = 0
    precision_failures: int = 0

    def add(self, other: "SieveCounters") -> None:
        self.candidates += other.candidates
        self.gcd_filtered += other.gcd_filtered
        self.presieved += other.presieved
        self.uwd += other.uwd
        self.reduced += other.reduced
        self.unresolved += other.unresolved
        self.precision_failures += other.precision_failures

    def monotone_ok(self) -> bool:
        return (
            self.candidates
            >= self.gcd_filtered
            >= self.presieved
            >= self.uwd
            >= self.reduced
            >= self.deduped
            >= 0
        )


@dataclass
class MRecord:
    """Per-modulus results: counters plus the deduped representative map."""

    m: int
    counters: SieveCounters = field(default_factory=SieveCounters)
    reps: dict[str, dict] = field(default_factory=dict)

    @property
    def weighted_num(self) -> int:
        return sum(r["weight"] for r in self.reps.values())

    def finalize(self) -> None:
        self.counters.deduped = len(self.reps)


@dataclass
class SieveReport:
    config: SieveConfig
    per_m: dict[int, MRecord]
    partial: bool = False
    runtime_seconds: float = 0.0

    def csv_rows(self) -> list[str]:
        rows = [CSV_HEADER]
        tot = SieveCounters()
        tot_w = 0
        for m in sorted(self.per_m):
            rec = self.per_m[m]
            rec.finalize()
            c = rec.counters
            x = self.config.X_value(m)
            xs = str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
            rows.append(
                f"{m},{c.candidates},{c.presieved},{c.uwd},{c.reduced},"
                f"{len(rec.reps)},{rec.weighted_num},{WEIGHT_SCALE},{xs}"
            )
            tot.add(c)
            tot.deduped += len(rec.reps)
            tot_w += rec.weighted_num
        rows.append(
            f"total,{tot.candidates},{tot.presieved},{tot.uwd},{tot.reduced},"
            f"{tot.deduped},{tot_w},{WEIGHT_SCALE},-"
        )
        return rows

    def detail_rows(self) -> list[str]:
        out = []
        for m in sorted(self.per_m):
            for key in sorted(self.per_m[m].reps):
                r = self.per_m[m].reps[key]
                out.append(
                    json.dumps(
                        {
                            "key": key,
                            "disc": r["disc"],
                            "m": m,
                            "l": r["l"],
                            "form": r["form"],
                        },
                        sort_keys=True,
                    )
                )
        return out


def _prefix_space(cfg: SieveConfig):
    """All (a_0, a_1) pairs of the box, gcd condition not yet applied."""
    a1_hi = (cfg.s + 1) // 2 - 1  # a_1 < s/2
    return [
        (a0, a1)
        for a0 in range(cfg.s // 2 + 1, cfg.s + 1)
        for a1 in range(1, a1_hi + 1)
    ]


def _middle_ranges(cfg: SieveConfig, m: int):
    """Ranges for a_2 .. a_(n-2), with the large-height guard on a_(n-2).

    rho_b = 0 disables the guard entirely (a literal reading would still
    clip a_(n-2) to be nonnegative)."""
    ranges = []
    for i in range(2, cfg.n - 1):
        lo, hi = -cfg.s * cfg.t**i, cfg.s * cfg.t**i
        if i == cfg.n - 2 and cfg.rho_b > 0:
            guard = math.ceil(cfg.s * cfg.rho_b ** (cfg.n - 2) * m)
            lo = max(lo, guard)
        ranges.append((lo, hi))
    return ranges


def _window_rep(residue: int, mod: int, hi: int) -> int:
    """The unique representative of residue mod `mod` in (hi - mod, hi]."""
    return hi - ((hi - residue) % mod)


def _guarded_pairs(cfg: SieveConfig, m: int):
    """Prefix pairs surviving the large-height guard (which sits on a_1
    when n = 3, there being no free middle coefficients)."""
    pairs = _prefix_space(cfg)
    if cfg.n == 3 and cfg.rho_b > 0:
        guard = math.ceil(cfg.s * cfg.rho_b ** (cfg.n - 2) * m)
        pairs = [(a0, a1) for a0, a1 in pairs if a1 >= guard]
        if not pairs:
            log.info(
                "m=%d box is empty: the large-height guard a_1 >= %d excludes "
                "every prefix",
                m,
                guard,
            )
    return pairs


def enumerate_box(cfg: SieveConfig, m: int):
    """Yield (form, l) for every point of the m-box; see module docstring."""
    for a0, a1 in _guarded_pairs(cfg, m):
        if math.gcd(a0, a1) != 1:
            continue
        yield from _enumerate_prefix(cfg, m, a0, a1)


def _enumerate_prefix(cfg: SieveConfig, m: int, a0: int, a1: int):
    n = cfg.n
    ranges = _middle_ranges(cfg, m)

    hi1 = cfg.s * cfg.t ** (n - 1)
    hi2 = cfg.s * cfg.t**n

    def rec(idx, mids):
        if idx == len(ranges):
            prefix = (a0, a1) + tuple(mids)
            for l in range(m):
                dcoef = sum(
                    (n - i) * prefix[i] * l ** (n - 1 - i) for i in range(n - 1)
                )
                an1 = _window_rep(-dcoef, m, hi1)
                vcoef = sum(prefix[i] * l ** (n - i) for i in range(n - 1))
                an = _window_rep(-(vcoef + an1 * l), m * m, hi2)
                f = BinaryForm(n, prefix + (an1, an))
                yield f, l
            return
        lo, hi = ranges[idx]
        for v in range(lo, hi + 1):
            yield from rec(idx + 1, mids + (v,))

    yield from rec(0, ())


def presieve(f: BinaryForm, l: int, m: int, M: int) -> bool:
    """True iff f avoids the ambient singular locus W_n at every p < M not
    dividing m (not strongly divisible, and not on a_0 = a_1 = 0), and at
    every p | m shows the unique affine double point compatible with l."""
    for p in primes_below(M):
        if m % p == 0:
            continue
        code, _root = profile_code(f.coeffs, f.n, p)
        if code >= 3:
            return False
        if f.coeffs[0] % p == 0 and f.coeffs[1] % p == 0:
            return False
    for p in sorted(factorint(m)) if m > 1 else []:
        code, root = profile_code(f.coeffs, f.n, p)
        if code != CODE_UNIQUE_AFFINE or root != l % p:
            return False
        if f.coeffs[0] % p == 0 and f.coeffs[1] % p == 0:
            return False
    return True


def _process_candidate(cfg: SieveConfig, m: int, rec: MRecord, f: BinaryForm, l: int):
    c = rec.counters
    if not presieve(f, l, m, cfg.M):
        return
    c.presieved += 1
    d = discriminant(f)
    if d == 0:
        return
    try:
        facs = factorint(d, cfg.factor_budget_digits)
    except FactorBudgetError:
        c.unresolved += 1
        return
    if not is_uwd(f, facs).is_uwd:
        return
    c.uwd += 1
    w = WeakDivWitness(m, l % m)
    assert witness_valid(f, m, w.l)
    h = translate(f, w.l)
    try:
        profile = gram_profile(h, m, cfg.precision)
    except PrecisionError:
        c.precision_failures += 1
        return
    if not is_normally_minkowski_reduced(profile):
        return
    c.reduced += 1
    key = canonical_representative(f, w, profile=profile, precision=cfg.precision)
    ks = str(key)
    disc_r = d // (m * m)
    entry = rec.reps.get(ks)
    if entry is None:
        rec.reps[ks] = {
            "disc": disc_r,
            "l": w.l,
            "form": form_to_text(BinaryForm(f.n, key.coeffs)),
            "weight": math.isqrt(WEIGHT_SCALE * WEIGHT_SCALE // abs(disc_r)),
        }
    elif w.l < entry["l"]:
        entry["l"] = w.l


def run_sieve(cfg: SieveConfig, prefix_filter=None) -> SieveReport:
    """Run the full pipeline over the configured box.

    prefix_filter, when given, restricts the (a_0, a_1) prefix space (used
    for sharding); counters and keys merge associatively across disjoint
    filters via merge_reports.
    """
    start = time.monotonic()
    report = SieveReport(cfg, {})
    spent = 0
    partial = False
    for m in cfg.m_list:
        rec = MRecord(m)
        report.per_m[m] = rec
        pairs = _guarded_pairs(cfg, m)
        if prefix_filter is not None:
            pairs = [pq for pq in pairs if prefix_filter(*pq)]
        ranges = _middle_ranges(cfg, m)
        inner = 1
        for lo, hi in ranges:
            inner *= max(0, hi - lo + 1)
        # the box size is a property of the configuration, counted before
        # the coprimality filter
        rec.counters.candidates = len(pairs) * inner * m
        order = [pq for pq in pairs if math.gcd(*pq) == 1]
        random.Random(cfg.seed).shuffle(order)
        for a0, a1 in order:
            for f, l in _enumerate_prefix(cfg, m, a0, a1):
                rec.counters.gcd_filtered += 1
                spent += 1
                if spent > cfg.budget:
                    partial = True
                    break
                _process_candidate(cfg, m, rec, f, l)
            if partial:
                break
        rec.finalize()
        if partial:
            break
    report.partial = partial
    report.runtime_seconds = time.monotonic() - start
    return report


def merge_reports(reports: list[SieveReport]) -> SieveReport:
    """Exact associative merge of shard reports (disjoint prefix spaces)."""
    if not reports:
        raise ValueError("nothing to merge")
    cfg = reports[0].config
    if any(rep.config != cfg for rep in reports[1:]):
        raise ValueError("shard reports come from different configurations")
    out = SieveReport(cfg, {})
    for rep in reports:
        for m, rec in rep.per_m.items():
            dst = out.per_m.setdefault(m, MRecord(m))
            dst.counters.add(rec.counters)
            for key, entry in rec.reps.items():
                cur = dst.reps.get(key)
                if cur is None:
                    dst.reps[key] = dict(entry)
                elif entry["l"] < cur["l"]:
                    cur["l"] = entry["l"]
        out.partial = out.partial or rep.partial
    for rec in out.per_m.values():
        rec.finalize()
    return out


def weighted_count(reports: list[SieveReport]):
    """Aggregate weighted sum over deduped representatives: an exact-integer
    accumulation of floor(SCALE/sqrt|disc|), reported with the ring count
    and the largest discriminant seen.

    Reports from different boxes combine soundly: representatives merge by
    canonical key per modulus, so disjoint boxes add exactly and overlapping
    ones never double-count a ring."""
    seen: dict[tuple[int, str], dict] = {}
    for rep in reports:
        for m, rec in rep.per_m.items():
            for key, entry in rec.reps.items():
                seen.setdefault((m, key), entry)
    num = 0
    count = 0
    max_disc = 0
    for entry in seen.values():
        num += entry["weight"]
        count += 1
        max_disc = max(max_disc, abs(entry["disc"]))
    whole, frac = divmod(num, WEIGHT_SCALE)
    decimal = f"{whole}.{frac:030d}"
    return {
        "weighted_sum": decimal,
        "weighted_num": num,
        "weighted_scale": WEIGHT_SCALE,
        "rings": count,
        "max_disc": max_disc,
    }
