"""Descriptive statistics and signed-rank tests on giving data.

Works on any sequence of :class:`~trendfair.simlab.GivingRecord`, typically
loaded from the canonical CSV.
"""

from __future__ import annotations

import csv
import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .experiment import JOINT_ACCOUNT, Role, Treatment
from .simlab import CSV_COLUMNS, GivingRecord


class SchemaError(ValueError):
    """Input file does not match the canonical giving-record schema."""


@dataclass(frozen=True)
class SocialFilter:
    cutoff: float = 2.0

    def __post_init__(self):
        # cutoffs above the pot are legal and simply keep nobody
        if not (math.isfinite(self.cutoff) and self.cutoff >= 0):
            raise ValueError(f"cutoff must be >= 0, got {self.cutoff!r}")


@dataclass(frozen=True)
class SummaryCell:
    treatment: Treatment | None
    role: Role | None
    mean: float
    sd: float
    n: int


@dataclass(frozen=True)
class WilcoxonResult:
    n_effective: int
    w_plus: float
    p_value: float
    method: str
    alternative: str = "two-sided"

    @property
    def p_two_sided(self) -> float:
        if self.alternative != "two-sided":
            raise ValueError(f"result is one-sided ({self.alternative})")
        return self.p_value


# --- loading -----------------------------------------------------------------

def _parse_int(value, column, line):
    try:
        return int(value)
    except ValueError:
        raise SchemaError(f"line {line}: column {column!r}: not an integer: {value!r}") from None


def _parse_money(value, column, line):
    try:
        x = float(value)
    except ValueError:
        raise SchemaError(f"line {line}: column {column!r}: not a number: {value!r}") from None
    if not math.isfinite(x):
        raise SchemaError(f"line {line}: column {column!r}: not finite: {value!r}")
    return x


def _parse_row(row, line):
    try:
        role = Role(row["role"])
    except ValueError:
        raise SchemaError(f"line {line}: unknown role {row['role']!r}") from None
    try:
        treatment = Treatment(row["treatment"])
    except ValueError:
        raise SchemaError(f"line {line}: unknown treatment {row['treatment']!r}") from None
    giving = _parse_money(row["giving"], "giving", line)
    if not 0 <= giving <= JOINT_ACCOUNT:
        raise SchemaError(f"line {line}: giving {giving} outside [0, {JOINT_ACCOUNT:g}]")
    period = _parse_int(row["period_index"], "period_index", line)
    if not 1 <= period <= len(Treatment):
        raise SchemaError(f"line {line}: period_index {period} outside 1..{len(Treatment)}")
    if row["implemented"] not in ("0", "1"):
        raise SchemaError(f"line {line}: implemented must be 0 or 1, got {row['implemented']!r}")
    return GivingRecord(
        session_id=_parse_int(row["session_id"], "session_id", line),
        subject_id=_parse_int(row["subject_id"], "subject_id", line),
        pair_id=_parse_int(row["pair_id"], "pair_id", line),
        role=role,
        period_index=period,
        treatment=treatment,
        wage1=_parse_money(row["wage1"], "wage1", line),
        wage2=_parse_money(row["wage2"], "wage2", line),
        giving=giving,
        implemented=row["implemented"] == "1",
    )


def load_csv(path) -> list[GivingRecord]:
    """Read and validate a canonical giving CSV.

    Raises :class:`SchemaError` naming the offending line or column.
    """
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in CSV_COLUMNS if c not in header]
        if missing:
            raise SchemaError(f"{path}: missing column(s): {', '.join(missing)}")
        extra = [c for c in header if c not in CSV_COLUMNS]
        if extra:
            raise SchemaError(f"{path}: unexpected column(s): {', '.join(extra)}")
        records = []
        for row in reader:
            if None in row or any(v is None for v in row.values()):
                raise SchemaError(f"line {reader.line_num}: wrong number of fields")
            records.append(_parse_row(row, reader.line_num))
    return records


# --- subsetting ----------------------------------------------------------------

def subject_key(r: GivingRecord):
    return (r.session_id, r.subject_id)


def filter_social(records, social_filter: SocialFilter):
    """Keep all records of subjects giving at least the cutoff in Stable."""
    stable = {}
    for r in records:
        if r.treatment is Treatment.STABLE:
            key = subject_key(r)
            if key in stable:
                raise ValueError(f"subject {key} has more than one Stable record")
            stable[key] = r.giving
    for r in records:
        if subject_key(r) not in stable:
            raise ValueError(f"subject {subject_key(r)} has no Stable record")
    # giving lives on a 0.10 grid; tolerance keeps 2.0 >= 2 robust to parsing
    keep = {k for k, g in stable.items() if g >= social_filter.cutoff - 1e-9}
    return [r for r in records if subject_key(r) in keep]


def implemented_only(records):
    return [r for r in records if r.implemented]


# --- descriptives ----------------------------------------------------------------

def _cell(values, treatment=None, role=None):
    x = np.asarray(values, dtype=float)
    sd = float(np.std(x, ddof=1)) if len(x) > 1 else math.nan
    return SummaryCell(treatment, role, float(x.mean()), sd, len(x))


def summary_by_treatment(records):
    """Mean, sd (n-1 denominator) and n per treatment x role cell.

    Returns ``(cells, overall)``; cells follow treatment then role order and
    omit empty combinations.
    """
    if not records:
        raise ValueError("empty dataset")
    groups = defaultdict(list)
    for r in records:
        groups[r.treatment, r.role].append(r.giving)
    cells = [
        _cell(groups[t, role], t, role)
        for t in Treatment
        for role in Role
        if groups[t, role]
    ]
    return cells, _cell([r.giving for r in records])


def censoring_rate(records) -> float:
    if not records:
        raise ValueError("empty dataset")
    return sum(r.giving == 0 for r in records) / len(records)


def cdf_points(records, treatment, role):
    """Support points ``(giving, F(giving))`` of the right-continuous ECDF."""
    treatment, role = Treatment(treatment), Role(role)
    x = np.sort([r.giving for r in records if r.treatment is treatment and r.role is role])
    if len(x) == 0:
        raise ValueError(f"no records for {treatment} / {role}")
    values, counts = np.unique(x, return_counts=True)
    cum = np.cumsum(counts) / len(x)
    return [(float(v), float(c)) for v, c in zip(values, cum)]


# --- Wilcoxon signed-rank -------------------------------------------------------

EXACT_MAX_N = 25


def _exact_null_counts(doubled_ranks):
    """Counts of each value of 2*W+ over all 2**n sign assignments."""
    total = int(sum(doubled_ranks))
    counts = np.zeros(total + 1, dtype=object)
    counts[0] = 1
    for r in doubled_ranks:
        counts[r:] = counts[r:] + counts[: total + 1 - r].copy()
    return counts


def _normal_sf(z):
    return 0.5 * math.erfc(z / math.sqrt(2))


def wilcoxon_signed_rank(x, y, *, alternative="two-sided", method="auto", correction=True):
    """Paired Wilcoxon signed-rank test on ``x - y``.

    Zero differences are dropped and tied magnitudes share average ranks.
    ``method="auto"`` enumerates the exact null distribution (conditional on
    the observed ranks) when at most 25 differences remain, and otherwise
    uses the normal approximation with tie-corrected variance and, if
    ``correction``, a continuity correction.  ``alternative="greater"`` tests
    whether ``x`` tends to exceed ``y``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or len(x) == 0:
        raise ValueError("x and y must be 1-d samples of equal nonzero length")
    if alternative not in ("two-sided", "greater", "less"):
        raise ValueError(f"unknown alternative {alternative!r}")
    if method not in ("auto", "exact", "approx"):
        raise ValueError(f"unknown method {method!r}")

    d = x - y
    d = d[d != 0]
    n = len(d)
    if n == 0:
        return WilcoxonResult(0, 0.0, 1.0, "exact", alternative)

    ranks = rankdata(np.abs(d))
    w_plus = float(ranks[d > 0].sum())
    if method == "auto":
        method = "exact" if n <= EXACT_MAX_N else "approx"

    if method == "exact":
        doubled = [int(round(2 * r)) for r in ranks]
        counts = _exact_null_counts(doubled)
        total = 2**n
        w2 = int(round(2 * w_plus))
        p_le = float(sum(counts[: w2 + 1]) / total)
        p_ge = float(sum(counts[w2:]) / total)
        label = "exact"
    else:
        mean = ranks.sum() / 2
        sd = math.sqrt((ranks**2).sum() / 4)
        cc = 0.5 if correction else 0.0
        p_ge = _normal_sf((w_plus - mean - cc) / sd)
        p_le = 1 - _normal_sf((w_plus - mean + cc) / sd)
        label = "normal-approx"

    if alternative == "greater":
        p = p_ge
    elif alternative == "less":
        p = p_le
    else:
        p = 2 * min(p_le, p_ge)
    return WilcoxonResult(n, w_plus, min(1.0, p), label, alternative)


# --- nonparametric table --------------------------------------------------------

_T = Treatment
# other decrease / other no-decrease, by role
OTHER_DECREASE = {Role.HIGH: _T.CATCHING_UP, Role.LOW: _T.INTRA_INTER_CHANGE}
OTHER_NO_DECREASE = {Role.HIGH: _T.INTRA_INTER_CHANGE, Role.LOW: _T.CATCHING_UP}


@dataclass(frozen=True)
class WilcoxonCell:
    group: str
    decrease: str
    comparison: str
    n: int
    result: WilcoxonResult


def wilcoxon_pairings():
    """Rows of the signed-rank table: ``(group, roles, decrease, comparison)``.

    ``decrease`` and ``comparison`` map each role to a treatment, so pooled
    rows can pair role-specific treatments.
    """
    same = lambda t: {Role.HIGH: t, Role.LOW: t}  # noqa: E731
    both = (Role.HIGH, Role.LOW)
    comparisons = [
        ("stable", same(_T.STABLE)),
        ("intra-increase", same(_T.INTRA_INCREASE)),
        ("other-no-decrease", OTHER_NO_DECREASE),
    ]
    rows = []
    for label, cmp in comparisons:
        rows.append(("all", both, ("intra-decrease", same(_T.INTRA_DECREASE)), (label, cmp)))
        rows.append(("all", both, ("other-decrease", OTHER_DECREASE), (label, cmp)))
    for role in both:
        other = OTHER_DECREASE[role]
        for label, cmp in comparisons:
            rows.append((role.value, (role,), (_T.INTRA_DECREASE.value, same(_T.INTRA_DECREASE)),
                         (cmp[role].value, cmp)))
            rows.append((role.value, (role,), (other.value, same(other)), (cmp[role].value, cmp)))
        rows.append((role.value, (role,), (other.value, same(other)),
                     (_T.INTRA_DECREASE.value, same(_T.INTRA_DECREASE))))
    return rows


def _by_subject(records):
    table = defaultdict(dict)
    roles = {}
    for r in records:
        table[subject_key(r)][r.treatment] = r.giving
        roles[subject_key(r)] = r.role
    return table, roles


def wilcoxon_table(records, **kwargs):
    """Signed-rank tests of each decreasing treatment against the others.

    Each subject contributes one paired difference per row.  Subjects
    lacking either treatment are skipped.
    """
    table, roles = _by_subject(records)
    cells = []
    for group, group_roles, (dec_label, dec), (cmp_label, cmp) in wilcoxon_pairings():
        x, y = [], []
        for key in sorted(table):
            role = roles[key]
            if role not in group_roles:
                continue
            g = table[key]
            if dec[role] in g and cmp[role] in g:
                x.append(g[dec[role]])
                y.append(g[cmp[role]])
        if not x:
            continue
        cells.append(WilcoxonCell(group, dec_label, cmp_label, len(x),
                                  wilcoxon_signed_rank(x, y, **kwargs)))
    return cells
