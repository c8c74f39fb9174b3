"""Experiment harness: bound formulas, witness sweeps, oracle cross-checks
and report output."""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import asdict, dataclass, field

from .automata import Dfa, ResourceLimitExceeded, minimize
from .constructions import build, construct
from .splicing import Marker, SplicingSystem, Variant, WordSet, closure_bounded
from .witnesses import FamilyId, m1_size, witness

REGULAR, FINITE = "regular", "finite"
SEMI, SIMPLE = "semi", "simple"


def _pow2(e: int) -> int:
    return 1 << e


# Closed forms with the smallest n at which each is meaningful. Entries with
# several tags are statements that disagree with each other.
_FORMULAS = {
    (Variant.V24, REGULAR): (1, {"theorem": lambda n, m: _pow2(n) - 1}),
    (Variant.V13, REGULAR): (1, {"theorem": lambda n, m: _pow2(n) - 1}),
    (Variant.V24, FINITE): (2, {"theorem": lambda n, m: _pow2(n - 2) + 1}),
    (Variant.V13, FINITE): (2, {"theorem": lambda n, m: _pow2(n - 2) + 1}),
    (Variant.V23, REGULAR): (1, {"theorem": lambda n, m: _pow2(n - 1)}),
    (Variant.V23, FINITE): (3, {"theorem": lambda n, m: _pow2(n - 3) + 2}),
    (Variant.V14, REGULAR): (2, {
        "theorem": lambda n, m: (_pow2(n) - 2) * (m + 1) + 1,
        "table": lambda n, m: (_pow2(n - 2) - 2) * (m + 1) + 1,
    }),
    (Variant.V14, FINITE): (3, {
        "statement": lambda n, m: _pow2(n - 2) + m * _pow2(n - 3) + 1,
        "enumeration": lambda n, m: _pow2(n - 2) + m * (_pow2(n - 3) + 1) + 1,
        "table": lambda n, m: _pow2(n - 2) + m * _pow2(n - 3),
    }),
}
_SIMPLE_FINITE_23 = (5, {
    "statement": lambda n, m: _pow2(n - 4) + _pow2(n - 5) + 2,
    "proof": lambda n, m: _pow2(n - 3) + _pow2(n - 4) + 2,
})


def bound_min_n(variant, language_class: str, rule_class: str = SEMI) -> int:
    return _lookup(Variant.parse(variant), language_class, rule_class)[0]


def _lookup(variant: Variant, language_class: str, rule_class: str):
    if language_class not in (REGULAR, FINITE) or rule_class not in (SEMI, SIMPLE):
        raise ValueError(f"unknown class {language_class}/{rule_class}")
    if variant is Variant.V23 and language_class == FINITE and rule_class == SIMPLE:
        return _SIMPLE_FINITE_23
    return _FORMULAS[variant, language_class]


def bound(variant, language_class: str, rule_class: str, n: int, m1: int = 1):
    """Upper bound on the state complexity of the generated language.

    Returns an int, or a dict of candidate values keyed by candidate name
    when the published statements disagree.
    """
    variant = Variant.parse(variant)
    min_n, forms = _lookup(variant, language_class, rule_class)
    if n < min_n:
        raise ValueError(f"bound for {variant}/{language_class}/{rule_class} needs n >= {min_n}")
    if m1 < 0:
        raise ValueError("m1 must be nonnegative")
    values = {tag: f(n, m1) for tag, f in forms.items()}
    if len(values) == 1:
        return next(iter(values.values()))
    return values


def envelope(variant, language_class, rule_class, n, m1=1) -> int:
    """Largest candidate: the value asserted as a hard upper bound."""
    b = bound(variant, language_class, rule_class, n, m1)
    return max(b.values()) if isinstance(b, dict) else b


def applicable_bounds(system: SplicingSystem, n: int) -> dict[str, int]:
    """Every upper bound whose hypotheses ``system`` satisfies, keyed by class."""
    out = {}
    m1 = len(system.m1)
    classes = [(REGULAR, SEMI)]
    if system.finite_initial:
        classes.append((FINITE, SEMI))
        if system.is_simple:
            classes.append((FINITE, SIMPLE))
    for lc, rc in classes:
        if n >= bound_min_n(system.variant, lc, rc):
            out[f"{lc}-{rc}"] = envelope(system.variant, lc, rc, n, m1)
    return out


# ---------------------------------------------------------------------------
# witness sweeps

_FAMILY_CLASS = {
    FamilyId.W24_FINITE: (FINITE, SEMI),
    FamilyId.W23_REGULAR: (REGULAR, SIMPLE),
    FamilyId.W23_SEMI_FINITE: (FINITE, SEMI),
    FamilyId.W23_SIMPLE_FINITE: (FINITE, SIMPLE),
    FamilyId.W14_REGULAR: (REGULAR, SIMPLE),
    FamilyId.W14_SEMI_FINITE: (FINITE, SEMI),
}

HARD_VERDICTS = ("mismatch", "exceeds-bound", "conflict-unresolved", "construction-missing-words")


@dataclass
class ExperimentRow:
    family: str
    n: int
    params: str
    raw: int | None
    minimal: int | None
    predicted: dict
    verdict: str
    matched: tuple = field(default=())

    @property
    def hard_failure(self) -> bool:
        return self.verdict in HARD_VERDICTS


def _predicted(family: FamilyId, n: int, extra: int) -> dict:
    lc, rc = _FAMILY_CLASS[family]
    b = bound(family.variant, lc, rc, n, m1_size(family, extra))
    return b if isinstance(b, dict) else {"theorem": b}


def measure(system: SplicingSystem) -> tuple[int, int]:
    raw = build(system)
    return raw.n, minimize(raw).n


def run_family(family, n_range, extra: int = 0) -> list[ExperimentRow]:
    """Build every member in ``n_range`` and compare with the predicted value.
    Conflicted families are adjudicated across the whole sweep."""
    family = FamilyId.parse(family)
    rows = []
    for n in n_range:
        predicted = _predicted(family, n, extra)
        params = f"extra={extra}" if extra else ""
        try:
            raw, minimal = measure(witness(family, n, extra))
        except ResourceLimitExceeded:
            rows.append(ExperimentRow(family.value, n, params, None, None, predicted,
                                      "resource-abort"))
            continue
        matched = tuple(t for t, v in predicted.items() if v == minimal)
        if minimal > max(predicted.values()):
            verdict = "exceeds-bound"
        elif len(predicted) == 1:
            verdict = "match" if matched else "mismatch"
        else:
            verdict = "pending"
        rows.append(ExperimentRow(family.value, n, params, raw, minimal, predicted,
                                  verdict, matched))
    return adjudicate(rows)


def adjudicate(rows: list[ExperimentRow]) -> list[ExperimentRow]:
    """Resolve conflicted predictions: a candidate wins when it matches every
    measured row of the sweep."""
    pending = [r for r in rows if r.verdict == "pending"]
    if not pending:
        return rows
    tags = set(pending[0].predicted)
    for r in pending:
        tags &= set(r.matched)
    for r in pending:
        if len(tags) == 1:
            r.verdict = f"conflict-resolved-to-{next(iter(tags))}"
        elif len(tags) > 1:
            r.verdict = "conflict-resolved-to-" + "+".join(sorted(tags))
        else:
            r.verdict = "conflict-unresolved"
    return rows


# ---------------------------------------------------------------------------
# oracle comparison

@dataclass
class CrossValidation:
    verdict: str  # equal | oracle-missing-words | construction-missing-words | inconclusive
    construction_count: int = 0
    oracle_count: int = 0
    construction_only: list = field(default_factory=list)
    oracle_only: list = field(default_factory=list)
    note: str = ""

    @property
    def hard_failure(self) -> bool:
        return self.verdict == "construction-missing-words"


def cross_validate(system: SplicingSystem, out_len: int = 8, intermediate_len: int | None = None,
                   dfa: Dfa | None = None, max_words: int | None = None,
                   examples: int = 5) -> CrossValidation:
    """Compare the constructed DFA (or ``dfa`` if given) with the bounded
    closure oracle on words up to ``out_len``."""
    if intermediate_len is None:
        intermediate_len = out_len + 4
    try:
        if dfa is None:
            dfa = construct(system)
        built = WordSet.from_dfa(dfa, out_len)
        oracle = closure_bounded(system, out_len, intermediate_len, max_words)
    except ResourceLimitExceeded as exc:
        return CrossValidation("inconclusive", note=str(exc))
    oracle_only = oracle.difference(built)
    construction_only = built.difference(oracle)
    if oracle_only:
        verdict = "construction-missing-words"
    elif construction_only:
        verdict = "oracle-missing-words"
    else:
        verdict = "equal"
    return CrossValidation(verdict, len(built), len(oracle),
                           construction_only[:examples], oracle_only[:examples])


# ---------------------------------------------------------------------------
# random systems

LETTERS = "abcdefgh"


def random_dfa(rng: random.Random, n: int, k: int, finite: bool = False) -> Dfa:
    """Random complete DFA with ``n`` states (before minimization). Finite
    DFAs move strictly forward and use state ``n-1`` as sink."""
    alphabet = tuple(LETTERS[:k])
    if finite:
        n = max(n, 2)
        sink = n - 1
        table = []
        for q in range(n - 1):
            table.append([rng.choice(range(q + 1, n)) if rng.random() < 0.7 else sink
                          for _ in range(k)])
        table.append([sink] * k)
        finals = {q for q in range(n - 1) if rng.random() < 0.4}
    else:
        table = [[rng.randrange(n) for _ in range(k)] for _ in range(n)]
        finals = {q for q in range(n) if rng.random() < 0.4}
    if not finals:
        finals = {rng.randrange(n - 1 if finite else n)}
    return Dfa(alphabet, table, 0, finals)


def random_system(rng: random.Random, variant, max_n: int = 6, max_k: int = 4,
                  finite: bool | None = None, simple: bool | None = None) -> SplicingSystem:
    """Random system whose initial DFA is minimal, so its size is the state
    complexity ``n`` of the initial language."""
    variant = Variant.parse(variant)
    if finite is None:
        finite = rng.random() < 0.5
    if simple is None:
        simple = rng.random() < 0.3
    k = rng.randint(1, max_k)
    n = rng.randint(2 if finite else 1, max_n)
    dfa = minimize(random_dfa(rng, n, k, finite))
    alphabet = dfa.alphabet
    if simple:
        pairs = [(a, a) for a in alphabet]
    else:
        pairs = [(a, b) for a in alphabet for b in alphabet]
    p = rng.choice((0.15, 0.35, 0.6))
    markers = [Marker(a, b) for a, b in pairs if rng.random() < p]
    return SplicingSystem(variant, dfa, markers)


def envelope_check(system: SplicingSystem) -> tuple[int, int, dict, bool]:
    """(n, minimal size, applicable bounds, ok)."""
    n = minimize(system.initial).n
    size = construct(system).n
    bounds = applicable_bounds(system, n)
    return n, size, bounds, all(size <= b for b in bounds.values())


def explore_14_simple_finite(rng: random.Random, n: int, k: int, samples: int) -> dict:
    """Random search for large (1,4)-simple systems with finite initial
    language, for which no tight bound is known. Purely exploratory."""
    best = None
    for _ in range(samples):
        dfa = minimize(random_dfa(rng, n, k, finite=True))
        if dfa.n != n:
            continue
        markers = [Marker(a, a) for a in dfa.alphabet if rng.random() < 0.5]
        sysm = SplicingSystem(Variant.V14, dfa, markers)
        size = construct(sysm).n
        if best is None or size > best[0]:
            best = (size, sysm)
    result = {"n": n, "k": k, "samples": samples, "best_minimal": None}
    if best is not None:
        result["best_minimal"] = best[0]
        result["best_markers"] = [str(m) for m in best[1].markers]
        result["semi_finite_envelope"] = envelope(Variant.V14, FINITE, SEMI, n,
                                                  len(best[1].m1)) if n >= 3 else None
    return result


# ---------------------------------------------------------------------------
# reports

_COLUMNS = ("family", "n", "params", "raw", "minimal", "predicted", "verdict")
_VARIANT_ORDER = {"24": 0, "23": 1, "14": 2, "13": 3}


def _predicted_str(p: dict) -> str:
    if set(p) == {"theorem"}:
        return str(p["theorem"])
    return ";".join(f"{k}={p[k]}" for k in sorted(p))


def _sorted(rows):
    return sorted(rows, key=lambda r: (r.family, r.n, r.params))


def emit_report(rows, fmt: str = "csv") -> str:
    rows = _sorted(rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(_COLUMNS)
        for r in rows:
            w.writerow([r.family, r.n, r.params, "" if r.raw is None else r.raw,
                        "" if r.minimal is None else r.minimal,
                        _predicted_str(r.predicted), r.verdict])
        return buf.getvalue()
    if fmt == "json":
        data = []
        for r in rows:
            d = asdict(r)
            d["matched"] = list(r.matched)
            data.append(d)
        return json.dumps(data, indent=1, sort_keys=True) + "\n"
    if fmt in ("markdown", "md"):
        head = "| variant | axiom set | rules | family | n | params | raw | minimal | predicted | verdict |"
        lines = [head, "|" + "---|" * 10]
        def key(r):
            fam = FamilyId.parse(r.family)
            lc, rc = _FAMILY_CLASS[fam]
            return (_VARIANT_ORDER[fam.variant.value], rc, lc != REGULAR, r.family, r.n, r.params)
        for r in sorted(rows, key=key):
            fam = FamilyId.parse(r.family)
            lc, rc = _FAMILY_CLASS[fam]
            lines.append(f"| ({fam.variant.value[0]},{fam.variant.value[1]}) | {lc} | {rc} | "
                         f"{r.family} | {r.n} | {r.params} | "
                         f"{'' if r.raw is None else r.raw} | "
                         f"{'' if r.minimal is None else r.minimal} | "
                         f"{_predicted_str(r.predicted)} | {r.verdict} |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def parse_range(text: str) -> range:
    """``"4..9"`` or ``"6"`` to an inclusive range."""
    text = str(text).strip()
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            v = int(lo)
            return range(v, v + 1)
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise ValueError(f"bad range {text!r}; expected N or LO..HI") from None
    if hi_i < lo_i:
        raise ValueError(f"empty range {text!r}")
    return range(lo_i, hi_i + 1)
