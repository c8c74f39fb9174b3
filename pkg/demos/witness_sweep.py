"""Sweep every witness family and print a markdown table of measured sizes
next to the predicted ones.

    python3 demos/witness_sweep.py
"""

from semisplice.lab import emit_report, run_family
from semisplice.witnesses import FamilyId

SWEEPS = [
    (FamilyId.W23_REGULAR, range(4, 10), 0),
    (FamilyId.W23_SEMI_FINITE, range(5, 10), 0),
    (FamilyId.W24_FINITE, range(5, 9), 0),
    (FamilyId.W14_REGULAR, range(3, 7), 0),
    (FamilyId.W14_REGULAR, range(3, 7), 1),
    (FamilyId.W14_SEMI_FINITE, range(5, 8), 0),
    (FamilyId.W23_SIMPLE_FINITE, range(7, 11), 0),
]

rows = []
for family, ns, extra in SWEEPS:
    rows += run_family(family, ns, extra)

print(emit_report(rows, "markdown"))
bad = [r for r in rows if r.hard_failure]
print(f"{len(rows)} rows, {len(bad)} hard failures")
for r in bad:
    print(f"  {r.family} n={r.n}: measured {r.minimal}, predicted {r.predicted}")
