"""Show how the lab settles a size formula that is stated two ways.

For the (1,4) regular witness the two candidates disagree for every n, so a
single sweep picks one of them. The (2,3) simple finite witness matches
neither, which the adjudication reports as unresolved.

    python3 demos/conflicting_formulas.py
"""

from semisplice.lab import bound, run_family

print("candidates for (1,4) regular, n=5, |M1|=1:", bound("14", "regular", "semi", 5, 1))
for extra in (0, 1):
    for r in run_family("14-regular", range(3, 7), extra):
        print(f"  |M1|={extra + 1} n={r.n} size={r.minimal} {r.predicted} -> {r.verdict}")

print("candidates for (2,3) simple finite, n=8:", bound("23", "finite", "simple", 8))
for r in run_family("23-simple-finite", range(7, 11)):
    print(f"  n={r.n} size={r.minimal} {r.predicted} -> {r.verdict}")
