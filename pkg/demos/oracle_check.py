"""Build one system by hand, print its DFA, and compare the DFA with the
brute-force closure of the initial language.

    python3 demos/oracle_check.py
"""

from semisplice.automata import Dfa, enumerate_accepted, word_str
from semisplice.constructions import construct
from semisplice.formats import dumps_dfa
from semisplice.lab import cross_validate
from semisplice.splicing import SplicingSystem

# I = {aba}; the (1,3) rule with marker (a,a) glues a prefix ending in a to a
# suffix after an a, so the closure is a(ba)*.
initial = Dfa.from_edges("ab", 4, 0, [3], [(0, "a", 1), (1, "b", 2), (2, "a", 3)])
system = SplicingSystem("13", initial, [("a", "a")])

dfa = construct(system)
print(dumps_dfa(dfa))
print("words up to length 7:", [word_str(w) for w in enumerate_accepted(dfa, 7)])

cv = cross_validate(system, out_len=9, intermediate_len=13)
print(f"oracle verdict: {cv.verdict} (construction {cv.construction_count} words, oracle {cv.oracle_count})")
