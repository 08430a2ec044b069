"""The numeric oracle: random-restart search and the angle-triple axis search."""

import itertools
import math
import time

import numpy as np

from su2abelian.polygon import AngleTriple, angle_triple_status
from su2abelian.presentation import abelianization, fibonacci_presentation, parse_presentation
from su2abelian.search import axis_search, search

groups = {
    "m016": "<a,b | (a^3 b)^2 b^-3, (a^-1 b^3)^2 a^3>",
    "m118": "<a,b | (a^5 b)^2 b^-3, (a^-2 b^3)^2 a^5>",
    "triangle (3,3,4)": "<c1,c2,c3 | c1^3, c2^3, c3^4, c1 c2 c3>",
    "free": "<a,b |>",
}

for name, text in groups.items():
    pres = parse_presentation(text)
    t = time.perf_counter()
    r = search(pres, restarts=200, seed=0)
    print("%-18s H1 = %-8s %-24s %d points (%.2fs)" % (
        name, abelianization(pres), r.verdict, len(r.found), time.perf_counter() - t))

fib = fibonacci_presentation(8)
print("F(2,8): H1 =", abelianization(fib), search(fib, restarts=100).verdict)

# a coarse angle grid: the sampled status should match the closed-form one
ks = list(itertools.product(range(0, 7), repeat=3))
th = np.array(ks) * math.pi / 6
res = axis_search(th, restarts=100)
agree = 0
for t, floor, nonab in zip(th, res.residual_floor, res.nonabelian):
    sampled = "NoRep" if floor > 1e-4 else ("NonabelianExists" if nonab else "AbelianOnly")
    agree += sampled == angle_triple_status(AngleTriple(*t)).value
print("axis search agrees on %d of %d triples" % (agree, len(ks)))
