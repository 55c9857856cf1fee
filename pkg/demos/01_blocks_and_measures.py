"""Tour of the dyadic vocabulary: bit measures, blocks, apartness, sums.

Run with:  python demos/01_blocks_and_measures.py
"""

from fscoloring import (
    apart,
    block,
    finite_sums,
    has_apartness,
    has_weak_apartness,
    measures,
)

print("Every positive integer is a finite set of binary digit positions.")
for x in (12, 40, 1, 2 ** 20 + 5):
    top, low = measures(x)
    print("  %8d = %s_2   top bit %d, low bit %d" % (x, bin(x)[2:], top, low))

print()
print("The block at exponent n holds the integers whose top bit is n:")
for n in (0, 2, 4):
    print("  exponent %d -> %r" % (n, block(n)))

print()
print("x is apart from y when every digit of x sits below every digit of y;")
print("apart numbers add without carries, so sums inherit their measures:")
for x, y in ((4, 8), (8, 12), (5, 48)):
    verdict = "apart" if apart(x, y) else "NOT apart"
    print("  %3d vs %3d: %s; %d + %d = %d = %s_2" % (x, y, verdict, x, y, x + y, bin(x + y)[2:]))

print()
print("Finite sums of a set enumerate all nonempty subset totals:")
H = [1, 2, 4]
print("  FS(%r)        = %r" % (H, finite_sums(H)))
print("  FS(%r, <=2)   = %r" % (H, finite_sums(H, 2)))

print()
print("Weak apartness allows one element per block and two per low bit:")
for H in ([2, 3], [1, 3, 5], [2, 8, 32]):
    ok, certificate = has_weak_apartness(H)
    if ok:
        print("  %r: weakly apart (fully apart: %s)" % (H, has_apartness(H)))
    else:
        print("  %r: fails, witness %r" % (H, certificate))

print()
print("A fully apart set has all subset sums distinct:")
H = [2, 8, 32, 128]
sums = finite_sums(H)
print("  %r -> %d sums, %d subsets" % (H, len(sums), 2 ** len(H) - 1))
