"""Pair colorings, product compositions, and apartness extraction.

Sets that fail weak apartness die under the two bit-parity colorings;
products bolt those onto the construction colorings so that every
catalog fixture is killed through one component or another.  The
extraction transformer shows why apartness costs nothing: any increasing
stream thins to a fully apart sequence whose finite sums remain finite
sums of the original.

Run with:  python demos/05_products_and_extraction.py
"""

from itertools import count, islice

from fscoloring import (
    extract_apart,
    finite_sums,
    has_apartness,
    product,
    weak_apartness_killer,
)
from fscoloring.delta3 import coloring as membership_coloring
from fscoloring.families import delta3_catalog
from fscoloring import harness

print("The pair coloring is (top-bit parity, low-bit parity):")
for x in (5, 6, 11, 12):
    print("  c0(%2d) = %r" % (x, weak_apartness_killer(x)))

print()
print("Two numbers sharing a top bit push the sum's top bit one higher:")
print("  c0(5) = %r vs c0(5+6) = %r" % (weak_apartness_killer(5), weak_apartness_killer(11)))
print("Three numbers sharing a low bit contain a pair agreeing two bits up:")
print("  2 and 10 agree mod 8; c0(2) = %r vs c0(12) = %r"
      % (weak_apartness_killer(2), weak_apartness_killer(12)))

print()
print("An apart set is untouched, every two-term sum colored alike:")
values = finite_sums([4, 16, 64], 2)
print("  FS<=2({4,16,64}) = %r, colors %r"
      % (values, sorted({weak_apartness_killer(v) for v in values})))

print()
print("Exhaustive search confirms such monochromatic sets exist, and that")
print("none survive once restricted to sets failing weak apartness:")
found = harness.search_mono(weak_apartness_killer, 2, 64, 3)
print("  first monochromatic triple below 64: %r" % (found.found,))
from fscoloring import has_weak_apartness
filtered = harness.search_mono(
    weak_apartness_killer, 2, 32, 3,
    subset_filter=lambda H: not has_weak_apartness(list(H))[0],
)
print("  restricted to non-weakly-apart triples below 32: %s"
      % ("exhausted" if filtered.exhausted else filtered.found))

print()
print("Product with the membership coloring kills every catalog fixture:")
config = harness.default_config("delta3", "instant")
for index in range(3):
    payload = harness.run_product_kill(config, index)
    print("  fixture %d via %-12s u=%s v=%s, colors %s vs %s"
          % (index, payload["branch"], payload["u"], payload["v"],
             ",".join(payload["color_u"]), ",".join(payload["color_v"])))

print()
print("Extraction thins the naturals to an apart sequence with receipts:")
for certificate in islice(extract_apart(count(1)), 6):
    print("  %3d = sum of %r starting at stream offset %d"
          % (certificate.value, certificate.block, certificate.first_index))
outputs = [c.value for c in islice(extract_apart(count(1)), 6)]
print("  outputs pairwise apart: %s" % has_apartness(outputs))
