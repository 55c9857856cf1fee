"""Colorings that defeat sets without weak apartness, and apartness extraction.

Two numbers sharing a top bit push the top bit of their sum one higher;
three numbers sharing a low bit contain two whose residues agree two bits
up, so their sum's low bit lands one higher.  Coloring by the parities of
the two bit measures therefore separates some two-term sum of any set
that fails weak apartness.  Product colorings combine such components
with the construction colorings.

extract_apart thins an arbitrary increasing stream into one with full
apartness while keeping every output a sum of a private block of stream
elements, so finite sums of the output stay finite sums of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .dyadic import apart, low_bit, top_bit


def top_bit_parity(x: int) -> int:
    return top_bit(x) & 1


def low_bit_parity(x: int) -> int:
    return low_bit(x) & 1


def weak_apartness_killer(x: int) -> tuple:
    """The pair coloring (top-bit parity, low-bit parity)."""
    return (top_bit_parity(x), low_bit_parity(x))


def product(colorings):
    """Pointwise tuple of colorings, flattening tuple-valued components.

    A set is monochromatic under the product iff it is monochromatic under
    every component.
    """
    colorings = tuple(colorings)
    if not colorings:
        raise ValueError("product of no colorings")

    def color(w):
        out = []
        for component in colorings:
            value = component(w)
            if isinstance(value, tuple):
                out.extend(value)
            else:
                out.append(value)
        return tuple(out)

    color.description = "product of %d colorings" % len(colorings)
    color.arity = len(color(2))  # tree components reject vertices below 2
    return color


@dataclass(frozen=True)
class ExtractionCertificate:
    """One output element together with the stream block realizing it.

    value equals the sum of the block; blocks of successive outputs are
    disjoint runs of the input stream, so any finite sum of outputs is a
    finite sum of pairwise distinct input elements.
    """

    value: int
    block: tuple           # consecutive input elements, in stream order
    first_index: int       # 0-based position of block[0] in the input stream

    def check(self) -> None:
        if sum(self.block) != self.value:
            raise ValueError(
                "certificate block sums to %d, not %d" % (sum(self.block), self.value)
            )


def extract_apart(stream: Iterable[int]) -> Iterator[ExtractionCertificate]:
    """Thin an increasing stream into a fully apart sequence, with receipts.

    The first stream element is emitted as-is.  After emitting b, the next
    output is found by scanning prefix sums of the remaining stream until
    two share a residue mod 2**(top_bit(b)+1); the enclosed run sums to a
    multiple of that power, which forces its low bit above top_bit(b).
    The pigeonhole bounds the scan by 2**(top_bit(b)+1) + 1 prefix sums,
    so each output consumes a finite prefix.
    """
    source = iter(stream)
    position = 0

    def take():
        nonlocal position
        value = next(source)
        position += 1
        return value

    first = take()
    previous = first
    yield ExtractionCertificate(value=first, block=(first,), first_index=0)
    while True:
        modulus = 1 << (top_bit(previous) + 1)
        start = position
        window = []
        prefix = 0
        seen = {0: 0}  # residue -> number of elements summed
        while True:
            window.append(take())
            prefix += window[-1]
            residue = prefix % modulus
            if residue in seen:
                offset = seen[residue]
                block = tuple(window[offset:])
                value = sum(block)
                yield ExtractionCertificate(
                    value=value, block=block, first_index=start + offset
                )
                previous = value
                break
            seen[residue] = len(window)
