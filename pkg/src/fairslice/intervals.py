"""Closed subintervals of the unit segment and canonical finite unions of them.

The cake is [0,1].  A slice is a closed interval with exact rational endpoints;
a region is a finite union of slices kept in canonical form: sorted, pairwise
disjoint, touching slices merged, zero-length slices dropped.  Because single
points carry no measure, two regions count as disjoint when their intersection
has length zero, which the canonical form renders as emptiness.

All endpoints are `fractions.Fraction`.  Floats are refused at the boundary:
Fraction(0.4) is not 2/5, and we never want to find that out the hard way.
"""

from fractions import Fraction


def frac(x):
    """Coerce ints, Fractions, and strings like "3/7" or "0.4" to Fraction.

    Floats are rejected: their binary expansions silently break exactness.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("expected an exact rational (int, Fraction, or string), got %r" % (x,))


class Interval:
    """A closed interval [lo, hi] inside the unit segment, possibly degenerate."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo = frac(lo)
        hi = frac(hi)
        if not (0 <= lo <= hi <= 1):
            raise ValueError("need 0 <= lo <= hi <= 1, got [%s, %s]" % (lo, hi))
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    @property
    def length(self):
        return self.hi - self.lo

    def contains(self, x):
        return self.lo <= x <= self.hi

    def __eq__(self, other):
        return isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return "[%s, %s]" % (self.lo, self.hi)

    def __iter__(self):
        yield self.lo
        yield self.hi


def _canonical(intervals):
    # Sort by left endpoint, merge anything overlapping or merely touching,
    # and drop what is left with zero length.
    spans = sorted((iv.lo, iv.hi) for iv in intervals)
    merged = []
    for lo, hi in spans:
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1][1] = hi
        else:
            merged.append([lo, hi])
    return tuple(Interval(lo, hi) for lo, hi in merged if hi > lo)


class IntervalSet:
    """Canonical finite union of closed intervals within [0,1].

    Supports the usual region algebra: union, intersection, difference,
    complement (relative to the cake), and total length.  Instances are
    immutable and compare by value.
    """

    __slots__ = ("intervals",)

    def __init__(self, intervals=()):
        ivs = []
        for item in intervals:
            if isinstance(item, Interval):
                ivs.append(item)
            else:
                lo, hi = item
                ivs.append(Interval(lo, hi))
        object.__setattr__(self, "intervals", _canonical(ivs))

    def __setattr__(self, name, value):
        raise AttributeError("IntervalSet is immutable")

    @classmethod
    def unit(cls):
        return cls([(0, 1)])

    @classmethod
    def empty(cls):
        return cls(())

    @property
    def length(self):
        total = Fraction(0)
        for iv in self.intervals:
            total += iv.length
        return total

    def is_empty(self):
        return not self.intervals

    def contains(self, x):
        return any(iv.contains(x) for iv in self.intervals)

    def union(self, other):
        return IntervalSet(self.intervals + other.intervals)

    def intersect(self, other):
        out = []
        a, b = self.intervals, other.intervals
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i].lo, b[j].lo)
            hi = min(a[i].hi, b[j].hi)
            if hi > lo:
                out.append((lo, hi))
            if a[i].hi < b[j].hi:
                i += 1
            else:
                j += 1
        return IntervalSet(out)

    def difference(self, other):
        return self.intersect(other.complement())

    def complement(self):
        """The rest of the cake, [0,1] minus this region."""
        out = []
        cursor = Fraction(0)
        for iv in self.intervals:
            if iv.lo > cursor:
                out.append((cursor, iv.lo))
            cursor = iv.hi
        if cursor < 1:
            out.append((cursor, Fraction(1)))
        return IntervalSet(out)

    def overlaps(self, other):
        """True when the shared region has positive length."""
        return not self.intersect(other).is_empty()

    def pairs(self):
        """Endpoint pairs, handy for serialization."""
        return [(iv.lo, iv.hi) for iv in self.intervals]

    def __eq__(self, other):
        return isinstance(other, IntervalSet) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __bool__(self):
        return bool(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __repr__(self):
        if not self.intervals:
            return "IntervalSet(empty)"
        return "IntervalSet(%s)" % " u ".join(repr(iv) for iv in self.intervals)


def union_all(regions):
    """Union of an iterable of IntervalSets."""
    spans = []
    for region in regions:
        spans.extend(region.intervals)
    return IntervalSet(spans)
