"""Claim-based mechanisms for agents with uniform tastes over a region.

Agents here care only about a fixed region of the cake and value any piece
by the share of that region it covers.  A strategy is itself a region (a
claim), and a profile is one claim per agent.  Three allocation rules are
provided: priority allocation under an explicit agent order, the same with
priority given to shorter claims, and a direct-revelation rule that
repeatedly serves the group of agents whose jointly wanted cake is smallest
per head.

All lengths and utilities are exact rationals.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from fairslice.audit import Allocation
from fairslice.intervals import Interval, IntervalSet, union_all
from fairslice.valuation import Valuation


class EmptySubset(ValueError):
    """An operation that needs at least one agent received none."""


class Infeasible(ValueError):
    """No disjoint portions of the required lengths exist.

    Raised by exact_allocation when its precondition (the group minimises
    the average share) was violated by the caller.
    """


def _as_region(x):
    return x if isinstance(x, IntervalSet) else IntervalSet(x)


class UniformPreference:
    """An agent who wants a fixed region and is indifferent within it.

    A piece is worth the length it shares with the wanted region, rescaled
    so the whole wanted region is worth exactly 1.
    """

    __slots__ = ("valued",)

    def __init__(self, valued):
        region = _as_region(valued)
        if region.is_empty():
            raise ValueError("the wanted region must have positive length")
        object.__setattr__(self, "valued", region)

    def __setattr__(self, name, value):
        raise AttributeError("UniformPreference is immutable")

    def support(self):
        return self.valued

    def measure(self, region):
        return self.valued.intersect(region).length / self.valued.length

    def as_valuation(self):
        """The same tastes expressed as a density-based valuation."""
        return Valuation.uniform_on(self.valued)

    def __eq__(self, other):
        return isinstance(other, UniformPreference) and self.valued == other.valued

    def __hash__(self):
        return hash(self.valued)

    def __repr__(self):
        return "UniformPreference(%r)" % (self.valued,)


class Profile:
    """One claimed region per agent, in agent order.  Empty claims are legal."""

    __slots__ = ("strategies",)

    def __init__(self, strategies):
        object.__setattr__(
            self, "strategies", tuple(_as_region(s) for s in strategies)
        )

    def __setattr__(self, name, value):
        raise AttributeError("Profile is immutable")

    def is_well_behaved(self, preferences):
        """True when no agent claims cake they do not want."""
        if len(preferences) != len(self.strategies):
            raise ValueError(
                "%d preferences but %d strategies"
                % (len(preferences), len(self.strategies))
            )
        return all(
            s.difference(p.support()).is_empty()
            for s, p in zip(self.strategies, preferences)
        )

    def replace(self, i, strategy):
        """A copy with agent i's claim swapped out."""
        strategies = list(self.strategies)
        strategies[i] = _as_region(strategy)
        return Profile(strategies)

    def __len__(self):
        return len(self.strategies)

    def __iter__(self):
        return iter(self.strategies)

    def __getitem__(self, i):
        return self.strategies[i]

    def __eq__(self, other):
        return isinstance(other, Profile) and self.strategies == other.strategies

    def __hash__(self):
        return hash(self.strategies)

    def __repr__(self):
        return "Profile(%s)" % (", ".join(repr(s) for s in self.strategies))


class AgentOrder:
    """A priority order over agents 0..n-1; earlier agents claim first."""

    __slots__ = ("sequence",)

    def __init__(self, sequence):
        seq = tuple(int(i) for i in sequence)
        if sorted(seq) != list(range(len(seq))):
            raise ValueError("order must be a permutation of 0..n-1, got %r" % (seq,))
        object.__setattr__(self, "sequence", seq)

    def __setattr__(self, name, value):
        raise AttributeError("AgentOrder is immutable")

    def __len__(self):
        return len(self.sequence)

    def __iter__(self):
        return iter(self.sequence)

    def __eq__(self, other):
        return isinstance(other, AgentOrder) and self.sequence == other.sequence

    def __repr__(self):
        return "AgentOrder(%r)" % (self.sequence,)


def lex_order(profile, order):
    """Allocate by priority: each agent receives their claim minus all earlier claims."""
    if not isinstance(order, AgentOrder):
        order = AgentOrder(order)
    if len(order) != len(profile):
        raise ValueError(
            "order covers %d agents but the profile has %d" % (len(order), len(profile))
        )
    portions = [None] * len(profile)
    claimed = IntervalSet.empty()
    for i in order:
        portions[i] = profile[i].difference(claimed)
        claimed = claimed.union(profile[i])
    return Allocation(portions)


def length_game(profile):
    """Allocate with priority to shorter claims; equal lengths go to the lower index."""
    order = sorted(range(len(profile)), key=lambda i: (profile[i].length, i))
    return lex_order(profile, AgentOrder(order))


def valued_region(preferences, agents, cake):
    """The part of the cake wanted by at least one of the given agents."""
    agents = tuple(agents)
    if not agents:
        raise EmptySubset("need at least one agent")
    return union_all(preferences[i].support().intersect(cake) for i in agents)


def average_share(preferences, agents, cake):
    """Length of the group's jointly wanted cake per member of the group."""
    agents = tuple(agents)
    if not agents:
        raise EmptySubset("need at least one agent")
    return Fraction(valued_region(preferences, agents, cake).length, len(agents))


def min_average_subset(preferences, agents, cake):
    """The group minimising the average share; smallest then earliest group on ties.

    Exhaustive over all nonempty groups, which is fine at desk scale and
    keeps the operation easy to swap for something cleverer later.
    """
    agents = tuple(sorted(agents))
    if not agents:
        raise EmptySubset("need at least one agent")
    best = None
    best_avg = None
    for size in range(1, len(agents) + 1):
        for group in combinations(agents, size):
            avg = average_share(preferences, group, cake)
            if best_avg is None or avg < best_avg:
                best, best_avg = group, avg
    return best


def _atoms(regions, within):
    # Split `within` at every endpoint of every region, so each resulting
    # atom is wholly inside or wholly outside each region.
    marks = set()
    for region in regions:
        for iv in region:
            marks.add(iv.lo)
            marks.add(iv.hi)
    out = []
    for iv in within:
        cuts = sorted({iv.lo, iv.hi} | {m for m in marks if iv.lo < m < iv.hi})
        for lo, hi in zip(cuts, cuts[1:]):
            out.append(Interval(lo, hi))
    return out


def exact_allocation(preferences, agents, cake):
    """Disjoint portions of equal length for a group, each within its owner's wanted cake.

    Every agent in the group receives exactly the group's average share,
    made up only of cake they want.  Portions are filled greedily left to
    right, preferring the agent with the least wanted cake still open; a
    transfer pass repairs the rare greedy dead end.  Raises Infeasible when
    no such portions exist, meaning the group did not minimise the average.
    """
    agents = tuple(sorted(agents))
    if not agents:
        raise EmptySubset("need at least one agent")
    wanted = {i: preferences[i].support().intersect(cake) for i in agents}
    region = valued_region(preferences, agents, cake)
    quota = average_share(preferences, agents, cake)

    atoms = _atoms(wanted.values(), region)
    owners = []
    for atom in atoms:
        mid = (atom.lo + atom.hi) / 2
        owners.append([i for i in agents if wanted[i].contains(mid)])

    # held[k][i] is how much of atom k agent i holds; spare[k] is unassigned.
    held = [dict() for _ in atoms]
    spare = [atom.length for atom in atoms]
    need = {i: quota for i in agents}
    open_length = {
        i: sum((a.length for k, a in enumerate(atoms) if i in owners[k]), Fraction(0))
        for i in agents
    }

    for k, atom in enumerate(atoms):
        while spare[k] > 0:
            ready = [i for i in owners[k] if need[i] > 0]
            if not ready:
                break
            i = min(ready, key=lambda i: (open_length[i], i))
            take = min(need[i], spare[k])
            held[k][i] = held[k].get(i, Fraction(0)) + take
            spare[k] -= take
            need[i] -= take
        for i in owners[k]:
            open_length[i] -= atom.length - spare[k]

    for i in agents:
        while need[i] > 0 and _augment(i, need, held, spare, owners):
            pass
        if need[i] > 0:
            raise Infeasible("cannot give agent %d a portion of length %s" % (i, quota))

    portions = {i: [] for i in agents}
    for k, atom in enumerate(atoms):
        pos = atom.lo
        for i in sorted(held[k]):
            amount = held[k][i]
            if amount > 0:
                portions[i].append((pos, pos + amount))
                pos += amount
    result = {i: IntervalSet(spans) for i, spans in portions.items()}

    if any(result[i].length != quota for i in agents):
        raise Infeasible("portions do not meet the average share")
    if any(not result[i].difference(wanted[i]).is_empty() for i in agents):
        raise Infeasible("a portion strays outside its owner's wanted cake")
    if union_all(result.values()) != region:
        raise Infeasible("portions do not cover the jointly wanted cake")
    return result


def _augment(start, need, held, spare, owners):
    # Breadth-first search for a chain of transfers ending in spare capacity:
    # start -> atom -> holder -> atom -> ... -> atom with room.  Shifts the
    # largest amount the chain supports toward the starting agent.
    parent = {start: None}
    queue = [start]
    while queue:
        agent = queue.pop(0)
        for k in range(len(held)):
            if agent not in owners[k]:
                continue
            if spare[k] > 0:
                # Walk back, moving cake toward `start`.
                amount = min(need[start], spare[k])
                node = agent
                while parent[node] is not None:
                    prev_atom, prev_agent = parent[node]
                    amount = min(amount, held[prev_atom][node])
                    node = prev_agent
                if amount <= 0:
                    continue
                spare[k] -= amount
                held[k][agent] = held[k].get(agent, Fraction(0)) + amount
                node = agent
                while parent[node] is not None:
                    prev_atom, prev_agent = parent[node]
                    held[prev_atom][node] -= amount
                    held[prev_atom][prev_agent] = (
                        held[prev_atom].get(prev_agent, Fraction(0)) + amount
                    )
                    node = prev_agent
                need[start] -= amount
                return True
            for other, amount in held[k].items():
                if other not in parent and amount > 0:
                    parent[other] = (k, agent)
                    queue.append(other)
    return False


@dataclass(frozen=True)
class ServiceRound:
    """One round of the smallest-average-group rule."""

    agents: tuple
    average: Fraction
    region: IntervalSet
    portions: tuple  # pairs (agent, IntervalSet)


def min_average_rounds(preferences):
    """Trace of the smallest-average-group rule, one record per round."""
    remaining = tuple(range(len(preferences)))
    cake = IntervalSet.unit()
    rounds = []
    while remaining:
        group = min_average_subset(preferences, remaining, cake)
        avg = average_share(preferences, group, cake)
        region = valued_region(preferences, group, cake)
        shares = exact_allocation(preferences, group, cake)
        rounds.append(
            ServiceRound(group, avg, region, tuple(sorted(shares.items())))
        )
        cake = cake.difference(region)
        remaining = tuple(i for i in remaining if i not in set(group))
    return rounds


def min_average_mechanism(preferences):
    """Serve the group wanting the least cake per head first, then recurse.

    Reporting one's true wanted region is a dominant strategy under this
    rule, and the resulting allocation is envy free.
    """
    portions = [IntervalSet.empty()] * len(preferences)
    for rnd in min_average_rounds(preferences):
        for agent, share in rnd.portions:
            portions[agent] = share
    return Allocation(portions)
