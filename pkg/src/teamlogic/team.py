"""Valuations, teams and families of teams.

A valuation over an index set ``N = (i1 < ... < in)`` is encoded by its
*code*: the bit vector ``s(i1) ... s(in)`` read as a binary number with
``i1`` as the most significant bit.  Valuations are enumerated by ascending
code.  A team is a bitmask over codes (bit ``c`` set when the valuation with
code ``c`` is a member) and teams are enumerated by ascending mask, so the
empty team always comes first.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import BadDomain, SizeGuard

#: default bound on |N| for enumerating every team
TEAM_GUARD = 4
#: default bound on |N| for enumerating every family of teams
FAMILY_GUARD = 2

IndexSet = tuple[int, ...]


def index_set(indices: Iterable[int]) -> IndexSet:
    return tuple(sorted(set(indices)))


@dataclass(frozen=True, order=True)
class Valuation:
    domain: IndexSet
    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) != len(self.domain):
            raise BadDomain("valuation needs exactly one bit per index")

    @classmethod
    def from_code(cls, domain: IndexSet, code: int) -> "Valuation":
        n = len(domain)
        return cls(domain, tuple((code >> (n - 1 - k)) & 1 for k in range(n)))

    @property
    def code(self) -> int:
        c = 0
        for b in self.bits:
            c = (c << 1) | b
        return c

    def __getitem__(self, index: int) -> int:
        try:
            return self.bits[self.domain.index(index)]
        except ValueError:
            raise BadDomain(f"p{index} is not in the domain {list(self.domain)}") from None

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.domain, self.bits))

    def restrict(self, sub: IndexSet) -> "Valuation":
        return Valuation(tuple(sub), tuple(self[i] for i in sub))

    def bitstring(self) -> str:
        return "".join(map(str, self.bits))

    def __str__(self):
        return "(" + ",".join(map(str, self.bits)) + ")"


def valuations(domain: Iterable[int]) -> list[Valuation]:
    """All valuations on ``domain`` in canonical order."""
    dom = index_set(domain)
    return [Valuation.from_code(dom, c) for c in range(1 << len(dom))]


def bit_of(code: int, n: int, position: int) -> int:
    """Value of the variable at ``position`` (0-based in the domain) in ``code``."""
    return (code >> (n - 1 - position)) & 1


@dataclass(frozen=True)
class Team:
    domain: IndexSet
    mask: int

    @classmethod
    def of(cls, domain: Iterable[int], members: Iterable) -> "Team":
        """Build a team from valuations, bit tuples or bitstrings."""
        dom = index_set(domain)
        n = len(dom)
        mask = 0
        for m in members:
            if isinstance(m, Valuation):
                if m.domain != dom:
                    raise BadDomain("member valuation has a different domain")
                bits = m.bits
            elif isinstance(m, str):
                bits = tuple(int(ch) for ch in m)
            else:
                bits = tuple(int(b) for b in m)
            if len(bits) != n or any(b not in (0, 1) for b in bits):
                raise BadDomain(f"row {m!r} does not fit the domain {list(dom)}")
            code = 0
            for b in bits:
                code = (code << 1) | b
            mask |= 1 << code
        return cls(dom, mask)

    @classmethod
    def full(cls, domain: Iterable[int]) -> "Team":
        dom = index_set(domain)
        return cls(dom, (1 << (1 << len(dom))) - 1)

    @classmethod
    def empty(cls, domain: Iterable[int]) -> "Team":
        return cls(index_set(domain), 0)

    def codes(self) -> list[int]:
        out = []
        m = self.mask
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    @property
    def members(self) -> list[Valuation]:
        return [Valuation.from_code(self.domain, c) for c in self.codes()]

    def __iter__(self) -> Iterator[Valuation]:
        return iter(self.members)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, v: Valuation) -> bool:
        return v.domain == self.domain and bool(self.mask >> v.code & 1)

    def issubset(self, other: "Team") -> bool:
        self._same(other)
        return self.mask & ~other.mask == 0

    def __le__(self, other: "Team") -> bool:
        return self.issubset(other)

    def __or__(self, other: "Team") -> "Team":
        self._same(other)
        return Team(self.domain, self.mask | other.mask)

    def __sub__(self, other: "Team") -> "Team":
        self._same(other)
        return Team(self.domain, self.mask & ~other.mask)

    def complement(self) -> "Team":
        return Team.full(self.domain) - self

    def _same(self, other: "Team") -> None:
        if self.domain != other.domain:
            raise BadDomain("teams live on different domains")

    def __str__(self):
        return "{" + ", ".join(str(v) for v in self.members) + "}"


def all_teams(domain: Iterable[int], guard: int = TEAM_GUARD) -> Iterator[Team]:
    """Every team on ``domain``, empty team first."""
    dom = index_set(domain)
    if len(dom) > guard:
        raise SizeGuard(f"enumerating all teams on {len(dom)} variables exceeds the bound {guard}")
    for mask in range(1 << (1 << len(dom))):
        yield Team(dom, mask)


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in ascending order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def subteams(team: Team) -> Iterator[Team]:
    for sub in submasks(team.mask):
        yield Team(team.domain, sub)


def restrict(team: Team, sub: Iterable[int]) -> Team:
    """Pointwise restriction of every member to ``sub``."""
    sub = index_set(sub)
    missing = set(sub) - set(team.domain)
    if missing:
        raise BadDomain(f"cannot restrict to variables outside the domain: {sorted(missing)}")
    positions = [team.domain.index(i) for i in sub]
    n = len(team.domain)
    mask = 0
    for code in team.codes():
        new = 0
        for p in positions:
            new = (new << 1) | bit_of(code, n, p)
        mask |= 1 << new
    return Team(sub, mask)


@dataclass(frozen=True)
class TeamFamily:
    domain: IndexSet
    masks: frozenset[int]

    @classmethod
    def of(cls, domain: Iterable[int], teams: Iterable) -> "TeamFamily":
        dom = index_set(domain)
        masks = set()
        for t in teams:
            if isinstance(t, Team):
                if t.domain != dom:
                    raise BadDomain("team has a different domain")
                masks.add(t.mask)
            else:
                masks.add(int(t))
        return cls(dom, frozenset(masks))

    @property
    def teams(self) -> list[Team]:
        return [Team(self.domain, m) for m in sorted(self.masks)]

    def __iter__(self):
        return iter(self.teams)

    def __len__(self):
        return len(self.masks)

    def __contains__(self, team: Team) -> bool:
        return team.domain == self.domain and team.mask in self.masks

    def maximal(self) -> list[Team]:
        """The inclusion-maximal members, in canonical order."""
        ms = sorted(self.masks)
        return [Team(self.domain, m) for m in ms
                if not any(o != m and m & ~o == 0 for o in ms)]


def is_downward_closed(family: TeamFamily) -> bool:
    if not family.masks:
        return False
    for m in family.masks:
        rest = m
        while rest:
            low = rest & -rest
            if (m ^ low) not in family.masks:
                return False
            rest ^= low
    return True


def downward_closed_families(domain: Iterable[int], guard: int = FAMILY_GUARD) -> Iterator[TeamFamily]:
    """Every nonempty downward-closed family on ``domain``, by antichain of maxima."""
    dom = index_set(domain)
    if len(dom) > guard:
        raise SizeGuard(f"enumerating families on {len(dom)} variables exceeds the bound {guard}")
    nteams = 1 << (1 << len(dom))
    seen = set()
    # every nonempty down-set is generated by its antichain of maximal elements
    results = []

    def close(gens):
        out = set()
        for g in gens:
            out.update(submasks(g))
        return frozenset(out)

    def extend(start, chosen):
        fam = close(chosen)
        if fam not in seen:
            seen.add(fam)
            results.append(fam)
        for t in range(start, nteams):
            if all(t & ~c and c & ~t for c in chosen):
                extend(t + 1, chosen + [t])

    extend(0, [])
    for fam in sorted(results, key=lambda f: (len(f), sorted(f))):
        if fam:
            yield TeamFamily(dom, fam)


# ---------------------------------------------------------------- file formats

def read_team_csv(text: str) -> Team:
    """Parse the team CSV format (header ``p<i>,...`` then rows of 0/1)."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise BadDomain("team file has no header line")
    header = [h.strip() for h in rows[0]]
    indices = []
    for h in header:
        if not (h.startswith("p") and h[1:].isdigit()):
            raise BadDomain(f"bad column name {h!r}; expected p<digits>")
        indices.append(int(h[1:]))
    if indices != sorted(set(indices)):
        raise BadDomain("header variables must be strictly ascending")
    members = []
    for r in rows[1:]:
        cells = [c.strip() for c in r]
        if len(cells) != len(indices) or any(c not in ("0", "1") for c in cells):
            raise BadDomain(f"bad row {','.join(r)!r}")
        members.append(tuple(int(c) for c in cells))
    return Team.of(indices, members)


def write_team_csv(team: Team) -> str:
    lines = [",".join(f"p{i}" for i in team.domain)]
    lines += [",".join(map(str, v.bits)) for v in team.members]
    return "\n".join(lines) + "\n"


def read_family_json(text: str) -> TeamFamily:
    data = json.loads(text)
    try:
        dom = [int(i) for i in data["vars"]]
        teams = [Team.of(dom, members) for members in data["teams"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise BadDomain(f"malformed family document: {exc}") from None
    if dom != sorted(set(dom)):
        raise BadDomain("vars must be strictly ascending")
    return TeamFamily.of(dom, teams)


def write_family_json(family: TeamFamily) -> str:
    return json.dumps({
        "vars": list(family.domain),
        "teams": [[v.bitstring() for v in t.members] for t in family.teams],
    })
