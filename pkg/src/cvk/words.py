"""Oracle word problem Coxeter secara abstrak (tanpa matriks).

Elemen direpresentasikan oleh himpunan semua reduced word-nya, yang tertutup
terhadap braid move (Matsumoto). ``ws`` lebih panjang dari ``w`` tepat ketika
tidak ada reduced word ``w`` yang berakhiran ``s`` (exchange condition).
Kunci elemen adalah word terkecil secara leksikografis.

Usage:
    from cvk.coxsys import build_system
    from cvk.words import coxeter_growth

    coxeter_growth(system, 8)  # [1, 3, 6, ...]
"""

from collections import deque
from dataclasses import dataclass

from cvk.coxsys import INF, CoxeterSystem
from utils.mlogger import LoggerManager, logger

log = logger.bind(module="words")

Word = tuple[int, ...]


def _braid(s: int, t: int, m: int) -> Word:
    return tuple(s if k % 2 == 0 else t for k in range(m))


def _braid_moves(sys: CoxeterSystem) -> list[tuple[Word, Word]]:
    moves = []
    for s in range(sys.rank):
        for t in range(sys.rank):
            if s == t:
                continue
            m = sys.labels[s][t]
            if m is INF:
                continue
            moves.append((_braid(s, t, int(m)), _braid(t, s, int(m))))
    return moves


def braid_class(word: Word, moves: list[tuple[Word, Word]]) -> frozenset[Word]:
    """All words reachable from ``word`` by braid moves."""
    seen = {word}
    queue = deque([word])
    while queue:
        w = queue.popleft()
        for lhs, rhs in moves:
            n = len(lhs)
            for k in range(len(w) - n + 1):
                if w[k : k + n] == lhs:
                    u = w[:k] + rhs + w[k + n :]
                    if u not in seen:
                        seen.add(u)
                        queue.append(u)
    return frozenset(seen)


@dataclass(frozen=True)
class AbstractElement:
    key: Word
    words: frozenset[Word]

    @property
    def length(self) -> int:
        return len(self.key)

    def descends(self, s: int) -> bool:
        """``ws`` is shorter than ``w``."""
        return any(w and w[-1] == s for w in self.words)


@LoggerManager.timer("word oracle")
def coxeter_elements(sys: CoxeterSystem, max_len: int) -> list[list[AbstractElement]]:
    """Elements of ``W`` grouped by length ``0..max_len``."""
    moves = _braid_moves(sys)
    levels = [[AbstractElement((), frozenset({()}))]]
    for _ in range(max_len):
        found: dict[Word, AbstractElement] = {}
        for element in levels[-1]:
            for s in range(sys.rank):
                if element.descends(s):
                    continue
                words = braid_class(element.key + (s,), moves)
                key = min(words)
                if key not in found:
                    found[key] = AbstractElement(key, words)
        if not found:
            break
        levels.append(sorted(found.values(), key=lambda e: e.key))
    return levels


def coxeter_growth(sys: CoxeterSystem, max_len: int) -> list[int]:
    """Number of elements of each length ``0..max_len`` (trailing zeros for finite groups)."""
    counts = [len(level) for level in coxeter_elements(sys, max_len)]
    counts += [0] * (max_len + 1 - len(counts))
    log.debug(f"growth of W up to {max_len}: {counts}")
    return counts


def reduced_word(sys: CoxeterSystem, word: Word) -> Word:
    """Lexicographically least reduced word of the element spelled by ``word``."""
    moves = _braid_moves(sys)
    current = AbstractElement((), frozenset({()}))
    for s in word:
        if current.descends(s):
            # w = u s untuk suatu u, jadi ws = u
            words = frozenset(w[:-1] for w in current.words if w[-1] == s)
        else:
            words = braid_class(current.key + (s,), moves)
        current = AbstractElement(min(words), words)
    return current.key


__all__ = [
    "AbstractElement",
    "braid_class",
    "coxeter_elements",
    "coxeter_growth",
    "reduced_word",
]
