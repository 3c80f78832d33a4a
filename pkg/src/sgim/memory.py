"""Episodic memory of executed movements with exact task-space kNN queries.

The store grows append-only; queries are exact brute-force scans over the
outcome coordinates (cheap at the tens-of-thousands scale this library
targets, and trivially correct). Single writer, many readers: concurrent
queries are safe between inserts, inserts need exclusive access.
"""

from dataclasses import dataclass, field

import numpy as np

from .env import ACTION_DIM

AUTONOMOUS = "autonomous"
DEMONSTRATION = "demonstration"
IMITATION = "imitation"
SOURCES = (AUTONOMOUS, DEMONSTRATION, IMITATION)


class EmptyMemoryError(LookupError):
    """Raised by queries that need at least one stored exemplar."""


@dataclass
class Exemplar:
    """One executed (or observed) movement and where it landed."""

    action: np.ndarray
    outcome: np.ndarray
    source: str = AUTONOMOUS
    seq: int | None = None

    def __post_init__(self):
        self.action = np.asarray(self.action, dtype=float)
        self.outcome = np.asarray(self.outcome, dtype=float)
        if self.source not in SOURCES:
            raise ValueError("unknown source %r" % (self.source,))


class Memory:
    def __init__(self):
        self._capacity = 1024
        self._actions = np.empty((self._capacity, ACTION_DIM))
        self._outcomes = np.empty((self._capacity, 2))
        self._sources = np.empty(self._capacity, dtype=np.int8)
        self._size = 0

    def __len__(self):
        return self._size

    def _grow(self):
        self._capacity *= 2
        for name in ("_actions", "_outcomes", "_sources"):
            old = getattr(self, name)
            new = np.empty((self._capacity,) + old.shape[1:], dtype=old.dtype)
            new[: self._size] = old[: self._size]
            setattr(self, name, new)

    def insert(self, exemplar):
        """Store an exemplar; stamps and returns its sequence number."""
        if exemplar.seq is not None and exemplar.seq != self._size:
            raise ValueError("explicit seq %r does not match insertion order" % (exemplar.seq,))
        if exemplar.action.shape != (ACTION_DIM,) or exemplar.outcome.shape != (2,):
            raise ValueError("bad exemplar shapes")
        if self._size == self._capacity:
            self._grow()
        i = self._size
        self._actions[i] = exemplar.action
        self._outcomes[i] = exemplar.outcome
        self._sources[i] = SOURCES.index(exemplar.source)
        self._size += 1
        exemplar.seq = i
        return i

    def exemplar(self, seq):
        if not 0 <= seq < self._size:
            raise IndexError(seq)
        return Exemplar(
            action=self._actions[seq].copy(),
            outcome=self._outcomes[seq].copy(),
            source=SOURCES[self._sources[seq]],
            seq=seq,
        )

    def outcomes(self):
        return self._outcomes[: self._size]

    def actions(self):
        return self._actions[: self._size]

    def sources(self):
        return [SOURCES[i] for i in self._sources[: self._size]]

    def source_counts(self):
        counts = dict.fromkeys(SOURCES, 0)
        for i in range(self._size):
            counts[SOURCES[self._sources[i]]] += 1
        return counts

    def nearest_indices(self, query, k):
        """Indices and distances of the k exemplars closest to query in
        task space, sorted by (distance, seq). Exact; returns fewer than k
        only when the memory is smaller than k."""
        if k < 1:
            raise ValueError("k must be >= 1")
        n = self._size
        if n == 0:
            return np.empty(0, dtype=int), np.empty(0)
        query = np.asarray(query, dtype=float)
        diff = self._outcomes[:n] - query
        dist = np.sqrt((diff * diff).sum(axis=1))
        k = min(k, n)
        if k == n:
            cand = np.arange(n)
        else:
            part = np.argpartition(dist, k - 1)[:k]
            kth = dist[part].max()
            cand = np.flatnonzero(dist <= kth)
        order = np.lexsort((cand, dist[cand]))
        sel = cand[order][:k]
        return sel, dist[sel]

    def nearest(self, query, k):
        """The k nearest exemplars to query, as (Exemplar, distance) pairs."""
        idx, dist = self.nearest_indices(query, k)
        return [(self.exemplar(int(i)), float(d)) for i, d in zip(idx, dist)]

    def reliability(self, candidate, goal, k_neighbors, variance_weight):
        """Distance-to-goal plus weighted local outcome variance.

        The local variance is the mean per-axis variance of the outcomes of
        the k_neighbors exemplars nearest to the candidate's outcome (the
        candidate itself included). Lower values mean more reliable. If the
        memory holds fewer than k_neighbors exemplars, all are used.
        """
        if self._size == 0:
            raise EmptyMemoryError("reliability needs a nonempty memory")
        goal = np.asarray(goal, dtype=float)
        idx, _ = self.nearest_indices(candidate.outcome, k_neighbors)
        local = self._outcomes[idx]
        var = local.var(axis=0).mean()
        dist = float(np.linalg.norm(candidate.outcome - goal))
        return dist + variance_weight * var

    def dump(self, path):
        """Write one line per exemplar: seq, source, a1..a24, y1, y2."""
        with open(path, "w") as fh:
            for i in range(self._size):
                fields = [str(i), SOURCES[self._sources[i]]]
                fields.extend(repr(float(v)) for v in self._actions[i])
                fields.extend(repr(float(v)) for v in self._outcomes[i])
                fh.write(",".join(fields) + "\n")

    @classmethod
    def load(cls, path):
        mem = cls()
        with open(path) as fh:
            for lineno, line in enumerate(fh):
                line = line.strip()
                if not line:
                    continue
                parts = line.split(",")
                if len(parts) != 2 + ACTION_DIM + 2:
                    raise ValueError("line %d: expected %d fields" % (lineno + 1, 2 + ACTION_DIM + 2))
                seq = int(parts[0])
                if seq != len(mem):
                    raise ValueError("line %d: seq out of order" % (lineno + 1,))
                action = np.array([float(v) for v in parts[2:2 + ACTION_DIM]])
                outcome = np.array([float(v) for v in parts[2 + ACTION_DIM:]])
                mem.insert(Exemplar(action, outcome, parts[1]))
        return mem
