"""The weighted simplicial complex S(K) of a monomial ideal.

Faces are the supports of the minimal generators; the weight of a face
is the number of minimal generators with exactly that support. Only the
weighted faces are stored: the downward closure is implied, and the
1-skeleton built from the stored faces already decides connectivity.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx

from .monomials import MonomialIdeal, minimalize, support
from .tables import GeneralisedTable

Face = Tuple[int, ...]


def _face(vertices: Iterable[int]) -> Face:
    return tuple(sorted(set(vertices)))


@dataclass(frozen=True)
class WeightedComplex:
    n: int
    weights: Dict[Face, int]

    def weight(self, face: Iterable[int]) -> int:
        """Recorded weight; 0 for faces present only through the closure."""
        return self.weights.get(_face(face), 0)

    def contains(self, face: Iterable[int]) -> bool:
        f = set(face)
        return any(f <= set(g) for g, w in self.weights.items() if w > 0)

    def facets(self) -> List[Face]:
        positive = [set(f) for f, w in self.weights.items() if w > 0]
        return sorted(
            (_face(f) for f in positive if not any(f < g for g in positive)),
            key=lambda f: (len(f), f),
        )

    def vertices(self) -> List[int]:
        return sorted({v for f, w in self.weights.items() if w > 0 for v in f})

    def skeleton(self) -> nx.Graph:
        """Underlying 1-skeleton on all ``n`` variables."""
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        for f, w in self.weights.items():
            if w <= 0:
                continue
            for a in f:
                for b in f:
                    if a < b:
                        G.add_edge(a, b)
        return G


def build_complex(I: MonomialIdeal) -> WeightedComplex:
    if I.is_unit():
        raise ValueError("the unit ideal has no simplicial complex")
    weights: Dict[Face, int] = {}
    for g in minimalize(I).generators:
        f = _face(support(g))
        weights[f] = weights.get(f, 0) + 1
    return WeightedComplex(I.n, weights)


def connected_components(C: WeightedComplex) -> List[List[int]]:
    """Partition of the variables, each block sorted, blocks ordered by smallest member."""
    missing = sorted(set(range(C.n)) - set(C.vertices()))
    if missing:
        raise ValueError(f"variables {missing} lie in no face; the source ideal is not Artinian")
    comps = [sorted(c) for c in nx.connected_components(C.skeleton())]
    return sorted(comps, key=lambda c: c[0])


def dimension(C: WeightedComplex) -> int:
    sizes = [len(f) for f, w in C.weights.items() if w > 0]
    if not sizes:
        raise ValueError("empty complex has no dimension")
    return max(sizes) - 1


def ladder_faces(G: GeneralisedTable) -> List[Face]:
    """Faces ``{1..i} u {j}`` of every member table with at least one colour."""
    out = []
    for T in G.tables:
        for i in range(1, T.s + 1):
            for c in range(i, T.n):
                out.append(_face(list(T.labels[:i]) + [T.labels[c]]))
    return out


def complex_to_json(C: WeightedComplex, table: Optional[GeneralisedTable] = None) -> dict:
    """Weighted faces and facets.

    With ``table`` the ladder faces are listed too; a ladder face without
    generators carries weight 0 and says whether the closure covers it.
    """
    weights = dict(C.weights)
    if table is not None:
        for f in ladder_faces(table):
            weights.setdefault(f, 0)
    faces = []
    for f in sorted(weights, key=lambda f: (len(f), f)):
        entry = {"vars": list(f), "weight": weights[f]}
        if weights[f] == 0:
            entry["in_closure"] = C.contains(f)
        faces.append(entry)
    return {"n": C.n, "faces": faces, "facets": [list(f) for f in C.facets()]}


def complex_from_json(obj) -> WeightedComplex:
    if not isinstance(obj, dict) or "n" not in obj or "faces" not in obj:
        raise ValueError('complex JSON must be an object with "n" and "faces"')
    weights = {}
    for face in obj["faces"]:
        weights[_face(face["vars"])] = int(face["weight"])
    return WeightedComplex(int(obj["n"]), weights)
