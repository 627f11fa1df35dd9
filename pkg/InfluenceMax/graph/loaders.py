"""
Edge-list reading and writing.

Format: UTF-8 text, ``#`` starts a comment, each remaining line is
``u v`` or ``u v p`` separated by whitespace. Node labels are arbitrary
tokens, compacted to ids 0..|V|-1 in order of first appearance.
"""

import logging
from typing import Dict, Hashable, Iterable, List, Optional, TextIO, Tuple

from ..core.exceptions import EdgeListParseError, ProbabilityError
from .network import Network

logger = logging.getLogger(__name__)


def load_edge_list(
    source: Iterable[str],
    directed: bool = False,
    default_p: float = 0.1,
    weighted: bool = False,
    name: str = "network",
) -> Network:
    """
    Parse an edge list into a :class:`Network`.

    Args:
        source: Text stream or any iterable of lines
        directed: Interpret ``u v`` as the arc u->v only
        default_p: Probability for lines without a third column; 0 gives an inert network
        weighted: Read the optional third column as p(u, v)

    Returns:
        Network whose ``labels`` map ids back to the file's tokens

    Raises:
        EdgeListParseError: If a line has the wrong number of fields
        ProbabilityError: If a probability lies outside (0, 1]
    """
    if not 0.0 <= default_p <= 1.0:
        raise ProbabilityError(default_p)

    ids: Dict[str, int] = {}
    labels: List[str] = []
    arcs: List[Tuple[int, int, float]] = []
    seen = set()
    self_loops = 0
    duplicates = 0
    saw_weight = False

    def node_id(token: str) -> int:
        if token not in ids:
            ids[token] = len(labels)
            labels.append(token)
        return ids[token]

    for line_number, raw in enumerate(source, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        fields = line.split()
        if len(fields) not in (2, 3):
            raise EdgeListParseError(line_number, f"expected 2 or 3 fields, got {len(fields)}")

        p = default_p
        if len(fields) == 3:
            try:
                value = float(fields[2])
            except ValueError:
                raise EdgeListParseError(line_number, f"probability {fields[2]!r} is not a number") from None
            if not 0.0 < value <= 1.0:
                raise ProbabilityError(value, line_number)
            if weighted:
                p = value
                saw_weight = True

        u = node_id(fields[0])
        v = node_id(fields[1])
        if u == v:
            self_loops += 1
            continue

        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        arcs.append((u, v, p))

    if self_loops:
        logger.warning("Dropped %d self-loop(s) while loading %s", self_loops, name)
    if duplicates:
        logger.info("Collapsed %d duplicate edge(s) while loading %s", duplicates, name)

    return Network(
        len(labels),
        arcs,
        directed=directed,
        uniform_p=default_p,
        weighted=saw_weight,
        labels=labels,
        name=name,
    )


def write_edge_list(net: Network, sink: TextIO, weighted: Optional[bool] = None) -> None:
    """Write ``net`` in the format read by :func:`load_edge_list`, using original labels."""
    if weighted is None:
        weighted = net.weighted

    kind = "directed" if net.directed else "undirected"
    sink.write(f"# {net.name}: {kind}, {net.node_count} nodes, {net.edge_count} edges\n")
    for u, v, p in net.edges():
        if weighted:
            sink.write(f"{net.label(u)} {net.label(v)} {p!r}\n")
        else:
            sink.write(f"{net.label(u)} {net.label(v)}\n")


def write_communities(net: Network, communities: List[int], sink: TextIO) -> None:
    """Write the ``node_id community_id`` sidecar for a generated network."""
    sink.write("# node_id community_id\n")
    for v, community in enumerate(communities):
        sink.write(f"{net.label(v)} {community}\n")


def read_seed_labels(source: Iterable[str]) -> List[Hashable]:
    """Read a seed-set file: one original node label per line."""
    labels = []
    for raw in source:
        line = raw.split("#", 1)[0].strip()
        if line:
            labels.append(line)
    return labels
