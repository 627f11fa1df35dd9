from .network import Network
from .loaders import load_edge_list, write_edge_list, write_communities, read_seed_labels
from .generators import GNGraph, generate_gn, generate_from_spec, mixing_from_out_links


def degree(net: Network, v: int) -> int:
    """|N(v)|."""
    return net.degree(v)


def neighbors(net: Network, v: int):
    """Ascending distinct neighbor ids of ``v``."""
    return net.neighbors(v)


__all__ = [
    "Network",
    "GNGraph",
    "load_edge_list",
    "write_edge_list",
    "write_communities",
    "read_seed_labels",
    "generate_gn",
    "generate_from_spec",
    "mixing_from_out_links",
    "degree",
    "neighbors",
]
