#!/usr/bin/env python3
"""Write every connected graph on 1..N vertices (up to isomorphism) as graph6.

Source is the networkx graph atlas, which covers all graphs with at most
seven vertices.  Output is one graph6 string per line, suitable for piping
into `dpcolor verify-theorem2`.
"""
import argparse
import sys

import networkx as nx


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args()
    if not 1 <= args.max_n <= 7:
        ap.error("the atlas only covers graphs with at most 7 vertices")

    out = sys.stdout if args.output == "-" else open(args.output, "w")
    count = 0
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n == 0 or n > args.max_n or not nx.is_connected(g):
            continue
        out.write(nx.to_graph6_bytes(g, header=False).decode().strip() + "\n")
        count += 1
    if out is not sys.stdout:
        out.close()
    print(f"wrote {count} graphs", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
