"""Walkthrough: from raw CSV logs to a descriptive battery and graph exports.

This script fabricates a small online-course interaction log, then runs the
full ingest pipeline the way an analysis would: load events and attributes,
assemble the directed network, restrict to the largest weak component,
describe the aggregate network and each quarterly slice, and export the
result for external tools.

Run it from the repository root after installing the package:

    python3 demos/01_descriptive_battery.py
"""

import csv
import os

import numpy as np

from netergm import (
    assemble_network,
    describe,
    export_graph,
    induced_subgraph,
    largest_component,
    load_attributes,
    load_events,
    slice_periods,
)
from netergm.config import DEFAULT_HORIZON, QUARTER_BREAKPOINTS
from netergm.report import describe_table, render_text

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "output", "descriptives")

VOCAB = {
    "role": ("Teacher", "Administrator", "Technology/Media Staff", "Other"),
    "group": ("AC", "DL", "M", "N", "PD", "PS"),
    "grade": ("Primary", "Secondary", "Post-Secondary", "Generalist"),
    "gender": ("Female", "Male"),
    "country": ("US", "Non-US"),
    "region": ("Midwest", "Northeast", "South", "West", "International"),
    "experience": ("<=10", "11-20", "20+"),
    "expert": ("Yes", "No"),
    "willing": ("Yes", "No"),
}


def fabricate_course(rng, participants=60, facilitators=2):
    """Write a synthetic event log and attribute table; return their paths."""
    os.makedirs(OUT, exist_ok=True)
    ids = [f"p{k:03d}" for k in range(participants)]
    staff = [f"f{k}" for k in range(facilitators)]

    attr_path = os.path.join(OUT, "attributes.csv")
    with open(attr_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id"] + list(VOCAB) + ["facilitator"])
        for pid in ids + staff:
            row = [pid] + [str(rng.choice(v)) for v in VOCAB.values()]
            row.append("Yes" if pid in staff else "No")
            writer.writerow(row)

    # Activity declines quarter over quarter, which is typical for an
    # open online course: a burst early on, a long tail later.
    quarter_volume = (320, 260, 150, 60)
    event_path = os.path.join(OUT, "events.csv")
    with open(event_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sender_id", "receiver_id", "day"])
        for q, volume in enumerate(quarter_volume):
            lo, hi = QUARTER_BREAKPOINTS[q]
            for _ in range(volume):
                sender, receiver = rng.choice(ids, size=2, replace=False)
                writer.writerow([sender, receiver, int(rng.integers(lo, hi + 1))])
        # a few facilitator posts, which the assembly step will drop
        for _ in range(12):
            writer.writerow([
                str(rng.choice(staff)), str(rng.choice(ids)),
                int(rng.integers(1, DEFAULT_HORIZON + 1)),
            ])
    return event_path, attr_path


def main():
    rng = np.random.default_rng(101)
    event_path, attr_path = fabricate_course(rng)

    events = load_events(event_path, horizon=DEFAULT_HORIZON)
    attrs = load_attributes(attr_path)
    print(f"loaded {len(events)} events and {attrs.size} attribute rows")

    # Facilitator rows are dropped here (with a warning); the remaining
    # participants become the node set, ordered by id.
    graph, table = assemble_network(events, attrs)
    print(f"assembled network: {graph.node_count} nodes, {graph.edge_count} edges")

    subset = largest_component(graph, mode="weak")
    graph = induced_subgraph(graph, subset)
    table = table.restrict([table.ids[m] for m in subset.members])
    print(f"largest weak component keeps {len(subset)} nodes")

    series = slice_periods(events, table, QUARTER_BREAKPOINTS, DEFAULT_HORIZON)
    labeled = [("All", describe(graph))]
    labeled += [(label, describe(g)) for label, g in zip(series.labels, series.graphs)]
    print()
    print(render_text(describe_table(labeled)))

    # Both files carry participant ids, so they line up with the raw CSVs.
    graphml_path = os.path.join(OUT, "network.graphml")
    json_path = os.path.join(OUT, "network.json")
    export_graph(graph, table, graphml_path, "graphml")
    export_graph(graph, table, json_path, "json-edgelist")
    print(f"wrote {graphml_path}")
    print(f"wrote {json_path}")


if __name__ == "__main__":
    main()
